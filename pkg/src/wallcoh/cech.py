"""Piecewise Cech complexes and graded local cohomology.

Every fine degree is handled by finite linear algebra: the localization at a
generator product is modeled by its level-K truncation (formal denominator
f_S^K), and the complex of truncations carries the usual alternating
differentials, negated globally. Dimensions are certified in one of two ways:

* piece certificate: every truncated term has equal dimension at levels K and
  K+1 and the connecting multiplication map is injective, so the two stage
  complexes are isomorphic;
* cohomology certificate: stage cohomology dimensions agree at K and K+1 and
  the transition chain map induces isomorphisms on every nonzero cohomology
  group. This covers generator lists (such as x, y, x+y on a coarse grading)
  whose individual localized pieces are infinite dimensional while the
  cohomology itself is finite.

Both are truncation certificates relative to the level cap; a degree that
fails to certify raises NotStabilized with its dimension trajectory.

Local cohomology is read off the containment triangle: H^0 is the kernel of
the canonical map from the ring piece into the degree-0 term, H^1 its
cokernel on degree-0 cocycles, and the higher groups shift down to Cech
cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import expr
from .errors import (
    BoxTooSmall,
    EmptySide,
    EngineError,
    InhomogeneousRelation,
    NotStabilized,
    ZeroRelation,
)
from .gradedring import ValidatedRing

_CTX_CACHE_CAP = 60_000


@dataclass(frozen=True)
class Box:
    """Probe window: weight range, fine-degree total bound, truncation caps."""

    weight_min: int
    weight_max: int
    fine_bound: int
    k_start: int = 4
    k_max: int = 32

    def __post_init__(self):
        if self.weight_min >= self.weight_max:
            raise ValueError("weight_min must be < weight_max")
        if self.fine_bound < 1:
            raise ValueError("fine_bound must be >= 1")
        if self.k_max < 2:
            raise ValueError("k_max must be >= 2")

    def weights(self):
        return range(self.weight_min, self.weight_max + 1)

    def key(self) -> tuple:
        return (self.weight_min, self.weight_max, self.fine_bound,
                self.k_start, self.k_max)


@dataclass
class Generator:
    name: str
    poly: dict
    degree: tuple[int, ...]
    weight: int


@dataclass
class LocalizedPiece:
    subset: tuple[int, ...]
    fine_degree: tuple[int, ...]
    level: int
    basis: tuple
    stabilized: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class DegreeCohomology:
    """Certified dimensions at one fine degree of one side."""

    mu: tuple[int, ...]
    level: int
    certificate: str              # "piece" | "cohomology" | "empty-side"
    cech: tuple[int, ...]         # H^p of the Cech complex, p = 0..r-1
    local: tuple[int, ...]        # H^j of local cohomology, j = 0..r
    ring_dim: int
    eta_rank: int
    pieces: dict = field(default_factory=dict)
    triangle: dict | None = None  # handles for the containment map

    def euler_ok(self) -> bool:
        chi_l = sum((-1) ** j * d for j, d in enumerate(self.local))
        chi_c = sum((-1) ** j * d for j, d in enumerate(self.cech))
        return self.ring_dim == chi_l + chi_c


def side_generators(ring: ValidatedRing, side: str,
                    override=None) -> list[Generator]:
    """Default generators are the side's variables; overrides must be
    fine-homogeneous with weight of the correct sign."""
    if override is None:
        idx = ring.side_indices(side)
        out = []
        for i in idx:
            out.append(Generator(
                name=ring.variables[i],
                poly=expr.monomial(ring.nvars, i),
                degree=ring.fine_degrees[i],
                weight=ring.weights[i],
            ))
        return out
    out = []
    want_positive = side == "plus"
    for k, text in enumerate(override):
        label = f"generators[{k}]"
        poly = expr.parse_polynomial(text, ring.variables, label)
        if not poly:
            raise ZeroRelation(label)
        degs = sorted({ring._monomial_degree(e) for e in poly})
        if len(degs) > 1:
            raise InhomogeneousRelation(label, degs[0], degs[1])
        w = ring.weight_of_fine(degs[0])
        if (w <= 0) if want_positive else (w >= 0):
            raise ValueError(
                f"{label}: weight {w} has the wrong sign for side {side}"
            )
        out.append(Generator(text, poly, degs[0], w))
    return out


# ---------------------------------------------------------------------------
# stage complexes


def _vadd(a, b, scale: int = 1):
    return tuple(x + scale * y for x, y in zip(a, b))


class _Stage:
    """The truncation-level-K model of the Cech complex at one fine degree."""

    def __init__(self, ring: ValidatedRing, gens: list[Generator],
                 mu, level: int, pow_cache: dict):
        self.ring = ring
        self.gens = gens
        self.mu = tuple(mu)
        self.level = level
        r = len(gens)
        self.r = r
        self.subsets = [
            tuple(c) for p in range(1, r + 1)
            for c in combinations(range(r), p)
        ]
        self.nu = {
            s: tuple(sum(gens[i].degree[k] for i in s)
                     for k in range(ring.dim_grading))
            for s in self.subsets
        }
        self.ctx = {
            s: ring.piece_context(_vadd(self.mu, self.nu[s], level))
            for s in self.subsets
        }
        self.terms = [
            [s for s in self.subsets if len(s) == p + 1] for p in range(r)
        ]
        self.term_dims = [
            sum(self.ctx[s].dim for s in group) for group in self.terms
        ]
        self.offsets = []
        for group in self.terms:
            off, acc = {}, 0
            for s in group:
                off[s] = acc
                acc += self.ctx[s].dim
            self.offsets.append(off)
        self._pow_cache = pow_cache
        self.amb_ctx = ring.piece_context(self.mu)
        self._d_mats = None
        self._eta = None
        self._hdims = None

    # -- polynomial powers -------------------------------------------------

    def _gen_power(self, i: int, k: int) -> dict:
        key = (i, k)
        got = self._pow_cache.get(key)
        if got is None:
            got = expr.poly_pow(self.gens[i].poly, k, self.ring.nvars)
            self._pow_cache[key] = got
        return got

    def _subset_multiplier(self, s: tuple[int, ...], k: int) -> dict:
        out = {(0,) * self.ring.nvars: 1}
        for i in s:
            out = expr.poly_mul(out, self._gen_power(i, k), self.ring.nvars)
        return out

    # -- differentials -------------------------------------------------------

    def _assemble(self, blocks, src_group: int, tgt_group: int):
        ops = self.ring.ops
        nrows = self.term_dims[src_group]
        ncols = self.term_dims[tgt_group]
        mat = ops.zeros(nrows, ncols)
        src_off = self.offsets[src_group]
        tgt_off = self.offsets[tgt_group]
        for (s, t), (sign, rows) in blocks.items():
            r0 = src_off[s]
            c0 = tgt_off[t]
            if ops.p is None:
                for i, row in enumerate(rows):
                    tr = mat[r0 + i]
                    for j, x in enumerate(row):
                        if x:
                            tr[c0 + j] = -x if sign < 0 else x
            else:
                import numpy as np

                blk = np.asarray(rows, dtype="int64").reshape(
                    (len(rows), -1)) % ops.p
                if sign < 0:
                    blk = (-blk) % ops.p
                mat[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1]] = blk
        return mat

    def differentials(self):
        """d_p : C^p -> C^{p+1}, images-as-rows, p = 0..r-2."""
        if self._d_mats is not None:
            return self._d_mats
        mats = []
        for p in range(self.r - 1):
            blocks = {}
            for t in self.terms[p + 1]:
                for pos, j in enumerate(t):
                    s = t[:pos] + t[pos + 1:]
                    # alternating sign, then the global negation of the
                    # displayed differentials
                    sign = -1 if pos % 2 == 0 else 1
                    mult = self._subset_multiplier((j,), self.level)
                    rows = self.ring.mult_matrix(mult, self.ctx[s], self.ctx[t])
                    if self.ctx[s].dim and self.ctx[t].dim:
                        blocks[(s, t)] = (sign, rows)
            mats.append(self._assemble(blocks, p, p + 1))
        self._d_mats = mats
        return mats

    def eta(self):
        """The canonical map from the ring piece into the degree-0 term."""
        if self._eta is not None:
            return self._eta
        ops = self.ring.ops
        nrows = self.amb_ctx.dim
        ncols = self.term_dims[0] if self.r else 0
        mat = ops.zeros(nrows, ncols)
        for s in self.terms[0]:
            mult = self._subset_multiplier(s, self.level)
            rows = self.ring.mult_matrix(mult, self.amb_ctx, self.ctx[s])
            c0 = self.offsets[0][s]
            if ops.p is None:
                for i, row in enumerate(rows):
                    for j, x in enumerate(row):
                        if x:
                            mat[i][c0 + j] = x
            else:
                import numpy as np

                if nrows and self.ctx[s].dim:
                    blk = np.asarray(rows, dtype="int64").reshape(
                        (nrows, -1)) % ops.p
                    mat[:, c0:c0 + blk.shape[1]] = blk
        self._eta = mat
        return mat

    def cohomology(self):
        """(cech H^p list, eta rank); verifies d of d = 0."""
        if self._hdims is not None:
            return self._hdims
        ops = self.ring.ops
        mats = self.differentials()
        ranks = [ops.rank(m, self.term_dims[p + 1])
                 for p, m in enumerate(mats)]
        for p in range(len(mats) - 1):
            if self.term_dims[p] and self.term_dims[p + 2]:
                comp = ops.matmul(mats[p], mats[p + 1],
                                  self.term_dims[p + 1], self.term_dims[p + 2])
                if not ops.is_zero_matrix(comp):
                    raise EngineError("differential square is nonzero")
        h = []
        for p in range(self.r):
            rank_out = ranks[p] if p < self.r - 1 else 0
            rank_in = ranks[p - 1] if p >= 1 else 0
            h.append(self.term_dims[p] - rank_out - rank_in)
        eta_rank = ops.rank(self.eta(), self.term_dims[0]) if self.r else 0
        self._hdims = (tuple(h), eta_rank)
        return self._hdims

    def local_dims(self) -> tuple[tuple[int, ...], int]:
        cech_h, eta_rank = self.cohomology()
        h0 = self.amb_ctx.dim - eta_rank
        h1 = (cech_h[0] - eta_rank) if self.r else 0
        local = [h0, h1] + [cech_h[j] for j in range(1, self.r)]
        return tuple(local), eta_rank


def _transition(ring, stage_k: _Stage, stage_k1: _Stage):
    """Per-subset transition data between consecutive levels: multiplication
    by f_S, with an injectivity flag (the piece-stabilization test)."""
    ops = ring.ops
    out = {}
    all_stable = True
    for s in stage_k.subsets:
        src, tgt = stage_k.ctx[s], stage_k1.ctx[s]
        mult = stage_k._subset_multiplier(s, 1)
        rows = ring.mult_matrix(mult, src, tgt)
        injective = src.dim == 0 or \
            ops.rank(_as_matrix(ops, rows, tgt.dim), tgt.dim) == src.dim
        stable = injective and src.dim == tgt.dim
        out[s] = (rows, stable)
        all_stable = all_stable and stable
    return out, all_stable


def _as_matrix(ops, rows, ncols: int):
    if ops.p is None:
        return rows
    import numpy as np

    return np.asarray(rows, dtype="int64").reshape((len(rows), ncols)) % ops.p


def _block_diag_transition(stage_k: _Stage, stage_k1: _Stage, trans, p: int):
    """Transition on the whole degree-p term, images-as-rows."""
    ops = stage_k.ring.ops
    nrows = stage_k.term_dims[p]
    ncols = stage_k1.term_dims[p]
    mat = ops.zeros(nrows, ncols)
    for s in stage_k.terms[p]:
        rows, _ = trans[s]
        r0 = stage_k.offsets[p][s]
        c0 = stage_k1.offsets[p][s]
        if ops.p is None:
            for i, row in enumerate(rows):
                tr = mat[r0 + i]
                for j, x in enumerate(row):
                    if x:
                        tr[c0 + j] = x
        else:
            import numpy as np

            if stage_k.ctx[s].dim and stage_k1.ctx[s].dim:
                blk = np.asarray(rows, dtype="int64").reshape(
                    (stage_k.ctx[s].dim, -1)) % ops.p
                mat[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1]] = blk
    return mat


def _cohomology_transition_iso(stage_k: _Stage, stage_k1: _Stage,
                               trans) -> bool:
    """Does the transition chain map induce isomorphisms on cohomology?"""
    ops = stage_k.ring.ops
    h_k, _ = stage_k.cohomology()
    h_k1, _ = stage_k1.cohomology()
    d_k = stage_k.differentials()
    d_k1 = stage_k1.differentials()
    for p in range(stage_k.r):
        if h_k[p] == 0 and h_k1[p] == 0:
            continue
        if h_k[p] != h_k1[p]:
            return False
        dim_p = stage_k.term_dims[p]
        dim_p1 = stage_k1.term_dims[p]
        # cycles at level K: left kernel of d_p
        if p < stage_k.r - 1:
            tr = ops.transpose(d_k[p], dim_p, stage_k.term_dims[p + 1])
            cycles = ops.nullspace(tr, dim_p)
        else:
            cycles = ops.nullspace(ops.zeros(0, dim_p), dim_p)
        t_mat = _block_diag_transition(stage_k, stage_k1, trans, p)
        mapped = [ops.matmul([z], t_mat, dim_p, dim_p1)[0] for z in cycles]
        boundary = d_k1[p - 1] if p >= 1 else ops.zeros(0, dim_p1)
        rank_b = ops.rank(boundary, dim_p1)
        stacked = ops.stack([_as_matrix(ops, mapped, dim_p1), boundary], dim_p1)
        s = ops.rank(stacked, dim_p1) - rank_b
        if s != h_k[p]:
            return False
    return True


def _level_schedule(k_start: int, k_max: int):
    ks, k = [], max(2, k_start)
    while k + 1 <= k_max:
        ks.append(k)
        k = k * 2 - 2 if k > 2 else k + 2
    return ks or [max(2, k_max - 1)]


def _far_dims_match(ring, gens, stage_k: _Stage, far: int,
                    pow_cache: dict) -> bool:
    """Spot check against late jumps: term dimensions at a level well past
    K must agree with the certified ones, and so must the cohomology (term
    dimensions alone would not notice a rank drop between the levels)."""
    for s in stage_k.subsets:
        ctx = ring.piece_context(_vadd(stage_k.mu, stage_k.nu[s], far))
        if ctx.dim != stage_k.ctx[s].dim:
            return False
    stage_far = _Stage(ring, gens, stage_k.mu, far, pow_cache)
    return stage_far.local_dims() == stage_k.local_dims()


def certified_degree(ring: ValidatedRing, gens: list[Generator], mu,
                     k_start: int = 4, k_max: int = 32,
                     pow_cache: dict | None = None,
                     keep_pieces: bool = False) -> DegreeCohomology:
    """Stabilized Cech and local cohomology dimensions at one fine degree.

    The starting level scales with the total of the fine degree so that
    denominators deep enough for its classes are reachable; a certificate is
    only accepted when a far level (about twice the certified one) shows the
    same dimensions.
    """
    mu = tuple(mu)
    if not gens:
        dim = ring.piece_dim(mu)
        return DegreeCohomology(mu, 0, "empty-side", (), (dim,), dim, 0)
    if pow_cache is None:
        pow_cache = {}
    depth = sum(abs(x) for x in mu) + 1
    start = max(k_start, min(depth, k_max - 1))
    clipped = depth > k_max - 1
    trajectory = []
    for level in _level_schedule(start, k_max):
        stage_k = _Stage(ring, gens, mu, level, pow_cache)
        stage_k1 = _Stage(ring, gens, mu, level + 1, pow_cache)
        trans, all_stable = _transition(ring, stage_k, stage_k1)
        far = min(2 * level + 1, k_max)
        far_possible = far > level + 1
        if clipped and not far_possible:
            # the level cap is below the depth this degree may need and the
            # far check cannot run: refuse to certify
            trajectory.append((level, "level cap below degree depth"))
            continue
        if all_stable:
            if far_possible and not _far_dims_match(ring, gens, stage_k, far,
                                                    pow_cache):
                trajectory.append((level, "far-level dimension jump"))
                continue
            cech_h, eta_rank = stage_k.cohomology()
            local, eta_rank = stage_k.local_dims()
            return _finish(stage_k, "piece", cech_h, local, eta_rank,
                           trans, keep_pieces)
        h_k = stage_k.local_dims()
        h_k1 = stage_k1.local_dims()
        if h_k == h_k1 and _cohomology_transition_iso(stage_k, stage_k1, trans):
            if far_possible:
                stage_far = _Stage(ring, gens, mu, far, pow_cache)
                if stage_far.local_dims() != h_k:
                    trajectory.append((level, "far-level cohomology jump"))
                    continue
            cech_h, eta_rank = stage_k.cohomology()
            local, _ = h_k
            return _finish(stage_k, "cohomology", cech_h, local, eta_rank,
                           trans, keep_pieces)
        trajectory.append(
            (level, {"".join(map(str, s)): stage_k.ctx[s].dim
                     for s in stage_k.subsets})
        )
    raise NotStabilized(k_max, trajectory)


def _finish(stage: _Stage, cert: str, cech_h, local, eta_rank,
            trans, keep_pieces: bool) -> DegreeCohomology:
    pieces = {}
    triangle = None
    if keep_pieces:
        for s in stage.subsets:
            pieces[s] = LocalizedPiece(
                subset=s,
                fine_degree=stage.mu,
                level=stage.level,
                basis=stage.ctx[s].basis,
                stabilized=trans[s][1],
            )
        ops = stage.ring.ops
        eta = stage.eta()
        kernel = ops.nullspace(
            ops.transpose(eta, stage.amb_ctx.dim, stage.term_dims[0]),
            stage.amb_ctx.dim) if stage.amb_ctx.dim else []
        triangle = {
            "eta_rank": eta_rank,
            "kernel_basis": kernel,
            "kernel_dim": stage.amb_ctx.dim - eta_rank,
            "cokernel_dim": local[1] if len(local) > 1 else 0,
            "ring_basis": stage.amb_ctx.basis,
        }
    return DegreeCohomology(
        mu=stage.mu,
        level=stage.level,
        certificate=cert,
        cech=cech_h,
        local=local,
        ring_dim=stage.amb_ctx.dim,
        eta_rank=eta_rank,
        pieces=pieces,
        triangle=triangle,
    )


# ---------------------------------------------------------------------------
# public per-degree operations


def cech_piece(ring: ValidatedRing, side: str, mu, box: Box | None = None,
               generators=None) -> DegreeCohomology:
    gens = side_generators(ring, side, generators)
    if not gens:
        raise EmptySide(side)
    box = box or Box(-8, 8, 12)
    return certified_degree(ring, gens, mu, box.k_start, box.k_max,
                            keep_pieces=True)


def cech_cohomology(ring: ValidatedRing, side: str, mu,
                    box: Box | None = None, generators=None):
    return cech_piece(ring, side, mu, box, generators).cech


def local_cohomology(ring: ValidatedRing, side: str, mu,
                     box: Box | None = None, generators=None):
    """Local cohomology dimensions; an empty side returns the ring piece in
    degree 0 (the zero-ideal convention)."""
    gens = side_generators(ring, side, generators)
    box = box or Box(-8, 8, 12)
    return certified_degree(ring, gens, mu, box.k_start, box.k_max,
                            keep_pieces=True)


# ---------------------------------------------------------------------------
# box sweeps and the cohomology table


def box_degrees(d: int, bound: int):
    """All fine degrees with |mu|_1 <= bound, deterministic order."""
    out = []

    def rec(k, left, acc):
        if k == d - 1:
            for v in range(-left, left + 1):
                out.append(tuple(acc + [v]))
            return
        for v in range(-left, left + 1):
            rec(k + 1, left - abs(v), acc + [v])

    rec(0, bound, [])
    out.sort()
    return out


def compute_side_table(ring: ValidatedRing, side: str, box: Box,
                       generators=None) -> dict:
    """Sweep the fine box; returns the side's sparse dimension tables."""
    gens = side_generators(ring, side, generators)
    bound = box.fine_bound
    local: dict = {}
    cech: dict = {}
    certs: dict = {}
    euler_bad: list = []
    pow_cache: dict = {}
    for mu in box_degrees(ring.dim_grading, bound):
        if gens and _certainly_zero(ring, gens, mu, box):
            continue
        if not gens:
            dim = ring.piece_dim(mu)
            if dim:
                local[(0, mu)] = dim
            continue
        rec = certified_degree(ring, gens, mu, box.k_start, box.k_max,
                               pow_cache=pow_cache)
        if not rec.euler_ok():
            euler_bad.append(mu)
        nonzero = False
        for j, dim in enumerate(rec.local):
            if dim:
                local[(j, mu)] = dim
                nonzero = True
        for p, dim in enumerate(rec.cech):
            if dim:
                cech[(p, mu)] = dim
                nonzero = True
        if nonzero:
            certs[mu] = rec.certificate
        if len(ring._ctx_cache) > _CTX_CACHE_CAP:
            ring._ctx_cache.clear()
    return {
        "side": side,
        "r": len(gens),
        "local": local,
        "cech": cech,
        "certificates": certs,
        "euler_violations": euler_bad,
    }


def _certainly_zero(ring: ValidatedRing, gens, mu, box: Box) -> bool:
    """Cheap prune: the ring piece and every truncated term are empty at the
    levels the certificate would inspect, so nothing can contribute."""
    if ring.monomials(mu):
        return False
    start = max(box.k_start,
                min(sum(abs(x) for x in mu) + 1, box.k_max - 1))
    levels = (start, start + 1, min(2 * start + 1, box.k_max))
    for p in range(len(gens)):
        for s in combinations(range(len(gens)), p + 1):
            nu = tuple(sum(gens[i].degree[j] for i in s)
                       for j in range(ring.dim_grading))
            if any(ring.monomials(_vadd(mu, nu, k)) for k in levels):
                return False
    return True


class CohomologyTable:
    """Dimensions of local and Cech cohomology over a fine box, with
    weight aggregates certified relative to the box."""

    def __init__(self, ring: ValidatedRing, box: Box, plus: dict, minus: dict):
        self.ring = ring
        self.box = box
        self.sides = {"plus": plus, "minus": minus}

    @staticmethod
    def compute(ring: ValidatedRing, box: Box,
                generators: dict | None = None) -> "CohomologyTable":
        generators = generators or {}
        plus = compute_side_table(ring, "plus", box,
                                  generators.get("plus"))
        minus = compute_side_table(ring, "minus", box,
                                   generators.get("minus"))
        return CohomologyTable(ring, box, plus, minus)

    # -- lookups ------------------------------------------------------------

    def r(self, side: str) -> int:
        return self.sides[side]["r"]

    def local_dim(self, side: str, j: int, mu) -> int:
        return self.sides[side]["local"].get((j, tuple(mu)), 0)

    def cech_dim(self, side: str, p: int, mu) -> int:
        return self.sides[side]["cech"].get((p, tuple(mu)), 0)

    def max_j(self, side: str) -> int:
        return self.r(side)

    def weight_aggregate(self, side: str, j: int, i: int,
                         strict: bool = False):
        """Sum of fine dims at weight i; ``finite`` is the box certificate
        (no nonzero support on the box rim)."""
        total = 0
        finite = True
        bound = self.box.fine_bound
        for (jj, mu), dim in self.sides[side]["local"].items():
            if jj != j or self.ring.weight_of_fine(mu) != i:
                continue
            total += dim
            if sum(abs(x) for x in mu) >= bound:
                finite = False
        if strict and not finite:
            raise BoxTooSmall(
                f"side {side}, H^{j} at weight {i}: support touches the "
                f"fine box rim (bound {bound})"
            )
        return total, finite

    def weight_table(self, side: str) -> dict:
        """(j, i) -> [dim, finite] for all nonzero aggregates."""
        agg: dict[tuple[int, int], list] = {}
        bound = self.box.fine_bound
        for (j, mu), dim in self.sides[side]["local"].items():
            i = self.ring.weight_of_fine(mu)
            cell = agg.setdefault((j, i), [0, True])
            cell[0] += dim
            if sum(abs(x) for x in mu) >= bound:
                cell[1] = False
        return agg

    def weight_is_zero(self, side: str, i: int) -> bool:
        """No observed local cohomology in any homological degree at weight
        i (a box-relative statement)."""
        return all(
            self.ring.weight_of_fine(mu) != i
            for (_, mu) in self.sides[side]["local"]
        )

    def euler_violations(self):
        return (self.sides["plus"]["euler_violations"],
                self.sides["minus"]["euler_violations"])

    # -- serialization -------------------------------------------------------

    def to_payload(self) -> dict:
        def enc(table):
            return {
                "r": table["r"],
                "side": table["side"],
                "local": [[j, list(mu), dim]
                          for (j, mu), dim in sorted(table["local"].items())],
                "cech": [[p, list(mu), dim]
                         for (p, mu), dim in sorted(table["cech"].items())],
                "euler_violations": [list(m) for m in table["euler_violations"]],
            }

        return {"plus": enc(self.sides["plus"]),
                "minus": enc(self.sides["minus"])}

    @staticmethod
    def from_payload(ring: ValidatedRing, box: Box,
                     payload: dict) -> "CohomologyTable":
        def dec(side_payload):
            return {
                "side": side_payload["side"],
                "r": side_payload["r"],
                "local": {(j, tuple(mu)): dim
                          for j, mu, dim in side_payload["local"]},
                "cech": {(p, tuple(mu)): dim
                         for p, mu, dim in side_payload["cech"]},
                "certificates": {},
                "euler_violations": [tuple(m)
                                     for m in side_payload["euler_violations"]],
            }

        return CohomologyTable(ring, box,
                               dec(payload["plus"]), dec(payload["minus"]))
