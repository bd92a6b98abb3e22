"""Weighted multigraded ring presentations and degree-by-degree linear algebra.

A ring is presented as a polynomial ring over an exact field with a positive
fine Z^d-grading, a wall-crossing weight functional on fine degrees, and a
list of fine-homogeneous relations. Every fine-degree piece is a finite
dimensional vector space computed by exact elimination, with a deterministic
quotient basis (fixed descending-lex monomial order, leftmost pivots).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import expr
from .errors import (
    DegreeBoxOverflow,
    InhomogeneousRelation,
    NonPositiveGrading,
    ZeroRelation,
)
from .linalg import Echelon, FieldOps

DEFAULT_DEGREE_LIMIT = 200_000


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals, or a prime field used as a screen."""

    kind: str = "rationals"  # "rationals" | "prime-field"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("rationals have characteristic 0")
        elif self.kind == "prime-field":
            p = self.characteristic
            if not (2 <= p < 2**31) or not _is_prime(p):
                raise ValueError("prime-field characteristic must be a prime < 2**31")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    def ops(self) -> FieldOps:
        return FieldOps(None if self.kind == "rationals" else self.characteristic)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass
class GradedRingSpec:
    field: FieldSpec
    variables: list[str]
    fine_degrees: list[tuple[int, ...]]
    lam: tuple[int, ...]
    relations: list[tuple[str, dict]] = field(default_factory=list)
    degree_limit: int = DEFAULT_DEGREE_LIMIT

    @staticmethod
    def from_strings(variables, fine_degrees, lam, relation_strings=(),
                     field_spec: FieldSpec | None = None,
                     degree_limit: int = DEFAULT_DEGREE_LIMIT) -> "GradedRingSpec":
        rels = []
        for k, text in enumerate(relation_strings):
            name = f"relations[{k}]"
            rels.append((text, expr.parse_polynomial(text, variables, name)))
        return GradedRingSpec(
            field=field_spec or FieldSpec(),
            variables=list(variables),
            fine_degrees=[tuple(d) for d in fine_degrees],
            lam=tuple(lam),
            relations=rels,
            degree_limit=degree_limit,
        )


@dataclass(frozen=True)
class PieceBasis:
    fine_degree: tuple[int, ...]
    ambient_monomials: tuple[tuple[int, ...], ...]
    relation_span_rank: int
    quotient_basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.quotient_basis)


class PieceContext:
    """Elimination data for one fine degree: ambient monomials, the reduced
    echelon form of the relation span, and the induced quotient basis."""

    __slots__ = ("mu", "amb", "index", "ech", "basis_cols", "basis", "dim", "ops")

    def __init__(self, mu, amb, ech: Echelon, ops: FieldOps):
        self.mu = mu
        self.amb = amb
        self.index = {e: i for i, e in enumerate(amb)}
        self.ech = ech
        pivset = set(ech.pivots)
        self.basis_cols = [i for i in range(len(amb)) if i not in pivset]
        self.basis = tuple(amb[i] for i in self.basis_cols)
        self.dim = len(self.basis_cols)
        self.ops = ops

    def int_vector(self, poly: dict) -> list[int]:
        v = [0] * len(self.amb)
        for e, c in poly.items():
            v[self.index[e]] += c
        return v

    def coords(self, poly: dict):
        """Coordinates of the class of ``poly`` in the quotient basis."""
        vec = self.ops.matrix([self.int_vector(poly)], len(self.amb))[0]
        red = self.ops.reduce(self.ech, vec)
        return [red[i] for i in self.basis_cols]


def _dot(a, b) -> int:
    return sum(int(x) * int(y) for x, y in zip(a, b))


def _positive_functional(degrees: list[tuple[int, ...]]) -> tuple[int, ...] | None:
    """Integer functional with value >= 1 on every degree vector, or None."""
    d = len(degrees[0])
    ones = tuple([1] * d)
    if all(_dot(ones, v) >= 1 for v in degrees):
        return ones
    import itertools

    for bound in (1, 2, 3):
        for cand in itertools.product(range(-bound, bound + 1), repeat=d):
            if all(_dot(cand, v) >= 1 for v in degrees):
                return tuple(cand)
    # rare path: delegate the search to an LP and round to integers
    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError:  # pragma: no cover
        return None
    res = linprog(
        c=[0.0] * d,
        A_ub=(-np.array(degrees, dtype=float)),
        b_ub=[-1.0] * len(degrees),
        bounds=[(None, None)] * d,
        method="highs",
    )
    if not res.success:
        return None
    for scale in (1, 2, 3, 4, 6, 8, 12, 16, 24, 48):
        cand = tuple(round(x * scale) for x in res.x)
        if all(_dot(cand, v) >= 1 for v in degrees):
            return cand
    return None


def _zero_degree_witness(degrees: list[tuple[int, ...]]):
    """Nonzero nonnegative integer combination of the degree vectors summing
    to the zero fine degree, if one can be certified exactly."""
    for i, v in enumerate(degrees):
        if all(x == 0 for x in v):
            e = [0] * len(degrees)
            e[i] = 1
            return tuple(e)
    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError:  # pragma: no cover
        return None
    m = len(degrees)
    a_eq = np.vstack([np.array(degrees, dtype=float).T, np.ones((1, m))])
    b_eq = [0.0] * len(degrees[0]) + [1.0]
    res = linprog(c=[0.0] * m, A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0, None)] * m, method="highs")
    if not res.success:
        return None
    for denom in (6, 12, 24, 60, 840, 10**4, 10**6):
        fr = [Fraction(float(x)).limit_denominator(denom) for x in res.x]
        if all(f >= 0 for f in fr) and any(f > 0 for f in fr):
            total = [0] * len(degrees[0])
            lcm = 1
            for f in fr:
                lcm = lcm * f.denominator // _gcd(lcm, f.denominator)
            ints = [int(f * lcm) for f in fr]
            for i, v in enumerate(degrees):
                for k, x in enumerate(v):
                    total[k] += ints[i] * x
            if all(t == 0 for t in total) and any(ints):
                return tuple(ints)
    return None


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class ValidatedRing:
    """Immutable validated ring handle; safe for concurrent shared reads."""

    def __init__(self, spec: GradedRingSpec):
        self.spec = spec
        self.variables = list(spec.variables)
        self.nvars = len(self.variables)
        self.dim_grading = len(spec.fine_degrees[0]) if spec.fine_degrees else 0
        self.fine_degrees = [tuple(v) for v in spec.fine_degrees]
        self.lam = tuple(spec.lam)
        self.ops = spec.field.ops()
        self._validate_shape()
        self.relations = self._validated_relations()
        self.ell = self._validate_positivity()
        self.weights = tuple(_dot(self.lam, d) for d in self.fine_degrees)
        self.relation_degrees = [self._poly_degree(p) for _, p in self.relations]
        self.sigma = sum(self.weights) - sum(
            _dot(self.lam, d) for d in self.relation_degrees
        )
        self.c_vec = tuple(
            sum(d[k] for d in self.fine_degrees)
            - sum(d[k] for d in self.relation_degrees)
            for k in range(self.dim_grading)
        )
        self._axis = self._exponent_axis()
        self._mono_cache: dict[tuple[int, ...], tuple] = {}
        self._ctx_cache: dict[tuple[int, ...], PieceContext] = {}

    # -- validation --------------------------------------------------------

    def _validate_shape(self):
        if self.nvars == 0:
            raise NonPositiveGrading("a ring needs at least one variable")
        if self.dim_grading < 1:
            raise NonPositiveGrading("fine grading must have d >= 1")
        for name, d in zip(self.variables, self.fine_degrees):
            if len(d) != self.dim_grading:
                raise NonPositiveGrading(
                    f"fine degree of {name} has wrong length {len(d)}"
                )
        if len(self.lam) != self.dim_grading:
            raise NonPositiveGrading("weight functional length does not match d")

    def _validated_relations(self):
        rels = []
        for name, poly in self.spec.relations:
            if not poly:
                raise ZeroRelation(name)
            degs = {self._monomial_degree(e) for e in poly}
            if len(degs) > 1:
                a, b = sorted(degs)[:2]
                raise InhomogeneousRelation(name, a, b)
            rels.append((name, dict(poly)))
        return rels

    def _validate_positivity(self):
        for name, d in zip(self.variables, self.fine_degrees):
            if all(x == 0 for x in d):
                wit = [0] * self.nvars
                wit[self.variables.index(name)] = 1
                raise NonPositiveGrading(
                    f"variable {name} has fine degree 0", witness=tuple(wit)
                )
        ell = _positive_functional(self.fine_degrees)
        if ell is None:
            raise NonPositiveGrading(
                "fine degrees do not generate a pointed cone",
                witness=_zero_degree_witness(self.fine_degrees),
            )
        return ell

    # -- grading helpers ----------------------------------------------------

    def _monomial_degree(self, e) -> tuple[int, ...]:
        return tuple(
            sum(e[i] * self.fine_degrees[i][k] for i in range(self.nvars))
            for k in range(self.dim_grading)
        )

    def _poly_degree(self, poly: dict) -> tuple[int, ...]:
        return self._monomial_degree(next(iter(poly)))

    def weight_of_fine(self, mu) -> int:
        return _dot(self.lam, mu)

    def _exponent_axis(self):
        """Map variable -> axis when the fine grading is the exponent grading."""
        if self.dim_grading != self.nvars:
            return None
        axes = {}
        seen = set()
        for i, d in enumerate(self.fine_degrees):
            nz = [k for k, x in enumerate(d) if x != 0]
            if len(nz) != 1 or d[nz[0]] != 1 or nz[0] in seen:
                return None
            axes[i] = nz[0]
            seen.add(nz[0])
        return axes

    # -- monomial enumeration ------------------------------------------------

    def monomials(self, mu) -> tuple:
        """All ambient monomials of fine degree mu, descending lex."""
        mu = tuple(mu)
        cached = self._mono_cache.get(mu)
        if cached is not None:
            return cached
        if self._axis is not None:
            e = [0] * self.nvars
            ok = True
            for var, ax in self._axis.items():
                if mu[ax] < 0:
                    ok = False
                    break
                e[var] = mu[ax]
            out = (tuple(e),) if ok else ()
            self._mono_cache[mu] = out
            return out
        lvals = [_dot(self.ell, d) for d in self.fine_degrees]
        target = _dot(self.ell, mu)
        out: list[tuple[int, ...]] = []
        if target >= 0:
            acc = [0] * self.nvars

            def rec(k: int, rem: tuple[int, ...], lrem: int):
                if k == self.nvars - 1:
                    d = self.fine_degrees[k]
                    lv = lvals[k]
                    if lrem % lv == 0:
                        q = lrem // lv
                        if q >= 0 and all(q * d[j] == rem[j] for j in range(len(rem))):
                            acc[k] = q
                            out.append(tuple(acc))
                            acc[k] = 0
                    return
                d = self.fine_degrees[k]
                lv = lvals[k]
                for e in range(lrem // lv, -1, -1):
                    acc[k] = e
                    rec(k + 1,
                        tuple(rem[j] - e * d[j] for j in range(len(rem))),
                        lrem - e * lv)
                acc[k] = 0

            rec(0, mu, target)
        result = tuple(sorted(out, reverse=True))
        self._mono_cache[mu] = result
        return result

    # -- pieces ----------------------------------------------------------------

    def piece_context(self, mu) -> PieceContext:
        mu = tuple(mu)
        ctx = self._ctx_cache.get(mu)
        if ctx is not None:
            return ctx
        amb = self.monomials(mu)
        if len(amb) > self.spec.degree_limit:
            raise DegreeBoxOverflow(mu, len(amb), self.spec.degree_limit)
        index = {e: i for i, e in enumerate(amb)}
        rows = []
        for (_, poly), nu in zip(self.relations, self.relation_degrees):
            shift = tuple(mu[k] - nu[k] for k in range(self.dim_grading))
            for u in self.monomials(shift):
                row = [0] * len(amb)
                for e, c in poly.items():
                    prod = tuple(u[j] + e[j] for j in range(self.nvars))
                    row[index[prod]] += c
                rows.append(row)
        ech = self.ops.rref(self.ops.matrix(rows, len(amb)), len(amb))
        ctx = PieceContext(mu, amb, ech, self.ops)
        self._ctx_cache[mu] = ctx
        return ctx

    def piece_basis(self, mu) -> PieceBasis:
        ctx = self.piece_context(mu)
        return PieceBasis(
            fine_degree=tuple(mu),
            ambient_monomials=tuple(ctx.amb),
            relation_span_rank=ctx.ech.rank,
            quotient_basis=ctx.basis,
        )

    def piece_dim(self, mu) -> int:
        return self.piece_context(mu).dim

    def mult_matrix(self, poly: dict, src: PieceContext, tgt: PieceContext):
        """Images of the source quotient basis under multiplication by
        ``poly``, as a list of coordinate vectors in the target basis."""
        images = []
        for b in src.basis:
            prod = expr.poly_mul(poly, {b: 1}, self.nvars)
            images.append(tgt.coords(prod))
        return images

    # -- ideals and the degree-zero subalgebra -------------------------------

    def irrelevant_ideals(self) -> tuple[list[str], list[str]]:
        plus = [v for v, w in zip(self.variables, self.weights) if w > 0]
        minus = [v for v, w in zip(self.variables, self.weights) if w < 0]
        return plus, minus

    def side_indices(self, side: str) -> list[int]:
        if side == "plus":
            return [i for i, w in enumerate(self.weights) if w > 0]
        if side == "minus":
            return [i for i, w in enumerate(self.weights) if w < 0]
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")

    def degree_zero_generators(self, bound: int):
        """Minimal weight-0 monomial generators among monomials of total
        degree <= bound; flagged complete only up to that bound."""
        if bound < 1:
            raise ValueError("bound must be >= 1")
        found: list[tuple[int, ...]] = []

        def generated(e) -> bool:
            # is e a sum of already-found exponent vectors?
            if all(x == 0 for x in e):
                return True
            for g in found:
                if all(x >= y for x, y in zip(e, g)):
                    if generated(tuple(x - y for x, y in zip(e, g))):
                        return True
            return False

        for total in range(1, bound + 1):
            for e in sorted(_compositions(total, self.nvars), reverse=True):
                if sum(e[i] * self.weights[i] for i in range(self.nvars)) != 0:
                    continue
                if not generated(e):
                    found.append(e)
        names = [self._monomial_name(e) for e in found]
        return {"generators": names, "exponents": found,
                "complete_up_to": bound}

    def _monomial_name(self, e) -> str:
        parts = [
            f"{v}^{k}" if k > 1 else v
            for v, k in zip(self.variables, e) if k
        ]
        return "*".join(parts) if parts else "1"


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def validate_ring(spec: GradedRingSpec) -> ValidatedRing:
    """Check homogeneity and positivity; record weights and the crossing sum."""
    return ValidatedRing(spec)
