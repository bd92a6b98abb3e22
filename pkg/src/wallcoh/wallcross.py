"""Wall-crossing classification, vanishing bounds, and the graded duality
check.

The crossing parameter is read off the presentation as minus the weight sum
of the variables corrected by the relations; the duality is verified purely
at the level of graded dimensions, pairing homological degrees j+1 with
n - j (n = dim of the degree-zero base) and weight i + a with -i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .cech import Box, CohomologyTable
from .errors import BoxTooSmall, EmptySide, InconclusiveInfinitePiece
from .gradedring import ValidatedRing
from .toric import krull_dim


@dataclass
class WallCrossingReport:
    sigma: int
    a_parameter: int
    kind: str                       # flop | flip | antiflip
    smallness: dict                 # side -> {"codim", "small", "verified"}
    cartier_step: dict              # side -> int | None
    bounds: dict | None             # {"c_plus", "c_minus"} observed in box
    canonical_vanishing: dict | None
    base_dim: int
    notes: list = field(default_factory=list)

    def to_payload(self) -> dict:
        return {
            "sigma": self.sigma,
            "a_parameter": self.a_parameter,
            "kind": self.kind,
            "smallness": self.smallness,
            "cartier_step": self.cartier_step,
            "bounds": self.bounds,
            "canonical_vanishing": self.canonical_vanishing,
            "base_dim": self.base_dim,
            "notes": self.notes,
        }


def cartier_step(ring: ValidatedRing, side: str) -> int:
    """lcm of the absolute weights of the side's variable generators; a
    sufficient-condition step, not claimed minimal."""
    idx = ring.side_indices(side)
    if not idx:
        raise EmptySide(side)
    return lcm(*[abs(ring.weights[i]) for i in idx])


def _smallness(ring: ValidatedRing, side: str) -> dict:
    """Codimension of the side's unstable locus by the complete-intersection
    count: relations vanishing identically on the coordinate subspace do not
    cut it down."""
    idx = set(ring.side_indices(side))
    killed = 0
    survivors = 0
    for _, poly in ring.relations:
        if all(any(e[i] for i in idx) for e in poly):
            killed += 1
        else:
            survivors += 1
    codim = len(idx) - killed
    verified = survivors <= 1
    return {
        "codim": codim,
        "small": codim >= 2,
        "verified": verified,
    }


def classify(ring: ValidatedRing, table: CohomologyTable | None = None) -> WallCrossingReport:
    sigma = ring.sigma
    a = -sigma
    kind = "flop" if a == 0 else ("flip" if a > 0 else "antiflip")
    notes = []
    if kind == "antiflip":
        notes.append("a < 0: outside the flip/flop families; negative "
                     "control only")
    smallness = {s: _smallness(ring, s) for s in ("plus", "minus")}
    steps = {}
    for s in ("plus", "minus"):
        try:
            steps[s] = cartier_step(ring, s)
        except EmptySide:
            steps[s] = None
    bounds = canonical = None
    if table is not None:
        try:
            c_plus, c_minus = vanishing_bounds(table)
            bounds = {"c_plus": c_plus, "c_minus": c_minus,
                      "observed_within_box": True}
            canonical = canonical_vanishing_check(table, a)
        except BoxTooSmall as exc:
            notes.append(f"bounds not observable: {exc}")
    return WallCrossingReport(
        sigma=sigma,
        a_parameter=a,
        kind=kind,
        smallness=smallness,
        cartier_step=steps,
        bounds=bounds,
        canonical_vanishing=canonical,
        base_dim=krull_dim(ring) - 1,
        notes=notes,
    )


def _weight_zero(table: CohomologyTable, side: str, i: int) -> bool:
    return table.weight_is_zero(side, i)


def vanishing_bounds(table: CohomologyTable) -> tuple[int, int]:
    """Smallest c_plus with the plus side vanishing at all box weights
    >= c_plus, and the largest symmetric c_minus; both box observations."""
    box = table.box
    top = None
    for i in box.weights():
        if not _weight_zero(table, "plus", i):
            top = i
    if top == box.weight_max:
        raise BoxTooSmall(
            "plus-side local cohomology is nonzero at the top box weight; "
            "no vanishing tail is visible"
        )
    c_plus = box.weight_min if top is None else top + 1
    bottom = None
    for i in box.weights():
        if not _weight_zero(table, "minus", i):
            bottom = i
            break
    if bottom == box.weight_min:
        raise BoxTooSmall(
            "minus-side local cohomology is nonzero at the bottom box "
            "weight; no vanishing tail is visible"
        )
    c_minus = box.weight_max if bottom is None else bottom - 1
    return c_plus, c_minus


def canonical_vanishing_check(table: CohomologyTable, a: int) -> dict:
    """Both one-sided conditions on all box weights: the plus side vanishes
    at weights >= a and the minus side at weights <= a."""
    box = table.box
    if not (box.weight_min <= a <= box.weight_max):
        raise BoxTooSmall(f"a = {a} lies outside the weight box")
    plus_bad = [i for i in box.weights()
                if i >= a and not _weight_zero(table, "plus", i)]
    minus_bad = [i for i in box.weights()
                 if i <= a and not _weight_zero(table, "minus", i)]
    c_plus, c_minus = None, None
    try:
        c_plus, c_minus = vanishing_bounds(table)
    except BoxTooSmall:
        pass
    verdict = {
        "passed": not plus_bad and not minus_bad,
        "a": a,
        "plus_failures": plus_bad,
        "minus_failures": minus_bad,
    }
    if c_plus is not None:
        verdict["margins"] = {"plus": a - c_plus, "minus": c_minus - a}
    return verdict


@dataclass
class DualityVerdict:
    overall: str                    # pass | fail | inconclusive
    mode: str
    a: int
    n: int
    exceptional_window: list
    cells: list                     # [{"j", "i" or "mu", "lhs", "rhs", "equal"}]
    witness: dict | None
    reason: str | None = None

    def to_payload(self) -> dict:
        return {
            "overall": self.overall,
            "mode": self.mode,
            "a": self.a,
            "n": self.n,
            "exceptional_window": self.exceptional_window,
            "cells": self.cells,
            "witness": self.witness,
            "reason": self.reason,
        }


def duality_check(table: CohomologyTable, a: int,
                  mode: str = "weight") -> DualityVerdict:
    """Graded-dimension shadow of the duality: in weight mode compare
    dim H^{j+1}(plus)_{i+a} with dim H^{n-j}(minus)_{-i} outside the
    exceptional window -a < i < 0; fine mode compares fine degrees through
    the presentation twist vector."""
    ring = table.ring
    n = krull_dim(ring) - 1
    window = [i for i in range(-a + 1, 0)]
    if mode == "fine":
        return _duality_fine(table, a, n, window)
    if mode != "weight":
        raise ValueError("mode must be 'weight' or 'fine'")
    box = table.box
    cells = []
    witness = None
    compared = [
        i for i in box.weights()
        if box.weight_min <= i + a <= box.weight_max
        and box.weight_min <= -i <= box.weight_max
        and i not in window
    ]
    j_range = range(-1, n + 2)
    for i in compared:
        for j in j_range:
            lhs, lhs_fin = table.weight_aggregate("plus", j + 1, i + a)
            rhs, rhs_fin = table.weight_aggregate("minus", n - j, -i)
            if not (lhs_fin and rhs_fin):
                return DualityVerdict(
                    overall="inconclusive", mode=mode, a=a, n=n,
                    exceptional_window=window, cells=cells, witness=None,
                    reason=str(InconclusiveInfinitePiece(i)),
                )
            if lhs == 0 and rhs == 0:
                continue
            cell = {"j": j, "i": i, "lhs": lhs, "rhs": rhs,
                    "equal": lhs == rhs}
            cells.append(cell)
            if not cell["equal"] and witness is None:
                witness = cell
    overall = "fail" if witness else "pass"
    return DualityVerdict(overall, mode, a, n, window, cells, witness)


def _duality_fine(table: CohomologyTable, a: int, n: int,
                  window: list) -> DualityVerdict:
    ring = table.ring
    box = table.box
    c_vec = ring.c_vec
    bound = box.fine_bound
    degrees = set()
    for (j, mu) in table.sides["plus"]["local"]:
        degrees.add(mu)
    for (j, mu) in table.sides["minus"]["local"]:
        degrees.add(tuple(-x - c for x, c in zip(mu, c_vec)))
    cells = []
    witness = None
    skipped = 0
    for mu in sorted(degrees):
        if (ring.weight_of_fine(mu) - a) in window:
            continue
        dual = tuple(-x - c for x, c in zip(mu, c_vec))
        if sum(abs(x) for x in mu) > bound or sum(abs(x) for x in dual) > bound:
            skipped += 1
            continue
        for j in range(-1, n + 2):
            lhs = table.local_dim("plus", j + 1, mu)
            rhs = table.local_dim("minus", n - j, dual)
            if lhs == 0 and rhs == 0:
                continue
            cell = {"j": j, "mu": list(mu), "lhs": lhs, "rhs": rhs,
                    "equal": lhs == rhs}
            cells.append(cell)
            if not cell["equal"] and witness is None:
                witness = cell
    if witness is not None:
        overall = "fail"
    elif cells:
        overall = "pass"
    else:
        overall = "inconclusive"
    reason = (f"{skipped} support degrees skipped: dual partner leaves "
              f"the fine box" if skipped else None)
    if overall == "inconclusive" and reason is None:
        reason = "no comparable support inside the box"
    return DualityVerdict(overall, "fine", a, n, window, cells, witness,
                          reason=reason)
