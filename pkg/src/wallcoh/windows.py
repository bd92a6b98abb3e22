"""Twist-window slice checks.

For windows spanned by degree shifts of the ring, morphism spaces reduce to
weight pieces of the side's local cohomology: the shift-j-to-j' component
lives at weight j' - j. A window is a positive slice when all those pieces
vanish, and a strong slice when the vanishing extends through the whole
half-line certified by the observed vanishing bound.

An empty side keeps the zero-ideal convention: its local cohomology is the
ring itself, so slice conditions degenerate to vanishing of ring pieces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cech import CohomologyTable
from .errors import BoxTooSmall, PreconditionNotMet
from .wallcross import DualityVerdict, vanishing_bounds


@dataclass
class SliceVerdict:
    side: str
    strong: bool
    passed: bool
    window: list
    failing_difference: int | None = None

    def to_payload(self) -> dict:
        return {
            "side": self.side,
            "strong": self.strong,
            "passed": self.passed,
            "window": self.window,
            "failing_difference": self.failing_difference,
        }


def _normalize_window(window) -> list[int]:
    w = sorted(set(int(j) for j in window))
    if not w:
        raise ValueError("window must be nonempty")
    return w


def _side_weight_zero(table: CohomologyTable, side: str, i: int) -> bool:
    # for an empty side the stored entries are the ring pieces themselves
    # (zero-ideal convention), so this covers both cases
    return table.weight_is_zero(side, i)


def slice_check(table: CohomologyTable, window, side: str) -> SliceVerdict:
    """Positive (resp. negative) slice: the side's local cohomology vanishes
    at every difference of window weights."""
    w = _normalize_window(window)
    box = table.box
    diffs = sorted({jp - j for j in w for jp in w})
    if diffs[0] < box.weight_min or diffs[-1] > box.weight_max:
        raise BoxTooSmall(
            f"window differences {diffs[0]}..{diffs[-1]} exceed the weight box"
        )
    for delta in diffs:
        if not _side_weight_zero(table, side, delta):
            return SliceVerdict(side, False, False, w, delta)
    return SliceVerdict(side, False, True, w)


def strong_slice_check(table: CohomologyTable, window, side: str) -> SliceVerdict:
    """Strong slice: vanishing at all differences shifted into the half-line
    (upward for plus, downward for minus), tail certified by the observed
    vanishing bound."""
    w = _normalize_window(window)
    box = table.box
    min_diff = w[0] - w[-1]
    max_diff = w[-1] - w[0]
    c_plus, c_minus = vanishing_bounds(table)
    if side == "plus":
        if min_diff < box.weight_min:
            raise BoxTooSmall("window differences exceed the weight box")
        for i in range(min_diff, box.weight_max + 1):
            if not _side_weight_zero(table, side, i):
                return SliceVerdict(side, True, False, w, i)
        if table.r(side) and min_diff < c_plus:
            return SliceVerdict(side, True, False, w, min_diff)
        return SliceVerdict(side, True, True, w)
    if max_diff > box.weight_max:
        raise BoxTooSmall("window differences exceed the weight box")
    for i in range(box.weight_min, max_diff + 1):
        if not _side_weight_zero(table, side, i):
            return SliceVerdict(side, True, False, w, i)
    if table.r(side) and max_diff > c_minus:
        return SliceVerdict(side, True, False, w, max_diff)
    return SliceVerdict(side, True, True, w)


def max_windows(table: CohomologyTable) -> dict:
    """Maximal widths of contiguous windows per slice criterion, with one
    representative per width; a contiguous window of width k is a slice
    exactly when the side vanishes on the difference strip |i| <= k - 1."""
    box = table.box
    limit = min(-box.weight_min, box.weight_max)

    def strip_width(side: str) -> tuple[int, bool]:
        width = 0
        while width < limit:
            lo, hi = -width, width
            if not all(_side_weight_zero(table, side, i)
                       for i in range(lo, hi + 1)):
                break
            width += 1
        return width, width >= limit

    plus_w, plus_capped = strip_width("plus")
    minus_w, minus_capped = strip_width("minus")
    sim = min(plus_w, minus_w)

    def rep(width: int):
        return list(range(width)) if width else None

    return {
        "positive": {"width": plus_w, "representative": rep(plus_w),
                     "box_limited": plus_capped},
        "negative": {"width": minus_w, "representative": rep(minus_w),
                     "box_limited": minus_capped},
        "simultaneous": {"width": sim, "representative": rep(sim),
                         "box_limited": plus_capped and minus_capped},
    }


def rhom_swap_check(table: CohomologyTable, window,
                    duality: DualityVerdict) -> dict:
    """For every ordered pair of window weights, the plus-side piece at the
    forward difference vanishes exactly when the minus-side piece at the
    reversed difference does. Requires a passed duality check at a = 0."""
    if duality.a != 0 or duality.overall != "pass":
        raise PreconditionNotMet(
            "swap check needs a passed duality verdict at a = 0"
        )
    w = _normalize_window(window)
    box = table.box
    violations = []
    pairs = 0
    for j in w:
        for jp in w:
            d = jp - j
            if d < box.weight_min or d > box.weight_max \
                    or -d < box.weight_min or -d > box.weight_max:
                raise BoxTooSmall(f"difference {d} exceeds the weight box")
            pairs += 1
            plus_zero = _side_weight_zero(table, "plus", d)
            minus_zero = _side_weight_zero(table, "minus", -d)
            if plus_zero != minus_zero:
                violations.append({"j": j, "j_prime": jp,
                                   "plus_zero": plus_zero,
                                   "minus_zero": minus_zero})
    return {"pairs": pairs, "violations": violations,
            "passed": not violations}
