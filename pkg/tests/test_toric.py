"""Enumeration ground truth: closed forms, series, Gorenstein, normality."""

import pytest

from wallcoh.cech import box_degrees, certified_degree, side_generators
from wallcoh.errors import RelationsPresent, SeriesMismatch
from wallcoh.toric import (
    ClosedForm,
    binomial_lattice,
    closed_form_dims,
    gorenstein_check,
    hilbert_series,
    krull_dim,
    normality_check,
    semigroup_cech_dims,
    semigroup_class_count,
    semigroup_local_dims_fiber,
)

from conftest import make_ring
from oracles import cubic_coarse_dims, minus_side_count, plus_side_count


def test_closed_form_against_brute_force(conifold_ring, francia_ring):
    assert closed_form_dims(conifold_ring, "plus", -4) == 10
    assert closed_form_dims(conifold_ring, "plus", -4) == \
        plus_side_count([1, 1, -1, -1], -4)
    assert closed_form_dims(francia_ring, "plus", -3) == 3
    assert closed_form_dims(francia_ring, "plus", -3) == \
        plus_side_count([1, 1, -1, -2], -3)
    assert closed_form_dims(francia_ring, "minus", 3) == \
        minus_side_count([1, 1, -1, -2], 3) == 1


def test_closed_form_top_weight_vanishing(conifold_ring):
    # nothing above minus the sum of the positive weights
    assert closed_form_dims(conifold_ring, "plus", -1) == 0
    assert closed_form_dims(conifold_ring, "plus", 0) == 0
    assert closed_form_dims(conifold_ring, "plus", 5) == 0


def test_closed_form_rejects_relations(segre_ring):
    with pytest.raises(RelationsPresent):
        closed_form_dims(segre_ring, "plus", -2)


def test_relation_free_duality_symmetry(conifold_ring, francia_ring,
                                        antiflip_ring):
    # dimension shadow of the exponent bijection: plus at i equals minus at
    # -i - sigma, for every probed weight
    for ring in (conifold_ring, francia_ring, antiflip_ring):
        cf = ClosedForm(ring)
        for i in range(-9, 10):
            assert cf.weight_dim("plus", i) == \
                cf.weight_dim("minus", -i - ring.sigma)


def test_fine_degree_symmetry(francia_ring):
    cf = ClosedForm(francia_ring)
    c_vec = francia_ring.c_vec
    for mu in [(-1, -1, 0, 0), (-2, -1, 1, 0), (-1, -2, 0, 1), (-3, -1, 0, 0)]:
        dual = tuple(-x - c for x, c in zip(mu, c_vec))
        assert cf.fine_dim("plus", mu) == cf.fine_dim("minus", dual)


def test_hilbert_series_segre(segre_ring):
    import sympy

    series = hilbert_series(segre_ring)
    t0, t1 = sympy.symbols("t0 t1")
    expected = (1 - t0 * t1) / ((1 - t0) ** 2 * (1 - t1) ** 2)
    assert sympy.simplify(series.sympy_multigraded() - expected) == 0


def test_hilbert_series_single_variable():
    import sympy

    ring = make_ring([1], fine=[[1]], variables=("x",))
    t = sympy.Symbol("t")
    assert sympy.simplify(
        hilbert_series(ring).sympy_multigraded() - 1 / (1 - t)) == 0


def test_hilbert_series_twisted_cubic(twisted_cubic_ring):
    import sympy

    series = hilbert_series(twisted_cubic_ring)
    t = sympy.Symbol("t")
    expected = (1 + 2 * t) / (1 - t) ** 2
    assert sympy.simplify(series.sympy_coarse() - expected) == 0
    # coarse dims match the direct count of cubic monomials
    pairs = dict(series.coarse_pairs()[0])
    dims = cubic_coarse_dims(6)
    # expand expected series coefficients independently
    expand = sympy.series(expected, t, 0, 7).removeO()
    for m, want in enumerate(dims):
        assert expand.coeff(t, m) == want


def test_series_mismatch_refutes_bad_ci_assertion(twisted_cubic_ring):
    # the failure of the Koszul relation shows up at the sum of two
    # relation degrees, so the probe must reach that deep
    with pytest.raises(SeriesMismatch):
        hilbert_series(twisted_cubic_ring, check_bound=12, assert_ci=True)


def test_gorenstein_routes(conifold_ring, segre_ring, twisted_cubic_ring):
    assert gorenstein_check(conifold_ring)["verdict"] == "gorenstein"
    out = gorenstein_check(segre_ring)
    assert out["verdict"] == "gorenstein"
    assert out["route"] == "complete-intersection"
    out = gorenstein_check(twisted_cubic_ring)
    assert out["verdict"] == "not_gorenstein"
    assert out["route"] == "normal-semigroup + series-symmetry"


def test_gorenstein_unknown_outside_routes():
    ring = make_ring([1, -1], ["x*u - y*v + w"],
                     fine=[[1, 0], [1, 0], [0, 1], [0, 1], [1, 1]],
                     variables=("x", "y", "u", "v", "w"))
    # one relation: the complete-intersection route still applies
    assert gorenstein_check(ring)["verdict"] == "gorenstein"
    # several non-binomial relations, no assertion: no route at all
    mixed = make_ring([1, -1], ["x*u - y*v + w", "w^2 - x*y*u*v"],
                      fine=[[1, 0], [1, 0], [0, 1], [0, 1], [1, 1]],
                      variables=("x", "y", "u", "v", "w"))
    out = gorenstein_check(mixed)
    assert out["verdict"] == "unknown"
    assert out["route"] == "none"


def test_gorenstein_semigroup_route_positive():
    # a redundant binomial presentation is not a regular sequence, so the
    # verdict must come from the normal-semigroup route and still land on
    # gorenstein (the underlying ring is the quadric hypersurface)
    ring = make_ring([1, -1], ["x*u - y*v", "x^2*u^2 - y^2*v^2"],
                     fine=[[1, 0], [1, 0], [0, 1], [0, 1]])
    out = gorenstein_check(ring)
    assert out["verdict"] == "gorenstein"
    assert out["route"] == "normal-semigroup + series-symmetry"


def test_normality_verdicts(segre_ring):
    assert normality_check(segre_ring, 8)["status"] == "normal"
    cusp = make_ring([1], ["p^3 - q^2"], fine=[[2], [3]],
                     variables=("p", "q"))
    out = normality_check(cusp, 4)
    assert out["status"] == "not_normal"
    assert out["witness"]["fine_degree"] == [1]
    assert normality_check(cusp, 1)["status"] == "inconclusive"


def test_krull_dimensions(conifold_ring, segre_ring, twisted_cubic_ring):
    assert krull_dim(conifold_ring) == 4
    assert krull_dim(segre_ring) == 3
    assert krull_dim(twisted_cubic_ring) == 2


def test_class_counts_match_linear_algebra(segre_ring, twisted_cubic_ring):
    for ring, bound in ((segre_ring, 5), (twisted_cubic_ring, 7)):
        lattice = binomial_lattice(ring)
        assert lattice is not None
        for mu in box_degrees(2, bound):
            assert semigroup_class_count(lattice, mu) == ring.piece_dim(mu)


def test_separating_grading_oracle(segre_z3_ring):
    gens = {s: side_generators(segre_z3_ring, s) for s in ("plus", "minus")}
    for side in ("plus", "minus"):
        for mu in [(-2, 0, -1), (-1, 1, 0), (0, 0, 0), (-3, 1, -1),
                   (2, -2, 1), (1, -3, 0)]:
            rec = certified_degree(segre_z3_ring, gens[side], mu)
            assert tuple(rec.cech) == semigroup_cech_dims(
                segre_z3_ring, side, mu)


def test_fiber_oracle_matches_engine_on_coarse_grading(segre_ring):
    gens = {s: side_generators(segre_ring, s) for s in ("plus", "minus")}
    for side in ("plus", "minus"):
        for mu in [(-2, 0), (0, -2), (-3, 1), (1, -3), (2, 2), (-1, -1)]:
            rec = certified_degree(segre_ring, gens[side], mu)
            oracle = semigroup_local_dims_fiber(segre_ring, side, mu)
            assert tuple(rec.local) == oracle["local"], (side, mu)
            assert rec.ring_dim == oracle["ring_dim"]
