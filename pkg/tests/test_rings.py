"""Ring validation, piece bases, and the degree-zero subalgebra."""

import pytest

from wallcoh import FieldSpec, GradedRingSpec, validate_ring
from wallcoh.errors import (
    DegreeBoxOverflow,
    InhomogeneousRelation,
    NonPositiveGrading,
    ZeroRelation,
)

from conftest import make_ring
from oracles import polynomial_piece_count

Z2 = [[1, 0], [1, 0], [0, 1], [0, 1]]


def test_validate_segre_presentation(segre_ring):
    assert segre_ring.weights == (1, 1, -1, -1)
    assert segre_ring.sigma == 0


def test_inhomogeneous_relation_names_both_degrees():
    spec = GradedRingSpec.from_strings(
        ["x", "y", "u", "v"], Z2, [1, -1], ["x*u - y"])
    with pytest.raises(InhomogeneousRelation) as err:
        validate_ring(spec)
    assert set(err.value.degrees) == {(1, 1), (1, 0)}


def test_zero_relation_rejected():
    spec = GradedRingSpec.from_strings(
        ["x", "y", "u", "v"], Z2, [1, -1], ["x*u - x*u"])
    with pytest.raises(ZeroRelation):
        validate_ring(spec)


def test_polynomial_ring_without_relations_is_valid():
    ring = make_ring([1, 1, -1, -1])
    assert ring.relations == []


def test_nonpositive_grading_zero_degree_variable():
    spec = GradedRingSpec.from_strings(["x", "z"], [[1], [0]], [1])
    with pytest.raises(NonPositiveGrading) as err:
        validate_ring(spec)
    assert err.value.witness == (0, 1)


def test_nonpositive_grading_opposite_directions():
    spec = GradedRingSpec.from_strings(["x", "z"], [[1], [-1]], [1])
    with pytest.raises(NonPositiveGrading) as err:
        validate_ring(spec)
    wit = err.value.witness
    assert wit is not None and any(wit)
    # the witness is a genuine degree-zero direction
    assert wit[0] * 1 + wit[1] * (-1) == 0


def test_irrelevant_ideals_sign_sort():
    assert make_ring([1, 1, -1, -1]).irrelevant_ideals() == (
        ["x", "y"], ["u", "v"])
    assert make_ring([2, 1, -1, -1]).irrelevant_ideals() == (
        ["x", "y"], ["u", "v"])
    plus, minus = make_ring([1, 2], fine=[[1, 0], [0, 1]],
                            variables=("x", "y")).irrelevant_ideals()
    assert plus == ["x", "y"] and minus == []


def test_piece_basis_segre(segre_ring):
    pb = segre_ring.piece_basis((1, 1))
    assert pb.dim == 3
    assert len(pb.ambient_monomials) == 4
    assert pb.relation_span_rank == 1
    # reproducible choice: descending-lex monomials, leftmost pivot removed
    assert pb.quotient_basis == ((1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))


def test_piece_basis_pure_monomial():
    ring = make_ring([1, 1], fine=[[1, 0], [0, 1]], variables=("x", "y"))
    pb = ring.piece_basis((2, 0))
    assert pb.quotient_basis == ((2, 0),)


def test_piece_basis_negative_degree_empty():
    ring = make_ring([1, 1], fine=[[1, 0], [0, 1]], variables=("x", "y"))
    assert ring.piece_dim((-1, 2)) == 0


def test_piece_dim_independent_of_relation_order():
    a = make_ring([1, -1], ["b^2 - a*c", "c^2 - b*d", "b*c - a*d"],
                  fine=[[3, 0], [2, 1], [1, 2], [0, 3]],
                  variables=("a", "b", "c", "d"))
    b = make_ring([1, -1], ["b*c - a*d", "c^2 - b*d", "b^2 - a*c"],
                  fine=[[3, 0], [2, 1], [1, 2], [0, 3]],
                  variables=("a", "b", "c", "d"))
    for mu in [(3, 0), (4, 2), (6, 3), (5, 4), (2, 2), (6, 6)]:
        assert a.piece_dim(mu) == b.piece_dim(mu)


def test_multiplication_by_x_injective_on_segre_piece(segre_ring):
    src = segre_ring.piece_context((1, 1))
    tgt = segre_ring.piece_context((2, 1))
    x_poly = {(1, 0, 0, 0): 1}
    mat = segre_ring.mult_matrix(x_poly, src, tgt)
    ops = segre_ring.ops
    assert src.dim == 3
    assert ops.rank(mat, tgt.dim) == 3


def test_polynomial_piece_dims_match_pure_enumeration():
    ring = make_ring([1, 1, -1, -1])
    for mu in [(0, 0, 0, 0), (1, 2, 0, 3), (2, 2, 2, 2), (1, 0, 0, 0)]:
        assert ring.piece_dim(mu) == polynomial_piece_count(
            ring.fine_degrees, mu)
    segre = make_ring([1, -1], fine=Z2)
    for mu in [(0, 0), (1, 1), (2, 1), (3, 2), (2, 0)]:
        assert segre.piece_dim(mu) == polynomial_piece_count(
            segre.fine_degrees, mu)


def test_degree_box_overflow():
    spec = GradedRingSpec.from_strings(
        ["x", "y", "u", "v"], Z2, [1, -1], degree_limit=3)
    ring = validate_ring(spec)
    with pytest.raises(DegreeBoxOverflow):
        ring.piece_basis((3, 0))


def test_degree_zero_generators_conifold():
    ring = make_ring([1, 1, -1, -1])
    out = ring.degree_zero_generators(2)
    assert out["generators"] == ["x*u", "x*v", "y*u", "y*v"]
    assert out["complete_up_to"] == 2


def test_degree_zero_generators_single_variable():
    ring = make_ring([1], fine=[[1]], variables=("x",))
    assert ring.degree_zero_generators(4)["generators"] == []


def test_degree_zero_generators_weighted():
    ring = make_ring([1, 1, -1, -2])
    out = ring.degree_zero_generators(3)
    assert out["generators"] == ["x*u", "y*u", "x^2*v", "x*y*v", "y^2*v"]


def test_prime_field_screen_matches_rationals(segre_ring):
    screened = make_ring([1, -1], ["x*u - y*v"], fine=Z2,
                         field_spec=FieldSpec("prime-field", 2147483629))
    for mu in [(1, 1), (2, 2), (3, 1), (4, 2)]:
        assert screened.piece_dim(mu) == segre_ring.piece_dim(mu)


def test_field_spec_invariants():
    with pytest.raises(ValueError):
        FieldSpec("rationals", 7)
    with pytest.raises(ValueError):
        FieldSpec("prime-field", 10)
    with pytest.raises(ValueError):
        FieldSpec("prime-field", 2**31 + 11)
