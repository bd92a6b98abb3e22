import pytest

from wallcoh import Box, CohomologyTable, GradedRingSpec, validate_ring

EXPONENT_GRADING = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
STANDARD_BOX = Box(-8, 8, 12)


def make_ring(lam, relations=(), fine=None, variables=("x", "y", "u", "v"),
              field_spec=None):
    spec = GradedRingSpec.from_strings(
        list(variables),
        fine if fine is not None else EXPONENT_GRADING,
        lam,
        relations,
        field_spec=field_spec,
    )
    return validate_ring(spec)


@pytest.fixture(scope="session")
def conifold_ring():
    return make_ring([1, 1, -1, -1])


@pytest.fixture(scope="session")
def francia_ring():
    return make_ring([1, 1, -1, -2])


@pytest.fixture(scope="session")
def antiflip_ring():
    return make_ring([3, 1, -1, -1])


@pytest.fixture(scope="session")
def segre_ring():
    return make_ring([1, -1], ["x*u - y*v"], fine=[[1, 0], [1, 0], [0, 1], [0, 1]])


@pytest.fixture(scope="session")
def segre_z3_ring():
    return make_ring([1, -1, 0], ["x*u - y*v"],
                     fine=[[1, 0, 1], [1, 0, 0], [0, 1, 0], [0, 1, 1]])


@pytest.fixture(scope="session")
def twisted_cubic_ring():
    return make_ring([1, -1],
                     ["b^2 - a*c", "c^2 - b*d", "b*c - a*d"],
                     fine=[[3, 0], [2, 1], [1, 2], [0, 3]],
                     variables=("a", "b", "c", "d"))


@pytest.fixture(scope="session")
def conifold_table(conifold_ring):
    return CohomologyTable.compute(conifold_ring, STANDARD_BOX)


@pytest.fixture(scope="session")
def francia_table(francia_ring):
    return CohomologyTable.compute(francia_ring, STANDARD_BOX)


@pytest.fixture(scope="session")
def antiflip_table(antiflip_ring):
    return CohomologyTable.compute(antiflip_ring, STANDARD_BOX)
