"""Exact computational engine for torus-weighted graded ring presentations:
weight-by-weight Cech and local cohomology, wall-crossing classification,
graded duality verification, and twist-window inventories."""

__version__ = "0.1.0"

from .cech import (  # noqa: F401
    Box,
    CohomologyTable,
    cech_cohomology,
    cech_piece,
    local_cohomology,
)
from .gradedring import (  # noqa: F401
    FieldSpec,
    GradedRingSpec,
    PieceBasis,
    ValidatedRing,
    validate_ring,
)
from .toric import (  # noqa: F401
    ClosedForm,
    closed_form_dims,
    gorenstein_check,
    hilbert_series,
    normality_check,
)
from .wallcross import (  # noqa: F401
    WallCrossingReport,
    canonical_vanishing_check,
    cartier_step,
    classify,
    duality_check,
    vanishing_bounds,
)
from .windows import (  # noqa: F401
    max_windows,
    rhom_swap_check,
    slice_check,
    strong_slice_check,
)
