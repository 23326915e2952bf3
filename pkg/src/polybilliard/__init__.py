"""Polygonal billiards: orbits, unfoldings, periodic-orbit codes and comparisons of tables."""

__version__ = "0.1.0"

from .billiard import (
    CornerHit,
    Next,
    PhasePoint,
    Tangency,
    billiard_step,
    is_periodic,
    iterate,
    rho_distance,
    symbolic_separation_index,
)
from .codes import PillowcaseCode, canonical, codes_equivalent, itinerary_to_code, validate_code
from .compare import (
    ComparisonReport,
    SideCountMismatch,
    best_labeling,
    code_equivalence_probe,
    compare_spectra,
    similarity_recover,
)
from .geometry import Isometry2, classify, compose
from .periodic import (
    BudgetExceeded,
    CylinderFamily,
    Spectrum,
    enumerate_spectrum,
    oracle_spectrum,
    realize_code,
    verify_t1_doubling,
)
from .polygon import (
    InvalidPolygon,
    Polygon,
    dihedral_orbit,
    from_exact_angles,
    l_table,
    rationality,
    unit_square,
    validate_polygon,
)
from .unfolding import RepeatedSymbol, find_saddle_connections, unfold_code

__all__ = [
    "BudgetExceeded",
    "ComparisonReport",
    "CornerHit",
    "CylinderFamily",
    "InvalidPolygon",
    "Isometry2",
    "Next",
    "PhasePoint",
    "PillowcaseCode",
    "Polygon",
    "RepeatedSymbol",
    "SideCountMismatch",
    "Spectrum",
    "Tangency",
    "best_labeling",
    "billiard_step",
    "canonical",
    "classify",
    "code_equivalence_probe",
    "codes_equivalent",
    "compare_spectra",
    "compose",
    "dihedral_orbit",
    "enumerate_spectrum",
    "find_saddle_connections",
    "from_exact_angles",
    "is_periodic",
    "iterate",
    "itinerary_to_code",
    "l_table",
    "oracle_spectrum",
    "rationality",
    "realize_code",
    "rho_distance",
    "similarity_recover",
    "symbolic_separation_index",
    "unfold_code",
    "unit_square",
    "validate_code",
    "validate_polygon",
    "verify_t1_doubling",
]
