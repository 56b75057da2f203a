"""Cohomology of finite graded posets with presheaf coefficients.

Two computations of the same invariant: the cochain complex on the nerve
(every strictly increasing chain contributes), and the cellular complex
built from local groups on upper intervals.  The two agree exactly on
cellular posets; the library verifies this numerically and also houses the
standard counterexamples.
"""

from .abelian import (
    AbelianGroup,
    CochainComplex,
    GroupHom,
    IntMatrix,
    hnf,
    kernel_lattice,
    snf,
    subquotient_homology,
)
from .builders import (
    boolean_lattice,
    bruhat_poset,
    circle_poset,
    face_poset,
    khovanov,
    parse_pd,
    partition_lattice,
    remove_top,
    rp2_poset,
    suspension_simplex_poset,
    tree_poset,
)
from .cellular import (
    cell_group,
    cellular_cohomology,
    cellular_complex,
    compare,
    incidence_signs,
    is_cellular,
    level_decomposition_check,
)
from .errors import InvalidInput, PosetCohError, PreconditionError, UngradedPosetError
from .poset import (
    Poset,
    closed_interval,
    filtration_level,
    from_covers,
    has_diamond_property,
    mobius,
    open_interval,
)
from .presheaf import Presheaf, PresheafMorphism, constant, validate_presheaf, yoneda
from .reports import CohomologyReport, ComparisonReport
from .singular import (
    cohomology,
    full_nerve_complex,
    limit,
    long_exact_sequence_check,
    nerve_complex,
    reduced_nerve_complex,
    relative_nerve_complex,
    singular_cohomology,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "CochainComplex",
    "CohomologyReport",
    "ComparisonReport",
    "GroupHom",
    "IntMatrix",
    "InvalidInput",
    "Poset",
    "PosetCohError",
    "PreconditionError",
    "Presheaf",
    "PresheafMorphism",
    "UngradedPosetError",
    "boolean_lattice",
    "bruhat_poset",
    "cell_group",
    "cellular_cohomology",
    "cellular_complex",
    "circle_poset",
    "closed_interval",
    "cohomology",
    "compare",
    "constant",
    "face_poset",
    "filtration_level",
    "from_covers",
    "full_nerve_complex",
    "has_diamond_property",
    "hnf",
    "incidence_signs",
    "is_cellular",
    "kernel_lattice",
    "khovanov",
    "level_decomposition_check",
    "limit",
    "long_exact_sequence_check",
    "mobius",
    "nerve_complex",
    "open_interval",
    "parse_pd",
    "partition_lattice",
    "reduced_nerve_complex",
    "relative_nerve_complex",
    "remove_top",
    "rp2_poset",
    "singular_cohomology",
    "snf",
    "subquotient_homology",
    "suspension_simplex_poset",
    "tree_poset",
    "validate_presheaf",
    "yoneda",
]
