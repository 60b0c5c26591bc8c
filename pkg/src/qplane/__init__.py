"""qplane: exact representation theory of liftings of two-dimensional quantum planes.

Build the Hopf algebra H(D) from a lifting datum D = {G, a, b, eps1, eps2,
chi1, chi2, gamma}, decompose it into class subalgebras along the central
coset idempotents, and compute simples, projectives, blocks, Gabriel quivers
and representation type two independent ways: by the closed-form structure
theory and by a brute-force regular-representation oracle over Q(zeta_M).
"""

from .abelian import AbelianGroup, CharSubgroup, Character, GroupElement
from .cyclo import Cyclo, CycloField, field, multiplicative_order, nth_roots
from .lifting import (
    CaseTag,
    ClassSubalgebra,
    DatumError,
    LiftingAlgebra,
    LiftingDatum,
    build,
    class_decomposition,
    validate,
)
from .structalg import AlgebraElement, LeftModule, LoewyReport, StructAlgebra

__all__ = [
    "AbelianGroup",
    "AlgebraElement",
    "CaseTag",
    "CharSubgroup",
    "Character",
    "ClassSubalgebra",
    "Cyclo",
    "CycloField",
    "DatumError",
    "GroupElement",
    "LeftModule",
    "LiftingAlgebra",
    "LiftingDatum",
    "LoewyReport",
    "StructAlgebra",
    "build",
    "class_decomposition",
    "field",
    "multiplicative_order",
    "nth_roots",
    "validate",
]

__version__ = "0.1.0"
