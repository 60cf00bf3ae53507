"""Exact construction, validation and classification of Leibniz algebra extensions."""

from .algebra import (
    LeibnizAlgebra,
    Predicates,
    StructureTensor,
    Subspace,
    abelian,
    check_antiderivation,
    check_derivation,
    derived_subalgebra,
    direct_product,
    evaluate_bracket,
    from_table,
    is_leibniz,
    leibniz_defect,
    right_center,
    sl2,
    structural_predicates,
)
from .crossed import (
    AxiomReport,
    CrossedSystem,
    PreCrossedDatum,
    check_bimodule,
    check_cocycle,
    check_discrete_cocycle,
    check_discrete_rep,
    coboundary_datum,
    crossed_product,
    induce_from_section,
    trivial_datum,
    validate,
)
from .equivalence import EquivalenceResult, Witness, find_witness, psi_of_witness, quotient, twist, verify_witness
from .errors import (
    BudgetError,
    DimensionError,
    FieldError,
    FormatError,
    InvalidSystemError,
    LeibnizLabError,
    NotLeibnizError,
    UnsupportedError,
)
from .field import GF, QQ, Field, enumerate_vectors, solve_linear

__version__ = "0.1.0"
