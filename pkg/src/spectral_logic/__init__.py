"""Logic connectives as commuting diagonal observables, and the things
they can drive: truth tables, fuzzy memberships, and Braitenberg-style
vehicles whose controllers read those observables crisply, fuzzily, or
over a three-letter alphabet.
"""

from .connectives import (
    BINARY_CONNECTIVE_NAMES,
    LogicalObservable,
    TruthTable,
    all_binary_connectives,
    basis_index,
    binary_connective,
    connective_count,
    from_isometric,
    index_digits,
    observable_from_truth_table,
    rank1_projector,
    to_isometric,
)
from .formula import Formula, FormulaSyntaxError, compile_formula, eval_classical, parse
from .fuzzy import decide, fuzzify, membership, qubit_from_angles
from .linop import DensityMatrix, DiagonalOperator, DimensionMismatchError, State
from .multivalued import (
    angular_momentum_observable,
    dictator,
    dictators_3,
    interpolate_polynomial,
    max3,
    min3,
    tri_projectors,
)
from .sim import Bounds, LightSource, Vehicle, World, run, step, trajectory_csv

__version__ = "0.1.0"

__all__ = [
    "BINARY_CONNECTIVE_NAMES",
    "Bounds",
    "DensityMatrix",
    "DiagonalOperator",
    "DimensionMismatchError",
    "Formula",
    "FormulaSyntaxError",
    "LightSource",
    "LogicalObservable",
    "State",
    "TruthTable",
    "Vehicle",
    "World",
    "all_binary_connectives",
    "angular_momentum_observable",
    "basis_index",
    "binary_connective",
    "compile_formula",
    "connective_count",
    "decide",
    "dictator",
    "dictators_3",
    "eval_classical",
    "from_isometric",
    "fuzzify",
    "index_digits",
    "interpolate_polynomial",
    "max3",
    "membership",
    "min3",
    "observable_from_truth_table",
    "parse",
    "qubit_from_angles",
    "rank1_projector",
    "run",
    "step",
    "to_isometric",
    "tri_projectors",
    "trajectory_csv",
    "__version__",
]
