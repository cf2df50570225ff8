from .complexes import (
    ComplexError,
    EquivariantComplex,
    SimplicialComplex,
    barycentric_subdivision,
    circle_join_power,
    deleted_join,
    in_symmetric_chessboard,
    multiple_chessboard,
    simplex,
    simplex_boundary,
    symmetric_multiple_chessboard,
)
from .constraint import ConstraintAssignment, ConstraintError, constraint_map, verify_constraint_zero_set
from .homology import HomologyResult, homology
from .shelling import Shellability, ShellingError, is_shellable
