"""Exact three-qubit entanglement measures, finite matrix groups and matrix
Lie algebras over Q and Q(sqrt d)."""

from .scalar import QuadExt, format_scalar, parse_scalar, quad
from .linalg import Matrix, charpoly, congruence_signature, det, eigen_quadratic, identity, kron
from .qubits import (
    PureState,
    b_state,
    entanglement_profile,
    ghz_state,
    is_b_type,
    reduce,
    three_tangle,
    two_tangle,
    w_state,
)
from .matgroup import MatrixGroup, derived_subgroup, enumerate_group, identify_small, order_bsgs
from .liealg import (
    LieAlgebraBasis,
    killing_form,
    killing_signature,
    lie_closure,
    roots_relative,
    structure_constants,
    verify_chevalley_table,
)

__version__ = "0.1.0"
