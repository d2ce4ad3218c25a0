"""Registry of the named matrices used throughout the package, plus
joint-eigenstate checks of gate rows against commuting observable triples.

Every constant is stored with its printed overall factor applied.  Entries
are transcribed as printed, including known misprints; the checks in
:mod:`tripartite.reproduce` report where printed data disagrees with
computation rather than correcting it here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Matrix, diag, kron
from .qubits import (
    I_UNIT,
    NotNormalized,
    PureState,
    entanglement_profile,
    is_b_type,
    pauli_matrix,
)
from .scalar import Scalar, as_scalar

__all__ = [
    "NamedConstant",
    "UnknownConstant",
    "NotEigenvector",
    "constant",
    "names",
    "registry",
    "S2_SIGNS",
    "SL3_TABLE_NAMES",
    "observable_triple",
    "joint_eigensign_check",
    "row_state",
    "gate_entanglement_report",
]

H = Fraction(1, 2)


class UnknownConstant(KeyError):
    pass


class NotEigenvector(ValueError):
    def __init__(self, row: int, observable: int):
        super().__init__(f"row {row} is not an eigenvector of observable {observable}")
        self.row = row
        self.observable = observable


@dataclass(frozen=True)
class NamedConstant:
    name: str
    matrix: Matrix
    provenance: str


def _sparse(n: int, entries: dict, scale=1) -> Matrix:
    """n x n matrix from {(row, col): value}, times ``scale``."""
    rows = [[0] * n for _ in range(n)]
    for (i, j), v in entries.items():
        rows[i][j] = as_scalar(v) * as_scalar(scale)
    return Matrix(rows)


def _E(i: int, j: int) -> Matrix:
    """3x3 matrix unit (1-based indices)."""
    return _sparse(3, {(i - 1, j - 1): 1})


_S2 = H * Matrix([
    [1, -1, 1, 1],
    [1, 1, -1, 1],
    [1, -1, -1, -1],
    [1, 1, 1, -1],
])

S2_SIGNS = (
    (1, -1, -1),
    (-1, 1, -1),
    (-1, -1, 1),
    (1, 1, 1),
)

_S3 = H * Matrix([
    [0, 0, 0, 0, 1, 1, 1, -1],
    [1, 1, 1, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, -1, 1],
    [1, -1, 1, 1, 0, 0, 0, 0],
    [1, 1, -1, 1, 0, 0, 0, 0],
    [-1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, -1, 1, 1],
    [0, 0, 0, 0, -1, 1, 1, 1],
])

_X_A4 = H * Matrix([
    [0, 1, -1, -1, 0, 0, 1, 0],
    [0, 1, 1, -1, 0, 0, -1, 0],
    [0, 1, 1, 1, 0, 0, 1, 0],
    [-1, 0, 0, 0, 1, 1, 0, -1],
    [-1, 0, 0, 0, 1, -1, 0, 1],
    [-1, 0, 0, 0, -1, 1, 0, 1],
    [-1, 0, 0, 0, -1, -1, 0, -1],
    [0, 1, -1, 1, 0, 0, -1, 0],
])

_Y_A4 = H * Matrix([
    [0, -1, 1, -1, 0, 0, 1, 0],
    [0, 1, 1, 1, 0, 0, 1, 0],
    [0, 1, 1, -1, 0, 0, -1, 0],
    [-1, 0, 0, 0, 1, 1, 0, -1],
    [-1, 0, 0, 0, 1, -1, 0, 1],
    [-1, 0, 0, 0, -1, 1, 0, 1],
    [-1, 0, 0, 0, -1, -1, 0, -1],
    [0, -1, 1, 1, 0, 0, -1, 0],
])

# order of the standard basis throughout: x1 x2 x3 y1 y2 y3 h1 h2
SL3_TABLE_NAMES = ("x1", "x2", "x3", "y1", "y2", "y3", "h1", "h2")

_SL3 = {
    "x1": _E(2, 3),
    "x2": _E(1, 2),
    "x3": _E(1, 3),
    "y1": _E(3, 2),
    "y2": _E(2, 1),
    "y3": _E(3, 1),
    "h1": diag(0, 1, -1),
    "h2": diag(1, -1, 0),
}

# adjoint matrices as printed; ad_x3 and ad_y3 each carry a misprinted entry
_SL3_AD = {
    "x1": _sparse(8, {(0, 6): -2, (0, 7): 1, (2, 1): -1, (4, 5): 1, (6, 3): 1}),
    "x2": _sparse(8, {(1, 6): 1, (1, 7): -2, (2, 0): 1, (3, 5): -1, (7, 4): 1}),
    "x3": _sparse(8, {(0, 4): -1, (1, 4): 2, (2, 6): -1, (2, 7): -1, (6, 5): 1, (7, 5): 1}),
    "y1": _sparse(8, {(1, 2): -1, (3, 6): 2, (3, 7): -1, (5, 4): 1, (6, 0): -1}),
    "y2": _sparse(8, {(0, 2): 1, (4, 6): -1, (4, 7): 2, (5, 3): -1, (7, 1): -1}),
    "y3": _sparse(8, {(3, 1): 1, (4, 0): -1, (5, 6): 1, (5, 7): 1, (6, 2): -1, (7, 1): -1}),
    "h1": diag(2, -1, 1, -2, 1, -1, 0, 0),
    "h2": diag(-1, 2, 1, 1, -2, -1, 0, 0),
}

_SL3_CARTAN_PRIME = {
    "h1": diag(1, 0, 1, -1, 0, -1, 0, 0),
    "h2": diag(0, 1, 1, 0, -1, -1, 0, 0),
}

_SL3_KILLING = 6 * _sparse(8, {
    (0, 0): 2, (0, 4): 1, (1, 3): 1, (2, 6): 1, (3, 1): 1,
    (4, 0): 1, (4, 4): 2, (5, 7): 1, (6, 2): 1, (7, 5): 1,
})

_GA4 = {
    "x1": _sparse(8, {(1, 3): 1, (1, 6): 1, (2, 3): -1, (2, 6): -1}),
    "x2": _sparse(8, {(0, 1): 1, (0, 2): -1, (7, 1): 1, (7, 2): -1}),
    "x3": _sparse(8, {(0, 3): 1, (0, 6): 1, (7, 3): 1, (7, 6): 1}, 2),
    "y1": _sparse(8, {(3, 1): 1, (3, 2): -1, (6, 1): 1, (6, 2): -1}, Fraction(1, 4)),
    "y2": _sparse(8, {(1, 0): 1, (1, 7): 1, (2, 0): -1, (2, 7): -1}, Fraction(1, 4)),
    "y3": _sparse(8, {(3, 0): 1, (3, 7): 1, (6, 0): 1, (6, 7): 1}, Fraction(1, 8)),
    "h1": _sparse(8, {
        (1, 1): 1, (1, 2): -1, (2, 1): -1, (2, 2): 1,
        (3, 3): -1, (3, 6): -1, (6, 3): -1, (6, 6): -1,
    }, H),
    "h2": _sparse(8, {
        (0, 0): 1, (0, 7): 1, (1, 1): -1, (1, 2): 1,
        (2, 1): 1, (2, 2): -1, (7, 0): 1, (7, 7): 1,
    }, H),
}

_S4SL2 = {
    "e1": Matrix([
        [1, 0, -1, 0, 1, -1, 0, 0],
        [0, -1, 0, 0, -1, 1, 0, 1],
        [-1, 0, 1, 0, -1, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [1, -1, -1, 0, 0, 0, 0, 1],
        [-1, 1, 1, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 1, -1, 0, -1],
    ]),
    "e2": Matrix([
        [0, 1, 0, 0, 1, -1, 0, -1],
        [0, -H, 0, 0, -H, H, 0, H],
        [0, -1, 0, 0, -1, 1, 0, 1],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, H, 0, 0, H, -H, 0, -H],
        [0, -H, 0, 0, -H, H, 0, H],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, H, 0, 0, H, -H, 0, -H],
    ]),
    "e3": Matrix([
        [0, 0, 0, 0, 0, 0, 0, 0],
        [1, -H, -1, 0, H, -H, 0, H],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [1, -H, -1, 0, H, -H, 0, H],
        [-1, H, 1, 0, -H, H, 0, -H],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [-1, H, 1, 0, -H, H, 0, -H],
    ]),
}

_S4SL2_KILLING = 24 * Matrix([[4, 1, 1], [1, 0, 2], [1, 2, 0]])
_S4SL2_D = 96 * diag(1, -1, 3)
_S4SL2_T = Matrix([[1, 0, 0], [-1, 4, 0], [2, -7, -1]])

_i = I_UNIT
_AD_PAULI = {
    "z": Matrix([[0, -_i, 0], [_i, 0, 0], [0, 0, 0]]),
    "x": Matrix([[0, 0, 0], [0, 0, -_i], [0, _i, 0]]),
    "y": Matrix([[0, 0, _i], [0, 0, 0], [-_i, 0, 0]]),
}

# spin basis of sl(2): sigma_z and the raising/lowering operators
_SPIN = {
    "z": pauli_matrix("Z"),
    "plus": Matrix([[0, 1], [0, 0]]),
    "minus": Matrix([[0, 0], [1, 0]]),
}


# two-qubit reductions of the B-state, as printed
_B_REDUCED = {
    "bc": _sparse(4, {(0, 0): 1, **{(i, j): 1 for i in (1, 2, 3) for j in (1, 2, 3)}}, Fraction(1, 4)),
    "ab": _sparse(4, {(0, 0): 1, (0, 3): 1, (2, 2): 1, (2, 3): 1, (3, 0): 1, (3, 2): 1, (3, 3): 2}, Fraction(1, 4)),
    "ac": _sparse(4, {(0, 0): 1, (0, 3): 1, (2, 2): 1, (2, 3): 1, (3, 0): 1, (3, 2): 1, (3, 3): 2}, Fraction(1, 4)),
}


def _build() -> dict[str, NamedConstant]:
    reg: dict[str, NamedConstant] = {}

    def add(name, m, where):
        reg[name] = NamedConstant(name, m, where)

    add("s2", _S2, "two-qubit gate S2")
    add("s3", _S3, "three-qubit gate S3")
    add("we8.a", kron(pauli_matrix("X"), _S2), "W'(E8) generator sigma_x (x) S2")
    add("we8.b", _S3, "W'(E8) generator S3")
    add("x_a4", _X_A4, "A4 generator x")
    add("y_a4", _Y_A4, "A4 generator y")
    for k, m in _SL3.items():
        add(f"sl3.{k}", m, "standard Chevalley basis of sl(3)")
    for k, m in _SL3_AD.items():
        add(f"sl3.ad.{k}", m, "printed adjoint matrix of the standard sl(3) basis")
    for k, m in _SL3_CARTAN_PRIME.items():
        add(f"sl3.cartan_prime.{k}", m, "diagonal Cartan pair (h1', h2') in the adjoint representation")
    add("sl3.killing", _SL3_KILLING, "printed Killing matrix of sl(3)")
    for k, m in _GA4.items():
        add(f"ga4.{k}", m, "Chevalley basis of the derived algebra of g_A4")
    for k, m in _S4SL2.items():
        add(f"s4sl2.{k}", m, "sl(2) summand of g_S4")
    add("s4sl2.killing", _S4SL2_KILLING, "Killing matrix of the g_S4 sl(2) summand")
    add("s4sl2.D", _S4SL2_D, "printed diagonal factor D of the g_S4 Killing matrix")
    add("s4sl2.T", _S4SL2_T, "printed similarity factor T of the g_S4 Killing matrix")
    for k in "ixyz":
        add(f"pauli.{k}", pauli_matrix(k.upper()), "Pauli matrices")
    for k, m in _AD_PAULI.items():
        add(f"appendix.ad_pauli.{k}", m, "adjoint matrices of su(2) with imaginary entries")
    for k, m in _SPIN.items():
        add(f"appendix.spin.{k}", m, "sl(2) in the spin basis sigma_z, sigma_+, sigma_-")
    add("appendix.killing_spin", 4 * Matrix([[2, 0, 0], [0, 0, 1], [0, 1, 0]]), "Killing matrix of the split real form sl(2,R)")
    add("appendix.killing_ad_pauli", 2 * diag(1, 1, 1), "Killing matrix of the su(2) adjoint basis")
    for k, m in _B_REDUCED.items():
        add(f"bstate.rho_{k}", m, f"printed two-qubit reduction rho_{k.upper()} of the B-state")
    return reg


_REGISTRY = _build()

_UNREGISTERED = {
    "b": "the W'(E7) generator b is defined only in an external reference and is not available",
    "w7.b": "the W'(E7) generator b is defined only in an external reference and is not available",
    "e7.b": "the W'(E7) generator b is defined only in an external reference and is not available",
}


def registry() -> dict[str, NamedConstant]:
    return dict(_REGISTRY)


def names(prefix: str = "") -> list[str]:
    return [k for k in _REGISTRY if k.startswith(prefix)]


def constant(name: str) -> Matrix:
    """The registered matrix called ``name``."""
    try:
        return _REGISTRY[name].matrix
    except KeyError:
        msg = _UNREGISTERED.get(name, f"no constant named {name!r}")
        raise UnknownConstant(msg) from None


def basis(prefix: str, keys: Sequence[str] = SL3_TABLE_NAMES) -> dict[str, Matrix]:
    """Named family, e.g. ``basis('ga4')`` -> {'x1': ..., ..., 'h2': ...}."""
    return {k: constant(f"{prefix}.{k}") for k in keys}


# -- observables ------------------------------------------------------------------


def observable_triple(kind: str = "two_qubit") -> tuple[Matrix, Matrix, Matrix]:
    """``{XZ, ZX, YY}`` or its three-qubit lift ``Z x {XZ, ZX, YY}``."""
    two = (pauli_matrix("XZ"), pauli_matrix("ZX"), pauli_matrix("YY"))
    if kind == "two_qubit":
        return two
    if kind == "three_qubit":
        z = pauli_matrix("Z")
        return tuple(kron(z, o) for o in two)
    raise ValueError(f"kind must be 'two_qubit' or 'three_qubit', got {kind!r}")


def _row_norm(gate: Matrix, i: int):
    from .scalar import modulus_sq

    return sum((modulus_sq(x) for x in gate.row(i)), Fraction(0))


def joint_eigensign_check(gate: Matrix, triple: Sequence[Matrix]) -> tuple[tuple[int, ...], ...]:
    """Sign of each observable on each gate row (as a column vector).

    Raises :class:`NotEigenvector` at the first (row, observable) pair, both
    1-based, where ``O r = +-r`` fails.
    """
    pattern = []
    for i in range(gate.rows):
        if _row_norm(gate, i) != 1:
            raise NotNormalized(f"row {i + 1} does not have unit norm")
        v = gate[i, :].T
        signs = []
        for k, O in enumerate(triple):
            w = O @ v
            if w == v:
                signs.append(1)
            elif w == -v:
                signs.append(-1)
            else:
                raise NotEigenvector(i + 1, k + 1)
        pattern.append(tuple(signs))
    return tuple(pattern)


def row_state(gate: Matrix, i: int) -> PureState:
    """Row ``i`` (0-based) of ``gate`` read as amplitudes."""
    if _row_norm(gate, i) != 1:
        raise NotNormalized(f"row {i + 1} does not have unit norm")
    return PureState.from_amps(gate.row(i))


def gate_entanglement_report(gate: Matrix, axis: str = "rows") -> list[dict]:
    """Entanglement profile and B-type flag of every row (or column) of an
    8 x 8 gate."""
    if gate.shape != (8, 8):
        raise ValueError(f"three-qubit gates are 8 x 8, got {gate.shape}")
    if axis not in ("rows", "columns"):
        raise ValueError(f"axis must be 'rows' or 'columns', got {axis!r}")
    src = gate if axis == "rows" else gate.T
    out = []
    for i in range(8):
        prof = entanglement_profile(row_state(src, i))
        out.append({"index": i + 1, "profile": prof, "b_type": is_b_type(prof)})
    return out
