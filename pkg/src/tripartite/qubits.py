"""Few-qubit pure states, reduced density matrices and entanglement measures.

Basis order: ``|q1 q2 ... qn>`` with ``q1`` (qubit A) the most significant
bit, so amplitude index ``4*a + 2*b + c`` for three qubits.  States carry
either exact scalar amplitudes or a complex numpy vector (the float path).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .linalg import Matrix, det, eigen_quadratic, field_json, identity, kron
from .scalar import (
    FieldMismatch,
    QuadExt,
    Scalar,
    as_scalar,
    common_field,
    complex_conjugate,
    format_scalar,
    is_real,
    modulus,
    modulus_sq,
    parse_scalar,
    quad,
    sign,
    sqrt_in_field,
    to_complex,
    to_float,
)

__all__ = [
    "PureState",
    "DensityMatrix",
    "EntanglementProfile",
    "NotNormalized",
    "PhaseOutOfRange",
    "WrongQubitCount",
    "WrongDimension",
    "EmptySubset",
    "NegativeEigenvalue",
    "pauli_matrix",
    "basis_state",
    "ghz_state",
    "w_state",
    "b_state",
    "generic_state",
    "random_rational_state",
    "reduce",
    "spin_flip",
    "concurrence_pure2",
    "concurrence_mixed2",
    "two_tangle",
    "three_tangle",
    "one_tangle",
    "entanglement_profile",
    "is_b_type",
    "state_to_json",
    "state_from_json",
]

FLOAT_TOL = 1e-12
I_UNIT = QuadExt(0, 1, -1)


class NotNormalized(ValueError):
    pass


class PhaseOutOfRange(ValueError):
    pass


class WrongQubitCount(ValueError):
    pass


class WrongDimension(ValueError):
    pass


class EmptySubset(ValueError):
    pass


class NegativeEigenvalue(ValueError):
    pass


# -- Pauli operators ---------------------------------------------------------------

_PAULI = {
    "I": Matrix([[1, 0], [0, 1]]),
    "X": Matrix([[0, 1], [1, 0]]),
    "Y": Matrix([[0, -I_UNIT], [I_UNIT, 0]]),
    "Z": Matrix([[1, 0], [0, -1]]),
}


def pauli_matrix(letters: str) -> Matrix:
    """Kronecker product of Pauli matrices, leftmost letter = most significant qubit."""
    letters = letters.upper()
    if not letters or any(ch not in _PAULI for ch in letters):
        raise ValueError(f"Pauli string must be a nonempty word over IXYZ, got {letters!r}")
    out = _PAULI[letters[0]]
    for ch in letters[1:]:
        out = kron(out, _PAULI[ch])
    return out


_YY = pauli_matrix("YY")

# -- states ---------------------------------------------------------------------------


def _float_amps(amps) -> np.ndarray:
    return np.asarray(amps, dtype=complex)


@dataclass(frozen=True)
class PureState:
    """n-qubit pure state (1 <= n <= 4).

    ``amps`` is a tuple of exact scalars, or a complex numpy array when the
    state was built on the float path (``exact`` is then False).
    """

    n: int
    amps: Union[tuple, np.ndarray]

    def __post_init__(self):
        if not 1 <= self.n <= 4:
            raise WrongQubitCount(f"1..4 qubits supported, got {self.n}")
        if len(self.amps) != 2**self.n:
            raise ValueError(f"{self.n} qubits need {2**self.n} amplitudes, got {len(self.amps)}")
        if isinstance(self.amps, np.ndarray):
            a = _float_amps(self.amps)
            a.flags.writeable = False
            object.__setattr__(self, "amps", a)
            res = abs(float(np.vdot(a, a).real) - 1.0)
            if res > FLOAT_TOL:
                raise NotNormalized(f"norm residual {res:.3e}")
        else:
            a = tuple(as_scalar(x) for x in self.amps)
            common_field(a)
            object.__setattr__(self, "amps", a)
            total = sum((modulus_sq(x) for x in a), Fraction(0))
            if total != 1:
                raise NotNormalized(f"sum |amp|^2 = {format_scalar(total)}")

    @classmethod
    def from_amps(cls, amps) -> "PureState":
        n = int(round(math.log2(len(amps))))
        if isinstance(amps, np.ndarray) or any(isinstance(x, (float, complex)) for x in amps):
            return cls(n, np.asarray(amps, dtype=complex))
        return cls(n, tuple(amps))

    @property
    def exact(self) -> bool:
        return not isinstance(self.amps, np.ndarray)

    def amp(self, bits: str):
        return self.amps[int(bits, 2)]

    def to_numpy(self) -> np.ndarray:
        if not self.exact:
            return np.array(self.amps)
        return np.array([to_complex(x) for x in self.amps], dtype=complex)

    def vector(self) -> Matrix:
        if not self.exact:
            raise TypeError("float state has no exact vector")
        return Matrix([[x] for x in self.amps])

    def projector(self) -> "DensityMatrix":
        return reduce(self, range(self.n))

    def permuted(self, order: Sequence[int]) -> "PureState":
        """Relabel qubits: new qubit k is old qubit ``order[k]``."""
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise ValueError(f"not a permutation of range({self.n}): {order}")
        out = [None] * 2**self.n
        for idx in range(2**self.n):
            bits = [(idx >> (self.n - 1 - q)) & 1 for q in range(self.n)]
            new = 0
            for k in range(self.n):
                new = (new << 1) | bits[order[k]]
            out[new] = self.amps[idx]
        if self.exact:
            return PureState(self.n, tuple(out))
        return PureState(self.n, np.array(out))

    def __str__(self):
        terms = []
        for i, a in enumerate(self.amps):
            if a != 0:
                label = format(i, f"0{self.n}b")
                val = format_scalar(a) if self.exact else f"{complex(a):.6g}"
                terms.append(f"({val})|{label}>")
        return " + ".join(terms)


def basis_state(bits: str) -> PureState:
    n = len(bits)
    amps = [Fraction(0)] * 2**n
    amps[int(bits, 2)] = Fraction(1)
    return PureState(n, tuple(amps))


def ghz_state() -> PureState:
    r = quad(0, Fraction(1, 2), 2)  # 1/sqrt(2)
    return PureState(3, (r, 0, 0, 0, 0, 0, 0, r))


def w_state() -> PureState:
    r = quad(0, Fraction(1, 3), 3)  # 1/sqrt(3)
    return PureState(3, (0, r, r, 0, r, 0, 0, 0))


def b_state() -> PureState:
    h = Fraction(1, 2)
    return PureState(3, (h, 0, 0, 0, 0, h, h, h))


def random_rational_state(rng, n: int = 3, height: int = 5) -> PureState:
    """Random real state with rational amplitudes, normalized exactly.

    Inverse stereographic projection of a random point ``t`` of Q^(2^n - 1)
    (numerators and denominators up to ``height``) lands on the unit sphere:
    ``(2t, |t|^2 - 1) / (|t|^2 + 1)``.  ``rng`` is a :class:`random.Random`.
    """
    t = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(2**n - 1)]
    q = sum((x * x for x in t), Fraction(0))
    amps = [2 * x / (q + 1) for x in t] + [(q - 1) / (q + 1)]
    return PureState(n, tuple(amps))


def generic_state(l0, l1, l2, l3, l4, phi=0) -> PureState:
    """``l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>``.

    Exact when the lambdas are exact and ``phi`` is 0 or pi (``math.pi`` is
    accepted as pi); any other phase gives a float state.
    """
    phi_f = float(phi)
    if not (0.0 <= phi_f <= math.pi):
        raise PhaseOutOfRange(f"phase must lie in [0, pi], got {phi}")
    lams = list((l0, l1, l2, l3, l4))
    exact_lams = all(not isinstance(x, (float, complex)) for x in lams)
    if exact_lams:
        lams = [as_scalar(x) for x in lams]
        if any(not is_real(x) or sign(x) < 0 for x in lams):
            raise ValueError("lambda parameters must be nonnegative reals")
        total = sum((x * x for x in lams), Fraction(0))
        if total != 1:
            raise NotNormalized(f"sum lambda^2 = {format_scalar(total)}")
    else:
        lams = [float(to_float(x)) if not isinstance(x, (float, int)) else float(x) for x in lams]
        if any(x < 0 for x in lams):
            raise ValueError("lambda parameters must be nonnegative")
        if abs(sum(x * x for x in lams) - 1) > FLOAT_TOL:
            raise NotNormalized("sum lambda^2 != 1")
    if exact_lams and phi_f in (0.0, math.pi):
        phase = 1 if phi_f == 0.0 else -1
        amps = [lams[0], 0, 0, 0, phase * lams[1], lams[2], lams[3], lams[4]]
        return PureState(3, tuple(amps))
    fl = [float(to_float(x)) if exact_lams else x for x in lams]
    amps = np.zeros(8, dtype=complex)
    amps[0], amps[4], amps[5], amps[6], amps[7] = fl[0], fl[1] * np.exp(1j * phi_f), fl[2], fl[3], fl[4]
    return PureState(3, amps)


# -- density matrices --------------------------------------------------------------


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace operator on ``k`` qubits (exact Matrix or complex ndarray)."""

    data: Union[Matrix, np.ndarray]

    def __post_init__(self):
        if isinstance(self.data, Matrix):
            m = self.data
            if not m.is_square() or m.rows & (m.rows - 1):
                raise WrongDimension(f"density matrix must be 2^k square, got {m.shape}")
            if not m.is_hermitian():
                raise ValueError("density matrix is not Hermitian")
            if m.trace() != 1:
                raise ValueError(f"trace is {format_scalar(m.trace())}, not 1")
        else:
            a = np.array(self.data, dtype=complex)
            a.flags.writeable = False
            object.__setattr__(self, "data", a)
            if np.abs(a - a.conj().T).max() > 1e-10 or abs(np.trace(a) - 1) > 1e-10:
                raise ValueError("float density matrix is not Hermitian with unit trace")

    @property
    def exact(self) -> bool:
        return isinstance(self.data, Matrix)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def to_numpy(self) -> np.ndarray:
        return self.data.to_numpy().astype(complex) if self.exact else np.array(self.data)

    def is_psd(self, tol: float = 1e-12) -> bool:
        """Positive semidefiniteness (exact via eigen_quadratic when possible)."""
        if self.exact:
            sp = eigen_quadratic(self.data)
            if sp.exact:
                return all(is_real(v) and sign(v) >= 0 for v, _ in sp.values)
        return bool(np.linalg.eigvalsh(self.to_numpy()).min() >= -tol)


def _parties(keep, n: int) -> list[int]:
    out = []
    for q in keep:
        if isinstance(q, str):
            q = "ABCD".index(q.upper())
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for {n} qubits")
        out.append(int(q))
    if len(set(out)) != len(out):
        raise ValueError("repeated qubit in subset")
    return out


def reduce(s: PureState, keep) -> DensityMatrix:
    """Partial trace onto the ordered qubit subset ``keep`` (indices or letters 'A'..)."""
    keep = _parties(keep, s.n)
    if not keep:
        raise EmptySubset("keep must name at least one qubit")
    n = s.n
    rest = [q for q in range(n) if q not in keep]
    k = len(keep)

    def index(kbits: int, rbits: int) -> int:
        bits = [0] * n
        for pos, q in enumerate(keep):
            bits[q] = (kbits >> (k - 1 - pos)) & 1
        for pos, q in enumerate(rest):
            bits[q] = (rbits >> (len(rest) - 1 - pos)) & 1
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return idx

    dim = 2**k
    if not s.exact:
        a = np.array(s.amps)
        rho = np.zeros((dim, dim), dtype=complex)
        for r in range(2 ** len(rest)):
            v = np.array([a[index(i, r)] for i in range(dim)])
            rho += np.outer(v, v.conj())
        return DensityMatrix(rho)
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for r in range(2 ** len(rest)):
        v = [s.amps[index(i, r)] for i in range(dim)]
        vc = [complex_conjugate(x) for x in v]
        for i in range(dim):
            if v[i] == 0:
                continue
            for j in range(dim):
                if v[j] != 0:
                    rows[i][j] = rows[i][j] + v[i] * vc[j]
    return DensityMatrix(Matrix(rows))


def spin_flip(rho: DensityMatrix) -> DensityMatrix:
    """``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)`` for a two-qubit state."""
    if rho.dim != 4:
        raise WrongDimension(f"spin flip needs a 4x4 density matrix, got {rho.dim}")
    if rho.exact:
        # sigma_y x sigma_y = antidiag(-1, 1, 1, -1): a signed index reversal
        sg = (-1, 1, 1, -1)
        a = rho.data.conj().array
        return DensityMatrix(Matrix([[sg[i] * sg[j] * a[3 - i, 3 - j] for j in range(4)] for i in range(4)]))
    yy = _YY.to_numpy().real
    return DensityMatrix(yy @ np.conj(rho.data) @ yy)


# -- measures --------------------------------------------------------------------


def _need(s: PureState, n: int):
    if s.n != n:
        raise WrongQubitCount(f"need {n} qubits, got {s.n}")


def concurrence_pure2(s: PureState):
    """``2 |alpha delta - beta gamma|`` for a two-qubit pure state."""
    _need(s, 2)
    a, b, c, d = s.amps
    if not s.exact:
        return float(2 * abs(a * d - b * c))
    return modulus(2 * (a * d - b * c))


def _real_eigs_desc(rho: DensityMatrix):
    """Eigenvalues of rho * spin_flip(rho), descending; exact if possible else float."""
    R = rho.data @ spin_flip(rho).data
    sp = eigen_quadratic(R)
    if sp.exact and all(is_real(v) for v, _ in sp.values):
        vals = sp.flat()
        if any(sign(v) < 0 for v in vals):
            raise NegativeEigenvalue(f"rho*rho~ has negative eigenvalue; input is not a state")
        return vals, True
    return _float_eigs(R.to_numpy()), False


def _float_eigs(R: np.ndarray) -> list[float]:
    ev = np.linalg.eigvals(R)
    if np.abs(ev.imag).max() > 1e-9 or ev.real.min() < -1e-9:
        raise NegativeEigenvalue(f"rho*rho~ spectrum {ev} is not nonnegative real")
    return sorted((max(0.0, float(x)) for x in ev.real), reverse=True)


def concurrence_mixed2(rho: DensityMatrix):
    """Wootters concurrence ``max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))``.

    Exact when the eigenvalues of ``rho rho~`` and their square roots lie in a
    common quadratic field; a float otherwise.
    """
    if rho.dim != 4:
        raise WrongDimension(f"two-qubit density matrix needed, got dim {rho.dim}")
    if rho.exact:
        vals, exact = _real_eigs_desc(rho)
        if exact:
            roots = []
            d = next((v.d for v in vals if isinstance(v, QuadExt)), None)
            for v in vals:
                r = sqrt_in_field(v, d) if isinstance(v, Fraction) else sqrt_in_field(v)
                if r is None:
                    break
                roots.append(r)
            else:
                try:
                    c = roots[0] - sum(roots[1:], Fraction(0))
                    return c if sign(c) > 0 else Fraction(0)
                except FieldMismatch:
                    pass
            vals = [to_float(v) for v in vals]
    else:
        vals = _float_eigs(rho.data @ spin_flip(rho).data)
    r = [math.sqrt(max(0.0, v)) for v in vals]
    return max(0.0, r[0] - r[1] - r[2] - r[3])


def _elementary(R: Matrix) -> tuple:
    """Elementary symmetric functions of the eigenvalues of a 4x4 matrix, via
    Newton's identities from the traces of R, R^2, R^3, R^4 (one product)."""
    R2 = R @ R
    a, b = R.array, R2.array
    p1 = R.trace()
    p2 = R2.trace()
    p3 = as_scalar(sum((b[i, j] * a[j, i] for i in range(4) for j in range(4)), Fraction(0)))
    p4 = as_scalar(sum((b[i, j] * b[j, i] for i in range(4) for j in range(4)), Fraction(0)))
    e1 = p1
    e2 = as_scalar((e1 * p1 - p2) / 2)
    e3 = as_scalar((e2 * p1 - e1 * p2 + p3) / 3)
    e4 = as_scalar((e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4)
    return e1, e2, e3, e4


def two_tangle(rho: DensityMatrix):
    """Squared concurrence.  Exact whenever rho rho~ has rank <= 2 and
    sqrt(l1 l2) is rational, which holds for every reduced two-qubit state of
    an exact real three-qubit pure state."""
    if rho.dim != 4:
        raise WrongDimension(f"two-qubit density matrix needed, got dim {rho.dim}")
    if rho.exact:
        R = rho.data @ spin_flip(rho).data
        e1, e2, e3, e4 = _elementary(R)
        if e3 == 0 and e4 == 0 and not any(isinstance(x, QuadExt) for x in (e1, e2)):
            s, p = e1, e2  # l1 + l2, l1 l2
            if p < 0:
                raise NegativeEigenvalue("rho*rho~ has a negative eigenvalue")
            root = sqrt_in_field(p)
            if root is not None:
                tau = s - 2 * root
                if tau < 0:
                    raise NegativeEigenvalue("inconsistent spectrum")
                return tau
    c = concurrence_mixed2(rho)
    return c * c


def _tangle_poly(p) -> object:
    """``d1 - 2 d2 + 4 d3`` on amplitudes indexed ``p[0b abc]``."""
    p000, p001, p010, p011, p100, p101, p110, p111 = p
    d1 = (p000 * p000 * p111 * p111 + p001 * p001 * p110 * p110
          + p010 * p010 * p101 * p101 + p100 * p100 * p011 * p011)
    d2 = (p000 * p111 * (p011 * p100 + p101 * p010 + p110 * p001)
          + p011 * p100 * (p101 * p010 + p110 * p001)
          + p101 * p010 * p110 * p001)
    d3 = p000 * p110 * p101 * p011 + p111 * p001 * p010 * p100
    return d1 - 2 * d2 + 4 * d3


def three_tangle(s: PureState):
    """``4 |d1 - 2 d2 + 4 d3|``, the SLOCC-invariant residual tangle."""
    _need(s, 3)
    if not s.exact:
        return float(4 * abs(_tangle_poly(list(s.amps))))
    return modulus(4 * as_scalar(_tangle_poly(list(s.amps)) + Fraction(0)))


def one_tangle(s: PureState, party) -> object:
    """Linear entropy ``4 det(rho_party)`` of one qubit against the others."""
    _need(s, 3)
    rho = reduce(s, [party])
    if rho.exact:
        return as_scalar(4 * det(rho.data))
    return float(4 * np.linalg.det(rho.data).real)


@dataclass(frozen=True)
class EntanglementProfile:
    tau3: object
    tau_ab: object
    tau_ac: object
    tau_bc: object
    tau_a_bc: object
    tau_b_ac: object
    tau_c_ab: object
    residuals: tuple
    exact: bool

    def as_dict(self) -> dict:
        fmt = (lambda x: format_scalar(x)) if self.exact else float
        return {
            "tau3": fmt(self.tau3),
            "tau_AB": fmt(self.tau_ab),
            "tau_AC": fmt(self.tau_ac),
            "tau_BC": fmt(self.tau_bc),
            "tau_A(BC)": fmt(self.tau_a_bc),
            "tau_B(AC)": fmt(self.tau_b_ac),
            "tau_C(AB)": fmt(self.tau_c_ab),
            "monogamy_residuals": [fmt(r) for r in self.residuals],
            "exact": self.exact,
        }


def _integer_profile(amps: Sequence[Fraction]) -> Optional[EntanglementProfile]:
    """Profile of a real rational state in machine-free integer arithmetic.

    With ``D`` the common denominator, ``a = D * amps`` is an integer vector
    and each tangle is an integer over ``D^4``.  Returns None when a
    two-tangle falls outside the rank-2 exact case.
    """
    D = math.lcm(*(x.denominator for x in amps))
    a = [int(x * D) for x in amps]
    D4 = D**4
    t3 = Fraction(4 * abs(_tangle_poly(a)), D4)
    sg = (-1, 1, 1, -1)
    two = []
    for keep in ((0, 1), (0, 2), (1, 2)):
        (r,) = [q for q in range(3) if q not in keep]
        idx = [[((i >> 1) << (2 - keep[0])) | ((i & 1) << (2 - keep[1])) | (b << (2 - r)) for b in (0, 1)] for i in range(4)]
        rho = [[a[idx[i][0]] * a[idx[j][0]] + a[idx[i][1]] * a[idx[j][1]] for j in range(4)] for i in range(4)]
        flip = [[sg[i] * sg[j] * rho[3 - i][3 - j] for j in range(4)] for i in range(4)]
        R = [[sum(rho[i][k] * flip[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
        R2 = [[sum(R[i][k] * R[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
        p1 = sum(R[i][i] for i in range(4))
        p2 = sum(R2[i][i] for i in range(4))
        p3 = sum(R2[i][j] * R[j][i] for i in range(4) for j in range(4))
        p4 = sum(R2[i][j] * R2[j][i] for i in range(4) for j in range(4))
        e2 = (p1 * p1 - p2) // 2
        e3 = (e2 * p1 - p1 * p2 + p3) // 3
        e4 = (e3 * p1 - e2 * p2 + p1 * p3 - p4) // 4
        root = math.isqrt(e2) if e2 >= 0 else -1
        if e3 != 0 or e4 != 0 or root * root != e2:
            return None
        two.append(Fraction(p1 - 2 * root, D4))
    ones = []
    for q in range(3):
        r00 = sum(a[i] * a[i] for i in range(8) if not (i >> (2 - q)) & 1)
        r11 = sum(a[i] * a[i] for i in range(8) if (i >> (2 - q)) & 1)
        r01 = sum(a[i] * a[i | (1 << (2 - q))] for i in range(8) if not (i >> (2 - q)) & 1)
        ones.append(Fraction(4 * (r00 * r11 - r01 * r01), D4))
    tab, tac, tbc = two
    ta, tb, tc = ones
    res = (ta - (t3 + tab + tac), tb - (t3 + tab + tbc), tc - (t3 + tac + tbc))
    return EntanglementProfile(t3, tab, tac, tbc, ta, tb, tc, res, True)


def entanglement_profile(s: PureState) -> EntanglementProfile:
    """Three-tangle, the three two-tangles, the three one-tangles, and the
    CKW residuals ``tau_X(YZ) - (tau3 + tau_XY + tau_XZ)``."""
    _need(s, 3)
    if s.exact and all(isinstance(x, Fraction) for x in s.amps):
        fast = _integer_profile(s.amps)
        if fast is not None:
            return fast
    t3 = three_tangle(s)
    tab = two_tangle(reduce(s, "AB"))
    tac = two_tangle(reduce(s, "AC"))
    tbc = two_tangle(reduce(s, "BC"))
    ta, tb, tc = (one_tangle(s, q) for q in "ABC")
    vals = (t3, tab, tac, tbc, ta, tb, tc)
    exact = s.exact and not any(isinstance(v, float) for v in vals)
    if not exact:
        t3, tab, tac, tbc, ta, tb, tc = (float(to_float(v)) if not isinstance(v, float) else v for v in vals)
    res = (ta - (t3 + tab + tac), tb - (t3 + tab + tbc), tc - (t3 + tac + tbc))
    return EntanglementProfile(t3, tab, tac, tbc, ta, tb, tc, res, exact)


def is_b_type(profile: EntanglementProfile, tol: float = 1e-9) -> bool:
    """True when the three-tangle equals all three two-tangles and is positive."""
    t = (profile.tau3, profile.tau_ab, profile.tau_ac, profile.tau_bc)
    if profile.exact:
        return t[0] > 0 and all(x == t[0] for x in t[1:])
    t = [float(x) for x in t]
    return t[0] > tol and all(abs(x - t[0]) <= tol for x in t[1:])


# -- JSON --------------------------------------------------------------------------


def state_to_json(s: PureState) -> dict:
    if not s.exact:
        raise TypeError("float states have no exact JSON form")
    return {"qubits": s.n, "field": field_json(common_field(s.amps)), "amps": [format_scalar(x) for x in s.amps]}


def state_from_json(obj: dict, where: str = "state") -> PureState:
    try:
        n, amps, fld = obj["qubits"], obj["amps"], obj["field"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{where}: missing field {exc}") from None
    if not isinstance(n, int) or len(amps) != 2**n:
        raise ValueError(f"{where}: 'amps' must have 2^qubits = {2 ** n if isinstance(n, int) else '?'} entries")
    vals = []
    for i, a in enumerate(amps):
        try:
            vals.append(parse_scalar(str(a)))
        except ValueError:
            raise ValueError(f"{where}.amps[{i}]: malformed scalar {a!r}") from None
    from .linalg import _check_field

    _check_field(vals, fld, where)
    return PureState(n, tuple(vals))
