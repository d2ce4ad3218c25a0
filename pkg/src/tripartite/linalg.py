"""Dense exact matrices over Q or Q(sqrt d).

Entries are :mod:`tripartite.scalar` values held in a read-only numpy object
array.  Everything here is exact; the only float code is the eigenvalue
fallback in :func:`eigen_quadratic`, whose result is tagged inexact.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .scalar import (
    FieldMismatch,
    QuadExt,
    Scalar,
    as_scalar,
    common_field,
    complex_conjugate,
    format_scalar,
    is_real,
    parse_scalar,
    quad,
    sign,
    squarefree_split,
    to_complex,
)

__all__ = [
    "Matrix",
    "Polynomial",
    "Spectrum",
    "DimensionMismatch",
    "NotSquare",
    "NotSymmetric",
    "Singular",
    "identity",
    "zeros",
    "diag",
    "matmul",
    "commutator",
    "transpose",
    "kron",
    "rref",
    "rank_kernel",
    "det",
    "inverse",
    "solve_linear",
    "charpoly",
    "eigen_quadratic",
    "congruence_signature",
    "matrix_to_json",
    "matrix_from_json",
]


class DimensionMismatch(ValueError):
    pass


class NotSquare(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class Singular(ArithmeticError):
    pass


ZERO = Fraction(0)
ONE = Fraction(1)


def _normalize(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    flat_in = a.reshape(-1)
    flat_out = out.reshape(-1)
    for i, x in enumerate(flat_in):
        flat_out[i] = as_scalar(x)
    return out


class Matrix:
    """Immutable rectangular matrix with exact scalar entries."""

    __slots__ = ("_a", "_hash", "_field")

    def __init__(self, entries, *, _trusted: bool = False):
        if isinstance(entries, Matrix):
            a = entries._a
        elif _trusted:
            a = entries
        else:
            a = np.array(entries, dtype=object)
            if a.ndim == 1:
                a = a.reshape(1, -1)
            if a.ndim != 2 or a.size == 0:
                raise ValueError(f"expected a nonempty 2-d array, got shape {a.shape}")
            a = _normalize(a)
        a.flags.writeable = False
        self._a = a
        self._hash = None
        self._field = common_field(a.reshape(-1))

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Matrix":
        return cls(_normalize(a), _trusted=True)

    # -- basic protocol -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def field(self) -> Optional[int]:
        """``d`` when some entry lies in Q(sqrt d) \\ Q, else ``None``."""
        return self._field

    @property
    def array(self) -> np.ndarray:
        """Read-only object array of entries."""
        return self._a

    def __getitem__(self, idx):
        out = self._a[idx]
        if isinstance(out, np.ndarray):
            return Matrix(np.atleast_2d(out).copy(), _trusted=True)
        return out

    def row(self, i: int) -> tuple:
        return tuple(self._a[i])

    def col(self, j: int) -> tuple:
        return tuple(self._a[:, j])

    def tolist(self) -> list[list]:
        return [list(r) for r in self._a]

    def flat(self) -> tuple:
        return tuple(self._a.reshape(-1))

    def __iter__(self):
        return iter(self.tolist())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.flat() == other.flat()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.flat()))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self._a)
        return f"Matrix([{body}])"

    def __str__(self):
        cells = [[format_scalar(x) for x in r] for r in self._a]
        w = max(len(c) for r in cells for c in r)
        return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix._wrap(self._a + other._a)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix._wrap(self._a - other._a)

    def __neg__(self):
        return Matrix._wrap(-self._a)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        c = as_scalar(c)
        return Matrix._wrap(self._a * c)

    def __rmul__(self, c):
        return self.__mul__(c)

    def __truediv__(self, c):
        c = as_scalar(c)
        return Matrix._wrap(self._a * (1 / c))

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return matmul(self, other)

    def __pow__(self, n: int):
        if n < 0:
            return inverse(self) ** (-n)
        if self.rows != self.cols:
            raise NotSquare(self.shape)
        out = identity(self.rows)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    @property
    def T(self) -> "Matrix":
        return Matrix(self._a.T.copy(), _trusted=True)

    def conj(self) -> "Matrix":
        """Entrywise complex conjugate."""
        if self._field is None or self._field > 0:
            return self
        return Matrix._wrap(np.vectorize(complex_conjugate, otypes=[object])(self._a))

    @property
    def H(self) -> "Matrix":
        return self.conj().T

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise NotSquare(self.shape)
        return as_scalar(sum(self._a[i, i] for i in range(self.rows)) + ZERO)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._a.reshape(-1))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.H

    def reshape(self, rows: int, cols: int) -> "Matrix":
        return Matrix(self._a.reshape(rows, cols).copy(), _trusted=True)

    def to_numpy(self) -> np.ndarray:
        """Complex (or float, for real fields) numpy copy."""
        vals = np.array([to_complex(x) for x in self._a.reshape(-1)], dtype=complex).reshape(self.shape)
        if all(is_real(x) for x in self._a.reshape(-1)):
            return vals.real.copy()
        return vals


def identity(n: int) -> Matrix:
    a = np.full((n, n), ZERO, dtype=object)
    for i in range(n):
        a[i, i] = ONE
    return Matrix(a, _trusted=True)


def zeros(m: int, n: Optional[int] = None) -> Matrix:
    return Matrix(np.full((m, m if n is None else n), ZERO, dtype=object), _trusted=True)


def diag(*values) -> Matrix:
    if len(values) == 1 and not isinstance(values[0], (int, str, Fraction, QuadExt)):
        values = tuple(values[0])
    n = len(values)
    a = np.full((n, n), ZERO, dtype=object)
    for i, v in enumerate(values):
        a[i, i] = as_scalar(v)
    return Matrix(a, _trusted=True)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    a, b = A.array, B.array
    n, m, p = A.rows, A.cols, B.cols
    out = np.empty((n, p), dtype=object)
    for i in range(n):
        ai = a[i]
        nz = [k for k in range(m) if ai[k] != 0]
        for j in range(p):
            s = ZERO
            for k in nz:
                bk = b[k, j]
                if bk != 0:
                    s = s + ai[k] * bk
            out[i, j] = s
    return Matrix(out, _trusted=True)


def commutator(A: Matrix, B: Matrix) -> Matrix:
    """Lie bracket ``AB - BA``."""
    if not (A.is_square() and A.shape == B.shape):
        raise DimensionMismatch(f"commutator needs equal square shapes, got {A.shape}, {B.shape}")
    return A @ B - B @ A


def transpose(A: Matrix) -> Matrix:
    return A.T


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product; block (i, j) is ``A[i, j] * B``."""
    m, n = A.shape
    p, q = B.shape
    out = np.empty((m * p, n * q), dtype=object)
    b = B.array
    for i in range(m):
        for j in range(n):
            aij = A.array[i, j]
            for k in range(p):
                for l in range(q):
                    out[i * p + k, j * q + l] = as_scalar(aij * b[k, l]) if aij != 0 else ZERO
    return Matrix(out, _trusted=True)


# -- elimination -------------------------------------------------------------------


def _rref_rows(rows: list[list]) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; pivot = first nonzero, scanning column by column."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [as_scalar(x * inv) for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                pr = rows[r]
                rows[i] = [as_scalar(x - f * y) if y != 0 else x for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows, piv = _rref_rows(A.tolist())
    return Matrix(rows), piv


def rank_kernel(A: Matrix) -> tuple[int, list[tuple]]:
    """Rank and an exact basis of the right kernel ``{v : A v = 0}``.

    Each kernel vector has a 1 in one free column and is zero in the other
    free columns, so the basis is deterministic.
    """
    rows, piv = _rref_rows(A.tolist())
    n = A.cols
    free = [c for c in range(n) if c not in piv]
    kernel = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = as_scalar(-rows[i][f])
        kernel.append(tuple(v))
    return len(piv), kernel


def det(A: Matrix) -> Scalar:
    """Determinant by fraction-free (Bareiss) elimination."""
    if not A.is_square():
        raise NotSquare(A.shape)
    M = A.tolist()
    n = len(M)
    s = 1
    prev = ONE
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return ZERO
            M[k], M[swap] = M[swap], M[k]
            s = -s
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = as_scalar((M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev)
        prev = M[k][k]
    return as_scalar(s * M[n - 1][n - 1])


def inverse(A: Matrix) -> Matrix:
    if not A.is_square():
        raise NotSquare(A.shape)
    n = A.rows
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(A.tolist())]
    rows, piv = _rref_rows(aug)
    if piv[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Matrix([r[n:] for r in rows])


def solve_linear(A: Matrix, b) -> Optional[tuple]:
    """Exact solution ``x`` of ``A x = b`` (free variables set to 0), or ``None``."""
    if isinstance(b, Matrix):
        b = b.flat()
    b = [as_scalar(x) for x in b]
    if len(b) != A.rows:
        raise DimensionMismatch(f"rhs length {len(b)} vs {A.rows} rows")
    n = A.cols
    aug = [list(r) + [bi] for r, bi in zip(A.tolist(), b)]
    rows, piv = _rref_rows(aug)
    if n in piv:
        return None
    x = [ZERO] * n
    for i, p in enumerate(piv):
        x[p] = rows[i][n]
    return tuple(x)


# -- polynomials ---------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with exact coefficients in ascending degree order."""

    coeffs: tuple

    def __post_init__(self):
        c = [as_scalar(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (ZERO,))

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return as_scalar(acc)

    def at_matrix(self, A: Matrix) -> Matrix:
        """Substitute a square matrix (Horner)."""
        n = A.rows
        acc = zeros(n)
        for c in reversed(self.coeffs):
            acc = acc @ A + c * identity(n)
        return acc

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        c: list = [ONE]
        for r in roots:
            r = as_scalar(r)
            nxt = [ZERO] * (len(c) + 1)
            for i, a in enumerate(c):
                nxt[i + 1] = nxt[i + 1] + a
                nxt[i] = as_scalar(nxt[i] - r * a)
            c = nxt
        return cls(tuple(c))

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            cs = format_scalar(c)
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"({cs})*{mono}" if isinstance(c, QuadExt) else f"{cs}*{mono}")
            else:
                terms.append(f"({cs})" if isinstance(c, QuadExt) else cs)
        return " + ".join(terms).replace("+ -", "- ") or "0"


def charpoly(A: Matrix) -> Polynomial:
    """``det(tI - A)`` by the Faddeev-LeVerrier recursion (exact, characteristic 0)."""
    if not A.is_square():
        raise NotSquare(A.shape)
    n = A.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    M = zeros(n)
    I = identity(n)
    for k in range(1, n + 1):
        M = A @ M + coeffs[n - k + 1] * I
        coeffs[n - k] = as_scalar(-(A @ M).trace() / k)
    return Polynomial(tuple(coeffs))


# -- eigenvalues -----------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities.

    ``exact`` is True when every value is an exact scalar; otherwise values
    are complex floats and ``residual`` bounds ``sigma_min(A - lambda I)``
    relative to ``max(1, |A|)``.
    """

    values: tuple
    exact: bool
    residual: Optional[float] = None

    def flat(self) -> list:
        return [v for v, m in self.values for _ in range(m)]

    def as_multiset(self) -> dict:
        return dict(self.values)


def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    dq = len(num) - len(den)
    if dq < 0:
        return [ZERO], num
    q = [ZERO] * (dq + 1)
    lead = den[-1]
    for k in range(dq, -1, -1):
        c = num[k + len(den) - 1] / lead
        q[k] = c
        if c != 0:
            for i, d in enumerate(den):
                num[k + i] = num[k + i] - c * d
    return q, _poly_trim(num[: len(den) - 1] or [ZERO])


def _poly_gcd(a: list, b: list) -> list:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while not (len(b) == 1 and b[0] == 0):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return [x / a[-1] for x in a]


def _poly_deriv(p: list) -> list:
    return _poly_trim([i * p[i] for i in range(1, len(p))] or [ZERO])


def _squarefree_factors(p: list) -> list[tuple[list, int]]:
    """Yun's algorithm over Q: monic ``p`` -> [(squarefree factor, multiplicity)]."""
    out = []
    a = p
    b = _poly_deriv(a)
    c = _poly_gcd(a, b)
    w, _ = _poly_divmod(a, c)
    y, _ = _poly_divmod(b, c)
    z = [x - y_ for x, y_ in itertools.zip_longest(y, _poly_deriv(w), fillvalue=ZERO)]
    z = _poly_trim(z)
    i = 1
    while len(w) > 1:
        g = _poly_gcd(w, z)
        if len(g) > 1:
            out.append((g, i))
        w, _ = _poly_divmod(w, g)
        y, _ = _poly_divmod(z, g)
        z = _poly_trim([x - y_ for x, y_ in itertools.zip_longest(y, _poly_deriv(w), fillvalue=ZERO)])
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    from sympy import divisors

    return divisors(abs(n))


def _integer_form(p: list) -> list[int]:
    from math import lcm

    den = lcm(*(Fraction(x).denominator for x in p))
    return [int(Fraction(x) * den) for x in p]


def _split_rational_and_quadratic(f: list) -> tuple[list, list, list]:
    """Split a squarefree rational polynomial into rational roots, quadratic
    factors ``(s, p)`` meaning ``t^2 - s t + p``, and an unsplit remainder.

    Floating-point roots only propose candidates; every factor is confirmed
    by exact division, with denominators bounded via Gauss's lemma.
    """
    roots: list = []
    quads: list = []
    f = list(f)
    while len(f) > 1 and f[0] == 0:
        roots.append(ZERO)
        f = f[1:]
    if len(f) <= 1:
        return roots, quads, f

    def candidates(poly):
        ints = _integer_form(poly)
        approx = np.roots([float(c) for c in reversed(ints)])
        return ints, approx

    changed = True
    while changed and len(f) > 2:
        changed = False
        ints, approx = candidates(f)
        for r in approx:
            if abs(r.imag) > 1e-6 * max(1.0, abs(r)):
                continue
            for qd in _divisors(ints[-1]):
                num = round(r.real * qd)
                cand = Fraction(num, qd)
                q, rem = _poly_divmod(f, [-cand, ONE])
                if len(rem) == 1 and rem[0] == 0:
                    roots.append(cand)
                    f = q
                    changed = True
                    break
            if changed:
                break
    if len(f) == 2:
        roots.append(-f[0] / f[1])
        return roots, quads, [ONE]
    changed = True
    while changed and len(f) > 3:
        changed = False
        ints, approx = candidates(f)
        for i, j in itertools.combinations(range(len(approx)), 2):
            s = approx[i] + approx[j]
            pr = approx[i] * approx[j]
            if abs(s.imag) > 1e-6 * max(1.0, abs(s)) or abs(pr.imag) > 1e-6 * max(1.0, abs(pr)):
                continue
            for c in _divisors(ints[-1]):
                S, P = round(s.real * c), round(pr.real * c)
                den = [Fraction(P, c), Fraction(-S, c), ONE]
                q, rem = _poly_divmod(f, den)
                if len(rem) == 1 and rem[0] == 0:
                    quads.append((Fraction(S, c), Fraction(P, c)))
                    f = q
                    changed = True
                    break
            if changed:
                break
    if len(f) == 3:
        quads.append((-f[1] / f[2], f[0] / f[2]))
        f = [ONE]
    return roots, quads, f


def _quadratic_roots(s: Fraction, p: Fraction) -> tuple[Scalar, Scalar]:
    disc = s * s - 4 * p
    k, D = squarefree_split(disc)
    if D == 1:
        return s / 2 + k / 2, s / 2 - k / 2
    return quad(s / 2, k / 2, D), quad(s / 2, -k / 2, D)


def _sort_key(v):
    if is_real(v):
        return (0, -float(to_complex(v).real), 0.0)
    z = to_complex(v)
    return (1, -z.real, -z.imag)


def _float_spectrum(A: Matrix) -> Spectrum:
    M = A.to_numpy().astype(complex)
    vals = np.linalg.eigvals(M)
    scale = max(1.0, float(np.linalg.norm(M, 2)))
    res = 0.0
    for lam in vals:
        smin = np.linalg.svd(M - lam * np.eye(M.shape[0]), compute_uv=False)[-1]
        res = max(res, float(smin) / scale)
    ordered = sorted(vals, key=lambda z: (-z.real, -z.imag))
    return Spectrum(tuple((complex(v), 1) for v in ordered), exact=False, residual=res)


def eigen_quadratic(A: Matrix) -> Spectrum:
    """Exact eigenvalues when the characteristic polynomial splits over Q into
    linear and quadratic factors; otherwise float eigenvalues tagged inexact.

    Real exact eigenvalues come first in decreasing order.
    """
    if not A.is_square():
        raise NotSquare(A.shape)
    cp = charpoly(A)
    if any(isinstance(c, QuadExt) for c in cp.coeffs):
        return _float_spectrum(A)
    found: dict = {}
    for factor, mult in _squarefree_factors(list(cp.coeffs)):
        roots, quads, rest = _split_rational_and_quadratic(factor)
        if len(rest) > 1:
            return _float_spectrum(A)
        vals = list(roots)
        for s, p in quads:
            vals.extend(_quadratic_roots(s, p))
        for v in vals:
            found[v] = found.get(v, 0) + mult
    ordered = sorted(found.items(), key=lambda kv: _sort_key(kv[0]))
    return Spectrum(tuple(ordered), exact=True)


# -- congruence -----------------------------------------------------------------


def congruence_signature(S: Matrix) -> tuple[int, int, int]:
    """Inertia ``(positives, negatives, zeros)`` of a real symmetric matrix.

    Lagrange's symmetric reduction: pivot on the first nonzero diagonal entry;
    if the remaining diagonal is zero, fold a coupled pair ``e_i + e_j`` in.
    """
    if not S.is_symmetric():
        raise NotSymmetric("congruence_signature needs a symmetric matrix")
    if not all(is_real(x) for x in S.flat()):
        raise NotSymmetric("entries must be real")
    M = S.tolist()
    pos = neg = 0
    while M:
        n = len(M)
        k = next((i for i in range(n) if M[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j: row/col i gain row/col j; new diagonal 2 M_ij + M_jj
            for c in range(n):
                M[i][c] = M[i][c] + M[j][c]
            for r in range(n):
                M[r][i] = M[r][i] + M[r][j]
            k = i
        p = M[k][k]
        if sign(p) > 0:
            pos += 1
        else:
            neg += 1
        rest = [r for r in range(n) if r != k]
        M = [[as_scalar(M[r][c] - M[r][k] * M[k][c] / p) for c in rest] for r in rest]
    return pos, neg, S.rows - pos - neg


# -- JSON ------------------------------------------------------------------------


def field_json(d: Optional[int]) -> dict:
    return {"type": "rational"} if d is None else {"type": "quadratic", "d": d}


def matrix_to_json(A: Matrix) -> dict:
    return {
        "field": field_json(A.field),
        "rows": A.rows,
        "cols": A.cols,
        "entries": [[format_scalar(x) for x in r] for r in A.array],
    }


def _check_field(values, fld: dict, where: str):
    kind = fld.get("type")
    if kind == "rational":
        if common_field(values) is not None:
            raise ValueError(f"{where}: irrational entry in a rational field")
    elif kind == "quadratic":
        d = fld.get("d")
        if not isinstance(d, int):
            raise ValueError(f"{where}: field.d must be an integer")
        e = common_field(values)
        if e is not None and e != d:
            raise FieldMismatch(f"{where}: entry in sqrt({e}) but field declares sqrt({d})")
    else:
        raise ValueError(f"{where}: unknown field type {kind!r}")


def matrix_from_json(obj: dict, where: str = "matrix") -> Matrix:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        fld = obj["field"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{where}: missing field {exc}") from None
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ValueError(f"{where}: entries do not match rows={rows}, cols={cols}")
    vals = []
    for i, r in enumerate(entries):
        for j, s in enumerate(r):
            try:
                vals.append(parse_scalar(str(s)))
            except ValueError:
                raise ValueError(f"{where}.entries[{i}][{j}]: malformed scalar {s!r}") from None
    _check_field(vals, fld, where)
    return Matrix(np.array(vals, dtype=object).reshape(rows, cols))


def dumps_matrix(A: Matrix) -> str:
    return json.dumps(matrix_to_json(A))


def loads_matrix(text: str) -> Matrix:
    return matrix_from_json(json.loads(text))
