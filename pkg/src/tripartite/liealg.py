"""Matrix Lie algebras over Q or Q(sqrt d): bracket closure, structure
constants, Killing forms, centers, roots relative to a Cartan pair, and
checks of Chevalley commutator tables."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .linalg import (
    DimensionMismatch,
    Matrix,
    NotSymmetric,
    _rref_rows,
    commutator,
    congruence_signature,
    det,
    eigen_quadratic,
    matrix_from_json,
    matrix_to_json,
    rank_kernel,
    zeros,
)
from .linalg import ONE, ZERO
from .scalar import QuadExt, as_scalar, format_scalar, is_real

__all__ = [
    "MaxDimExceeded",
    "NotClosed",
    "NotCommuting",
    "NotDiagonalizable",
    "NotRealSymmetric",
    "LieAlgebraBasis",
    "StructureConstants",
    "RootDatum",
    "TableReport",
    "CHEVALLEY_TABLE",
    "lie_closure",
    "span_basis",
    "structure_constants",
    "adjoint_rep",
    "killing_form",
    "killing_form_trace",
    "derived_algebra",
    "center",
    "is_semisimple",
    "killing_signature",
    "roots_relative",
    "cartan_matrix",
    "root_system_type",
    "find_cartan_pair",
    "verify_chevalley_table",
    "commutes_with",
    "in_span",
    "nonzero_cross_brackets",
    "match_signed_permutation",
    "algebra_invariants",
    "load_matrices",
    "load_basis",
    "dump_basis",
]


class MaxDimExceeded(RuntimeError):
    pass


class NotClosed(ValueError):
    pass


class NotCommuting(ValueError):
    pass


class NotDiagonalizable(ValueError):
    pass


class NotRealSymmetric(NotSymmetric):
    pass


Element = Union[Matrix, str, int]


# -- echelon spans ---------------------------------------------------------------


class _Echelon:
    """Incrementally maintained reduced row echelon form of flattened matrices."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v: list) -> list:
        v = list(v)
        for r, p in zip(self.rows, self.pivots):
            f = v[p]
            if f != 0:
                v = [as_scalar(a - f * b) if b != 0 else a for a, b in zip(v, r)]
        return v

    def add(self, v: list) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [as_scalar(x * inv) for x in v]
        for k, r in enumerate(self.rows):
            f = r[p]
            if f != 0:
                self.rows[k] = [as_scalar(a - f * b) if b != 0 else a for a, b in zip(r, v)]
        # keep pivots sorted so the final basis is the RREF
        pos = next((k for k, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(pos, v)
        self.pivots.insert(pos, p)
        return True

    def __len__(self):
        return len(self.rows)


def _flat(m: Matrix) -> list:
    return list(m.flat())


@dataclass(frozen=True, eq=False)
class LieAlgebraBasis:
    """Linearly independent square matrices, optionally named.

    Coordinates of a matrix in the span are computed exactly through the
    echelon form of the flattened basis together with its change of basis.
    """

    basis: tuple
    names: Optional[tuple] = None
    _rref: tuple = field(default=(), repr=False)
    _pivots: tuple = field(default=(), repr=False)
    _change: tuple = field(default=(), repr=False)

    def __init__(self, basis: Iterable[Matrix], names: Optional[Sequence[str]] = None):
        basis = tuple(basis)
        if basis:
            n = basis[0].rows
            for b in basis:
                if not b.is_square() or b.rows != n:
                    raise DimensionMismatch("basis elements must be square matrices of equal size")
        if names is not None:
            names = tuple(names)
            if len(names) != len(basis) or len(set(names)) != len(names):
                raise ValueError("names must be distinct and match the basis length")
        dim = len(basis)
        aug = [_flat(b) + [ONE if i == j else ZERO for j in range(dim)] for i, b in enumerate(basis)]
        rows, piv = _rref_rows(aug) if aug else ([], [])
        width = basis[0].rows ** 2 if basis else 0
        if any(p >= width for p in piv) or len(piv) != dim:
            raise ValueError("basis elements are linearly dependent")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_rref", tuple(tuple(r[:width]) for r in rows))
        object.__setattr__(self, "_pivots", tuple(piv))
        object.__setattr__(self, "_change", tuple(tuple(r[width:]) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.basis[0].rows if self.basis else 0

    def __len__(self):
        return self.dim

    def __getitem__(self, i: int) -> Matrix:
        return self.basis[i]

    def coordinates(self, m: Matrix) -> Optional[tuple]:
        """Exact coefficients ``a`` with ``m = sum a_i b_i``, or None."""
        if not self.basis:
            return () if m.is_zero() else None
        if m.shape != self.basis[0].shape:
            raise DimensionMismatch(f"{m.shape} vs {self.basis[0].shape}")
        v = _flat(m)
        c = [v[p] for p in self._pivots]
        for k, x in enumerate(v):
            if x != sum((ci * r[k] for ci, r in zip(c, self._rref) if r[k] != 0), ZERO):
                return None
        return tuple(
            as_scalar(sum((c[r] * self._change[r][i] for r in range(self.dim)), ZERO)) for i in range(self.dim)
        )

    def combine(self, coeffs: Sequence) -> Matrix:
        out = zeros(self.size)
        for a, b in zip(coeffs, self.basis):
            if a != 0:
                out = out + b * a
        return out

    def element(self, e: Element) -> Matrix:
        if isinstance(e, Matrix):
            return e
        if isinstance(e, str):
            if self.names is None or e not in self.names:
                raise KeyError(f"no basis element named {e!r}")
            return self.basis[self.names.index(e)]
        return self.basis[e]


def span_basis(mats: Iterable[Matrix]) -> LieAlgebraBasis:
    """Echelonized basis of the linear span (no bracket closure)."""
    mats = list(mats)
    if not mats:
        return LieAlgebraBasis(())
    n = mats[0].rows
    ech = _Echelon(n * n)
    for m in mats:
        ech.add(_flat(m))
    return LieAlgebraBasis(Matrix([r[i * n:(i + 1) * n] for i in range(n)]) for r in ech.rows)


def lie_closure(gens: Sequence[Matrix], maxdim: int = 256) -> LieAlgebraBasis:
    """Smallest bracket-closed span containing ``gens``.

    Worklist iteration: each new independent element is bracketed against all
    earlier ones; the result is the echelonized basis of the span.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    if maxdim < 1:
        raise ValueError("maxdim must be at least 1")
    n = gens[0].rows
    for g in gens:
        if not g.is_square() or g.rows != n:
            raise DimensionMismatch("generators must be square matrices of equal size")
    ech = _Echelon(n * n)
    found: list[Matrix] = []

    def push(m: Matrix):
        if ech.add(_flat(m)):
            found.append(m)
            if len(ech) > maxdim:
                raise MaxDimExceeded(f"closure exceeds dimension {maxdim}")

    for g in gens:
        push(g)
    i = 0
    while i < len(found):
        for j in range(i):
            push(commutator(found[j], found[i]))
        i += 1
    return LieAlgebraBasis(Matrix([r[k * n:(k + 1) * n] for k in range(n)]) for r in ech.rows)


# -- structure constants and Killing forms ------------------------------------------


@dataclass(frozen=True)
class StructureConstants:
    """``[b_i, b_j] = sum_k c[i][j][k] b_k``."""

    c: tuple

    @property
    def dim(self) -> int:
        return len(self.c)

    def jacobi_residual(self) -> tuple:
        """All components of ``[[i,j],k] + [[j,k],i] + [[k,i],j]``; zero for a Lie algebra."""
        n, c = self.dim, self.c
        out = []
        for i, j, k in itertools.combinations(range(n), 3):
            for m in range(n):
                s = ZERO
                for l in range(n):
                    s += c[i][j][l] * c[l][k][m] + c[j][k][l] * c[l][i][m] + c[k][i][l] * c[l][j][m]
                out.append(as_scalar(s))
        return tuple(out)

    def is_abelian(self) -> bool:
        return all(x == 0 for a in self.c for b in a for x in b)


def structure_constants(b: LieAlgebraBasis) -> StructureConstants:
    n = b.dim
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            co = b.coordinates(commutator(b[i], b[j]))
            if co is None:
                raise NotClosed(f"[b{i}, b{j}] is outside the span")
            c[i][j] = list(co)
            c[j][i] = [as_scalar(-x) for x in co]
    return StructureConstants(tuple(tuple(tuple(r) for r in m) for m in c))


def adjoint_rep(b: LieAlgebraBasis, sc: Optional[StructureConstants] = None) -> list[Matrix]:
    """``(ad b_i)[k][j] = c[i][j][k]``: column j holds the coordinates of ``[b_i, b_j]``."""
    c = (sc or structure_constants(b)).c
    n = b.dim
    return [Matrix([[c[i][j][k] for j in range(n)] for k in range(n)]) for i in range(n)]


def _need_nonzero(b: LieAlgebraBasis):
    if b.dim == 0:
        raise ValueError("the zero algebra has no Killing matrix")


def killing_form(b: LieAlgebraBasis, sc: Optional[StructureConstants] = None) -> Matrix:
    """``B_ij = sum_{m,n} c[i][m][n] c[j][n][m]`` (adjoint-trace normalization)."""
    _need_nonzero(b)
    c = (sc or structure_constants(b)).c
    n = b.dim
    B = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = ZERO
            for m in range(n):
                for k in range(n):
                    if c[i][m][k] != 0 and c[j][k][m] != 0:
                        s += c[i][m][k] * c[j][k][m]
            B[i][j] = B[j][i] = as_scalar(s)
    return Matrix(B)


def killing_form_trace(b: LieAlgebraBasis) -> Matrix:
    """The Killing form as ``trace(ad b_i @ ad b_j)``, from the adjoint matrices."""
    _need_nonzero(b)
    ad = adjoint_rep(b)
    n = b.dim
    return Matrix([[(ad[i] @ ad[j]).trace() for j in range(n)] for i in range(n)])


def derived_algebra(b: LieAlgebraBasis) -> LieAlgebraBasis:
    return span_basis(commutator(b[i], b[j]) for i in range(b.dim) for j in range(i + 1, b.dim))


def _center_coords(b: LieAlgebraBasis, sc: Optional[StructureConstants] = None) -> list[tuple]:
    c = (sc or structure_constants(b)).c
    n = b.dim
    # rows (i, k): sum_j a_j c[i][j][k] = 0
    A = Matrix([[c[i][j][k] for j in range(n)] for i in range(n) for k in range(n)]) if n else None
    if A is None:
        return []
    return rank_kernel(A)[1]


def center(b: LieAlgebraBasis) -> LieAlgebraBasis:
    return span_basis(b.combine(v) for v in _center_coords(b))


def is_semisimple(b: LieAlgebraBasis) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    return b.dim > 0 and det(killing_form(b)) != 0


def killing_signature(b: LieAlgebraBasis) -> tuple[int, int, int]:
    K = killing_form(b)
    if not all(is_real(x) for x in K.flat()):
        raise NotRealSymmetric("Killing form has non-real entries")
    return congruence_signature(K)


# -- roots ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootDatum:
    """Joint ad-eigen decomposition relative to a commuting family ``cartan``.

    ``roots`` pairs each nonzero weight with a basis of its root space.
    ``complete`` is true when the zero-weight space is exactly the span of
    the Cartan elements plus the center.
    """

    cartan: tuple
    roots: tuple
    zero_dim: int
    complete: bool

    @property
    def weights(self) -> list[tuple]:
        return [w for w, _ in self.roots]

    def positive(self) -> list[tuple]:
        return [w for w in self.weights if _lex_positive(w)]

    def as_dict(self) -> dict:
        return {
            "roots": [[format_scalar(x) for x in w] for w in self.weights],
            "root_space_dims": [len(v) for _, v in self.roots],
            "zero_weight_dim": self.zero_dim,
            "complete": self.complete,
        }


def _lex_positive(w) -> bool:
    """First nonzero coordinate positive; for a non-real coordinate the real
    part decides, then the imaginary part."""
    for x in w:
        if x != 0:
            if is_real(x):
                return x > 0
            return (x.a, x.b) > (0, 0)
    return False


def _exact_eigenvalues(M: Matrix) -> list:
    sp = eigen_quadratic(M)
    if not sp.exact:
        raise NotDiagonalizable("ad(h) has eigenvalues outside the working field")
    return [v for v, _ in sp.values]


def roots_relative(b: LieAlgebraBasis, cartan: Sequence[Element]) -> RootDatum:
    """Simultaneous eigenspaces of ``ad h`` for ``h`` in ``cartan``.

    Cartan elements may be given as matrices in the span, names or indices.
    """
    hs = [b.element(h) for h in cartan]
    coords = []
    for h in hs:
        co = b.coordinates(h)
        if co is None:
            raise ValueError("Cartan element is not in the algebra")
        coords.append(co)
    for x, y in itertools.combinations(hs, 2):
        if not commutator(x, y).is_zero():
            raise NotCommuting("Cartan elements do not commute")
    sc = structure_constants(b)
    ad = adjoint_rep(b, sc)
    adh = [sum((ad[i] * a for i, a in enumerate(co) if a != 0), zeros(b.dim)) for co in coords]
    n = b.dim
    # spaces: list of (weight so far, list of coordinate vectors)
    spaces = [((), [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)])]
    for A in adh:
        eig = _exact_eigenvalues(A)
        nxt = []
        for w, vecs in spaces:
            V = Matrix([list(v) for v in vecs]).T  # n x k
            total = 0
            for lam in eig:
                shifted = A - _scalar_id(n, lam)
                _, ker = rank_kernel(shifted @ V)
                if ker:
                    sub = [tuple(as_scalar(sum((V.array[r, q] * a[q] for q in range(len(a))), ZERO)) for r in range(n)) for a in ker]
                    nxt.append((w + (lam,), sub))
                    total += len(ker)
            if total != len(vecs):
                raise NotDiagonalizable("ad(h) is not diagonalizable on the algebra")
        spaces = nxt
    zero = tuple(ZERO for _ in hs)
    roots = []
    zero_dim = 0
    for w, vecs in spaces:
        if w == zero:
            zero_dim = len(vecs)
            continue
        roots.append((w, tuple(b.combine(v) for v in vecs)))
    roots.sort(key=lambda r: _weight_key(r[0]))
    expected_zero = len(span_basis(list(hs) + list(center(b).basis)))
    return RootDatum(tuple(hs), tuple(roots), zero_dim, zero_dim == expected_zero)


def _weight_key(w) -> tuple:
    """Positive weights first, each half in decreasing lexicographic order."""
    parts = [(x.a, x.b) if isinstance(x, QuadExt) else (x, 0) for x in w]
    if _lex_positive(w):
        return (0, [(-a, -b) for a, b in parts])
    return (1, parts)


def _scalar_id(n: int, lam) -> Matrix:
    return Matrix([[lam if i == j else ZERO for j in range(n)] for i in range(n)])


def cartan_matrix(rd: RootDatum) -> Matrix:
    """Cartan matrix of the simple roots (lexicographic positivity).

    ``A_ij = -q`` where ``q`` is the largest k with ``alpha_i + k alpha_j`` a
    root (the string through a simple root starts at it).
    """
    roots = set(rd.weights)
    pos = [w for w in rd.weights if _lex_positive(w)]
    sums = {tuple(as_scalar(a + b) for a, b in zip(x, y)) for x in pos for y in pos}
    simple = sorted((w for w in pos if w not in sums), key=lambda w: [-x for x in w])
    if not simple:
        raise ValueError("no roots")
    r = len(simple)
    A = [[ZERO] * r for _ in range(r)]
    for i, a in enumerate(simple):
        for j, c in enumerate(simple):
            if i == j:
                A[i][j] = Fraction(2)
                continue
            q = 0
            while tuple(as_scalar(x + (q + 1) * y) for x, y in zip(a, c)) in roots:
                q += 1
            A[i][j] = Fraction(-q)
    return Matrix(A)


def _component_type(A: list[list[int]], nodes: list[int]) -> str:
    r = len(nodes)
    if r == 1:
        return "A1"
    edges = {}
    for i in nodes:
        for j in nodes:
            if i < j and A[i][j] != 0:
                edges[(i, j)] = (A[i][j] * A[j][i], A[i][j], A[j][i])
    if len(edges) != r - 1:
        return "?"
    deg = {i: sum(1 for e in edges if i in e) for i in nodes}
    mult = [v[0] for v in edges.values()]
    if all(m == 1 for m in mult):
        branch = [i for i in nodes if deg[i] == 3]
        if not branch and max(deg.values()) <= 2:
            return f"A{r}"
        if len(branch) == 1 and max(deg.values()) == 3:
            legs = []
            b = branch[0]
            for nb in [j for j in nodes if (min(b, j), max(b, j)) in edges]:
                length, prev, cur = 1, b, nb
                while True:
                    nxt = [j for j in nodes if j not in (prev, cur) and (min(cur, j), max(cur, j)) in edges]
                    if not nxt:
                        break
                    prev, cur = cur, nxt[0]
                    length += 1
                legs.append(length)
            legs.sort()
            if legs[:2] == [1, 1]:
                return f"D{r}"
            if legs[:2] == [1, 2] and legs[2] in (2, 3, 4):
                return f"E{r}"
        return "?"
    if max(deg.values()) > 2:
        return "?"
    if r == 2 and mult == [3]:
        return "G2"
    if mult.count(2) == 1 and all(m in (1, 2) for m in mult):
        (i, j), (_, aij, aji) = next((k, v) for k, v in edges.items() if v[0] == 2)
        ends = [k for k in nodes if deg[k] == 1]
        if r == 4 and not any(k in ends for k in (i, j)):
            return "F4"
        # long root at the end of the double bond: B_n; short root there: C_n
        end = i if i in ends else j
        other = j if end == i else i
        end_is_short = A[end][other] == -1 and A[other][end] == -2
        if r == 2:
            return "B2"
        return f"B{r}" if end_is_short else f"C{r}"
    return "?"


def root_system_type(rd: RootDatum) -> str:
    """Dynkin type of the root system, e.g. ``"A2"`` or ``"A1xA1"``."""
    if not rd.roots:
        return "0"
    C = cartan_matrix(rd)
    A = [[int(x) for x in row] for row in C.tolist()]
    r = len(A)
    seen, comps = set(), []
    for s in range(r):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(r):
                if j not in seen and A[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    types = sorted(_component_type(A, c) for c in comps)
    return "x".join(types)


def find_cartan_pair(b: LieAlgebraBasis, rank: int = 2, seed: int = 0, attempts: int = 400, span: int = 2) -> Optional[RootDatum]:
    """Search random sparse small-integer combinations of basis elements for
    a commuting, ad-diagonalizable family whose zero-weight space is exactly
    the family plus the center (a regular family).  Returns the root datum or
    None after ``attempts`` tries.

    Candidates are sparse because a generic element usually has irrational
    ad-eigenvalues.
    """
    rng = random.Random(seed)
    zc = len(center(b))
    n = b.dim

    def sparse(vecs):
        k = rng.randint(1, min(2, len(vecs)))
        picks = rng.sample(range(len(vecs)), k)
        coeffs = [ZERO] * n
        for p in picks:
            c = Fraction(rng.choice([x for x in range(-span, span + 1) if x]))
            coeffs = [as_scalar(a + c * v) for a, v in zip(coeffs, vecs[p])]
        return b.combine(coeffs)

    unit = [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]
    for _ in range(attempts):
        first = sparse(unit)
        hs = [first]
        cent = rank_kernel(_ad_matrix(b, first))[1]
        if len(cent) < rank:
            continue
        for _ in range(rank - 1):
            hs.append(sparse(cent))
        if len(span_basis(hs)) != rank or any(not commutator(x, y).is_zero() for x, y in itertools.combinations(hs, 2)):
            continue
        try:
            rd = roots_relative(b, hs)
        except (NotDiagonalizable, ValueError):
            continue
        if rd.zero_dim == rank + zc and rd.complete and all(is_real(x) for w in rd.weights for x in w):
            return rd
    return None


def _ad_matrix(b: LieAlgebraBasis, x: Matrix) -> Matrix:
    cols = []
    for y in b.basis:
        co = b.coordinates(commutator(x, y))
        if co is None:
            raise NotClosed("bracket outside the span")
        cols.append(list(co))
    return Matrix(cols).T


# -- Chevalley table ------------------------------------------------------------------

# [a, b] for a before b in the order x1 x2 x3 y1 y2 y3 h1 h2; pairs not listed are 0
CHEVALLEY_TABLE: dict[tuple[str, str], dict[str, int]] = {
    ("x1", "x2"): {"x3": -1},
    ("x1", "y1"): {"h1": 1},
    ("x1", "y3"): {"y2": 1},
    ("x1", "h1"): {"x1": -2},
    ("x1", "h2"): {"x1": 1},
    ("x2", "y2"): {"h2": 1},
    ("x2", "y3"): {"y1": -1},
    ("x2", "h1"): {"x2": 1},
    ("x2", "h2"): {"x2": -2},
    ("x3", "y1"): {"x2": 1},
    ("x3", "y2"): {"x1": -1},
    ("x3", "y3"): {"h1": 1, "h2": 1},
    ("x3", "h1"): {"x3": -1},
    ("x3", "h2"): {"x3": -1},
    ("y1", "y2"): {"y3": 1},
    ("y1", "h1"): {"y1": 2},
    ("y1", "h2"): {"y1": -1},
    ("y2", "h1"): {"y2": -1},
    ("y2", "h2"): {"y2": 2},
    ("y3", "h1"): {"y3": 1},
    ("y3", "h2"): {"y3": 1},
}

TABLE_ORDER = ("x1", "x2", "x3", "y1", "y2", "y3", "h1", "h2")


def _combo_str(terms: Mapping[str, object]) -> str:
    parts = []
    for name, c in terms.items():
        if c == 0:
            continue
        if c == 1:
            parts.append(f"+{name}")
        elif c == -1:
            parts.append(f"-{name}")
        else:
            s = format_scalar(c)
            parts.append(f"{'' if s.startswith('-') else '+'}{s}*{name}")
    out = "".join(parts)
    return (out[1:] if out.startswith("+") else out) or "0"


@dataclass(frozen=True)
class TableReport:
    checks: tuple  # dicts: pair, expected, computed, pass

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    @property
    def mismatches(self) -> list[dict]:
        return [c for c in self.checks if not c["pass"]]

    def as_dict(self) -> dict:
        return {"pass": self.ok, "checked": len(self.checks), "mismatches": self.mismatches}


def verify_chevalley_table(candidate: Mapping[str, Matrix]) -> TableReport:
    """Check all 28 brackets of an ``x1..h2`` candidate against the sl3 table."""
    missing = [k for k in TABLE_ORDER if k not in candidate]
    if missing:
        raise KeyError(f"candidate lacks {missing}")
    mats = [candidate[k] for k in TABLE_ORDER]
    try:
        span = LieAlgebraBasis(mats, TABLE_ORDER)
    except ValueError:
        span = None
    checks = []
    for a, b in itertools.combinations(TABLE_ORDER, 2):
        terms = CHEVALLEY_TABLE.get((a, b), {})
        expected = zeros(mats[0].rows)
        for name, c in terms.items():
            expected = expected + candidate[name] * c
        got = commutator(candidate[a], candidate[b])
        co = span.coordinates(got) if span is not None else None
        computed = _combo_str(dict(zip(TABLE_ORDER, co))) if co is not None else "outside span"
        checks.append({"pair": f"[{a},{b}]", "expected": _combo_str(terms), "computed": computed, "pass": got == expected})
    return TableReport(tuple(checks))


def commutes_with(a: LieAlgebraBasis, b: LieAlgebraBasis) -> bool:
    if a.dim and b.dim and a.size != b.size:
        raise DimensionMismatch(f"{a.size} vs {b.size}")
    return all(commutator(x, y).is_zero() for x in a.basis for y in b.basis)


def nonzero_cross_brackets(a: LieAlgebraBasis, b: LieAlgebraBasis) -> list[tuple[int, int, Matrix]]:
    out = []
    for i, x in enumerate(a.basis):
        for j, y in enumerate(b.basis):
            c = commutator(x, y)
            if not c.is_zero():
                out.append((i, j, c))
    return out


def in_span(b: LieAlgebraBasis, m: Matrix) -> bool:
    return b.coordinates(m) is not None


# -- comparing symmetric forms ----------------------------------------------------------


def match_signed_permutation(A: Matrix, B: Matrix, allow_signs: bool = True) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Find ``perm, signs`` with ``B[i][j] = s_i s_j A[perm i][perm j]``.

    This is the relation between Gram matrices of a basis and a reordered,
    sign-flipped copy of it.  Backtracking with partial consistency checks.
    """
    n = A.rows
    if A.shape != B.shape or not A.is_square():
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")
    a, bb = A.tolist(), B.tolist()
    perm: list[int] = []
    signs: list[int] = []
    used = [False] * n
    sign_choices = (1, -1) if allow_signs else (1,)

    def ok(i: int, p: int, s: int) -> bool:
        if bb[i][i] != a[p][p]:
            return False
        for k in range(i):
            if bb[i][k] != s * signs[k] * a[p][perm[k]]:
                return False
        return True

    def go(i: int) -> bool:
        if i == n:
            return True
        for p in range(n):
            if used[p]:
                continue
            for s in sign_choices:
                if ok(i, p, s):
                    used[p] = True
                    perm.append(p)
                    signs.append(s)
                    if go(i + 1):
                        return True
                    used[p] = False
                    perm.pop()
                    signs.pop()
        return False

    return (tuple(perm), tuple(signs)) if go(0) else None


# -- summaries and files ------------------------------------------------------------------


def algebra_invariants(b: LieAlgebraBasis, cartan: Optional[Sequence[Element]] = None) -> dict:
    """Isomorphism-type invariants: dimensions, Killing rank/signature, roots."""
    K = killing_form(b)
    rank = len(b.basis) - len(rank_kernel(K)[1]) if b.dim else 0
    out = {
        "dim": b.dim,
        "center_dim": len(center(b)),
        "derived_dim": len(derived_algebra(b)),
        "killing_rank": rank,
    }
    if all(is_real(x) for x in K.flat()):
        out["killing_signature"] = list(congruence_signature(K))
    if cartan is not None:
        rd = roots_relative(b, cartan)
        out["root_count"] = len(rd.roots)
        out["root_system"] = root_system_type(rd)
        out["roots_complete"] = rd.complete
    return out


def load_matrices(obj, where: str = "basis") -> tuple[list[Matrix], Optional[list[str]]]:
    """Basis file content: a JSON array of matrices, each optionally carrying
    a ``name`` (all or none).  No independence check."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"{where}: expected a nonempty JSON array of matrices")
    mats, names = [], []
    for i, m in enumerate(obj):
        mats.append(matrix_from_json(m, f"{where}[{i}]"))
        names.append(m.get("name") if isinstance(m, dict) else None)
    if all(n is None for n in names):
        return mats, None
    if any(n is None for n in names):
        raise ValueError(f"{where}: either every element has a name or none does")
    return mats, names


def load_basis(obj, where: str = "basis") -> LieAlgebraBasis:
    """Basis file as a :class:`LieAlgebraBasis`, elements kept as listed (not
    re-echelonized) so names keep their meaning."""
    mats, names = load_matrices(obj, where)
    try:
        return LieAlgebraBasis(mats, names)
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None


def dump_basis(b: LieAlgebraBasis) -> str:
    out = []
    for i, m in enumerate(b.basis):
        d = matrix_to_json(m)
        if b.names is not None:
            d = {"name": b.names[i], **d}
        out.append(d)
    return json.dumps(out)
