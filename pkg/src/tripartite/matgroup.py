"""Finite matrix groups: Dimino enumeration, Schreier-Sims order certificates,
derived subgroups and cheap structural invariants.

Group elements are handled internally as integer arrays: a matrix over
Q(sqrt d) with entries in (1/s)Z[sqrt d] is stored as the pair of integer
arrays ``(s*a, s*b)``.  Products are checked for exact divisibility by ``s``;
if a product leaves the lattice the computation restarts with a finer scale,
so results never depend on the representation.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .linalg import Matrix, det, identity, inverse, matrix_from_json, matrix_to_json
from .scalar import QuadExt, as_scalar, common_field, quad

__all__ = [
    "MatrixGroup",
    "GroupClosure",
    "BSGSChain",
    "GroupStructure",
    "LimitExceeded",
    "OrbitCapExceeded",
    "NotFinite",
    "Cancelled",
    "enumerate_group",
    "order_bsgs",
    "contains",
    "derived_subgroup",
    "identify_small",
    "element_order",
    "random_words",
    "load_generators",
    "dump_generators",
]


class LimitExceeded(RuntimeError):
    def __init__(self, partial: int, limit: int):
        super().__init__(f"group has more than {limit} elements (found {partial} so far)")
        self.partial = partial
        self.limit = limit


class OrbitCapExceeded(RuntimeError):
    pass


class NotFinite(RuntimeError):
    pass


class Cancelled(RuntimeError):
    pass


class _Rescale(Exception):
    """A product left (1/s)Z[sqrt d]."""


class _Overflow(Exception):
    pass


_INT64_SAFE = 1 << 24

# -- exact integer representation ------------------------------------------------


class _Ring:
    """Scaled-integer encoding of n x n matrices over Q(sqrt d)."""

    def __init__(self, n: int, scale: int, d: Optional[int], wide: bool = False):
        self.n = n
        self.s = scale
        self.d = d
        self.dtype = object if wide else np.int64
        one = np.eye(n, dtype=np.int64) * scale
        self.one = self._pack(one.astype(self.dtype), None if d is None else np.zeros((n, n), dtype=self.dtype))
        self.one_key = self.key(self.one)

    def _pack(self, a, b):
        return (a, b)

    def _split(self, x) -> tuple[Fraction, Fraction]:
        x = as_scalar(x)
        if isinstance(x, QuadExt):
            return x.a, x.b
        return x, Fraction(0)

    def encode(self, M: Matrix):
        n = self.n
        a = np.empty((M.rows, M.cols), dtype=object)
        b = np.empty((M.rows, M.cols), dtype=object)
        for i in range(M.rows):
            for j in range(M.cols):
                p, q = self._split(M.array[i, j])
                p, q = p * self.s, q * self.s
                if p.denominator != 1 or q.denominator != 1:
                    raise _Rescale
                a[i, j], b[i, j] = int(p), int(q)
        if self.dtype is not object:
            if max(abs(int(v)) for v in np.concatenate([a.ravel(), b.ravel()])) >= _INT64_SAFE:
                raise _Overflow
            a, b = a.astype(np.int64), b.astype(np.int64)
        if self.d is None:
            if any(v != 0 for v in b.ravel()):
                raise ValueError("irrational entry in a rational group")
            return (a, None)
        return (a, b)

    def decode(self, x) -> Matrix:
        a, b = x
        rows = []
        for i in range(a.shape[0]):
            row = []
            for j in range(a.shape[1]):
                bj = 0 if b is None else int(b[i, j])
                row.append(quad(Fraction(int(a[i, j]), self.s), Fraction(bj, self.s), self.d) if bj else Fraction(int(a[i, j]), self.s))
            rows.append(row)
        return Matrix(rows)

    def _div(self, m):
        if self.s != 1:
            if (m % self.s).any():
                raise _Rescale
            m = m // self.s
        if self.dtype is not object and m.size and np.abs(m).max() >= _INT64_SAFE:
            raise _Overflow
        return m

    def mul(self, x, y):
        xa, xb = x
        ya, yb = y
        if xb is None:
            return (self._div(xa @ ya), None)
        a = xa @ ya + self.d * (xb @ yb)
        b = xa @ yb + xb @ ya
        return (self._div(a), self._div(b))

    # vectors share the encoding (scaled column vectors)
    apply = mul

    def key(self, x) -> bytes | tuple:
        a, b = x
        if self.dtype is object:
            return (tuple(a.ravel()), None if b is None else tuple(b.ravel()))
        return a.tobytes() + (b.tobytes() if b is not None else b"")

    def is_one(self, x) -> bool:
        return self.key(x) == self.one_key

    def basis_vector(self, i: int):
        v = np.zeros((self.n, 1), dtype=self.dtype)
        v[i, 0] = self.s
        return (v, None if self.d is None else np.zeros((self.n, 1), dtype=self.dtype))

    def vector(self, ints: Sequence[int]):
        v = np.array([[self.s * int(c)] for c in ints], dtype=self.dtype)
        return (v, None if self.d is None else np.zeros((self.n, 1), dtype=self.dtype))


def _denominators(M: Matrix) -> list[int]:
    out = []
    for x in M.flat():
        if isinstance(x, QuadExt):
            out += [x.a.denominator, x.b.denominator]
        else:
            out.append(x.denominator)
    return out


def _run(mats: Sequence[Matrix], fn: Callable):
    """Call ``fn(ring, encoded_gens, encoded_inverses)``, retrying with a finer
    scale or wide integers when the first encoding is too coarse."""
    n = mats[0].rows
    d = common_field([x for m in mats for x in m.flat()])
    invs = [inverse(m) for m in mats]
    base = math.lcm(*(q for m in list(mats) + invs for q in _denominators(m)))
    scale, wide = base, False
    for _ in range(12):
        ring = _Ring(n, scale, d, wide)
        try:
            gens = [ring.encode(m) for m in mats]
            ginv = [ring.encode(m) for m in invs]
            return fn(ring, gens, ginv)
        except _Rescale:
            scale *= max(base, 2)
        except _Overflow:
            wide = True
    raise RuntimeError("could not find an exact integer encoding for this group")


# -- group types -----------------------------------------------------------------


@dataclass(frozen=True)
class MatrixGroup:
    """Group generated by invertible square matrices of one size over one field."""

    generators: tuple

    def __init__(self, generators: Iterable[Matrix]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("a group needs at least one generator")
        n = gens[0].rows
        for g in gens:
            if not g.is_square() or g.rows != n:
                raise ValueError("generators must be square matrices of equal size")
            if det(g) == 0:
                raise ValueError("generators must be invertible")
        common_field([x for g in gens for x in g.flat()])
        object.__setattr__(self, "generators", gens)

    @property
    def degree(self) -> int:
        return self.generators[0].rows


@dataclass(frozen=True, eq=False)
class GroupClosure:
    """Fully enumerated finite group."""

    generators: tuple
    ring: _Ring = field(repr=False)
    reps: tuple = field(repr=False)
    index: dict = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.reps)

    @property
    def closed(self) -> bool:
        return True

    @property
    def elements(self) -> list[Matrix]:
        return [self.ring.decode(x) for x in self.reps]

    def __len__(self):
        return self.order

    def __contains__(self, m: Matrix) -> bool:
        try:
            return self.ring.key(self.ring.encode(m)) in self.index
        except (_Rescale, _Overflow, ValueError):
            return False

    def _mul(self, i: int, j: int) -> int:
        return self.index[self.ring.key(self.ring.mul(self.reps[i], self.reps[j]))]

    def _inv(self, i: int) -> int:
        # the inverse is a positive power of the element
        x = self.reps[i]
        prev, cur = self.ring.one, x
        while not self.ring.is_one(cur):
            prev, cur = cur, self.ring.mul(cur, x)
        return self.index[self.ring.key(prev)]


def _dimino(ring: _Ring, gens: list, limit: int, progress=None, cancel=None) -> list:
    """Dimino's algorithm: extend the element list one generator at a time,
    adding whole cosets of the previous subgroup."""
    elements = [ring.one]
    seen = {ring.one_key}

    def check():
        if len(elements) > limit:
            raise LimitExceeded(len(elements), limit)
        if cancel is not None and cancel.is_set():
            raise Cancelled("enumeration cancelled")

    used: list = []
    for g in gens:
        if ring.key(g) in seen:
            used.append(g)
            continue
        used.append(g)
        prev = list(elements)
        reps = [g]
        for h in prev:
            x = ring.mul(h, g)
            k = ring.key(x)
            if k not in seen:
                seen.add(k)
                elements.append(x)
        check()
        pos = 0
        while pos < len(reps):
            r = reps[pos]
            pos += 1
            for s in used:
                y = ring.mul(r, s)
                if ring.key(y) in seen:
                    continue
                reps.append(y)
                for h in prev:
                    x = ring.mul(h, y)
                    k = ring.key(x)
                    seen.add(k)
                    elements.append(x)
                check()
                if progress is not None:
                    progress({"event": "enumerate", "elements": len(elements)})
    return elements


def _closure(ring, reps, generators) -> GroupClosure:
    index = {ring.key(x): i for i, x in enumerate(reps)}
    return GroupClosure(tuple(generators), ring, tuple(reps), index)


def enumerate_group(g: MatrixGroup, limit: int = 10**5, progress=None, cancel=None) -> GroupClosure:
    """All elements of ``g``; raises :class:`LimitExceeded` past ``limit``."""
    if limit < 1:
        raise ValueError("limit must be positive")

    def go(ring, gens, _):
        return _closure(ring, _dimino(ring, gens, limit, progress, cancel), g.generators)

    return _run(g.generators, go)


# -- Schreier-Sims -----------------------------------------------------------------


class _Level:
    __slots__ = ("point", "gens", "orbit")

    def __init__(self, point):
        self.point = point
        self.gens: list = []  # (g, g^-1)
        self.orbit: dict = {}  # key -> (image point, u, u^-1)


@dataclass(frozen=True, eq=False)
class BSGSChain:
    """Base and strong generating set.  ``order`` is the product of the basic
    orbit lengths."""

    base: tuple
    orbit_sizes: tuple
    strong_generators: tuple
    order: int
    verified: bool
    ring: _Ring = field(repr=False)
    levels: tuple = field(repr=False)


class _Chain:
    def __init__(self, ring: _Ring, gens, ginv, cap: int, rng: random.Random, candidates, cancel, progress):
        self.ring = ring
        self.gens = list(zip(gens, ginv))
        self.cap = cap
        self.rng = rng
        self.candidates = candidates
        self.cancel = cancel
        self.progress = progress
        self.levels: list[_Level] = []

    # orbits with transversals, breadth first
    def rebuild_orbit(self, lvl: _Level):
        ring = self.ring
        start = lvl.point
        lvl.orbit = {ring.key(start): (start, ring.one, ring.one)}
        queue = [start]
        pos = 0
        while pos < len(queue):
            p = queue[pos]
            pos += 1
            _, u, ui = lvl.orbit[ring.key(p)]
            for g, gi in lvl.gens:
                q = ring.apply(g, p)
                k = ring.key(q)
                if k not in lvl.orbit:
                    lvl.orbit[k] = (q, ring.mul(g, u), ring.mul(ui, gi))
                    queue.append(q)
                    if len(lvl.orbit) > self.cap:
                        raise OrbitCapExceeded(f"orbit exceeded {self.cap} points")
        if self.progress is not None:
            self.progress({"event": "orbit", "level": self.levels.index(lvl), "size": len(lvl.orbit)})

    def sift(self, g, start: int = 0):
        ring = self.ring
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            img = ring.apply(g, lvl.point)
            hit = lvl.orbit.get(ring.key(img))
            if hit is None:
                return g, i
            g = ring.mul(hit[2], g)
        return g, len(self.levels)

    def _new_point(self, h):
        """First candidate base point moved by ``h``."""
        ring = self.ring
        for v in self.candidates():
            if ring.key(ring.apply(h, v)) != ring.key(v):
                return v
        raise NotFinite("no candidate base point is moved by a nontrivial element")

    def add_strong(self, h, hinv, first: int, last: int):
        """Add ``h`` to the generators of levels first..last (creating a level
        if ``last`` is one past the end) and rebuild their orbits."""
        if last == len(self.levels):
            self.levels.append(_Level(self._new_point(h)))
        for l in range(first, last + 1):
            self.levels[l].gens.append((h, hinv))
            self.rebuild_orbit(self.levels[l])

    def _inverse(self, h):
        ring = self.ring
        prev, cur = ring.one, h
        # finite order: h^-1 = h^(k-1); bounded by the orbit cap product
        for _ in range(10**7):
            if ring.is_one(cur):
                return prev
            prev, cur = cur, ring.mul(cur, h)
        raise NotFinite("element of unbounded order")

    def initialize(self):
        ring = self.ring
        nontrivial = [(g, gi) for g, gi in self.gens if not ring.is_one(g)]
        if not nontrivial:
            return
        self.levels.append(_Level(self._new_point(nontrivial[0][0])))
        for g, gi in nontrivial:
            h, j = self.sift(g)
            if j == len(self.levels) and ring.is_one(h):
                continue
            self.levels[0].gens.append((g, gi))
            self.rebuild_orbit(self.levels[0])

    def random_phase(self, quiet: int):
        """Sift product-replacement random elements until ``quiet`` in a row
        sift to the identity."""
        ring = self.ring
        if not self.levels:
            return
        pool = [g for g, _ in self.gens] * max(1, 10 // len(self.gens) + 1)
        pool = pool[:max(10, len(self.gens))]
        acc = ring.one
        for _ in range(50):
            acc = self._pr_step(pool, acc)
        ok = 0
        while ok < quiet:
            self._check_cancel()
            acc = self._pr_step(pool, acc)
            h, j = self.sift(acc)
            if j == len(self.levels) and ring.is_one(h):
                ok += 1
                continue
            ok = 0
            self.add_strong(h, self._inverse(h), 1 if j > 0 else 0, j)

    def _pr_step(self, pool, acc):
        ring = self.ring
        i, j = self.rng.sample(range(len(pool)), 2) if len(pool) > 1 else (0, 0)
        if self.rng.random() < 0.5:
            pool[i] = ring.mul(pool[i], pool[j])
        else:
            pool[i] = ring.mul(pool[j], pool[i])
        return ring.mul(acc, pool[i])

    def _check_cancel(self):
        if self.cancel is not None and self.cancel.is_set():
            raise Cancelled("Schreier-Sims cancelled")

    def schreier_sims(self):
        """Deterministic completion: every Schreier generator of every level
        sifts to the identity through the deeper levels."""
        ring = self.ring
        i = len(self.levels) - 1
        while i >= 0:
            lvl = self.levels[i]
            restart = False
            for pk, (p, u, ui) in list(lvl.orbit.items()):
                for g, gi in lvl.gens:
                    q = ring.apply(g, p)
                    _, uq, uqi = lvl.orbit[ring.key(q)]
                    sg = ring.mul(uqi, ring.mul(g, u))
                    if ring.is_one(sg):
                        continue
                    h, j = self.sift(sg, i + 1)
                    if j == len(self.levels) and ring.is_one(h):
                        continue
                    self._check_cancel()
                    self.add_strong(h, self._inverse(h), i + 1, j)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1


def _candidates_factory(ring: _Ring, mode: int, rng: random.Random):
    def standard():
        for i in range(ring.n):
            yield ring.basis_vector(i)

    def short_random():
        for _ in range(64):
            yield ring.vector([rng.randint(-2, 2) for _ in range(ring.n)])
        yield from standard()

    return standard if mode == 0 else short_random


def order_bsgs(
    g: MatrixGroup,
    seed: int = 0,
    verify: bool = True,
    orbit_cap: int = 10**5,
    quiet_sifts: int = 40,
    base_attempts: int = 4,
    progress=None,
    cancel=None,
) -> tuple[int, BSGSChain]:
    """Group order via randomized Schreier-Sims on the column-vector action.

    With ``verify`` the random phase is followed by the deterministic
    Schreier-generator check, so the order is certified.  Base points are the
    standard basis vectors first; if an orbit exceeds ``orbit_cap`` the
    construction is retried with random short integer vectors.
    """

    def go(ring, gens, ginv):
        last_err = None
        for attempt in range(base_attempts):
            rng = random.Random(seed + 7919 * attempt)
            chain = _Chain(ring, gens, ginv, orbit_cap, rng, _candidates_factory(ring, attempt, rng), cancel, progress)
            try:
                chain.initialize()
                chain.random_phase(quiet_sifts)
                if verify:
                    chain.schreier_sims()
            except OrbitCapExceeded as exc:
                last_err = exc
                continue
            sizes = tuple(len(l.orbit) for l in chain.levels)
            strong = {}
            for l in chain.levels:
                for h, _ in l.gens:
                    strong.setdefault(ring.key(h), h)
            bc = BSGSChain(
                base=tuple(ring.decode(l.point).col(0) for l in chain.levels),
                orbit_sizes=sizes,
                strong_generators=tuple(ring.decode(h) for h in strong.values()),
                order=math.prod(sizes),
                verified=verify,
                ring=ring,
                levels=tuple(chain.levels),
            )
            return bc.order, bc
        raise NotFinite(f"orbit cap exceeded for every base choice ({last_err})")

    return _run(g.generators, go)


def contains(chain: BSGSChain, m: Matrix) -> bool:
    """Membership by sifting through the stabilizer chain."""
    ring = chain.ring
    if m.shape != (ring.n, ring.n):
        from .linalg import DimensionMismatch

        raise DimensionMismatch(f"expected {ring.n}x{ring.n}, got {m.shape}")
    try:
        x = ring.encode(m)
    except (_Rescale, _Overflow, ValueError):
        return False
    for lvl in chain.levels:
        img = ring.apply(x, lvl.point)
        hit = lvl.orbit.get(ring.key(img))
        if hit is None:
            return False
        x = ring.mul(hit[2], x)
    return ring.is_one(x)


# -- derived subgroup and invariants --------------------------------------------------


def _subgroup_closure(c: GroupClosure, gen_idx: list[int]) -> set[int]:
    """Indices of the subgroup of ``c`` generated by the given element indices."""
    if not gen_idx:
        return {c.index[c.ring.one_key]}
    elems = {c.index[c.ring.one_key]}
    frontier = list(elems)
    while frontier:
        nxt = []
        for e in frontier:
            for s in gen_idx:
                p = c._mul(e, s)
                if p not in elems:
                    elems.add(p)
                    nxt.append(p)
        frontier = nxt
    return elems


def _gen_indices(c: GroupClosure) -> list[int]:
    return [c.index[c.ring.key(c.ring.encode(g))] for g in c.generators]


def derived_subgroup(c: GroupClosure) -> GroupClosure:
    """Commutator subgroup ``[G, G]``: the normal closure of the commutators
    ``g h g^-1 h^-1`` of generator pairs (which equals the group generated by
    all commutators)."""
    gens = _gen_indices(c)
    ginv = {g: c._inv(g) for g in gens}
    sub_gens = []
    for a in gens:
        for b in gens:
            k = c._mul(c._mul(a, b), c._mul(ginv[a], ginv[b]))
            sub_gens.append(k)
    sub = _subgroup_closure(c, sub_gens)
    changed = True
    while changed:
        changed = False
        for x in list(sub_gens):
            for g in gens:
                y = c._mul(c._mul(g, x), ginv[g])
                if y not in sub:
                    sub_gens.append(y)
                    sub = _subgroup_closure(c, sub_gens)
                    changed = True
    order = sorted(sub)
    reps = [c.reps[i] for i in order]
    nontrivial = [c.reps[i] for i in dict.fromkeys(sub_gens) if not c.ring.is_one(c.reps[i])]
    generators = tuple(c.ring.decode(x) for x in nontrivial) or (identity(c.ring.n),)
    return _closure(c.ring, reps, generators)


def element_order(c: GroupClosure, i: int) -> int:
    ring = c.ring
    x = c.reps[i]
    cur, k = x, 1
    while not ring.is_one(cur):
        cur = ring.mul(cur, x)
        k += 1
    return k


def _abelian_invariants(order_counts: dict[int, int], n: int) -> tuple[int, ...]:
    """Invariant factors of an abelian group of order ``n`` from the number of
    elements of each order."""
    from sympy import factorint

    primary: list[int] = []
    for p, e in factorint(n).items():
        # n_k = #{x : x^(p^k) = 1} = p^(sum_j min(k, e_j))
        counts = []
        for k in range(e + 1):
            pk = p**k
            counts.append(sum(v for o, v in order_counts.items() if pk % o == 0 and _p_part(o, p) == o))
        # number of cyclic factors of order >= p^k is log_p(n_k / n_{k-1})
        ge = [round(math.log(counts[k] / counts[k - 1], p)) for k in range(1, e + 1)]
        for k in range(1, e + 1):
            exact = ge[k - 1] - (ge[k] if k < e else 0)
            primary += [p**k] * exact
    # combine primary parts into invariant factors d1 | d2 | ...
    by_p: dict[int, list[int]] = {}
    for q in primary:
        p = min(factorint(q))
        by_p.setdefault(p, []).append(q)
    width = max((len(v) for v in by_p.values()), default=0)
    factors = [1] * width
    for p, qs in by_p.items():
        qs = sorted(qs, reverse=True)
        for i, q in enumerate(qs):
            factors[width - 1 - i] *= q
    return tuple(f for f in factors if f > 1)


def _p_part(o: int, p: int) -> int:
    out = 1
    while o % p == 0:
        o //= p
        out *= p
    return out if o == 1 else -1


@dataclass(frozen=True)
class GroupStructure:
    order: int
    derived_order: int
    abelianization: tuple
    exponent: int
    name: Optional[str]

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "derived_order": self.derived_order,
            "abelianization": list(self.abelianization),
            "exponent": self.exponent,
            "name": self.name,
        }


def identify_small(c: GroupClosure) -> GroupStructure:
    """Order, derived order, abelianization invariants and exponent, with a
    name only where these invariants determine the group."""
    if c.order > 10**4:
        raise ValueError("identify_small is limited to groups of order <= 10^4")
    D = derived_subgroup(c)
    dset = {c.index[c.ring.key(x)] for x in D.reps}
    # coset of G' containing each element, then element orders in G/G'
    coset_of: dict[int, int] = {}
    cosets: list[list[int]] = []
    for i in range(c.order):
        if i in coset_of:
            continue
        cid = len(cosets)
        members = sorted({c._mul(i, j) for j in dset})
        for m in members:
            coset_of[m] = cid
        cosets.append(members)
    q = len(cosets)
    ident = coset_of[c.index[c.ring.one_key]]
    counts: dict[int, int] = {}
    for cid, members in enumerate(cosets):
        x = members[0]
        cur, k = x, 1
        while coset_of[cur] != ident:
            cur = c._mul(cur, x)
            k += 1
        counts[k] = counts.get(k, 0) + 1
    abel = _abelian_invariants(counts, q) if q > 1 else ()
    exponent = math.lcm(*(element_order(c, i) for i in range(c.order)))
    name = None
    if D.order == 1:
        name = "C1" if c.order == 1 else " x ".join(f"C{f}" for f in abel)
    elif c.order == 12 and D.order == 4 and abel == (3,):
        name = "A4"
    elif c.order == 6 and D.order == 3:
        name = "S3"
    return GroupStructure(c.order, D.order, abel, exponent, name)


def random_words(g: MatrixGroup, count: int, length: int = 20, seed: int = 0) -> list[Matrix]:
    """Products of ``length`` random generators (or inverses)."""
    rng = random.Random(seed)

    def go(ring, gens, ginv):
        letters = gens + ginv
        out = []
        for _ in range(count):
            x = ring.one
            for _ in range(length):
                x = ring.mul(x, rng.choice(letters))
            out.append(ring.decode(x))
        return out

    return _run(g.generators, go)


# -- files --------------------------------------------------------------------------


def load_generators(obj) -> MatrixGroup:
    """Generator-set file content: a JSON array of matrices."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, list) or not obj:
        raise ValueError("generator file must be a nonempty JSON array of matrices")
    return MatrixGroup(matrix_from_json(m, f"generators[{i}]") for i, m in enumerate(obj))


def dump_generators(g: MatrixGroup) -> str:
    return json.dumps([matrix_to_json(m) for m in g.generators])
