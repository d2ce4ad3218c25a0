import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripartite.linalg import Matrix, eigen_quadratic
from tripartite.qubits import (
    DensityMatrix,
    EmptySubset,
    NotNormalized,
    PhaseOutOfRange,
    PureState,
    WrongQubitCount,
    b_state,
    basis_state,
    concurrence_mixed2,
    concurrence_pure2,
    entanglement_profile,
    generic_state,
    ghz_state,
    is_b_type,
    one_tangle,
    random_rational_state,
    reduce,
    spin_flip,
    state_from_json,
    state_to_json,
    three_tangle,
    two_tangle,
    w_state,
)
from tripartite.scalar import quad, to_float


# -- numpy oracles ------------------------------------------------------------------

def np_reduce(psi: np.ndarray, n: int, keep) -> np.ndarray:
    t = psi.reshape([2] * n)
    rest = [q for q in range(n) if q not in keep]
    t = np.transpose(t, list(keep) + rest).reshape(2 ** len(keep), -1)
    return t @ t.conj().T


def np_concurrence(rho: np.ndarray) -> float:
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    ev = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)
    r = np.sqrt(np.clip(np.sort(ev.real)[::-1], 0, None))
    return max(0.0, r[0] - r[1] - r[2] - r[3])


def np_three_tangle(psi: np.ndarray) -> float:
    # Cayley hyperdeterminant as the discriminant of x -> det(A + x B),
    # with A, B the two slices along the first qubit
    a = psi.reshape(2, 2, 2)
    dA, dB = np.linalg.det(a[0]), np.linalg.det(a[1])
    mid = np.linalg.det(a[0] + a[1]) - dA - dB
    return abs(4 * (mid * mid - 4 * dA * dB))


seeds = st.integers(0, 10**6)


# -- named states -------------------------------------------------------------------

def test_named_state_tangles():
    assert three_tangle(ghz_state()) == 1
    assert three_tangle(w_state()) == 0
    assert three_tangle(b_state()) == Fraction(1, 4)


def test_w_state_bipartite():
    p = entanglement_profile(w_state())
    assert (p.tau_ab, p.tau_ac, p.tau_bc) == (Fraction(4, 9),) * 3
    assert p.residuals == (0, 0, 0)


def test_b_state_profile():
    p = entanglement_profile(b_state())
    assert (p.tau3, p.tau_ab, p.tau_ac, p.tau_bc) == (Fraction(1, 4),) * 4
    assert (p.tau_a_bc, p.tau_b_ac, p.tau_c_ab) == (Fraction(3, 4),) * 3
    assert is_b_type(p)


def test_b_state_spectrum():
    rho = reduce(b_state(), "BC").data
    sp = eigen_quadratic(rho @ spin_flip(reduce(b_state(), "BC")).data)
    s = Fraction(1, 16)
    want = sorted([quad(3 * s, 2 * s, 2), quad(3 * s, -2 * s, 2), 0, 0], key=to_float)
    assert sorted(sp.flat(), key=to_float) == want


def test_ghz_profile_float_oracle():
    for s in (ghz_state(), w_state(), b_state()):
        assert math.isclose(to_float(three_tangle(s)), np_three_tangle(s.to_numpy()), abs_tol=1e-12)


# -- reductions ----------------------------------------------------------------------

@settings(max_examples=40)
@given(seeds, st.sampled_from([[0], [1], [2], [0, 1], [1, 0], [0, 2], [1, 2], [2, 0, 1]]))
def test_reduce_matches_numpy(seed, keep):
    s = random_rational_state(random.Random(seed))
    got = reduce(s, keep).to_numpy()
    assert np.allclose(got, np_reduce(s.to_numpy(), 3, keep))


def test_reduce_letters_and_errors():
    s = b_state()
    assert reduce(s, "AB").data == reduce(s, [0, 1]).data
    with pytest.raises(EmptySubset):
        reduce(s, [])
    with pytest.raises(ValueError):
        reduce(s, [0, 0])
    with pytest.raises(ValueError):
        reduce(s, [3])


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(Matrix([[1, 0], [0, 1]]))
    with pytest.raises(ValueError):
        DensityMatrix(Matrix([[Fraction(1, 2), 1], [0, Fraction(1, 2)]]))


# -- concurrence --------------------------------------------------------------------

def two_qubit_states():
    return st.lists(st.integers(-4, 4), min_size=4, max_size=4).filter(any)


@given(seeds)
def test_mixed_equals_pure_on_projectors(seed):
    s = random_rational_state(random.Random(seed), n=2)
    assert concurrence_mixed2(s.projector()) == concurrence_pure2(s)


@settings(max_examples=40)
@given(seeds, st.sampled_from(["AB", "AC", "BC"]))
def test_two_tangle_matches_wootters_oracle(seed, pair):
    s = random_rational_state(random.Random(seed))
    rho = reduce(s, pair)
    want = np_concurrence(rho.to_numpy()) ** 2
    # the oracle takes square roots of numerically-zero eigenvalues (~1e-17)
    assert math.isclose(to_float(two_tangle(rho)), want, abs_tol=1e-7)


def test_bell_state():
    r = quad(0, Fraction(1, 2), 2)
    bell = PureState(2, (r, 0, 0, r))
    assert concurrence_pure2(bell) == 1
    assert concurrence_mixed2(bell.projector()) == 1
    assert concurrence_pure2(basis_state("01")) == 0


def test_werner_like_mixed_state():
    # p |Bell><Bell| + (1-p) I/4 has C = max(0, (3p-1)/2)
    for p in (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)):
        bell = np.zeros((4, 4), dtype=object)
        for i in (0, 3):
            for j in (0, 3):
                bell[i, j] = Fraction(1, 2)
        rows = [[p * bell[i, j] + (1 - p) * Fraction(int(i == j), 4) for j in range(4)] for i in range(4)]
        c = concurrence_mixed2(DensityMatrix(Matrix(rows)))
        assert c == max(Fraction(0), (3 * p - 1) / 2)


# -- three-tangle and monogamy --------------------------------------------------------

@given(seeds)
def test_three_tangle_matches_oracle(seed):
    s = random_rational_state(random.Random(seed))
    assert math.isclose(to_float(three_tangle(s)), np_three_tangle(s.to_numpy()), abs_tol=1e-12)


@given(seeds, st.permutations([0, 1, 2]))
def test_three_tangle_permutation_invariant(seed, order):
    s = random_rational_state(random.Random(seed))
    assert three_tangle(s.permuted(order)) == three_tangle(s)


@given(seeds)
def test_monogamy_is_exact(seed):
    p = entanglement_profile(random_rational_state(random.Random(seed)))
    assert p.exact and p.residuals == (0, 0, 0)


@given(seeds)
def test_integer_path_agrees_with_general_path(seed):
    from tripartite.qubits import _integer_profile

    s = random_rational_state(random.Random(seed))
    fast = _integer_profile(s.amps)
    assert fast is not None
    assert fast.tau3 == three_tangle(s)
    assert (fast.tau_ab, fast.tau_ac, fast.tau_bc) == tuple(two_tangle(reduce(s, k)) for k in ("AB", "AC", "BC"))
    assert (fast.tau_a_bc, fast.tau_b_ac, fast.tau_c_ab) == tuple(one_tangle(s, q) for q in "ABC")


def test_monogamy_quadratic_field_states():
    for s in (ghz_state(), w_state()):
        assert entanglement_profile(s).residuals == (0, 0, 0)


# -- generic states -----------------------------------------------------------------

def test_generic_state_exact_and_float():
    h = Fraction(1, 2)
    s = generic_state(h, 0, h, h, h)
    assert s.exact and s.amp("000") == h and s.amp("100") == 0
    s_pi = generic_state(h, h, h, h, 0, math.pi)
    assert s_pi.exact and s_pi.amp("100") == -h
    f = generic_state(h, h, h, h, 0, 1.0)
    assert not f.exact
    p = entanglement_profile(f)
    assert not p.exact and max(abs(r) for r in p.residuals) < 1e-12
    # the three-tangle of the canonical form is 4 l0^2 l4^2
    g = generic_state(h, h, h, 0, h, 0.7)
    assert math.isclose(three_tangle(g), 4 * (1 / 4) * (1 / 4))


def test_generic_state_errors():
    h = Fraction(1, 2)
    with pytest.raises(PhaseOutOfRange):
        generic_state(h, h, h, h, 0, 4.0)
    with pytest.raises(NotNormalized):
        generic_state(h, h, h, 0, 0)
    with pytest.raises(ValueError):
        generic_state(-h, h, h, h, 0)


def test_state_validation():
    with pytest.raises(NotNormalized):
        PureState(1, (1, 1))
    with pytest.raises(WrongQubitCount):
        PureState(5, tuple([1] + [0] * 31))
    with pytest.raises(WrongQubitCount):
        three_tangle(basis_state("01"))


@given(seeds)
def test_state_json_roundtrip(seed):
    s = random_rational_state(random.Random(seed))
    assert state_from_json(state_to_json(s)) == s


def test_state_json_errors():
    obj = state_to_json(b_state())
    with pytest.raises(ValueError, match="amps"):
        state_from_json(dict(obj, amps=obj["amps"][:7]))
    with pytest.raises(ValueError, match=r"amps\[2\]"):
        state_from_json(dict(obj, amps=obj["amps"][:2] + ["?"] + obj["amps"][3:]))
