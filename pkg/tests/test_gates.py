from fractions import Fraction

import numpy as np
import pytest

from tripartite.gates import (
    S2_SIGNS,
    SL3_TABLE_NAMES,
    NotEigenvector,
    UnknownConstant,
    constant,
    gate_entanglement_report,
    joint_eigensign_check,
    names,
    observable_triple,
    registry,
    row_state,
)
from tripartite.linalg import Matrix, identity, kron
from tripartite.qubits import NotNormalized, b_state, pauli_matrix, reduce

GATES = ("s2", "s3", "x_a4", "y_a4", "we8.a", "we8.b")


@pytest.mark.parametrize("name", GATES)
def test_gates_are_orthogonal(name):
    g = constant(name)
    assert g.T @ g == identity(g.rows)


def test_observables_commute_and_square_to_one():
    for kind in ("two_qubit", "three_qubit"):
        obs = observable_triple(kind)
        n = obs[0].rows
        for a in obs:
            assert a @ a == identity(n)
            for b in obs:
                assert a @ b == b @ a
        # XZ . ZX = (-iY) x (iY) = YY, so the third is fixed by the first two
        if kind == "two_qubit":
            assert obs[0] @ obs[1] == obs[2]
    with pytest.raises(ValueError):
        observable_triple("four")


def test_s2_sign_pattern():
    assert joint_eigensign_check(constant("s2"), observable_triple()) == S2_SIGNS


def test_s3_rows_are_joint_eigenvectors():
    signs = joint_eigensign_check(constant("s3"), observable_triple("three_qubit"))
    assert len(signs) == 8
    # eight distinct rows of a joint eigenbasis of two commuting Z-lifted triples
    assert len(set(signs)) == 8


def test_eigencheck_reports_first_failure():
    with pytest.raises(NotEigenvector) as exc:
        joint_eigensign_check(identity(4), observable_triple())
    assert (exc.value.row, exc.value.observable) == (1, 1)
    with pytest.raises(NotNormalized):
        joint_eigensign_check(2 * identity(4), observable_triple())


def test_we8_generators_match_numpy():
    want = np.kron(pauli_matrix("X").to_numpy(), constant("s2").to_numpy())
    assert np.array_equal(constant("we8.a").to_numpy(), want)
    assert constant("we8.b") == constant("s3")


def test_x_a4_columns_are_b_type_rows_are_not():
    for name in ("x_a4", "y_a4"):
        g = constant(name)
        cols = gate_entanglement_report(g, "columns")
        assert all(r["b_type"] for r in cols)
        assert {r["profile"].tau3 for r in cols} == {Fraction(1, 4)}
        rows = gate_entanglement_report(g, "rows")
        assert not any(r["b_type"] for r in rows)
        # every row still has tau3 = 1/4 and is monogamy-exact
        assert all(r["profile"].tau3 == Fraction(1, 4) and r["profile"].residuals == (0, 0, 0) for r in rows)


def test_report_validation():
    with pytest.raises(ValueError):
        gate_entanglement_report(constant("s2"))
    with pytest.raises(ValueError):
        gate_entanglement_report(constant("s3"), axis="diagonal")


def test_row_state_reads_amplitudes():
    s = row_state(constant("s3"), 1)
    assert s.amps == tuple(constant("s3").row(1))


def test_printed_b_state_reductions():
    for k in ("ab", "ac", "bc"):
        assert reduce(b_state(), k.upper()).data == constant(f"bstate.rho_{k}")


def test_registry_and_lookup():
    reg = registry()
    assert set(names("sl3.ad.")) == {f"sl3.ad.{k}" for k in SL3_TABLE_NAMES}
    assert all(v.provenance for v in reg.values())
    reg.clear()
    assert registry()
    with pytest.raises(UnknownConstant, match="external reference"):
        constant("w7.b")
    with pytest.raises(UnknownConstant):
        constant("nope")


def test_provenance_has_no_citation_markers():
    for v in registry().values():
        assert "Eq." not in v.provenance and "sec." not in v.provenance.lower()


def test_sl3_basis_is_traceless():
    for k in SL3_TABLE_NAMES:
        assert constant(f"sl3.{k}").trace() == 0
        assert constant(f"ga4.{k}").trace() == 0
