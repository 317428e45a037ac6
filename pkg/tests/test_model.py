import numpy as np
import pytest

from ddrand.linalg import operator_norm
from ddrand.model import (
    PAULI_LABELS,
    HamiltonianModel,
    PauliWord,
    build_dephasing_model,
    build_hahn_model,
    build_heisenberg,
    build_local_bath_model,
    interaction_norm_sum,
    pauli_matrix,
    pauli_mul,
    random_product_state,
    site_operator,
)


def random_word(rng, n):
    labels = tuple(PAULI_LABELS[i] for i in rng.integers(0, 4, size=n))
    phase = (1, -1, 1j, -1j)[rng.integers(0, 4)]
    return PauliWord(labels, complex(phase))


def test_pauli_mul_single_qubit_table():
    x = PauliWord.from_label("X")
    y = PauliWord.from_label("Y")
    xy = pauli_mul(x, y)
    assert xy.labels == ("Z",) and xy.phase == 1j
    xx = pauli_mul(x, x)
    assert xx.labels == ("I",) and xx.phase == 1


def test_pauli_mul_two_qubit_word():
    a = PauliWord(("X", "Z"))
    b = PauliWord(("Z", "X"))
    prod = pauli_mul(a, b)
    assert np.allclose(pauli_matrix(prod), pauli_matrix(a) @ pauli_matrix(b))


def test_pauli_mul_matches_matrix_product_random():
    # entries are all in {0, +-1, +-i}, so the product is exact in floats
    rng = np.random.default_rng(10)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        a, b = random_word(rng, n), random_word(rng, n)
        assert np.array_equal(pauli_matrix(pauli_mul(a, b)),
                              pauli_matrix(a) @ pauli_matrix(b))


def test_pauli_matrix_phase_and_identity():
    assert np.allclose(pauli_matrix(PauliWord(("I", "I"))), np.eye(4))
    assert np.allclose(pauli_matrix(PauliWord(("Z",), -1 + 0j)), np.diag([-1, 1]))


def test_pauli_word_validation():
    with pytest.raises(ValueError):
        PauliWord(("Q",))
    with pytest.raises(ValueError):
        PauliWord(("X",), 0.5 + 0.5j)
    with pytest.raises(ValueError):
        pauli_mul(PauliWord(("X",)), PauliWord(("X", "X")))


def test_word_dagger_and_identity_predicate():
    w = PauliWord(("X", "I"), 1j)
    assert w.dagger().phase == -1j
    assert not w.is_identity()
    assert PauliWord(("I", "I"), -1 + 0j).is_identity()


def test_heisenberg_two_qubit_spectrum():
    # singlet at -3, triplet at +1
    w = np.linalg.eigvalsh(build_heisenberg(2))
    assert np.allclose(sorted(w), [-3, 1, 1, 1], atol=1e-12)


def test_heisenberg_commutes_with_global_paulis():
    h = build_heisenberg(3)
    for label in ("X", "Y", "Z"):
        g = pauli_matrix(PauliWord.uniform(label, 3))
        assert np.max(np.abs(h @ g - g @ h)) < 1e-12


def test_heisenberg_four_qubit_shape_and_trace():
    h = build_heisenberg(4)
    assert h.shape == (16, 16)
    assert abs(np.trace(h)) < 1e-12
    assert np.max(np.abs(h - h.conj().T)) == 0.0


def test_heisenberg_rejects_single_qubit():
    with pytest.raises(ValueError):
        build_heisenberg(1)


def test_local_bath_model_determinism_and_structure():
    m1 = build_local_bath_model(2, 2, 0.5, seed=42)
    m2 = build_local_bath_model(2, 2, 0.5, seed=42)
    assert np.array_equal(m1.h_sb, m2.h_sb)
    assert np.array_equal(m1.h_bath, m2.h_bath)
    m3 = build_local_bath_model(2, 2, 0.5, seed=43)
    assert not np.array_equal(m1.h_sb, m3.h_sb)


def test_local_bath_model_j_prefactor():
    m0 = build_local_bath_model(2, 2, 0.0, seed=1)
    assert operator_norm(m0.h_sb) == 0.0
    m1 = build_local_bath_model(2, 2, 1.0, seed=1)
    m2 = build_local_bath_model(2, 2, 2.0, seed=1)
    assert np.allclose(2 * m1.h_sb, m2.h_sb)


def test_local_bath_model_gamma_hook(monkeypatch):
    import ddrand.model as model_mod
    monkeypatch.setattr(model_mod, "_draw_gammas",
                        lambda rng, shape: np.zeros(shape))
    m = build_local_bath_model(2, 2, 1.0, seed=0)
    assert operator_norm(m.h_sb) == 0.0
    assert operator_norm(m.h_bath) == 0.0


def test_model_beta_matches_norm():
    m = build_local_bath_model(2, 2, 0.3, seed=7)
    assert abs(m.beta - operator_norm(m.h_free)) < 1e-9
    assert m.coupling_j == 0.3


def test_model_rejects_inconsistent_beta():
    m = build_local_bath_model(2, 2, 0.3, seed=7)
    with pytest.raises(ValueError):
        HamiltonianModel(h_sys=m.h_sys, h_bath=m.h_bath, h_sb=m.h_sb,
                         n_sys=2, n_bath=2, coupling_j=0.3, beta=m.beta + 1.0)


def test_dephasing_model_structure():
    m = build_dephasing_model(0.7, seed=3)
    assert m.n_sys == 1 and m.n_bath == 2
    assert np.allclose(m.h_sys, 0.0)
    # pure dephasing: Z (x) I commutes with the full Hamiltonian
    z = np.kron(pauli_matrix(PauliWord(("Z",))), np.eye(4))
    h = m.h_total
    assert np.max(np.abs(z @ h - h @ z)) < 1e-12
    m2 = build_dephasing_model(0.7, seed=3)
    assert np.array_equal(m.h_sb, m2.h_sb)


def test_hahn_model_anticommutes_with_global_x():
    m = build_hahn_model(2, 2, 0.4, seed=5)
    x = np.kron(pauli_matrix(PauliWord.uniform("X", 2)), np.eye(4))
    # per-site Z coupling anticommutes with the global X pulse,
    # while the Heisenberg part commutes with it
    assert np.max(np.abs(x @ m.h_sb + m.h_sb @ x)) < 1e-12
    hs = np.kron(m.h_sys, np.eye(4))
    assert np.max(np.abs(x @ hs - hs @ x)) < 1e-12


def test_interaction_norm_sum_conventions():
    m = build_local_bath_model(2, 2, 0.5, seed=9)
    expected = 0.5 * 2 * sum(operator_norm(m.bath_ops[a]) for a in ("X", "Y", "Z"))
    assert abs(interaction_norm_sum(m) - expected) < 1e-12
    mh = build_hahn_model(2, 2, 0.5, seed=9)
    expected_h = 0.5 * sum(operator_norm(b) for b in mh.bath_ops.values())
    assert abs(interaction_norm_sum(mh) - expected_h) < 1e-12


def test_site_operator_embedding():
    w = site_operator("Y", 1, 3)
    assert w.labels == ("I", "Y", "I")


def test_random_product_state_properties():
    rng = np.random.default_rng(0)
    for seed in rng.integers(0, 2**31, size=30):
        rho = random_product_state(4, 4, int(seed))
        assert abs(np.trace(rho).real - 1.0) < 1e-12
        assert abs(np.trace(rho @ rho).real - 1.0) < 1e-12
        # product structure: reduced states stay pure
        red = rho.reshape(4, 4, 4, 4).trace(axis1=1, axis2=3)
        assert abs(np.trace(red @ red).real - 1.0) < 1e-12


def test_random_product_state_deterministic():
    a = random_product_state(2, 4, 11)
    b = random_product_state(2, 4, 11)
    assert np.array_equal(a, b)
