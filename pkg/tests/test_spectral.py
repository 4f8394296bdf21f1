import numpy as np
import pytest

from tubalforms.core import DimensionError, ifft_tubal
from tubalforms.einstein import phi, phi_inv, t_einstein, t_identity_k, t_power_integer
from tubalforms.generators import (
    hierarchy_example,
    noncommuting_hpd,
    random_commutant,
    random_lambdas,
    random_t_hermitian,
)
from tubalforms.matricization import hvec
from tubalforms.spectral import (
    NotHPDError,
    NotJointMTUError,
    SpectralData,
    algorithm3_positivity,
    check_joint_mtu,
    joint_eigendecompose,
    spectral_form_eval,
    spectral_power,
    spectral_reconstruct,
    t_matrix_tensor_eigenvalues,
)
from tubalforms.tforms import eval_t_hermitian_form, t_hpd_sample_test

from conftest import crandn, rel


def sorted_rows(E):
    return np.sort(E, axis=-1)


def test_check_joint_mtu_examples(rng):
    assert check_joint_mtu(hierarchy_example(-0.25)) == (True, None)
    D = ifft_tubal(np.stack([np.diag(rng.standard_normal(3)) for _ in range(4)], axis=-1))
    assert check_joint_mtu(D) == (True, None)
    X = np.array([[0, 1], [1, 0]])
    Z = np.array([[1, 0], [0, -1]])
    ok, pair = check_joint_mtu(phi_inv(np.stack([X, Z]).astype(complex), 2, 1))
    assert not ok and pair == (0, 1)
    with pytest.raises(ValueError, match="slice 1"):
        check_joint_mtu(phi_inv(np.stack([X, X + 1j * Z]).astype(complex), 2, 1))


def test_independent_hermitian_family_fails(rng):
    for _ in range(5):
        A = random_t_hermitian(2, 2, 3, rng)
        ok, (l, m) = check_joint_mtu(A)
        Ms = phi(A)
        assert not ok
        assert np.linalg.norm(Ms[l] @ Ms[m] - Ms[m] @ Ms[l]) > 1e-3


def test_example_eigenvalues_and_decomposition():
    for c in [-0.25, 0.0, 0.25, 0.4]:
        A = hierarchy_example(c)
        E = t_matrix_tensor_eigenvalues(A)
        np.testing.assert_allclose(E, [sorted([1, 1, 2 * c, 0], reverse=True)] * 2, atol=1e-12)
        S = joint_eigendecompose(A)
        np.testing.assert_allclose(sorted_rows(S.lambdas.T), sorted_rows(E), atol=1e-12)
        assert rel(spectral_reconstruct(S), A) <= 1e-10


def test_identity_decomposition():
    I = t_identity_k(2, 3, 2)
    S = joint_eigendecompose(I)
    np.testing.assert_allclose(S.lambdas, 1, atol=1e-14)
    np.testing.assert_allclose(spectral_reconstruct(S), I, atol=1e-14)
    np.testing.assert_allclose(t_matrix_tensor_eigenvalues(I), 1, atol=1e-14)


@pytest.mark.parametrize("n,k,p", [(2, 2, 4), (3, 1, 5), (2, 3, 3), (3, 2, 2)])
def test_recovers_construction(rng, n, k, p):
    A, Q, lam = random_commutant(n, k, p, rng)
    S = joint_eigendecompose(A)
    np.testing.assert_allclose(sorted_rows(S.lambdas.T), sorted_rows(lam.T), atol=1e-9)
    np.testing.assert_allclose(S.eigvecs.conj().T @ S.eigvecs, np.eye(n ** k), atol=1e-10)
    for i, U in enumerate(S.factors):
        np.testing.assert_allclose(hvec(U), np.conj(S.eigvecs[:, i]))
    np.testing.assert_allclose(S.spatial_lambdas, ifft_tubal(S.lambdas))
    assert rel(spectral_reconstruct(S, n, k, p), A) <= 1e-9
    np.testing.assert_allclose(sorted_rows(t_matrix_tensor_eigenvalues(A)), sorted_rows(S.lambdas.T), atol=1e-9)


def test_degenerate_first_slice_generic_vs_first_slice(rng):
    # slice 0 is a multiple of the identity; the family is still jointly diagonalizable
    lam = random_lambdas(4, 3, rng)
    lam[:, 0] = 1.0
    A, _, _ = random_commutant(2, 2, 3, rng, lambdas=lam)
    S = joint_eigendecompose(A)
    assert rel(spectral_reconstruct(S), A) <= 1e-9
    assert algorithm3_positivity(A, require_hps=False)
    v = algorithm3_positivity(A, mode="first-slice", require_hps=False)
    assert not v and v.reason == "not-commuting"


def test_joint_eigendecompose_rejects_noncommuting():
    with pytest.raises(NotJointMTUError) as exc:
        joint_eigendecompose(noncommuting_hpd())
    assert exc.value.pair == (0, 1)


def test_reconstruct_dimension_checks(rng):
    A, _, _ = random_commutant(2, 1, 3, rng)
    S = joint_eigendecompose(A)
    with pytest.raises(DimensionError):
        spectral_reconstruct(S, p=4)


def test_single_term_reconstruction(rng):
    A, Q, _ = random_commutant(2, 2, 3, rng)
    lam = np.zeros((4, 3))
    lam[1] = [1.0, 2.0, 3.0]
    S = SpectralData([np.conj(Q[:, i]).reshape((2, 2), order="F") for i in range(4)], Q, lam)
    B = spectral_reconstruct(S)
    for M in phi(B):
        assert np.linalg.matrix_rank(M, tol=1e-10) == 1


def test_algorithm3_examples():
    v = algorithm3_positivity(hierarchy_example(-0.25))
    assert not v and v.reason == "cholesky-failed"
    v = algorithm3_positivity(hierarchy_example(0.25))
    assert not v and v.reason == "cholesky-failed"
    v = algorithm3_positivity(noncommuting_hpd())
    assert not v and v.reason == "not-commuting"
    v = algorithm3_positivity(np.ones((2, 2, 2, 2, 2)) * 1j)
    assert not v and v.reason == "not-hps"


def test_algorithm3_k2_hps_always_singular(rng):
    # partial symmetry forces a null space, so strict positivity is impossible at k >= 2
    A, _, _ = random_commutant(2, 2, 3, rng, hps=True)
    v = algorithm3_positivity(A)
    assert not v and v.reason == "cholesky-failed"


def test_hierarchy_on_k1_instances(rng):
    for _ in range(5):
        A, _, _ = random_commutant(3, 1, 4, rng, hps=True)
        assert algorithm3_positivity(A)
        assert not t_hpd_sample_test(A, samples=2000, seed=0).disproved


def test_spectral_form_eval(rng):
    w = np.array([1.0, 1.0]) / np.sqrt(2)
    S = joint_eigendecompose(hierarchy_example(-0.25))
    np.testing.assert_allclose(spectral_form_eval(S, [w, w]).result.freq_values, 0.25, atol=1e-12)
    for _ in range(5):
        A, _, _ = random_commutant(2, 2, 4, rng, hps=True)
        Z = crandn(rng, 2, 4)
        ev = spectral_form_eval(joint_eigendecompose(A), Z)
        direct = eval_t_hermitian_form(A, Z).freq_values
        assert np.max(np.abs(ev.result.freq_values - direct)) <= 1e-10 * max(1, np.abs(direct).max())
        np.testing.assert_allclose(ev.result.freq_values, np.sum(joint_eigendecompose(A).lambdas * ev.u_weights, 0))
    with pytest.raises(DimensionError):
        spectral_form_eval(S, crandn(rng, 3, 2))


def test_spectral_form_eval_single_term(rng):
    A, Q, _ = random_commutant(2, 2, 3, rng)
    lam = np.zeros((4, 3))
    lam[0] = 1.0
    S = SpectralData([np.conj(Q[:, i]).reshape((2, 2), order="F") for i in range(4)], Q, lam)
    Z = crandn(rng, 2, 3)
    ev = spectral_form_eval(S, Z)
    np.testing.assert_allclose(ev.result.freq_values, ev.u_weights[0])


def test_spectral_power(rng):
    A, _, _ = random_commutant(2, 2, 3, rng)
    assert rel(spectral_power(A, 1), A) <= 1e-10
    B = spectral_power(A, 2)
    assert rel(t_einstein(B, B), A) <= 1e-9
    B3 = spectral_power(A, 3)
    assert rel(t_power_integer(B3, 3), A) <= 1e-9
    C = spectral_power(A, -1)
    assert rel(t_einstein(C, A), t_identity_k(2, 3, 2)) <= 1e-9
    I = t_identity_k(2, 3, 2)
    for alpha in (0.5, 2, -3):
        np.testing.assert_allclose(spectral_power(I, alpha), I, atol=1e-13)


def test_spectral_power_errors(rng):
    lam = random_lambdas(4, 3, rng, kind="indefinite")
    A, _, _ = random_commutant(2, 2, 3, rng, lambdas=lam)
    with pytest.raises(NotHPDError):
        spectral_power(A, 2)
    with pytest.raises(ValueError):
        spectral_power(A, 0)
    with pytest.raises(NotJointMTUError):
        spectral_power(noncommuting_hpd(), 2)
