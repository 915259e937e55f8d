import numpy as np
import pytest

from medent.linalg import HermitianOperator, eigh, schmidt, swap_operator
from medent.tripartite import (
    IsingParams,
    PauliCoefficients,
    analytic_ising_spectrum,
    build_ising,
    build_pauli_hamiltonian,
    ising_middle_field,
)


def coefficients_with(h_ab=None, h_bc=None, h_b=None):
    c = PauliCoefficients.zero()
    ab = np.array(c.h_ab)
    bc = np.array(c.h_bc)
    b = np.array(c.h_b)
    for (j, k), val in (h_ab or {}).items():
        ab[j, k] = val
    for (j, k), val in (h_bc or {}).items():
        bc[j, k] = val
    for j, val in (h_b or {}).items():
        b[j] = val
    return PauliCoefficients(ab, bc, b)


def general_field_hamiltonian(h_b):
    """J=1 couplings plus an arbitrary middle-site field vector."""
    return build_pauli_hamiltonian(
        coefficients_with(
            h_ab={(3, 3): 1.0}, h_bc={(3, 3): 1.0}, h_b={j: h_b[j] for j in range(3)}
        )
    )


def test_all_zero_coefficients():
    h = build_pauli_hamiltonian(PauliCoefficients.zero())
    assert np.array_equal(h.matrix, np.zeros((8, 8)))


def test_single_zz_coupling_diagonal():
    h = build_pauli_hamiltonian(coefficients_with(h_ab={(3, 3): 1.0}))
    assert np.allclose(h.matrix, np.diag([1, 1, -1, -1, -1, -1, 1, 1]))


def test_both_zz_couplings_diagonal():
    h = build_pauli_hamiltonian(
        coefficients_with(h_ab={(3, 3): 1.0}, h_bc={(3, 3): 1.0})
    )
    assert np.allclose(h.matrix, np.diag([2, 0, -2, 0, 0, -2, 0, 2]))


def test_pauli_coefficients_validation():
    with pytest.raises(Exception):
        PauliCoefficients(np.zeros((3, 3)), np.zeros((4, 4)), np.zeros(3))
    with pytest.raises(ValueError):
        PauliCoefficients(np.full((4, 4), np.nan), np.zeros((4, 4)), np.zeros(3))


def test_ising_params_rescaling_defaults():
    p = IsingParams(j_coupling=2.0, delta=0.1, lam=0.3)
    assert p.delta0 == 2.0 and p.lambda0 == 2.0
    c = p.coefficients()
    assert c.h_ab[3, 3] == 2.0
    assert c.h_ab[1, 0] == pytest.approx(0.1)  # delta * delta0 / 2
    assert c.h_b[0] == pytest.approx(0.3)      # lam * lambda0 / 2


def test_ising_params_rejects_negative_delta():
    with pytest.raises(ValueError):
        IsingParams(delta=-0.1)


def test_build_ising_bare_couplings():
    h = build_ising(IsingParams(delta=0.0, lam=0.0))
    assert np.allclose(h.matrix, np.diag([2, 0, -2, 0, 0, -2, 0, 2]))


def test_build_ising_lambda_one_spectrum():
    # closed form: +-sqrt(4.25) twice each, +-0.5 twice each
    h = build_ising(IsingParams(delta=0.0, lam=1.0))
    dec = eigh(h)
    r = np.sqrt(4.25)
    expected = np.sort([r, -r, r, -r, 0.5, -0.5, 0.5, -0.5])
    assert np.allclose(dec.eigenvalues, expected, atol=1e-12)


def test_build_ising_hermitian_and_residual():
    h = build_ising(IsingParams(delta=0.1, lam=1.0))
    dec = eigh(h)
    residual = np.abs(
        h.matrix @ dec.eigenvectors - dec.eigenvectors * dec.eigenvalues
    ).max()
    assert residual <= 1e-9 * np.linalg.norm(h.matrix)


def test_exchange_symmetry_of_ising():
    s = swap_operator((2, 2, 2), 0, 2)
    for delta, lam in [(0.0, 0.0), (0.3, 1.2), (2.0, 0.7)]:
        h = build_ising(IsingParams(delta=delta, lam=lam)).matrix
        assert np.linalg.norm(s @ h @ s - h) <= 1e-12 * max(1.0, np.linalg.norm(h))


def test_analytic_spectrum_zero_field():
    spec = analytic_ising_spectrum(np.zeros(3))
    assert np.allclose(spec.eigenvalues, [2, -2, 0, 0, 0, 0, 2, -2])


def test_analytic_spectrum_transverse_field():
    spec = analytic_ising_spectrum([0.5, 0.0, 0.0])
    r = np.sqrt(4.25)
    assert np.allclose(spec.eigenvalues, [r, -r, 0.5, -0.5, 0.5, -0.5, r, -r])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_analytic_eigenvectors_satisfy_eigenproblem(seed):
    rng = np.random.default_rng(seed)
    h_b = rng.standard_normal(3)
    spec = analytic_ising_spectrum(h_b)
    h = general_field_hamiltonian(h_b).matrix
    for i in range(8):
        vec = spec.eigenvectors[:, i]
        assert np.linalg.norm(h @ vec - spec.eigenvalues[i] * vec) <= 1e-10


def test_analytic_matches_dense_many_fields():
    rng = np.random.default_rng(101)
    for _ in range(25):
        h_b = 3.0 * rng.standard_normal(3)
        spec = analytic_ising_spectrum(h_b)
        dec = eigh(general_field_hamiltonian(h_b))
        assert np.abs(spec.sorted_eigenvalues() - dec.eigenvalues).max() <= 1e-9


def test_analytic_eigenvectors_are_products():
    spec = analytic_ising_spectrum([0.4, -0.2, 0.0])
    for i in range(8):
        vec = spec.eigenvectors[:, i]
        # rank 1 across the first-vs-rest and first-two-vs-last bipartitions
        assert schmidt(vec, (2, 4)).rank() == 1
        assert schmidt(vec, (4, 2)).rank() == 1


def test_ground_pair_transverse():
    spec = analytic_ising_spectrum([0.5, 0.0, 0.0])
    g1, g2 = spec.ground_pair()
    h = general_field_hamiltonian([0.5, 0.0, 0.0]).matrix
    e = -np.sqrt(4.25)
    for g in (g1, g2):
        assert np.linalg.norm(h @ g - e * g) <= 1e-10
    # g1 has outer bits (0,0): support only on indices with a = c = 0
    assert np.linalg.norm(g1[[1, 3, 4, 5, 6, 7]]) == pytest.approx(0.0, abs=1e-14)
    assert abs(g1[2]) > 0.9  # mostly |0>|1>_B|0> for a weak transverse field


def test_ground_pair_rejects_longitudinal_dominant():
    spec = analytic_ising_spectrum([0.0, 0.0, 3.0])
    with pytest.raises(ValueError):
        spec.ground_pair()


def test_middle_field_helper():
    assert np.allclose(ising_middle_field(IsingParams(lam=1.0)), [0.5, 0, 0])


def test_constant_offset_is_pure_shift():
    base = coefficients_with(h_ab={(3, 3): 1.0}, h_bc={(3, 3): 1.0})
    shifted = coefficients_with(
        h_ab={(3, 3): 1.0, (0, 0): 2.5}, h_bc={(3, 3): 1.0}
    )
    e0 = eigh(build_pauli_hamiltonian(base)).eigenvalues
    e1 = eigh(build_pauli_hamiltonian(shifted)).eigenvalues
    assert np.allclose(e1, e0 + 2.5, atol=1e-12)
