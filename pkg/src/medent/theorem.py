"""Machine checks of the factorization theorem for exchange-symmetric systems.

For a Hamiltonian of the form H_AB + H_BC + H_B that is invariant under
swapping the outer subsystems, any non-degenerate eigenstate whose middle
reduction is pure must be a full product across all three factors.  This
module hunts for counterexamples with randomly generated Hamiltonians of
exactly that shape, and verifies the corollaries on ground-state
entanglement.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .entanglement import concurrence, ground_concurrence_from_decomposition
from .linalg import (
    DensityMatrix,
    DimensionError,
    HermitianOperator,
    eigh,
    frobenius_norm,
    kron_all,
    purity,
    reduced_density,
    schmidt,
    swap_operator,
)
from .tripartite import PAULI

SYMMETRY_RTOL = 1e-10
PURITY_PURE_ATOL = 1e-10   # counterexample predicate: rho_B purity >= 1 - this
PURITY_EXTRACT_ATOL = 1e-8  # factorization verdict threshold
SCHMIDT_RANK_TOL = 1e-7
FAMILY_ENERGY_RTOL = 1e-9


def is_exchange_symmetric(h: HermitianOperator, dims, pair: tuple[int, int] = (0, 2)) -> bool:
    """True iff conjugating by the swap of the two named subsystems fixes h."""
    dims = tuple(int(d) for d in dims)
    i, j = pair
    if dims[i] != dims[j]:
        raise DimensionError(f"swap partners must have equal dims, got {dims[i]}, {dims[j]}")
    if int(np.prod(dims)) != h.dim:
        raise DimensionError(f"prod({dims}) != operator dim {h.dim}")
    s = swap_operator(dims, i, j)
    defect = frobenius_norm(s @ h.matrix @ s - h.matrix)
    return bool(defect <= SYMMETRY_RTOL * max(1.0, frobenius_norm(h.matrix)))


@dataclass(frozen=True)
class EigenstateAnalysis:
    """Per-eigenstate factorization diagnostics.

    ``schmidt_rank_ac`` is only defined when the middle reduction is pure
    (the outer pair is then in a definite pure state); otherwise None.
    ``ac_concurrence`` requires both outer subsystems to be qubits.
    """

    index: int
    energy: float
    is_degenerate: bool
    purity_b: float
    purity_ac: float
    schmidt_rank_ac: int | None
    ac_concurrence: float | None
    fully_factorized: bool


def _extract_pure_ac(psi: np.ndarray, dims) -> np.ndarray:
    """Outer-pair state vector of an eigenstate whose middle reduction is pure."""
    rho_ac = reduced_density(psi, dims, (0, 2))
    w, v = np.linalg.eigh(rho_ac.matrix)
    omega = v[:, -1]
    return omega / np.linalg.norm(omega)


def analyze_eigenstates(h: HermitianOperator, dims) -> tuple[EigenstateAnalysis, ...]:
    """Factorization diagnostics for every eigenstate of ``h``.

    Exchange symmetry is the theorem's premise: if it fails, the analysis
    still runs (it is purely descriptive) but a warning is emitted and
    theorem-based conclusions should not be drawn.
    """
    dims = tuple(int(d) for d in dims)
    d_a, d_b, d_c = dims
    if not is_exchange_symmetric(h, dims):
        warnings.warn(
            "operator is not exchange-symmetric; factorization-theorem checks "
            "do not apply to this spectrum",
            stacklevel=2,
        )

    dec = eigh(h)
    out = []
    for i in range(dec.dim):
        psi = dec.eigenvectors[:, i]
        p_b = purity(reduced_density(psi, dims, (1,)))
        rho_ac = reduced_density(psi, dims, (0, 2))
        p_ac = purity(rho_ac)
        conc = concurrence(rho_ac).value if d_a == 2 and d_c == 2 else None

        rank = None
        if p_b >= 1.0 - PURITY_EXTRACT_ATOL:
            omega = _extract_pure_ac(psi, dims)
            rank = schmidt(omega, (d_a, d_c)).rank(SCHMIDT_RANK_TOL)

        out.append(
            EigenstateAnalysis(
                index=i,
                energy=float(dec.eigenvalues[i]),
                is_degenerate=dec.is_degenerate(i),
                purity_b=p_b,
                purity_ac=p_ac,
                schmidt_rank_ac=rank,
                ac_concurrence=conc,
                fully_factorized=(rank == 1),
            )
        )
    return tuple(out)


def hermitian_basis(d: int) -> list[np.ndarray]:
    """A real basis of the d x d Hermitian matrices (dimension d^2)."""
    basis = []
    for i in range(d):
        m = np.zeros((d, d), dtype=np.complex128)
        m[i, i] = 1.0
        basis.append(m)
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d), dtype=np.complex128)
            m[i, j] = m[j, i] = 1.0
            basis.append(m)
            m = np.zeros((d, d), dtype=np.complex128)
            m[i, j] = 1j
            m[j, i] = -1j
            basis.append(m)
    return basis


def random_symmetric_hamiltonian(
    d_b: int, rng: np.random.Generator, *, break_symmetry: bool = False
) -> HermitianOperator:
    """Random mediated-coupling Hamiltonian on qubit x (d_b) x qubit.

    The left coupling is drawn with standard-normal coefficients over the
    Pauli x Hermitian-basis products, the right coupling is its exact mirror
    under the outer swap, and the middle local term is drawn independently.
    With ``break_symmetry`` the right coupling is drawn independently instead
    of mirrored, leaving the exchange symmetry violated almost surely.
    """
    dims = (2, d_b, 2)
    basis_b = hermitian_basis(d_b)
    eye_b = np.eye(d_b, dtype=np.complex128)
    eye_c = np.eye(2, dtype=np.complex128)

    def random_coupling_left() -> np.ndarray:
        m = np.zeros((4 * d_b, 4 * d_b), dtype=np.complex128)
        for sig in PAULI:
            for g in basis_b:
                m += rng.standard_normal() * kron_all(sig, g, eye_c)
        return m

    h_ab = random_coupling_left()
    if break_symmetry:
        h_bc = np.zeros_like(h_ab)
        for g in basis_b:
            for sig in PAULI:
                h_bc += rng.standard_normal() * kron_all(eye_c, g, sig)
    else:
        s = swap_operator(dims, 0, 2)
        h_bc = s @ h_ab @ s

    h_b = np.zeros((d_b, d_b), dtype=np.complex128)
    for g in basis_b:
        h_b += rng.standard_normal() * g
    return HermitianOperator(h_ab + h_bc + kron_all(eye_c, h_b, eye_c))


@dataclass(frozen=True)
class FamilyCheck:
    """Energy-equality verification across one entangled product family.

    Whenever an eigenstate sum_j c_j |j>_A |beta>_B |j>_C with two or more
    terms shows up, every other coefficient choice in the family must have
    the same energy; ``spread`` is the largest Rayleigh-quotient deviation
    observed over sampled coefficient vectors.
    """

    eigenstate_index: int
    rank: int
    spread: float
    passed: bool


def degenerate_family_check(
    h: HermitianOperator, psi: np.ndarray, dims, rng: np.random.Generator, samples: int = 4
) -> FamilyCheck | None:
    """Run the family energy check if ``psi`` qualifies (pure middle, rank >= 2)."""
    dims = tuple(int(d) for d in dims)
    d_a, d_b, d_c = dims
    if purity(reduced_density(psi, dims, (1,))) < 1.0 - PURITY_EXTRACT_ATOL:
        return None
    omega = _extract_pure_ac(psi, dims)
    sd = schmidt(omega, (d_a, d_c))
    rank = sd.rank(SCHMIDT_RANK_TOL)
    if rank < 2:
        return None

    rho_b = reduced_density(psi, dims, (1,))
    wb, vb = np.linalg.eigh(rho_b.matrix)
    beta = vb[:, -1]

    energies = []
    coeff_sets = [np.eye(rank)[k] for k in range(rank)]
    coeff_sets += [
        rng.standard_normal(rank) + 1j * rng.standard_normal(rank) for _ in range(samples)
    ]
    for coeffs in coeff_sets:
        state = np.zeros(h.dim, dtype=np.complex128)
        for j in range(rank):
            state += coeffs[j] * kron_all(
                sd.basis_left[:, j].reshape(-1, 1),
                beta.reshape(-1, 1),
                sd.basis_right[:, j].reshape(-1, 1),
            ).reshape(-1)
        state /= np.linalg.norm(state)
        energies.append(float(np.real(np.vdot(state, h.matrix @ state))))

    spread = max(energies) - min(energies)
    scale = max(1.0, frobenius_norm(h.matrix))
    return FamilyCheck(
        eigenstate_index=-1,
        rank=rank,
        spread=spread,
        passed=bool(spread <= FAMILY_ENERGY_RTOL * scale),
    )


@dataclass(frozen=True)
class Counterexample:
    trial: int
    eigenstate_index: int
    energy: float
    purity_b: float
    schmidt_rank_ac: int


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    symmetric: bool
    counterexamples: int
    family_checks: int
    family_ok: bool


@dataclass(frozen=True)
class TheoremFuzzReport:
    trials: int
    d_b: int
    seed: int
    counterexamples: tuple[Counterexample, ...]
    family_checks: tuple[FamilyCheck, ...]
    trial_records: tuple[TrialRecord, ...]
    skipped_asymmetric: int

    @property
    def passed(self) -> bool:
        return not self.counterexamples and all(f.passed for f in self.family_checks)


def theorem_fuzz(
    trials: int, d_b: int, seed: int, *, break_symmetry: bool = False
) -> TheoremFuzzReport:
    """Hunt for theorem violations over random exchange-symmetric Hamiltonians.

    A violation is a non-degenerate eigenstate with pure middle reduction and
    outer-pair Schmidt rank >= 2.  Trials use independent, seed-derived random
    streams, so the report is reproducible and order-independent.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    dims = (2, d_b, 2)
    counterexamples: list[Counterexample] = []
    family_checks: list[FamilyCheck] = []
    records: list[TrialRecord] = []
    skipped = 0

    for t in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(t,)))
        h = random_symmetric_hamiltonian(d_b, rng, break_symmetry=break_symmetry)
        symmetric = is_exchange_symmetric(h, dims)
        if not symmetric:
            skipped += 1
            records.append(TrialRecord(t, False, 0, 0, True))
            continue

        n_ce = 0
        n_fam = 0
        fam_ok = True
        dec = eigh(h)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            analyses = analyze_eigenstates(h, dims)
        for a in analyses:
            if (
                not a.is_degenerate
                and a.purity_b >= 1.0 - PURITY_PURE_ATOL
                and a.schmidt_rank_ac is not None
                and a.schmidt_rank_ac >= 2
            ):
                n_ce += 1
                counterexamples.append(
                    Counterexample(t, a.index, a.energy, a.purity_b, a.schmidt_rank_ac)
                )
            if a.schmidt_rank_ac is not None and a.schmidt_rank_ac >= 2:
                check = degenerate_family_check(h, dec.eigenvectors[:, a.index], dims, rng)
                if check is not None:
                    check = FamilyCheck(a.index, check.rank, check.spread, check.passed)
                    family_checks.append(check)
                    n_fam += 1
                    fam_ok = fam_ok and check.passed
        records.append(TrialRecord(t, True, n_ce, n_fam, fam_ok))

    return TheoremFuzzReport(
        trials=trials,
        d_b=d_b,
        seed=seed,
        counterexamples=tuple(counterexamples),
        family_checks=tuple(family_checks),
        trial_records=tuple(records),
        skipped_asymmetric=skipped,
    )


@dataclass(frozen=True)
class CorollaryReport:
    """Ground-level consequences: entangled only if mixed, maximal only if degenerate."""

    ground_degenerate: bool
    ground_concurrence: float
    ground_purity_ac: float
    mixed_if_entangled_ok: bool
    maximal_implies_degenerate_ok: bool

    @property
    def passed(self) -> bool:
        return self.mixed_if_entangled_ok and self.maximal_implies_degenerate_ok


def corollary_check(
    h: HermitianOperator,
    dims,
    *,
    concurrence_floor: float = 0.01,
    purity_margin: float = 1e-6,
) -> CorollaryReport:
    """Check the no-pure-entanglement corollaries on the ground level of ``h``."""
    dims = tuple(int(d) for d in dims)
    if dims[0] != 2 or dims[2] != 2:
        raise DimensionError(f"outer subsystems must be qubits, dims={dims}")
    if not is_exchange_symmetric(h, dims):
        raise ValueError("corollary_check requires an exchange-symmetric operator")

    dec = eigh(h)
    group = dec.ground_group
    conc = ground_concurrence_from_decomposition(dec, dims, (0, 2))

    if len(group) == 1:
        rho_ac = reduced_density(dec.eigenvectors[:, 0], dims, (0, 2))
        p_ac = purity(rho_ac)
        mixed_ok = conc.value <= concurrence_floor or p_ac < 1.0 - purity_margin
        maximal_ok = conc.value <= 1.0 - purity_margin
    else:
        mixed = np.zeros((4, 4), dtype=np.complex128)
        for k in group:
            mixed += reduced_density(dec.eigenvectors[:, k], dims, (0, 2)).matrix
        p_ac = purity(DensityMatrix(mixed / len(group)))
        mixed_ok = True
        maximal_ok = True

    return CorollaryReport(
        ground_degenerate=len(group) > 1,
        ground_concurrence=conc.value,
        ground_purity_ac=p_ac,
        mixed_if_entangled_ok=mixed_ok,
        maximal_implies_degenerate_ok=maximal_ok,
    )
