"""Dense complex linear algebra for small multipartite quantum systems.

Everything here works on plain ``numpy.complex128`` arrays wrapped in thin
dataclasses that enforce the numerical contracts (Hermiticity, trace,
positivity, orthonormality) at construction time.  Dimensions stay in the
few-hundred range, so dense LAPACK routines are used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

# Largest matrix dimension kron() is allowed to produce.
KRON_DIM_LIMIT = 4096

HERMITICITY_RTOL = 1e-12
ORTHONORMALITY_ATOL = 1e-10
RESIDUAL_RTOL = 1e-9
DEGENERACY_RTOL = 1e-9
TRACE_ATOL = 1e-10
PSD_ATOL = 1e-10
STATE_NORM_ATOL = 1e-8


class DimensionError(ValueError):
    """Shapes or subsystem dimensions do not match, or exceed the limit."""


class NumericalError(RuntimeError):
    """A numerical contract (residual, positivity, convergence) failed."""


def as_complex_matrix(entries) -> np.ndarray:
    """Validate and return a finite 2-D complex128 array."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def frobenius_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class HermitianOperator:
    """A square complex matrix verified to be Hermitian at construction."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionError(f"operator must be square, got {m.shape}")
        scale = max(frobenius_norm(m), 1.0)
        defect = np.abs(m - m.conj().T).max()
        if defect > HERMITICITY_RTOL * scale:
            raise ValueError(
                f"matrix is not Hermitian: max|M - M^dag| = {defect:.3e} "
                f"(tolerance {HERMITICITY_RTOL * scale:.3e})"
            )
        object.__setattr__(self, "matrix", _readonly((m + m.conj().T) / 2))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite (within tolerance)."""

    matrix: np.ndarray

    def __post_init__(self):
        op = HermitianOperator(self.matrix)
        m = op.matrix
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace = {tr!r}, expected 1 within {TRACE_ATOL}")
        evals = np.linalg.eigvalsh(m)
        if evals[0] < -PSD_ATOL:
            raise ValueError(f"negative eigenvalue {evals[0]:.3e} below -{PSD_ATOL}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class EigenDecomposition:
    """Sorted eigenvalues, phase-fixed orthonormal eigenvectors, degeneracy groups.

    ``degeneracy_groups`` partitions the index range into maximal runs whose
    eigenvalue spread stays within ``DEGENERACY_RTOL * max(1, spectral_range)``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column i pairs with eigenvalues[i]
    degeneracy_groups: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def ground_group(self) -> tuple[int, ...]:
        return self.degeneracy_groups[0]

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    def gap(self) -> float:
        """Energy difference between the ground level and the next level up."""
        k = len(self.ground_group)
        if k >= self.dim:
            return 0.0
        return float(self.eigenvalues[k] - self.eigenvalues[0])

    def is_degenerate(self, index: int) -> bool:
        for group in self.degeneracy_groups:
            if index in group:
                return len(group) > 1
        raise IndexError(index)


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    out = np.array(vectors, dtype=np.complex128)
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col)))
        pivot = col[k]
        if abs(pivot) > 0:
            out[:, j] = col * (pivot.conjugate() / abs(pivot))
    return out


def degeneracy_groups(eigenvalues: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Partition sorted eigenvalues into groups of bounded spread."""
    w = np.asarray(eigenvalues, dtype=float)
    n = w.shape[0]
    tol = DEGENERACY_RTOL * max(1.0, float(w[-1] - w[0]))
    groups = []
    start = 0
    while start < n:
        end = start + 1
        while end < n and w[end] - w[start] <= tol:
            end += 1
        groups.append(tuple(range(start, end)))
        start = end
    return tuple(groups)


def eigh(h: HermitianOperator) -> EigenDecomposition:
    """Full eigendecomposition of a Hermitian operator.

    Deterministic for identical input: LAPACK output is post-processed with a
    fixed phase convention (largest component of each eigenvector made real
    positive).  Raises NumericalError if the orthonormality or residual
    contract is violated.
    """
    m = h.matrix
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed to converge: {exc}") from exc
    v = fix_phases(v)
    n = m.shape[0]

    gram_defect = np.abs(v.conj().T @ v - np.eye(n)).max()
    if gram_defect > ORTHONORMALITY_ATOL:
        raise NumericalError(f"eigenvector orthonormality defect {gram_defect:.3e}")
    scale = max(frobenius_norm(m), 1.0)
    residual = np.linalg.norm(m @ v - v * w[np.newaxis, :], axis=0).max()
    if residual > RESIDUAL_RTOL * scale:
        raise NumericalError(f"eigendecomposition residual {residual:.3e}")

    return EigenDecomposition(
        eigenvalues=_readonly(w.astype(float)),
        eigenvectors=_readonly(v),
        degeneracy_groups=degeneracy_groups(w),
    )


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with a guard on the resulting dimension."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > KRON_DIM_LIMIT:
        raise DimensionError(
            f"kron would produce a {rows}x{cols} matrix, limit is {KRON_DIM_LIMIT}"
        )
    return np.kron(a, b)


def kron_all(*factors: np.ndarray) -> np.ndarray:
    out = as_complex_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def _trace_einsum(tensor_row: str, n: int, keep: tuple[int, ...]) -> str:
    row = [chr(ord("a") + k) for k in range(n)]
    col = [row[k] if k not in keep else chr(ord("a") + n + k) for k in range(n)]
    out = "".join(row[k] for k in keep) + "".join(col[k] for k in keep)
    return "".join(row) + tensor_row + "".join(col) + "->" + out


def partial_trace(rho: DensityMatrix, dims, keep) -> DensityMatrix:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` lists the subsystem dimensions in tensor order; ``keep`` is the
    set of subsystem indices retained (in ascending tensor order).
    """
    dims = tuple(int(d) for d in dims)
    keep = tuple(sorted(set(int(k) for k in keep)))
    n = len(dims)
    if prod(dims) != rho.dim:
        raise DimensionError(f"prod({dims}) != {rho.dim}")
    if not keep or any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"keep={keep} is not a non-empty subset of 0..{n - 1}")

    t = rho.matrix.reshape(*dims, *dims)
    sub = _trace_einsum("", n, keep)
    reduced = np.einsum(sub, t)
    d = prod(dims[k] for k in keep)
    return DensityMatrix(reduced.reshape(d, d))


def reduced_density(state: np.ndarray, dims, keep) -> DensityMatrix:
    """Reduced density matrix of a pure state, without forming the projector."""
    dims = tuple(int(d) for d in dims)
    keep = tuple(sorted(set(int(k) for k in keep)))
    n = len(dims)
    psi = np.asarray(state, dtype=np.complex128).reshape(-1)
    if psi.size != prod(dims):
        raise DimensionError(f"state size {psi.size} != prod({dims})")
    if not keep or any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"keep={keep} is not a non-empty subset of 0..{n - 1}")

    t = psi.reshape(dims)
    row = [chr(ord("a") + k) for k in range(n)]
    col = [row[k] if k not in keep else chr(ord("a") + n + k) for k in range(n)]
    out = "".join(row[k] for k in keep) + "".join(col[k] for k in keep)
    sub = "".join(row) + "," + "".join(col) + "->" + out
    reduced = np.einsum(sub, t, t.conj())
    d = prod(dims[k] for k in keep)
    return DensityMatrix(reduced.reshape(d, d))


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state."""
    return float(np.sum(np.abs(rho.matrix) ** 2))


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Bipartite normal form of a pure state: sum_j c_j |j>_L |j>_R.

    Coefficients are non-negative and sorted non-increasing; the left and
    right bases are orthonormal columns.  Rank 1 means a product state.
    """

    coefficients: np.ndarray
    basis_left: np.ndarray
    basis_right: np.ndarray

    def rank(self, tol: float = 1e-7) -> int:
        return int(np.count_nonzero(self.coefficients >= tol))

    def reconstruct(self) -> np.ndarray:
        dl = self.basis_left.shape[0]
        dr = self.basis_right.shape[0]
        out = np.zeros(dl * dr, dtype=np.complex128)
        for j, c in enumerate(self.coefficients):
            out += c * np.kron(self.basis_left[:, j], self.basis_right[:, j])
        return out


def schmidt(vector: np.ndarray, dims: tuple[int, int]) -> SchmidtDecomposition:
    """Schmidt decomposition of a unit vector on a dL x dR bipartition."""
    dl, dr = int(dims[0]), int(dims[1])
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    if v.size != dl * dr:
        raise DimensionError(f"vector size {v.size} != {dl}*{dr}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > STATE_NORM_ATOL:
        raise ValueError(f"input norm {norm!r} deviates from 1 beyond {STATE_NORM_ATOL}")

    u, s, vh = np.linalg.svd(v.reshape(dl, dr), full_matrices=False)
    # phase convention: left vectors real-positive at their largest entry,
    # compensating phases absorbed into the right vectors
    for j in range(u.shape[1]):
        k = int(np.argmax(np.abs(u[:, j])))
        pivot = u[k, j]
        if abs(pivot) > 0:
            ph = pivot.conjugate() / abs(pivot)
            u[:, j] *= ph
            vh[j, :] *= ph.conjugate()
    return SchmidtDecomposition(
        coefficients=_readonly(s.astype(float)),
        basis_left=_readonly(u),
        basis_right=_readonly(vh.T),
    )


def permute_subsystems(matrix: np.ndarray, dims, perm) -> np.ndarray:
    """Conjugate an operator by the unitary that reorders tensor factors.

    ``perm[k]`` names the old subsystem that lands in slot k of the output.
    """
    dims = tuple(int(d) for d in dims)
    perm = tuple(int(p) for p in perm)
    n = len(dims)
    if sorted(perm) != list(range(n)):
        raise DimensionError(f"perm={perm} is not a permutation of 0..{n - 1}")
    m = as_complex_matrix(matrix)
    if m.shape[0] != prod(dims):
        raise DimensionError(f"matrix dim {m.shape[0]} != prod({dims})")
    t = m.reshape(*dims, *dims)
    axes = list(perm) + [n + p for p in perm]
    t = t.transpose(axes)
    d = prod(dims)
    return t.reshape(d, d)


def swap_operator(dims, i: int, j: int) -> np.ndarray:
    """Permutation matrix exchanging subsystems i and j (must have equal dims)."""
    dims = tuple(int(d) for d in dims)
    if dims[i] != dims[j]:
        raise DimensionError(f"cannot swap subsystems of dims {dims[i]} and {dims[j]}")
    perm = list(range(len(dims)))
    perm[i], perm[j] = perm[j], perm[i]
    d = prod(dims)
    eye = np.eye(d, dtype=np.complex128)
    # permute the row multi-index of the identity: S|..x_i..x_j..> = |..x_j..x_i..>
    t = eye.reshape(*dims, d).transpose(list(perm) + [len(dims)])
    return t.reshape(d, d)
