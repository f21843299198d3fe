"""Brute-force dense-matrix reference computations.

Everything here works on plain ``numpy`` arrays of shape ``(2**n, 2**n)``
(or stacks of them) and knows nothing about the X-state structure, so it can
be used to check the closed forms in the other modules.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-12
PSD_CLAMP = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def num_qubits(m: np.ndarray) -> int:
    dim = m.shape[-1]
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim or m.shape[-2] != dim:
        raise ValueError(f"expected a square 2**n matrix, got shape {m.shape}")
    return n


def hermiticity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - np.swapaxes(m, -1, -2).conj()), initial=0.0))


def check_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    res = hermiticity_residual(m)
    if res > tol:
        raise ValueError(f"matrix is not Hermitian (max |M - M^H| = {res:.3e})")
    return m


def jacobi_eigh(m: np.ndarray, tol: float = 1e-13, max_sweeps: int = 64):
    """Cyclic Jacobi diagonalization of a single Hermitian matrix.

    Each rotation removes the phase of the pivot and then applies a real Givens
    rotation, so the iteration stays unitary. Sweeps continue until the
    Frobenius norm of the off-diagonal part is at most ``tol``.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending.
    """
    a = check_hermitian(m).copy()
    dim = a.shape[0]
    v = np.eye(dim, dtype=complex)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2))
        if off <= tol:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                theta = 0.5 * np.arctan2(2.0 * mag, (a[p, p] - a[q, q]).real)
                c, s = np.cos(theta), np.sin(theta)
                rot = np.array([[c, -s], [s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(a).real.copy()
    order = np.argsort(w)
    return w[order], v[:, order]


def hermitian_eigenvalues(m: np.ndarray, method: str = "lapack") -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix (or stack of them).

    ``method="jacobi"`` uses the rotation solver above (single matrix only);
    the default goes through LAPACK, which is what the bulk checks use.
    """
    m = check_hermitian(m)
    if method == "jacobi":
        if m.ndim != 2:
            raise ValueError("jacobi method takes a single matrix")
        return jacobi_eigh(m)[0]
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    return np.linalg.eigvalsh(m)


def sqrtm_psd(rho: np.ndarray) -> np.ndarray:
    """Principal square root of a PSD matrix (negative noise eigenvalues clamped)."""
    rho = check_hermitian(rho)
    w, v = np.linalg.eigh(rho)
    if np.any(w < -PSD_CLAMP):
        raise ValueError(f"matrix is not PSD (min eigenvalue {w.min():.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    return (v * root[..., None, :]) @ np.swapaxes(v, -1, -2).conj()


def partial_transpose_dense(m: np.ndarray, qubit: int) -> np.ndarray:
    """Transpose the bra/ket index of ``qubit`` (1-based, qubit 1 most significant)."""
    m = np.asarray(m)
    n = num_qubits(m)
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit {qubit} out of range for n={n}")
    lead = m.shape[:-2]
    t = m.reshape(lead + (2,) * (2 * n))
    off = len(lead)
    t = np.swapaxes(t, off + qubit - 1, off + n + qubit - 1)
    return t.reshape(m.shape)


def partial_trace_dense(m: np.ndarray, qubit: int) -> np.ndarray:
    """Trace out one qubit (1-based) of a dense operator."""
    n = num_qubits(m)
    t = np.asarray(m).reshape((2,) * (2 * n))
    t = np.trace(t, axis1=qubit - 1, axis2=n + qubit - 1)
    return t.reshape(1 << (n - 1), 1 << (n - 1))


def trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    if a.shape[-2:] != b.shape[-2:]:
        raise ValueError(f"dimension mismatch {a.shape} vs {b.shape}")
    return np.einsum("...ij,...ji->...", a, b)


def psd_product_eigenvalues(rho: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Eigenvalues of rho S rho* S^dagger, descending, via sqrt(rho) S rho* S^dagger sqrt(rho).

    For Hermitian ``s`` this is the usual rho S rho* S. Writing S^dagger keeps the
    spectrum nonnegative for anti-Hermitian S as well (the two differ by a sign).
    """
    root = sqrtm_psd(rho)
    s = np.asarray(s, dtype=complex)
    sd = np.swapaxes(s, -1, -2).conj()
    h = root @ s @ np.conj(rho) @ sd @ root
    h = 0.5 * (h + np.swapaxes(h, -1, -2).conj())
    w = np.linalg.eigvalsh(h)[..., ::-1]
    return np.where(w >= -PSD_CLAMP, np.clip(w, 0.0, None), w)


def psd_product_singular_values(rho: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Square roots of :func:`psd_product_eigenvalues`, descending.

    Computed as singular values of sqrt(rho) S sqrt(rho)*, which avoids taking
    square roots of eigenvalues that are zero up to rounding.
    """
    root = sqrtm_psd(rho)
    return np.linalg.svd(root @ np.asarray(s, dtype=complex) @ np.conj(root), compute_uv=False)


def concurrence_term_dense(rho: np.ndarray, s: np.ndarray) -> np.ndarray:
    """max(0, l1 - l2 - l3 - l4) over the four largest sqrt-eigenvalues of rho S rho* S."""
    sv = psd_product_singular_values(rho, s)[..., :4]
    return np.maximum(0.0, sv[..., 0] - sv[..., 1:].sum(axis=-1))


def ghz_ket(n: int, k: int) -> np.ndarray:
    """(|k> + |~k>)/sqrt(2) with ``k`` the 1-based block index (basis state k-1)."""
    dim = 1 << n
    if not 1 <= k <= dim // 2:
        raise ValueError(f"block index {k} out of range for n={n}")
    ket = np.zeros(dim, dtype=complex)
    ket[k - 1] = ket[dim - k] = 1 / np.sqrt(2)
    return ket


def ghz_witness(n: int, k: int) -> np.ndarray:
    ket = ghz_ket(n, k)
    return 0.75 * np.eye(1 << n) - np.outer(ket, ket.conj())


def x_pattern_residual(m: np.ndarray) -> float:
    """Largest magnitude among entries off the diagonal and anti-diagonal."""
    dim = m.shape[-1]
    mask = np.eye(dim, dtype=bool) | np.fliplr(np.eye(dim, dtype=bool))
    return float(np.max(np.abs(np.where(mask, 0, m)), initial=0.0))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    g = rng.normal(size=(dim, rank or dim)) + 1j * rng.normal(size=(dim, rank or dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
