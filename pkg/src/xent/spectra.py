"""Closed-form spectra, partial transposes and negativities of X-states.

A partial transpose only permutes the anti-diagonal: the coherence joining
``k`` and ``~k`` moves to ``k ^ mask`` and ``~(k ^ mask)``, where ``mask`` is
the transposed qubit's bit. So the transposed matrix is still X-shaped and its
eigenvalues come from 2x2 blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .xcore import XState


def block_eigenvalues(x: XState) -> np.ndarray:
    """Array of shape (N/2, 2): (lower, upper) eigenvalue of each 2x2 block."""
    s = x.a + x.b
    gap = np.sqrt((x.a - x.b) ** 2 + 4 * np.abs(x.c) ** 2)
    return np.stack([0.5 * (s - gap), 0.5 * (s + gap)], axis=-1)


def eigenvalues(x: XState) -> np.ndarray:
    return np.sort(block_eigenvalues(x).ravel())


def qubit_mask(n: int, qubit: int) -> int:
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit {qubit} out of range for n={n}")
    return 1 << (n - qubit)


def pt_partners(n: int, qubit: int) -> np.ndarray:
    """1-based block whose coherence lands in block m after transposing ``qubit``."""
    dim = 1 << n
    src = np.arange(dim // 2) ^ qubit_mask(n, qubit)
    return np.minimum(src, dim - 1 - src) + 1


def partial_transpose(x: XState, qubit: int) -> XState:
    mask = qubit_mask(x.n, qubit)
    e = x.e
    return XState(x.diag, e[np.arange(x.dim // 2) ^ mask])


@dataclass(frozen=True)
class PTSpectrum:
    qubit: int
    blocks: np.ndarray  # (N/2, 2) lower/upper branch per block
    partners: np.ndarray  # coherence source block for each block

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.sort(self.blocks.ravel())

    @property
    def min_eigenvalue(self) -> float:
        return float(self.blocks[:, 0].min())


def pt_spectrum(x: XState, qubit: int) -> PTSpectrum:
    """E_ij = (a_j + b_j -/+ sqrt((a_j - b_j)^2 + 4|c_i|^2)) / 2 with i = partner of j."""
    return PTSpectrum(qubit, block_eigenvalues(partial_transpose(x, qubit)), pt_partners(x.n, qubit))


def min_pt_eigenvalue(x: XState, qubit: int) -> float:
    return pt_spectrum(x, qubit).min_eigenvalue


def signed_cbrt(v: float) -> float:
    return float(np.cbrt(v))


@dataclass(frozen=True)
class NegativitySummary:
    """Per-qubit negativities in the signed convention (most negative PT eigenvalue).

    A positive entry means the partial transpose has no negative eigenvalue.
    ``tri_partite`` is the signed cube root of N_1 N_2 N_3 (three qubits only);
    it is negative exactly when an odd number of the N_j are, which is how
    GHZ-distillable entanglement shows up in this convention.
    """

    per_qubit: tuple[float, ...]
    tri_partite: float | None
    standard: tuple[float, ...]  # sum of |negative eigenvalues| per qubit


def negativities(x: XState) -> NegativitySummary:
    spectra = [pt_spectrum(x, q) for q in range(1, x.n + 1)]
    per = tuple(s.min_eigenvalue for s in spectra)
    std = tuple(float(-np.minimum(s.blocks, 0.0).sum()) for s in spectra)
    tri = signed_cbrt(float(np.prod(per))) if x.n == 3 else None
    return NegativitySummary(per, tri, std)
