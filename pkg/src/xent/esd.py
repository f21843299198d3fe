"""Sudden-death thresholds and GHZ witness expectations for three-qubit X-states."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from .channels import DEPHASING, DEPOLARIZING, Channel, depolarize3
from .oracle import ghz_witness
from .spectra import pt_spectrum
from .xcore import XState

SUBDIVISIONS = 1024
XTOL = 1e-10
NEG_TOL = 1e-12


def _need_three(x: XState) -> None:
    if x.n != 3:
        raise ValueError(f"three-qubit state required (got n={x.n})")


def _scan(f: Callable[[float], float], lo: float, hi: float, subdivisions: int, xtol: float):
    grid = np.linspace(lo, hi, subdivisions + 1)
    vals = np.array([f(p) for p in grid])
    sgn = np.sign(vals)
    brackets = []  # (index of right grid point, root)
    for i in range(subdivisions):
        if sgn[i] * sgn[i + 1] < 0:
            brackets.append((i + 1, float(bisect(f, grid[i], grid[i + 1], xtol=xtol))))
        elif sgn[i + 1] == 0 and 0 < i + 1 < subdivisions and sgn[i] * sgn[i + 2] < 0:
            brackets.append((i + 1, float(grid[i + 1])))
    return vals, brackets


def sign_crossings(
    f: Callable[[float], float],
    lo: float = 0.0,
    hi: float = 1.0,
    subdivisions: int = SUBDIVISIONS,
    xtol: float = XTOL,
) -> list[float]:
    """Roots of ``f`` on [lo, hi] where it changes sign, bracketed on a uniform grid."""
    return [r for _, r in _scan(f, lo, hi, subdivisions, xtol)[1]]


@dataclass(frozen=True)
class EsdResult:
    """Where the smallest PT eigenvalue for ``qubit`` changes sign on [0, 1].

    ``dies_at`` is the smallest p beyond which the eigenvalue stays nonnegative
    (0.0 if it is never negative); ``None`` means it only reaches zero at p = 1.
    """

    qubit: int
    crossings: tuple[float, ...]
    dies_at: float | None
    block_roots: dict[int, float | None] = field(default_factory=dict)

    @property
    def never(self) -> bool:
        return self.dies_at is None

    @property
    def entangled_at_zero(self) -> bool:
        return self.dies_at is None or self.dies_at > 0.0


def esd_dephasing(x: XState, qubit: int) -> EsdResult:
    """Closed-form roots p = 1 - (a_j b_j)^(1/3) / |c_i|^(2/3) of each negative PT branch.

    Under dephasing each branch rises monotonically to min(a_j, b_j) >= 0, so the
    smallest eigenvalue turns nonnegative at the largest root.
    """
    _need_three(x)
    spec = pt_spectrum(x, qubit)
    a, b, c = x.a, x.b, np.abs(x.c)
    roots: dict[int, float | None] = {}
    for j0, i in enumerate(spec.partners):
        j = j0 + 1
        ab, ci = a[j0] * b[j0], c[i - 1]
        if not ab < ci * ci:
            continue  # branch never negative
        roots[j] = None if ab == 0.0 else float(1.0 - np.cbrt(ab) / ci ** (2.0 / 3.0))
    if not roots:
        return EsdResult(qubit, (), 0.0, roots)
    if any(r is None for r in roots.values()):
        return EsdResult(qubit, (), None, roots)
    last = max(roots.values())
    return EsdResult(qubit, (last,), last, roots)


def esd_depolarizing(x: XState, qubit: int) -> EsdResult:
    """Sign changes of the smallest PT eigenvalue of the depolarized state."""
    _need_three(x)

    def f(p):
        return pt_spectrum(depolarize3(x, p), qubit).min_eigenvalue

    vals, brackets = _scan(f, 0.0, 1.0, SUBDIVISIONS, XTOL)
    negative = np.nonzero(vals < -NEG_TOL)[0]
    if negative.size == 0:
        dies_at = 0.0
    else:
        after = [r for idx, r in brackets if idx > negative[-1]]
        dies_at = after[0] if after else None
    return EsdResult(qubit, tuple(r for _, r in brackets), dies_at)


def esd(x: XState, qubit: int, kind: str) -> EsdResult:
    if kind == DEPHASING:
        return esd_dephasing(x, qubit)
    if kind == DEPOLARIZING:
        return esd_depolarizing(x, qubit)
    raise ValueError(f"unknown channel kind {kind!r}")


def witness_expectation(x: XState, k: int, channel: Channel | None = None) -> float:
    """Tr[W_k rho(p)] for W_k = 3/4 - |GHZ(k)><GHZ(k)| after the channel.

    The coherence enters through Re(c_k): GHZ(k) carries a + sign, so only the
    real part of c_k overlaps it. This coincides with the |c_k| form whenever
    c_k is real and nonnegative.
    """
    _need_three(x)
    if not 1 <= k <= 4:
        raise ValueError(f"witness index must be 1..4, got {k}")
    p = 0.0 if channel is None else channel.p
    kind = DEPHASING if channel is None else channel.kind
    s = x.a + x.b
    own, rest = s[k - 1], s.sum() - s[k - 1]
    re_c = float(x.c[k - 1].real)
    if kind == DEPHASING:
        return 0.25 * (3 * rest + own - 4 * (1 - p) ** 1.5 * re_c)
    return (
        (p * p - 2 * p + 6) * rest / 8
        - (3 * p * p - 6 * p - 2) * own / 8
        + (p - 1) ** 3 * re_c
    )


def witness_operator(k: int) -> np.ndarray:
    return ghz_witness(3, k)


def witness_threshold_dephasing(x: XState, k: int) -> float | None:
    """p where Tr[W_k rho] reaches zero, or ``None`` if W_k never detects."""
    if witness_expectation(x, k) >= 0:
        return None
    s = x.a + x.b
    own, rest = s[k - 1], s.sum() - s[k - 1]
    re_c = float(x.c[k - 1].real)
    p = 1.0 - (3 * rest + own) ** (2.0 / 3.0) / (2 ** (4.0 / 3.0) * re_c ** (2.0 / 3.0))
    return float(min(max(p, 0.0), 1.0))


def witness_threshold_depolarizing(x: XState, k: int) -> float | None:
    def f(p):
        return witness_expectation(x, k, Channel(DEPOLARIZING, p))

    if f(0.0) >= 0:
        return None
    roots = sign_crossings(f)
    return roots[0] if roots else None


def witness_threshold(x: XState, k: int, kind: str) -> float | None:
    if kind == DEPHASING:
        return witness_threshold_dephasing(x, k)
    if kind == DEPOLARIZING:
        return witness_threshold_depolarizing(x, k)
    raise ValueError(f"unknown channel kind {kind!r}")


def minimize_witness(x: XState, channel: Channel | None = None) -> tuple[int, float]:
    values = [witness_expectation(x, k, channel) for k in range(1, 5)]
    k = int(np.argmin(values))  # first minimum wins ties
    return k + 1, values[k]
