"""Independent-qubit dephasing and depolarizing channels.

Each channel has a closed-form update acting on :class:`XState` and an
explicit Kraus-sum path acting on dense matrices; the two are checked against
each other in the test-suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .oracle import SIGMA_X, SIGMA_Y, SIGMA_Z, num_qubits
from .xcore import XState

DEPHASING = "dephasing"
DEPOLARIZING = "depolarizing"
KINDS = (DEPHASING, DEPOLARIZING)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {p}")
    return p


def dephasing_kraus(p: float) -> list[np.ndarray]:
    p = _check_p(p)
    return [
        np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex),
        np.array([[0, 0], [0, np.sqrt(p)]], dtype=complex),
    ]


def depolarizing_kraus(p: float) -> list[np.ndarray]:
    p = _check_p(p)
    ops = [np.sqrt(1 - 0.75 * p) * np.eye(2, dtype=complex)]
    ops += [0.5 * np.sqrt(p) * s for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
    return ops


def completeness_residual(ops: list[np.ndarray]) -> float:
    total = sum(k.conj().T @ k for k in ops)
    return float(np.max(np.abs(total - np.eye(total.shape[0]))))


@dataclass(frozen=True)
class Channel:
    """Uniform independent-qubit channel; serializes as ``{"kind", "p"}``."""

    kind: str
    p: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        object.__setattr__(self, "p", _check_p(self.p))

    def kraus(self) -> list[np.ndarray]:
        return dephasing_kraus(self.p) if self.kind == DEPHASING else depolarizing_kraus(self.p)

    def apply(self, state: XState) -> XState:
        if self.kind == DEPHASING:
            return dephase(state, self.p)
        return depolarize3(state, self.p)

    def apply_dense(self, rho: np.ndarray) -> np.ndarray:
        return apply_kraus_dense(rho, self)

    def with_p(self, p: float) -> "Channel":
        return Channel(self.kind, p)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p}

    @classmethod
    def from_dict(cls, obj: dict) -> "Channel":
        return cls(str(obj["kind"]), float(obj["p"]))


def dephase(state: XState, p: float) -> XState:
    """Each coherence joins bit-complementary strings, so it picks up sqrt(1-p) per qubit."""
    p = _check_p(p)
    return XState(state.diag, state.anti * (1 - p) ** (state.n / 2))


# For a_i the Hamming-1 neighbours are a_j, a_k, b_l and the Hamming-2 ones
# b_j, b_k, a_l, where l is the partner of i: (1,4) and (2,3).
_PARTNER = {1: 4, 4: 1, 2: 3, 3: 2}


def depolarize3(state: XState, p: float) -> XState:
    """Closed-form three-qubit depolarizing update of an X-state."""
    if state.n != 3:
        raise ValueError(f"closed-form depolarizing is three-qubit only (got n={state.n})")
    p = _check_p(p)
    same = 1 - 1.5 * p + 0.75 * p**2 - p**3 / 8
    one = p / 2 - p**2 / 2 + p**3 / 8
    two = p**2 / 4 - p**3 / 8
    flip = p**3 / 8

    def mixed(a, b):
        out = np.empty(4)
        for i in range(1, 5):
            l = _PARTNER[i]
            j, k = (m for m in range(1, 5) if m not in (i, l))
            out[i - 1] = (
                a[i - 1] * same
                + (a[j - 1] + a[k - 1] + b[l - 1]) * one
                + b[i - 1] * flip
                + (a[l - 1] + b[j - 1] + b[k - 1]) * two
            )
        return out

    a, b = state.a, state.b
    return XState.from_blocks(mixed(a, b), mixed(b, a), state.c * (1 - p) ** 3)


def apply_kraus_dense(rho: np.ndarray, channel: Channel) -> np.ndarray:
    """Sum over every tensor product of single-qubit Kraus operators."""
    rho = np.asarray(rho, dtype=complex)
    n = num_qubits(rho)
    ops = channel.kraus()
    if completeness_residual(ops) > 1e-12:
        raise ValueError("Kraus set is not trace preserving")
    out = np.zeros_like(rho)
    for combo in itertools.product(ops, repeat=n):
        a = reduce(np.kron, combo)
        out += a @ rho @ a.conj().T
    return out


def p_of_time(kappa: float, t: float) -> float:
    if kappa < 0 or t < 0:
        raise ValueError("kappa and t must be nonnegative")
    return float(-np.expm1(-kappa * t))
