"""Closed-form versus dense-oracle property suite.

Library functions are looked up through their modules at call time, so a
patched implementation (for instance a broken partial transpose) is what gets
checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channels, concurrence, esd, oracle, spectra, xcore

TOL = 1e-10
P_GRID = np.linspace(0.0, 1.0, 6)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_residual) and self.max_residual <= self.tol)

    def line(self) -> str:
        status = "ok" if self.passed else "FAIL"
        return f"{status:4s} {self.name:32s} max residual {self.max_residual:.3e} (tol {self.tol:.0e})"


def _maxabs(v) -> float:
    return float(np.max(np.abs(v), initial=0.0))


def _states(seed: int, trials: int, n: int) -> list[xcore.XState]:
    rng = np.random.default_rng(seed)
    return [xcore.random_xstate(n, rng) for _ in range(trials)]


def _evolved(states, kind):
    return [channels.Channel(kind, p).apply(x) for x in states for p in P_GRID]


def check_eigenvalues(states) -> float:
    if not states:
        return 0.0
    dense = np.stack([x.to_dense() for x in states])
    closed = np.stack([spectra.eigenvalues(x) for x in states])
    return _maxabs(closed - oracle.hermitian_eigenvalues(dense))


def check_pt_eigenvalues(states) -> float:
    if not states:
        return 0.0
    dense = np.stack([x.to_dense() for x in states])
    worst = 0.0
    for q in range(1, states[0].n + 1):
        closed = np.stack([spectra.pt_spectrum(x, q).eigenvalues for x in states])
        ref = oracle.hermitian_eigenvalues(oracle.partial_transpose_dense(dense, q))
        worst = max(worst, _maxabs(closed - ref))
    return worst


def check_pt_matrix(states) -> float:
    """Entrywise PT and X-shape of the transposed matrix."""
    worst = 0.0
    for x in states:
        rho = x.to_dense()
        for q in range(1, x.n + 1):
            pt = spectra.partial_transpose(x, q).to_dense()
            worst = max(worst, _maxabs(pt - oracle.partial_transpose_dense(rho, q)))
            worst = max(worst, oracle.x_pattern_residual(oracle.partial_transpose_dense(rho, q)))
    return worst


def check_channel(states, kind) -> float:
    worst = 0.0
    for x in states:
        rho = x.to_dense()
        for p in P_GRID:
            ch = channels.Channel(kind, p)
            worst = max(worst, _maxabs(ch.apply(x).to_dense() - channels.apply_kraus_dense(rho, ch)))
    return worst


def check_witness(states) -> float:
    worst = 0.0
    wit = [oracle.ghz_witness(3, k) for k in range(1, 5)]
    for x in states:
        for kind in channels.KINDS:
            for p in P_GRID:
                ch = channels.Channel(kind, p)
                rho = ch.apply(x).to_dense()
                for k in range(1, 5):
                    ref = oracle.trace_product(wit[k - 1], rho).real
                    worst = max(worst, abs(esd.witness_expectation(x, k, ch) - ref))
    return worst


def check_concurrence(states) -> float:
    if not states:
        return 0.0
    dense = np.stack([x.to_dense() for x in states])
    ref = concurrence.concurrence_terms_dense(dense)
    closed = [concurrence.concurrence_terms(x).terms for x in states]
    worst = 0.0
    for key, col in ref.items():
        worst = max(worst, _maxabs(np.array([t[key] for t in closed]) - col))
    return worst


def run_suite(seed: int = 42, trials: int = 100) -> list[PropertyResult]:
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    three = _states(seed, trials, 3)
    small = _states(seed + 1, trials, 2)
    four = _states(seed + 2, max(trials // 10, min(trials, 1)), 4)
    deph = _evolved(three, channels.DEPHASING)
    depol = _evolved(three, channels.DEPOLARIZING)
    checks = [
        ("eigenvalues n=2,3,4", lambda: max(check_eigenvalues(s) for s in (small, three, four))),
        ("pt eigenvalues n=2,3,4", lambda: max(check_pt_eigenvalues(s) for s in (small, three, four))),
        ("pt matrix and x-shape", lambda: check_pt_matrix(three + four)),
        ("pt eigenvalues dephased", lambda: check_pt_eigenvalues(deph)),
        ("pt eigenvalues depolarized", lambda: check_pt_eigenvalues(depol)),
        ("dephasing kraus n=2,3,4", lambda: max(check_channel(s, channels.DEPHASING) for s in (small, three, four))),
        ("depolarizing kraus n=3", lambda: check_channel(three, channels.DEPOLARIZING)),
        ("witness expectation", lambda: check_witness(three)),
        ("concurrence terms", lambda: max(check_concurrence(deph), check_concurrence(depol))),
    ]
    results = []
    for name, fn in checks:
        try:
            r = fn()
        except Exception:  # a crash counts as a failed property
            r = float("inf")
        results.append(PropertyResult(name, r, TOL))
    return results
