"""Compact X-state model.

An n-qubit X-state is stored as its diagonal ``d_1..d_N`` and the upper half
of its anti-diagonal ``e_1..e_{N/2}`` (``e_m = rho[m, N-m+1]``, 1-based); the
lower half is implied by Hermiticity. Block ``m`` couples basis states ``m-1``
and its bitwise complement ``N-m`` (big-endian, qubit 1 is the most significant
bit), so for three qubits ``a_j = d_j``, ``b_j = d_{9-j}`` and ``c_j = e_j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .oracle import hermiticity_residual, num_qubits, x_pattern_residual

STRUCT_TOL = 1e-12


class InvalidStateError(ValueError):
    """Raised when a matrix is not a valid density matrix."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid X-state: " + "; ".join(str(c) for c in report.failures))


@dataclass(frozen=True, eq=False)
class XState:
    """X-shaped Hermitian matrix; use :func:`validate` to check it is a state.

    Partial transposes are returned as ``XState`` too, even though they need
    not be positive.
    """

    diag: np.ndarray
    anti: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diag)
        if np.iscomplexobj(diag):
            if np.max(np.abs(diag.imag), initial=0.0) > STRUCT_TOL:
                raise ValueError("diagonal of a Hermitian matrix must be real")
            diag = diag.real
        diag = np.array(diag, dtype=float).ravel()
        anti = np.array(self.anti, dtype=complex).ravel()
        dim = diag.size
        if dim < 2 or dim & (dim - 1):
            raise ValueError(f"diagonal length must be a power of two >= 2, got {dim}")
        if anti.size != dim // 2:
            raise ValueError(f"expected {dim // 2} anti-diagonal entries, got {anti.size}")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(anti))):
            raise ValueError("entries must be finite")
        diag.flags.writeable = False
        anti.flags.writeable = False
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "anti", anti)

    @property
    def dim(self) -> int:
        return self.diag.size

    @property
    def n(self) -> int:
        return self.dim.bit_length() - 1

    @property
    def a(self) -> np.ndarray:
        return self.diag[: self.dim // 2]

    @property
    def b(self) -> np.ndarray:
        return self.diag[::-1][: self.dim // 2]

    @property
    def c(self) -> np.ndarray:
        return self.anti

    @property
    def e(self) -> np.ndarray:
        """Full anti-diagonal e_1..e_N, read from the top-right corner."""
        return np.concatenate([self.anti, self.anti[::-1].conj()])

    @classmethod
    def from_blocks(cls, a: Sequence[float], b: Sequence[float], c: Sequence[complex]) -> "XState":
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return cls(np.concatenate([a, b[::-1]]), c)

    @classmethod
    def from_dense(cls, m: np.ndarray, tol: float = STRUCT_TOL) -> "XState":
        m = np.asarray(m, dtype=complex)
        num_qubits(m)
        if x_pattern_residual(m) > tol:
            raise ValueError("matrix has entries off the X pattern")
        if hermiticity_residual(m) > tol:
            raise ValueError("matrix is not Hermitian")
        dim = m.shape[0]
        return cls(np.diag(m).real, np.fliplr(m).diagonal()[: dim // 2])

    def to_dense(self) -> np.ndarray:
        m = np.diag(self.diag.astype(complex))
        idx = np.arange(self.dim)
        m[idx, self.dim - 1 - idx] = self.e
        return m

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "diag": [float(x) for x in self.diag],
            "anti": [[float(z.real), float(z.imag)] for z in self.anti],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "XState":
        try:
            n = int(obj["n"])
            diag = [float(x) for x in obj["diag"]]
            anti = [complex(float(re), float(im)) for re, im in obj["anti"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed state object: {exc}") from exc
        state = cls(diag, anti)
        if state.n != n:
            raise ValueError(f"'n'={n} does not match diagonal of length {len(diag)}")
        return state

    def __repr__(self) -> str:
        return f"XState(n={self.n}, diag={self.diag.tolist()}, anti={self.anti.tolist()})"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float

    def __str__(self) -> str:
        return f"{self.name}: {'ok' if self.passed else 'FAIL'} (residual {self.residual:.3e})"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __bool__(self) -> bool:
        return self.ok


def validate(state: XState, tol: float = STRUCT_TOL) -> ValidationReport:
    """Check trace, Hermiticity and positivity of every 2x2 block."""
    trace_res = abs(float(state.diag.sum()) - 1.0)
    herm_res = hermiticity_residual(state.to_dense())
    neg_diag = max(0.0, -float(state.diag.min()))
    # smaller eigenvalue of each block; d_m d_m' >= |e_m|^2 and d >= 0 together
    s = state.a + state.b
    gap = np.sqrt((state.a - state.b) ** 2 + 4 * np.abs(state.c) ** 2)
    psd_res = max(0.0, -float(np.min(0.5 * (s - gap))))
    return ValidationReport(
        (
            Check("trace", trace_res <= tol, trace_res),
            Check("hermitian", herm_res <= tol, herm_res),
            Check("nonnegative-diagonal", neg_diag <= tol, neg_diag),
            Check("psd-blocks", psd_res <= tol, psd_res),
        )
    )


def ensure_valid(state: XState) -> XState:
    report = validate(state)
    if not report.ok:
        raise InvalidStateError(report)
    return state


def _num_blocks(n: int) -> int:
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    return 1 << (n - 1)


@dataclass(frozen=True)
class GhzTypeSpec:
    """One 2x2 block (a, b, c) at 1-based block index k, normalised to a + b = 1."""

    n: int
    k: int
    a: float
    b: float
    c: complex

    def __post_init__(self):
        if not 1 <= self.k <= _num_blocks(self.n):
            raise ValueError(f"block index {self.k} out of range for n={self.n}")
        if self.a < -STRUCT_TOL or self.b < -STRUCT_TOL:
            raise ValueError("populations must be nonnegative")
        if abs(self.a + self.b - 1.0) > STRUCT_TOL:
            raise ValueError(f"a + b must equal 1, got {self.a + self.b}")
        if abs(self.c) ** 2 > self.a * self.b + STRUCT_TOL:
            raise ValueError("|c|^2 exceeds a*b")


def from_ghz_types(specs: Sequence[GhzTypeSpec], weights: Sequence[float]) -> XState:
    if len(specs) != len(weights) or not specs:
        raise ValueError("need one weight per GHZ-type spec")
    n = specs[0].n
    if any(s.n != n for s in specs):
        raise ValueError("all specs must share the qubit count")
    ks = [s.k for s in specs]
    if len(set(ks)) != len(ks):
        raise ValueError(f"overlapping block indices {ks}")
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1.0) > STRUCT_TOL:
        raise ValueError("weights must be nonnegative and sum to 1")
    nb = _num_blocks(n)
    a, b, c = np.zeros(nb), np.zeros(nb), np.zeros(nb, dtype=complex)
    for spec, wi in zip(specs, w):
        a[spec.k - 1], b[spec.k - 1], c[spec.k - 1] = wi * spec.a, wi * spec.b, wi * spec.c
    return ensure_valid(XState.from_blocks(a, b, c))


@dataclass(frozen=True)
class GeneralizedGhzDiagonalSpec:
    """Mixture of alpha|k> +/- beta|~k> over all basis labels k = 0..N-1."""

    n: int
    alpha: complex
    beta: complex
    lambda_plus: Sequence[float]
    lambda_minus: Sequence[float]

    def __post_init__(self):
        dim = 1 << self.n
        lp = np.asarray(self.lambda_plus, dtype=float)
        lm = np.asarray(self.lambda_minus, dtype=float)
        if lp.shape != (dim,) or lm.shape != (dim,):
            raise ValueError(f"need {dim} weights of each sign")
        if np.any(lp < -STRUCT_TOL) or np.any(lm < -STRUCT_TOL):
            raise ValueError("weights must be nonnegative")
        if abs(lp.sum() + lm.sum() - 1.0) > STRUCT_TOL:
            raise ValueError("weights must sum to 1")
        if abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0) > STRUCT_TOL:
            raise ValueError("|alpha|^2 + |beta|^2 must equal 1")


def from_generalized_ghz_diagonal(spec: GeneralizedGhzDiagonalSpec) -> XState:
    dim = 1 << spec.n
    lp = np.asarray(spec.lambda_plus, dtype=float)
    lm = np.asarray(spec.lambda_minus, dtype=float)
    k = np.arange(dim // 2)
    kbar = dim - 1 - k
    s_k, s_kbar = lp[k] + lm[k], lp[kbar] + lm[kbar]
    t_k, t_kbar = lp[k] - lm[k], lp[kbar] - lm[kbar]
    A, B = abs(spec.alpha) ** 2, abs(spec.beta) ** 2
    z = spec.alpha * np.conj(spec.beta)
    a = A * s_k + B * s_kbar
    b = B * s_k + A * s_kbar
    c = z * t_k + np.conj(z) * t_kbar
    return XState.from_blocks(a, b, c)


def counterexample_state(a1: float, a2: float, b2: float, r: float, phi: float) -> XState:
    """Two-qubit X-state with c_1 = 0, b_1 = 0 and c_2 = r exp(i phi)."""
    if min(a1, a2, b2) < 0 or r < 0:
        raise ValueError("populations and r must be nonnegative")
    if abs(a1 + a2 + b2 - 1.0) > STRUCT_TOL:
        raise ValueError("a1 + a2 + b2 must equal 1")
    if r > 0 and not r * r < a2 * b2:
        raise ValueError("positivity requires r^2 < a2*b2")
    if a1 * a1 + a2 * a2 + b2 * b2 + 2 * r * r > 1.0 + STRUCT_TOL:
        raise ValueError("purity exceeds 1")
    state = XState.from_blocks([a1, a2], [0.0, b2], [0.0, r * np.exp(1j * phi)])
    return ensure_valid(state)


def random_xstate(
    n: int,
    rng: np.random.Generator,
    blocks: Sequence[int] | None = None,
) -> XState:
    """Random valid X-state, optionally supported only on the given 1-based blocks."""
    nb = _num_blocks(n)
    support = np.arange(nb) if blocks is None else np.asarray(blocks) - 1
    w = rng.dirichlet(np.ones(2 * len(support)))
    a, b = np.zeros(nb), np.zeros(nb)
    a[support], b[support] = w[: len(support)], w[len(support):]
    mag = np.sqrt(a * b) * rng.uniform(0.0, 1.0, nb)
    c = mag * np.exp(1j * rng.uniform(0.0, 2 * np.pi, nb))
    return XState.from_blocks(a, b, c)


def maximally_mixed(n: int) -> XState:
    dim = 1 << n
    return XState(np.full(dim, 1.0 / dim), np.zeros(dim // 2))


def ghz_state(n: int, k: int = 1, sign: int = 1) -> XState:
    return from_ghz_types([GhzTypeSpec(n, k, 0.5, 0.5, 0.5 * sign)], [1.0])


def load_state(path: str | Path) -> XState:
    """Read a state JSON file; raises ``ValueError``/``InvalidStateError``/``OSError``."""
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    return ensure_valid(XState.from_json(obj))


def save_state(state: XState, path: str | Path) -> None:
    Path(path).write_text(json.dumps(state.to_json(), indent=2) + "\n")


__all__ = [
    "Check",
    "GeneralizedGhzDiagonalSpec",
    "GhzTypeSpec",
    "InvalidStateError",
    "ValidationReport",
    "XState",
    "counterexample_state",
    "ensure_valid",
    "from_generalized_ghz_diagonal",
    "from_ghz_types",
    "ghz_state",
    "load_state",
    "maximally_mixed",
    "random_xstate",
    "save_state",
    "validate",
]
