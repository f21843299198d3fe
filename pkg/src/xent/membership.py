"""Is an X-state a generalized GHZ-diagonal state?

Such states mix alpha|k> +/- beta|~k> with a single (alpha, beta). Writing
A = |alpha|^2, B = |beta|^2, z = alpha beta*, s = lambda^+ + lambda^-,
t = lambda^+ - lambda^-, block j (k = j - 1) reads

    a_j = A s_k + B s_~k,   b_j = B s_k + A s_~k,   c_j = z t_k + z* t_~k,

subject to |t| <= s. For fixed (A, arg z) the blocks decouple and each one is
a small linear feasibility problem, so membership reduces to a search over
two real parameters. Three necessary conditions are checked first; they come
from asking how a vanishing coherence c_j = 0 can arise:

1. z = 0, which forces every coherence to vanish;
2. t_k = t_~k = 0 with A, B > 0, so a_j and b_j vanish together;
3. e^{2i arg z} real, so every coherence is real or every one is imaginary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .xcore import (
    GeneralizedGhzDiagonalSpec,
    XState,
    ensure_valid,
    from_generalized_ghz_diagonal,
)

ZERO_TOL = 1e-12
FEAS_TOL = 1e-10
RECON_TOL = 1e-9

MEMBER = "member-by-construction"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class MembershipReport:
    status: str
    conditions: dict[int, bool]  # condition number -> satisfied
    certificate: GeneralizedGhzDiagonalSpec | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def is_member(self) -> bool:
        return self.status == MEMBER

    @property
    def excluded(self) -> bool:
        return self.status.startswith("excluded")

    @property
    def violated(self) -> tuple[int, ...]:
        return tuple(k for k, ok in sorted(self.conditions.items()) if not ok)


def check_conditions(x: XState, tol: float = ZERO_TOL) -> dict[int, bool]:
    """Which of the three ways to get c_j = 0 remain possible, for every such block.

    Blocks with a nonzero coherence impose nothing, so a state without any
    vanishing coherence satisfies all three trivially.
    """
    c = x.c
    nonzero = np.abs(c) > tol
    zero_blocks = ~nonzero
    if not zero_blocks.any():
        return {1: True, 2: True, 3: True}
    cond1 = not nonzero.any()
    zero_a, zero_b = x.a <= tol, x.b <= tol
    cond2 = bool(np.all((zero_a == zero_b)[zero_blocks]))
    cz = c[nonzero]
    all_real = bool(np.all(np.abs(cz.imag) <= tol))
    all_imag = bool(np.all(np.abs(cz.real) <= tol))
    return {1: cond1, 2: cond2, 3: all_real or all_imag}


def _populations(A: float, a: np.ndarray, b: np.ndarray):
    B = 1.0 - A
    den = A - B
    return (A * a - B * b) / den, (A * b - B * a) / den


def _block_fit(A, theta, a, b, c):
    """Per-block (s_k, s_~k, t_k, t_~k) and total constraint violation.

    Any free direction (A = 1/2, or c along a degenerate axis) is resolved at
    the centre of its feasible interval.
    """
    B = 1.0 - A
    r = np.sqrt(A * B)
    cos, sin = np.cos(theta), np.sin(theta)
    viol = 0.0
    if abs(A - B) > 1e-9:
        s1, s2 = _populations(A, a, b)
    else:
        viol += float(np.abs(a - b).sum())
        s1 = s2 = None
    x, y = c.real, c.imag
    u_fixed = abs(cos) > 1e-12
    v_fixed = abs(sin) > 1e-12
    u = x / (r * cos) if u_fixed else np.zeros_like(x)
    v = y / (r * sin) if v_fixed else np.zeros_like(y)
    if not u_fixed:
        viol += float(np.abs(x).sum())
    if not v_fixed:
        viol += float(np.abs(y).sum())
    t1, t2 = (u + v) / 2, (u - v) / 2
    if s1 is None:
        # split a + b between s_k and s_~k so that |t| <= s on both sides
        total = a + b
        viol += float(np.maximum(np.abs(t1) + np.abs(t2) - total, 0).sum())
        slack = np.maximum(total - np.abs(t1) - np.abs(t2), 0)
        s1, s2 = np.abs(t1) + slack / 2, np.abs(t2) + slack / 2
        return s1, s2, t1, t2, viol
    viol += float(np.maximum(-s1, 0).sum() + np.maximum(-s2, 0).sum())
    if u_fixed and v_fixed:
        viol += float(np.maximum(np.abs(t1) - s1, 0).sum() + np.maximum(np.abs(t2) - s2, 0).sum())
    else:
        fixed = u if u_fixed else v
        viol += float(np.maximum(np.abs(fixed) - (s1 + s2), 0).sum())
        if not u_fixed:  # u free: choose it inside both |u +/- v| bounds
            lo = np.maximum(-2 * s1 - v, -2 * s2 + v)
            hi = np.minimum(2 * s1 - v, 2 * s2 + v)
            u = 0.5 * (lo + hi)
        else:
            lo = np.maximum(-2 * s1 - u, u - 2 * s2)
            hi = np.minimum(2 * s1 - u, u + 2 * s2)
            v = 0.5 * (lo + hi)
        t1, t2 = (u + v) / 2, (u - v) / 2
    return s1, s2, t1, t2, viol


def _violation(params, a, b, c) -> float:
    A, theta = params
    if not 0.0 < A < 1.0:
        return np.inf
    return _block_fit(A, theta, a, b, c)[4]


def _grid_violation(A, thetas, a, b, c) -> np.ndarray:
    """Vectorized violation over ``thetas`` for a fixed A != 1/2 (no axis-aligned angles)."""
    r = np.sqrt(A * (1 - A))
    s1, s2 = _populations(A, a, b)
    base = np.maximum(-s1, 0).sum() + np.maximum(-s2, 0).sum()
    u = c.real / (r * np.cos(thetas))[:, None]
    v = c.imag / (r * np.sin(thetas))[:, None]
    t1, t2 = (u + v) / 2, (u - v) / 2
    return base + (np.maximum(np.abs(t1) - s1, 0) + np.maximum(np.abs(t2) - s2, 0)).sum(axis=1)


def _d_candidates(a, b, c) -> np.ndarray:
    """Values of D = A - B to try.

    D enters s_k, s_~k through Delta_j / D, so s >= 0 needs |D| >= max |Delta_j| / S_j.
    Exact candidates are where some s or both t of a block hit their bounds.
    """
    S, delta = a + b, a - b
    live = S > ZERO_TOL
    dmin = float(np.max(np.abs(delta[live]) / S[live], initial=0.0))
    ds = set(np.abs(delta[live]) / S[live])
    for Sj, dj, cj in zip(S[live], delta[live], c[live]):
        x2, y2 = cj.real**2, cj.imag**2
        if abs(dj) > ZERO_TOL:
            for num, den in ((0.25 - x2 / Sj**2, y2 / dj**2 + 0.25), (0.25 - y2 / Sj**2, x2 / dj**2 + 0.25)):
                if num >= 0:
                    ds.add(np.sqrt(num / den))
    span = 1.0 - dmin
    ds.update(dmin + span * np.concatenate([np.geomspace(1e-9, 1e-2, 40), np.linspace(0.01, 0.99, 99)]))
    ds = np.array(sorted(d for d in ds if dmin - 1e-15 <= d < 1.0 and d > 1e-9))
    return np.concatenate([ds, -ds])


def _half_thetas(a, b, c) -> list[float]:
    """At A = 1/2 feasibility reads 2|Re c_j| <= S_j |cos| and 2|Im c_j| <= S_j |sin|."""
    S = a + b
    live = S > ZERO_TOL
    lo = float(np.max(2 * np.abs(c.real[live]) / S[live], initial=0.0))
    hi2 = 1.0 - float(np.max(2 * np.abs(c.imag[live]) / S[live], initial=0.0)) ** 2
    if lo > 1.0 + FEAS_TOL or hi2 < -FEAS_TOL or lo * lo > hi2 + FEAS_TOL:
        return []
    lo = min(lo, 1.0)
    hi = max(np.sqrt(max(hi2, 0.0)), lo)
    return [float(np.arccos(v)) for v in (lo, hi, 0.5 * (lo + hi))]


def _theta_candidates(A, a, b, c) -> np.ndarray:
    """Angles putting one |t| on its bound: tan(theta) = (Im c / v) / (Re c / u)."""
    s1, s2 = _populations(A, a, b)
    out = []
    for g1, g2 in itertools.product((1, -1), repeat=2):
        su, sv = g1 * s1 + g2 * s2, g1 * s1 - g2 * s2
        ok = (np.abs(c) > ZERO_TOL) & (np.abs(su) > ZERO_TOL) & (np.abs(sv) > ZERO_TOL)
        out.append(np.arctan2(c.imag[ok] / sv[ok], c.real[ok] / su[ok]) % np.pi)
    return np.concatenate(out)


def _certificate(x: XState, A: float, theta: float) -> GeneralizedGhzDiagonalSpec | None:
    s1, s2, t1, t2, viol = _block_fit(A, theta, x.a, x.b, x.c)
    if viol > FEAS_TOL:
        return None
    dim = x.dim
    lp, lm = np.zeros(dim), np.zeros(dim)
    k = np.arange(dim // 2)
    kbar = dim - 1 - k
    lp[k], lm[k] = (s1 + t1) / 2, (s1 - t1) / 2
    lp[kbar], lm[kbar] = (s2 + t2) / 2, (s2 - t2) / 2
    lp, lm = np.clip(lp, 0, None), np.clip(lm, 0, None)
    total = lp.sum() + lm.sum()
    lp, lm = lp / total, lm / total
    alpha = np.sqrt(A)
    beta = np.sqrt(1 - A) * np.exp(-1j * theta)  # alpha beta* = sqrt(AB) e^{i theta}
    try:
        spec = GeneralizedGhzDiagonalSpec(x.n, alpha, beta, lp, lm)
    except ValueError:
        return None
    rebuilt = from_generalized_ghz_diagonal(spec)
    err = max(np.max(np.abs(rebuilt.diag - x.diag)), np.max(np.abs(rebuilt.anti - x.anti)))
    return spec if err <= RECON_TOL else None


def find_certificate(x: XState) -> GeneralizedGhzDiagonalSpec | None:
    """Search (A, arg z) for weights reproducing ``x``; ``None`` if none found."""
    a, b, c = x.a, x.b, x.c
    if not np.any(np.abs(c) > ZERO_TOL):
        dim = x.dim
        lp = np.zeros(dim)
        lp[: dim // 2] = a
        lp[dim // 2 :] = b[::-1]
        return GeneralizedGhzDiagonalSpec(x.n, 1.0, 0.0, lp, np.zeros(dim))
    scored = []
    # A = 1/2 and the real / imaginary axes of z need the scalar path
    special = [(0.5, th) for th in np.linspace(0, np.pi, 180, endpoint=False)]
    special += [(0.5, th) for th in _half_thetas(a, b, c)]
    for d in _d_candidates(a, b, c):
        special += [((1 + d) / 2, 0.0), ((1 + d) / 2, np.pi / 2)]
    for A, th in special:
        v = _violation((A, th), a, b, c)
        if v <= FEAS_TOL and (cert := _certificate(x, A, th)) is not None:
            return cert
        scored.append((v, A, th))
    grid = np.linspace(0, np.pi, 361)[1:-1]
    grid = grid[np.abs(grid - np.pi / 2) > 1e-6]
    for d in _d_candidates(a, b, c):
        A = (1 + d) / 2
        thetas = np.concatenate([grid, _theta_candidates(A, a, b, c)])
        thetas = thetas[(np.abs(np.sin(thetas)) > 1e-12) & (np.abs(np.cos(thetas)) > 1e-12)]
        viol = _grid_violation(A, thetas, a, b, c)
        for i in np.argsort(viol)[:4]:
            if viol[i] <= FEAS_TOL and (cert := _certificate(x, A, thetas[i])) is not None:
                return cert
            scored.append((float(viol[i]), A, float(thetas[i])))
    scored.sort(key=lambda t: t[0])
    for _, A, th in scored[:12]:
        res = minimize(
            _violation, [A, th], args=(a, b, c), method="Nelder-Mead",
            options={"xatol": 1e-14, "fatol": 1e-15, "maxiter": 4000},
        )
        if res.fun <= FEAS_TOL and (cert := _certificate(x, *res.x)) is not None:
            return cert
    return None


def is_generalized_ghz_diagonal(x: XState) -> MembershipReport:
    if x.n not in (2, 3):
        raise ValueError(f"membership check supports n = 2 or 3, got {x.n}")
    ensure_valid(x)
    conds = check_conditions(x)
    has_coherence = bool(np.any(np.abs(x.c) > ZERO_TOL))
    lopsided = np.any((x.a <= ZERO_TOL) != (x.b <= ZERO_TOL))
    if has_coherence and lopsided:
        # some coherence is nonzero, so A, B > 0; then b_j = 0 forces s_k = s_~k = 0
        return MembershipReport(
            "excluded-by-condition-2",
            conds,
            notes=("a nonzero coherence needs alpha, beta != 0, which makes a_j and b_j vanish together",),
        )
    cert = find_certificate(x)
    if cert is not None:
        return MembershipReport(MEMBER, conds, cert)
    return MembershipReport(UNDECIDED, conds, notes=("no (alpha, beta, lambda) found by search",))
