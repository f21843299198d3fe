"""Acceptance criteria, one test each, at their stated tolerances.

Every test records a PASS/FAIL line in ``RESULTS``; conftest prints them at
the end of the run. ``python tests/test_acceptance.py`` prints them directly.
"""

import time

import numpy as np
from scipy.optimize import brentq

from xent import concurrence, esd, membership, oracle, spectra
from xent.channels import DEPHASING, DEPOLARIZING, Channel, apply_kraus_dense, dephase, depolarize3
from xent.figures import FIG3_EPSILONS, fig1, fig2, fig3
from xent.xcore import (
    GeneralizedGhzDiagonalSpec,
    GhzTypeSpec,
    XState,
    counterexample_state,
    from_generalized_ghz_diagonal,
    from_ghz_types,
    random_xstate,
    validate,
)

RESULTS: list[str] = []


def record(number, title, checks):
    """``checks`` is a list of (label, ok, detail); logs one line then asserts."""
    ok = all(c[1] for c in checks)
    detail = "; ".join(f"{label}: {d}" + ("" if good else " [FAIL]") for label, good, d in checks)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number} ({title}) {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _single_ghz(a, c, k=1):
    return from_ghz_types([GhzTypeSpec(3, k, a, 1 - a, c)], [1.0])


def test_criterion_1_fig1_dephasing():
    t0 = time.perf_counter()
    x = fig1()
    crossing = esd.esd_dephasing(x, 3).dies_at
    grid = np.linspace(0, 1, 1000, endpoint=False)
    mins = np.array([[spectra.min_pt_eigenvalue(dephase(x, p), q) for q in (1, 2)] for p in grid])
    elapsed = time.perf_counter() - t0
    record(1, "fig1 dephasing", [
        ("qubit-3 crossing", abs(crossing - 0.366) <= 1e-3, f"{crossing:.6f} vs 0.366 +/- 0.001"),
        ("qubits 1,2 negative", bool(np.all(mins < 0)), f"max {mins.max():.3e} on 1000 points"),
        ("runtime", elapsed < 1.0, f"{elapsed:.3f}s < 1s"),
    ])


def test_criterion_2_fig2_depolarizing():
    t0 = time.perf_counter()
    x = fig2()
    q2 = esd.esd_depolarizing(x, 2).dies_at
    q3 = esd.esd_depolarizing(x, 3).dies_at
    grid = np.linspace(0, 1, 1001)
    states = [depolarize3(x, p) for p in grid]
    q1 = np.array([spectra.min_pt_eigenvalue(s, 1) for s in states])
    n3 = np.sign([spectra.negativities(s).tri_partite for s in states])
    pattern = [int(n3[0])] + [int(v) for prev, v in zip(n3, n3[1:]) if v != prev]
    elapsed = time.perf_counter() - t0
    record(2, "fig2 depolarizing", [
        ("qubit-2 crossing", q2 is not None and abs(q2 - 0.0585) <= 5e-4, f"{q2:.6f} vs 0.0585 +/- 0.0005"),
        ("qubit-3 crossing", q3 is not None and abs(q3 - 0.0317) <= 5e-4, f"{q3:.6f} vs 0.0317 +/- 0.0005"),
        ("qubit-1 positive", bool(np.all(q1 > 0)), f"min {q1.min():.3e}"),
        ("N3 pattern", pattern == [1, -1, 1], f"{pattern} with {len(pattern) - 1} sign changes"),
        ("runtime", elapsed < 2.0, f"{elapsed:.3f}s < 2s"),
    ])


def test_criterion_3_closed_form_vs_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    states = [random_xstate(3, rng) for _ in range(500)]
    ps = np.linspace(0, 1, 21)
    wit = np.stack([oracle.ghz_witness(3, k) for k in range(1, 5)])
    pt_err = w_err = anti_err = zero_max = 0.0
    for kind in (DEPHASING, DEPOLARIZING):
        chans = [Channel(kind, p) for p in ps]
        evolved = [ch.apply(x) for x in states for ch in chans]
        dense = np.stack([y.to_dense() for y in evolved])
        for q in (1, 2, 3):
            ref = np.linalg.eigvalsh(oracle.partial_transpose_dense(dense, q))
            closed = np.stack([spectra.pt_spectrum(y, q).eigenvalues for y in evolved])
            pt_err = max(pt_err, np.max(np.abs(closed - ref)))
        ref = np.einsum("kij,sji->sk", wit, dense).real
        closed = np.array([[esd.witness_expectation(x, k, ch) for k in range(1, 5)] for x in states for ch in chans])
        w_err = max(w_err, np.max(np.abs(closed - ref)))
        terms = concurrence.concurrence_terms_dense(dense)
        closed_terms = [concurrence.concurrence_terms(y).terms for y in evolved]
        for key, col in terms.items():
            if key in concurrence.BLOCK_PAIRS:
                anti_err = max(anti_err, np.max(np.abs(np.array([t[key] for t in closed_terms]) - col)))
            else:
                zero_max = max(zero_max, np.max(np.abs(col)))
    elapsed = time.perf_counter() - t0
    record(3, "closed form vs oracle", [
        ("pt eigenvalues", pt_err <= 1e-10, f"{pt_err:.2e} <= 1e-10"),
        ("witness", w_err <= 1e-10, f"{w_err:.2e} <= 1e-10"),
        ("six concurrence terms", anti_err <= 1e-10, f"{anti_err:.2e} <= 1e-10"),
        ("twelve excluded terms", zero_max <= 1e-10, f"{zero_max:.2e} <= 1e-10"),
        ("runtime", elapsed < 60.0, f"{elapsed:.1f}s < 60s"),
    ])


def test_criterion_4_channel_equivalence():
    rng = np.random.default_rng(99)
    ps = np.linspace(0, 1, 21)
    deph = 0.0
    for n in (2, 3, 4):
        for _ in range(10):
            x = random_xstate(n, rng)
            for p in ps:
                ch = Channel(DEPHASING, p)
                deph = max(deph, np.max(np.abs(ch.apply(x).to_dense() - apply_kraus_dense(x.to_dense(), ch))))
    depol = 0.0
    for _ in range(20):
        x = random_xstate(3, rng)
        for p in ps:
            ch = Channel(DEPOLARIZING, p)
            depol = max(depol, np.max(np.abs(ch.apply(x).to_dense() - apply_kraus_dense(x.to_dense(), ch))))
    # every population mixed alone, which pins down the partner pairing
    mix = 0.0
    for j in range(8):
        diag = np.zeros(8)
        diag[j] = 1.0
        x = XState(diag, np.zeros(4))
        for p in ps:
            ch = Channel(DEPOLARIZING, p)
            mix = max(mix, np.max(np.abs(ch.apply(x).to_dense() - apply_kraus_dense(x.to_dense(), ch))))
    record(4, "channel equivalence", [
        ("dephasing n=2,3,4", deph <= 1e-12, f"{deph:.2e} <= 1e-12"),
        ("depolarizing n=3", depol <= 1e-12, f"{depol:.2e} <= 1e-12"),
        ("diagonal mixing rule", mix <= 1e-12, f"{mix:.2e} <= 1e-12"),
    ])


def test_criterion_5_witness_thresholds():
    x = _single_ghz(0.5, 0.5)
    got = esd.witness_threshold_dephasing(x, 1)
    stated = 1 - 2 ** (-1 / 3)
    rng = np.random.default_rng(5)
    residual, hits = 0.0, 0
    for _ in range(300):
        k0 = int(rng.integers(1, 5))
        w = rng.uniform(0.6, 1.0)
        y = random_xstate(3, rng)
        g = _single_ghz(0.5, 0.5, k0)
        s = XState(w * g.diag + (1 - w) * y.diag, w * g.anti + (1 - w) * y.anti)
        for k in range(1, 5):
            p = esd.witness_threshold_dephasing(s, k)
            if p is not None:
                hits += 1
                residual = max(residual, abs(esd.witness_expectation(s, k, Channel(DEPHASING, p))))
    record(5, "witness thresholds", [
        ("|c|=1/2 threshold", got is not None and abs(got - stated) <= 1e-12, f"{got:.12f} vs 1-2^(-1/3) = {stated:.12f}"),
        ("general formula zeroes expectation", hits > 0 and residual <= 1e-12, f"{residual:.2e} <= 1e-12 over {hits} thresholds"),
    ])


def _depolarizing_zero(c):
    """First p where tau_3 of the depolarized (1/2, 1/2, c) state is exactly zero."""
    x = _single_ghz(0.5, c)
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if concurrence.tau3(depolarize3(x, mid)) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    return hi


def test_criterion_6_tau3():
    grid = np.linspace(0, 0.999, 1000)
    positive, limit = True, 0.0
    for a, c in ((0.5, 0.5), (0.5, 0.1), (0.3, 0.2), (0.8, 0.05j), (0.6, -0.4)):
        x = _single_ghz(a, c)
        vals = [concurrence.tau3(dephase(x, p)) for p in grid]
        positive &= min(vals) > 0
        limit = max(limit, concurrence.tau3(dephase(x, 1 - 1e-12)), concurrence.tau3(dephase(x, 1.0)))
    zero_err = 0.0
    for c in (0.5, 0.4, 0.3):
        poly = lambda p, c=c: p * (p - 2) + 8 * c * (1 - p) ** 3  # noqa: E731
        root = brentq(poly, 1e-9, 1.0, xtol=1e-15)
        zero_err = max(zero_err, abs(_depolarizing_zero(c) - root))
    clean = min(concurrence.tau3(dephase(fig3(0.0), p)) for p in grid)
    dirty = [min(concurrence.tau3(dephase(fig3(e), p)) for p in grid) for e in FIG3_EPSILONS[1:]]
    record(6, "tau3 properties", [
        ("dephasing single GHZ positive to p=0.999", positive, "all five states"),
        ("dephasing limit p->1", limit <= 1e-9, f"max {limit:.1e}"),
        ("depolarizing zero", zero_err <= 1e-6, f"{zero_err:.2e} <= 1e-6 from independent root"),
        ("fig3 eps=0 never zero", clean > 0, f"min {clean:.3e}"),
        ("fig3 eps>0 reaches zero", all(d == 0.0 for d in dirty), f"minima {dirty}"),
    ])


def test_criterion_7_membership():
    rho_c = counterexample_state(1 / 3, 1 / 3, 1 / 3, 0.25, np.pi / 4)
    rep = membership.is_generalized_ghz_diagonal(rho_c)
    rng = np.random.default_rng(77)
    failures = 0
    total = 0
    for n in (2, 3):
        dim = 1 << n
        for i in range(30):
            A = 0.5 if i % 6 == 0 else rng.uniform(0.02, 0.98)
            alpha = np.sqrt(A) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            beta = np.sqrt(1 - A) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            if i % 5 == 0:
                w = np.zeros(2 * dim)
                w[rng.integers(2 * dim)] = 1.0
            else:
                w = rng.dirichlet(np.ones(2 * dim))
                if i % 3 == 0:
                    w[rng.random(2 * dim) < 0.4] = 0.0
                    w = w / w.sum() if w.sum() > 0 else np.eye(2 * dim)[0]
            spec = GeneralizedGhzDiagonalSpec(n, alpha, beta, w[:dim], w[dim:])
            total += 1
            failures += not membership.is_generalized_ghz_diagonal(from_generalized_ghz_diagonal(spec)).is_member
    record(7, "generalized GHZ-diagonal membership", [
        ("counterexample valid", validate(rho_c).ok, "density matrix"),
        ("counterexample excluded", rep.excluded and rep.violated == (1, 2, 3), f"{rep.status}, violated {rep.violated}"),
        ("constructor outputs", failures == 0, f"{total - failures}/{total} members"),
    ])


def test_criterion_8_scaling():
    rng = np.random.default_rng(8)
    err = 0.0
    cases = [random_xstate(4, rng) for _ in range(200)] + [random_xstate(5, rng)]
    for x in cases:
        err = max(err, np.max(np.abs(spectra.eigenvalues(x) - np.linalg.eigvalsh(x.to_dense()))))
    shape = 0.0
    for n in (1, 2, 3, 4, 5):
        x = random_xstate(n, rng)
        for q in range(1, n + 1):
            shape = max(shape, oracle.x_pattern_residual(oracle.partial_transpose_dense(x.to_dense(), q)))
    record(8, "n-qubit scaling", [
        ("blockwise eigenvalues n=4,5", err <= 1e-10, f"{err:.2e} <= 1e-10"),
        ("pt stays X-shaped n=1..5", shape == 0.0, f"off-X max {shape:.1e}"),
    ])


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
