import numpy as np
import pytest

from xent import oracle, spectra
from xent.channels import dephase, depolarize3
from xent.figures import fig2
from xent.xcore import XState, ghz_state, maximally_mixed, random_xstate


@pytest.mark.parametrize("n", [2, 3, 4])
def test_blockwise_spectrum_500_random(n, rng):
    states = [random_xstate(n, rng) for _ in range(500)]
    dense = oracle.hermitian_eigenvalues(np.stack([x.to_dense() for x in states]))
    closed = np.stack([spectra.eigenvalues(x) for x in states])
    assert np.max(np.abs(closed - dense)) <= 1e-10


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pt_spectrum_500_random(n, rng):
    states = [random_xstate(n, rng) for _ in range(500)]
    dense = np.stack([x.to_dense() for x in states])
    for q in range(1, n + 1):
        ref = oracle.hermitian_eigenvalues(oracle.partial_transpose_dense(dense, q))
        closed = np.stack([spectra.pt_spectrum(x, q).eigenvalues for x in states])
        assert np.max(np.abs(closed - ref)) <= 1e-10


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_partial_transpose_matches_dense_and_stays_x(n, rng):
    x = random_xstate(n, rng)
    for q in range(1, n + 1):
        pt = spectra.partial_transpose(x, q).to_dense()
        ref = oracle.partial_transpose_dense(x.to_dense(), q)
        assert np.array_equal(pt, ref)
        assert oracle.x_pattern_residual(ref) == 0.0


def test_pt_partners_three_qubits():
    assert list(spectra.pt_partners(3, 1)) == [4, 3, 2, 1]
    assert list(spectra.pt_partners(3, 2)) == [3, 4, 1, 2]
    assert list(spectra.pt_partners(3, 3)) == [2, 1, 4, 3]


def test_pt_eigenvalue_formula_uses_partner_coherence():
    x = fig2()
    for q in (1, 2, 3):
        spec = spectra.pt_spectrum(x, q)
        for j0, i in enumerate(spec.partners):
            a, b, c = x.a[j0], x.b[j0], abs(x.c[i - 1])
            lo = 0.5 * (a + b - np.sqrt((a - b) ** 2 + 4 * c * c))
            assert spec.blocks[j0, 0] == pytest.approx(lo, abs=1e-15)


def test_ghz_pt_has_one_negative_eigenvalue_per_qubit():
    x = ghz_state(3)
    for q in (1, 2, 3):
        w = spectra.pt_spectrum(x, q).eigenvalues
        assert np.sum(w < -1e-12) == 1
        assert w[0] == pytest.approx(-abs(x.c[0]))


def test_maximally_mixed_has_flat_pt_spectrum():
    for n in (2, 3, 4):
        x = maximally_mixed(n)
        for q in range(1, n + 1):
            assert np.allclose(spectra.pt_spectrum(x, q).eigenvalues, 1 / 2**n)


def test_negativities_and_tripartite_sign():
    x = ghz_state(3)
    neg = spectra.negativities(x)
    assert neg.per_qubit == pytest.approx((-0.5, -0.5, -0.5))
    assert neg.tri_partite == pytest.approx(-0.5)
    assert neg.standard == pytest.approx((0.5, 0.5, 0.5))
    assert spectra.negativities(random_xstate(4, np.random.default_rng(0))).tri_partite is None


def test_tripartite_matches_dense(rng):
    for _ in range(50):
        x = random_xstate(3, rng)
        rho = x.to_dense()
        per = [np.linalg.eigvalsh(oracle.partial_transpose_dense(rho, q)).min() for q in (1, 2, 3)]
        assert spectra.negativities(x).tri_partite == pytest.approx(np.cbrt(np.prod(per)), abs=1e-10)


def test_signed_cbrt():
    assert spectra.signed_cbrt(-8.0) == pytest.approx(-2.0)
    assert spectra.signed_cbrt(27.0) == pytest.approx(3.0)


def test_pt_after_channels_matches_dense(rng):
    x = random_xstate(3, rng)
    for y in (dephase(x, 0.37), depolarize3(x, 0.21)):
        rho = y.to_dense()
        for q in (1, 2, 3):
            ref = np.linalg.eigvalsh(oracle.partial_transpose_dense(rho, q))
            assert np.max(np.abs(spectra.pt_spectrum(y, q).eigenvalues - ref)) <= 1e-12


def test_qubit_range_checked():
    with pytest.raises(ValueError):
        spectra.pt_spectrum(XState.from_blocks([1.0], [0.0], [0.0]), 2)


def test_single_ghz_negativity_under_dephasing():
    from xent.xcore import GhzTypeSpec, from_ghz_types

    for k, a, c in ((1, 0.5, 0.5), (2, 0.3, 0.4j), (4, 0.8, -0.2)):
        x = from_ghz_types([GhzTypeSpec(3, k, a, 1 - a, c)], [1.0])
        for p in np.linspace(0, 1, 21):
            neg = spectra.negativities(dephase(x, p))
            for q in (1, 2, 3):
                assert neg.per_qubit[q - 1] == pytest.approx(-abs(c) * (1 - p) ** 1.5, abs=1e-12)


def test_negative_branch_monotone_under_dephasing(rng):
    ps = np.linspace(0, 1, 101)
    for _ in range(30):
        x = random_xstate(3, rng)
        for q in (1, 2, 3):
            lows = np.array([spectra.pt_spectrum(dephase(x, p), q).blocks[:, 0] for p in ps])
            assert np.all(np.diff(lows, axis=0) >= -1e-15)


def test_pt_eigenvalues_sum_to_one(rng):
    for n in (2, 3, 4):
        x = random_xstate(n, rng)
        for q in range(1, n + 1):
            assert abs(spectra.pt_spectrum(x, q).eigenvalues.sum() - 1) <= 1e-12
