"""Exit criteria, one test (or a few sub-tests) per numbered criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.  Tolerances are the stated ones and are not
to be loosened here.
"""

import cmath
import math
import sys
import time

import numpy as np
import pytest

from casimir_kerr import absorption as ab
from casimir_kerr import dce_rates as dr
from casimir_kerr.cli import main
from casimir_kerr.mode_coupling import closed_form_xi1_eta1, integrate_recursion, sum_identities
from casimir_kerr.quantum_states import (
    MOMENT_TAIL_TOL,
    SqueezedCoherentParams,
    build_fock_state,
    build_fock_state_auto,
    creation_moment2,
    creation_moment3,
    fock_moment,
    mean_photon_number,
)
from casimir_kerr.verify import ORACLE_GRID, check_absorption

P = SqueezedCoherentParams
TAUS = (0.1, 0.25, 0.5, 0.75, 1.0)
ZETAS = (0.8, 1.0, 1.2, 1.5)


@pytest.fixture(scope="module")
def recursion():
    t0 = time.perf_counter()
    tables = integrate_recursion(1.0, 201, 1e-4, TAUS)
    return tables, time.perf_counter() - t0


def grid_states():
    for z in ORACLE_GRID["zeta"]:
        for phi in ORACLE_GRID["phi"]:
            for a2 in ORACLE_GRID["alpha2"]:
                for arg in ORACLE_GRID["alpha_arg"]:
                    yield P(cmath.rect(math.sqrt(a2), arg), z, phi)


def moment_errors(state, p):
    return (
        abs(fock_moment(state, 1, 1) - mean_photon_number(p)),
        abs(fock_moment(state, 2, 0) - creation_moment2(p)),
        abs(fock_moment(state, 3, 0) - creation_moment3(p)),
    )


@pytest.fixture(scope="module")
def moment_sweep():
    t0 = time.perf_counter()
    worst, dims = 0.0, []
    for p in grid_states():
        state = build_fock_state_auto(p, 64, MOMENT_TAIL_TOL)
        dims.append(state.dim)
        worst = max(worst, *moment_errors(state, p))
    return worst, max(dims), time.perf_counter() - t0


@pytest.fixture(scope="module")
def fig5():
    return ab.figure5_sweep(ab.Fig5Config())


# 1 ---------------------------------------------------------------------------

@pytest.mark.acceptance(1)
def test_c1_closed_form_matches_recursion(recursion):
    tables, seconds = recursion
    worst = 0.0
    for t in tables:
        xi, eta = closed_form_xi1_eta1(t.tau)
        worst = max(worst, abs(t.xi[0] - xi) / abs(xi), abs(t.eta[0] - eta) / abs(eta))
    print(f"criterion 1: max relative error {worst:.3e}, integration {seconds:.2f} s")
    assert worst <= 1e-5
    assert seconds <= 10.0


# 2 ---------------------------------------------------------------------------

@pytest.mark.acceptance(2)
def test_c2_sum_identities(recursion):
    tables, _ = recursion
    worst = max(max(sum_identities(t).residuals()) for t in tables)
    print(f"criterion 2: max residual {worst:.3e}")
    assert worst <= 1e-4


# 3 ---------------------------------------------------------------------------

@pytest.mark.acceptance(3)
@pytest.mark.parametrize("zeta", ZETAS)
def test_c3_squeezed_vacuum_initial_rate(zeta):
    assert abs(dr.rate_squeezed(0.0, P(0, zeta, 0.0)) - math.sinh(2 * zeta)) <= 1e-10


# 4 ---------------------------------------------------------------------------

@pytest.mark.acceptance(4)
@pytest.mark.parametrize("alpha", [0.0, 1.0, math.sqrt(7), cmath.rect(math.sqrt(7), 0.7), 2j])
def test_c4_reduction_identity(alpha):
    for tau in np.linspace(0.0, 1.0, 100):
        assert abs(dr.rate_squeezed(tau, P(alpha)) - dr.rate_coherent(tau, alpha)) <= 1e-12


# 5 ---------------------------------------------------------------------------

@pytest.mark.acceptance(5)
@pytest.mark.parametrize("alpha", [0.2, 0.8, 2.0, math.sqrt(7)])
def test_c5_coherent_initial_rate(alpha):
    assert abs(dr.rate_coherent(0.0, alpha) + 2 * alpha ** 2) <= 1e-12


@pytest.mark.acceptance(5)
@pytest.mark.parametrize("alpha", [0.2, 0.8, 2.0, math.sqrt(7)])
def test_c5_limit_monotone_in_zeta(alpha):
    rates = np.array([dr.rate_limit_tau0(P(alpha, z)) for z in np.linspace(0, 2, 100)])
    steps = np.diff(rates)
    assert np.all(steps > 0) or np.all(steps < 0)


# 6 ---------------------------------------------------------------------------

@pytest.mark.acceptance(6)
def test_c6_moment_oracle_accuracy(moment_sweep):
    worst, max_dim, seconds = moment_sweep
    print(f"criterion 6: max abs error {worst:.3e} over 90 states, largest dim {max_dim}, {seconds:.1f} s")
    assert worst <= 1e-8


@pytest.mark.acceptance(6)
def test_c6_moment_oracle_runtime(moment_sweep):
    assert moment_sweep[2] <= 20.0


@pytest.mark.acceptance(6)
def test_c6_moment_oracle_within_dim_512():
    # every grid state evaluated with at most 512 number states
    worst = 0.0
    for p in grid_states():
        state = build_fock_state(p, 512, tail_tol=1.0)
        worst = max(worst, *moment_errors(state, p))
    print(f"criterion 6: max abs error with dim capped at 512: {worst:.3e}")
    assert worst <= 1e-8


# 7 ---------------------------------------------------------------------------

@pytest.mark.acceptance(7)
def test_c7_fock_weighted_series_matches_closed_form(recursion):
    tables, _ = recursion
    alpha = math.sqrt(7)
    worst = 0.0
    for t in tables:
        ref = dr.rate_coherent(t.tau, alpha)
        worst = max(worst, abs(dr.rate_coherent_fock_series(t, alpha) - ref) / abs(ref))
    print(f"criterion 7: Fock-weighted series max relative deviation {worst:.3e}")
    assert worst <= 1e-3


@pytest.mark.acceptance(7)
def test_c7_mode_sum_matches_closed_form(recursion):
    tables, _ = recursion
    worst = 0.0
    for t in tables:
        p = P(math.sqrt(7))
        ref = dr.rate_coherent(t.tau, p.alpha)
        worst = max(worst, abs(dr.rate_mode_sum(t, p) - ref) / abs(ref))
    print(f"criterion 7: per-mode sum max relative deviation {worst:.3e}")
    assert worst <= 1e-3


# 8 ---------------------------------------------------------------------------

@pytest.mark.acceptance(8)
@pytest.mark.parametrize("alpha", [math.sqrt(7), cmath.rect(math.sqrt(7), 1.1), 0.3j])
def test_c8_quantum_equals_semiclassical(fig5, alpha):
    cfg = ab.Fig5Config()
    ladder = ab.AtomicLadder(omega_lg=cfg.omega_lg, gamma=cfg.gamma)
    coupling = ab.CouplingSet(cfg.dipole, cfg.dipole, cfg.dipole, cfg.coupling_rate / cfg.dipole)
    omega = fig5[0].omega
    q = ab.rate_three_photon_quantum(omega, ladder, coupling, creation_moment3(P(alpha)))
    field = 1j * ab.HBAR * np.conj(coupling.F) * np.conj(alpha)
    s = ab.rate_three_photon_semiclassical(omega, ladder, coupling, field)
    assert np.max(np.abs(q - s) / q) <= 1e-12


# 9 ---------------------------------------------------------------------------

@pytest.mark.acceptance(9)
def test_c9_rate_ordering_in_zeta():
    curves = dr.figure_sweep(1, dr.DceFigureConfig(samples=5))
    assert curves[0].tau[1:].tolist() == [0.25, 0.5, 0.75, 1.0]
    for i in range(1, 5):
        coherent = curves[0].rate[i]
        squeezed = [c.rate[i] for c in curves[1:]]
        assert np.all(np.diff(squeezed) > 0), f"tau={curves[0].tau[i]}: {squeezed}"
        assert min(squeezed) > coherent


# 10 --------------------------------------------------------------------------

@pytest.mark.acceptance(10)
def test_c10_peaks_at_resonance(fig5):
    step = fig5[0].omega[1] - fig5[0].omega[0]
    resonance = ab.AtomicLadder(omega_lg=ab.Fig5Config().omega_lg).resonance
    for s in fig5:
        assert abs(s.peak_omega - resonance) <= step


@pytest.mark.acceptance(10)
def test_c10_normalized_top_peak_is_one(fig5):
    top = [s for s in fig5 if s.params.zeta_mag == 1.5][0]
    assert top.rate_normalized.max() == 1.0


@pytest.mark.acceptance(10)
def test_c10_peaks_strictly_increase_with_zeta(fig5):
    peaks = [s.rate_normalized.max() for s in fig5]
    print("criterion 10: normalized peaks " + ", ".join(f"{p:.4f}" for p in peaks))
    assert np.all(np.diff(peaks) > 0)


@pytest.mark.acceptance(10)
def test_c10_coherent_peak_lowest(fig5):
    assert all(s.peak > fig5[0].peak for s in fig5[1:])


@pytest.mark.acceptance(10)
def test_c10_ratio_recorded_in_report():
    info = {r.name: r for r in check_absorption()}
    anchor = info["fig5_peak_ratio_1.5_over_coherent"]
    assert anchor.status == "INFO" and anchor.error > 1


# 11 --------------------------------------------------------------------------

@pytest.mark.acceptance(11)
def test_c11_verify_suite(capsys):
    t0 = time.perf_counter()
    code = main(["verify"])
    seconds = time.perf_counter() - t0
    out = capsys.readouterr().out
    with capsys.disabled():
        print(f"\ncriterion 11: verify exit {code} in {seconds:.1f} s")
    assert code == 0, out
    assert seconds < 60.0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
