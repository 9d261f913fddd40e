"""Photon generation rate dN/dtau in the principal cavity mode.

The canonical rate for a squeezed coherent driving field is

    dN/dtau = s * <b^dag b> + 2 Re(-eta^2 - xi^2) * Re<b^2> + s * <b b^dag>

with s = -2 eta xi and (xi, eta) the principal-mode closed forms.  The
brackets are exactly the single-mode moments of |alpha, zeta>; for zeta = 0
the expression collapses to the coherent-state rate

    dN/dtau = -4 eta xi |alpha|^2 - 2 eta xi + 2 Re(-eta^2 - xi^2) Re(alpha^2).

Two mode-sum forms are kept as oracles: the per-mode sum over integrated
coefficients (which telescopes to the closed form), and the Fock-weighted
coherent series taken term by term in its literal form.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.special import gammaln

from .mode_coupling import CoefficientTable, closed_form_xi1_eta1
from .quantum_states import SqueezedCoherentParams, match_intensity

__all__ = [
    "RateCurve",
    "DceFigureConfig",
    "moment_brackets",
    "rate_squeezed",
    "rate_coherent",
    "rate_limit_tau0",
    "rate_mode_sum",
    "rate_coherent_fock_series",
    "cumulative_photons",
    "figure_sweep",
]


@dataclass(frozen=True, eq=False)
class RateCurve:
    """Sampled rate for one driving field; ``x`` is tau unless ``x_name`` says otherwise."""

    driving: SqueezedCoherentParams
    x: np.ndarray
    rate: np.ndarray
    label: str
    x_name: str = "tau"

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        rate = np.array(self.rate, dtype=float)
        if x.ndim != 1 or x.shape != rate.shape or len(x) == 0:
            raise ValueError("x and rate must be 1-D arrays of equal, non-zero length")
        if x[0] < 0 or np.any(np.diff(x) <= 0):
            raise ValueError(f"{self.x_name} samples must be non-negative and strictly increasing")
        x.flags.writeable = False
        rate.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "rate", rate)

    @property
    def tau(self) -> np.ndarray:
        return self.x

    @property
    def slug(self) -> str:
        return re.sub(r"[^A-Za-z0-9.]+", "_", self.label).strip("_")


def moment_brackets(params: SqueezedCoherentParams) -> tuple[float, float, float]:
    """(<b^dag b>, Re<b^2>, <b b^dag>) written in mu, nu, alpha as in the rate formula."""
    mu, nu = params.mu, params.nu
    a = params.alpha
    a_abs2 = abs(a) ** 2
    nu_abs2 = abs(nu) ** 2
    cross = (nu.conjugate() * a * a).real
    occupation = mu * mu * a_abs2 - 2.0 * mu * cross + nu_abs2 * a_abs2 + nu_abs2
    pair = (mu * mu * a * a - 2.0 * mu * nu * a_abs2 - mu * nu + nu * nu * a.conjugate() ** 2).real
    anti = a_abs2 * (mu * mu + nu_abs2) - 2.0 * mu * cross + mu * mu
    return occupation, pair, anti


def _rate_from_coeffs(xi, eta, params):
    occupation, pair, anti = moment_brackets(params)
    s = -2.0 * eta * xi
    return s * occupation + 2.0 * (-eta * eta - xi * xi) * pair + s * anti


def rate_squeezed(tau: float, params: SqueezedCoherentParams) -> float:
    """Generation rate for the squeezed coherent state ``params`` at slow time ``tau``."""
    xi, eta = closed_form_xi1_eta1(tau)
    return _rate_from_coeffs(xi, eta, params)


def rate_coherent(tau: float, alpha: complex) -> float:
    """Generation rate for a coherent driving field of amplitude ``alpha``."""
    xi, eta = closed_form_xi1_eta1(tau)
    alpha = complex(alpha)
    return (
        -4.0 * eta * xi * abs(alpha) ** 2
        - 2.0 * eta * xi
        + 2.0 * (-eta * eta - xi * xi) * (alpha * alpha).real
    )


def rate_limit_tau0(params: SqueezedCoherentParams) -> float:
    """tau -> 0 limit: -2 Re(mu^2 a^2 - 2 mu nu |a|^2 - mu nu + nu^2 a*^2)."""
    return -2.0 * moment_brackets(params)[1]


def rate_mode_sum(table: CoefficientTable, params: SqueezedCoherentParams) -> float:
    """Per-mode sum over the integrated coefficients.

    sum_n (2/n) [xi xi' <b^dag b> + Re(xi' eta + xi eta') Re<b^2> + eta eta' <b b^dag>]

    Derivatives come from the recursion right-hand side.  The sum telescopes
    to :func:`rate_squeezed`, so agreement tests both the coefficients and the
    simplification of the sums.
    """
    occupation, pair, anti = moment_brackets(params)
    n = table.n
    dxi, deta = table.derivatives()
    xi, eta = table.xi, table.eta
    terms = (
        (xi * dxi).real * occupation
        + (dxi * eta + xi * deta).real * pair
        + (eta * deta).real * anti
    )
    return float(np.sum(2.0 / n * terms))


def rate_coherent_fock_series(table: CoefficientTable, alpha: complex) -> complex:
    """Fock-weighted coherent-state series, evaluated term by term as stated.

    exp(-|a|^2) sum_n a^(2n)/n! [2 xi^(n) xi'^(n) + 2 (n+1)/n conj(eta^(n)) conj(eta'^(n))]

    Only odd n carry coefficients.  This form mixes the mode label n with the
    Fock index and does not reduce to :func:`rate_coherent` (its tau = 0 value
    is zero, not -2 Re(alpha^2)); it is kept to quantify that discrepancy.
    """
    alpha = complex(alpha)
    n = table.n
    if alpha == 0:
        return 0j
    log_w = -abs(alpha) ** 2 + 2.0 * n * cmath.log(alpha) - gammaln(n + 1)
    weight = np.exp(log_w)
    dxi, deta = table.derivatives()
    terms = 2.0 * table.xi * dxi + 2.0 * (n + 1) / n * np.conj(table.eta) * np.conj(deta)
    return complex(np.sum(weight * terms))


def cumulative_photons(params: SqueezedCoherentParams, tau_end: float, n_samples: int = 201):
    """(tau, N(tau)) by composite Simpson quadrature of the rate, with N(0) = 0."""
    if tau_end <= 0:
        raise ValueError("tau_end must be positive")
    if n_samples < 2:
        raise ValueError("need at least two samples")
    tau = np.linspace(0.0, tau_end, n_samples)
    rate = np.array([rate_squeezed(t, params) for t in tau])
    return tau, cumulative_simpson(rate, x=tau, initial=0.0)


@dataclass(frozen=True)
class DceFigureConfig:
    tau_max: float = 1.0
    samples: int = 101
    zetas: tuple = (0.8, 1.0, 1.2, 1.5)
    target_n: float = 7.0
    zeta_phase: float = 0.0
    alpha_phase: float = 0.0
    fig2_alphas: tuple = (0.2, 0.8, 2.0, math.sqrt(7.0))
    fig2_zeta_max: float = 2.0
    fig2_points: int = 101
    fig3_alpha: float = math.sqrt(7.0)


def _tau_curve(params, label, tau):
    return RateCurve(params, tau, [rate_squeezed(t, params) for t in tau], label)


def figure_sweep(fig: int, config: DceFigureConfig | None = None) -> list[RateCurve]:
    """Rate curves behind one of the four cavity figures.

    1: coherent <n> = target vs intensity-matched squeezed states
    2: tau -> 0 rate against |zeta| for fixed real alphas
    3: fixed real alpha, coherent and squeezed
    4: vacuum and squeezed vacua
    """
    cfg = config or DceFigureConfig()
    tau = np.linspace(0.0, cfg.tau_max, cfg.samples)
    if fig == 1:
        coh = SqueezedCoherentParams(cmath.rect(math.sqrt(cfg.target_n), cfg.alpha_phase))
        curves = [_tau_curve(coh, f"coherent |alpha|^2={cfg.target_n:g}", tau)]
        for z in cfg.zetas:
            p = match_intensity(z, cfg.zeta_phase, cfg.alpha_phase, cfg.target_n)
            curves.append(_tau_curve(p, f"squeezed |zeta|={z:g} <n>={cfg.target_n:g}", tau))
        return curves
    if fig == 2:
        zgrid = np.linspace(0.0, cfg.fig2_zeta_max, cfg.fig2_points)
        curves = []
        for a in cfg.fig2_alphas:
            rates = [rate_limit_tau0(SqueezedCoherentParams(a, z, cfg.zeta_phase)) for z in zgrid]
            curves.append(RateCurve(SqueezedCoherentParams(a), zgrid, rates, f"tau0 alpha={a:.6g}", "zeta"))
        return curves
    if fig == 3:
        a = cfg.fig3_alpha
        curves = [_tau_curve(SqueezedCoherentParams(a), f"coherent alpha={a:.6g}", tau)]
        for z in cfg.zetas:
            p = SqueezedCoherentParams(a, z, cfg.zeta_phase)
            curves.append(_tau_curve(p, f"squeezed |zeta|={z:g} alpha={a:.6g}", tau))
        return curves
    if fig == 4:
        curves = [_tau_curve(SqueezedCoherentParams(), "vacuum", tau)]
        for z in cfg.zetas:
            p = SqueezedCoherentParams(0j, z, cfg.zeta_phase)
            curves.append(_tau_curve(p, f"squeezed vacuum |zeta|={z:g}", tau))
        return curves
    raise ValueError(f"no cavity figure {fig}; choose 1, 2, 3 or 4")
