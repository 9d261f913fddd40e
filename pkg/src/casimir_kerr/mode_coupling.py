"""Bogoliubov coefficients of the principal mode for a resonantly shaken cavity.

The wall moves as L(t) = L0 [1 + eps sin(2 w1 t)] with w1 = pi / L0 (c = 1).
On the slow time tau = eps w1 t / 2 the coefficients xi^(n)(tau), eta^(n)(tau)
(odd n only) obey the coupled first-order system

    d xi^(1)/dtau  = -eta^(1) - xi^(3)
    d eta^(1)/dtau = -xi^(1)  - eta^(3)
    d xi^(n)/dtau  = n (xi^(n-2)  - xi^(n+2)),   n >= 3
    d eta^(n)/dtau = n (eta^(n-2) - eta^(n+2)),  n >= 3

starting from xi^(1) = 1 and everything else zero.  This module integrates
that system with fixed-step RK4 and, independently, evaluates the n = 1
closed forms in terms of complete elliptic integrals.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .elliptic import ellip_ke, modulus_from_tau
from .exceptions import DomainError, UnsupportedModeError

__all__ = [
    "WallMotion",
    "CoefficientTable",
    "SumIdentities",
    "slow_time",
    "time_from_slow",
    "closed_form_xi1_eta1",
    "recursion_rhs",
    "initial_table",
    "integrate_recursion",
    "bogoliubov_coeffs",
    "sum_identities",
]

# |tau| below which eta^(1) is taken from its Taylor series (0/0 in the closed form)
_ETA_SERIES_TAU = 1e-3
MAX_DTAU = 0.01


@dataclass(frozen=True)
class WallMotion:
    """Cavity of rest length ``L0`` whose wall oscillates with depth ``eps``."""

    L0: float
    eps: float

    def __post_init__(self):
        if self.L0 <= 0:
            raise DomainError(f"cavity length must be positive, got {self.L0}")
        if not 0 < self.eps <= 0.1:
            raise DomainError(f"modulation depth must lie in (0, 0.1], got {self.eps}")
        if self.eps > 0.01:
            warnings.warn(
                f"modulation depth {self.eps} > 0.01; the slow-time description assumes eps << 1",
                stacklevel=2,
            )

    @property
    def omega1(self) -> float:
        return math.pi / self.L0

    def length(self, t):
        return self.L0 * (1.0 + self.eps * np.sin(2.0 * self.omega1 * t))


def slow_time(t, wall: WallMotion):
    """tau = eps * w1 * t / 2."""
    if np.any(np.asarray(t) < 0):
        raise DomainError("laboratory time must be >= 0")
    return 0.5 * wall.eps * wall.omega1 * t


def time_from_slow(tau, wall: WallMotion):
    """Inverse of :func:`slow_time`."""
    return 2.0 * tau / (wall.eps * wall.omega1)


def closed_form_xi1_eta1(tau: float) -> tuple[float, float]:
    """Principal-mode coefficients (xi^(1), eta^(1)) from elliptic integrals.

    xi  =  (2/pi) (E + k' K) / (1 + k')
    eta = -(2/pi) (E - k' K) / (1 - k')

    with k' = exp(-4 tau).  For tau < 1e-3 the removable singularity of eta
    is bypassed with its odd Taylor series -tau + 5 tau^3/6 - 53 tau^5/60.
    """
    mod = modulus_from_tau(tau)
    big_k, big_e = ellip_ke(mod.k, mod.k_comp)
    kc = mod.k_comp
    xi = (2.0 / math.pi) * (big_e + kc * big_k) / (1.0 + kc)
    if tau < _ETA_SERIES_TAU:
        t2 = tau * tau
        eta = -tau * (1.0 + t2 * (-5.0 / 6.0 + t2 * 53.0 / 60.0))
    else:
        eta = -(2.0 / math.pi) * (big_e - kc * big_k) / (-math.expm1(-4.0 * tau))
    return xi, eta


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """Snapshot of xi^(n), eta^(n) for odd n = 1, 3, ..., n_max at slow time tau."""

    tau: float
    n_max: int
    xi: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        xi = np.array(self.xi, dtype=complex)
        eta = np.array(self.eta, dtype=complex)
        if xi.shape != (len(self.n),) or eta.shape != xi.shape:
            raise ValueError(f"expected {len(self.n)} odd-index entries, got {xi.shape} and {eta.shape}")
        xi.flags.writeable = False
        eta.flags.writeable = False
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eta", eta)

    @property
    def n(self) -> np.ndarray:
        """Odd mode indices the table covers."""
        return np.arange(1, self.n_max + 1, 2)

    def index(self, n: int) -> int:
        if n < 1 or n > self.n_max:
            raise IndexError(f"mode index {n} outside 1..{self.n_max}")
        return (n - 1) // 2

    def derivatives(self) -> tuple[np.ndarray, np.ndarray]:
        """(d xi/dtau, d eta/dtau) from the recursion right-hand side."""
        return recursion_rhs(self.xi, self.eta)


def _check_n_max(n_max):
    if n_max < 5 or n_max % 2 == 0:
        raise DomainError(f"n_max must be an odd integer >= 5, got {n_max}")


def recursion_rhs(xi: np.ndarray, eta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Right-hand side of the truncated odd-n system; entries past n_max are zero."""
    n = np.arange(1, 2 * len(xi), 2)
    dxi = np.empty_like(xi)
    deta = np.empty_like(eta)
    dxi[1:-1] = n[1:-1] * (xi[:-2] - xi[2:])
    deta[1:-1] = n[1:-1] * (eta[:-2] - eta[2:])
    dxi[-1] = n[-1] * xi[-2]
    deta[-1] = n[-1] * eta[-2]
    dxi[0] = -eta[0] - xi[1]
    deta[0] = -xi[0] - eta[1]
    return dxi, deta


def initial_table(n_max: int) -> CoefficientTable:
    """Identity transformation at tau = 0: xi^(1) = 1, all else zero."""
    _check_n_max(n_max)
    size = (n_max + 1) // 2
    xi = np.zeros(size, dtype=complex)
    xi[0] = 1.0
    return CoefficientTable(0.0, n_max, xi, np.zeros(size, dtype=complex))


def _rk4_segment(xi, eta, span, dtau):
    steps = max(1, math.ceil(span / dtau - 1e-9))
    h = span / steps
    for _ in range(steps):
        k1x, k1e = recursion_rhs(xi, eta)
        k2x, k2e = recursion_rhs(xi + 0.5 * h * k1x, eta + 0.5 * h * k1e)
        k3x, k3e = recursion_rhs(xi + 0.5 * h * k2x, eta + 0.5 * h * k2e)
        k4x, k4e = recursion_rhs(xi + h * k3x, eta + h * k3e)
        xi = xi + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        eta = eta + (h / 6.0) * (k1e + 2.0 * k2e + 2.0 * k3e + k4e)
    return xi, eta


def integrate_recursion(
    tau_end: float,
    n_max: int = 201,
    dtau: float = 1e-4,
    samples: Sequence[float] | int = 11,
) -> list[CoefficientTable]:
    """Integrate the coefficient recursion from tau = 0 to ``tau_end``.

    ``samples`` is either the number of evenly spaced output points on
    [0, tau_end] or an explicit increasing sequence of output times inside
    that interval.  Every segment between outputs is covered by an integer
    number of RK4 steps no larger than ``dtau``, so each output lands exactly
    on its requested time.

    The hard cut at ``n_max`` only disturbs the upper end of the table: the
    n = 1 entries are insensitive to it, but by tau = 1 the excitation has
    reached n = 201 and entries from roughly n = 35 upward shift when
    ``n_max`` is doubled.  Compare two truncations before trusting high modes.
    """
    _check_n_max(n_max)
    if not 0 < dtau < MAX_DTAU:
        raise DomainError(f"step size must lie in (0, {MAX_DTAU}), got {dtau}")
    if tau_end < 0:
        raise DomainError(f"tau_end must be >= 0, got {tau_end}")

    start = initial_table(n_max)
    if tau_end == 0:
        return [start]

    if isinstance(samples, (int, np.integer)):
        if samples < 2:
            raise ValueError("need at least two output samples")
        taus = np.linspace(0.0, tau_end, int(samples))
    else:
        taus = np.asarray(samples, dtype=float)
        if taus.ndim != 1 or len(taus) == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        if np.any(np.diff(taus) <= 0) or taus[0] < 0 or taus[-1] > tau_end * (1 + 1e-12):
            raise ValueError("sample times must be increasing and inside [0, tau_end]")

    out = []
    xi, eta = start.xi.copy(), start.eta.copy()
    now = 0.0
    for tau in taus:
        if tau > now:
            xi, eta = _rk4_segment(xi, eta, tau - now, dtau)
            now = float(tau)
        out.append(CoefficientTable(float(tau), n_max, xi, eta))
    return out


def bogoliubov_coeffs(table: CoefficientTable, n: int, m: int = 1) -> tuple[complex, complex]:
    """(alpha_nm, beta_nm) = sqrt(m/n) (xi_m^(n), eta_m^(n)) for the principal mode m = 1."""
    if m != 1:
        raise UnsupportedModeError(f"unsupported mode m={m}; only the principal mode m=1 is modelled")
    if n % 2 == 0:
        raise IndexError(f"only odd mode indices are populated, got n={n}")
    i = table.index(n)
    scale = math.sqrt(m / n)
    return complex(scale * table.xi[i]), complex(scale * table.eta[i])


class SumIdentities(NamedTuple):
    """Left sides of the three mode-sum identities and their closed-form right sides."""

    eta_sum: complex
    xi_sum: complex
    cross_sum: complex
    eta_target: float
    xi_target: float
    cross_target: float

    def residuals(self) -> tuple[float, float, float]:
        return (
            abs(self.eta_sum - self.eta_target),
            abs(self.xi_sum - self.xi_target),
            abs(self.cross_sum - self.cross_target),
        )


def sum_identities(table: CoefficientTable) -> SumIdentities:
    """Evaluate

        sum 2/n eta eta'      = -2 eta1 xi1
        sum 2/n xi xi'        = -2 eta1 xi1
        sum 1/n (xi' eta + xi eta') = -eta1^2 - xi1^2

    Left sides use the integrated table with derivatives from the recursion
    right-hand side; right sides use the elliptic closed forms, so the
    residuals also measure truncation and integration error.
    """
    n = table.n
    dxi, deta = table.derivatives()
    xi1, eta1 = closed_form_xi1_eta1(table.tau)
    return SumIdentities(
        eta_sum=complex(np.sum(2.0 / n * table.eta * deta)),
        xi_sum=complex(np.sum(2.0 / n * table.xi * dxi)),
        cross_sum=complex(np.sum((dxi * table.eta + table.xi * deta) / n)),
        eta_target=-2.0 * eta1 * xi1,
        xi_target=-2.0 * eta1 * xi1,
        cross_target=-(eta1 ** 2) - xi1 ** 2,
    )
