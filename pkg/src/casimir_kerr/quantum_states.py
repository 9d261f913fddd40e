"""Squeezed coherent states |alpha, zeta> = S(zeta)|alpha> and their moments.

Conventions: S(zeta) = exp[(zeta* b^2 - zeta b^dag^2) / 2] with
zeta = |zeta| exp(i phi), so that

    S^dag b S     = mu b - nu b^dag
    S^dag b^dag S = mu b^dag - nu* b

with mu = cosh|zeta| and nu = exp(i phi) sinh|zeta|.  Note the squeeze acts
*after* the displacement; this is not the more common D(alpha) S(zeta)|0>.

Analytic moments follow from normal ordering L = mu b^dag - nu* b against the
coherent state.  For any linear L = c b^dag + d b,

    L^3 = :L^3: + 3 c d :L:,

so with w = mu alpha* - nu* alpha,  <b^dag^3> = w^3 - 3 mu nu* w.
The truncated Fock construction below is an independent check on all of it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, sparse
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln

from .exceptions import InfeasibleTargetError, TruncationError

__all__ = [
    "SqueezedCoherentParams",
    "FockVector",
    "mu_nu",
    "mean_photon_number",
    "creation_moment2",
    "creation_moment3",
    "coherent_amplitudes",
    "build_fock_state",
    "build_fock_state_auto",
    "fock_moment",
    "oracle_moments",
    "match_intensity",
]

TAIL_TOL = 1e-10
# third moments weight the tail by p^3, so the oracle sweep truncates deeper
MOMENT_TAIL_TOL = 1e-13


@dataclass(frozen=True)
class SqueezedCoherentParams:
    """Coherent amplitude ``alpha`` and squeezing ``zeta_mag * exp(i zeta_phase)``."""

    alpha: complex = 0j
    zeta_mag: float = 0.0
    zeta_phase: float = 0.0

    def __post_init__(self):
        if self.zeta_mag < 0 or not math.isfinite(self.zeta_mag):
            raise ValueError(f"squeezing magnitude must be finite and >= 0, got {self.zeta_mag}")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "zeta_phase", float(self.zeta_phase) % (2.0 * math.pi))

    @property
    def mu(self) -> float:
        return math.cosh(self.zeta_mag)

    @property
    def nu(self) -> complex:
        return cmath.exp(1j * self.zeta_phase) * math.sinh(self.zeta_mag)

    @property
    def zeta(self) -> complex:
        return cmath.rect(self.zeta_mag, self.zeta_phase)


def mu_nu(params: SqueezedCoherentParams) -> tuple[float, complex]:
    """(cosh|zeta|, exp(i phi) sinh|zeta|)."""
    return params.mu, params.nu


def _w(params):
    mu, nu = params.mu, params.nu
    return mu * params.alpha.conjugate() - nu.conjugate() * params.alpha


def mean_photon_number(params: SqueezedCoherentParams) -> float:
    """<b^dag b> = mu^2|a|^2 - 2 mu Re(nu* a^2) + |nu|^2 |a|^2 + |nu|^2."""
    mu, nu = params.mu, params.nu
    a = params.alpha
    a2 = abs(a) ** 2
    nu2 = abs(nu) ** 2
    return mu * mu * a2 - 2.0 * mu * (nu.conjugate() * a * a).real + nu2 * a2 + nu2


def creation_moment2(params: SqueezedCoherentParams) -> complex:
    """<b^dag^2> = w^2 - mu nu*."""
    w = _w(params)
    return w * w - params.mu * params.nu.conjugate()


def creation_moment3(params: SqueezedCoherentParams) -> complex:
    """<b^dag^3> = w^3 - 3 mu nu* w with w = mu alpha* - nu* alpha.

    Expanded, this is mu^3 a*^3 - 3 mu^2 nu* |a|^2 a* + 3 mu nu*^2 |a|^2 a
    - nu*^3 a^3 - 3 mu^2 nu* a* + 3 mu nu*^2 a.
    """
    w = _w(params)
    return w ** 3 - 3.0 * params.mu * params.nu.conjugate() * w


@dataclass(frozen=True, eq=False)
class FockVector:
    """Number-basis amplitudes <p|psi> for p = 0 .. dim-1."""

    amps: np.ndarray
    tail_tol: float = TAIL_TOL

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        if amps.ndim != 1 or len(amps) == 0:
            raise ValueError("amplitudes must be a non-empty 1-D array")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return len(self.amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    @property
    def deficit(self) -> float:
        """Probability lost to truncation, 1 - <psi|psi>."""
        return 1.0 - self.norm ** 2


def coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """exp(-|a|^2/2) a^p / sqrt(p!) for p < dim, computed in log space."""
    p = np.arange(dim)
    alpha = complex(alpha)
    if alpha == 0:
        out = np.zeros(dim, dtype=complex)
        out[0] = 1.0
        return out
    logmag = -0.5 * abs(alpha) ** 2 + p * math.log(abs(alpha)) - 0.5 * gammaln(p + 1)
    return np.exp(logmag) * np.exp(1j * cmath.phase(alpha) * p)


def _squeeze_generator(zeta: complex, dim: int):
    # (zeta* b^2 - zeta b^dag^2) / 2 restricted to the first dim number states
    p = np.arange(dim - 2)
    lower2 = np.sqrt((p + 1.0) * (p + 2.0))  # <p|b^2|p+2>
    b2 = sparse.diags(lower2, 2, shape=(dim, dim), dtype=complex)
    return (0.5 * (zeta.conjugate() * b2 - zeta * b2.T)).tocsr()


def build_fock_state(params: SqueezedCoherentParams, dim: int, tail_tol: float = TAIL_TOL) -> FockVector:
    """Amplitudes of S(zeta)|alpha> in the first ``dim`` number states.

    The coherent vector is built in a basis twice as large, the squeeze is
    applied there by a scaled Taylor exponential action, and the result is
    cut back to ``dim``; the lost norm is the truncation estimate.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    work = 2 * dim
    vec = coherent_amplitudes(params.alpha, work)
    if params.zeta_mag > 0:
        vec = expm_multiply(_squeeze_generator(params.zeta, work), vec)
    state = FockVector(vec[:dim], tail_tol)
    if state.deficit > tail_tol:
        raise TruncationError(
            f"norm deficit {state.deficit:.3e} exceeds {tail_tol:.1e} at dim={dim}"
        )
    return state


def build_fock_state_auto(
    params: SqueezedCoherentParams,
    dim: int = 64,
    tail_tol: float = TAIL_TOL,
    max_dim: int = 8192,
) -> FockVector:
    """Double ``dim`` until the truncation budget is met."""
    while True:
        try:
            return build_fock_state(params, dim, tail_tol)
        except TruncationError:
            if 2 * dim > max_dim:
                raise
            dim *= 2


def _lower(vec, times):
    # apply b ``times`` times; the truncated basis shrinks by one each time
    for _ in range(times):
        vec = vec[1:] * np.sqrt(np.arange(1, len(vec)))
    return vec


def fock_moment(state: FockVector, r: int, s: int) -> complex:
    """<psi|(b^dag)^r b^s|psi> evaluated inside the truncated space."""
    if r < 0 or s < 0:
        raise ValueError("moment orders must be non-negative")
    if 4 * (r + s) > state.dim:
        raise ValueError(f"r+s={r + s} too large for dim={state.dim} (need r+s <= dim/4)")
    left = _lower(state.amps, r)
    right = _lower(state.amps, s)
    size = min(len(left), len(right))
    return complex(np.vdot(left[:size], right[:size]))


def oracle_moments(params: SqueezedCoherentParams, tail_tol: float = MOMENT_TAIL_TOL):
    """(<b^dag b>, <b^dag^2>, <b^dag^3>) from the truncated Fock construction."""
    state = build_fock_state_auto(params, 64, tail_tol)
    return fock_moment(state, 1, 1), fock_moment(state, 2, 0), fock_moment(state, 3, 0)


def match_intensity(
    zeta_mag: float,
    zeta_phase: float = 0.0,
    alpha_phase: float = 0.0,
    target_n: float = 7.0,
) -> SqueezedCoherentParams:
    """Solve for |alpha| so the squeezed coherent state has ``target_n`` mean photons."""
    sinh2 = math.sinh(zeta_mag) ** 2
    if target_n <= sinh2:
        raise InfeasibleTargetError(
            f"target <n>={target_n} is not above the squeezed-vacuum occupation sinh^2|zeta|={sinh2:.6g}"
        )
    phase = cmath.exp(1j * alpha_phase)

    def excess(mag):
        return mean_photon_number(SqueezedCoherentParams(mag * phase, zeta_mag, zeta_phase)) - target_n

    hi = 1.0
    while excess(hi) < 0:
        hi *= 2.0
    mag = optimize.brentq(excess, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    return SqueezedCoherentParams(mag * phase, zeta_mag, zeta_phase)
