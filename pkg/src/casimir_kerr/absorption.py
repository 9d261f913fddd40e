"""Three-photon absorption along a g -> m -> n -> l ladder.

Quantum rate for a single field mode in state |psi>:

    R = | (i G_ln*)(i G_nm*)(i G_mg*) (f_l - f_g) <b^dag^3>
          / ((w_ln - w + i gamma)(w_lm - 2w + i gamma)) |^2  2 pi rho(w_lg - 3w)

with G = F d the carrier-photon coupling per leg in rad/s (hbar cancels).
The semiclassical rate replaces i hbar F* <b^dag^3> by the classical E^3:

    R = | d_gm d_mn d_nl E^3 / hbar^3 / ((w_mg - w + i gamma)(w_ng - 2w + i gamma)) |^2
        2 pi rho(w_lg - 3w)

and both use the unit-area Lorentzian rho(delta) = gamma / (pi (delta^2 + gamma^2)).
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np
from scipy.constants import hbar as HBAR

from .quantum_states import SqueezedCoherentParams, creation_moment3, match_intensity

__all__ = [
    "HBAR",
    "AtomicLadder",
    "CouplingSet",
    "AbsorptionSpectrum",
    "Fig5Config",
    "lorentzian_density",
    "rate_three_photon_quantum",
    "rate_three_photon_semiclassical",
    "fig5_states",
    "figure5_sweep",
]

GAMMA_DEFAULT = 2.0 * math.pi * 1e13
DIPOLE_DEFAULT = 8e-30
OMEGA_LG_DEFAULT = 3.0 * 2.0 * math.pi * 1e14
# carrier-photon coupling F * d per leg; only normalized spectra are reported
COUPLING_RATE_DEFAULT = 1e10


@dataclass(frozen=True)
class AtomicLadder:
    """Four-level ladder g < m < n < l with a common decay rate ``gamma``.

    With ``equal_ladder`` the three steps share w_lg/3.  Otherwise pass
    ``omega_ln`` and ``omega_lm`` explicitly.
    """

    omega_lg: float = OMEGA_LG_DEFAULT
    gamma: float = GAMMA_DEFAULT
    f_l: float = 0.0
    f_g: float = 1.0
    equal_ladder: bool = True
    omega_ln: float | None = None
    omega_lm: float | None = None

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError(f"decay rate must be positive, got {self.gamma}")
        if self.omega_lg <= 0:
            raise ValueError(f"transition frequency must be positive, got {self.omega_lg}")
        for f in (self.f_l, self.f_g):
            if not 0.0 <= f <= 1.0:
                raise ValueError(f"populations must lie in [0, 1], got {f}")
        if self.equal_ladder:
            object.__setattr__(self, "omega_ln", self.omega_lg / 3.0)
            object.__setattr__(self, "omega_lm", 2.0 * self.omega_lg / 3.0)
        elif self.omega_ln is None or self.omega_lm is None:
            raise ValueError("omega_ln and omega_lm are required without the equal ladder")
        elif not 0 < self.omega_ln < self.omega_lm < self.omega_lg:
            raise ValueError("need 0 < omega_ln < omega_lm < omega_lg")

    @property
    def omega_mg(self) -> float:
        return self.omega_lg - self.omega_lm

    @property
    def omega_ng(self) -> float:
        return self.omega_lg - self.omega_ln

    @property
    def resonance(self) -> float:
        """Single-photon frequency of exact three-photon resonance."""
        return self.omega_lg / 3.0


@dataclass(frozen=True)
class CouplingSet:
    """Dipole elements per leg (C m) and carrier-photon strength ``F``."""

    d_ln: complex = DIPOLE_DEFAULT
    d_nm: complex = DIPOLE_DEFAULT
    d_mg: complex = DIPOLE_DEFAULT
    F: complex = COUPLING_RATE_DEFAULT / DIPOLE_DEFAULT

    def __post_init__(self):
        if min(abs(self.d_ln), abs(self.d_nm), abs(self.d_mg), abs(self.F)) <= 0:
            raise ValueError("couplings must have non-zero magnitude")

    def legs(self) -> tuple[complex, complex, complex]:
        """Reduced couplings G = F d for the ln, nm and mg legs (rad/s)."""
        return self.F * self.d_ln, self.F * self.d_nm, self.F * self.d_mg

    def scaled(self, s: float) -> "CouplingSet":
        return CouplingSet(s * self.d_ln, s * self.d_nm, s * self.d_mg, self.F)


def lorentzian_density(delta, gamma):
    """Unit-area Lorentzian gamma / (pi (delta^2 + gamma^2))."""
    if np.any(np.asarray(gamma) <= 0):
        raise ValueError("gamma must be positive")
    delta = np.asarray(delta, dtype=float)
    return gamma / (math.pi * (delta * delta + gamma * gamma))


def _detuning_product(omega, first, second, gamma):
    return (first - omega + 1j * gamma) * (second - 2.0 * omega + 1j * gamma)


def rate_three_photon_quantum(omega, ladder: AtomicLadder, coupling: CouplingSet, moment3: complex):
    """Quantum three-photon rate for a field with third creation moment ``moment3``."""
    omega = np.asarray(omega, dtype=float)
    g_ln, g_nm, g_mg = coupling.legs()
    numerator = (
        (1j * np.conj(g_ln)) * (1j * np.conj(g_nm)) * (1j * np.conj(g_mg))
        * (ladder.f_l - ladder.f_g) * complex(moment3)
    )
    amp = numerator / _detuning_product(omega, ladder.omega_ln, ladder.omega_lm, ladder.gamma)
    return np.abs(amp) ** 2 * 2.0 * math.pi * lorentzian_density(ladder.omega_lg - 3.0 * omega, ladder.gamma)


def rate_three_photon_semiclassical(
    omega,
    ladder: AtomicLadder,
    dipoles: CouplingSet,
    E_amplitude: complex,
    hbar: float = HBAR,
):
    """Semiclassical three-photon rate for a classical field amplitude ``E_amplitude``.

    The single intermediate path m, n of the ladder is used, with +i gamma in
    both detunings so the rate stays finite at resonance.  ``dipoles.F`` is
    ignored.
    """
    omega = np.asarray(omega, dtype=float)
    E = complex(E_amplitude)
    # one Rabi-like factor d E / hbar per leg keeps intermediates in range
    legs = (dipoles.d_mg * E / hbar) * (dipoles.d_nm * E / hbar) * (dipoles.d_ln * E / hbar)
    amp = legs / _detuning_product(omega, ladder.omega_mg, ladder.omega_ng, ladder.gamma)
    return np.abs(amp) ** 2 * 2.0 * math.pi * lorentzian_density(ladder.omega_lg - 3.0 * omega, ladder.gamma)


@dataclass(frozen=True, eq=False)
class AbsorptionSpectrum:
    """Rate against probe frequency for one field state."""

    state_label: str
    params: SqueezedCoherentParams
    omega: np.ndarray
    rate: np.ndarray
    normalization: float

    def __post_init__(self):
        omega = np.array(self.omega, dtype=float)
        rate = np.array(self.rate, dtype=float)
        if omega.shape != rate.shape or omega.ndim != 1:
            raise ValueError("omega and rate must be 1-D arrays of equal length")
        if np.any(rate < 0):
            raise ValueError("absorption rates must be non-negative")
        if not self.normalization > 0:
            raise ValueError("normalization must be positive")
        omega.flags.writeable = False
        rate.flags.writeable = False
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "rate", rate)

    @property
    def rate_normalized(self) -> np.ndarray:
        return self.rate / self.normalization

    @property
    def peak_omega(self) -> float:
        return float(self.omega[np.argmax(self.rate)])

    @property
    def peak(self) -> float:
        return float(self.rate.max())

    @property
    def slug(self) -> str:
        return re.sub(r"[^A-Za-z0-9.]+", "_", self.state_label).strip("_")


@dataclass(frozen=True)
class Fig5Config:
    target_n: float = 7.0
    zetas: tuple = (0.8, 1.0, 1.2, 1.5)
    zeta_phase: float = 0.0
    # pi/2 puts the coherent amplitude along the anti-squeezed quadrature,
    # which maximizes |<b^dag^3>| at fixed <n> for zeta_phase = 0
    alpha_phase: float = math.pi / 2
    normalize_to: float | None = 1.5
    gamma: float = GAMMA_DEFAULT
    omega_lg: float = OMEGA_LG_DEFAULT
    dipole: float = DIPOLE_DEFAULT
    coupling_rate: float = COUPLING_RATE_DEFAULT
    span_gammas: float = 10.0
    points: int = 2001


def fig5_states(cfg: Fig5Config) -> list[tuple[str, SqueezedCoherentParams]]:
    coh = SqueezedCoherentParams(cmath.rect(math.sqrt(cfg.target_n), cfg.alpha_phase))
    states = [(f"coherent |alpha|^2={cfg.target_n:g}", coh)]
    for z in cfg.zetas:
        p = match_intensity(z, cfg.zeta_phase, cfg.alpha_phase, cfg.target_n)
        states.append((f"squeezed |zeta|={z:g} <n>={cfg.target_n:g}", p))
    return states


def figure5_sweep(config: Fig5Config | None = None, states=None) -> list[AbsorptionSpectrum]:
    """Spectra for the coherent and intensity-matched squeezed states.

    All spectra share one normalization: the peak of the squeezed state with
    |zeta| = ``normalize_to`` (or the global peak when that is None or absent).
    """
    cfg = config or Fig5Config()
    ladder = AtomicLadder(omega_lg=cfg.omega_lg, gamma=cfg.gamma)
    coupling = CouplingSet(cfg.dipole, cfg.dipole, cfg.dipole, cfg.coupling_rate / cfg.dipole)
    center = ladder.resonance
    omega = center + cfg.gamma * np.linspace(-cfg.span_gammas, cfg.span_gammas, cfg.points)
    if states is None:
        states = fig5_states(cfg)

    rates = [
        (label, p, rate_three_photon_quantum(omega, ladder, coupling, creation_moment3(p)))
        for label, p in states
    ]
    norm = None
    if cfg.normalize_to is not None:
        for _, p, r in rates:
            if p.zeta_mag == cfg.normalize_to:
                norm = float(r.max())
    if norm is None:
        norm = max(float(r.max()) for _, _, r in rates)
    if norm == 0.0:
        # every state has <b^dag^3> = 0; keep the spectra unscaled
        norm = 1.0
    return [AbsorptionSpectrum(label, p, omega, r, norm) for label, p, r in rates]
