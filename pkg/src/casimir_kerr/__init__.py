"""Photon generation in a resonantly vibrating cavity driven by squeezed
coherent light, and three-photon absorption of such light by a ladder atom."""

from .absorption import (
    AbsorptionSpectrum,
    AtomicLadder,
    CouplingSet,
    Fig5Config,
    figure5_sweep,
    lorentzian_density,
    rate_three_photon_quantum,
    rate_three_photon_semiclassical,
)
from .dce_rates import (
    DceFigureConfig,
    RateCurve,
    cumulative_photons,
    figure_sweep,
    rate_coherent,
    rate_limit_tau0,
    rate_squeezed,
)
from .elliptic import EllipticModulus, ellip_e, ellip_k, ellip_ke, modulus_from_tau
from .exceptions import DomainError, InfeasibleTargetError, TruncationError, UnsupportedModeError
from .mode_coupling import (
    CoefficientTable,
    WallMotion,
    bogoliubov_coeffs,
    closed_form_xi1_eta1,
    integrate_recursion,
    slow_time,
    sum_identities,
)
from .quantum_states import (
    SqueezedCoherentParams,
    build_fock_state,
    creation_moment2,
    creation_moment3,
    fock_moment,
    match_intensity,
    mean_photon_number,
    mu_nu,
)

__version__ = "0.1.0"
