"""Complete elliptic integrals K(k), E(k) via the arithmetic-geometric mean.

The modulus convention is the one used throughout the package: ``k`` is the
modulus (not the parameter ``m = k**2``) and ``k_comp = sqrt(1 - k**2)`` is the
complementary modulus.  Both integrals accept ``k_comp`` directly so callers
that know it exactly (e.g. ``exp(-4 tau)``) do not lose precision near k = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError

__all__ = ["EllipticModulus", "ellip_k", "ellip_e", "ellip_ke", "modulus_from_tau"]

_AGM_RTOL = 1e-15
_AGM_MAX_ITER = 64
# below this complementary modulus K and E switch to their log asymptotics
_ASYMPTOTIC_KC = 1e-8


@dataclass(frozen=True)
class EllipticModulus:
    """Modulus pair (k, k_comp) with k**2 + k_comp**2 = 1."""

    k: float
    k_comp: float

    def __post_init__(self):
        if not (0.0 <= self.k <= 1.0 and 0.0 <= self.k_comp <= 1.0):
            raise DomainError(f"modulus pair out of range: k={self.k}, k_comp={self.k_comp}")


def modulus_from_tau(tau: float) -> EllipticModulus:
    """Modulus of the principal-mode closed forms at slow time ``tau``.

    k = sqrt(1 - exp(-8 tau)) and k_comp = exp(-4 tau); the latter is formed
    directly so it keeps full relative precision for large tau.
    """
    if tau < 0 or math.isnan(tau):
        raise DomainError(f"slow time must be >= 0, got {tau}")
    return EllipticModulus(k=math.sqrt(-math.expm1(-8.0 * tau)), k_comp=math.exp(-4.0 * tau))


def _resolve(k, k_comp, *, allow_one):
    if k_comp is None:
        if k is None:
            raise DomainError("either k or k_comp must be given")
        if not (0.0 <= k <= 1.0) or (k == 1.0 and not allow_one):
            raise DomainError(f"modulus out of range: k={k}")
        k_comp = math.sqrt((1.0 - k) * (1.0 + k))
    else:
        if not (0.0 <= k_comp <= 1.0) or (k_comp == 0.0 and not allow_one):
            raise DomainError(f"complementary modulus out of range: k_comp={k_comp}")
        if k is None:
            k = math.sqrt((1.0 - k_comp) * (1.0 + k_comp))
    return k, k_comp


def _agm(k, k_comp):
    # returns (a_inf, sum of 2**(n-1) c_n**2) for a0=1, b0=k_comp, c0=k
    a, b = 1.0, k_comp
    acc = 0.5 * k * k
    power = 0.5
    for _ in range(_AGM_MAX_ITER):
        if abs(a - b) <= _AGM_RTOL * a:
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        power *= 2.0
        acc += power * c * c
    return a, acc


def ellip_ke(k: float | None = None, k_comp: float | None = None) -> tuple[float, float]:
    """Return ``(K(k), E(k))`` from a single AGM sweep.

    Pass ``k_comp`` instead of (or together with) ``k`` to avoid forming
    ``1 - k**2`` when the modulus is close to one.
    """
    k, k_comp = _resolve(k, k_comp, allow_one=False)
    if k_comp < _ASYMPTOTIC_KC:
        lg = math.log(4.0 / k_comp)
        q = 0.25 * k_comp * k_comp
        return lg + q * (lg - 1.0), 1.0 + 2.0 * q * (lg - 0.5)
    a, acc = _agm(k, k_comp)
    big_k = math.pi / (2.0 * a)
    return big_k, big_k * (1.0 - acc)


def ellip_k(k: float | None = None, k_comp: float | None = None) -> float:
    """Complete elliptic integral of the first kind, 0 <= k < 1."""
    return ellip_ke(k, k_comp)[0]


def ellip_e(k: float | None = None, k_comp: float | None = None) -> float:
    """Complete elliptic integral of the second kind, 0 <= k <= 1."""
    k, k_comp = _resolve(k, k_comp, allow_one=True)
    if k_comp == 0.0:
        return 1.0
    return ellip_ke(k, k_comp)[1]
