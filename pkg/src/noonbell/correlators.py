"""Closed-form detection probabilities and correlators for two-mode
path-entangled number states.

All quantities refer to the state (|N,0> - |0,N>)/sqrt(2): N photons in one
arm or the other, with a fixed relative phase of pi.  Displacing each mode by
a local-oscillator amplitude and detecting gives two measurement schemes:

* on/off detection -- ``q_joint``/``q_single_a``/``q_single_b`` are the
  no-click probabilities (displaced-vacuum overlaps), ``click_probabilities``
  the complementary click probabilities;
* parity detection -- ``parity_corr`` is the correlated displaced-parity
  expectation, and ``wigner`` its rescaling by 4/pi^2, the two-mode Wigner
  function.

Every function accepts python scalars or numpy arrays for the oscillator
amplitudes and broadcasts elementwise.  The photon number may be passed as a
plain integer or a :class:`NoonParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NoonParams",
    "photon_number",
    "laguerre",
    "q_joint",
    "q_single_a",
    "q_single_b",
    "click_probabilities",
    "parity_corr",
    "wigner",
]

# n! is exact in float64 far beyond this, but powers like |alpha|^(2n) are
# not; everything above this order goes through log space.
_DIRECT_N_MAX = 20

WIGNER_SCALE = 4.0 / math.pi**2


@dataclass(frozen=True)
class NoonParams:
    """Photon number of the two-mode number state; the relative phase between
    the |N,0> and |0,N> branches is fixed at pi and not configurable."""

    n: int
    relative_phase: float = math.pi

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"photon number must be an integer >= 1, got {self.n!r}")
        if self.relative_phase != math.pi:
            raise ValueError("the relative phase is fixed at pi in this version")


def photon_number(p) -> int:
    """Coerce an int or NoonParams to a validated photon number."""
    if isinstance(p, NoonParams):
        return p.n
    if isinstance(p, (int, np.integer)) and not isinstance(p, bool) and p >= 1:
        return int(p)
    raise ValueError(f"photon number must be an integer >= 1 or NoonParams, got {p!r}")


def _abs2(z):
    """|z|^2 without the square root."""
    return z.real * z.real + z.imag * z.imag


def _scaled_power(z, n: int):
    """z**n / sqrt(n!), evaluated in log space for large n to avoid overflow."""
    if n <= _DIRECT_N_MAX:
        return z**n / math.sqrt(math.factorial(n))
    r = np.abs(z)
    safe_r = np.where(r > 0.0, r, 1.0)
    mag = np.exp(n * np.log(safe_r) - 0.5 * math.lgamma(n + 1))
    out = np.where(r > 0.0, mag * np.exp(1j * n * np.angle(z)), 0.0j)
    return out


def laguerre(n: int, x):
    """Laguerre polynomial L_n(x) by the three-term recurrence
    (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
        raise ValueError(f"order must be an integer >= 0, got {n!r}")
    lk = 1.0 + 0.0 * x  # L_0, broadcast to the shape of x
    if n == 0:
        return lk
    lkm1, lk = lk, 1.0 - x  # L_1
    for k in range(1, n):
        lkm1, lk = lk, ((2.0 * k + 1.0 - x) * lk - k * lkm1) / (k + 1.0)
    return lk


def q_joint(p, alpha, beta):
    """Probability that both displaced on/off detectors stay dark,
    exp(-(|a|^2+|b|^2)) |a^N - b^N|^2 / (2 N!); lies in [0, 1]."""
    n = photon_number(p)
    za = _scaled_power(alpha, n)
    zb = _scaled_power(beta, n)
    return 0.5 * np.exp(-(_abs2(alpha) + _abs2(beta))) * _abs2(za - zb)


def q_single_a(p, alpha):
    """Probability that mode a's displaced on/off detector stays dark,
    exp(-|a|^2) (|a|^(2N)/N! + 1) / 2; lies in (0, 1/2]."""
    n = photon_number(p)
    return 0.5 * np.exp(-_abs2(alpha)) * (_abs2(_scaled_power(alpha, n)) + 1.0)


def q_single_b(p, beta):
    """Mode-b no-click probability; identical in form to :func:`q_single_a`."""
    n = photon_number(p)
    return 0.5 * np.exp(-_abs2(beta)) * (_abs2(_scaled_power(beta, n)) + 1.0)


def click_probabilities(p, alpha, beta):
    """Click probabilities (P_a, P_b, P_ab) from the no-click ones via
    completeness: P_a = 1-Q_a, P_b = 1-Q_b, P_ab = 1-Q_a-Q_b+Q_ab."""
    qa = q_single_a(p, alpha)
    qb = q_single_b(p, beta)
    qab = q_joint(p, alpha, beta)
    return 1.0 - qa, 1.0 - qb, 1.0 - qa - qb + qab


def parity_corr(p, alpha, beta):
    """Correlated displaced-parity expectation in [-1, 1]:
    exp(-2|a|^2-2|b|^2) [(-1)^N (L_N(4|a|^2) + L_N(4|b|^2))
    - (2^(2N)/N!) (conj(a)^N b^N + a^N conj(b)^N)] / 2."""
    n = photon_number(p)
    sa = _abs2(alpha)
    sb = _abs2(beta)
    sign = -1.0 if n % 2 else 1.0
    lag = sign * (laguerre(n, 4.0 * sa) + laguerre(n, 4.0 * sb))
    cross = np.conjugate(_scaled_power(2.0 * alpha, n)) * _scaled_power(2.0 * beta, n)
    return 0.5 * np.exp(-2.0 * (sa + sb)) * (lag - 2.0 * cross.real)


def wigner(p, alpha, beta):
    """Two-mode Wigner function, the parity correlator scaled by 4/pi^2."""
    return WIGNER_SCALE * parity_corr(p, alpha, beta)
