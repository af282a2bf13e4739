"""Truncated two-mode Fock-space simulator.

Brute-force reference implementation used to cross-check every closed form in
:mod:`noonbell.correlators`: states are dense coefficient vectors over the
number basis, displacements are built from the associated-Laguerre matrix
elements, and expectation values are plain linear algebra.  Cutoffs are kept
small (<= 128 per mode), so dense storage is simpler and fast enough.

All values are immutable after construction and every operation is a pure
function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from noonbell.correlators import photon_number

__all__ = [
    "TruncationError",
    "FockVector",
    "FockOperator",
    "default_cutoff",
    "noon_state",
    "coherent_state",
    "product_state",
    "displacement_matrix",
    "oracle_q_joint",
    "oracle_parity_corr",
    "apply_swap_unitary",
]

# Coherent-state tail mass beyond 4|alpha|^2 photons is far below 1e-10, so
# amplitudes are admissible whenever |alpha|^2 <= cutoff / 4.
_GUARD_RATIO = 4.0
_RENORM_TAIL = 1e-12


class TruncationError(ValueError):
    """Amplitude too large for the requested cutoff."""

    def __init__(self, amplitude: complex, cutoff: int, required_cutoff: int):
        self.amplitude = amplitude
        self.cutoff = cutoff
        self.required_cutoff = required_cutoff
        super().__init__(
            f"|amplitude|^2 = {abs(amplitude)**2:.6g} exceeds the truncation guard "
            f"for cutoff {cutoff}; increase the cutoff to at least {required_cutoff}"
        )


def _check_guard(alpha: complex, cutoff: int) -> None:
    s = abs(alpha) ** 2
    if s > cutoff / _GUARD_RATIO:
        raise TruncationError(alpha, cutoff, math.ceil(_GUARD_RATIO * s))


def default_cutoff(n, *amplitudes: complex) -> int:
    """Cutoff heuristic: ceil(4 max|amplitude|^2) + N + 10."""
    n = photon_number(n)
    peak = max((abs(a) ** 2 for a in amplitudes), default=0.0)
    return math.ceil(_GUARD_RATIO * peak) + n + 10


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FockVector:
    """State vector over the truncated number basis.

    ``modes == 1`` stores ``cutoff`` coefficients indexed by n;
    ``modes == 2`` stores ``cutoff**2`` coefficients indexed by
    ``n_a * cutoff + n_b``.  Coefficients for n >= cutoff are implicitly zero.
    """

    cutoff: int
    amplitudes: np.ndarray
    modes: int = 2

    def __post_init__(self) -> None:
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        if self.modes not in (1, 2):
            raise ValueError("modes must be 1 or 2")
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.cutoff**self.modes,):
            raise ValueError(
                f"expected {self.cutoff**self.modes} amplitudes, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", _freeze(amps))

    def amplitude(self, *ns: int) -> complex:
        """Coefficient of |n> (one mode) or |n_a, n_b> (two modes)."""
        if len(ns) != self.modes:
            raise ValueError(f"expected {self.modes} indices, got {len(ns)}")
        idx = 0
        for n in ns:
            if not 0 <= n < self.cutoff:
                return 0.0 + 0.0j
            idx = idx * self.cutoff + n
        return complex(self.amplitudes[idx])

    def as_matrix(self) -> np.ndarray:
        """Two-mode coefficients reshaped to (n_a, n_b)."""
        if self.modes != 2:
            raise ValueError("as_matrix is only defined for two-mode vectors")
        return self.amplitudes.reshape(self.cutoff, self.cutoff)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class FockOperator:
    """Dense operator on the truncated basis: a cutoff x cutoff matrix for a
    single mode or cutoff^2 x cutoff^2 for two modes."""

    cutoff: int
    matrix: np.ndarray
    modes: int = 1

    def __post_init__(self) -> None:
        if self.modes not in (1, 2):
            raise ValueError("modes must be 1 or 2")
        dim = self.cutoff**self.modes
        mat = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        if mat.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got shape {mat.shape}")
        object.__setattr__(self, "matrix", _freeze(mat))

    def dagger(self) -> "FockOperator":
        return FockOperator(self.cutoff, self.matrix.conj().T, self.modes)


def noon_state(n, cutoff: int) -> FockVector:
    """(|n,0> - |0,n>)/sqrt(2) on the truncated two-mode basis."""
    n = photon_number(n)
    if cutoff <= n:
        raise ValueError(f"cutoff must exceed the photon number: {cutoff} <= {n}")
    amps = np.zeros(cutoff * cutoff, dtype=np.complex128)
    amps[n * cutoff + 0] = 1.0 / math.sqrt(2.0)
    amps[0 * cutoff + n] = -1.0 / math.sqrt(2.0)
    return FockVector(cutoff, amps, modes=2)


def coherent_state(alpha: complex, cutoff: int) -> FockVector:
    """Single-mode coherent state, component n = exp(-|a|^2/2) a^n / sqrt(n!).

    The truncated vector is renormalized only when the discarded tail mass is
    below 1e-12; otherwise the raw truncated coefficients are kept so the
    truncation stays visible.
    """
    _check_guard(alpha, cutoff)
    ns = np.arange(cutoff)
    if alpha == 0:
        amps = np.zeros(cutoff, dtype=np.complex128)
        amps[0] = 1.0
        return FockVector(cutoff, amps, modes=1)
    log_mag = -0.5 * abs(alpha) ** 2 + ns * math.log(abs(alpha)) - 0.5 * gammaln(ns + 1.0)
    amps = np.exp(log_mag) * np.exp(1j * ns * np.angle(alpha))
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    if tail < _RENORM_TAIL:
        amps = amps / np.linalg.norm(amps)
    return FockVector(cutoff, amps, modes=1)


def product_state(a: FockVector, b: FockVector) -> FockVector:
    """Two-mode product |a> (x) |b> of two single-mode vectors."""
    if a.modes != 1 or b.modes != 1 or a.cutoff != b.cutoff:
        raise ValueError("product_state needs two single-mode vectors with equal cutoff")
    return FockVector(a.cutoff, np.kron(a.amplitudes, b.amplitudes), modes=2)


def displacement_matrix(alpha: complex, cutoff: int) -> FockOperator:
    """Matrix elements <m|D(alpha)|n> from the associated-Laguerre closed form

        <m|D|n> = sqrt(n!/m!) alpha^(m-n) exp(-|a|^2/2) L_n^(m-n)(|a|^2)   (m >= n)
        <m|D|n> = sqrt(m!/n!) (-conj(alpha))^(n-m) exp(-|a|^2/2) L_m^(n-m)(|a|^2)

    which avoids the eigendecomposition error of a matrix exponential at
    large cutoff.  Unitary up to truncation error in the highest rows.
    """
    _check_guard(alpha, cutoff)
    ns = np.arange(cutoff)
    m_idx, n_idx = np.meshgrid(ns, ns, indexing="ij")
    k_lo = np.minimum(m_idx, n_idx)
    diff = np.abs(m_idx - n_idx)
    x = abs(alpha) ** 2
    lag = eval_genlaguerre(k_lo, diff, x)
    prefactor = np.exp(0.5 * (gammaln(k_lo + 1.0) - gammaln(np.maximum(m_idx, n_idx) + 1.0)))
    base = np.where(m_idx >= n_idx, alpha, -np.conjugate(alpha)) ** diff
    mat = prefactor * base * math.exp(-0.5 * x) * lag
    return FockOperator(cutoff, mat, modes=1)


def oracle_q_joint(n, alpha: complex, beta: complex, cutoff: int) -> float:
    """|<alpha, beta | state>|^2 computed entirely in the truncated space."""
    n = photon_number(n)
    if cutoff <= n:
        raise ValueError(f"cutoff must exceed the photon number: {cutoff} <= {n}")
    _check_guard(alpha, cutoff)
    _check_guard(beta, cutoff)
    psi = noon_state(n, cutoff).as_matrix()
    ca = coherent_state(alpha, cutoff).amplitudes
    cb = coherent_state(beta, cutoff).amplitudes
    overlap = ca.conj() @ psi @ cb.conj()
    return float(abs(overlap) ** 2)


def _displaced_parity(alpha: complex, cutoff: int) -> np.ndarray:
    d = displacement_matrix(alpha, cutoff).matrix
    parity = np.where(np.arange(cutoff) % 2 == 0, 1.0, -1.0)
    return (d * parity) @ d.conj().T


def oracle_parity_corr(n, alpha: complex, beta: complex, cutoff: int) -> float:
    """<state| D_a D_b (-1)^(n_a+n_b) D_a^+ D_b^+ |state> by matrix algebra."""
    n = photon_number(n)
    required = default_cutoff(n, alpha, beta)
    if cutoff < required:
        bigger = alpha if abs(alpha) >= abs(beta) else beta
        raise TruncationError(bigger, cutoff, required)
    ma = _displaced_parity(alpha, cutoff)
    mb = _displaced_parity(beta, cutoff)
    psi = noon_state(n, cutoff).as_matrix()
    value = np.vdot(psi, ma @ psi @ mb.T)
    return float(value.real)


def apply_swap_unitary(n, state: FockVector) -> FockVector:
    """Apply U (x) U where U swaps |1> and |n> in each mode and fixes every
    other number state.  Sends the one-photon state to the n-photon one, and
    is its own inverse."""
    n = photon_number(n)
    if state.cutoff <= n:
        raise ValueError(f"cutoff must exceed the photon number: {state.cutoff} <= {n}")
    perm = np.arange(state.cutoff)
    perm[1], perm[n] = perm[n], perm[1]
    if state.modes == 1:
        return FockVector(state.cutoff, state.amplitudes[perm], modes=1)
    mat = state.as_matrix()[perm][:, perm]
    return FockVector(state.cutoff, mat.reshape(-1), modes=2)
