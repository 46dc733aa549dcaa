"""Per-mode double integrals over imaginary frequency and the p variable.

Each reciprocal-lattice mode contributes

    I = int_0^inf dzeta int_1^inf dp  zeta^2 e^{-(zeta H / c) sqrt(g)} / g^{3/2}
        * [ q(p) (Au Ad + Bu Bd) - r(p) (Au Bd + Bu Ad) ],

    g = 4 p^2 + (c kappa / zeta)^2,   q = 2p^4 - 2p^2 + 1,   r = 2p^2 - 1,

with kappa the transverse lattice wavenumber of the mode and (A, B) the
dielectric/magnetic amplitudes at imaginary frequency.  The quadratic form
in (A, B) has eigenvalues q - r = 2(p^2-1)^2 and q + r = 2p^4, so for equal
upper/lower amplitudes the integrand is non-negative.

Change of variables: zeta = (c/H) t with t = s/(1-s), and x = 2 p t, so the
exponent becomes sqrt(x^2 + K^2) with K = kappa H.  The inner x-integrand
then has an H- and t-independent decay scale, which keeps the nested
adaptive quadrature shallow; x runs on (2t, inf) mapped by x = 2t + u/(1-u).
The derivative kernel (for the normal force) carries one fewer power of
sqrt(x^2 + K^2) in the denominator and a 1/H out front.

All endpoint nodes are interior, so dispersive models are never evaluated
at zero frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import C_LIGHT, HBAR
from .lattice import ChessboardSpec, mode_amplitudes
from .materials import DispersionParams, DEFAULT_PARAMS
from .quadrature import adaptive_quadrature

# assembled-energy prefactor |E/A| = PREFACTOR * sum of mode integrals
PREFACTOR = HBAR / (4.0 * math.pi**2 * C_LIGHT**2)

_EXP_CUTOFF = 700.0  # exp(-v) below double precision relevance


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and transform controls for the nested quadrature.

    ``rel_tol`` applies per mode; the inner integral is held to one tenth
    of it to avoid error aliasing between the nesting levels.
    ``abs_floor`` is an absolute guard in assembled units (J/m^2) so that
    modes suppressed below machine relevance terminate cleanly.
    ``zeta_scale`` tunes the outer change of variables (default c/H).
    ``p_cutoff`` documents the inner upper-limit mapping; only the
    shifted-reciprocal map is implemented.  ``n_max`` caps the square
    shells of the reciprocal-lattice sum performed by the assembly layer.
    """

    rel_tol: float = 1e-8
    abs_floor: float = 1e-30
    max_subdivisions: int = 256
    zeta_scale: float | None = None
    p_cutoff: str = "shifted-reciprocal"
    n_max: int = 64

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0:
            raise ValueError("rel_tol must be positive")
        if self.max_subdivisions < 16:
            raise ValueError("max_subdivisions must be at least 16")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.zeta_scale is not None and self.zeta_scale <= 0.0:
            raise ValueError("zeta_scale must be positive")
        if self.p_cutoff != "shifted-reciprocal":
            raise ValueError(f"unsupported p_cutoff policy: {self.p_cutoff!r}")


DEFAULT_QUAD = QuadratureSpec()


@dataclass
class ModeIntegralResult:
    """Converged value with error estimate and evaluation count."""

    value: float
    error_estimate: float
    evaluations: int
    converged: bool = True


# amplitude provider: zeta array (rad/s) -> (A array, B array)
AmplitudeFn = Callable[[np.ndarray], tuple]


def transverse_wavenumber(spec: ChessboardSpec, idx) -> float:
    """|G| of mode (n, m): 2 pi sqrt((n/lambda_x)^2 + (m/lambda_y)^2)."""
    n, m = int(idx[0]), int(idx[1])
    return 2.0 * math.pi * math.hypot(n / spec.lambda_x, m / spec.lambda_y)


def chessboard_amplitude_fn(spec: ChessboardSpec, idx, params: DispersionParams = DEFAULT_PARAMS) -> AmplitudeFn:
    """Amplitude provider for one chessboard mode."""
    n, m = int(idx[0]), int(idx[1])

    def amps(zeta):
        ma = mode_amplitudes(spec, (n, m), zeta, params)
        return np.broadcast_to(ma.a_nm, np.shape(zeta)), np.broadcast_to(ma.b_nm, np.shape(zeta))

    return amps


def constant_amplitude_fn(d_eps: float, d_mu: float) -> AmplitudeFn:
    """Amplitude provider for frequency-independent contrasts."""

    def amps(zeta):
        shape = np.shape(zeta)
        return np.full(shape, d_eps), np.full(shape, d_mu)

    return amps


def _inner_kernel(u: np.ndarray, t: float, K: float, sym: float, cross: float, derivative: bool) -> np.ndarray:
    x = 2.0 * t + u / (1.0 - u)
    v = np.hypot(x, K)
    safe = v <= _EXP_CUTOFF
    xs = np.where(safe, x, 1.0)
    vs = np.where(safe, v, 1.0)
    x2 = xs * xs
    t2 = t * t
    poly = (0.125 * x2 * x2 - 0.5 * x2 * t2 + t2 * t2) * sym - (0.5 * x2 * t2 - t2 * t2) * cross
    kern = np.exp(-vs) / (vs * vs if derivative else vs * vs * vs)
    jac = 1.0 / ((1.0 - u) * (1.0 - u))
    return np.where(safe, kern * poly * jac, 0.0)


def pair_integral(
    amp_u: AmplitudeFn,
    amp_d: AmplitudeFn,
    kappa: float,
    H: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    derivative: bool = False,
) -> ModeIntegralResult:
    """Mode integral for (possibly distinct) upper/lower amplitude providers.

    Returns the raw integral in (rad/s)^3 units for the energy kernel, or
    (rad/s)^3 / m for the derivative kernel; assembly applies the overall
    -hbar/(4 pi^2 c^2) normalization and the displacement weights.
    """
    if H <= 0.0:
        raise ValueError("separation H must be positive")
    scale = C_LIGHT / H
    K = kappa * H
    ratio = 1.0 if quad.zeta_scale is None else quad.zeta_scale / scale
    out_scale = scale**3 * (1.0 / H if derivative else 1.0)

    # absolute guards translated from assembled units to the scaled integral
    floor_j = quad.abs_floor / (PREFACTOR * out_scale)
    inner_rel = 0.1 * quad.rel_tol
    inner_abs = 0.1 * floor_j

    inner_evals = 0
    inner_ok = True

    def outer_integrand(s: np.ndarray) -> np.ndarray:
        nonlocal inner_evals, inner_ok
        # nodes are interior, but guard the mapped endpoint anyway: past
        # one_minus ~ 1e-12 the exponential has killed the integrand while
        # the bare jacobian would overflow
        one_minus = 1.0 - s
        live = one_minus > 1e-12
        om = np.where(live, one_minus, 1.0)
        t = ratio * s / om
        jac = ratio / (om * om)
        zeta = scale * t
        au, bu = amp_u(zeta)
        ad, bd = amp_d(zeta)
        sym = np.asarray(au) * ad + np.asarray(bu) * bd
        cross = np.asarray(au) * bd + np.asarray(bu) * ad
        out = np.zeros_like(t)
        for i, ti in enumerate(t):
            if not live[i]:
                continue
            res = adaptive_quadrature(
                lambda u: _inner_kernel(u, ti, K, float(sym[i]), float(cross[i]), derivative),
                0.0,
                1.0,
                rel_tol=inner_rel,
                abs_tol=inner_abs,
                max_panels=quad.max_subdivisions,
            )
            inner_evals += res.evaluations
            inner_ok = inner_ok and res.converged
            out[i] = res.value
        return np.where(live, 0.5 * out * jac, 0.0)

    outer = adaptive_quadrature(
        outer_integrand,
        0.0,
        1.0,
        rel_tol=quad.rel_tol,
        abs_tol=floor_j,
        max_panels=quad.max_subdivisions,
    )
    return ModeIntegralResult(
        value=out_scale * outer.value,
        error_estimate=out_scale * outer.error,
        evaluations=outer.evaluations + inner_evals,
        converged=outer.converged and inner_ok,
    )


def mode_energy_integral(
    spec: ChessboardSpec,
    idx,
    H: float,
    params: DispersionParams = DEFAULT_PARAMS,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> ModeIntegralResult:
    """Energy-kernel integral of one chessboard mode (raw, unnormalized)."""
    amp = chessboard_amplitude_fn(spec, idx, params)
    return pair_integral(amp, amp, transverse_wavenumber(spec, idx), H, quad, derivative=False)


def mode_force_integral(
    spec: ChessboardSpec,
    idx,
    H: float,
    params: DispersionParams = DEFAULT_PARAMS,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> ModeIntegralResult:
    """Derivative-kernel integral (-d/dH under the integral sign) of one mode."""
    amp = chessboard_amplitude_fn(spec, idx, params)
    return pair_integral(amp, amp, transverse_wavenumber(spec, idx), H, quad, derivative=True)
