"""Magneto-dielectric response at imaginary frequency.

Permittivity and permeability are evaluated on the imaginary frequency
axis, where all models used here are real, smooth, >= 1 and monotonically
decreasing.  The dielectric contrast entering the interaction kernels is
the Clausius-Mossotti resummed one; the magnetic contrast is the bare
``mu - 1`` (the resummation applies to the permittivity only).

All functions are pure and accept scalar or ndarray ``zeta`` (rad/s).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Union

import numpy as np

OMEGA_P_GOLD = 1.37e16  # rad/s, plasma frequency of gold, the frequency scale


@dataclass(frozen=True)
class DispersionParams:
    """Oscillator constants of the four response models, in rad/s.

    ``Omega_D, gamma_D`` parameterize the metallic (free-carrier)
    permittivity, ``Omega_e, omega_e, gamma_e`` the dielectric resonance
    and ``Omega_m, omega_m, gamma_m`` the magnetic resonance.  Defaults
    are the standard ratios times ``omega_p`` = 1.37e16 rad/s; use
    :meth:`from_ratios` to build a modified set without unit mistakes.
    """

    omega_p: float = OMEGA_P_GOLD
    Omega_D: float = 1.0 * OMEGA_P_GOLD
    gamma_D: float = 0.004 * OMEGA_P_GOLD
    Omega_e: float = 0.04 * OMEGA_P_GOLD
    omega_e: float = 0.1 * OMEGA_P_GOLD
    gamma_e: float = 0.005 * OMEGA_P_GOLD
    Omega_m: float = 0.1 * OMEGA_P_GOLD
    omega_m: float = 0.1 * OMEGA_P_GOLD
    gamma_m: float = 0.005 * OMEGA_P_GOLD

    def __post_init__(self) -> None:
        for name in ("omega_p", "Omega_D", "Omega_e", "omega_e", "Omega_m", "omega_m"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")
        for name in ("gamma_D", "gamma_e", "gamma_m"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def from_ratios(
        cls,
        omega_p: float = OMEGA_P_GOLD,
        *,
        Omega_D: float = 1.0,
        gamma_D: float = 0.004,
        Omega_e: float = 0.04,
        omega_e: float = 0.1,
        gamma_e: float = 0.005,
        Omega_m: float = 0.1,
        omega_m: float = 0.1,
        gamma_m: float = 0.005,
    ) -> "DispersionParams":
        """Build from dimensionless ratios to ``omega_p``."""
        return cls(
            omega_p=omega_p,
            Omega_D=Omega_D * omega_p,
            gamma_D=gamma_D * omega_p,
            Omega_e=Omega_e * omega_p,
            omega_e=omega_e * omega_p,
            gamma_e=gamma_e * omega_p,
            Omega_m=Omega_m * omega_p,
            omega_m=omega_m * omega_p,
            gamma_m=gamma_m * omega_p,
        )


DEFAULT_PARAMS = DispersionParams()


class PermittivityModel(Enum):
    DRUDE_METAL = "drude-metal"
    LORENTZ_DIELECTRIC = "lorentz-dielectric"


class PermeabilityModel(Enum):
    LORENTZ_MAGNETIC = "lorentz-magnetic"
    NON_MAGNETIC = "non-magnetic"


@dataclass(frozen=True)
class MaterialKind:
    """One of the four dispersive patch materials."""

    permittivity_model: PermittivityModel
    permeability_model: PermeabilityModel


EH_MH = MaterialKind(PermittivityModel.DRUDE_METAL, PermeabilityModel.LORENTZ_MAGNETIC)
EH_ML = MaterialKind(PermittivityModel.DRUDE_METAL, PermeabilityModel.NON_MAGNETIC)
EL_MH = MaterialKind(PermittivityModel.LORENTZ_DIELECTRIC, PermeabilityModel.LORENTZ_MAGNETIC)
EL_ML = MaterialKind(PermittivityModel.LORENTZ_DIELECTRIC, PermeabilityModel.NON_MAGNETIC)


@dataclass(frozen=True)
class ConstantMaterial:
    """Frequency-independent (eps, mu) pair, used for closed-form checks."""

    eps: float
    mu: float = 1.0

    def __post_init__(self) -> None:
        if self.eps < 1.0 or self.mu < 1.0:
            raise ValueError("constant materials require eps >= 1 and mu >= 1")


Material = Union[MaterialKind, ConstantMaterial]


class CaseVariant(Enum):
    EHMH_ELML = "ehmh-elml"
    ELMH_EHML = "elmh-ehml"


@dataclass(frozen=True)
class CaseAssignment:
    """Patch index -> material map, plus the contrast convention.

    ``resum_epsilon`` selects whether the dielectric contrast fed to the
    kernels is Clausius-Mossotti resummed (the default for dispersive
    materials) or the bare ``eps - 1`` (used with constant materials so
    the homogeneous closed form can serve as an oracle).
    """

    patch1: Material
    patch2: Material
    resum_epsilon: bool = True
    variant: CaseVariant | None = None

    @classmethod
    def from_variant(cls, variant: CaseVariant) -> "CaseAssignment":
        if variant is CaseVariant.EHMH_ELML:
            return cls(patch1=EL_ML, patch2=EH_MH, resum_epsilon=True, variant=variant)
        if variant is CaseVariant.ELMH_EHML:
            return cls(patch1=EH_ML, patch2=EL_MH, resum_epsilon=True, variant=variant)
        raise ValueError(f"unknown variant: {variant!r}")

    @classmethod
    def constant(
        cls,
        eps1: float,
        mu1: float,
        eps2: float,
        mu2: float,
        resum_epsilon: bool = False,
    ) -> "CaseAssignment":
        return cls(
            patch1=ConstantMaterial(eps1, mu1),
            patch2=ConstantMaterial(eps2, mu2),
            resum_epsilon=resum_epsilon,
        )


def _check_zeta(zeta, allow_zero: bool):
    z = np.asarray(zeta, dtype=float)
    if np.any(z < 0.0):
        raise ValueError("imaginary frequency zeta must be >= 0")
    if not allow_zero and np.any(z == 0.0):
        raise ValueError("Drude permittivity diverges at zeta = 0; "
                         "evaluate the zeta -> 0 limit analytically instead")
    return z


def eps_at(kind: Material, zeta, params: DispersionParams = DEFAULT_PARAMS):
    """Permittivity at imaginary frequency ``zeta`` (scalar or array)."""
    if isinstance(kind, ConstantMaterial):
        z = _check_zeta(zeta, allow_zero=True)
        return np.full_like(z, kind.eps) if z.ndim else kind.eps
    model = kind.permittivity_model
    if model is PermittivityModel.DRUDE_METAL:
        z = _check_zeta(zeta, allow_zero=False)
        out = 1.0 + params.Omega_D**2 / (z * z + params.gamma_D * z)
    elif model is PermittivityModel.LORENTZ_DIELECTRIC:
        z = _check_zeta(zeta, allow_zero=True)
        out = 1.0 + params.Omega_e**2 / (z * z + params.omega_e**2 + params.gamma_e * z)
    else:
        raise ValueError(f"unknown permittivity model: {model!r}")
    return out if np.ndim(zeta) else float(out)


def mu_at(kind: Material, zeta, params: DispersionParams = DEFAULT_PARAMS):
    """Permeability at imaginary frequency ``zeta`` (scalar or array)."""
    z = _check_zeta(zeta, allow_zero=True)
    if isinstance(kind, ConstantMaterial):
        out = np.full_like(z, kind.mu)
    else:
        model = kind.permeability_model
        if model is PermeabilityModel.LORENTZ_MAGNETIC:
            out = 1.0 + params.Omega_m**2 / (z * z + params.omega_m**2 + params.gamma_m * z)
        elif model is PermeabilityModel.NON_MAGNETIC:
            out = np.ones_like(z)
        else:
            raise ValueError(f"unknown permeability model: {model!r}")
    return out if np.ndim(zeta) else float(out)


def cm_contrast(eps):
    """Clausius-Mossotti resummed dielectric contrast.

    Maps ``eps`` to ``(eps - 1)/(1 + (eps - 1)/3)``: monotone in ``eps``,
    zero at 1 and bounded above by 3, which keeps the kernels finite even
    when the bare metallic contrast diverges at low frequency.
    """
    d = np.asarray(eps, dtype=float) - 1.0
    out = d / (1.0 + d / 3.0)
    return out if np.ndim(eps) else float(out)


class PatchContrasts(NamedTuple):
    """Per-patch dielectric and magnetic contrasts, index order (patch1, patch2)."""

    delta_eps: tuple
    delta_mu: tuple


def patch_contrasts(assign: CaseAssignment, zeta, params: DispersionParams = DEFAULT_PARAMS) -> PatchContrasts:
    """Contrast values feeding the mode amplitudes.

    The dielectric contrast honors ``assign.resum_epsilon``; the magnetic
    contrast is always the bare ``mu - 1``.
    """
    des = []
    dms = []
    for mat in (assign.patch1, assign.patch2):
        e = eps_at(mat, zeta, params)
        des.append(cm_contrast(e) if assign.resum_epsilon else e - 1.0)
        dms.append(mu_at(mat, zeta, params) - 1.0)
    return PatchContrasts(delta_eps=(des[0], des[1]), delta_mu=(dms[0], dms[1]))
