"""Physical constants (SI). Fixed by definition, never configurable."""

from dataclasses import dataclass

HBAR = 1.054_571_817e-34  # J s
C_LIGHT = 299_792_458.0   # m/s


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR
    c: float = C_LIGHT


CONSTANTS = PhysicalConstants()
