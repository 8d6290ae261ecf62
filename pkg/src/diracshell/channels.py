"""
Relativistic quantum-number bookkeeping and kinematics.

Natural units throughout: energies in mc^2, wavenumbers in mc/hbar,
lengths in hbar/mc and shell strengths in hbar*c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError


@dataclass(frozen=True)
class Channel:
    """A Dirac partial wave labelled by kappa.

    kappa > 0: j = l - 1/2, coupling "-"; kappa < 0: j = l + 1/2, coupling "+".
    ``l`` is the orbital index of the upper component, ``l_bar`` that of the
    lower one.
    """

    kappa: int

    def __post_init__(self):
        if self.kappa == 0 or int(self.kappa) != self.kappa:
            raise DomainError(f"kappa must be a nonzero integer, got {self.kappa}")

    @property
    def l(self) -> int:
        return self.kappa if self.kappa > 0 else -self.kappa - 1

    @property
    def l_bar(self) -> int:
        return self.kappa - 1 if self.kappa > 0 else -self.kappa

    @property
    def j_twice(self) -> int:
        return 2 * abs(self.kappa) - 1

    @property
    def j(self) -> float:
        return self.j_twice / 2

    @property
    def coupling(self) -> str:
        return "-" if self.kappa > 0 else "+"

    @property
    def sign(self) -> int:
        return 1 if self.kappa > 0 else -1


def channel_from_kappa(kappa: int) -> Channel:
    return Channel(int(kappa))


def channels_for_l(l: int) -> list[Channel]:
    """Channels with upper orbital index l, "+" coupling (kappa < 0) first."""
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    if l == 0:
        return [Channel(-1)]
    return [Channel(-l - 1), Channel(l)]


@dataclass(frozen=True)
class Kinematics:
    epsilon: float
    k: float
    a_factor: float


def kinematics_from_energy(epsilon: float) -> Kinematics:
    """Wavenumber and spinor-ratio magnitude k/(eps+1) for total energy eps > 1."""
    if not epsilon > 1.0:
        raise DomainError(f"epsilon must exceed 1 (scattering regime), got {epsilon}")
    # (eps-1)(eps+1) keeps precision near threshold
    k = math.sqrt((epsilon - 1.0) * (epsilon + 1.0))
    return Kinematics(epsilon=float(epsilon), k=k, a_factor=k / (epsilon + 1.0))


def spinor_ratio_A(channel: Channel, kin: Kinematics) -> float:
    """Ratio of lower to upper free-wave amplitude, sign(kappa) k/(eps+1)."""
    return channel.sign * kin.a_factor


@dataclass(frozen=True)
class ShellPotential:
    """Concentric delta shells V(r) = sum_i a_i delta(r - r_i).

    ``shells`` is a tuple of (radius, strength) with strictly increasing radii.
    """

    shells: tuple

    def __init__(self, shells: Sequence[tuple[float, float]]):
        shells = tuple((float(r), float(a)) for r, a in shells)
        if not shells:
            raise DomainError("a shell potential needs at least one shell")
        radii = [r for r, _ in shells]
        if any(r <= 0 for r in radii):
            raise DomainError(f"shell radii must be positive, got {radii}")
        if any(r2 <= r1 for r1, r2 in zip(radii, radii[1:])):
            raise DomainError(f"shell radii must be strictly increasing, got {radii}")
        object.__setattr__(self, "shells", shells)

    @property
    def radii(self) -> list[float]:
        return [r for r, _ in self.shells]

    @property
    def strengths(self) -> list[float]:
        return [a for _, a in self.shells]

    @property
    def alphas(self) -> list[float]:
        """tan(a_i); infinite-ish near a_i = pi/2 + n pi."""
        return [math.tan(a) for _, a in self.shells]

    def __len__(self):
        return len(self.shells)
