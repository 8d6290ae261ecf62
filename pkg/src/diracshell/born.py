"""
First-order Born approximation for concentric delta shells.

With q = 2p sin(theta/2) and form factor F(q) = sum_i a_i r_i sin(q r_i)/q,

    dsigma/dOmega = E^2 (1 - beta^2 sin^2(theta/2)) F(q)^2,

which is the usual E(1 - beta^2 s^2)/(4 beta p s^2) [sum a_i r_i sin(q r_i)]^2
rewritten so that theta = 0 is regular (E p / beta = E^2). The arguments
alpha_i = 2 sqrt(beta E p) r_i of the total reduce to 2 p r_i since
beta E = p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .channels import ShellPotential, kinematics_from_energy
from .errors import DomainError
from .specfun import cin

THETA_MIN = 1e-4
QUAD_INTERVALS = 2**14


@dataclass(frozen=True)
class BornInputs:
    epsilon: float
    p: float
    beta: float
    shells: tuple

    @property
    def alphas(self) -> list[float]:
        return [2.0 * self.p * r for r, _ in self.shells]


def born_inputs(epsilon: float, pot) -> BornInputs:
    if not isinstance(pot, ShellPotential):
        pot = ShellPotential(pot)
    kin = kinematics_from_energy(epsilon)
    return BornInputs(kin.epsilon, kin.k, kin.k / kin.epsilon, pot.shells)


def form_factor(q, shells):
    """sum_i a_i r_i sin(q r_i)/q, continuous at q = 0."""
    q = np.asarray(q, dtype=float)
    out = np.zeros(q.shape)
    for r, a in shells:
        out += a * r * r * np.sinc(q * r / math.pi)
    return out


def born_differential(theta, inputs: BornInputs, theta_min: float = THETA_MIN):
    """dsigma/dOmega at scattering angle theta (radians)."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < theta_min) or np.any(theta > math.pi):
        raise DomainError(
            f"theta must lie in [{theta_min:g}, pi]; the forward point is excluded "
            "only to avoid 0/0 rounding, the limit itself is finite"
        )
    s = np.sin(theta / 2)
    q = 2.0 * inputs.p * s
    val = inputs.epsilon**2 * (1.0 - inputs.beta**2 * s * s) * form_factor(q, inputs.shells) ** 2
    return float(val) if val.ndim == 0 else val


def born_forward_limit(inputs: BornInputs) -> float:
    return inputs.epsilon**2 * sum(a * r * r for r, a in inputs.shells) ** 2


def born_total_quadrature(inputs: BornInputs, intervals: int = QUAD_INTERVALS) -> float:
    """
    Total cross section by composite Simpson in u = sin(theta/2):

        sigma = 8 pi E^2 int_0^1 u (1 - beta^2 u^2) F(2 p u)^2 du.

    Fixed partition, so results are reproducible bit for bit.
    """
    if intervals % 2:
        intervals += 1
    u = np.linspace(0.0, 1.0, intervals + 1)
    y = u * (1.0 - inputs.beta**2 * u * u) * form_factor(2.0 * inputs.p * u, inputs.shells) ** 2
    return float(8.0 * math.pi * inputs.epsilon**2 * simpson(y, x=u))


def _t(u):
    # int_0^1 s cos(u s) ds
    if u == 0:
        return 0.5
    if abs(u) < 1e-4:
        return 0.5 - u * u / 8.0 + u**4 / 144.0
    return math.sin(u) / u - 2.0 * math.sin(u / 2) ** 2 / (u * u)


def born_total_closed(inputs: BornInputs, signed: bool = True) -> float:
    """
    Closed-form total for one or two shells.

    Each pair of shells contributes
    w_ij/2 [Cin(a_i + a_j) - Cin(|a_i - a_j|) - beta^2 (T(|a_i - a_j|) - T(a_i + a_j))]
    with w_ij = a_i r_i a_j r_j, Cin(x) = C + ln x - Ci(x) and
    T(u) = int_0^1 s cos(us) ds. With ``signed=False`` strengths enter as |a_i|.
    """
    if len(inputs.shells) > 2:
        raise DomainError("closed-form Born total is implemented for at most two shells")
    weights = [(a if signed else abs(a)) * r for r, a in inputs.shells]
    alphas = inputs.alphas
    b2 = inputs.beta**2
    acc = 0.0
    for i, (wi, ai) in enumerate(zip(weights, alphas)):
        for wj, aj in zip(weights, alphas):
            d, s = abs(ai - aj), ai + aj
            acc += 0.5 * wi * wj * (cin(s) - cin(d) - b2 * (_t(d) - _t(s)))
    return 2.0 * math.pi * inputs.epsilon / (inputs.beta * inputs.p) * acc


def born_sign_variants(inputs: BornInputs) -> dict:
    """Totals with the strengths' signs kept and dropped.

    They differ only through the cross term of mixed-sign shell pairs.
    """
    return {
        "signed": born_total_closed(inputs, signed=True),
        "unsigned": born_total_closed(inputs, signed=False),
    }
