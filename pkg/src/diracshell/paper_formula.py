"""
Closed-form expressions transcribed exactly as printed in the source article.

Kept apart from the library proper: the matching engine and the Born
quadrature are ground truth, and these functions exist so that their
agreement (or disagreement) with it can be measured. See the README for
the known discrepancies.
"""

from __future__ import annotations

import math

from .channels import Channel, Kinematics, spinor_ratio_A
from .errors import DomainError
from .partialwave import PhaseShift, _alpha, _bessel_quad, principal_value
from .specfun import EULER_GAMMA, cosine_integral


def phase_shift_1delta_printed(channel: Channel, kin: Kinematics, a: float, r0: float) -> PhaseShift:
    """Single shell, with the A-term of the denominator as printed: A (nb j - n jb).

    Equal to the matching engine evaluated at strength -a.
    """
    alpha = _alpha(a)
    A = spinor_ratio_A(channel, kin)
    jl, nl, jb, nb = _bessel_quad(channel, kin.k * r0)
    num = alpha * (A * A * jb * jb + jl * jl)
    den = A * (nb * jl - nl * jb) + alpha * (nl * jl + A * A * nb * jb)
    return PhaseShift(principal_value(math.atan2(num, den)))


def a_tilde(channel: Channel, kin: Kinematics, a1: float, r1: float) -> float:
    alpha1 = _alpha(a1)
    A = spinor_ratio_A(channel, kin)
    jl, nl, jb, nb = _bessel_quad(channel, kin.k * r1)
    num = alpha1 * (A * A * jb * jb + jl * jl)
    den = A * (nl * jb - nb * jl) - alpha1 * (nl * jl + A * A * nb * jb)
    return num / den


def phase_shift_2delta_closed(channel: Channel, kin: Kinematics, a1, r1, a2, r2) -> PhaseShift:
    """Two shells, outer Bessel functions at k r2 and the inner shell folded into A~(k r1)."""
    if not 0 < r1 < r2:
        raise DomainError(f"need 0 < r1 < r2, got r1={r1}, r2={r2}")
    alpha2 = _alpha(a2)
    at = a_tilde(channel, kin, a1, r1)
    A = spinor_ratio_A(channel, kin)
    jl, nl, jb, nb = _bessel_quad(channel, kin.k * r2)
    num = alpha2 * (A * A * jb * jb + jl * jl + A * A * nb * jb + nl * jl) + at * (A * (nl * jb - nb * jl))
    den = A * (nb * jl - nl * jb) + alpha2 * (A * A * nb * jb + nl * jl + at * (A * A * nb * nb + nl * nl))
    return PhaseShift(principal_value(math.atan2(num, den)))


def born_total_printed(inputs) -> float:
    """Closed-form Born total for one or two shells, strengths taken unsigned."""
    shells = list(inputs.shells)
    if len(shells) > 2:
        raise DomainError("the printed closed form covers at most two shells")
    if len(shells) == 1:
        shells.append((shells[0][0] * 2.0, 0.0))
    (r1, a1), (r2, a2) = shells
    a1, a2 = abs(a1), abs(a2)
    E, beta, p = inputs.epsilon, inputs.beta, inputs.p
    al1, al2 = 2 * p * r1, 2 * p * r2
    w1, w2 = (a1 * r1) ** 2, (a2 * r2) ** 2
    d, s = al1 - al2, al1 + al2
    body = (
        -2 * cosine_integral(2 * al1) * w1
        - 2 * cosine_integral(2 * al2) * w2
        + 2 * math.log(2 * al1) * w1
        + 2 * math.log(2 * al2) * w2
        - beta**2 * (w1 + w2)
        + beta**2 * (math.sin(2 * al1) / al1 * w1 + math.sin(2 * al2) / al2 * w2)
        - beta**2 * (math.sin(al1) ** 2 / al1**2 * w1 + math.sin(al2) ** 2 / al2**2 * w2)
        + 4 * (a1 * r1) * (a2 * r2) * (
            # Ci of a negative argument is taken at |alpha1 - alpha2|
            cosine_integral(abs(d)) - cosine_integral(s)
            - beta**2 * (
                math.sin(d) / d + math.cos(d) / d**2 - 1 / d**2
                - math.sin(s) / s - math.cos(s) / s**2 + 1 / s**2
            )
        )
        - EULER_GAMMA * (2 * w1 + 2 * w2)
    )
    return math.pi * E / (2 * beta * p) * body
