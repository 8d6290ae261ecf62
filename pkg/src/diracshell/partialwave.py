"""
Phase shifts and cross sections for concentric delta shells.

The radial state at a radius is kept as the projective pair (G, F) of upper
and lower amplitudes. The overall factor r of G(r) = r g(r) is dropped:
every quantity extracted below is a ratio at a single radius or a ratio of
coefficients, where it cancels.

Crossing a shell of strength a multiplies F/G = tan(theta) into
tan(theta + a), i.e. rotates (G, F) by the angle a. Written as a rotation
the jump stays finite where tan(a) or F/G blow up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .channels import (
    Channel,
    Kinematics,
    ShellPotential,
    channels_for_l,
    kinematics_from_energy,
    spinor_ratio_A,
)
from .errors import DomainError
from .specfun import assoc_legendre_p1_all, legendre_p_all, sph_bessel_j, sph_bessel_n

MATCH_X_FLOOR = 1e-12
RESONANCE_RATIO = 1e-12
ALPHA_POLE_TOL = 1e-12


class RadialState(NamedTuple):
    g: float
    f: float


@dataclass(frozen=True)
class PhaseShift:
    """Principal-value phase shift, eta in (-pi/2, pi/2]."""

    eta: float
    resonance: bool = False


@dataclass(frozen=True)
class Amplitudes:
    l: int
    a_hat: complex
    b_hat: complex


@dataclass
class CrossSectionResult:
    theta: np.ndarray
    i_of_theta: np.ndarray
    sigma_total_by_lmax: list


def principal_value(eta):
    """Reduce an angle to (-pi/2, pi/2]."""
    eta = math.remainder(eta, math.pi)
    if eta <= -math.pi / 2:
        eta += math.pi
    return eta


# ---------------------------------------------------------------------------
# matching engine
# ---------------------------------------------------------------------------

def crossing_rotation(state: RadialState, a: float) -> RadialState:
    c, s = math.cos(a), math.sin(a)
    return RadialState(state.g * c - state.f * s, state.f * c + state.g * s)


def _bessel_quad(channel, x):
    l, lb = channel.l, channel.l_bar
    return sph_bessel_j(l, x), sph_bessel_n(l, x), sph_bessel_j(lb, x), sph_bessel_n(lb, x)


def free_state(channel: Channel, kin: Kinematics, r: float, coeffs) -> RadialState:
    """(G, F)/r for the free solution c_j * regular + c_n * irregular."""
    c_j, c_n = coeffs
    x = kin.k * r
    A = spinor_ratio_A(channel, kin)
    if c_n == 0:
        return RadialState(c_j * sph_bessel_j(channel.l, x), A * c_j * sph_bessel_j(channel.l_bar, x))
    if x <= 0:
        raise DomainError("irregular solution is singular at r = 0")
    jl, nl, jb, nb = _bessel_quad(channel, x)
    return RadialState(c_j * jl + c_n * nl, A * (c_j * jb + c_n * nb))


def match_outer_coeffs(state: RadialState, channel: Channel, kin: Kinematics, r: float):
    """Solve g = c_j j_l + c_n n_l, f = A (c_j j_lbar + c_n n_lbar) for (c_j, c_n)."""
    x = kin.k * r
    if x < MATCH_X_FLOOR:
        raise DomainError(f"k*r = {x:g} below matching floor {MATCH_X_FLOOR:g}")
    A = spinor_ratio_A(channel, kin)
    jl, nl, jb, nb = _bessel_quad(channel, x)
    # det = A (j_l n_lbar - n_l j_lbar) = -|A|/x^2 by the Wronskian, never zero
    det = A * (jl * nb - nl * jb)
    c_j = (state.g * A * nb - nl * state.f) / det
    c_n = (jl * state.f - state.g * A * jb) / det
    return c_j, c_n


def phase_shift_matching(channel: Channel, kin: Kinematics, pot: ShellPotential) -> PhaseShift:
    """Phase shift for N shells by propagating the regular solution outward."""
    c_j, c_n = 1.0, 0.0
    for r, a in pot.shells:
        if a == 0:
            continue
        state = free_state(channel, kin, r, (c_j, c_n))
        state = crossing_rotation(state, a)
        c_j, c_n = match_outer_coeffs(state, channel, kin, r)
    # outside: G ~ j cos(eta) - n sin(eta)
    eta = principal_value(math.atan2(-c_n, c_j))
    return PhaseShift(eta, abs(c_j) < RESONANCE_RATIO * abs(c_n))


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def _alpha(a):
    if abs(math.cos(a)) < ALPHA_POLE_TOL:
        raise DomainError(
            f"alpha-pole: tan({a}) diverges; use phase_shift_matching, which is regular there"
        )
    return math.tan(a)


def tan_eta_1delta(channel: Channel, kin: Kinematics, a: float, r0: float):
    """Numerator and denominator of tan(eta) for a single shell.

    tan eta = alpha (A^2 jb^2 + j^2) / [A (n jb - nb j) + alpha (n j + A^2 nb jb)]
    with Bessel functions at k r0, j, n of order l and jb, nb of order l_bar.
    """
    alpha = _alpha(a)
    A = spinor_ratio_A(channel, kin)
    jl, nl, jb, nb = _bessel_quad(channel, kin.k * r0)
    num = alpha * (A * A * jb * jb + jl * jl)
    den = A * (nl * jb - nb * jl) + alpha * (nl * jl + A * A * nb * jb)
    return num, den


def phase_shift_1delta_closed(channel: Channel, kin: Kinematics, a: float, r0: float) -> PhaseShift:
    if r0 <= 0:
        raise DomainError(f"shell radius must be positive, got {r0}")
    num, den = tan_eta_1delta(channel, kin, a, r0)
    eta = principal_value(math.atan2(num, den))
    return PhaseShift(eta, abs(den) < RESONANCE_RATIO * abs(num))


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

@dataclass
class PhaseShiftTable:
    """eta[i, c] for energy i and channel c, with resonance flags.

    A flag is set where the coefficient test fires or where the principal
    value wrapped across +-pi/2 since the previous energy on the grid.
    """

    epsilons: np.ndarray
    channels: list
    eta: np.ndarray
    resonance: np.ndarray


def flag_wraps(eta_column, flags=None):
    """Flag points where eta jumped by more than pi/2 from the previous point."""
    eta_column = np.asarray(eta_column, dtype=float)
    out = np.zeros(eta_column.shape, dtype=bool) if flags is None else np.array(flags, dtype=bool)
    if eta_column.size > 1:
        out[1:] |= np.abs(np.diff(eta_column)) > math.pi / 2
    return out


def phase_shift_table(epsilons: Sequence[float], channels: Sequence[Channel], pot: ShellPotential) -> PhaseShiftTable:
    epsilons = np.asarray(epsilons, dtype=float)
    eta = np.empty((len(epsilons), len(channels)))
    res = np.zeros_like(eta, dtype=bool)
    for i, eps in enumerate(epsilons):
        kin = kinematics_from_energy(eps)
        for c, ch in enumerate(channels):
            ps = phase_shift_matching(ch, kin, pot)
            eta[i, c] = ps.eta
            res[i, c] = ps.resonance
    for c in range(len(channels)):
        res[:, c] = flag_wraps(eta[:, c], res[:, c])
    return PhaseShiftTable(epsilons, list(channels), eta, res)


# ---------------------------------------------------------------------------
# amplitudes and cross sections
# ---------------------------------------------------------------------------

def amplitudes_from_shifts(l: int, eta_plus, eta_minus, kin: Kinematics) -> Amplitudes:
    """A_l and B_l from eta^+_l and eta^-_l (eta^- is ignored/absent for l = 0)."""
    ep = eta_plus.eta if isinstance(eta_plus, PhaseShift) else float(eta_plus)
    s_plus = complex(math.cos(2 * ep), math.sin(2 * ep))
    if l == 0 or eta_minus is None:
        s_minus = 1.0 + 0j
    else:
        em = eta_minus.eta if isinstance(eta_minus, PhaseShift) else float(eta_minus)
        s_minus = complex(math.cos(2 * em), math.sin(2 * em))
    pref = 1.0 / (2j * kin.k)
    a_hat = pref * ((l + 1) * (s_plus - 1) + l * (s_minus - 1))
    b_hat = pref * (s_minus - s_plus) if l > 0 else 0j
    return Amplitudes(l, a_hat, b_hat)


def amplitudes_for_potential(kin: Kinematics, pot: ShellPotential, l_max: int) -> list[Amplitudes]:
    amps = []
    for l in range(l_max + 1):
        shifts = [phase_shift_matching(ch, kin, pot) for ch in channels_for_l(l)]
        eta_minus = shifts[1] if l > 0 else None
        amps.append(amplitudes_from_shifts(l, shifts[0], eta_minus, kin))
    return amps


def total_cross_section(amplitudes: Sequence[Amplitudes]):
    """sigma = 4 pi sum_l (|A_l|^2 + l(l+1)|B_l|^2)/(2l+1).

    Returns the total and the cumulative sums for l_max' = 0 .. l_max.
    """
    cumulative = []
    acc = 0.0
    for amp in amplitudes:
        l = amp.l
        acc += 4 * math.pi * (abs(amp.a_hat) ** 2 + l * (l + 1) * abs(amp.b_hat) ** 2) / (2 * l + 1)
        cumulative.append(acc)
    return acc, cumulative


def differential_cross_section(theta, amplitudes: Sequence[Amplitudes]) -> CrossSectionResult:
    """I(theta) = |f|^2 + |g|^2 for an unpolarised beam."""
    theta = np.asarray(theta, dtype=float)
    l_max = amplitudes[-1].l
    x = np.cos(theta)
    p = legendre_p_all(l_max, x)
    p1 = assoc_legendre_p1_all(l_max, x)
    f = np.zeros(theta.shape, dtype=complex)
    g = np.zeros(theta.shape, dtype=complex)
    for amp in amplitudes:
        f += amp.a_hat * p[amp.l]
        if amp.l >= 1:
            g += amp.b_hat * p1[amp.l]
    _, cumulative = total_cross_section(amplitudes)
    return CrossSectionResult(theta, np.abs(f) ** 2 + np.abs(g) ** 2, cumulative)
