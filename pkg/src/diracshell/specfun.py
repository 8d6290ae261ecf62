"""
Special functions used by the scattering code.

Spherical Bessel functions of both kinds, Legendre polynomials P_l and the
order-one associated functions P^1_l, and the cosine integral Ci.

Conventions
-----------
P^1_l(x) = +(1 - x^2)^{1/2} dP_l/dx, i.e. *without* the Condon-Shortley
phase. Only |g|^2 enters the cross sections, so observables do not depend
on this choice, but values differ in sign from e.g. ``scipy.special.lpmv``
for odd m.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import DomainError

L_MAX = 50
EULER_GAMMA = 0.57721566490153286061

# Ci: ascending series up to here, continued fraction above.
CI_SWITCH = 20.0


def _check_order(l, lmax=L_MAX):
    if l < 0:
        raise DomainError(f"order l={l} must be non-negative")
    if l > lmax:
        raise DomainError(f"order l={l} exceeds L_MAX={lmax}")


# ---------------------------------------------------------------------------
# spherical Bessel functions
# ---------------------------------------------------------------------------

def _j_series(l, x):
    """Ascending series sum_m (-1)^m x^(2m+l) / (2^m m! (2l+2m+1)!!)."""
    term = x**l
    for k in range(1, l + 1):
        term /= 2 * k + 1
    total = term
    x2 = x * x
    m = 0
    while True:
        m += 1
        term *= -x2 / (2.0 * m * (2 * l + 2 * m + 1))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total


def _j_miller(l, x):
    # Downward recurrence from far above max(l, x); the minimal solution
    # dominates, so any seed works. Normalised against whichever of j_0, j_1
    # is larger to stay clear of their zeros.
    base = max(l, int(math.ceil(x)))
    start = base + int(math.ceil(math.sqrt(40 * base))) + 20
    f_up, f = 0.0, 1e-300
    f0 = f1 = fl = 0.0
    for n in range(start, 0, -1):
        # f holds f_n, f_up holds f_{n+1}; step to f_{n-1}
        f_down = (2 * n + 1) / x * f - f_up
        f_up, f = f, f_down
        if n - 1 == l:
            fl = f
        if n - 1 == 1:
            f1 = f
        if abs(f) > 1e250:
            f_up *= 1e-250
            f *= 1e-250
            fl *= 1e-250
            f1 *= 1e-250
    f0 = f
    if l == 0:
        fl = f0
    elif l == 1:
        fl = f1
    j0 = math.sin(x) / x
    j1 = math.sin(x) / (x * x) - math.cos(x) / x
    if abs(j0) >= abs(j1):
        return fl * (j0 / f0)
    return fl * (j1 / f1)


def _j_upward(l, x):
    j_prev = math.sin(x) / x
    if l == 0:
        return j_prev
    j_cur = math.sin(x) / (x * x) - math.cos(x) / x
    for n in range(1, l):
        j_prev, j_cur = j_cur, (2 * n + 1) / x * j_cur - j_prev
    return j_cur


def sph_bessel_j(l, x):
    """
    Spherical Bessel function of the first kind, j_l(x).

    Uses the power series for x < 0.02 (l + 1), upward recurrence when
    x > l (where it is stable) and Miller's downward recurrence otherwise.
    """
    _check_order(l)
    if x < 0:
        raise DomainError(f"j_l needs x >= 0, got {x}")
    if x == 0:
        return 1.0 if l == 0 else 0.0
    if x < 0.02 * (l + 1):
        return _j_series(l, x)
    if x > l:
        return _j_upward(l, x)
    return _j_miller(l, x)


def sph_bessel_n(l, x):
    """Spherical Bessel function of the second kind n_l(x) (upward recurrence)."""
    _check_order(l)
    if x <= 0:
        raise DomainError(f"n_l has a pole at x=0; need x > 0, got {x}")
    n_prev = -math.cos(x) / x
    if l == 0:
        return n_prev
    n_cur = -math.cos(x) / (x * x) - math.sin(x) / x
    for n in range(1, l):
        n_prev, n_cur = n_cur, (2 * n + 1) / x * n_cur - n_prev
    return n_cur


# ---------------------------------------------------------------------------
# Legendre functions
# ---------------------------------------------------------------------------

def _as_cosine(x):
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("Legendre argument must satisfy |x| <= 1")
    return arr


def legendre_p_all(lmax, x):
    """Array of P_0(x) .. P_lmax(x), shape (lmax + 1,) + shape(x)."""
    _check_order(lmax)
    x = _as_cosine(x)
    out = np.empty((lmax + 1,) + x.shape)
    out[0] = 1.0
    if lmax >= 1:
        out[1] = x
    for l in range(1, lmax):
        out[l + 1] = ((2 * l + 1) * x * out[l] - l * out[l - 1]) / (l + 1)
    return out


def assoc_legendre_p1_all(lmax, x):
    """
    Array of P^1_0(x) .. P^1_lmax(x) (positive convention, P^1_0 = 0).

    Recurrence l P^1_{l+1} = (2l+1) x P^1_l - (l+1) P^1_{l-1}.
    """
    _check_order(lmax)
    x = _as_cosine(x)
    out = np.zeros((lmax + 1,) + x.shape)
    if lmax >= 1:
        out[1] = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    for l in range(1, lmax):
        out[l + 1] = ((2 * l + 1) * x * out[l] - (l + 1) * out[l - 1]) / l
    return out


def legendre_p(l, x):
    """Legendre polynomial P_l(x) by Bonnet's recurrence."""
    val = legendre_p_all(l, x)[l]
    return float(val) if np.ndim(val) == 0 else val


def assoc_legendre_p1(l, x):
    """Associated Legendre function P^1_l(x) = (1-x^2)^{1/2} dP_l/dx, l >= 1."""
    if l == 0:
        raise DomainError("P^1_0 is identically zero; need l >= 1")
    val = assoc_legendre_p1_all(l, x)[l]
    return float(val) if np.ndim(val) == 0 else val


# ---------------------------------------------------------------------------
# cosine integral
# ---------------------------------------------------------------------------

def ci_series(x):
    """
    Ci(x) = C + ln x + sum_{k>=1} (-1)^k x^{2k} / (2k (2k)!).

    For x above a few units the terms grow to ~1e8 before decaying, so the
    sum is accumulated exactly in rationals and rounded once.
    """
    if x <= 0:
        raise DomainError(f"Ci needs x > 0, got {x}")
    if x <= 4.0:
        total = 0.0
        p = 1.0
        k = 0
        while True:
            k += 1
            p *= x * x / ((2 * k) * (2 * k - 1))
            term = p / (2 * k)
            total += -term if k % 2 else term
            if term < 1e-18:
                break
        return EULER_GAMMA + math.log(x) + total
    xx = Fraction(x) ** 2
    p = Fraction(1)
    total = Fraction(0)
    k = 0
    while True:
        k += 1
        p = p * xx / ((2 * k) * (2 * k - 1))
        term = p / (2 * k)
        total += -term if k % 2 else term
        if term < Fraction(1, 10**20):
            break
    return EULER_GAMMA + math.log(x) + float(total)


def ci_continued_fraction(x, tol=1e-16, max_iter=10000):
    """Ci(x) from the continued fraction for E1(ix) (modified Lentz); x >~ 2."""
    if x <= 0:
        raise DomainError(f"Ci needs x > 0, got {x}")
    tiny = 1e-300
    b = complex(1.0, x)
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(2, max_iter):
        a = -float((i - 1) ** 2)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < tol:
            break
    else:
        raise RuntimeError(f"Ci continued fraction did not converge at x={x}")
    h *= cmath.exp(complex(0.0, -x))
    return -h.real


def cosine_integral(x):
    """Cosine integral Ci(x) for x > 0."""
    if x <= 0:
        raise DomainError(f"Ci needs x > 0, got {x}")
    if x <= CI_SWITCH:
        return ci_series(x)
    return ci_continued_fraction(x)


def cin(x):
    """
    Entire companion Cin(x) = C + ln x - Ci(x) = int_0^x (1 - cos t)/t dt.

    Defined at x = 0 (value 0); used where Ci and ln x appear together and
    would otherwise cancel.
    """
    if x < 0:
        raise DomainError(f"Cin needs x >= 0, got {x}")
    if x == 0:
        return 0.0
    if x <= 4.0:
        total = 0.0
        p = 1.0
        k = 0
        while True:
            k += 1
            p *= x * x / ((2 * k) * (2 * k - 1))
            term = p / (2 * k)
            total += term if k % 2 else -term
            if term < 1e-18 * max(total, 1e-300):
                return total
    return EULER_GAMMA + math.log(x) - cosine_integral(x)
