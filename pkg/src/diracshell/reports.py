"""Energy scans written as CSV: phase shifts, cross sections, Born totals, comparisons."""

from __future__ import annotations

import io
import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from .born import born_inputs, born_total_closed, born_total_quadrature
from .channels import ShellPotential, channels_for_l, kinematics_from_energy
from .errors import DomainError
from .paper_formula import born_total_printed
from scipy.integrate import simpson

from .partialwave import (
    amplitudes_for_potential,
    differential_cross_section,
    flag_wraps,
    phase_shift_matching,
    total_cross_section,
)
from .scenario import Scenario


class NumericDomainError(DomainError):
    """Domain error raised inside a scan, annotated with where it happened."""


def fmt(value) -> str:
    """Shortest round-trip decimal for floats; 0/1 for booleans."""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(path, header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    return text


def _map(func, energies, workers):
    energies = [float(e) for e in energies]
    if workers <= 1:
        return [func(e) for e in energies]
    chunk = max(1, len(energies) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, energies, chunksize=chunk))


# per-energy workers (module level so they pickle)

def _phase_point(eps, shells, l_max):
    pot = ShellPotential(shells)
    kin = kinematics_from_energy(eps)
    out = []
    for l in range(l_max + 1):
        for ch in channels_for_l(l):
            try:
                ps = phase_shift_matching(ch, kin, pot)
            except DomainError as exc:
                raise NumericDomainError(f"epsilon={eps!r}, kappa={ch.kappa}: {exc}") from exc
            out.append((eps, ch.kappa, ch.coupling, ps.eta, ps.resonance))
    return out


def _xsec_point(eps, shells, l_max):
    try:
        amps = amplitudes_for_potential(kinematics_from_energy(eps), ShellPotential(shells), l_max)
    except DomainError as exc:
        raise NumericDomainError(f"epsilon={eps!r}: {exc}") from exc
    return total_cross_section(amps)[1]


def _born_point(eps, shells, printed):
    try:
        inp = born_inputs(eps, shells)
        quad = born_total_quadrature(inp)
        if len(shells) > 2:
            closed = math.nan
        elif printed:
            closed = born_total_printed(inp)
        else:
            closed = born_total_closed(inp)
    except DomainError as exc:
        raise NumericDomainError(f"epsilon={eps!r}: {exc}") from exc
    return closed, quad


def phase_shift_rows(sc: Scenario, workers: int = 1):
    per_energy = _map(partial(_phase_point, shells=sc.shells, l_max=sc.l_max), sc.energies(), workers)
    rows = sorted((r for block in per_energy for r in block), key=lambda r: (r[0], r[1]))
    # wrap flags need each channel's curve in energy order
    by_kappa: dict = {}
    for i, r in enumerate(rows):
        by_kappa.setdefault(r[1], []).append(i)
    rows = [list(r) for r in rows]
    for idx in by_kappa.values():
        flags = flag_wraps([rows[i][3] for i in idx], [rows[i][4] for i in idx])
        for i, f in zip(idx, flags):
            rows[i][4] = bool(f)
    return rows


def run_phase_shifts(sc: Scenario, workers: int = 1) -> str:
    header = ["epsilon", "kappa", "coupling", "eta", "resonance_flag"]
    return write_csv(sc.output_path, header, phase_shift_rows(sc, workers))


def cross_section_rows(sc: Scenario, workers: int = 1):
    cums = _map(partial(_xsec_point, shells=sc.shells, l_max=sc.l_max), sc.energies(), workers)
    return [[eps, *cum] for eps, cum in zip(sc.energies(), cums)]


def run_cross_sections(sc: Scenario, workers: int = 1) -> str:
    header = ["epsilon", "sigma_l0"] + [f"sigma_l{l}_cum" for l in range(1, sc.l_max + 1)]
    return write_csv(sc.output_path, header, cross_section_rows(sc, workers))


def relative_gap(closed, quad):
    if quad > 1e-12:
        return abs(closed - quad) / quad
    return 0.0 if abs(closed - quad) <= 1e-12 else math.nan


def born_rows(sc: Scenario, workers: int = 1, printed: bool = False):
    vals = _map(partial(_born_point, shells=sc.shells, printed=printed), sc.energies(), workers)
    return [[eps, c, q, relative_gap(c, q)] for eps, (c, q) in zip(sc.energies(), vals)]


def run_born(sc: Scenario, workers: int = 1, printed: bool = False) -> str:
    header = ["epsilon", "sigma_closed", "sigma_quadrature", "rel_gap"]
    return write_csv(sc.output_path, header, born_rows(sc, workers, printed))


def _trend(eps, sigma):
    sigma = np.asarray(sigma)
    i = int(np.argmax(sigma))
    peak = sigma[i]
    tail = sigma[-1] / peak if peak > 0 else 0.0
    return eps[i], peak, tail


def angular_check(sc: Scenario) -> str:
    """Partial-wave total vs 2 pi int I(theta) sin(theta) on theta_steps points, at eps_min."""
    amps = amplitudes_for_potential(kinematics_from_energy(sc.eps_min), ShellPotential(sc.shells), sc.l_max)
    theta = np.linspace(0.0, math.pi, sc.theta_steps)
    res = differential_cross_section(theta, amps)
    integral = 2 * math.pi * simpson(res.i_of_theta * np.sin(theta), x=theta)
    total = res.sigma_total_by_lmax[-1]
    rel = abs(integral - total) / total if total > 0 else abs(integral)
    return f"angular integral check at epsilon={sc.eps_min}: relative gap {rel:.3g} ({sc.theta_steps} angles)"


def run_compare(sc: Scenario, workers: int = 1):
    """CSV of partial-wave and Born totals plus a plain-text summary.

    The two are not expected to agree numerically; the summary puts peak
    positions, high-energy decay and the partial-wave truncation error side
    by side.
    """
    eps = sc.energies()
    pw = [cum[-1] for cum in _map(partial(_xsec_point, shells=sc.shells, l_max=sc.l_max), eps, workers)]
    pw_next = [cum[-1] for cum in _map(partial(_xsec_point, shells=sc.shells, l_max=sc.l_max + 1), eps, workers)]
    born = [q for _, q in _map(partial(_born_point, shells=sc.shells, printed=False), eps, workers)]
    rows = [[e, a, b] for e, a, b in zip(eps, pw, born)]
    csv_text = write_csv(sc.output_path, ["epsilon", "sigma_pw_cum", "sigma_born_quadrature"], rows)

    lines = [f"shells: {sc.shells}", f"energy scan: {sc.eps_min} .. {sc.eps_max} ({sc.steps} points)"]
    for name, sig in (("partial wave (l <= %d)" % sc.l_max, pw), ("Born quadrature", born)):
        e_pk, pk, tail = _trend(eps, sig)
        lines.append(f"{name}: peak {pk:.6g} at epsilon={e_pk:.6g}; sigma(eps_max)/peak = {tail:.4g}"
                     f"; decaying at eps_max: {'yes' if sig[-1] < sig[-2] else 'no'}")
    deltas = [abs(b - a) / a if a > 0 else abs(b - a) for a, b in zip(pw, pw_next)]
    lines.append(f"l_max -> l_max+1 convergence delta: max relative change {max(deltas):.3g}"
                 f" at epsilon={eps[int(np.argmax(deltas))]:.6g}")
    lines.append(angular_check(sc))
    summary = "\n".join(lines) + "\n"
    if sc.output_path is not None:
        Path(str(sc.output_path) + ".summary.txt").write_text(summary)
    return csv_text, summary
