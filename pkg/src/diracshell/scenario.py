"""
Scan scenarios: flat ``key = value`` config files and built-in presets.

Example config::

    # single attractive shell
    method = partial-wave
    shell = 1.0, -1.0
    eps_min = 1.01
    eps_max = 4.0
    steps = 600
    l_max = 2

``shell = <radius>, <strength>`` may repeat; order in the file is the order
of the shells and radii must increase.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ScenarioError

METHODS = ("partial-wave", "born", "compare")
L_MAX_CLI = 10

# figure grids: eps in [1.01, 4.0], 600 points
_FIG_GRID = dict(eps_min=1.01, eps_max=4.0, steps=600)

PRESETS = {
    "fig1": dict(shells=[(1.0, -1.0)], l_max=1, **_FIG_GRID),
    "fig2": dict(shells=[(1.0, -1.0)], l_max=2, **_FIG_GRID),
    "fig3": dict(shells=[(2.0, 1.0), (3.0, 1.0)], l_max=2, **_FIG_GRID),
    "fig4": dict(shells=[(2.0, -1.0), (3.0, -1.0)], l_max=2, **_FIG_GRID),
}


@dataclass
class Scenario:
    method: str = "partial-wave"
    shells: list = field(default_factory=list)
    eps_min: float = 1.01
    eps_max: float = 4.0
    steps: int = 600
    l_max: int = 2
    theta_steps: int = 2001
    output_path: str | None = None

    def energies(self) -> np.ndarray:
        return np.linspace(self.eps_min, self.eps_max, self.steps)


def validate(sc: Scenario) -> Scenario:
    problems = []
    if sc.method not in METHODS:
        problems.append(f"method must be one of {', '.join(METHODS)}; got {sc.method!r}")
    if not sc.shells:
        problems.append("at least one shell is required")
    for i, (r, a) in enumerate(sc.shells):
        if not r > 0:
            problems.append(f"shell {i}: radius must be positive, got {r}")
    radii = [r for r, _ in sc.shells]
    for i in range(1, len(radii)):
        if not radii[i] > radii[i - 1]:
            problems.append(f"shell {i}: radius {radii[i]} not greater than previous {radii[i - 1]}")
    if not sc.eps_min > 1:
        problems.append(f"eps_min must exceed 1, got {sc.eps_min}")
    if not sc.eps_max >= sc.eps_min:
        problems.append(f"eps_max ({sc.eps_max}) must not be below eps_min ({sc.eps_min})")
    if sc.steps < 2:
        problems.append(f"steps must be at least 2, got {sc.steps}")
    if not 0 <= sc.l_max <= L_MAX_CLI:
        problems.append(f"l_max must lie in [0, {L_MAX_CLI}], got {sc.l_max}")
    if sc.theta_steps < 2:
        problems.append(f"theta_steps must be at least 2, got {sc.theta_steps}")
    if problems:
        raise ScenarioError(problems)
    return sc


_SCALARS = {
    "eps_min": float,
    "eps_max": float,
    "steps": int,
    "l_max": int,
    "theta_steps": int,
    "method": str,
    "output": str,
}


def parse_config(text: str) -> tuple[dict, list]:
    """Parse config text into keyword arguments for Scenario plus a problem list."""
    values: dict = {}
    problems = []
    shells = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "shell":
            parts = [p.strip() for p in value.split(",")]
            try:
                if len(parts) != 2:
                    raise ValueError
                shells.append((float(parts[0]), float(parts[1])))
            except ValueError:
                problems.append(f"line {lineno}: shell needs '<radius>, <strength>', got {value!r}")
            continue
        if key not in _SCALARS:
            problems.append(f"line {lineno}: unknown key {key!r}")
            continue
        if key in values:
            problems.append(f"line {lineno}: duplicate key {key!r}")
            continue
        try:
            values[key] = _SCALARS[key](value)
        except ValueError:
            problems.append(f"line {lineno}: {key} expects {_SCALARS[key].__name__}, got {value!r}")
    if shells:
        values["shells"] = shells
    if "output" in values:
        values["output_path"] = values.pop("output")
    return values, problems


def load_scenario(method: str, config: str | Path | None = None, preset: str | None = None,
                  output: str | None = None) -> Scenario:
    """Build and validate a scenario for ``method`` from a config file or preset.

    Every problem found (parse errors, unknown keys, violated constraints,
    a config ``method`` that disagrees with ``method``) is reported together.
    """
    problems = []
    if (config is None) == (preset is None):
        raise ScenarioError(["give exactly one of a config file or a preset"])
    if preset is not None:
        if preset not in PRESETS:
            raise ScenarioError([f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}"])
        values = dict(PRESETS[preset])
    else:
        values, problems = parse_config(Path(config).read_text())
        if values.get("method", method) != method:
            problems.append(f"config method {values['method']!r} does not match command {method!r}")
    values["method"] = method
    if output is not None:
        values["output_path"] = output
    sc = Scenario(**values)
    try:
        validate(sc)
    except ScenarioError as exc:
        problems.extend(exc.problems)
    if problems:
        raise ScenarioError(problems)
    return sc


def format_scenario(sc: Scenario) -> str:
    """Render a scenario back to config text (round-trips through parse_config)."""
    lines = [f"method = {sc.method}"]
    lines += [f"shell = {r!r}, {a!r}" for r, a in sc.shells]
    for f in dataclasses.fields(sc):
        if f.name in ("method", "shells", "output_path"):
            continue
        lines.append(f"{f.name} = {getattr(sc, f.name)!r}")
    if sc.output_path:
        lines.append(f"output = {sc.output_path}")
    return "\n".join(lines) + "\n"
