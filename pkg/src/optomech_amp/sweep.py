"""Transmission over parameter grids, with the published figures as presets."""

from __future__ import annotations

import cmath
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import is_stable
from .errors import InvalidSpec, SingularSystem, UnknownPreset
from .params import ReducedParams, reduced_from_direct
from .response import transmission_general

AXIS_PARAMS = ("Delta_m", "theta", "phi", "y", "G", "J", "gamma_1", "gamma_2")
OUTPUT_COLUMNS = ("T21", "T12", "t21", "t12", "isolation_db", "stable")
DEFAULT_OUTPUTS = ("T21", "T12", "isolation_db")
DEFAULT_GRID_POINTS = 401


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter: an inclusive linspace over [start, stop]."""

    name: str
    start: float
    stop: float
    count: int


@dataclass(frozen=True)
class SweepSpec:
    """Grid evaluation request over 1 or 2 axes around a base operating point.

    link_detunings ties Delta''_1 = Delta''_2 = Delta_m while sweeping Delta_m,
    matching the figure convention for transmission spectra.
    """

    base: ReducedParams
    axes: tuple[SweepAxis, ...]
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS
    link_detunings: bool = False

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise InvalidSpec(f"need 1 or 2 axes, got {len(self.axes)}")
        for axis in self.axes:
            if axis.name not in AXIS_PARAMS:
                raise InvalidSpec(
                    f"unknown axis parameter '{axis.name}'; pick one of {AXIS_PARAMS}")
            if axis.count < 2:
                raise InvalidSpec(f"axis '{axis.name}' needs count >= 2, got {axis.count}")
            if axis.start == axis.stop:
                raise InvalidSpec(f"axis '{axis.name}' has start == stop == {axis.start}")
        if not self.outputs:
            raise InvalidSpec("at least one output column is required")
        for name in self.outputs:
            if name not in OUTPUT_COLUMNS:
                raise InvalidSpec(
                    f"unknown output '{name}'; pick from {OUTPUT_COLUMNS}")


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Row-major grid table: axis columns, requested outputs, singularity flags.

    Singular points carry sentinel 0 values and flag = True instead of NaN,
    so tables stay sortable and machine-readable.
    """

    axis_names: tuple[str, ...]
    axis_grids: tuple[np.ndarray, ...]
    axis_rows: np.ndarray
    columns: dict
    flags: np.ndarray
    metadata: dict

    @property
    def n_rows(self) -> int:
        return self.axis_rows.shape[0]


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate transmission_general at every grid point.

    Points are ordered row-major over the axes and evaluated independently;
    with workers > 1 they are computed on a thread pool, with results
    reassembled in grid order so the table is identical to a serial run.
    Points that raise SingularSystem are flagged, not fatal.
    """
    grids = tuple(np.linspace(axis.start, axis.stop, axis.count) for axis in spec.axes)
    combos = list(itertools.product(*grids))
    points = [_apply_axes(spec, values) for values in combos]
    want_stability = "stable" in spec.outputs
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda rp: _evaluate_point(rp, spec.outputs, want_stability),
                                 points))
    else:
        rows = [_evaluate_point(rp, spec.outputs, want_stability) for rp in points]
    columns = {}
    for name in spec.outputs:
        dtype = complex if name in ("t21", "t12") else float
        columns[name] = np.array([values[name] for values, _ in rows], dtype=dtype)
    flags = np.array([flagged for _, flagged in rows], dtype=bool)
    return SweepResult(
        axis_names=tuple(axis.name for axis in spec.axes),
        axis_grids=grids,
        axis_rows=np.array(combos, dtype=float),
        columns=columns,
        flags=flags,
        metadata=_metadata(spec),
    )


def _evaluate_point(rp, outputs, want_stability):
    values = {}
    flagged = False
    result = None
    try:
        result = transmission_general(rp)
    except SingularSystem:
        flagged = True
    for name in outputs:
        if name == "stable":
            values[name] = 1.0 if is_stable(rp).stable else 0.0
        elif flagged:
            values[name] = 0j if name in ("t21", "t12") else 0.0
        else:
            values[name] = getattr(result, name)
    return values, flagged


def _apply_axes(spec, values) -> ReducedParams:
    rp = spec.base
    for axis, value in zip(spec.axes, values):
        rp = _with_param(rp, axis.name, float(value), spec.link_detunings)
    return rp


def _with_param(rp, name, value, link_detunings):
    if name == "Delta_m":
        if link_detunings:
            return replace(rp, Delta_m=value, Delta_pp_1=value, Delta_pp_2=value)
        return replace(rp, Delta_m=value)
    if name == "theta":
        # relative phase between the pump-enhanced couplings
        return replace(rp, G_2=abs(rp.G_2) * cmath.exp(1j * (cmath.phase(rp.G_1) + value)))
    if name == "phi":
        return replace(rp, phi=value)
    if name == "y":
        return replace(rp, y=value)
    if name == "G":
        return replace(rp,
                       G_1=value * cmath.exp(1j * cmath.phase(rp.G_1)),
                       G_2=value * cmath.exp(1j * cmath.phase(rp.G_2)))
    if name == "J":
        return replace(rp, J=value)
    if name == "gamma_1":
        # keep the external-coupling fraction eta fixed
        return replace(rp, gamma_1=value, gamma_1e=value * rp.gamma_1e / rp.gamma_1)
    if name == "gamma_2":
        return replace(rp, gamma_2=value, gamma_2e=value * rp.gamma_2e / rp.gamma_2)
    raise InvalidSpec(f"unknown axis parameter '{name}'")


def _metadata(spec) -> dict:
    base = spec.base
    return {
        "base": {
            "gamma_1": base.gamma_1, "gamma_2": base.gamma_2, "gamma_m": base.gamma_m,
            "Delta_pp_1": base.Delta_pp_1, "Delta_pp_2": base.Delta_pp_2,
            "Delta_m": base.Delta_m,
            "G_1": base.G_1, "G_2": base.G_2, "J": base.J,
            "gamma_1e": base.gamma_1e, "gamma_2e": base.gamma_2e,
            "y": base.y, "phi": base.phi,
        },
        "axes": [{"name": a.name, "start": a.start, "stop": a.stop, "count": a.count}
                 for a in spec.axes],
        "outputs": list(spec.outputs),
        "link_detunings": spec.link_detunings,
    }


def figure_preset(name: str, count: int = DEFAULT_GRID_POINTS) -> SweepSpec:
    """Published parameter sets behind the transmission figures.

    All presets share gamma_1 = 1.1, gamma_2 = 1.5, G = |G_{1,2}| = J = 1,
    eta_{1,2} = 1 in units of gamma_m = 1:

    * fig2a/fig2b/fig2c -- T vs Delta_m in [-5, 5] with linked detunings,
      y = 20, and (theta, phi) = (0, pi/2), (pi/2, 0), (pi/2, pi/2).
    * fig3a/fig3b -- T vs theta (phi = pi/2) or vs phi (theta = pi/2) over
      [0, 2 pi], zero detunings, y = 20.
    * fig4 -- T vs y in [0, 40], theta = phi = pi/2, zero detunings.
    """
    key = str(name).strip().lower()
    half_pi = math.pi / 2.0
    if key in ("fig2a", "fig2b", "fig2c"):
        theta, phi = {"fig2a": (0.0, half_pi),
                      "fig2b": (half_pi, 0.0),
                      "fig2c": (half_pi, half_pi)}[key]
        base = reduced_from_direct(G=1.0, theta=theta, J=1.0,
                                   gamma_1=1.1, gamma_2=1.5, gamma_m=1.0,
                                   y=20.0, phi=phi)
        return SweepSpec(base=base, axes=(SweepAxis("Delta_m", -5.0, 5.0, count),),
                         link_detunings=True)
    if key in ("fig3a", "fig3b"):
        base = reduced_from_direct(G=1.0, theta=half_pi, J=1.0,
                                   gamma_1=1.1, gamma_2=1.5, gamma_m=1.0,
                                   y=20.0, phi=half_pi)
        axis_name = "theta" if key == "fig3a" else "phi"
        return SweepSpec(base=base, axes=(SweepAxis(axis_name, 0.0, 2.0 * math.pi, count),))
    if key == "fig4":
        base = reduced_from_direct(G=1.0, theta=half_pi, J=1.0,
                                   gamma_1=1.1, gamma_2=1.5, gamma_m=1.0,
                                   y=0.0, phi=half_pi)
        return SweepSpec(base=base, axes=(SweepAxis("y", 0.0, 40.0, count),))
    raise UnknownPreset(
        f"unknown figure preset '{name}'; choose fig2a, fig2b, fig2c, fig3a, fig3b, or fig4")
