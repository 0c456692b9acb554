"""
Time sweeps of the full open-system covariance and their file outputs.

The evolved covariance is ``C(t) V0 C(t)^T + Sigma(t)``; each grid point is
independent, so a sweep is a plain loop over times followed by a search for
the first entangled-to-separable crossing.
"""

from dataclasses import dataclass, field, replace
import math
from typing import Optional

import numpy as np

from .bath import sigma_matrix
from .dynamics import evolution_matrix
from .entanglement import SEPARABILITY_TOL, entanglement_report, ppt_spectrum
from .errors import ConfigError, QBMError
from .model import SystemParams, check_covariance, two_mode_squeezed_covariance

CSV_HEADER = "t_ns,zeta_minus,lambda_minus,negativity,log_negativity,separable,uncertainty_ok"
OUTPUT_KINDS = frozenset({"csv", "svg"})
SVG_QUANTITIES = ("zeta", "lambda", "negativity")
BISECTION_STEPS = 20


@dataclass(frozen=True)
class SweepConfig:
    params: SystemParams = field(default_factory=SystemParams)
    r: float = 0.0
    t_start: float = 0.0
    t_end: float = 1.0
    steps: int = 200
    quad_tol: float = 1e-8
    outputs: frozenset = frozenset({"csv"})

    def __post_init__(self):
        if not isinstance(self.params, SystemParams):
            raise ConfigError("params must be a SystemParams instance", key="params")
        for key in ("r", "t_start", "t_end", "quad_tol"):
            value = getattr(self, key)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(f"{key} must be a finite number, got {value!r}", key=key)
        if self.t_start < 0:
            raise ConfigError(f"t_start must be >= 0, got {self.t_start}", key="t_start")
        if not self.t_end > self.t_start:
            raise ConfigError(
                f"t_end={self.t_end} must exceed t_start={self.t_start}", key="t_end")
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 2:
            raise ConfigError(f"steps must be an integer >= 2, got {self.steps!r}", key="steps")
        if not 0 < self.quad_tol <= 1e-3:
            raise ConfigError(f"quad_tol must lie in (0, 1e-3], got {self.quad_tol}",
                              key="quad_tol")
        outputs = frozenset(self.outputs)
        if not outputs <= OUTPUT_KINDS:
            raise ConfigError(f"unknown output kinds {sorted(outputs - OUTPUT_KINDS)}",
                              key="outputs")
        object.__setattr__(self, "outputs", outputs)

    def times(self):
        return np.linspace(self.t_start, self.t_end, self.steps)


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    reports: tuple
    t_de: Optional[float] = None
    crossings: tuple = ()

    def column(self, name):
        """Array of one :class:`EntanglementReport` field over the sweep."""
        return np.array([getattr(rep, name) for rep in self.reports])


def _attach_time(exc, t):
    if getattr(exc, "t", None) is None:
        try:
            exc.t = t
        except AttributeError:
            pass
    return exc


def evolve_covariance(initial, t, params: SystemParams, quad_tol=1e-8):
    """Covariance at time ``t``: ``C V0 C^T + Sigma``."""
    v0 = check_covariance(initial, "initial")
    c = evolution_matrix(t, params)
    out = c @ v0 @ c.T + sigma_matrix(t, params, tol=quad_tol)
    return 0.5 * (out + out.T)


def _lambda_minus(v0, t, params, quad_tol):
    return ppt_spectrum(evolve_covariance(v0, t, params, quad_tol))[0]


def _refine_crossing(v0, lo, hi, params, quad_tol, steps=BISECTION_STEPS):
    """Bisect ``[lo, hi]`` where the state turns separable; return the midpoint."""
    threshold = 0.5 - SEPARABILITY_TOL
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if _lambda_minus(v0, mid, params, quad_tol) >= threshold:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def run_sweep(config: SweepConfig, initial=None, refine=True):
    """Evolve the initial state over the configured grid.

    Parameters
    ----------
    config : SweepConfig
    initial : (4, 4) array_like, optional
        Initial covariance; defaults to the two-mode squeezed state with
        ``config.r``.
    refine : bool
        Locate the disentanglement time by bisection inside the first grid
        cell where the state turns separable.  Without it the right edge of
        that cell is reported.

    Returns
    -------
    SweepResult
    """
    params = config.params
    v0 = two_mode_squeezed_covariance(config.r) if initial is None else check_covariance(initial)
    reports = []
    for t in config.times():
        t = float(t)
        try:
            cov = evolve_covariance(v0, t, params, config.quad_tol)
            reports.append(entanglement_report(cov, t))
        except QBMError as exc:
            raise _attach_time(exc, t)

    crossings = tuple(
        (reports[i].time, reports[i + 1].time)
        for i in range(len(reports) - 1)
        if not reports[i].separable and reports[i + 1].separable)
    t_de = None
    if crossings:
        lo, hi = crossings[0]
        if refine:
            try:
                t_de = _refine_crossing(v0, lo, hi, params, config.quad_tol)
            except QBMError as exc:
                raise _attach_time(exc, hi)
        else:
            t_de = hi
    return SweepResult(config=config, reports=tuple(reports), t_de=t_de, crossings=crossings)


def _fmt(x):
    return f"{x:.12g}"


def emit_csv(result: SweepResult, path):
    """Write the sweep as CSV (UTF-8, LF line endings, 12 significant digits)."""
    lines = [CSV_HEADER]
    for rep in result.reports:
        lines.append(",".join([
            _fmt(rep.time), _fmt(rep.zeta_minus), _fmt(rep.lambda_minus),
            _fmt(rep.negativity), _fmt(rep.log_negativity),
            "true" if rep.separable else "false",
            "true" if rep.uncertainty_ok else "false",
        ]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def read_csv(path):
    """Parse a file written by :func:`emit_csv` into a dict of columns."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(",")
        rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]
    cols = {}
    for j, name in enumerate(header):
        raw = [row[j] for row in rows]
        if name in ("separable", "uncertainty_ok"):
            cols[name] = np.array([v == "true" for v in raw])
        else:
            cols[name] = np.array([float(v) for v in raw])
    return cols


_SVG_SERIES = {
    "zeta": [("zeta_minus", "zeta-", "#1f4e9c")],
    "lambda": [("lambda_minus", "lambda-", "#1f4e9c")],
    "negativity": [("negativity", "N", "#1f4e9c"),
                   ("log_negativity", "E_N [bits]", "#b8431f")],
}
_SVG_LABELS = {"zeta": "zeta-", "lambda": "lambda-", "negativity": "N, E_N"}


def _nice_ticks(lo, hi, n=5):
    span = hi - lo
    raw = span / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    x = first
    while x <= hi + 1e-9 * span:
        ticks.append(0.0 if abs(x) < 1e-12 * span else x)
        x += step
    return ticks


def emit_svg(result: SweepResult, quantity, path, width=640, height=400):
    """Write a static SVG line chart of one quantity against time.

    ``quantity`` is ``"zeta"``, ``"lambda"`` (both drawn with a dashed
    reference line at 1/2) or ``"negativity"`` (N and E_N together).
    """
    if quantity not in _SVG_SERIES:
        raise ValueError(f"quantity must be one of {SVG_QUANTITIES}, got {quantity!r}")
    if not result.reports:
        raise ValueError("cannot plot an empty sweep")
    t = result.column("time")
    series = [(result.column(col), label, color) for col, label, color in _SVG_SERIES[quantity]]
    ys = np.concatenate([s for s, _, _ in series])
    ref = 0.5 if quantity in ("zeta", "lambda") else None
    lo, hi = float(ys.min()), float(ys.max())
    if ref is not None:
        lo, hi = min(lo, ref), max(hi, ref)
    if hi - lo < 1e-12 * max(1.0, abs(hi)):
        lo, hi = lo - 0.5 * max(abs(lo), 1e-3), hi + 0.5 * max(abs(hi), 1e-3)
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    t0, t1 = float(t[0]), float(t[-1])
    if t1 == t0:
        t1 = t0 + 1.0

    left, right, top, bottom = 70, 20, 20, 50
    pw, ph = width - left - right, height - top - bottom

    def px(x):
        return left + (x - t0) / (t1 - t0) * pw

    def py(y):
        return top + (hi - y) / (hi - lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for x in _nice_ticks(t0, t1):
        out.append(f'<line x1="{px(x):.2f}" y1="{top + ph}" x2="{px(x):.2f}" '
                   f'y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px(x):.2f}" y="{top + ph + 18}" font-size="11" '
                   f'text-anchor="middle">{x:g}</text>')
    for y in _nice_ticks(lo, hi):
        out.append(f'<line x1="{left - 5}" y1="{py(y):.2f}" x2="{left}" y2="{py(y):.2f}" '
                   'stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{py(y) + 4:.2f}" font-size="11" '
                   f'text-anchor="end">{y:g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" font-size="13" '
               'text-anchor="middle">t [ns]</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.1f}" font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 16 {top + ph / 2:.1f})">{_SVG_LABELS[quantity]}</text>')
    if ref is not None:
        out.append(f'<line class="reference" x1="{left}" y1="{py(ref):.4f}" '
                   f'x2="{left + pw}" y2="{py(ref):.4f}" stroke="gray" '
                   'stroke-dasharray="6 4"/>')
    for k, (vals, label, color) in enumerate(series):
        pts = " ".join(f"{px(x):.4f},{py(y):.4f}" for x, y in zip(t, vals))
        out.append(f'<polyline class="series" data-label="{label}" fill="none" '
                   f'stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{left + pw - 10}" y="{top + 16 + 16 * k}" font-size="12" '
                   f'text-anchor="end" fill="{color}">{label}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")
    return path


def figure_bundles():
    """Built-in parameter sets of the three published figures.

    Returns a dict ``name -> list of (label, SweepConfig, svg quantity)``.
    """
    fig1 = SweepConfig(params=SystemParams(omega=1.0, gamma=0.01, cutoff=50.0, temperature=0.0),
                       r=0.05)
    fig23 = SweepConfig(params=SystemParams(omega=1.0, gamma=0.1, cutoff=50.0, temperature=0.0),
                        r=0.1)
    return {
        "fig1": [("fig1_T0", fig1, "zeta"),
                 ("fig1_T1", replace(fig1, params=replace(fig1.params, temperature=1.0)), "zeta")],
        "fig2": [("fig2_r0.1", fig23, "lambda"),
                 ("fig2_r0", replace(fig23, r=0.0), "lambda")],
        "fig3": [("fig3", fig23, "negativity")],
    }
