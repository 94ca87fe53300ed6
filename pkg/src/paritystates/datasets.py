"""Parameter sweeps and figure datasets written as deterministic CSV.

CSV layout: ``#``-prefixed ``key=value`` metadata lines, then the header
``s,t,n,quantity,value``, then one row per grid point.  Numbers use 12
significant digits; rows are sorted by (s, t, n, quantity).
"""
from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .errors import DomainError, UndefinedBoundError
from .herald import success_probability
from .states import ModelParams
from . import stats

__all__ = [
    "QUANTITIES",
    "FIGURES",
    "FigurePanel",
    "SweepSpec",
    "SweepSpecError",
    "evaluate_quantity",
    "sweep_rows",
    "figure_rows",
    "render_csv",
    "parse_sweep_spec",
    "default_s_grid",
]

CSV_FORMAT = "herald-csv v1"
SWEEP_HEADER = "# herald-sweep v1"


def _sqrt_variance(p, n):
    return math.sqrt(stats.photon_variance(p, n))


def _dx2(p, n):
    return math.sqrt(stats.quadrature_variances(p, n)[1])


QUANTITIES: dict[str, Callable[[ModelParams, int], float]] = {
    "mean": stats.mean_photon,
    "variance": stats.photon_variance,
    "sqrt_variance": _sqrt_variance,
    "var_x1": lambda p, n: stats.quadrature_variances(p, n)[0],
    "var_x2": lambda p, n: stats.quadrature_variances(p, n)[1],
    "dx2": _dx2,
    "qfi": stats.qfi,
    "qcr": stats.qcr_bound,
    "gain_db": stats.sensitivity_gain,
    "rn": lambda p, n: stats.ratios(p, n)[0],
    "rv": lambda p, n: stats.ratios(p, n)[1],
    "rs": lambda p, n: stats.ratios(p, n)[2],
    "prob": success_probability,
}

# Squeezed-vacuum reference curves drawn alongside some panels; written with n = -1.
_REFERENCE = {
    "mean": lambda s: stats.smsv_reference(s).mean,
    "sqrt_variance": lambda s: math.sqrt(stats.smsv_reference(s).variance),
    "dx2": lambda s: stats.smsv_reference(s).dx2,
    "qcr": lambda s: stats.smsv_reference(s).qcr,
}


def evaluate_quantity(params: ModelParams, n: int, quantity: str) -> float:
    """Value of ``quantity`` for the n-heralded state; nan where a bound is undefined."""
    try:
        fn = QUANTITIES[quantity]
    except KeyError:
        raise KeyError(f"unknown quantity {quantity!r}; valid: {', '.join(QUANTITIES)}") from None
    try:
        return float(fn(params, n))
    except UndefinedBoundError:
        return math.nan


def fmt(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(x, ".12g")


Row = tuple  # (s, t, n, quantity, value)


def sweep_rows(
    s_values: Iterable[float],
    t_values: Iterable[float],
    n_values: Iterable[int],
    quantities: Iterable[str],
    workers: int = 1,
) -> list[Row]:
    """Cartesian product, deduplicated and sorted lexicographically by (s, t, n, quantity)."""
    quantities = sorted(set(quantities))
    for q in quantities:
        if q not in QUANTITIES:
            raise KeyError(f"unknown quantity {q!r}; valid: {', '.join(QUANTITIES)}")
    points = sorted({(float(s), float(t), int(n)) for s in s_values for t in t_values for n in n_values})
    for s, t, n in points:
        ModelParams(s, t)
        if n < 0:
            raise DomainError(f"photon number must be >= 0, got {n}")

    def work(pt):
        s, t, n = pt
        p = ModelParams(s, t)
        return [(s, t, n, q, evaluate_quantity(p, n, q)) for q in quantities]

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(work, points))
    else:
        chunks = [work(pt) for pt in points]
    # pool.map preserves input order, so the output is independent of scheduling.
    return [row for chunk in chunks for row in chunk]


def render_csv(rows: Iterable[Row], meta: dict | None = None) -> str:
    lines = [f"# format={CSV_FORMAT}"]
    for k, v in (meta or {}).items():
        lines.append(f"# {k}={v}")
    lines.append("s,t,n,quantity,value")
    for s, t, n, q, v in rows:
        lines.append(f"{fmt(s)},{fmt(t)},{n},{q},{fmt(v)}")
    return "\n".join(lines) + "\n"


def default_s_grid(s_min: float = 0.05, s_max: float = 3.0, step: float = 0.05) -> list[float]:
    if step <= 0 or s_min <= 0 or s_max < s_min:
        raise DomainError("s grid needs 0 < s_min <= s_max and step > 0")
    count = int(math.floor((s_max - s_min) / step + 1e-9)) + 1
    return [round(s_min + i * step, 12) for i in range(count)]


# --- figures ------------------------------------------------------------------

@dataclass(frozen=True)
class FigurePanel:
    quantity: str
    t: float
    n_values: tuple
    reference: bool = False
    note: str = ""

    def describe_n(self) -> str:
        ns = self.n_values
        step = ns[1] - ns[0] if len(ns) > 1 else 1
        return f"{ns[0]}..{ns[-1]}" + (f" step {step}" if step != 1 else "")


_ALL_N = tuple(range(101))
_EVEN_N = tuple(range(0, 21, 2))
_ODD_N = tuple(range(1, 22, 2))
_FIG2_NOTE = "t per panel not given in the source figure; chosen grid 0.7/0.8/0.9/0.99"


def _stats_figure(t: float) -> dict:
    return {
        "a": FigurePanel("mean", t, _ALL_N, reference=True),
        "b": FigurePanel("rn", t, _ALL_N),
        "c": FigurePanel("sqrt_variance", t, _ALL_N, reference=True),
        "d": FigurePanel("rv", t, _ALL_N),
    }


def _squeeze_figure(t: float) -> dict:
    return {
        "a": FigurePanel("dx2", t, _EVEN_N, reference=True),
        "b": FigurePanel("dx2", t, _ODD_N, reference=True),
        "c": FigurePanel("rs", t, _EVEN_N),
        "d": FigurePanel("rs", t, _ODD_N),
    }


FIGURES: dict[str, FigurePanel] = {}
for _panel, _t in zip("abcd", (0.7, 0.8, 0.9, 0.99)):
    FIGURES["2" + _panel] = FigurePanel("prob", _t, tuple(range(11)), note=_FIG2_NOTE)
for _fig, _panels in (
    ("3", _stats_figure(0.98)),
    ("4", _stats_figure(0.99)),
    ("5", _squeeze_figure(0.9)),
    ("6", _squeeze_figure(0.99)),
):
    for _panel, _spec in _panels.items():
        FIGURES[_fig + _panel] = _spec
FIGURES["7a"] = FigurePanel("qcr", 0.98, _ALL_N, reference=True)
FIGURES["7b"] = FigurePanel("qcr", 0.99, _ALL_N, reference=True)
FIGURES["7c"] = FigurePanel("gain_db", 0.98, _ALL_N)
FIGURES["7d"] = FigurePanel("gain_db", 0.99, _ALL_N)


def figure_rows(fig_id: str, s_values: list[float] | None = None, workers: int = 1) -> tuple[list[Row], dict]:
    """Rows and header metadata for one figure panel."""
    try:
        panel = FIGURES[fig_id]
    except KeyError:
        raise KeyError(f"unknown figure id {fig_id!r}; valid: {', '.join(FIGURES)}") from None
    s_values = default_s_grid() if s_values is None else list(s_values)
    rows = sweep_rows(s_values, [panel.t], panel.n_values, [panel.quantity], workers=workers)
    if panel.reference:
        ref = _REFERENCE[panel.quantity]
        rows += [(s, panel.t, -1, f"smsv_{panel.quantity}", ref(s)) for s in sorted(set(s_values))]
        rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    meta = {
        "figure": fig_id,
        "quantity": panel.quantity,
        "t": fmt(panel.t),
        "n": panel.describe_n(),
        "s": f"{fmt(min(s_values))}..{fmt(max(s_values))} ({len(set(s_values))} points)",
    }
    if panel.reference:
        meta["reference"] = f"rows with n=-1 hold the squeezed-vacuum curve smsv_{panel.quantity}"
    if panel.note:
        meta["note"] = panel.note
    return rows, meta


# --- sweep spec files ---------------------------------------------------------

class SweepSpecError(ValueError):
    pass


@dataclass
class SweepSpec:
    s_values: list
    t_values: list
    n_values: list
    quantities: list
    output_path: str | None = None
    extra: dict = field(default_factory=dict)


_RANGE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def _parse_list(text: str, conv) -> list:
    out = []
    for item in (x.strip() for x in text.split(",")):
        if not item:
            continue
        m = _RANGE.match(item)
        if m and conv is int:
            lo, hi = int(m.group(1)), int(m.group(2))
            out.extend(range(lo, hi + 1))
        else:
            out.append(conv(item))
    return out


def parse_sweep_spec(text: str) -> SweepSpec:
    """Parse a sweep file.

    The first non-blank line must be ``# herald-sweep v1``.  Then ``key = value``
    lines; lists are comma separated and integer lists accept ``a..b`` ranges::

        # herald-sweep v1
        s = 0.5, 1.0
        t = 0.9, 0.99
        n = 0..2
        quantities = mean, qfi
        output = out.csv
    """
    lines = [ln.rstrip() for ln in text.splitlines()]
    body = [ln for ln in lines if ln.strip()]
    if not body or body[0].strip() != SWEEP_HEADER:
        raise SweepSpecError(f"sweep file must start with '{SWEEP_HEADER}'")
    fields: dict[str, str] = {}
    for ln in body[1:]:
        stripped = ln.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise SweepSpecError(f"expected 'key = value', got {ln!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key in fields:
            raise SweepSpecError(f"duplicate key {key!r}")
        fields[key] = value
    missing = [k for k in ("s", "t", "n", "quantities") if k not in fields]
    if missing:
        raise SweepSpecError(f"missing keys: {', '.join(missing)}")
    try:
        spec = SweepSpec(
            s_values=_parse_list(fields.pop("s"), float),
            t_values=_parse_list(fields.pop("t"), float),
            n_values=_parse_list(fields.pop("n"), int),
            quantities=_parse_list(fields.pop("quantities"), str),
            output_path=fields.pop("output", None),
        )
    except ValueError as exc:
        raise SweepSpecError(str(exc)) from None
    if fields:
        raise SweepSpecError(f"unknown keys: {', '.join(sorted(fields))}")
    if not spec.quantities:
        raise SweepSpecError("quantities must be nonempty")
    bad = [q for q in spec.quantities if q not in QUANTITIES]
    if bad:
        raise SweepSpecError(f"unknown quantity {bad[0]!r}; valid: {', '.join(QUANTITIES)}")
    return spec


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)
