"""Flat-file output: CSV tables, minimal SVG line plots, key=value config files.

Every CSV starts with ``#`` comment lines describing the run, followed by a
plain header row.  Numbers are written with 17 significant digits so a
double survives the round trip exactly.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .absorption import AbsorptionSpectrum
from .dce_rates import RateCurve
from .mode_coupling import CoefficientTable

__all__ = [
    "fmt",
    "write_rate_curve_csv",
    "write_spectrum_csv",
    "write_coefficients_csv",
    "read_csv",
    "write_svg",
    "parse_config_file",
    "ConfigError",
]


class ConfigError(ValueError):
    """Malformed key=value configuration."""


def fmt(x: float) -> str:
    return f"{float(x):.16e}"


def _write(path, header_lines, columns, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) if not isinstance(v, (int, np.integer)) else str(v) for v in row) + "\n")
    return path


def write_rate_curve_csv(curve: RateCurve, path) -> Path:
    d = curve.driving
    header = (
        f"label={curve.label} alpha_re={fmt(d.alpha.real)} alpha_im={fmt(d.alpha.imag)} "
        f"zeta={fmt(d.zeta_mag)} phi={fmt(d.zeta_phase)}"
    )
    return _write(path, [header], [curve.x_name, "rate"], zip(curve.x, curve.rate))


def write_spectrum_csv(spectrum: AbsorptionSpectrum, path, gamma: float, dipole: float) -> Path:
    p = spectrum.params
    header = [
        f"state={spectrum.state_label} alpha_re={fmt(p.alpha.real)} alpha_im={fmt(p.alpha.imag)} "
        f"zeta={fmt(p.zeta_mag)} phi={fmt(p.zeta_phase)}",
        f"gamma={fmt(gamma)} d={fmt(dipole)} normalization={fmt(spectrum.normalization)}",
    ]
    rows = zip(spectrum.omega, spectrum.rate, spectrum.rate_normalized)
    return _write(path, header, ["omega", "rate", "rate_normalized"], rows)


def write_coefficients_csv(tables: Iterable[CoefficientTable], path) -> Path:
    rows = []
    for t in tables:
        for n, xi, eta in zip(t.n, t.xi, t.eta):
            rows.append((t.tau, int(n), xi.real, xi.imag, eta.real, eta.imag))
    return _write(path, [], ["tau", "n", "xi_re", "xi_im", "eta_re", "eta_im"], rows)


def read_csv(path):
    """Return (comment lines, column names, float array) for a file written here."""
    comments, columns, data = [], None, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comments.append(line[1:].strip())
            elif columns is None:
                columns = line.split(",")
            elif line:
                data.append([float(v) for v in line.split(",")])
    return comments, columns, np.array(data, dtype=float).reshape(-1, len(columns or []))


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def write_svg(path, series: Sequence[tuple[str, np.ndarray, np.ndarray]], title="", xlabel="", ylabel="",
              width=640, height=420) -> Path:
    """Polyline plot of several (label, x, y) series with a legend."""
    left, right, top, bottom = 70, 20, 40, 50
    xs = np.concatenate([np.asarray(x, float) for _, x, _ in series])
    ys = np.concatenate([np.asarray(y, float) for _, _, y in series])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    pw, ph = width - left - right, height - top - bottom

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{width / 2}" y="20" text-anchor="middle">{_esc(title)}</text>',
        f'<text x="{left + pw / 2}" y="{height - 10}" text-anchor="middle">{_esc(xlabel)}</text>',
        f'<text x="15" y="{top + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 15 {top + ph / 2})">{_esc(ylabel)}</text>',
    ]
    for frac in (0.0, 0.5, 1.0):
        xv = x0 + frac * (x1 - x0)
        yv = y0 + frac * (y1 - y0)
        out.append(f'<text x="{px(xv):.1f}" y="{top + ph + 16}" text-anchor="middle">{xv:.3g}</text>')
        out.append(f'<text x="{left - 6}" y="{py(yv) + 4:.1f}" text-anchor="end">{yv:.3g}</text>')
    if y0 < 0 < y1:
        out.append(f'<line x1="{left}" x2="{left + pw}" y1="{py(0):.1f}" y2="{py(0):.1f}" '
                   f'stroke="#999" stroke-dasharray="4 3"/>')
    for i, (label, x, y) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y) if math.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = top + 14 + 16 * i
        out.append(f'<line x1="{left + 10}" x2="{left + 30}" y1="{ly - 4}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + 36}" y="{ly}">{_esc(label)}</text>')
    out.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n")
    return path


def _esc(text):
    return str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def parse_config_file(path) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment, blank lines are skipped.

    Keys are normalized to identifier form (dashes become underscores).
    """
    conf = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        conf[key.replace("-", "_")] = value
    return conf
