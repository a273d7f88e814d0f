"""Sampled complex functions on 1-D grids, plus their CSV/JSON formats."""

import csv
import io
import json
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .quadrature import trapezoid_weights

TIME_LINE = "time-line"
ENERGY_LINE = "energy-line"
POSITIVE_ENERGY = "positive-energy-halfline"
R_LINE = "r-line"
COMPLEX_RAY = "complex-ray"
DOMAINS = (TIME_LINE, ENERGY_LINE, POSITIVE_ENERGY, R_LINE, COMPLEX_RAY)

MIN_SAMPLES = 16
INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


@dataclass(frozen=True, eq=False)
class TimeSide:
    """Quadrature representation of a compactly supported time-line function.

    The Fourier-Laplace transform is ``sum(w * f * exp(-1j z t)) / sqrt(2 pi)``
    over the nodes ``t``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray
    support: tuple

    @property
    def amplitudes(self):
        return self.weights * self.values

    def shifted(self, dt):
        """Representation of f(t - dt)."""
        return TimeSide(self.nodes + dt, self.weights, self.values, (self.support[0] + dt, self.support[1] + dt))

    def combine(self, other, alpha=1.0, beta=1.0):
        """alpha * self + beta * other as one node set."""
        return TimeSide(
            np.concatenate([self.nodes, other.nodes]),
            np.concatenate([self.weights, other.weights]),
            np.concatenate([alpha * self.values, beta * other.values]),
            (min(self.support[0], other.support[0]), max(self.support[1], other.support[1])),
        )

    @property
    def span(self):
        return self.support[1] - self.support[0]

    def weighted_norm_sq(self, y=0.0):
        """integral |f(t)|^2 exp(2 y t) dt by the node quadrature."""
        return float(np.sum(self.weights * np.abs(self.values) ** 2 * np.exp(2.0 * y * self.nodes)))

    def laplace(self, z):
        """(1/sqrt(2 pi)) * integral f(t) exp(-i z t) dt at the points ``z``."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return INV_SQRT_2PI * _kernels.laplace_sum(self.nodes, self.amplitudes, z)

    def laplace_line(self, x0, dx, n, y):
        """Same on the horizontal line x0 + j dx + i y, j = 0..n-1."""
        return INV_SQRT_2PI * _kernels.laplace_sum_uniform(self.nodes, self.amplitudes, float(x0), float(dx), int(n), float(y))


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex samples on a strictly increasing real grid.

    Parameters
    ----------
    grid, values : array_like
    domain : str
        One of ``DOMAINS``.
    tail : dict
        Free-form metadata on truncation and decay (e.g. ``{"compact": True}``).
    weights : ndarray, optional
        Quadrature weights matching ``grid``; trapezoid weights otherwise.
    time_side : TimeSide, optional
        Exact time-line representation of an energy-line function; enables
        evaluation off the real axis.
    continuation : callable, optional
        Vectorised evaluator z -> f(z) off the real axis, used when no
        ``time_side`` is known.
    bump : BumpSpec, optional
        Generator of a time-line function (exact evaluation on demand).
    """

    grid: np.ndarray
    values: np.ndarray
    domain: str
    tail: dict = field(default_factory=dict)
    weights: Optional[np.ndarray] = None
    time_side: Optional[TimeSide] = None
    continuation: Optional[Callable] = None
    bump: Optional[object] = None

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        values = np.array(self.values, dtype=complex)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-D and of equal length")
        if grid.size < MIN_SAMPLES:
            raise ValueError(f"need at least {MIN_SAMPLES} samples, got {grid.size}")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain tag {self.domain!r}")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if self.weights is not None:
            w = np.array(self.weights, dtype=float)
            if w.shape != grid.shape or np.any(w <= 0):
                raise ValueError("weights must be positive and match the grid")
            w.setflags(write=False)
            object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.grid.size

    @property
    def quadrature_weights(self):
        return self.weights if self.weights is not None else trapezoid_weights(self.grid)

    def norm(self):
        return float(np.sqrt(np.sum(self.quadrature_weights * np.abs(self.values) ** 2)))

    def inner(self, other):
        """<self, other> = integral conj(self) * other on the shared grid."""
        if not np.array_equal(self.grid, other.grid):
            raise ValueError("inner product needs a shared grid")
        return complex(np.sum(self.quadrature_weights * np.conj(self.values) * other.values))

    def with_values(self, values, **changes):
        return replace(self, values=values, **changes)

    def has_extension(self):
        return self.time_side is not None or self.continuation is not None

    def extend(self, z):
        """Evaluate the analytic extension at complex points ``z``."""
        if self.time_side is not None:
            return self.time_side.laplace(z)
        if self.continuation is not None:
            return np.asarray(self.continuation(np.atleast_1d(np.asarray(z, dtype=complex))), dtype=complex)
        raise ValueError("function carries no analytic extension")


# ---------------------------------------------------------------------------
# serialisation


def _fmt(x):
    return repr(float(x))


def to_csv(f, header_lines=()):
    """CSV text with columns abscissa, re, im (17 significant digits)."""
    buf = io.StringIO()
    for line in header_lines:
        buf.write(f"# {line}\n")
    buf.write(f"# domainTag={f.domain}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["abscissa", "re", "im"])
    for x, v in zip(f.grid, f.values):
        w.writerow([_fmt(x), _fmt(v.real), _fmt(v.imag)])
    return buf.getvalue()


def from_csv(text):
    domain = ENERGY_LINE
    rows = []
    for line in text.splitlines():
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("domainTag="):
                domain = body.split("=", 1)[1]
            continue
        if not line.strip():
            continue
        rows.append(line)
    reader = csv.reader(rows)
    head = next(reader)
    if head != ["abscissa", "re", "im"]:
        raise ValueError(f"unexpected CSV columns {head}")
    data = [(float(x), float(re), float(im)) for x, re, im in reader]
    grid = [d[0] for d in data]
    values = [complex(d[1], d[2]) for d in data]
    return SampledFunction(grid, values, domain)


def to_json(f, extra=None):
    doc = {
        "schemaVersion": 1,
        "domainTag": f.domain,
        "grid": [float(x) for x in f.grid],
        "re": [float(v.real) for v in f.values],
        "im": [float(v.imag) for v in f.values],
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=1)


def from_json(text):
    doc = json.loads(text)
    values = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    return SampledFunction(doc["grid"], values, doc["domainTag"])
