"""Hardy-class wavefunctions built from half-line supported bumps.

Fourier convention: ``F(E) = (1/sqrt(2 pi)) * integral f(t) exp(-i E t) dt``.
With this kernel a function supported on the negative time half-line has a
transform that extends boundedly into the upper half-plane (H2+), and
support on the positive half-line gives H2-.  Membership is diagnosed by
sampling L2 norms along horizontal lines ``Im z = y``.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DivergenceError, SupportError, TailDominatedError, TruncationError
from .quadrature import composite_rule, geometric_breaks, panel_breaks, trapezoid_weights
from .sampled import (
    ENERGY_LINE,
    INV_SQRT_2PI,
    POSITIVE_ENERGY,
    TIME_LINE,
    SampledFunction,
    TimeSide,
)

log = logging.getLogger(__name__)

UPPER = "upper"
LOWER = "lower"
NEGATIVE = "negative"
POSITIVE = "positive"

DEFAULT_Y_SAMPLES = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0)
DEFAULT_E_GRID = np.linspace(-100.0, 100.0, 2001)

_PANEL_ORDER = 16
_BASE_PANELS = 24


@dataclass(frozen=True)
class BumpSpec:
    """C-infinity bump ``exp(-1/((t - t0)(t1 - t)))`` with optional modulation.

    The modulation multiplies the core by ``((t - c)/h)**degree *
    exp(i * shift * t)`` with c, h the support midpoint and half-width.
    Evaluation through ``__call__`` is normalised to unit L2 norm.
    """

    t0: float
    t1: float
    side: str
    degree: int = 0
    shift: float = 0.0

    def __post_init__(self):
        if not self.t0 < self.t1:
            raise SupportError(f"empty support ({self.t0}, {self.t1})")
        if self.side == NEGATIVE and self.t1 > 0:
            raise SupportError(f"support ({self.t0}, {self.t1}) leaves the negative half-line")
        if self.side == POSITIVE and self.t0 < 0:
            raise SupportError(f"support ({self.t0}, {self.t1}) leaves the positive half-line")
        if self.side not in (NEGATIVE, POSITIVE):
            raise SupportError(f"side must be {NEGATIVE!r} or {POSITIVE!r}")
        if self.degree < 0:
            raise ValueError("degree must be >= 0")

    @property
    def half_plane(self):
        """Half-plane into which the transform extends boundedly."""
        return UPPER if self.side == NEGATIVE else LOWER

    def raw(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        inside = (t > self.t0) & (t < self.t1)
        ti = t[inside]
        core = np.exp(-1.0 / ((ti - self.t0) * (self.t1 - ti)))
        c = 0.5 * (self.t0 + self.t1)
        h = 0.5 * (self.t1 - self.t0)
        out[inside] = core * ((ti - c) / h) ** self.degree * np.exp(1j * self.shift * ti)
        return out

    def _panels(self, n_panels):
        breaks = np.linspace(self.t0, self.t1, n_panels + 1)
        return composite_rule(breaks, _PANEL_ORDER)

    @cached_property
    def scale(self):
        """1/||raw||, converged under panel doubling."""
        prev = None
        n = _BASE_PANELS
        while True:
            t, w = self._panels(n)
            val = float(np.sum(w * np.abs(self.raw(t)) ** 2))
            if prev is not None and abs(val - prev) <= 1e-15 * val:
                return 1.0 / math.sqrt(val)
            if n > 4096:
                raise SupportError("bump normalisation did not converge")
            prev = val
            n *= 2

    def __call__(self, t):
        return self.scale * self.raw(t)

    def time_side(self, n_panels=_BASE_PANELS):
        t, w = self._panels(n_panels)
        return TimeSide(t, w, self(t), (self.t0, self.t1))


def make_bump(spec, grid):
    """Sample the normalised bump on ``grid`` (time line).

    Raises
    ------
    SupportError
        If fewer than 64 grid points fall inside the support.
    """
    grid = np.asarray(grid, dtype=float)
    inside = np.count_nonzero((grid > spec.t0) & (grid < spec.t1))
    if inside < 64:
        raise SupportError(f"only {inside} grid points inside the support, need >= 64")
    return SampledFunction(grid, spec(grid), TIME_LINE, tail={"compact": True, "support": [spec.t0, spec.t1]}, bump=spec)


def default_time_grid(spec, points=513):
    """Uniform grid covering the support with a small margin."""
    pad = 0.05 * (spec.t1 - spec.t0)
    return np.linspace(spec.t0 - pad, spec.t1 + pad, points)


# ---------------------------------------------------------------------------
# transforms


def _time_side_from_samples(f):
    v = f.values
    scale = np.max(np.abs(v)) if v.size else 0.0
    if scale > 0 and max(abs(v[0]), abs(v[-1])) > 1e-12 * scale:
        raise TruncationError("samples do not vanish at the grid ends; tails are uncontrolled")
    w = f.quadrature_weights
    nz = np.nonzero(np.abs(v) > 0)[0]
    support = (float(f.grid[nz[0]]), float(f.grid[nz[-1]])) if nz.size else (float(f.grid[0]), float(f.grid[-1]))
    return TimeSide(f.grid.copy(), w, v.copy(), support)


def time_side_of(f, n_panels=_BASE_PANELS):
    """Quadrature representation of a time-line function."""
    if f.domain != TIME_LINE:
        raise ValueError(f"expected a time-line function, got {f.domain}")
    if f.bump is not None:
        return f.bump.time_side(n_panels)
    return _time_side_from_samples(f)


def _converged_time_side(f, e_grid):
    if f.bump is None:
        return _time_side_from_samples(f)
    n = _BASE_PANELS
    ts = f.bump.time_side(n)
    prev = ts.laplace(e_grid)
    while n <= 4096:
        n *= 2
        nxt = f.bump.time_side(n)
        cur = nxt.laplace(e_grid)
        scale = max(np.max(np.abs(cur)), 1e-300)
        if np.max(np.abs(cur - prev)) <= 1e-13 * scale:
            return ts
        ts, prev = nxt, cur
    raise TruncationError("time quadrature did not converge")


def fourier_transform(f, e_grid=None, parseval_tol=1e-8):
    """Energy-line transform of a time-line function.

    The result carries its exact time-side representation, so it can be
    evaluated anywhere in the complex plane (see :func:`evaluate_halfplane`).
    The Parseval defect | ||F|| - ||f|| | is measured along the real axis and
    stored in ``tail["parseval_defect"]``.

    Raises
    ------
    TruncationError
        When the samples do not vanish at the ends of a non-bump grid, or the
        Parseval defect exceeds ``parseval_tol``.
    """
    e_grid = DEFAULT_E_GRID if e_grid is None else np.asarray(e_grid, dtype=float)
    ts = _converged_time_side(f, e_grid)
    values = ts.laplace(e_grid)
    time_norm = math.sqrt(ts.weighted_norm_sq(0.0))
    if time_norm == 0.0:
        defect = 0.0
    else:
        defect = abs(math.sqrt(_line_norm(ts, None, 0.0).value) - time_norm)
        if defect > parseval_tol * max(1.0, time_norm):
            raise TruncationError(f"Parseval defect {defect:.3e} exceeds {parseval_tol:g}")
    tail = {"compact": True, "support": list(ts.support), "parseval_defect": defect, "time_norm": time_norm}
    return SampledFunction(e_grid, values, ENERGY_LINE, tail=tail, time_side=ts)


def evaluate_halfplane(f, z, strict=True):
    """Fourier-Laplace extension ``(1/sqrt(2 pi)) integral f(t) exp(-i z t) dt``.

    Parameters
    ----------
    f : SampledFunction
        Time-line function, or an energy-line function carrying an extension.
    z : complex or array_like
    strict : bool
        Refuse points where ``exp(-i z t)`` grows on the support of ``f``
        (the half-plane in which the integral is not a bounded extension).

    Raises
    ------
    DivergenceError
        In strict mode, for points on the growing side of the support.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if f.domain == TIME_LINE:
        ts = time_side_of(f)
    else:
        ts = f.time_side
    if strict and ts is not None:
        t0, t1 = ts.support
        y = z.imag
        if np.any((y > 0) & (t1 > 0)) or np.any((y < 0) & (t0 < 0)):
            raise DivergenceError(f"integrand grows on the support ({t0:g}, {t1:g}) for the requested Im z")
    if ts is not None:
        out = ts.laplace(z)
    else:
        out = f.extend(z)
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# line norms


@dataclass(frozen=True)
class LineNorm:
    y: float
    value: float
    tail: float
    window: float


def _line_norm(ts, cont, y, x_window=None, tail_tol=1e-6, x_max=None):
    """integral |F(x + i y)|^2 dx for a time-side or a generic continuation."""
    if ts is not None:
        return _line_norm_bandlimited(ts, y, x_window, tail_tol, x_max or 2.0e5)
    return _line_norm_generic(cont, y, x_window, tail_tol, x_max or 1.0e12)


def _line_norm_bandlimited(ts, y, x_window, tail_tol, x_max):
    # |F|^2 on a line is band-limited to |tau| <= span, so the trapezoid rule
    # with step < 2 pi / span is exact up to truncation of the window.
    span = max(ts.span, 1e-3)
    h = math.pi / span
    amp = ts.amplitudes * np.exp(y * ts.nodes)
    scale = INV_SQRT_2PI

    from . import _kernels

    def block(x0, n):
        return scale * _kernels.laplace_sum_uniform(ts.nodes, amp, float(x0), h, int(n), 0.0)

    n_half = max(64, int(math.ceil((x_window or 32.0 * max(1.0, 4.0 / span)) / h)))
    vals = block(-n_half * h, 2 * n_half + 1)
    dens = np.abs(vals) ** 2
    total = h * float(np.sum(dens))
    x_cur = n_half * h
    inner = n_half // 2
    shell = h * float(np.sum(dens[: n_half - inner]) + np.sum(dens[n_half + inner + 1:]))
    while x_window is None and shell > tail_tol * total and x_cur < x_max:
        # extend [x_cur, 2 x_cur] on both sides
        left = block(-(2 * n_half) * h, n_half)
        right = block((n_half + 1) * h, n_half)
        shell = h * float(np.sum(np.abs(left) ** 2) + np.sum(np.abs(right) ** 2))
        total += shell
        n_half *= 2
        x_cur = n_half * h
    if not math.isfinite(total):
        return LineNorm(y, math.inf, math.inf, x_cur)
    if shell > tail_tol * total:
        raise TailDominatedError(f"tail estimate {shell:.3e} vs total {total:.3e} at window {x_cur:g}")
    return LineNorm(y, total, shell, x_cur)


def _line_norm_generic(cont, y, x_window, tail_tol, x_max):
    # uniform panels near the origin, geometric panels outside
    core = 16.0
    inner_b = panel_breaks(-core, core, 0.25)
    x_cur = x_window or 1.0e3
    while True:
        outer = geometric_breaks(core, x_cur, 1.25)
        breaks = np.concatenate([-outer[::-1], inner_b[1:-1], outer])
        x, w = composite_rule(breaks, 16)
        with np.errstate(all="ignore"):
            dens = np.abs(cont(x + 1j * y)) ** 2
        if not np.all(np.isfinite(dens)):
            return LineNorm(y, math.inf, math.inf, x_cur)
        total = float(np.sum(w * dens))
        shell = float(np.sum((w * dens)[np.abs(x) > 0.5 * x_cur]))
        if shell <= tail_tol * total or x_window is not None or x_cur >= x_max:
            break
        x_cur *= 4.0
    if shell > tail_tol * total:
        raise TailDominatedError(f"tail estimate {shell:.3e} vs total {total:.3e} at window {x_cur:g}")
    return LineNorm(y, total, shell, x_cur)


def _extension_parts(f):
    if f.domain == TIME_LINE:
        return time_side_of(f), None
    if f.time_side is not None:
        return f.time_side, None
    if f.continuation is not None:
        return None, f.continuation
    raise ValueError("function has no time-side representation or continuation")


def hardy_norm_on_line(f, y, x_window=None, tail_tol=1e-6):
    """integral |F(x + i y)|^2 dx, with F the transform/extension of ``f``.

    Without ``x_window`` the window is widened until the outermost shell
    contributes less than ``tail_tol`` of the total.

    Raises
    ------
    TailDominatedError
        If the tail estimate stays above ``tail_tol`` of the total.
    """
    ts, cont = _extension_parts(f)
    return _line_norm(ts, cont, float(y), x_window, tail_tol).value


def line_norm_details(f, y, x_window=None, tail_tol=1e-6):
    ts, cont = _extension_parts(f)
    return _line_norm(ts, cont, float(y), x_window, tail_tol)


@dataclass
class HardyReport:
    verdict: str
    half_plane: str
    boundary_norm: float
    y_values: list
    line_norms: list
    reason: str = ""
    tails: list = field(default_factory=list)

    @property
    def ratios(self):
        b = self.boundary_norm
        return [v / b if b > 0 else math.inf for v in self.line_norms]

    @property
    def max_ratio(self):
        r = [x for x in self.ratios if not math.isnan(x)]
        return max(r) if r else math.nan

    @property
    def passed(self):
        return self.verdict == "PASS"

    def ratio_at(self, abs_y):
        for y, r in zip(self.y_values, self.ratios):
            if abs(abs(y) - abs_y) < 1e-12:
                return r
        raise KeyError(abs_y)

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "halfPlane": self.half_plane,
            "boundaryNorm": self.boundary_norm,
            "y": list(self.y_values),
            "lineNorms": list(self.line_norms),
            "ratios": self.ratios,
            "reason": self.reason,
        }


def is_hardy(f, half_plane, y_samples=DEFAULT_Y_SAMPLES, tol=1e-6):
    """Sampled H2 membership diagnostic.

    PASS when every sampled line norm is at most ``(1 + tol)`` times the
    boundary norm and the norms do not increase (within ``tol``) moving away
    from the real axis; FAIL otherwise.  A line whose window cannot be closed
    makes the verdict INCONCLUSIVE unless another line already fails.
    """
    if half_plane not in (UPPER, LOWER):
        raise ValueError(f"half_plane must be {UPPER!r} or {LOWER!r}")
    ts, cont = _extension_parts(f)
    sgn = 1.0 if half_plane == UPPER else -1.0
    ys = sorted((sgn * abs(float(y)) for y in y_samples), key=abs)
    boundary = _line_norm(ts, cont, 0.0).value
    norms, tails = [], []
    inconclusive = False
    for y in ys:
        try:
            ln = _line_norm(ts, cont, y)
            norms.append(ln.value)
            tails.append(ln.tail)
        except TailDominatedError as err:
            log.info("line y=%g inconclusive: %s", y, err)
            norms.append(math.nan)
            tails.append(math.nan)
            inconclusive = True
    verdict, reason = "PASS", ""
    prev = boundary
    for y, v in zip(ys, norms):
        if math.isnan(v):
            continue
        if not math.isfinite(v) or v > (1 + tol) * boundary:
            verdict, reason = "FAIL", f"line norm at y={y:g} exceeds the boundary norm (ratio {v / boundary:.6g})"
            break
        if v > (1 + tol) * prev:
            verdict, reason = "FAIL", f"line norm increases at y={y:g} ({prev:.6g} -> {v:.6g})"
            break
        prev = v
    if verdict == "PASS" and inconclusive:
        verdict, reason = "INCONCLUSIVE", "some lines could not be closed"
    return HardyReport(verdict, half_plane, boundary, ys, norms, reason, tails)


def restrict_positive(fhat):
    """Restriction of an energy-line function to E >= 0.

    The negative-energy part is recorded in the metadata: for Hardy-class
    input it is determined by the positive part (van Winter), though no
    reconstruction is attempted here.
    """
    if fhat.domain != ENERGY_LINE:
        raise ValueError(f"expected an energy-line function, got {fhat.domain}")
    grid, values = fhat.grid, fhat.values
    if not (grid[0] < 0 < grid[-1] or grid[0] == 0 or grid[-1] == 0):
        raise ValueError("grid must straddle E = 0")
    if 0.0 not in grid:
        i = np.searchsorted(grid, 0.0)
        x0, x1 = grid[i - 1], grid[i]
        v0 = values[i - 1] + (values[i] - values[i - 1]) * (0.0 - x0) / (x1 - x0)
        grid = np.insert(grid, i, 0.0)
        values = np.insert(values, i, v0)
    pos = grid >= 0
    neg = grid <= 0
    neg_norm_sq = float(np.sum(trapezoid_weights(grid[neg]) * np.abs(values[neg]) ** 2)) if neg.sum() > 1 else 0.0
    tail = dict(fhat.tail)
    tail.update({"negative_part_norm_sq": neg_norm_sq, "negative_part_recoverable": fhat.has_extension()})
    return SampledFunction(grid[pos], values[pos], POSITIVE_ENERGY, tail=tail,
                           time_side=fhat.time_side, continuation=fhat.continuation)


def negative_part(fhat):
    """Companion of :func:`restrict_positive` on E <= 0 (same zero insertion)."""
    grid, values = fhat.grid, fhat.values
    if 0.0 not in grid:
        i = np.searchsorted(grid, 0.0)
        x0, x1 = grid[i - 1], grid[i]
        v0 = values[i - 1] + (values[i] - values[i - 1]) * (0.0 - x0) / (x1 - x0)
        grid = np.insert(grid, i, 0.0)
        values = np.insert(values, i, v0)
    neg = grid <= 0
    return SampledFunction(grid[neg], values[neg], ENERGY_LINE)


def pole_model(z0, e_grid=None):
    """The model function 1/(E - z0); in H2- when Im z0 > 0, H2+ when Im z0 < 0."""
    z0 = complex(z0)
    if z0.imag == 0:
        raise ValueError("z0 must be off the real axis")
    e_grid = DEFAULT_E_GRID if e_grid is None else np.asarray(e_grid, dtype=float)
    cont = lambda z: 1.0 / (np.asarray(z) - z0)  # noqa: E731
    return SampledFunction(e_grid, cont(e_grid.astype(complex)), ENERGY_LINE,
                           tail={"decay": "algebraic", "power": 1, "pole": [z0.real, z0.imag]},
                           continuation=cont)


def schwartz_constant(fhat, order=4, e_max=100.0):
    """Smallest c with |F(E)| <= c / (1 + |E|)**order on the samples with |E| <= e_max."""
    m = np.abs(fhat.grid) <= e_max
    return float(np.max(np.abs(fhat.values[m]) * (1 + np.abs(fhat.grid[m])) ** order))


def linear_combination(alpha, f, beta, g):
    """alpha*f + beta*g for transforms sharing a grid; the time sides are merged."""
    if not np.array_equal(f.grid, g.grid):
        raise ValueError("grids differ")
    ts = None
    if f.time_side is not None and g.time_side is not None:
        ts = f.time_side.combine(g.time_side, alpha, beta)
    return SampledFunction(f.grid, alpha * f.values + beta * g.values, f.domain, time_side=ts)
