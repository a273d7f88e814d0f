"""Resonance poles: zeros of the Jost function in the lower half k-plane.

Zeros are counted with the argument principle on rectangles, isolated by
bisection until every cell holds at most one zero, seeded by the first
moment of J'/J around the cell and polished with Newton's method using the
analytic derivative from :func:`hardyshell.scatter.jost_derivative`.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContourError, NewtonError
from .quadrature import gauss_legendre
from .scatter import jost_derivative, jost_value

log = logging.getLogger(__name__)

# panel split fraction; kept off 1/2 so cuts avoid symmetric points
_SPLIT = 0.5 + 0.0123


@dataclass(frozen=True)
class GamowPole:
    """Resonance datum z_R = E_R - i Gamma/2 with its Jost zero k_pole."""

    k_pole: complex
    jost_residual: float

    @property
    def z_r(self):
        return self.k_pole * self.k_pole

    @property
    def e_r(self):
        return self.z_r.real

    @property
    def gamma(self):
        return -2.0 * self.z_r.imag

    @property
    def companion(self):
        """Mirror zero -conj(k_pole), the capture-state partner."""
        return -self.k_pole.conjugate()

    def to_dict(self):
        return {
            "kPole": [self.k_pole.real, self.k_pole.imag],
            "zR": [self.z_r.real, self.z_r.imag],
            "eR": self.e_r,
            "gamma": self.gamma,
            "jostResidual": self.jost_residual,
        }


@dataclass(frozen=True)
class Rectangle:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def corners(self):
        return (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )

    @property
    def size(self):
        return max(self.re_max - self.re_min, self.im_max - self.im_min)

    def contains(self, z, pad=0.0):
        return (self.re_min - pad <= z.real <= self.re_max + pad
                and self.im_min - pad <= z.imag <= self.im_max + pad)

    def split(self):
        if self.re_max - self.re_min >= self.im_max - self.im_min:
            cut = self.re_min + _SPLIT * (self.re_max - self.re_min)
            return (Rectangle(self.re_min, cut, self.im_min, self.im_max),
                    Rectangle(cut, self.re_max, self.im_min, self.im_max))
        cut = self.im_min + _SPLIT * (self.im_max - self.im_min)
        return (Rectangle(self.re_min, self.re_max, self.im_min, cut),
                Rectangle(self.re_min, self.re_max, cut, self.im_max))

    def grown(self, amount):
        return Rectangle(self.re_min - amount, self.re_max + amount,
                         self.im_min - amount, self.im_max + amount)


@dataclass(frozen=True)
class PoleSearchOptions:
    """Knobs of :func:`find_poles`.

    ``samples_per_edge`` is the initial contour sampling; segments whose phase
    jump exceeds ``max_phase_step`` are bisected adaptively.
    """

    samples_per_edge: int = 64
    tol: float = 1e-12
    max_iter: int = 60
    max_depth: int = 16
    winding_tol: float = 0.05
    max_phase_step: float = math.pi / 4
    max_refine: int = 30
    retries: int = 3
    # distance kept from Im k = 0 when a region touches the real axis
    axis_margin: float = 1e-9


def _edge_phase_change(func, z0, z1, opts):
    """Continuous change of arg(func) along the segment [z0, z1]."""
    n = opts.samples_per_edge
    ts = [i / n for i in range(n + 1)]
    vals = [func(z0 + (z1 - z0) * t) for t in ts]
    total = 0.0
    stack = [(ts[i], ts[i + 1], vals[i], vals[i + 1], 0) for i in range(n)]
    stack.reverse()
    while stack:
        ta, tb, fa, fb, depth = stack.pop()
        if fa == 0 or fb == 0:
            raise ContourError(f"zero on contour near {z0 + (z1 - z0) * ta!r}")
        step = cmath.phase(fb / fa)
        if abs(step) > opts.max_phase_step:
            if depth >= opts.max_refine:
                raise ContourError(f"phase of J unresolved near {z0 + (z1 - z0) * ta!r}")
            tm = 0.5 * (ta + tb)
            fm = func(z0 + (z1 - z0) * tm)
            stack.append((tm, tb, fm, fb, depth + 1))
            stack.append((ta, tm, fa, fm, depth + 1))
            continue
        total += step
    return total


def winding_number(pot, rect, opts=None):
    """Number of Jost zeros inside ``rect`` (argument principle).

    Raises
    ------
    ContourError
        If the accumulated phase is not within ``opts.winding_tol`` of an
        integer multiple of 2*pi, which signals a zero on or very near the contour.
    """
    opts = opts or PoleSearchOptions()
    func = lambda k: jost_value(pot, k)  # noqa: E731
    c = rect.corners
    total = sum(_edge_phase_change(func, c[i], c[(i + 1) % 4], opts) for i in range(4))
    w = total / (2 * math.pi)
    n = round(w)
    if abs(w - n) > opts.winding_tol:
        raise ContourError(f"non-integral winding {w:.6f} on {rect}")
    return int(n)


def _moment_guess(pot, rect, order=32):
    """(1/2 pi i) \\oint k J'/J dk: the zero itself when the cell holds one."""
    c = rect.corners
    num = 0j
    den = 0j
    for i in range(4):
        z0, z1 = c[i], c[(i + 1) % 4]
        t, w = gauss_legendre(0.0, 1.0, order)
        for ti, wi in zip(t, w):
            z = z0 + (z1 - z0) * ti
            j, dj = jost_derivative(pot, z)
            g = dj / j * (z1 - z0) * wi
            num += z * g
            den += g
    return num / den if den != 0 else complex(0.5 * (rect.re_min + rect.re_max), 0.5 * (rect.im_min + rect.im_max))


def newton_refine(pot, k0, tol=1e-12, max_iter=60):
    """Newton iteration on J(k) from ``k0``; returns (k, |J(k)|)."""
    k = complex(k0)
    history = []
    for _ in range(max_iter):
        j, dj = jost_derivative(pot, k)
        history.append((k, abs(j)))
        if dj == 0:
            break
        step = j / dj
        k = k - step
        if abs(step) <= 4e-16 * max(1.0, abs(k)):
            res = abs(jost_value(pot, k))
            if res < tol:
                return k, res
            break
    res = abs(jost_value(pot, k))
    if res < tol:
        return k, res
    raise NewtonError(f"Newton did not converge from {k0!r}", {"history": history, "last": k, "residual": res})


def _isolate(pot, rect, count, opts, depth, out):
    if count == 0:
        return
    if count == 1:
        guess = _moment_guess(pot, rect)
        try:
            k, res = newton_refine(pot, guess, opts.tol, opts.max_iter)
        except NewtonError:
            k = None
        if k is not None and rect.contains(k, pad=1e-9 * max(1.0, rect.size)):
            out.append(GamowPole(k, res))
            return
    if depth >= opts.max_depth:
        raise NewtonError(f"could not isolate {count} zero(s) in {rect}", {"depth": depth})
    left, right = rect.split()
    n_left = winding_number(pot, left, opts)
    n_right = winding_number(pot, right, opts)
    if n_left + n_right != count:
        raise ContourError(f"child windings {n_left}+{n_right} != {count} in {rect}")
    _isolate(pot, left, n_left, opts, depth + 1, out)
    _isolate(pot, right, n_right, opts, depth + 1, out)


def _clip_to_lower(rect, opts):
    if rect.im_max < 0:
        return rect
    if rect.im_min >= 0:
        return None
    return Rectangle(rect.re_min, rect.re_max, rect.im_min, -opts.axis_margin)


@dataclass
class PoleSearchReport:
    region: Rectangle
    contour: Rectangle
    winding: int
    poles: list = field(default_factory=list)
    attempts: int = 1


def search_poles(pot, region, opts=None):
    """Full search returning the certified winding count alongside the zeros."""
    opts = opts or PoleSearchOptions()
    if not isinstance(region, Rectangle):
        region = Rectangle(*region)
    base = _clip_to_lower(region, opts)
    if base is None or pot.v0 == 0:
        return PoleSearchReport(region, base or region, 0, [])
    last_err = None
    for attempt in range(opts.retries + 1):
        rect = base if attempt == 0 else base.grown(1e-3 * attempt * base.size)
        if attempt and rect.im_max >= 0:
            rect = Rectangle(rect.re_min, rect.re_max, rect.im_min, -opts.axis_margin)
        try:
            count = winding_number(pot, rect, opts)
            found = []
            _isolate(pot, rect, count, opts, 0, found)
        except ContourError as err:
            log.info("contour attempt %d failed: %s", attempt, err)
            last_err = err
            continue
        unique = sorted(_dedupe(found), key=lambda p: (p.k_pole.real, p.k_pole.imag))
        return PoleSearchReport(region, rect, count, unique, attempt + 1)
    raise ContourError(f"pole search failed after {opts.retries + 1} attempts: {last_err}")


def _dedupe(poles, tol=1e-9):
    """Keep one representative (Re k > 0) per mirror pair k, -conj(k)."""
    out = []
    for p in poles:
        k = p.k_pole
        rep = k if k.real >= 0 else -k.conjugate()
        if any(abs(q.k_pole - rep) < tol * max(1.0, abs(rep)) for q in out):
            continue
        out.append(p if rep == k else GamowPole(rep, p.jost_residual))
    return out


def find_poles(pot, region, opts=None):
    """Every Jost zero in the k-plane rectangle ``region``, as Gamow poles.

    ``region`` is a :class:`Rectangle` or a tuple (re_min, re_max, im_min,
    im_max).  The part of the region on or above the real axis is excluded
    (no zeros live there for v0 >= 0).  Mirror pairs k, -conj(k) are reported
    once with Re k > 0.
    """
    return search_poles(pot, region, opts).poles


def pole_table(poles):
    return np.array([[p.k_pole.real, p.k_pole.imag, p.e_r, p.gamma] for p in poles]).reshape(-1, 4)
