"""Spectral transforms between L2(0, inf; dr) and L2(0, inf; dE).

The forward map pairs a radial function with the conjugate scattering ket,

    f_hat(E) = N(E) * integral f(r) conj(<r|E sign>) dr,   N(E) = c / sqrt(k),

and the inverse integrates the ket against ``dE``.  The constant ``c``
absorbs the delta normalisation of the kets; it is calibrated once per grid
by Parseval on the free problem.  Both integrals use composite
Gauss-Legendre panels no wider than a quarter period of the fastest
oscillation; the energy integral runs over ``k`` with ``dE = 2 k dk``.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

from . import _kernels
from .errors import TruncationError
from .quadrature import composite_rule, panel_breaks
from .sampled import POSITIVE_ENERGY, R_LINE, SampledFunction
from .scatter import PotentialSpec, coefficients_array, ket_prefactor_array

log = logging.getLogger(__name__)

DEFAULT_R_CUTOFF = 40.0
DEFAULT_E_CUTOFF = 400.0
DEFAULT_ORDER = 4
TAIL_TOL = 1e-8
# radial fraction treated as the tail in the decay checks
_TAIL_FRACTION = 0.9


@dataclass(frozen=True, eq=False)
class TransformPlan:
    """Immutable quadrature data for one potential and one ket sign."""

    pot: PotentialSpec
    sign: str
    r_nodes: np.ndarray
    r_weights: np.ndarray
    k_nodes: np.ndarray
    k_weights: np.ndarray
    r_cutoff: float
    e_cutoff: float
    norm_constant: float
    order: int
    refinement: int = 1
    _prefactor: np.ndarray = field(default=None, repr=False)
    _coeffs: object = field(default=None, repr=False)

    @property
    def e_nodes(self):
        return self.k_nodes ** 2

    @property
    def e_weights(self):
        return 2.0 * self.k_nodes * self.k_weights

    @property
    def kernel_scale(self):
        """N(E) * prefactor: <r|E sign> normalised is kernel_scale * chi(r, k)."""
        return self.norm_constant / np.sqrt(self.k_nodes) * self._prefactor

    def sample(self, func):
        """Radial function on the plan's r nodes."""
        r = self.r_nodes
        return SampledFunction(r, np.asarray(func(r), dtype=complex), R_LINE, weights=self.r_weights)

    def free(self):
        return make_plan(PotentialSpec(self.pot.a, self.pot.b, 0.0), self.sign, self.r_cutoff,
                         self.e_cutoff, self.order, self.refinement)

    def refined(self):
        """One grid doubling: twice the energy range, panels re-sized to the new band limit."""
        return make_plan(self.pot, self.sign, self.r_cutoff, 2 * self.e_cutoff, self.order, self.refinement)

    def subdivided(self):
        """Same cutoffs with every panel halved."""
        return make_plan(self.pot, self.sign, self.r_cutoff, self.e_cutoff, self.order, 2 * self.refinement)

    def with_sign(self, sign):
        return make_plan(self.pot, sign, self.r_cutoff, self.e_cutoff, self.order, self.refinement)


def _grids(pot, r_cutoff, e_cutoff, order, refinement):
    k_max = math.sqrt(e_cutoff)
    r_width = 0.5 * math.pi / k_max / refinement
    k_width = 0.5 * math.pi / r_cutoff / refinement
    r, wr = composite_rule(panel_breaks(0.0, r_cutoff, r_width, (pot.a, pot.b)), order)
    k, wk = composite_rule(panel_breaks(0.0, k_max, k_width), order)
    return r, wr, k, wk


def _reference(r):
    return r * np.exp(-r * r)


@lru_cache(maxsize=32)
def calibrate_norm_constant(a, b, r_cutoff, e_cutoff, order, refinement):
    """Constant c making the free forward transform isometric on a reference function."""
    pot = PotentialSpec(a, b, 0.0)
    r, wr, k, wk = _grids(pot, r_cutoff, e_cutoff, order, refinement)
    coeffs = coefficients_array(pot, k)
    f = _reference(r).astype(complex)
    raw = _kernels.chi_apply_k(r, wr * f, *coeffs.kernel_args()) * ket_prefactor_array(pot, k, "+") / np.sqrt(k)
    ratio = np.sum(wr * np.abs(f) ** 2) / np.sum(2 * k * wk * np.abs(raw) ** 2)
    return float(math.sqrt(ratio))


def make_plan(pot, sign="+", r_cutoff=DEFAULT_R_CUTOFF, e_cutoff=DEFAULT_E_CUTOFF, order=DEFAULT_ORDER, refinement=1):
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if not (r_cutoff > pot.b and e_cutoff > 0):
        raise ValueError("cutoffs must be positive and r_cutoff must exceed the shell")
    r, wr, k, wk = _grids(pot, r_cutoff, e_cutoff, order, refinement)
    c = calibrate_norm_constant(pot.a, pot.b, r_cutoff, e_cutoff, order, refinement)
    coeffs = coefficients_array(pot, k)
    pref = ket_prefactor_array(pot, k, sign)
    for arr in (r, wr, k, wk):
        arr.setflags(write=False)
    return TransformPlan(pot, sign, r, wr, k, wk, float(r_cutoff), float(e_cutoff), c, order, refinement, pref, coeffs)


def _radial_values(plan, f):
    if callable(f):
        return np.asarray(f(plan.r_nodes), dtype=complex)
    if f.grid.shape == plan.r_nodes.shape and np.array_equal(f.grid, plan.r_nodes):
        return f.values
    raise ValueError("radial input must be sampled on the plan's r nodes (see TransformPlan.sample)")


def _energy_values(plan, g):
    e = plan.e_nodes
    if g.grid.shape == e.shape and np.array_equal(g.grid, e):
        return g.values
    if g.has_extension():
        return g.extend(e.astype(complex))
    if g.grid[0] > e[0] or g.grid[-1] < e[-1]:
        raise TruncationError("energy samples do not cover the plan's energy range")
    return CubicSpline(g.grid, g.values.real)(e) + 1j * CubicSpline(g.grid, g.values.imag)(e)


def _tail_check(values, weights, mask, what):
    dens = weights * np.abs(values) ** 2
    total = float(np.sum(dens))
    tail = float(np.sum(dens[mask]))
    if total > 0 and tail > TAIL_TOL * total:
        raise TruncationError(f"{what} tail holds {tail / total:.3e} of the norm (limit {TAIL_TOL:g})")
    return tail / total if total > 0 else 0.0


def to_energy(plan, f, check_tail=True):
    """Forward transform of a radial function (callable or sampled on the plan's r nodes).

    The result lives on the plan's energy nodes and carries quadrature
    weights; ``tail["parseval_defect"]`` is | ||f_hat|| - ||f|| |.
    """
    v = _radial_values(plan, f)
    tail = _tail_check(v, plan.r_weights, plan.r_nodes > _TAIL_FRACTION * plan.r_cutoff, "radial") if check_tail else None
    s = np.conj(_kernels.chi_apply_k(plan.r_nodes, np.conj(plan.r_weights * v), *plan._coeffs.kernel_args()))
    out = np.conj(plan.kernel_scale) * s
    norm_f = math.sqrt(float(np.sum(plan.r_weights * np.abs(v) ** 2)))
    norm_g = math.sqrt(float(np.sum(plan.e_weights * np.abs(out) ** 2)))
    meta = {"parseval_defect": abs(norm_g - norm_f), "input_norm": norm_f, "radial_tail": tail, "sign": plan.sign}
    return SampledFunction(plan.e_nodes, out, POSITIVE_ENERGY, tail=meta, weights=plan.e_weights)


def to_position(plan, g, r=None, check_tail=True):
    """Inverse transform; evaluated on the plan's r nodes unless ``r`` is given."""
    v = _energy_values(plan, g)
    tail = _tail_check(v, plan.e_weights, plan.e_nodes > _TAIL_FRACTION * plan.e_cutoff, "energy") if check_tail else None
    coeff = plan.e_weights * v * plan.kernel_scale
    if r is None:
        grid, weights = plan.r_nodes, plan.r_weights
    else:
        grid, weights = np.asarray(r, dtype=float), None
    out = _kernels.chi_apply_r(grid, coeff, *plan._coeffs.kernel_args())
    if r is not None:
        return out
    norm_g = math.sqrt(float(np.sum(plan.e_weights * np.abs(v) ** 2)))
    norm_f = math.sqrt(float(np.sum(weights * np.abs(out) ** 2)))
    meta = {"parseval_defect": abs(norm_g - norm_f), "input_norm": norm_g, "energy_tail": tail, "sign": plan.sign}
    return SampledFunction(grid, out, R_LINE, tail=meta, weights=weights)


def relative_error(x, y, weights):
    d = float(np.sum(weights * np.abs(x - y) ** 2))
    n = float(np.sum(weights * np.abs(y) ** 2))
    return math.sqrt(d / n) if n > 0 else math.sqrt(d)


def round_trip_error(plan, f):
    """||U^-1 U f - f|| / ||f|| on the r nodes."""
    v = _radial_values(plan, f)
    back = to_position(plan, to_energy(plan, f))
    return relative_error(back.values, v, plan.r_weights)


def hamiltonian_fd(pot, func, r, h):
    """(-d2/dr2 + V) func at ``r`` by centred differences of step ``h``."""
    r = np.asarray(r, dtype=float)
    d2 = (func(r + h) - 2.0 * func(r) + func(r - h)) / (h * h)
    return -d2 + pot(r) * func(r)


def _interior_mask(plan, h):
    r = plan.r_nodes
    return (r > 2 * h) & (np.abs(r - plan.pot.a) > 2 * h) & (np.abs(r - plan.pot.b) > 2 * h)


@dataclass(frozen=True)
class IntertwiningReport:
    defect: float
    h: float
    warnings: tuple = ()

    def to_dict(self):
        return {"defect": self.defect, "h": self.h, "warnings": list(self.warnings)}


def intertwining_check(plan, func, h=1e-3):
    """||U(H f) - E U f|| / ||H f|| with H applied by finite differences.

    ``func`` is a vectorised callable of r.  A warning is attached when
    f(0) != 0 (the boundary term breaks the identity) or when f is not small
    where the finite-difference stencil straddles a potential step.
    """
    warnings = []
    if abs(complex(np.asarray(func(np.array([0.0])))[0])) > 1e-12:
        warnings.append("f(0) != 0: boundary term present")
    hf = hamiltonian_fd(plan.pot, func, plan.r_nodes, h)
    if np.allclose(hf, 0) and np.allclose(func(plan.r_nodes), 0):
        return IntertwiningReport(0.0, h, tuple(warnings))
    lhs = to_energy(plan, lambda r: hamiltonian_fd(plan.pot, func, r, h), check_tail=False)
    rhs = to_energy(plan, func, check_tail=False)
    diff = lhs.values - plan.e_nodes * rhs.values
    num = float(np.sum(plan.e_weights * np.abs(diff) ** 2))
    den = float(np.sum(plan.r_weights * np.abs(hf) ** 2))
    return IntertwiningReport(math.sqrt(num / den), h, tuple(warnings))


def moller_apply(plan, f_free):
    """Wave operator applied to a radial function: inverse interacting transform of the free one."""
    free = plan.free()
    return to_position(plan, to_energy(free, f_free))


def moller_intertwining_defect(plan, func, h=1e-3):
    """||H(Omega f) - Omega(H0 f)|| / ||H0 f|| on nodes away from the potential steps."""
    free = plan.free()
    mask = _interior_mask(plan, h)
    r = plan.r_nodes[mask]
    g = to_energy(free, func, check_tail=False)
    om = lambda x: to_position(plan, g, r=x, check_tail=False)  # noqa: E731
    lhs = hamiltonian_fd(plan.pot, om, r, h)
    h0f = lambda x: hamiltonian_fd(free.pot, func, x, h)  # noqa: E731
    rhs = to_position(plan, to_energy(free, h0f, check_tail=False), r=r, check_tail=False)
    w = plan.r_weights[mask]
    den = float(np.sum(w * np.abs(h0f(r)) ** 2))
    return math.sqrt(float(np.sum(w * np.abs(lhs - rhs) ** 2)) / den)


# ---------------------------------------------------------------------------
# standard radial test functions


def _suite_factory(pot):
    # r * even(r), with double zeros at both potential steps: smooth odd
    # extension through r = 0 and no kinks of V f at the steps
    a2, b2 = pot.a ** 2, pot.b ** 2

    def shape(r):
        return r * (r * r - a2) ** 2 * (r * r - b2) ** 2

    return {
        "narrow": lambda r: shape(r) * np.exp(-3.0 * r * r),
        "core": lambda r: shape(r) * np.exp(-2.0 * r * r),
        "mid": lambda r: shape(r) * np.exp(-r * r),
        "wide": lambda r: shape(r) * np.exp(-0.5 * r * r),
        "wave": lambda r: shape(r) * np.exp(-0.5 * r * r) * np.cos(3.0 * r),
    }


def standard_suite(pot):
    """Five smooth unit-norm radial functions vanishing at r = 0, a and b."""
    x, w = composite_rule(np.linspace(0.0, 20.0, 401), 12)
    out = {}
    for name, fn in _suite_factory(pot).items():
        norm = math.sqrt(float(np.sum(w * np.abs(fn(x)) ** 2)))
        out[name] = (lambda f, n: (lambda r: f(np.asarray(r, dtype=float)) / n))(fn, norm)
    return out
