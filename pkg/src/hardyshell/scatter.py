"""Closed-form s-wave scattering off a spherical shell with a hard core wall.

Units are hbar = 2m = 1, so the energy is E = k**2.  The potential is

    V(r) = +inf  (r < 0),   0  (0 <= r <= a),   v0  (a < r <= b),   0  (r > b)

and the regular solution is normalised to ``sin(k r)`` inside the shell:

    region I   (r <= a):      chi = sin(k r)
    region II  (a < r <= b):  chi = A exp(i kappa r) + B exp(-i kappa r),  kappa = sqrt(k**2 - v0)
    region III (r > b):       chi = c_in exp(-i k r) + c_out exp(i k r)

The Jost function is J(k) = -2i c_in (J == 1 for v0 = 0).  Scalar entry points
use :mod:`cmath` so results are reproducible to the last bit; the ``*_array``
helpers are their numpy counterparts used by the quadrature code.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError, SingularMatchingError, ThresholdError

# |J(k)| below this is treated as sitting on a resonance zero
POLE_TOLERANCE = 1e-14
# |kappa| below this makes the exponential region-II basis degenerate
KAPPA_TOLERANCE = 1e-12

FIRST_SHEET = "first"
SECOND_SHEET = "second"


@dataclass(frozen=True)
class PotentialSpec:
    """Shell geometry ``a < r <= b`` and barrier height ``v0``."""

    a: float = 1.0
    b: float = 2.0
    v0: float = 1.0

    def __post_init__(self):
        for name in ("a", "b", "v0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not 0 < self.a < self.b:
            raise ValueError(f"need 0 < a < b, got a={self.a}, b={self.b}")
        if self.v0 < 0:
            raise ValueError(f"v0 must be >= 0, got {self.v0}")

    @property
    def is_free(self):
        return self.v0 == 0

    def __call__(self, r):
        """Potential on the half-line r >= 0 (vectorised)."""
        r = np.asarray(r, dtype=float)
        return np.where((r > self.a) & (r <= self.b), self.v0, 0.0)


@dataclass(frozen=True)
class ComplexMomentum:
    """Complex momentum ``k``; the energy sheet follows from the sign of Im k."""

    k: complex

    @property
    def sheet(self):
        if self.k.imag > 0:
            return FIRST_SHEET
        if self.k.imag < 0:
            return SECOND_SHEET
        return "boundary"

    @property
    def energy(self):
        return self.k * self.k

    @classmethod
    def from_energy(cls, z, sheet=None):
        return cls(momentum_from_energy(z, sheet))


def momentum_from_energy(z, sheet=None):
    """Momentum for energy ``z`` on the requested sheet.

    Real positive energies map to ``+sqrt(E)`` irrespective of ``sheet``.  With
    ``sheet=None`` the sheet adjacent to the physical cut is used, i.e. the one
    reached by continuing ``+sqrt(E)`` vertically from the real axis: first
    sheet for Im z > 0, second sheet for Im z < 0.
    """
    z = complex(z)
    if z == 0:
        raise ThresholdError("k = 0 is the degenerate threshold")
    if z.imag == 0 and z.real > 0:
        return complex(math.sqrt(z.real), 0.0)
    if z.imag == 0:
        k = complex(0.0, math.sqrt(-z.real))
    else:
        k = cmath.sqrt(z)
    if sheet is None:
        sheet = FIRST_SHEET if z.imag >= 0 else SECOND_SHEET
    if sheet not in (FIRST_SHEET, SECOND_SHEET):
        raise ValueError(f"unknown sheet {sheet!r}")
    if (sheet == FIRST_SHEET) != (k.imag > 0):
        k = -k
    return k


def _as_k(k):
    if isinstance(k, ComplexMomentum):
        k = k.k
    k = complex(k)
    if k == 0:
        raise ThresholdError("k = 0 is the degenerate threshold")
    return k


@dataclass(frozen=True)
class RegionSolution:
    """Piecewise amplitudes of the regular solution at one momentum."""

    pot: PotentialSpec
    k: complex
    kappa: complex
    alpha: complex
    a_ii: complex
    b_ii: complex
    c_in: complex
    c_out: complex

    def chi(self, r):
        """Regular solution at scalar ``r`` (closed form, no quadrature)."""
        r = float(r)
        if r <= 0:
            return 0j
        if r <= self.pot.a:
            return self.alpha * cmath.sin(self.k * r)
        if r <= self.pot.b:
            return self.a_ii * cmath.exp(1j * self.kappa * r) + self.b_ii * cmath.exp(-1j * self.kappa * r)
        e = cmath.exp(1j * self.k * r)
        return self.c_in / e + self.c_out * e

    def dchi(self, r):
        """Radial derivative of :meth:`chi`; one-sided from the left at a and b."""
        r = float(r)
        if r <= self.pot.a:
            return self.alpha * self.k * cmath.cos(self.k * r)
        if r <= self.pot.b:
            ik = 1j * self.kappa
            return ik * (self.a_ii * cmath.exp(ik * r) - self.b_ii * cmath.exp(-ik * r))
        e = cmath.exp(1j * self.k * r)
        return 1j * self.k * (self.c_out * e - self.c_in / e)

    def chi_right(self, r):
        """Value of the expression of the region to the right of an interface."""
        if r == self.pot.a:
            return self.a_ii * cmath.exp(1j * self.kappa * r) + self.b_ii * cmath.exp(-1j * self.kappa * r)
        if r == self.pot.b:
            e = cmath.exp(1j * self.k * r)
            return self.c_in / e + self.c_out * e
        return self.chi(r)

    def dchi_right(self, r):
        if r == self.pot.a:
            ik = 1j * self.kappa
            return ik * (self.a_ii * cmath.exp(ik * r) - self.b_ii * cmath.exp(-ik * r))
        if r == self.pot.b:
            e = cmath.exp(1j * self.k * r)
            return 1j * self.k * (self.c_out * e - self.c_in / e)
        return self.dchi(r)

    @property
    def s_matrix(self):
        """S read off the region-III amplitudes, chi ~ c_in (e^{-ikr} - S e^{ikr})."""
        return -self.c_out / self.c_in


def match_coefficients(pot, k, kappa_branch=1):
    """Solve the interface matching for the regular solution at momentum ``k``.

    The four continuity conditions (value and slope at ``a`` and ``b``) form a
    block-triangular 4x4 system that is solved exactly as two 2x2 systems.

    Parameters
    ----------
    pot : PotentialSpec
    k : complex or ComplexMomentum
    kappa_branch : {1, -1}
        Which square root of ``k**2 - v0`` labels the region-II exponentials.
        The span, hence the solution, does not depend on it.

    Raises
    ------
    ThresholdError
        For k = 0.
    SingularMatchingError
        When kappa = 0 and the exponential basis collapses.
    """
    k = _as_k(k)
    kappa = kappa_branch * cmath.sqrt(k * k - pot.v0)
    if abs(kappa) < KAPPA_TOLERANCE * max(1.0, abs(k)):
        raise SingularMatchingError(f"region-II exponentials degenerate at k={k!r} (k**2 == v0)")
    a, b = pot.a, pot.b
    s_a = cmath.sin(k * a)
    slope_a = k * cmath.cos(k * a)
    # [e^{i kappa a}, e^{-i kappa a}; i kappa e^{i kappa a}, -i kappa e^{-i kappa a}] [A, B] = [s_a, slope_a]
    ratio = slope_a / (1j * kappa)
    a_ii = 0.5 * (s_a + ratio) * cmath.exp(-1j * kappa * a)
    b_ii = 0.5 * (s_a - ratio) * cmath.exp(1j * kappa * a)
    u = a_ii * cmath.exp(1j * kappa * b) + b_ii * cmath.exp(-1j * kappa * b)
    du = 1j * kappa * (a_ii * cmath.exp(1j * kappa * b) - b_ii * cmath.exp(-1j * kappa * b))
    c_in, c_out = _outer_amplitudes(k, b, u, du)
    return RegionSolution(pot, k, kappa, 1.0 + 0j, a_ii, b_ii, c_in, c_out)


def _outer_amplitudes(k, b, u, du):
    ratio = du / (1j * k)
    c_in = 0.5 * (u - ratio) * cmath.exp(1j * k * b)
    c_out = 0.5 * (u + ratio) * cmath.exp(-1j * k * b)
    return c_in, c_out


def _sinc_terms(w, d):
    """cos(sqrt(w) d) and sin(sqrt(w) d)/sqrt(w), entire in w."""
    root = cmath.sqrt(w)
    c = cmath.cos(root * d)
    if abs(w) * d * d < 1e-3:
        x = w * d * d
        s = d * (1 - x / 6 + x * x / 120 - x ** 3 / 5040 + x ** 4 / 362880)
    else:
        s = cmath.sin(root * d) / root
    return c, s


def _sinc_derivative(w, d, c, s):
    """d/dw of sin(sqrt(w) d)/sqrt(w)."""
    if abs(w) * d * d < 1e-3:
        x = w * d * d
        return d ** 3 * (-1 / 6 + 2 * x / 120 - 3 * x * x / 5040 + 4 * x ** 3 / 362880 - 5 * x ** 4 / 39916800)
    return (d * c - s) / (2 * w)


def _boundary_values(pot, k):
    """chi(b) and chi'(b) via the kappa-free cos/sinc propagation across the shell."""
    d = pot.b - pot.a
    w = k * k - pot.v0
    c, s = _sinc_terms(w, d)
    s_a = cmath.sin(k * pot.a)
    kc_a = k * cmath.cos(k * pot.a)
    u = s_a * c + kc_a * s
    du = -s_a * w * s + kc_a * c
    return u, du


def jost_value(pot, k):
    """Jost function J(k) = -2i c_in as a plain complex number."""
    k = _as_k(k)
    if pot.v0 == 0:
        return 1 + 0j
    u, du = _boundary_values(pot, k)
    return (du / k - 1j * u) * cmath.exp(1j * k * pot.b)


def jost_derivative(pot, k):
    """J(k) and dJ/dk from closed-form differentiation of the matching."""
    k = _as_k(k)
    if pot.v0 == 0:
        return 1 + 0j, 0j
    a, b = pot.a, pot.b
    d = b - a
    w = k * k - pot.v0
    c, s = _sinc_terms(w, d)
    ds_w = _sinc_derivative(w, d, c, s)
    dc_w = -0.5 * d * s
    sin_a, cos_a = cmath.sin(k * a), cmath.cos(k * a)
    s_a, kc_a = sin_a, k * cos_a
    ds_a = a * cos_a
    dkc_a = cos_a - k * a * sin_a
    dc = 2 * k * dc_w
    ds = 2 * k * ds_w
    u = s_a * c + kc_a * s
    du_r = -s_a * w * s + kc_a * c
    u_k = ds_a * c + s_a * dc + dkc_a * s + kc_a * ds
    du_r_k = -ds_a * w * s - s_a * 2 * k * s - s_a * w * ds + dkc_a * c + kc_a * dc
    phase = cmath.exp(1j * k * b)
    j = (du_r / k - 1j * u) * phase
    dj = (du_r_k / k - du_r / (k * k) - 1j * u_k) * phase + 1j * b * j
    return j, dj


@dataclass(frozen=True)
class JostData:
    k: complex
    j_minus: complex
    j_plus: complex


def jost_function(pot, k):
    """J-(k) together with J+(k) = J-(-k)."""
    k = _as_k(k)
    return JostData(k, jost_value(pot, k), jost_value(pot, -k))


def s_matrix(pot, energy, sheet=None):
    """S(E) = J(-k)/J(k), with k taken on ``sheet`` (see :func:`momentum_from_energy`).

    On the real axis this reproduces chi ~ e^{-ikr} - S e^{ikr}; the ratio
    convention is the one that puts the S-matrix poles on the Jost zeros.
    """
    k = momentum_from_energy(energy, sheet)
    return s_matrix_k(pot, k)


def s_matrix_k(pot, k):
    k = _as_k(k)
    j = jost_value(pot, k)
    if abs(j) < POLE_TOLERANCE:
        raise PoleError(f"S-matrix pole: J(k) = {j!r} at k = {k!r}", location=k)
    return jost_value(pot, -k) / j


def _ket_prefactor(pot, k, sign):
    """Factor p with <r|E sign> = p * chi(r); the + ket has asymptote e^{-ikr} - S e^{ikr}."""
    if sign == "+":
        j = jost_value(pot, k)
        if abs(j) < POLE_TOLERANCE:
            raise PoleError(f"ket normalisation hits a Jost zero at k = {k!r}", location=k)
        return -2j / j
    if sign == "-":
        j = jost_value(pot, -k)
        if abs(j) < POLE_TOLERANCE:
            raise PoleError(f"ket normalisation hits a Jost zero at k = {-k!r}", location=-k)
        return 2j / j
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def regular_solution(pot, k, r):
    """chi(r, k) at scalar r for any complex k != 0 (kappa-free closed form)."""
    k = _as_k(k)
    r = float(r)
    if r <= 0:
        return 0j
    a, b = pot.a, pot.b
    if r <= a:
        return cmath.sin(k * r)
    s_a = cmath.sin(k * a)
    kc_a = k * cmath.cos(k * a)
    w = k * k - pot.v0
    if r <= b:
        c, s = _sinc_terms(w, r - a)
        return s_a * c + kc_a * s
    u, du = _boundary_values(pot, k)
    c_in, c_out = _outer_amplitudes(k, b, u, du)
    e = cmath.exp(1j * k * r)
    return c_in / e + c_out * e


def ls_ket(pot, energy, r, sign="+"):
    """Lippmann-Schwinger ket <r|E±> for real E > 0.

    Normalised to the asymptotic form e^{∓ikr} - S e^{±ikr} for ``+``; the
    ``-`` ket is the complex conjugate of the ``+`` ket.
    """
    energy = float(energy)
    if energy <= 0:
        raise ValueError("ls_ket needs E > 0")
    if r < 0:
        raise ValueError("r must be >= 0")
    k = complex(math.sqrt(energy), 0.0)
    return _ket_prefactor(pot, k, sign) * regular_solution(pot, k, r)


def continued_ket(pot, z, r, sign="+", sheet=None):
    """Analytic continuation of ``ls_ket`` to complex energy ``z``.

    ``sheet=None`` continues vertically from the physical cut (second sheet
    below the real axis).  The ``+`` ket has poles at the resonance energies on
    the second sheet; the ``-`` ket is the continuation of the conjugate ket,
    i.e. the bra kernel <z+|r>, which is pole-free there.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    k = momentum_from_energy(z, sheet)
    return _ket_prefactor(pot, k, sign) * regular_solution(pot, k, r)


# ---------------------------------------------------------------------------
# numpy counterparts


@dataclass(frozen=True)
class KetCoefficients:
    """Per-momentum data consumed by the compiled chi kernels."""

    k: np.ndarray
    kappa: np.ndarray
    s_a: np.ndarray
    kc_a: np.ndarray
    c_in: np.ndarray
    c_out: np.ndarray
    a: float
    b: float

    def kernel_args(self):
        return self.k, self.kappa, self.s_a, self.kc_a, self.c_in, self.c_out, self.a, self.b


def coefficients_array(pot, k):
    """Vectorised region data for an array of nonzero momenta."""
    k = np.asarray(k, dtype=complex)
    if np.any(k == 0):
        raise ThresholdError("k = 0 is the degenerate threshold")
    a, b, d = pot.a, pot.b, pot.b - pot.a
    w = k * k - pot.v0
    kappa = np.sqrt(w)
    s_a = np.sin(k * a)
    kc_a = k * np.cos(k * a)
    c = np.cos(kappa * d)
    small = np.abs(w) * d * d < 1e-3
    x = w * d * d
    series = d * (1 - x / 6 + x * x / 120 - x ** 3 / 5040 + x ** 4 / 362880)
    safe = np.where(small, 1.0, kappa)
    s = np.where(small, series, np.sin(kappa * d) / safe)
    u = s_a * c + kc_a * s
    du = -s_a * w * s + kc_a * c
    ratio = du / (1j * k)
    c_in = 0.5 * (u - ratio) * np.exp(1j * k * b)
    c_out = 0.5 * (u + ratio) * np.exp(-1j * k * b)
    # kernels evaluate sin(kappa x)/kappa directly; exact zero switches to the limit
    kappa = np.where(np.abs(kappa) < 1e-150, 0.0, kappa)
    return KetCoefficients(k, kappa, s_a, kc_a, c_in, c_out, a, b)


def jost_array(pot, k):
    """Vectorised Jost function."""
    coeff = coefficients_array(pot, k)
    if pot.v0 == 0:
        return np.ones_like(coeff.k)
    return -2j * coeff.c_in


def ket_prefactor_array(pot, k, sign):
    k = np.asarray(k, dtype=complex)
    if sign == "+":
        j = jost_array(pot, k)
        if np.any(np.abs(j) < POLE_TOLERANCE):
            raise PoleError("ket normalisation hits a Jost zero")
        return -2j / j
    if sign == "-":
        j = jost_array(pot, -k)
        if np.any(np.abs(j) < POLE_TOLERANCE):
            raise PoleError("ket normalisation hits a Jost zero")
        return 2j / j
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def s_matrix_array(pot, energies):
    """S(E) on an array of real positive energies."""
    e = np.asarray(energies, dtype=float)
    if np.any(e <= 0):
        raise ValueError("energies must be > 0")
    k = np.sqrt(e).astype(complex)
    return jost_array(pot, -k) / jost_array(pot, k)
