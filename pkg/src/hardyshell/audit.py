"""Measured kernel and wavefunction magnitudes against their analytic upper bounds.

Everything here is measurement: the reports record actual values, the
bound expressions and their ratios, and never assert which way a bound is
tight.  The kernel studied is the bra kernel <z+|r>, i.e. the continuation
of conj(<r|E+>) off the real axis (``continued_ket(..., sign="-")``).
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import PoleError
from .quadrature import composite_rule, panel_breaks
from .scatter import SECOND_SHEET, coefficients_array, continued_ket, jost_value, momentum_from_energy

EPS = 1e-300
POLE_PROXIMITY = 1e-8


def kernel_bound(z, r):
    """|z|^(1/4) r / (1 + |z|^(1/2) r) * exp(|Im sqrt(z)| r)."""
    z = complex(z)
    az = abs(z)
    return az ** 0.25 * r / (1.0 + math.sqrt(az) * r) * math.exp(abs(np.sqrt(z).imag) * r)


def compact_support_bound(z, extent):
    """Same shape with the support radius A in place of r."""
    return kernel_bound(z, extent)


def negative_axis_bound(energy, extent):
    """|E|^(1/4) / (1 + |E|^(1/2) A) * exp(|E|^(1/2) A), for E on the negative axis."""
    e = abs(float(energy))
    return e ** 0.25 / (1.0 + math.sqrt(e) * extent) * math.exp(math.sqrt(e) * extent)


@dataclass
class BoundRow:
    z: complex
    x: float
    actual: float
    bound: float
    jost: float
    note: str = ""

    @property
    def ratio(self):
        return self.actual / max(self.bound, EPS)

    @property
    def gap(self):
        return self.bound / max(self.actual, EPS)


@dataclass
class BoundReport:
    """Rows of (z, r or s, |value|, bound, ratio); ``x_name`` labels the second column."""

    rows: list
    x_name: str = "r"
    skipped: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def certified(self):
        return [row for row in self.rows if not row.note]

    @property
    def c_empirical(self):
        rows = self.certified
        return max((row.ratio for row in rows), default=0.0)

    @property
    def verdict(self):
        return math.isfinite(self.c_empirical)

    def is_consistent(self):
        return all(row.ratio == row.actual / max(row.bound, EPS) for row in self.rows)

    def to_csv(self, header_lines=()):
        buf = io.StringIO()
        for line in header_lines:
            buf.write(f"# {line}\n")
        buf.write(f"# cEmpirical={self.c_empirical!r}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re_z", "im_z", self.x_name, "actual", "bound", "ratio", "note"])
        for row in self.rows:
            w.writerow([repr(row.z.real), repr(row.z.imag), repr(float(row.x)), repr(row.actual),
                        repr(row.bound), repr(row.ratio), row.note])
        return buf.getvalue()

    def to_dict(self):
        return {
            "schemaVersion": 1,
            "cEmpirical": self.c_empirical,
            "verdict": self.verdict,
            "xName": self.x_name,
            "meta": self.meta,
            "rows": [
                {"z": [row.z.real, row.z.imag], self.x_name: row.x, "actual": row.actual,
                 "bound": row.bound, "ratio": row.ratio, "jost": row.jost, "note": row.note}
                for row in self.rows
            ],
            "skipped": [{"z": [z.real, z.imag], "reason": why} for z, why in self.skipped],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1)


def _denominator_jost(pot, k, sign):
    return jost_value(pot, k if sign == "+" else -k)


def kernel_bound_audit(pot, z_grid, r_list, sign="-"):
    """Compare |<z+|r>| with the kernel bound at every (z, r).

    Points where the normalising Jost value is below ``POLE_PROXIMITY`` are
    skipped and listed in ``report.skipped``; r = 0 rows are kept but marked
    degenerate (both sides vanish) and excluded from the constant.
    """
    rows, skipped = [], []
    for z in np.ravel(np.asarray(z_grid, dtype=complex)):
        z = complex(z)
        k = momentum_from_energy(z)
        j = abs(_denominator_jost(pot, k, sign))
        if j < POLE_PROXIMITY:
            skipped.append((z, f"|J| = {j:.3e} near a pole"))
            continue
        for r in r_list:
            r = float(r)
            actual = abs(continued_ket(pot, z, r, sign))
            bound = kernel_bound(z, r)
            note = "degenerate r=0" if r == 0.0 else ""
            rows.append(BoundRow(z, r, actual, bound, j, note))
    return BoundReport(rows, "r", skipped, {"sign": sign, "a": pot.a, "b": pot.b, "v0": pot.v0})


def lower_half_plane_grid(radii=(0.5, 2.0, 10.0, 40.0, 100.0), angles=9):
    """Energies rho * exp(-i theta), theta strictly inside (0, pi)."""
    theta = np.pi * np.arange(1, angles + 1) / (angles + 1)
    return np.array([rho * np.exp(-1j * th) for rho in radii for th in theta])


# ---------------------------------------------------------------------------
# continued wavefunctions along rays


@dataclass(frozen=True)
class Ray:
    """z(s) = s * exp(i angle) on ``sheet``; angle = -pi is the negative axis below the cut."""

    angle: float
    sheet: str = SECOND_SHEET

    def __call__(self, s):
        if self.angle == -math.pi:
            return complex(-s, 0.0)
        return s * complex(math.cos(self.angle), math.sin(self.angle))

    @property
    def is_negative_axis(self):
        return self.angle == -math.pi


NEGATIVE_AXIS = Ray(-math.pi)


def _wavefunction_value(pot, phi, k, nodes, weights, sign):
    pref = 2j / jost_value(pot, -k) if sign == "-" else -2j / jost_value(pot, k)
    coeffs = coefficients_array(pot, np.array([k]))
    return complex(pref * _kernels.chi_apply_k(nodes, weights * phi(nodes), *coeffs.kernel_args())[0])


def continued_wavefunction(pot, phi, z, extent, panels=32, order=16, sheet=None, sign="-"):
    """integral_0^extent phi(r) <z+|r> dr with composite Gauss-Legendre panels."""
    k = momentum_from_energy(z, sheet)
    nodes, weights = composite_rule(panel_breaks(0.0, extent, extent / panels, (pot.a, pot.b)), order)
    return _wavefunction_value(pot, phi, k, nodes, weights, sign)


def _certified_value(pot, phi, k, extent, sign, rtol, max_doublings):
    prev = None
    growth = 0
    panels = 16
    history = []
    for _ in range(max_doublings):
        nodes, weights = composite_rule(panel_breaks(0.0, extent, extent / panels, (pot.a, pot.b)), 16)
        val = _wavefunction_value(pot, phi, k, nodes, weights, sign)
        history.append(val)
        if prev is not None:
            if abs(val) > 1.1 * abs(prev):
                growth += 1
                if growth >= 2:
                    return val, "divergent", history
            else:
                growth = 0
            if abs(val - prev) <= rtol * max(abs(val), EPS):
                return val, "", history
        prev = val
        panels *= 2
    return prev, "unconverged", history


def wavefunction_growth_profile(pot, phi, ray, s_values, extent, sign="-", rtol=1e-10, max_doublings=8):
    """Table of |phi+(z(s))| against the compact-support bound along ``ray``.

    ``phi`` is a vectorised callable supported in [0, extent].  The bound is
    the negative-axis form on that ray and the complex-plane form otherwise.
    Samples whose quadrature fails to settle under panel doubling are flagged.
    """
    rows, skipped = [], []
    for s in s_values:
        s = float(s)
        z = ray(s)
        try:
            k = momentum_from_energy(z, ray.sheet if z.imag == 0 and z.real < 0 else None)
            j = abs(_denominator_jost(pot, k, sign))
            if j < POLE_PROXIMITY:
                raise PoleError("near pole", k)
        except PoleError:
            skipped.append((z, "pole proximity"))
            continue
        val, note, _ = _certified_value(pot, phi, k, extent, sign, rtol, max_doublings)
        if ray.is_negative_axis:
            bound = negative_axis_bound(z.real, extent)
        else:
            bound = compact_support_bound(z, extent)
        rows.append(BoundRow(z, s, abs(val), bound, j, note))
    meta = {"angle": ray.angle, "sheet": ray.sheet, "extent": extent, "sign": sign,
            "a": pot.a, "b": pot.b, "v0": pot.v0}
    return BoundReport(rows, "s", skipped, meta)
