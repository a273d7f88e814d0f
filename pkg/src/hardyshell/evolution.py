"""Semigroup evolution of energy wavefunctions and Gamow decay amplitudes."""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, SemigroupDomainError, WrongHalfPlaneError
from .hardy import LOWER, UPPER, evaluate_halfplane, is_hardy, DEFAULT_Y_SAMPLES
from .sampled import ENERGY_LINE, POSITIVE_ENERGY

# sign of the exponent in exp(sign * i E t) -> half-plane it preserves for t >= 0
MATCHING_HALF_PLANE = {"-": LOWER, "+": UPPER}


def evolve(fhat, t, sign):
    """Multiply by exp(+i E t) (``sign="+"``) or exp(-i E t) (``sign="-"``).

    A time-side representation, if present, is shifted accordingly, so the
    result keeps its analytic extension.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    t = float(t)
    if t == 0.0:
        return fhat
    s = 1.0 if sign == "+" else -1.0
    values = fhat.values * np.exp(1j * s * t * fhat.grid)
    ts = fhat.time_side.shifted(-s * t) if fhat.time_side is not None else None
    cont = None
    if ts is None and fhat.continuation is not None:
        base = fhat.continuation
        cont = lambda z: base(z) * np.exp(1j * s * t * np.asarray(z))  # noqa: E731
    return fhat.with_values(values, time_side=ts, continuation=cont)


@dataclass
class EvolutionReport:
    sign: str
    half_plane: str
    t_values: list
    verdicts: list
    line_norms: list = field(default_factory=list)
    boundary_norms: list = field(default_factory=list)
    y_values: list = field(default_factory=list)
    max_ratios: list = field(default_factory=list)

    def to_dict(self):
        return {
            "schemaVersion": 1,
            "sign": self.sign,
            "halfPlane": self.half_plane,
            "tValues": self.t_values,
            "verdicts": self.verdicts,
            "y": self.y_values,
            "lineNorms": self.line_norms,
            "boundaryNorms": self.boundary_norms,
            "maxRatios": self.max_ratios,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1, allow_nan=True)


def semigroup_asymmetry(fhat, sign, t_list, y_samples=DEFAULT_Y_SAMPLES, tol=1e-6):
    """Hardy verdicts of ``evolve(fhat, t, sign)`` for each t in ``t_list``.

    Raises
    ------
    PreconditionError
        If ``fhat`` itself fails the membership test for the half-plane
        preserved by the chosen sign.
    """
    half = MATCHING_HALF_PLANE[sign]
    base = is_hardy(fhat, half, y_samples, tol)
    if not base.passed:
        raise PreconditionError(f"input is not Hardy in the {half} half-plane: {base.reason}")
    report = EvolutionReport(sign, half, [float(t) for t in t_list], [], y_values=list(base.y_values))
    for t in report.t_values:
        rep = base if t == 0.0 else is_hardy(evolve(fhat, t, sign), half, y_samples, tol)
        report.verdicts.append(rep.verdict)
        report.line_norms.append(list(rep.line_norms))
        report.boundary_norms.append(rep.boundary_norm)
        report.max_ratios.append(rep.max_ratio)
    return report


def _check_lower_class(psi):
    ts = psi.time_side
    if ts is not None:
        if ts.support[0] < 0:
            raise WrongHalfPlaneError(
                f"time support ({ts.support[0]:g}, {ts.support[1]:g}) reaches t < 0; "
                "the extension to the lower half-plane diverges")
        return
    if psi.continuation is None:
        raise PreconditionError("wavefunction carries no analytic extension")
    rep = is_hardy(psi, LOWER)
    if not rep.passed:
        raise WrongHalfPlaneError(f"wavefunction fails the lower half-plane test: {rep.reason}")


def gamow_functional(pole, psi):
    """Raw continuation value psi(z_R), z_R = k_pole**2 on the second sheet.

    ``psi`` must be lower-half-plane Hardy data (time support in t >= 0).
    """
    z = complex(pole.z_r)
    if z.imag >= 0:
        raise WrongHalfPlaneError(f"pole {z!r} is not in the lower half-plane")
    if psi.domain not in (ENERGY_LINE, POSITIVE_ENERGY):
        raise ValueError(f"expected energy-side data, got {psi.domain}")
    _check_lower_class(psi)
    if psi.time_side is not None:
        return complex(evaluate_halfplane(psi, z))
    return complex(psi.extend(np.array([z]))[0])


def decay_law(pole, psi, t_list):
    """Gamow amplitudes of ``evolve(psi, t, "-")`` for t >= 0."""
    t_list = [float(t) for t in t_list]
    if any(t < 0 for t in t_list):
        raise SemigroupDomainError("decay law is defined for t >= 0 only")
    return [gamow_functional(pole, evolve(psi, t, "-")) for t in t_list]


def decay_deviation(pole, amps, t_list):
    """Largest relative modulus error and phase error against exp(-i z_R t)."""
    a0 = amps[0] if t_list[0] == 0 else None
    if a0 is None:
        raise ValueError("t_list must start at 0")
    mod_err, phase_err = 0.0, 0.0
    for t, a in zip(t_list, amps):
        ratio = abs(a) / abs(a0)
        mod_err = max(mod_err, abs(ratio - math.exp(-0.5 * pole.gamma * t)) / math.exp(-0.5 * pole.gamma * t))
        dphi = np.angle(a / a0) + pole.e_r * t
        dphi = (dphi + math.pi) % (2 * math.pi) - math.pi
        phase_err = max(phase_err, abs(dphi))
    return mod_err, phase_err
