import cmath
import csv
import io
import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardyshell import audit, poles
from hardyshell.scatter import SECOND_SHEET, momentum_from_energy

import oracles
from golden import make_golden

GOLDEN = Path(__file__).parent / "golden"


def _rows(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


@pytest.fixture(scope="module")
def kernel_report():
    return make_golden.kernel_report()


@pytest.fixture(scope="module")
def growth_report():
    return make_golden.growth_report()


def test_kernel_bound_values():
    assert audit.kernel_bound(4.0, 0.0) == 0.0
    # z = 4: |z|^(1/4) = sqrt 2, sqrt z = 2 is real
    assert audit.kernel_bound(4.0, 1.0) == pytest.approx(math.sqrt(2) / 3, rel=1e-15)
    assert audit.kernel_bound(-4.0, 1.0) == pytest.approx(math.sqrt(2) / 3 * math.exp(2), rel=1e-15)


def test_negative_axis_bound_value():
    assert audit.negative_axis_bound(-4.0, 1.0) == pytest.approx(math.sqrt(2) / 3 * math.exp(2), rel=1e-15)


@given(st.floats(1e-3, 1e3), st.floats(-math.pi, 0), st.floats(0, 20), st.floats(0, 20))
def test_kernel_bound_grows_with_r(rho, theta, r1, r2):
    z = cmath.rect(rho, theta)
    lo, hi = sorted((r1, r2))
    assert audit.kernel_bound(z, lo) <= audit.kernel_bound(z, hi) * (1 + 1e-14)


@given(st.floats(1e-3, 1e3), st.floats(0.1, 10))
def test_negative_axis_form_is_scaled_compact_form(e, extent):
    a = audit.negative_axis_bound(-e, extent) * extent
    b = audit.compact_support_bound(complex(-e, 0.0), extent)
    assert a == pytest.approx(b, rel=1e-12)


def test_lower_half_plane_grid():
    z = audit.lower_half_plane_grid(radii=(1.0, 2.0), angles=5)
    assert z.size == 10
    assert np.all(z.imag < 0)
    assert np.allclose(np.abs(z[:5]), 1.0)


def test_ray_points():
    assert audit.NEGATIVE_AXIS(3.0) == complex(-3.0, 0.0)
    assert audit.NEGATIVE_AXIS.is_negative_axis
    ray = audit.Ray(-math.pi / 2)
    assert ray(2.0) == pytest.approx(-2j)
    assert not ray.is_negative_axis


def test_kernel_values_against_transfer_oracle(shell, kernel_report):
    for row in kernel_report.rows[1::7]:
        k = momentum_from_energy(row.z)
        chi, _ = oracles.transfer_matrix_state(shell, k, row.x)
        ref = abs(2j / oracles.ode_jost(shell, -k) * chi)
        assert row.actual == pytest.approx(ref, rel=1e-8, abs=1e-300)


def test_kernel_report_shape(kernel_report):
    assert kernel_report.is_consistent()
    assert not kernel_report.skipped
    zeros = [row for row in kernel_report.rows if row.x == 0.0]
    assert zeros and all(row.note == "degenerate r=0" and row.actual == 0.0 for row in zeros)
    assert kernel_report.c_empirical == max(row.ratio for row in kernel_report.certified)
    assert math.isfinite(kernel_report.c_empirical)


def test_kernel_report_matches_golden(kernel_report):
    assert kernel_report.to_csv() == (GOLDEN / "bounds_kernel.csv").read_text()


def test_kernel_csv_and_json_agree(kernel_report):
    rows = _rows(kernel_report.to_csv(["tool=x"]))
    doc = json.loads(kernel_report.to_json())
    assert len(rows) == len(doc["rows"]) == len(kernel_report.rows)
    for a, b in zip(rows, doc["rows"]):
        assert float(a["ratio"]) == b["ratio"]
        assert float(a["r"]) == b["r"]


def test_pole_proximity_skipped(shell):
    p = poles.find_poles(shell, make_golden.POLE_REGION)[0]
    rep = audit.kernel_bound_audit(shell, [p.z_r, -1 - 1j], [1.0], sign="+")
    assert len(rep.skipped) == 1 and rep.skipped[0][0] == p.z_r
    assert len(rep.rows) == 1


def test_growth_profile_matches_golden(growth_report):
    ref = _rows((GOLDEN / "growth_negative_axis.csv").read_text())
    got = _rows(growth_report.to_csv())
    assert len(ref) == len(got)
    for a, b in zip(ref, got):
        assert a["note"] == b["note"]
        for key in ("re_z", "s", "bound"):
            assert a[key] == b[key]
        assert float(b["actual"]) == pytest.approx(float(a["actual"]), rel=1e-12)


def test_growth_profile_against_quad(shell, growth_report):
    for row in growth_report.rows[::11]:
        k = momentum_from_energy(row.z, SECOND_SHEET)
        pref = 2j / oracles.ode_jost(shell, -k)

        def integrand(r, k=k):
            return make_golden.growth_phi(np.array([r]))[0] * oracles.transfer_matrix_state(shell, k, r)[0]

        ref = abs(pref * oracles.quad_complex(integrand, 0.0, make_golden.GROWTH_EXTENT,
                                              points=[shell.a, shell.b], epsrel=1e-11))
        assert row.actual == pytest.approx(ref, rel=1e-6)


def test_growth_profile_flags_unconverged(shell):
    rep = audit.wavefunction_growth_profile(shell, make_golden.growth_phi, audit.NEGATIVE_AXIS,
                                            [50.0], 3.0, max_doublings=1)
    assert rep.rows[0].note == "unconverged"
    assert rep.certified == [] and rep.c_empirical == 0.0


def test_growth_profile_off_axis_uses_complex_bound(shell):
    ray = audit.Ray(-math.pi / 2)
    rep = audit.wavefunction_growth_profile(shell, make_golden.growth_phi, ray, [2.0], 3.0)
    row = rep.rows[0]
    assert row.bound == audit.compact_support_bound(row.z, 3.0)
