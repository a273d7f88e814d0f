"""Command-line front end.

Exit codes: 0 success, 1 usage or configuration error, 2 computation error.
Every CSV file starts with ``#`` header lines carrying the tool version and
the configuration digest; JSON files carry the same data under "header".
"""

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from . import audit, evolution, hardy, poles, scatter, transform
from .config import RunConfig, load_config
from .errors import ConfigError, HardyShellError
from .sampled import to_csv

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _f(x):
    return repr(float(x))


class Emitter:
    """Writes deterministic output files into one directory."""

    def __init__(self, out_dir, cfg):
        self.out = Path(out_dir)
        self.cfg = cfg
        self.written = []

    @property
    def header(self):
        return {"tool": "hardyshell", "version": __version__, "configSha256": self.cfg.digest()}

    def header_lines(self):
        h = self.header
        return [f"tool={h['tool']} version={h['version']}", f"configSha256={h['configSha256']}"]

    def _path(self, name):
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / name
        self.written.append(path)
        return path

    def csv(self, name, columns, rows):
        lines = [f"# {line}" for line in self.header_lines()]
        lines.append(",".join(columns))
        lines.extend(",".join(_f(v) if not isinstance(v, str) else v for v in row) for row in rows)
        self._path(name).write_text("\n".join(lines) + "\n", encoding="utf-8")

    def text(self, name, body):
        self._path(name).write_text(body, encoding="utf-8")

    def json(self, name, doc):
        full = {"schemaVersion": 1, "header": self.header}
        full.update(doc)
        self._path(name).write_text(json.dumps(full, indent=1, sort_keys=False) + "\n", encoding="utf-8")


def _potential(cfg):
    p = cfg.potential
    return scatter.PotentialSpec(p.a, p.b, p.v0)


def _map(threads, fn, items):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommands


def _pole_doc(pot, region, cfg):
    opts = poles.PoleSearchOptions(tol=cfg.tolerances.newton)
    rep = poles.search_poles(pot, poles.Rectangle(*region), opts)
    return {"region": list(region), "winding": rep.winding, "poles": [p.to_dict() for p in rep.poles]}


def cmd_smatrix(args, cfg, em):
    pot = _potential(cfg)
    e_max = args.e_max if args.e_max is not None else cfg.grids.e_max
    energies = np.linspace(args.e_min, e_max, args.points or cfg.grids.e_points)
    s = scatter.s_matrix_array(pot, energies)
    phase = np.unwrap(np.angle(s))
    em.csv("smatrix.csv", ["E", "re_S", "im_S", "abs_S", "phase"],
           [(e, v.real, v.imag, abs(v), ph) for e, v, ph in zip(energies, s, phase)])
    if args.poles:
        em.json("poles.json", _pole_doc(pot, args.region, cfg))


def cmd_poles(args, cfg, em):
    em.json("poles.json", _pole_doc(_potential(cfg), args.region, cfg))


def cmd_wavefunction(args, cfg, em):
    pot = _potential(cfg)
    z = complex(args.energy, args.imag)
    r = np.linspace(0.0, cfg.grids.r_max, cfg.grids.r_points)
    vals = [scatter.continued_ket(pot, z, x, args.sign) for x in r]
    em.csv("wavefunction.csv", ["r", "re", "im"], [(x, v.real, v.imag) for x, v in zip(r, vals)])


def cmd_transform(args, cfg, em):
    pot = _potential(cfg)
    plan = transform.make_plan(pot, args.sign, cfg.grids.r_max, cfg.grids.e_max)
    suite = transform.standard_suite(pot)
    names = list(suite) if args.function == "all" else [args.function]
    summary = {}
    for name in names:
        f = suite[name]
        g = transform.to_energy(plan, f)
        back = transform.to_position(plan, g)
        summary[name] = {
            "parsevalDefect": g.tail["parseval_defect"],
            "inverseParsevalDefect": back.tail["parseval_defect"],
            "roundTripError": transform.relative_error(back.values, f(plan.r_nodes), plan.r_weights),
        }
        em.text(f"transform_{name}.csv", to_csv(g, em.header_lines()))
    em.json("transform.json", {"sign": args.sign, "eCutoff": plan.e_cutoff, "rCutoff": plan.r_cutoff,
                               "normConstant": plan.norm_constant, "functions": summary})


def _bump_from_args(args):
    return hardy.BumpSpec(args.t0, args.t1, args.side, args.degree, args.shift)


def _random_bumps(rng, count):
    specs = []
    for _ in range(count):
        side = hardy.NEGATIVE if rng.random() < 0.5 else hardy.POSITIVE
        near = rng.uniform(1.75, 3.0)
        width = rng.uniform(0.5, 2.0)
        deg = int(rng.integers(0, 3))
        shift = rng.uniform(-3.0, 3.0)
        if side == hardy.NEGATIVE:
            specs.append(hardy.BumpSpec(-near - width, -near, side, deg, shift))
        else:
            specs.append(hardy.BumpSpec(near, near + width, side, deg, shift))
    return specs


def _hardy_entry(spec, tol):
    fhat = hardy.fourier_transform(hardy.make_bump(spec, hardy.default_time_grid(spec)))
    reports = {hp: hardy.is_hardy(fhat, hp, tol=tol) for hp in (hardy.UPPER, hardy.LOWER)}
    return fhat, {
        "spec": {"t0": spec.t0, "t1": spec.t1, "side": spec.side, "degree": spec.degree, "shift": spec.shift},
        "parsevalDefect": fhat.tail["parseval_defect"],
        "verdicts": {hp: r.verdict for hp, r in reports.items()},
        "reports": {hp: r.to_dict() for hp, r in reports.items()},
    }


def cmd_hardy(args, cfg, em):
    tol = cfg.tolerances.hardy
    if args.random:
        specs = _random_bumps(np.random.default_rng(args.seed), args.random)
        entries = _map(args.threads, lambda s: _hardy_entry(s, tol)[1], specs)
        em.json("hardy.json", {"seed": args.seed, "cases": entries})
        return
    fhat, entry = _hardy_entry(_bump_from_args(args), tol)
    em.text("hardy_transform.csv", to_csv(fhat, em.header_lines()))
    em.json("hardy.json", entry)


def cmd_semigroup(args, cfg, em):
    spec = _bump_from_args(args)
    fhat = hardy.fourier_transform(hardy.make_bump(spec, hardy.default_time_grid(spec)))
    sign = "-" if spec.side == hardy.POSITIVE else "+"
    rep = evolution.semigroup_asymmetry(fhat, sign, args.times, tol=cfg.tolerances.hardy)
    doc = rep.to_dict()
    doc.pop("schemaVersion")
    em.json("semigroup.json", doc)


def cmd_bounds(args, cfg, em):
    pot = _potential(cfg)
    if args.kernel:
        rep = audit.kernel_bound_audit(pot, audit.lower_half_plane_grid(), args.r_list)
        em.text("bounds_kernel.csv", rep.to_csv(em.header_lines()))
        em.json("bounds_kernel.json", {k: v for k, v in rep.to_dict().items() if k != "schemaVersion"})
    ray = audit.NEGATIVE_AXIS if args.ray == "negative" else audit.Ray(math.radians(args.angle))
    lo, hi = 0.0, args.extent
    phi = lambda r: _bump_profile(r, lo, hi)  # noqa: E731
    s_values = np.linspace(args.s_min, args.s_max, args.s_points)
    rep = audit.wavefunction_growth_profile(pot, phi, ray, s_values, args.extent)
    em.text("bounds.csv", rep.to_csv(em.header_lines()))
    em.json("bounds.json", {k: v for k, v in rep.to_dict().items() if k != "schemaVersion"})


def _bump_profile(r, lo, hi):
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    m = (r > lo) & (r < hi)
    out[m] = np.exp(-1.0 / ((r[m] - lo) * (hi - r[m])))
    return out


# ---------------------------------------------------------------------------
# argument parsing


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from err


def _add_bump_args(p, side="negative", t0=-2.0, t1=-1.0):
    p.add_argument("--side", choices=[hardy.NEGATIVE, hardy.POSITIVE], default=side)
    p.add_argument("--t0", type=float, default=t0)
    p.add_argument("--t1", type=float, default=t1)
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--shift", type=float, default=0.0)


def build_parser():
    parser = _Parser(prog="hardyshell", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hardyshell {__version__}")
    parser.add_argument("--config", help="config file (sections potential, grids, tolerances, run)")
    parser.add_argument("--out", help="output directory (overrides the config)")
    parser.add_argument("--seed", type=int, help="seed for randomised suites (overrides the config)")
    parser.add_argument("--threads", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("smatrix", help="S-matrix on a real energy grid")
    p.add_argument("--e-min", type=float, default=1e-2)
    p.add_argument("--e-max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--poles", action="store_true", help="also write poles.json")
    p.add_argument("--region", type=float, nargs=4, default=[0.0, 4.0, -1.0, 0.0],
                   metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    p.set_defaults(func=cmd_smatrix)

    p = sub.add_parser("poles", help="Jost zeros in a k-plane rectangle")
    p.add_argument("--region", type=float, nargs=4, default=[0.0, 4.0, -1.0, 0.0],
                   metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("wavefunction", help="scattering ket on the r grid")
    p.add_argument("--energy", type=float, default=2.0)
    p.add_argument("--imag", type=float, default=0.0, help="imaginary part of the energy")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("transform", help="spectral transform of the standard radial suite")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("--function", default="all")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("hardy", help="Hardy membership of a bump transform")
    _add_bump_args(p)
    p.add_argument("--random", type=int, default=0, help="run N randomised bumps instead")
    p.set_defaults(func=cmd_hardy)

    p = sub.add_parser("semigroup", help="Hardy verdicts under time evolution")
    _add_bump_args(p, hardy.POSITIVE, 0.05, 1.5)
    p.add_argument("--times", type=_float_list, default=[-1.0, 0.0, 1.0])
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("bounds", help="growth profile of a continued wavefunction")
    p.add_argument("--ray", choices=["negative", "angle"], default="negative")
    p.add_argument("--angle", type=float, default=-45.0, help="ray angle in degrees (with --ray angle)")
    p.add_argument("--extent", type=float, default=3.0, help="support radius of the test function")
    p.add_argument("--s-min", type=float, default=1.0)
    p.add_argument("--s-max", type=float, default=100.0)
    p.add_argument("--s-points", type=int, default=34)
    p.add_argument("--kernel", action="store_true", help="also audit the kernel bound")
    p.add_argument("--r-list", type=_float_list, default=[0.0, 0.5, 1.5, 3.0, 10.0])
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config) if args.config else RunConfig()
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        args.seed = cfg.seed
        em = Emitter(args.out or cfg.output, cfg)
    except (UsageError, ConfigError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args, cfg, em)
    except HardyShellError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_COMPUTE
    for path in em.written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
