"""Command-line front end.

Commands: spectrum, potential, wavefn, figures, compare, verify. Every flag has
a key of the same name (dashes become underscores) in the optional JSON
``--config`` document; flags given on the command line override the file.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 domain error (poles, inadmissible levels and the like).
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, fields

import numpy as np

from . import figures, oracle, spectrum, verify, wavefn
from .errors import ConfigError, DomainError
from .ws_model import (
    ATOMIC_HBAR2_OVER_2M,
    HERMITIAN,
    NON_PT,
    PT_SYMMETRIC,
    PotentialParams,
    effective_params,
    potential,
)

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3
COMMANDS = ("spectrum", "potential", "wavefn", "figures", "compare", "verify")
VARIANT_FLAGS = {"hermitian": HERMITIAN, "pt": PT_SYMMETRIC, "nonpt": NON_PT}
SPECTRUM_HEADER = "n,l,E_re,E_im,bracket_re,bracket_im,admissible,reasons"


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs; validated before any computation."""

    command: str = "spectrum"
    variant: str = "hermitian"
    units: str = "atomic"
    hbar2_over_2m: float | None = None
    v1: float = 50.0
    v2: float = 0.0
    v1i: float = 0.0
    q: float = 1.0
    a: float = 1.0
    r0: float = 1.0
    mass_number: float = 1.0
    alpha_imag: float = 1.0
    l: int = 0
    nmax: int = 10
    n: int = 0
    mode: str = wavefn.RESIDUAL_CONSISTENT
    grid_rmax: float | None = None
    grid_h: float | None = None
    x_min: float | None = None
    x_max: float | None = None
    points: int = 201
    figure: int | None = None
    scope: str = "all"
    format: str = "csv"
    out: str | None = None

    def __post_init__(self):
        _check_choice("command", self.command, COMMANDS)
        _check_choice("variant", self.variant, tuple(VARIANT_FLAGS))
        _check_choice("units", self.units, ("atomic", "explicit"))
        _check_choice("mode", self.mode, wavefn.MODES)
        _check_choice("scope", self.scope, ("all",) + verify.SCOPES)
        _check_choice("format", self.format, ("csv", "json"))
        for name in ("v1", "v2", "v1i", "q", "a", "r0", "mass_number", "alpha_imag"):
            _check_real(name, getattr(self, name))
        for name in ("hbar2_over_2m", "grid_rmax", "grid_h", "x_min", "x_max"):
            if getattr(self, name) is not None:
                _check_real(name, getattr(self, name))
        for name in ("l", "nmax", "n", "points"):
            _check_int(name, getattr(self, name), minimum=0)
        if self.points < 2:
            raise ConfigError("points must be >= 2")
        if self.nmax > spectrum.MAX_LEVELS:
            raise ConfigError(f"nmax must be <= {spectrum.MAX_LEVELS}")
        if self.figure is not None:
            _check_int("figure", self.figure, minimum=0)
            if self.figure not in figures.FIGURE_IDS:
                raise ConfigError(f"figure must be one of {figures.FIGURE_IDS}")
        if self.out is not None and not isinstance(self.out, str):
            raise ConfigError("out must be a path string")
        if self.units == "explicit" and self.hbar2_over_2m is None:
            raise ConfigError("--units explicit needs --hbar2-over-2m")
        if self.units == "atomic" and self.hbar2_over_2m is not None:
            raise ConfigError("--hbar2-over-2m is only meaningful with --units explicit")
        if (self.grid_rmax is None) != (self.grid_h is None):
            raise ConfigError("--grid-rmax and --grid-h go together")
        if self.variant != "hermitian" and self.l != 0:
            raise ConfigError("non-Hermitian variants are solved for l = 0 only")
        if self.variant == "nonpt" and self.mode == wavefn.PAPER_FAITHFUL:
            raise ConfigError("paper_faithful mode has no closed form for the non-PT variant")

    @property
    def kinetic(self):
        return ATOMIC_HBAR2_OVER_2M if self.units == "atomic" else self.hbar2_over_2m

    def params(self):
        """PotentialParams for this configuration (raises ConfigError)."""
        variant = VARIANT_FLAGS[self.variant]
        extra = {}
        if variant != HERMITIAN:
            extra["alpha_I"] = self.alpha_imag
        if variant == NON_PT:
            extra["V1I"] = self.v1i
        return PotentialParams(
            V1=self.v1, V2=self.v2, q=self.q, a=self.a, r0=self.r0, A=self.mass_number,
            hbar2_over_2m=self.kinetic, variant=variant, **extra,
        )

    def to_dict(self):
        return dataclasses.asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)


def _check_choice(name, value, choices):
    if value not in choices:
        raise ConfigError(f"{name} must be one of {choices}, got {value!r}")


def _check_real(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{name} must be a finite number, got {value!r}")


def _check_int(name, value, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}")


# --- formatting ----------------------------------------------------------------


def _g(x):
    return format(float(x), ".10g")


def _cx(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _csv(header, rows):
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def _json(payload):
    # repr-based float output is the shortest string that round-trips (<= 17 digits)
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_output(text, path):
    """Write ``text`` to ``path`` atomically, or to stdout when ``path`` is None."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".wsnu-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- commands ------------------------------------------------------------------


def cmd_spectrum(cfg):
    levels = spectrum.enumerate_levels(cfg.params(), l=cfg.l, n_max=cfg.nmax)
    if cfg.format == "json":
        return _json({
            "command": "spectrum",
            "config": cfg.to_dict(),
            "levels": [
                {
                    "n": lv.n, "l": lv.l, "variant": lv.variant, "energy": _cx(lv.energy),
                    "eps": _cx(lv.eps), "bracket": _cx(lv.bracket), "nu": _cx(lv.nu),
                    "admissible": lv.admissible, "reasons": list(lv.admissibility_reasons),
                }
                for lv in levels
            ],
        })
    rows = [
        [str(lv.n), str(lv.l), _g(lv.energy.real), _g(lv.energy.imag), _g(lv.bracket.real),
         _g(lv.bracket.imag), "true" if lv.admissible else "false", ";".join(lv.admissibility_reasons)]
        for lv in levels
    ]
    return _csv(SPECTRUM_HEADER, rows)


def _sample_points(cfg, p):
    if p.variant == HERMITIAN:
        lo = 0.0 if cfg.x_min is None else cfg.x_min
        hi = p.R0 + 40.0 * p.a if cfg.x_max is None else cfg.x_max
    else:
        span = 2.0 * math.pi / p.alpha_I
        lo = -span if cfg.x_min is None else cfg.x_min
        hi = span if cfg.x_max is None else cfg.x_max
    if not hi > lo:
        raise ConfigError("x_max must exceed x_min")
    return np.linspace(lo, hi, cfg.points)


def cmd_potential(cfg):
    """V on a grid (r for the Hermitian case, x otherwise); pole points are skipped."""
    p = cfg.params()
    if p.variant == HERMITIAN and cfg.l > 0:
        p = effective_params(p, cfg.l)
    xs, vs, skipped = [], [], 0
    for x in _sample_points(cfg, p):
        try:
            v = complex(potential(float(x), p))
        except DomainError:
            skipped += 1
            continue
        xs.append(float(x))
        vs.append(v)
    coord = "r" if p.variant == HERMITIAN else "x"
    if cfg.format == "json":
        return _json({
            "command": "potential", "config": cfg.to_dict(), "coordinate": coord,
            "skipped_poles": skipped,
            "samples": [{coord: x, "V": _cx(v)} for x, v in zip(xs, vs)],
        })
    return _csv(f"{coord},V_re,V_im", [[_g(x), _g(v.real), _g(v.imag)] for x, v in zip(xs, vs)])


def cmd_wavefn(cfg):
    """Unnormalised eigenfunction against x (x = r - R0 for the Hermitian case)."""
    p = cfg.params()
    lv = spectrum.level(cfg.n, p, cfg.l)
    f = wavefn.assemble(lv, cfg.mode)
    if cfg.x_min is None and cfg.x_max is None:
        half = 5.0 * p.a if p.variant == HERMITIAN else math.pi / p.alpha_I
        x = np.linspace(-half, half, cfg.points)
    else:
        lo = -5.0 if cfg.x_min is None else cfg.x_min
        hi = 5.0 if cfg.x_max is None else cfg.x_max
        if not hi > lo:
            raise ConfigError("x_max must exceed x_min")
        x = np.linspace(lo, hi, cfg.points)
    with np.errstate(all="ignore"):
        vals = f.at_x(x)
    if cfg.format == "json":
        return _json({
            "command": "wavefn", "config": cfg.to_dict(), "mode": f.mode,
            "energy": _cx(lv.energy), "exponent": _cx(f.nu),
            "samples": [{"x": float(a), "R": _cx(b)} for a, b in zip(x, vals)],
        })
    return _csv("x,R_re,R_im", [[_g(a), _g(b.real), _g(b.imag)] for a, b in zip(x, vals)])


def _figure_overrides(cfg, explicit):
    mapping = {"v1": "V1", "r0": "r0", "mass_number": "A"}
    out = {mapping[k]: getattr(cfg, k) for k in mapping if k in explicit}
    if cfg.figure in (3, 4):
        if "nmax" in explicit:
            out["n_max"] = cfg.nmax
        if cfg.units == "explicit":
            out["hbar2_over_2m"] = cfg.hbar2_over_2m
    return out


def cmd_figures(cfg, explicit=frozenset()):
    if cfg.figure is None:
        raise ConfigError("figures needs --figure {1,2,3,4}")
    text = figures.figure_csv(cfg.figure, **_figure_overrides(cfg, explicit))
    if cfg.format == "json":
        lines = text.strip().splitlines()
        header = lines[0].split(",")
        rows = [dict(zip(header, map(float, ln.split(",")))) for ln in lines[1:]]
        return _json({"command": "figures", "figure": cfg.figure, "columns": header, "rows": rows})
    return text


def _grid(cfg, p):
    if cfg.grid_rmax is None:
        return oracle.default_grid(p)
    return oracle.RadialGrid.from_step(0.0, cfg.grid_rmax, cfg.grid_h)


def cmd_compare(cfg):
    p = cfg.params()
    if p.variant != HERMITIAN:
        raise ConfigError("compare is available for the Hermitian variant only")
    nu = spectrum.enumerate_levels(p, l=cfg.l, n_max=cfg.nmax)
    num = oracle.fd_spectrum(p, cfg.l, _grid(cfg, p), k_levels=cfg.nmax + 1)
    rows = oracle.compare_report(nu, num)
    if cfg.format == "json":
        return _json({
            "command": "compare", "config": cfg.to_dict(), "numeric_notes": list(num.notes),
            "rows": [dataclasses.asdict(r) | {"notes": list(r.notes)} for r in rows],
        })
    return oracle.report_csv(rows)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return _cx(obj)
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def cmd_verify(cfg, eps_perturbation=None):
    results = verify.run(cfg.scope, eps_perturbation=eps_perturbation)
    ok = verify.all_passed(results)
    if cfg.format == "json":
        text = _json({
            "command": "verify", "scope": cfg.scope, "passed": ok,
            "invariants": [_jsonable(r.as_dict()) for r in results],
        })
    else:
        text = _csv("name,scope,passed,asserted", [
            [r.name, r.scope, "true" if r.passed else "false", "true" if r.asserted else "false"]
            for r in results
        ])
    return text, ok


# --- argument parsing ------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file with default values for any flag")
    common.add_argument("--variant", choices=tuple(VARIANT_FLAGS))
    common.add_argument("--units", choices=("atomic", "explicit"))
    common.add_argument("--hbar2-over-2m", type=float, help="hbar^2/2m, e.g. in MeV fm^2")
    for flag in ("--v1", "--v2", "--v1i", "--q", "--a", "--r0", "--mass-number", "--alpha-imag"):
        common.add_argument(flag, type=float)
    common.add_argument("--l", type=int)
    common.add_argument("--nmax", type=int)
    common.add_argument("--grid-rmax", type=float)
    common.add_argument("--grid-h", type=float)
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out")

    parser = argparse.ArgumentParser(prog="wsnu", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], argument_default=argparse.SUPPRESS, help="closed-form energy levels")
    pot = sub.add_parser("potential", parents=[common], argument_default=argparse.SUPPRESS, help="sample the potential")
    wav = sub.add_parser("wavefn", parents=[common], argument_default=argparse.SUPPRESS, help="sample an eigenfunction")
    for p in (pot, wav):
        p.add_argument("--x-min", type=float)
        p.add_argument("--x-max", type=float)
        p.add_argument("--points", type=int)
    wav.add_argument("--n", type=int)
    wav.add_argument("--mode", choices=wavefn.MODES)
    fig = sub.add_parser("figures", parents=[common], argument_default=argparse.SUPPRESS, help="data for figures 1-4")
    fig.add_argument("--figure", type=int)
    sub.add_parser("compare", parents=[common], argument_default=argparse.SUPPRESS, help="closed form against the numerical solver")
    ver = sub.add_parser("verify", parents=[common], argument_default=argparse.SUPPRESS, help="run the invariant suite")
    ver.add_argument("--scope", choices=("all",) + verify.SCOPES)
    ver.add_argument("--inject-eps-perturbation", type=float, help=argparse.SUPPRESS)
    return parser


def config_from_args(ns):
    """Merge defaults, the optional config file and explicit flags."""
    values = dict(vars(ns))
    inject = values.pop("inject_eps_perturbation", None)
    path = values.pop("config", None)
    merged = {}
    if path is not None:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            merged = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(merged, dict):
            raise ConfigError("config must be a JSON object")
    explicit = set(values) | set(merged)
    merged.update(values)
    return RunConfig.from_dict(merged), inject, frozenset(explicit)


def run(argv=None):
    """Parse ``argv`` and execute; returns the exit code."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg, inject, explicit = config_from_args(ns)
        if cfg.command != "verify":
            cfg.params()
        if cfg.command == "verify":
            text, ok = cmd_verify(cfg, inject)
            write_output(text, cfg.out)
            return EXIT_OK if ok else EXIT_VERIFY
        handlers = {
            "spectrum": cmd_spectrum, "potential": cmd_potential, "wavefn": cmd_wavefn,
            "compare": cmd_compare, "figures": lambda c: cmd_figures(c, explicit),
        }
        write_output(handlers[cfg.command](cfg), cfg.out)
        return EXIT_OK
    except ConfigError as exc:
        print(f"wsnu: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"wsnu: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
