"""Command line interface: sweeps, vector fields and validation.

Subcommands
-----------
normal-sweep    normal pressure and its (0,0)-mode normalization vs a
lateral-sweep   lateral pressure x-component vs a
vector-field    (Fx, Fy) on an (a, b) grid, quiver-ready
homogeneous     closed form vs quadrature comparison table
validate        run the oracle suite, emit a JSON report

Configuration comes from an optional TOML file (``--config``) overridden
by flags; every output file embeds the fully resolved configuration in
its comment header.  Data values are written with 12 significant digits,
'.' decimal, no locale.  Sweep points are assembled from mode tables that
are built once per separation; worker processes only parallelize the
per-mode quadratures, so the emitted bytes do not depend on the worker
count.

Exit codes: 0 success, 2 configuration error, 3 numerical
non-convergence (no partial output is left behind), 4 validation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, fields, replace

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .assembly import (
    NonConvergenceError,
    SumConvention,
    build_mode_table,
    homogeneous_closed_form,
    homogeneous_pressure_quadrature,
    lateral_force,
    normal_force,
)
from .lattice import ChessboardSpec, Displacement
from .materials import CaseAssignment, CaseVariant, DispersionParams
from .oracle import run_validation_suite, suite_passed
from .spectral_kernel import QuadratureSpec

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_VALIDATION = 4

_CASES = ("ehmh-elml", "elmh-ehml", "custom-constant")
_CONVENTIONS = ("full", "paper-epp")
_FORMATS = ("csv", "json")

# vector-field parameter presets (fill fractions, wavelengths in nm)
PRESETS = {
    "square": dict(f_x=0.5, f_y=0.5, lambda_x_nm=500.0, lambda_y_nm=500.0, H_nm=(100.0,)),
    "asymmetric": dict(f_x=0.75, f_y=0.25, lambda_x_nm=500.0, lambda_y_nm=500.0, H_nm=(100.0,)),
    "rectangular": dict(f_x=0.75, f_y=0.25, lambda_x_nm=500.0, lambda_y_nm=200.0, H_nm=(100.0,)),
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    """Fully resolved run parameters; defaults mirror the reference figures."""

    case: str = "ehmh-elml"
    lambda_x_nm: float = 500.0
    lambda_y_nm: float = 500.0
    f_x: float = 0.5
    f_y: float = 0.5
    H_nm: tuple = (100.0, 200.0, 300.0, 500.0)
    a: float = 0.0
    b: float = 0.0
    a_sweep: tuple = (0.0, 1.0, 101)
    b_sweep: tuple = (0.0, 1.0, 21)
    tol: float = 1e-8
    n_max: int = 64
    convention: str = "full"
    workers: int = 0  # 0 means all available cores
    out: str | None = None
    format: str = "csv"
    omega_p: float = 1.37e16
    material_ratios: dict = field(default_factory=dict)
    eps1: float = 1.0
    mu1: float = 1.0
    eps2: float = 1.1
    mu2: float = 1.0

    def validate(self) -> None:
        if self.case not in _CASES:
            raise ConfigError(f"case must be one of {_CASES}, got {self.case!r}")
        if self.convention not in _CONVENTIONS:
            raise ConfigError(f"convention must be one of {_CONVENTIONS}")
        if self.format not in _FORMATS:
            raise ConfigError(f"format must be one of {_FORMATS}")
        if self.lambda_x_nm <= 0 or self.lambda_y_nm <= 0:
            raise ConfigError("lattice wavelengths must be positive")
        if not (0.0 < self.f_x < 1.0 and 0.0 < self.f_y < 1.0):
            raise ConfigError("fill fractions must lie strictly inside (0, 1)")
        if not self.H_nm or any(h <= 0 for h in self.H_nm):
            raise ConfigError("H-nm values must be positive")
        if self.tol <= 0:
            raise ConfigError("tol must be positive")
        if self.n_max < 1:
            raise ConfigError("nmax must be at least 1")
        if self.workers < 0:
            raise ConfigError("workers must be non-negative")
        for name in ("a_sweep", "b_sweep"):
            sw = getattr(self, name)
            if len(sw) != 3 or int(sw[2]) < 2:
                raise ConfigError(f"{name} must be (start, stop, points>=2)")
        if self.case == "custom-constant" and (self.eps1 < 1 or self.eps2 < 1 or self.mu1 < 1 or self.mu2 < 1):
            raise ConfigError("constant materials require eps >= 1 and mu >= 1")

    def effective_workers(self) -> int:
        return self.workers if self.workers > 0 else (os.cpu_count() or 1)

    def params(self) -> DispersionParams:
        try:
            return DispersionParams.from_ratios(self.omega_p, **self.material_ratios)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad material parameters: {exc}") from exc

    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(rel_tol=self.tol, n_max=self.n_max)

    def chessboard(self) -> ChessboardSpec:
        if self.case == "custom-constant":
            assign = CaseAssignment.constant(self.eps1, self.mu1, self.eps2, self.mu2)
        else:
            assign = CaseAssignment.from_variant(CaseVariant(self.case))
        return ChessboardSpec(
            lambda_x=self.lambda_x_nm * 1e-9,
            lambda_y=self.lambda_y_nm * 1e-9,
            f_x=self.f_x,
            f_y=self.f_y,
            assign=assign,
        )

    def sum_convention(self) -> SumConvention:
        return SumConvention(self.convention)

    def header_items(self) -> list:
        items = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = list(v)
            items.append((f.name, v))
        return items


def _grid(sweep) -> list:
    start, stop, n = float(sweep[0]), float(sweep[1]), int(sweep[2])
    step = (stop - start) / (n - 1)
    return [start + i * step for i in range(n)]


def load_config_file(path: str) -> dict:
    """Flatten a TOML config file into RunConfig field values."""
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config file: {exc}") from exc
    out = {}
    known = {f.name for f in fields(RunConfig)}
    sweeps = raw.pop("sweep", {})
    if "a" in sweeps:
        out["a_sweep"] = tuple(sweeps["a"])
    if "b" in sweeps:
        out["b_sweep"] = tuple(sweeps["b"])
    mats = raw.pop("materials", {})
    if "omega_p" in mats:
        out["omega_p"] = float(mats.pop("omega_p"))
    if mats:
        out["material_ratios"] = {k: float(v) for k, v in mats.items()}
    consts = raw.pop("constant", {})
    for key in ("eps1", "mu1", "eps2", "mu2"):
        if key in consts:
            out[key] = float(consts[key])
    for key, val in raw.items():
        name = key.replace("-", "_")
        if name == "fx":
            name = "f_x"
        if name == "fy":
            name = "f_y"
        if name not in known:
            raise ConfigError(f"unknown config key: {key}")
        if name == "H_nm":
            out[name] = tuple(float(h) for h in (val if isinstance(val, list) else [val]))
        else:
            out[name] = val
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """File values first, then flags; flags win."""
    cfg = RunConfig()
    if args.config:
        cfg = replace(cfg, **load_config_file(args.config))
    overrides = {}
    mapping = {
        "case": "case",
        "lambda_x_nm": "lambda_x_nm",
        "lambda_y_nm": "lambda_y_nm",
        "fx": "f_x",
        "fy": "f_y",
        "a": "a",
        "b": "b",
        "tol": "tol",
        "nmax": "n_max",
        "convention": "convention",
        "workers": "workers",
        "out": "out",
        "format": "format",
    }
    for arg_name, field_name in mapping.items():
        val = getattr(args, arg_name, None)
        if val is not None:
            overrides[field_name] = val
    if getattr(args, "H_nm", None):
        overrides["H_nm"] = tuple(args.H_nm)
    preset = getattr(args, "preset", None)
    if preset:
        overrides.update(PRESETS[preset])
    cfg = replace(cfg, **overrides)
    cfg.validate()
    return cfg


def _fmt(x: float) -> str:
    return f"{x:.11e}"


def _write_table(cfg: RunConfig, command: str, columns: list, rows: list) -> None:
    """Emit the data either as commented CSV or as a JSON document."""
    header = [("program", "chessboard-casimir"), ("version", __version__), ("command", command)]
    header += cfg.header_items()
    if cfg.format == "csv":
        lines = [f"# {k} = {v}" for k, v in header]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        doc = {
            "meta": {k: v for k, v in header},
            "columns": columns,
            "rows": [[float(_fmt(v)) for v in row] for row in rows],
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_normal_sweep(cfg: RunConfig) -> int:
    spec = cfg.chessboard()
    params = cfg.params()
    quad = cfg.quadrature()
    conv = cfg.sum_convention()
    a_grid = _grid(cfg.a_sweep)
    rows = []
    for h_nm in cfg.H_nm:
        table = build_mode_table(spec, h_nm * 1e-9, params, quad, kind="force",
                                 workers=cfg.effective_workers())
        for a in a_grid:
            f, f0 = normal_force(spec, h_nm * 1e-9, Displacement(a, cfg.b), params, quad,
                                 convention=conv, table=table)
            rows.append((a, h_nm, f, f0, f / f0))
    _write_table(cfg, "normal-sweep", ["a", "H_nm", "F_normal_Pa", "F0_Pa", "ratio"], rows)
    return EXIT_OK


def cmd_lateral_sweep(cfg: RunConfig) -> int:
    spec = cfg.chessboard()
    params = cfg.params()
    quad = cfg.quadrature()
    a_grid = _grid(cfg.a_sweep)
    rows = []
    for h_nm in cfg.H_nm:
        table = build_mode_table(spec, h_nm * 1e-9, params, quad, kind="energy",
                                 workers=cfg.effective_workers())
        for a in a_grid:
            fx, _ = lateral_force(spec, h_nm * 1e-9, Displacement(a, cfg.b), params, quad,
                                  table=table)
            rows.append((a, h_nm, fx))
    _write_table(cfg, "lateral-sweep", ["a", "H_nm", "F_lat_x_Pa"], rows)
    return EXIT_OK


def cmd_vector_field(cfg: RunConfig) -> int:
    spec = cfg.chessboard()
    params = cfg.params()
    quad = cfg.quadrature()
    h = cfg.H_nm[0] * 1e-9
    table = build_mode_table(spec, h, params, quad, kind="energy",
                             workers=cfg.effective_workers())
    rows = []
    for a in _grid(cfg.a_sweep):
        for b in _grid(cfg.b_sweep):
            fx, fy = lateral_force(spec, h, Displacement(a, b), params, quad, table=table)
            rows.append((a, b, fx, fy))
    _write_table(cfg, "vector-field", ["a", "b", "Fx_Pa", "Fy_Pa"], rows)
    return EXIT_OK


# contrast combinations (de_d, de_u, dm_d, dm_u) for the homogeneous table
_HOMOGENEOUS_CASES = (
    (0.1, 0.1, 0.0, 0.0),
    (0.0, 0.0, 0.1, 0.1),
    (0.0, 0.1, 0.1, 0.0),
    (0.2, 0.1, 0.05, 0.15),
)


def cmd_homogeneous(cfg: RunConfig) -> int:
    quad = cfg.quadrature()
    print(f"{'contrasts (de_d, de_u, dm_d, dm_u)':>38} {'H_nm':>8} "
          f"{'closed_form_Pa':>20} {'quadrature_Pa':>20} {'rel_dev':>12}")
    worst = 0.0
    for h_nm in cfg.H_nm:
        for combo in _HOMOGENEOUS_CASES:
            ref = homogeneous_closed_form(*combo, h_nm * 1e-9)
            val = homogeneous_pressure_quadrature(*combo, h_nm * 1e-9, quad)
            rel = abs(val - ref) / max(abs(ref), 1e-300) if ref != 0.0 else abs(val)
            worst = max(worst, rel)
            print(f"{str(combo):>38} {h_nm:>8.1f} {ref:>20.11e} {val:>20.11e} {rel:>12.3e}")
    print(f"worst relative deviation: {worst:.3e}")
    return EXIT_OK if worst <= 1e-6 else EXIT_VALIDATION


def cmd_validate(cfg: RunConfig, negative_control: bool) -> int:
    reports = run_validation_suite(
        params=cfg.params(),
        quad=cfg.quadrature(),
        convention=cfg.sum_convention(),
        negative_control=negative_control,
    )
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: computed={r.computed:.9e} reference={r.reference:.9e} "
              f"deviation={r.deviation:.3e} tolerance={r.tolerance:.3e}")
    payload = json.dumps([r.as_dict() for r in reports], indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(payload)
    ok = suite_passed(reports)
    print(f"validation {'passed' if ok else 'FAILED'} ({sum(r.passed for r in reports)}/{len(reports)} checks)")
    return EXIT_OK if ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chessboard-casimir",
        description="Casimir-Lifshitz forces between chessboard-patterned magneto-dielectric half-spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", metavar="PATH", help="TOML config file; flags override it")
        p.add_argument("--case", choices=_CASES)
        p.add_argument("--H-nm", dest="H_nm", type=float, action="append", metavar="NM",
                       help="separation in nm (repeatable)")
        p.add_argument("--lambda-x-nm", dest="lambda_x_nm", type=float)
        p.add_argument("--lambda-y-nm", dest="lambda_y_nm", type=float)
        p.add_argument("--fx", type=float)
        p.add_argument("--fy", type=float)
        p.add_argument("--a", type=float, help="fixed a for axes the command does not sweep")
        p.add_argument("--b", type=float, help="fixed b for axes the command does not sweep")
        p.add_argument("--tol", type=float, help="per-mode quadrature relative tolerance")
        p.add_argument("--nmax", type=int, help="shell cap of the mode sum")
        p.add_argument("--convention", choices=_CONVENTIONS)
        p.add_argument("--workers", type=int, help="process count (default: all cores)")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--format", choices=_FORMATS)

    add_common(sub.add_parser("normal-sweep", help="normal pressure and F/F0 over a"))
    add_common(sub.add_parser("lateral-sweep", help="lateral pressure x-component over a"))
    p_vec = sub.add_parser("vector-field", help="(Fx, Fy) on an (a, b) grid at the first --H-nm")
    add_common(p_vec)
    p_vec.add_argument("--preset", choices=sorted(PRESETS),
                       help="named parameter presets for the vector-field maps")
    add_common(sub.add_parser("homogeneous", help="closed form vs quadrature table"))
    p_val = sub.add_parser("validate", help="run the oracle validation suite")
    add_common(p_val)
    p_val.add_argument("--negative-control", action="store_true",
                       help="test hook: perturb closed-form references so the suite must fail")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "normal-sweep":
            return cmd_normal_sweep(cfg)
        if args.command == "lateral-sweep":
            return cmd_lateral_sweep(cfg)
        if args.command == "vector-field":
            return cmd_vector_field(cfg)
        if args.command == "homogeneous":
            return cmd_homogeneous(cfg)
        if args.command == "validate":
            return cmd_validate(cfg, args.negative_control)
    except NonConvergenceError as exc:
        # no partial output: files are written only after all points finish
        if cfg.out and os.path.exists(cfg.out):
            os.unlink(cfg.out)
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
