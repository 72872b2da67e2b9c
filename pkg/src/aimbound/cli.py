"""Command-line front end: spectra, AIM comparisons, wavefunction samples, verification."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .aim import AimError, ExpansionPointError
from .potentials import (
    HarmonicOscillator,
    KratzerFues,
    Pseudoharmonic,
    aim_energies,
    closed_form_energy,
    potential_value,
)
from .wavefunctions import build_state

EXIT_OK, EXIT_CONFIG, EXIT_NONCONVERGED, EXIT_VERIFY = 0, 1, 2, 3

SPECTRUM_COLUMNS = ["n", "ell", "D", "E_closed", "E_aim", "abs_diff", "rel_diff", "iterations", "status"]
WAVE_COLUMNS = ["r", "R", "V"]
VERIFY_COLUMNS = ["suite", "invariant", "observed", "relation", "threshold", "passed"]


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    potential: str = "oscillator"
    mu: float = 1.0
    hbar: float = 1.0
    omega: float = 1.0
    kappa: float = 1.0
    re: float = 1.0
    A: float | None = None
    B: float | None = None
    De: float | None = None
    r0: float | None = None
    D: list[int] = field(default_factory=lambda: [3])
    ell_max: int = 0
    n_max: int = 3
    mode: str = "closed"
    x0: float | None = None
    format: str = "csv"
    out: str | None = None
    paper_compat: bool = False
    # wavefunction sampling
    n: int = 0
    ell: int = 0
    r_min: float = 0.0
    r_max: float | None = None
    points: int = 401

    def validate(self) -> None:
        if self.potential not in ("oscillator", "pseudoharmonic", "kratzer"):
            raise ConfigError(f"unknown potential {self.potential!r}")
        if self.mode not in ("closed", "aim", "both"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if isinstance(self.D, int):
            self.D = [self.D]
        if not self.D:
            raise ConfigError("at least one dimension is required")
        for name in ("n_max", "ell_max", "n", "ell"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.points < 2:
            raise ConfigError("points must be >= 2")
        if self.potential == "kratzer":
            has_ab = self.A is not None or self.B is not None
            has_d = self.De is not None or self.r0 is not None
            if has_ab and has_d:
                raise ConfigError("give either --A/--B or --De/--r0, not both")
            if has_d and (self.De is None or self.r0 is None):
                raise ConfigError("--De and --r0 go together")

    def spec(self, D: int, ell: int):
        common = dict(mu=self.mu, hbar=self.hbar, D=D, ell=ell)
        try:
            if self.potential == "oscillator":
                return HarmonicOscillator(omega=self.omega, **common)
            if self.potential == "pseudoharmonic":
                return Pseudoharmonic(kappa=self.kappa, r_e=self.re, **common)
            if self.De is not None:
                return KratzerFues.from_dissociation(self.De, self.r0, **common)
            A = 1.0 if self.A is None else self.A
            B = 0.0 if self.B is None else self.B
            return KratzerFues(A=A, B=B, **common)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    def parameters(self) -> dict:
        keys = {
            "oscillator": ("omega",),
            "pseudoharmonic": ("kappa", "re"),
            "kratzer": ("De", "r0") if self.De is not None else ("A", "B"),
        }[self.potential]
        out = {"potential": self.potential, "mu": self.mu, "hbar": self.hbar}
        for k in keys:
            out[k] = getattr(self, k)
        if self.potential == "kratzer" and self.De is None:
            out["A"] = 1.0 if self.A is None else self.A
            out["B"] = 0.0 if self.B is None else self.B
        return out


# output -----------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(columns, rows, meta: dict, fmt: str, notes=()) -> str:
    if fmt == "json":
        m = dict(meta)
        if notes:
            m["notes"] = list(notes)
        return json.dumps({"meta": m, "rows": rows}, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={_fmt(v) if not isinstance(v, list) else ' '.join(map(_fmt, v))}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in columns])
    for note in notes:
        buf.write(f"# note: {note}\n")
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands ---------------------------------------------------------------


def spectrum_rows(cfg: RunConfig) -> tuple[list[dict], bool]:
    """Rows in (n, l, D) order and whether every requested AIM solve converged."""
    rows = []
    ok = True
    ns = list(range(cfg.n_max + 1))
    for D in cfg.D:
        for ell in range(cfg.ell_max + 1):
            spec = cfg.spec(D, ell)
            closed = [closed_form_energy(spec, n, paper_compat=cfg.paper_compat) for n in ns]
            aim: dict[int, tuple[float, int] | None] = {}
            if cfg.mode != "closed":
                try:
                    for n, (E, res) in zip(ns, aim_energies(spec, ns, x0=cfg.x0)):
                        aim[n] = (E, res.iterations)
                except ExpansionPointError as exc:
                    raise ConfigError(f"--x0 rejected: {exc}") from exc
                except AimError:
                    # retry state by state so one failure does not hide the rest
                    for n in ns:
                        try:
                            E, res = aim_energies(spec, [n], x0=cfg.x0)[0]
                            aim[n] = (E, res.iterations)
                        except AimError as exc:
                            logging.getLogger(__name__).warning("n=%d l=%d D=%d: %s", n, ell, D, exc)
                            aim[n] = None
            for n in ns:
                row = dict.fromkeys(SPECTRUM_COLUMNS)
                row.update(n=n, ell=ell, D=D, status="ok")
                if cfg.mode != "aim":
                    row["E_closed"] = closed[n]
                if cfg.mode != "closed":
                    got = aim[n]
                    if got is None:
                        row["status"] = "no-convergence"
                        ok = False
                    else:
                        row["E_aim"], row["iterations"] = got
                        if cfg.mode == "both":
                            diff = abs(got[0] - closed[n])
                            row["abs_diff"] = diff
                            row["rel_diff"] = diff / abs(closed[n]) if closed[n] else diff
                rows.append(row)
    rows.sort(key=lambda r: (r["n"], r["ell"], r["D"]))
    return rows, ok


def _oscillator_note(cfg: RunConfig) -> list[str]:
    if cfg.potential != "oscillator" or cfg.paper_compat or cfg.mode == "aim":
        return []
    diffs = []
    for D in cfg.D:
        for ell in range(cfg.ell_max + 1):
            spec = cfg.spec(D, ell)
            for n in range(1, cfg.n_max + 1):
                lit = closed_form_energy(spec, n, paper_compat=True)
                diffs.append(f"(n={n} l={ell} D={D}) {_fmt(lit)}")
    if not diffs:
        return []
    return [
        "E_closed uses hbar*omega*(2n + l + D/2); the uncorrected ladder "
        "hbar*omega*(n + l + D/2) (--paper-compat) would give " + "; ".join(diffs)
    ]


def _meta(cfg: RunConfig, command: str) -> dict:
    meta = {"command": command, **cfg.parameters(), "D": list(cfg.D)}
    if command == "spectrum":
        meta.update(n_max=cfg.n_max, ell_max=cfg.ell_max, mode=cfg.mode)
    meta["x0"] = cfg.x0
    meta["paper_compat"] = cfg.paper_compat
    return meta


def cmd_spectrum(cfg: RunConfig) -> int:
    rows, ok = spectrum_rows(cfg)
    _emit(render(SPECTRUM_COLUMNS, rows, _meta(cfg, "spectrum"), cfg.format, _oscillator_note(cfg)), cfg.out)
    return EXIT_OK if ok else EXIT_NONCONVERGED


def wavefunction_rows(cfg: RunConfig):
    if len(cfg.D) != 1:
        raise ConfigError("wavefunction takes a single --D")
    spec = cfg.spec(cfg.D[0], cfg.ell)
    energy = None
    if cfg.mode == "aim":
        try:
            energy = aim_energies(spec, [cfg.n], x0=cfg.x0)[0][0]
        except ExpansionPointError as exc:
            raise ConfigError(f"--x0 rejected: {exc}") from exc
    state = build_state(spec, cfg.n, energy=energy)
    r_max = state.r_max if cfg.r_max is None else cfg.r_max
    if not (0 <= cfg.r_min < r_max):
        raise ConfigError("need 0 <= r_min < r_max")
    grid = np.linspace(cfg.r_min, r_max, cfg.points)
    R = np.asarray(state(grid))
    rows = []
    for r, val in zip(grid, R):
        if r > 0 or isinstance(spec, HarmonicOscillator):
            V = float(potential_value(spec, float(r)))
        else:
            V = None  # singular at the origin
        rows.append({"r": float(r), "R": float(val), "V": V})
    meta = _meta(cfg, "wavefunction")
    meta.update(
        n=cfg.n,
        ell=cfg.ell,
        energy=state.energy,
        normalization=state.norm,
        exponent=state.exponent,
        polynomial_prefactor=state.prefactor,
    )
    return rows, meta


def cmd_wavefunction(cfg: RunConfig) -> int:
    rows, meta = wavefunction_rows(cfg)
    _emit(render(WAVE_COLUMNS, rows, meta, cfg.format), cfg.out)
    return EXIT_OK


def cmd_verify(suites, tolerance, fmt, out) -> int:
    from .verify import run_suites

    try:
        checks = run_suites(suites, tolerance)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from exc
    rows = [c.as_dict() for c in checks]
    failed = sum(not c.passed for c in checks)
    meta = {"command": "verify", "tolerance": tolerance, "checks": len(checks), "failed": failed}
    _emit(render(VERIFY_COLUMNS, rows, meta, fmt), out)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# argument parsing -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with defaults; flags override it")
    p.add_argument("--potential", choices=["oscillator", "pseudoharmonic", "kratzer"])
    for name in ("mu", "hbar", "omega", "kappa", "re", "A", "B", "De", "r0"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--D", type=int, action="append", help="dimension; repeat for several")
    p.add_argument("--mode", choices=["closed", "aim", "both"])
    p.add_argument("--x0", type=float, help="expansion point in the reduced variable (s, z or r)")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out")
    p.add_argument("--paper-compat", action="store_true", default=None,
                   help="use the uncorrected oscillator ladder hbar*omega*(n + l + D/2)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aimbound", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("spectrum", "compare"):
        p = sub.add_parser(name, help="energy table" if name == "spectrum" else "spectrum --mode both")
        _common(p)
        p.add_argument("--n-max", type=int)
        p.add_argument("--ell-max", type=int)
    p = sub.add_parser("wavefunction", help="sample a normalized radial state")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--points", type=int)
    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", action="append", help="suite name; repeat for several")
    p.add_argument("--tolerance", type=float, help="override every upper bound")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    return parser


_CONFIG_FIELDS = {f.name for f in fields(RunConfig)}


def load_config(args: argparse.Namespace) -> RunConfig:
    values = asdict(RunConfig())
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - _CONFIG_FIELDS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    for name in _CONFIG_FIELDS:
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    if args.command == "compare":
        values["mode"] = "both"
    cfg = RunConfig(**values)
    cfg.validate()
    for name in ("mu", "hbar", "omega", "kappa", "re", "x0", "r_min", "r_max"):
        v = getattr(cfg, name)
        if v is not None and not math.isfinite(v):
            raise ConfigError(f"{name} must be finite")
    return cfg


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        if args.command == "verify":
            return cmd_verify(args.suite, args.tolerance, args.format, args.out)
        cfg = load_config(args)
        # touch every spec once so parameter errors surface before any output
        for D in cfg.D:
            cfg.spec(D, cfg.ell if args.command == "wavefunction" else 0)
        if args.command == "wavefunction":
            return cmd_wavefunction(cfg)
        return cmd_spectrum(cfg)
    except ConfigError as exc:
        print(f"aimbound: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
