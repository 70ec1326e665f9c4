"""Command-line front end: ``mie-nd <command> [flags]``.

Exit codes: 0 success, 1 physics or verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import ladder as lad
from .errors import DomainError, MieError, UnphysicalChannel
from .model import Channel, KratzerForm, KratzerVariant, PotentialParams, derive, from_kratzer, make_params
from .observables import beta, expect_inv_r, expect_inv_r2
from .quadrature import expect_power, kinetic_expectation, norm, potential_expectation
from .report import DEFAULT_POTENTIALS, FLAGGED, TOLERANCES, SweepConfig, build_report
from .spectrum import degeneracy, energy
from .wavefunction import count_nodes, radial_state, reduced_u

COMMANDS = ("spectrum", "degeneracy", "expect", "wavefunction", "ladder", "verify")
PAPER_DIMS = tuple(range(3, 11))
PAPER_LEVELS = tuple(range(1, 6))
MAX_GRID = 1_000_000
CONFIG_SECTION = "run"


class UsageError(Exception):
    pass


class PhysicsFailure(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"0..2"`` (inclusive) or comma-separated mixtures of both."""
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..")
                lo_i, hi_i = int(lo), int(hi)
                if hi_i < lo_i:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo_i, hi_i + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"cannot parse integer range {part!r}") from None
    if not out:
        raise UsageError("range is empty")
    return out


def parse_ranges(tokens) -> list[int]:
    values: list[int] = []
    for tok in tokens:
        values.extend(parse_range(tok))
    return sorted(set(values))


def parse_grid(text: str) -> np.ndarray:
    """``lin:START:STOP:COUNT`` or ``log:START:STOP:COUNT``; START > 0."""
    try:
        kind, a, b, n = text.split(":")
        start, stop, count = float(a), float(b), int(n)
    except ValueError:
        raise UsageError(f"grid spec must be lin|log:START:STOP:COUNT, got {text!r}") from None
    if not (0 < start <= stop and math.isfinite(stop)) or (start == stop and count != 1):
        raise UsageError("grid needs 0 < START < STOP (or START == STOP with COUNT 1)")
    if not 1 <= count <= MAX_GRID:
        raise UsageError(f"grid COUNT must be in [1, {MAX_GRID}]")
    if kind == "lin":
        return np.linspace(start, stop, count)
    if kind == "log":
        return np.geomspace(start, stop, count)
    raise UsageError(f"unknown grid kind {kind!r}")


def parse_tolerances(pairs) -> dict:
    out = {}
    for pair in pairs or ():
        key, sep, val = pair.partition("=")
        if not sep or key not in TOLERANCES:
            raise UsageError(f"--tolerance wants KEY=VAL with KEY in {sorted(TOLERANCES)}, got {pair!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise UsageError(f"tolerance value {val!r} is not a number") from None
        if not out[key] > 0:
            raise UsageError("tolerances must be > 0")
    return out


@dataclass
class RunConfig:
    command: str
    params: PotentialParams
    dims: list
    ells: list
    levels: list
    fmt: str = "table"
    potential_given: bool = False
    skip_unphysical: bool = False
    tolerances: dict = field(default_factory=dict)
    grid: Optional[np.ndarray] = None
    check_norm: bool = False
    paper_table: bool = False
    principal: list = field(default_factory=lambda: list(PAPER_LEVELS))
    strict_literal: bool = False
    explicit: set = field(default_factory=set)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mie-nd", description="Mie-type potentials in N dimensions.")
    parser.add_argument("command", choices=COMMANDS)
    pot = parser.add_argument_group("potential")
    pot.add_argument("--A", type=float)
    pot.add_argument("--B", type=float)
    pot.add_argument("--C", type=float)
    pot.add_argument("--mu", type=float)
    pot.add_argument("--hbar", type=float)
    kind = pot.add_mutually_exclusive_group()
    kind.add_argument("--kratzer-fues", action="store_true", default=None)
    kind.add_argument("--modified-kratzer", action="store_true", default=None)
    pot.add_argument("--kappa", type=float)
    pot.add_argument("--re", type=float)
    ch = parser.add_argument_group("channels")
    ch.add_argument("--N", nargs="+", help="dimensions, e.g. 3 4 or 3..5")
    ch.add_argument("--l", help="angular momentum range, e.g. 0..2")
    ch.add_argument("--nr", help="radial quantum number range, e.g. 0..2")
    ch.add_argument("--n", help="principal numbers for degeneracy, e.g. 7 or 1..5")
    out = parser.add_argument_group("output")
    out.add_argument("--format", choices=("json", "csv", "table"))
    out.add_argument("--grid", help="lin|log:START:STOP:COUNT")
    out.add_argument("--paper-table", action="store_true", default=None)
    out.add_argument("--check-norm", action="store_true", default=None)
    out.add_argument("--strict-literal", action="store_true", default=None)
    out.add_argument("--skip-unphysical", action="store_true", default=None)
    out.add_argument("--tolerance", action="append", metavar="KEY=VAL")
    out.add_argument("--config", help="key = value file mirroring the flags")
    return parser


_BOOL_KEYS = ("kratzer_fues", "modified_kratzer", "paper_table", "check_norm", "strict_literal", "skip_unphysical")
_FLOAT_KEYS = ("A", "B", "C", "mu", "hbar", "kappa", "re")
_TEXT_KEYS = ("l", "nr", "n", "format", "grid")


def _merge_config(args) -> None:
    """Fill flags left unset on the command line from the config file."""
    if not args.config:
        return
    cp = configparser.ConfigParser()
    cp.optionxform = str
    try:
        with open(args.config) as fh:
            cp.read_string(f"[{CONFIG_SECTION}]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {args.config!r}: {exc}") from None
    known = set(_BOOL_KEYS + _FLOAT_KEYS + _TEXT_KEYS + ("N", "tolerance"))
    for raw_key, value in cp[CONFIG_SECTION].items():
        key = raw_key.replace("-", "_")
        if key not in known:
            raise UsageError(f"unknown config key {raw_key!r}")
        if getattr(args, key) is not None:
            continue
        try:
            if key in _BOOL_KEYS:
                setattr(args, key, cp.getboolean(CONFIG_SECTION, raw_key))
            elif key in _FLOAT_KEYS:
                setattr(args, key, float(value))
            elif key in ("N", "tolerance"):
                setattr(args, key, value.split())
            else:
                setattr(args, key, value.strip())
        except ValueError:
            raise UsageError(f"bad value for config key {raw_key!r}: {value!r}") from None
    if args.format not in (None, "json", "csv", "table"):
        raise UsageError(f"unknown format {args.format!r}")
    if args.kratzer_fues and args.modified_kratzer:
        raise UsageError("choose one Kratzer variant")


def _potential(args) -> tuple[PotentialParams, bool]:
    mu = 1.0 if args.mu is None else args.mu
    hbar = 1.0 if args.hbar is None else args.hbar
    if args.kratzer_fues or args.modified_kratzer:
        if any(getattr(args, k) is not None for k in ("A", "B", "C")):
            raise UsageError("give either --A/--B/--C or a Kratzer form, not both")
        if args.kappa is None or args.re is None:
            raise UsageError("Kratzer forms need --kappa and --re")
        variant = KratzerVariant.KRATZER_FUES if args.kratzer_fues else KratzerVariant.MODIFIED_KRATZER
        return from_kratzer(KratzerForm(args.kappa, args.re, variant), mu, hbar), True
    if args.kappa is not None or args.re is not None:
        raise UsageError("--kappa/--re need --kratzer-fues or --modified-kratzer")
    given = any(getattr(args, k) is not None for k in ("A", "B", "C"))
    A = 1.0 if args.A is None else args.A
    B = 0.0 if args.B is None else args.B
    C = 0.0 if args.C is None else args.C
    return make_params(A, B, C, mu, hbar), given


def parse_config(argv) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    _merge_config(args)
    try:
        params, given = _potential(args)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    explicit = {k for k in ("N", "l", "nr") if getattr(args, k) is not None}
    cfg = RunConfig(
        command=args.command,
        params=params,
        dims=parse_ranges(args.N) if args.N else [3],
        ells=parse_ranges([args.l]) if args.l is not None else [0],
        levels=parse_ranges([args.nr]) if args.nr is not None else [0],
        fmt=args.format or "table",
        potential_given=given,
        skip_unphysical=bool(args.skip_unphysical),
        tolerances=parse_tolerances(args.tolerance),
        grid=parse_grid(args.grid) if args.grid else None,
        check_norm=bool(args.check_norm),
        paper_table=bool(args.paper_table),
        principal=parse_ranges([args.n]) if args.n is not None else list(PAPER_LEVELS),
        strict_literal=bool(args.strict_literal),
        explicit=explicit,
    )
    if min(cfg.dims) < 2:
        if cfg.command == "degeneracy":
            raise UsageError("degeneracy counting needs N >= 3")
        raise UsageError("dimension N must be >= 2")
    if min(cfg.ells) < 0 or min(cfg.levels) < 0:
        raise UsageError("ell and n_r must be >= 0")
    if cfg.command == "degeneracy" and (min(cfg.dims) < 3 or min(cfg.principal) < 1):
        raise UsageError("degeneracy counting needs N >= 3 and n >= 1")
    return cfg


# output ---------------------------------------------------------------

def _csv_cell(x):
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _table_cell(x):
    if x is None:
        return "-"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def render_records(records: list[dict], fmt: str, columns=None) -> str:
    columns = list(columns or (records[0].keys() if records else []))
    if fmt == "json":
        return json.dumps(records, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for rec in records:
            w.writerow([_csv_cell(rec.get(c)) for c in columns])
        return buf.getvalue()
    cells = [[_table_cell(rec.get(c)) for c in columns] for rec in records]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


# commands -------------------------------------------------------------

def _channels(cfg: RunConfig):
    """Channels in (N, ell, n_r) order, skipping or failing on unphysical ones."""
    for N in cfg.dims:
        for ell in cfg.ells:
            for n in cfg.levels:
                ch = Channel(N, ell, n)
                try:
                    derive(cfg.params, ch)
                except UnphysicalChannel as exc:
                    if cfg.skip_unphysical:
                        continue
                    raise PhysicsFailure(str(exc)) from None
                yield ch


def cmd_spectrum(cfg: RunConfig) -> tuple[str, int]:
    rows = []
    for ch in _channels(cfg):
        d = derive(cfg.params, ch)
        lvl = energy(cfg.params, ch)
        rows.append({"N": ch.N, "ell": ch.ell, "n_r": ch.n_r, "v": d.v, "nu": d.nu,
                     "epsilon": d.epsilon, "energy": lvl.energy, "K": d.K})
    return render_records(rows, cfg.fmt, ["N", "ell", "n_r", "v", "nu", "epsilon", "energy", "K"]), 0


def cmd_degeneracy(cfg: RunConfig) -> tuple[str, int]:
    dims = PAPER_DIMS if cfg.paper_table else cfg.dims
    levels = PAPER_LEVELS if cfg.paper_table else cfg.principal
    if cfg.fmt == "table":
        header = ["N"] + [f"n={n}" for n in levels]
        grid = [dict(zip(header, [N] + [degeneracy(n, N) for n in levels])) for N in dims]
        return render_records(grid, "table", header), 0
    rows = [{"N": N, "n": n, "degeneracy": degeneracy(n, N)} for N in dims for n in levels]
    return render_records(rows, cfg.fmt, ["N", "n", "degeneracy"]), 0


def cmd_expect(cfg: RunConfig) -> tuple[str, int]:
    rows = []
    tol = cfg.tolerances.get("virial", TOLERANCES["virial"])
    failed = False
    for ch in _channels(cfg):
        state = radial_state(cfg.params, ch)
        t = kinetic_expectation(state)
        v = potential_expectation(state)
        b = beta(cfg.params, ch)
        resid = abs(-(2 - b) * t - (1 - b) * (v - cfg.params.C)) / abs(v)
        failed |= resid > tol
        rows.append({"N": ch.N, "ell": ch.ell, "n_r": ch.n_r,
                     "inv_r": expect_inv_r(cfg.params, ch), "inv_r_quad": expect_power(state, -1),
                     "inv_r2": expect_inv_r2(cfg.params, ch), "inv_r2_quad": expect_power(state, -2),
                     "beta": b, "T": t, "V": v, "virial_residual": resid})
    return render_records(rows, cfg.fmt), int(failed)


def cmd_wavefunction(cfg: RunConfig) -> tuple[str, int]:
    rows, norms = [], []
    for ch in _channels(cfg):
        state = radial_state(cfg.params, ch)
        r = cfg.grid if cfg.grid is not None else np.linspace(0.05, 30.0, 600) / state.epsilon
        R = np.atleast_1d(state(r))
        U = np.atleast_1d(reduced_u(state, r))
        for ri, Ri, Ui in zip(r, R, U):
            rows.append({"N": ch.N, "ell": ch.ell, "n_r": ch.n_r, "r": float(ri), "R": float(Ri), "U": float(Ui)})
        if cfg.check_norm:
            norms.append({"N": ch.N, "ell": ch.ell, "n_r": ch.n_r, "norm": norm(state), "nodes": count_nodes(R)})
    if not cfg.check_norm:
        return render_records(rows, cfg.fmt, ["N", "ell", "n_r", "r", "R", "U"]), 0
    tol = cfg.tolerances.get("norm", TOLERANCES["norm"])
    status = int(any(abs(n["norm"] - 1) > tol for n in norms))
    if cfg.fmt == "json":
        return json.dumps({"rows": rows, "norms": norms}, indent=1) + "\n", status
    text = render_records(rows, cfg.fmt, ["N", "ell", "n_r", "r", "R", "U"]) + "\n"
    return text + render_records(norms, cfg.fmt, ["N", "ell", "n_r", "norm", "nodes"]), status


def cmd_ladder(cfg: RunConfig) -> tuple[str, int]:
    tol = cfg.tolerances.get("ladder", TOLERANCES["ladder"])
    rows, failed = [], False
    seen = set()
    for ch in _channels(cfg):
        if (ch.N, ch.ell) in seen:
            continue
        seen.add((ch.N, ch.ell))
        fam = lad.LadderFamily.physical(cfg.params, ch.N, ch.ell)
        v = fam.v
        for n in cfg.levels:
            s = fam.state(n)
            lo, up = lad.apply_lower(s), lad.apply_raise(s)
            lo_res = lo.residual if n == 0 else lo.relative_residual
            failed |= max(lo_res, up.relative_residual) > tol
            rows.append({"N": ch.N, "ell": ch.ell, "n_r": n, "v": v, "epsilon": fam.epsilon,
                         "lower_coeff": lo.coefficient, "lower_residual": lo_res,
                         "raise_coeff": up.coefficient, "raise_residual": up.relative_residual,
                         "commutator": lad.commutator_check(fam, n), "commutator_expected": 2 * (n + v + 1),
                         "casimir": lad.casimir_eigenvalue(fam, n), "casimir_expected": v * (v + 1)})
    return render_records(rows, cfg.fmt), int(failed)


def _sweep_config(cfg: RunConfig) -> SweepConfig:
    kwargs = {"strict_literal": cfg.strict_literal, "tolerances": dict(cfg.tolerances),
              "mu": cfg.params.mu, "hbar": cfg.params.hbar}
    if cfg.potential_given:
        kwargs["potentials"] = ((cfg.params.A, cfg.params.B, cfg.params.C),)
    else:
        kwargs["potentials"] = DEFAULT_POTENTIALS
    if "N" in cfg.explicit:
        kwargs["dims"] = tuple(cfg.dims)
    if "l" in cfg.explicit:
        kwargs["ells"] = tuple(cfg.ells)
    if "nr" in cfg.explicit:
        kwargs["n_r_max"] = max(cfg.levels)
    return SweepConfig(**kwargs)


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    report = build_report(_sweep_config(cfg))
    status = 0 if report.ok else 1
    if cfg.fmt == "json":
        return report.to_json() + "\n", status
    cols = ["name", "status", "computed", "oracle", "rel_error", "tolerance"]
    if cfg.fmt == "csv":
        cols += ["paper_value_or_form", "corrected_form", "literal", "literal_error", "note"]
        return render_records([vars(it) for it in report.items], "csv", cols), status
    counts = report.counts()
    out = [f"items: {len(report.items)}  " + "  ".join(f"{k}: {v}" for k, v in counts.items()), ""]
    shown = [it for it in report.items if it.status != "match"]
    if shown:
        out.append(render_records([vars(it) for it in shown], "table", cols))
    for it in report.items:
        if it.status == FLAGGED or (it.status != "match" and it.corrected_form):
            out.append(f"{it.name}\n  as printed : {it.paper_value_or_form}  (error {it.literal_error:.3g})"
                       f"\n  corrected  : {it.corrected_form}  (error {it.rel_error:.3g})")
            if it.note:
                out.append(f"  note       : {it.note}")
    return "\n".join(out) + "\n", status


HANDLERS = {
    "spectrum": cmd_spectrum,
    "degeneracy": cmd_degeneracy,
    "expect": cmd_expect,
    "wavefunction": cmd_wavefunction,
    "ladder": cmd_ladder,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"mie-nd: error: {exc}", file=sys.stderr)
        return 2
    try:
        text, status = HANDLERS[cfg.command](cfg)
    except PhysicsFailure as exc:
        print(f"mie-nd: unphysical channel: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"mie-nd: error: {exc}", file=sys.stderr)
        return 2
    except MieError as exc:
        print(f"mie-nd: failure: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
