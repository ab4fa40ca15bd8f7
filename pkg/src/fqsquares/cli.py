"""``fqsquares`` command line.

Exit status: 0 when every comparison matched, 1 on any mismatch, 2 on usage
or configuration errors.  JSON reports keep a stable key order, write big
integers as decimal strings and put the wall-clock fields under ``timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from datetime import datetime, timezone

from . import __version__
from .charsum import (
    BadParameters as CensusParams, census_N, census_regime, census_scan,
    interval_square_sum_via_characters, pair_contribution,
)
from .field import FieldError, parse_field, field_spec
from .hankel import HankelMatrix, LengthMismatch, rank, reduce, strict_rho_pi
from .multiset import values_closed_hankel, values_quadform
from .variance import (
    BadParameters, GammaZero, build_s_table, square_sum_from_table, variance_case,
    variance_closed, variance_from_table,
)
from .verify import run_all


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seq(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise UsageError(f"bad sequence {text!r}; expected comma-separated integers") from None


def _elements(F, seq):
    if any(not 0 <= s < F.q for s in seq):
        raise UsageError(f"sequence entries must lie in 0..{F.q - 1}")
    return seq


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


def _gamma(F, g):
    if g is None:
        return 1
    if not 0 <= g < F.q:
        raise UsageError(f"--gamma must be an element index in 0..{F.q - 1}")
    if g == 0:
        raise GammaZero("gamma must be non-zero")
    return g


# --- subcommands ------------------------------------------------------------
# each returns (payload, ok, table) where table is (header, rows) for csv output

def cmd_variance(args, F):
    _require(args, "n", "m", "h")
    gamma = _gamma(F, args.gamma)
    method = args.mode or "both"
    if method not in ("closed", "brute", "both"):
        raise UsageError("--method must be closed, brute or both")
    out = {"case": list(variance_case(args.n, args.m, args.h))}
    t0 = time.perf_counter()
    if method in ("closed", "both"):
        out["closed"] = variance_closed(F.q, args.n, args.m, args.h).to_json()
    if method in ("brute", "both"):
        table = build_s_table(F, args.n, args.m, gamma)
        out["brute"] = variance_from_table(table, args.h).to_json()
    ok = True
    if method == "both":
        ok = out["closed"]["value"] == out["brute"]["value"]
        out["match"] = ok
    elapsed = round((time.perf_counter() - t0) * 1000, 3)
    return out, ok, None, {"elapsed_ms": elapsed}


def cmd_theorem_check(args, F):
    n_max = args.n_max if args.n_max is not None else 3
    if n_max < 1:
        raise UsageError("--n-max must be >= 1")
    rows = []
    for n in range(1, n_max + 1):
        for m in range(n):
            for gamma in F.nonzero:
                table = build_s_table(F, n, m, gamma)
                for h in range(2 * n + 1):
                    closed = variance_closed(F.q, n, m, h)
                    brute = variance_from_table(table, h)
                    case, sub = variance_case(n, m, h)
                    rows.append([n, m, h, gamma, case, sub, str(closed), str(brute), closed == brute])
    # mismatches first, otherwise parameter order
    rows.sort(key=lambda r: (r[8], r[0], r[1], r[2], r[3]))
    ok = all(r[8] for r in rows)
    header = ["n", "m", "h", "gamma", "case", "subcase", "closed", "brute", "match"]
    payload = {"rows": [dict(zip(header, [str(v) if isinstance(v, int) and not isinstance(v, bool) else v
                                          for v in r])) for r in rows],
               "all_match": ok, "mismatches": sum(not r[8] for r in rows)}
    return payload, ok, (header, rows), {}


def cmd_hankel(args, F):
    if args.action != "reduce":
        raise UsageError("hankel supports: reduce")
    _require(args, "seq")
    seq = _elements(F, _seq(args.seq))
    if len(seq) % 2 == 0:
        raise UsageError("a square Hankel matrix needs an odd number of entries (2n-1)")
    n = (len(seq) + 1) // 2
    H = HankelMatrix(F, n, n, seq)
    R = reduce(H)
    rho, pi = strict_rho_pi(H)
    P = R.partition
    out = {
        "n": n,
        "matrix": H.to_array().tolist(),
        "reduced": R.render().tolist(),
        "partition": {"p1_prime": P.p1_prime, "p1_dblprime": P.p1_dblprime, "tail": list(P.tail)},
        "rho_s": rho, "pi_s": pi, "rank": rank(H),
    }
    return out, True, None, {}


def cmd_multiset(args, F):
    _require(args, "seq")
    seq = _elements(F, _seq(args.seq))
    if len(seq) % 2 == 0:
        raise UsageError("a square Hankel matrix needs an odd number of entries (2n-1)")
    mode = args.mode or "monic"
    if mode not in ("full", "monic", "last1"):
        raise UsageError("--mode must be full, monic or last1")
    n = (len(seq) + 1) // 2
    H = HankelMatrix(F, n, n, seq)
    values = values_quadform(H, mode)
    out = {"mode": mode, "enumerated": [str(c) for c in values.counts]}
    ok = True
    if args.compare == "closed":
        closed = values_closed_hankel(H, mode)
        ok = closed == values
        out["closed"] = [str(c) for c in closed.counts]
        out["match"] = ok
    elif args.compare is not None:
        raise UsageError("--compare supports: closed")
    return out, ok, None, {}


def cmd_ncount(args, F):
    _require(args, "n", "m", "h")
    mode = args.mode or "both"
    if mode not in ("closed", "enumerate", "both"):
        raise UsageError("--mode must be closed, enumerate or both")
    n, m, h = args.n, args.m, args.h
    regime = census_regime(n, m, h)
    closed = {(c.rho2, c.rho1): c.count for c in census_N(F, n, m, h, "closed")} \
        if mode != "enumerate" else {}
    enum, excluded = {}, None
    if mode != "closed":
        scan = census_scan(F, n, m, h, max(1, args.shards))
        enum = {(c.rho2, c.rho1): c.count for c in scan.cells}
        excluded = len(scan.excluded)
    cells = []
    ok = True
    header = ["rho2", "rho1", "closed", "enumerated", "match"]
    rows = []
    for key in sorted(set(closed) | set(enum)):
        cell = {"rho2": key[0], "rho1": key[1]}
        if mode != "enumerate":
            cell["closed"] = str(closed.get(key, 0))
        if mode != "closed":
            cell["enumerated"] = str(enum.get(key, 0))
        if mode == "both":
            cell["match"] = closed.get(key, 0) == enum.get(key, 0)
            ok &= cell["match"]
        cells.append(cell)
        rows.append([key[0], key[1], cell.get("closed", ""), cell.get("enumerated", ""), cell.get("match", "")])
    out = {"regime": list(regime), "cells": cells}
    if excluded is not None:
        out["excluded_sequences"] = excluded
    if mode == "both":
        out["all_match"] = ok
    return out, ok, (header, rows), {}


def cmd_charsum(args, F):
    if args.seq is not None:
        seq = _elements(F, _seq(args.seq))
        if len(seq) % 2 == 0 or len(seq) < 1:
            raise UsageError("a pair contribution needs 2n+1 sequence entries")
        n = (len(seq) - 1) // 2
        vals = {k: pair_contribution(F, seq, n, k) for k in ("multiset", "closed", "direct")}
        rho, pi = strict_rho_pi(HankelMatrix(F, n + 1, n + 1, seq))
        ok = len(set(vals.values())) == 1
        out = {"n": n, "rho_s": rho, "pi_s": pi, **{k: str(v) for k, v in vals.items()}, "match": ok}
        return out, ok, None, {}
    _require(args, "n", "m", "h")
    gamma = _gamma(F, args.gamma)
    chars = interval_square_sum_via_characters(F, args.n, args.m, args.h)
    brute = square_sum_from_table(build_s_table(F, args.n, args.m, gamma), args.h)
    ok = chars == brute
    return {"square_sum_characters": str(chars), "square_sum_brute": str(brute), "match": ok}, ok, None, {}


def cmd_verify_all(args, F):
    n_max = args.n_max if args.n_max is not None else 2
    if n_max < 1:
        raise UsageError("--n-max must be >= 1")
    results = run_all(F, n_max)
    ok = all(r.passed for r in results)
    header = ["check", "passed", "checked", "mismatches"]
    rows = [[r.name, r.passed, r.checked, len(r.mismatches)] for r in results]
    return {"checks": [r.to_json() for r in results], "all_passed": ok}, ok, (header, rows), {}


COMMANDS = {
    "variance": cmd_variance,
    "theorem-check": cmd_theorem_check,
    "hankel": cmd_hankel,
    "multiset": cmd_multiset,
    "ncount": cmd_ncount,
    "charsum": cmd_charsum,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fqsquares", description="Exact checks for sums of two squares over F_q[T].")
    parser.add_argument("--version", action="version", version=f"fqsquares {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "hankel":
            p.add_argument("action", choices=["reduce"])
        p.add_argument("--field", required=True, help="p or p^k:c0,...,ck")
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--h", type=int)
        p.add_argument("--gamma", type=int)
        p.add_argument("--n-max", type=int)
        p.add_argument("--seq")
        p.add_argument("--mode", "--method", dest="mode")
        p.add_argument("--compare")
        p.add_argument("--format", choices=["json", "csv", "pretty"])
        p.add_argument("--out")
        p.add_argument("--shards", type=int, default=1)
    return parser


def _config(args) -> dict:
    keys = ["command", "action", "field", "n", "m", "h", "gamma", "n_max", "seq", "mode",
            "compare", "format", "shards", "out"]
    return {k: getattr(args, k, None) for k in keys}


def emit_report(payload: dict, fmt: str, table, config: dict, timing: dict) -> str:
    if fmt == "csv":
        if table is None:
            raise UsageError(f"{config['command']} has no tabular output; use json or pretty")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table[0])
        w.writerows(table[1])
        return buf.getvalue()
    if fmt == "pretty":
        lines = [f"fqsquares {__version__}  {config['command']}  field={config['field']}"]
        lines += _pretty(payload)
        return "\n".join(lines) + "\n"
    report = {
        "tool": "fqsquares",
        "version": __version__,
        "config": config,
        "result": payload,
        "timing": {"generated_at": datetime.now(timezone.utc).isoformat(), **timing},
    }
    return json.dumps(report, indent=2) + "\n"


def _pretty(obj, indent=0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out += _pretty(v, indent + 1)
            else:
                out.append(f"{pad}{k}: {_short(v)}")
        return out
    if isinstance(obj, list):
        out = []
        for v in obj:
            out += _pretty(v, indent) if isinstance(v, dict) else [f"{pad}- {_short(v)}"]
        return out
    return [f"{pad}{obj}"]


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or
                                       (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x))
                                       for x in v)


def _short(v) -> str:
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format or ("csv" if args.command == "theorem-check" else "json")
        F = parse_field(args.field)
        config = _config(args)
        config["field"] = field_spec(F)
        config["format"] = fmt
        payload, ok, table, timing = COMMANDS[args.command](args, F)
        text = emit_report(payload, fmt, table, config, timing)
        if args.out:
            try:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise UsageError(f"cannot write report: {exc}") from None
        else:
            sys.stdout.write(text)
        if not ok:
            print("mismatch: see report for the offending parameters", file=sys.stderr)
        return 0 if ok else 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (UsageError, FieldError, BadParameters, CensusParams, GammaZero, LengthMismatch, ValueError) as exc:
        kind = type(exc).__name__
        if fmt == "json":
            print(json.dumps({"error": kind, "message": str(exc)}), file=sys.stderr)
        else:
            print(f"error: {kind}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
