"""Command-line front end: ``criteria``, ``test``, ``mutate`` and ``selfcheck``.

All file I/O of the package lives here.  Exit codes: 0 accepted or success,
1 rejected, 2 input error, 3 singular evaluation, 4 internal defect.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import acceptance
from .errors import (
    ClusterPosError,
    FrozenVertex,
    IndexOutOfRange,
    InexactDivision,
    LengthMismatch,
    NotAdapted,
    NotReduced,
    NotUnitriangular,
    SingularEvaluation,
    TooLarge,
    UnknownVertex,
    UnsupportedType,
)
from .exactalg import parse_rational
from .flagpos import (
    ACCEPTED,
    REJECTED,
    SINGULAR,
    CriterionReport,
    full_flag_test,
    partial_flag_seed,
    seed_test,
    singular_report,
    symbolic_criterion,
    tp_element,
)
from .repmat import element_from_matrix
from .rootsys import adapted_longest_word, build_root_system, word_indexing

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_SINGULAR, EXIT_DEFECT = 0, 1, 2, 3, 4

INPUT_ERRORS = (UnsupportedType, IndexOutOfRange, NotReduced, NotAdapted, NotUnitriangular,
                LengthMismatch, UnknownVertex, FrozenVertex, ValueError)


class InputError(Exception):
    pass


@dataclass
class JobConfig:
    family: str
    rank: int
    K: tuple[int, ...] = ()
    word: Optional[tuple[int, ...]] = None
    mutations: tuple[int, ...] = ()
    mode: str = "numeric"
    fmt: str = "text"

    def validate(self):
        """Check against the root system; fill in the word when absent."""
        rs = build_root_system(self.family, self.rank)
        if self.word is None:
            self.word = adapted_longest_word(rs, self.K)
        word_indexing(rs, self.word, self.K)
        return rs

    def provenance(self) -> dict:
        return {"family": self.family, "rank": self.rank, "K": list(self.K),
                "word": list(self.word or ()), "mutations": list(self.mutations)}


def _int_list(value) -> tuple[int, ...]:
    if value is None:
        return ()
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",") if p]
        try:
            return tuple(int(p) for p in parts)
        except ValueError:
            raise InputError(f"expected a comma-separated list of integers, got {value!r}") from None
    if isinstance(value, (list, tuple)) and all(isinstance(x, int) and not isinstance(x, bool)
                                                for x in value):
        return tuple(value)
    raise InputError(f"expected a list of integers, got {value!r}")


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold a JSON object")
    return data


CONFIG_KEYS = ("family", "rank", "K", "word", "mutations", "mode", "format")


def build_config(args: argparse.Namespace, inline: Optional[dict] = None) -> JobConfig:
    # precedence: command-line flags, then config inlined in the input file, then --config
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update({k: v for k, v in _read_json(args.config).items() if k in CONFIG_KEYS})
    if inline:
        merged.update({k: v for k, v in inline.items() if k in CONFIG_KEYS})
    flags = {"family": args.family, "rank": args.rank, "K": args.k, "word": args.word,
             "mutations": args.mutations}
    merged.update({k: v for k, v in flags.items() if v is not None})
    if getattr(args, "symbolic", False):
        merged["mode"] = "symbolic"
    if getattr(args, "format", None):
        merged["format"] = args.format
    if "family" not in merged or "rank" not in merged:
        raise InputError("--family and --rank are required (on the command line or in a config)")
    try:
        rank = int(merged["rank"])
    except (TypeError, ValueError):
        raise InputError(f"rank must be an integer, got {merged['rank']!r}") from None
    mode = merged.get("mode", "numeric")
    fmt = merged.get("format", "text")
    if mode not in ("numeric", "symbolic"):
        raise InputError(f"mode must be numeric or symbolic, got {mode!r}")
    if fmt not in ("text", "json"):
        raise InputError(f"format must be text or json, got {fmt!r}")
    word = merged.get("word")
    return JobConfig(
        family=str(merged["family"]).upper(),
        rank=rank,
        K=tuple(sorted(set(_int_list(merged.get("K"))))),
        word=None if word is None else _int_list(word),
        mutations=_int_list(merged.get("mutations")),
        mode=mode,
        fmt=fmt,
    )


# commands ------------------------------------------------------------------

def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def cmd_criteria(config: JobConfig, out=sys.stdout) -> int:
    rs = config.validate()
    seed = partial_flag_seed(rs, config.word, config.K, config.mutations)
    polys = {}
    if config.mode == "symbolic":
        polys = dict(symbolic_criterion(rs, config.word, config.K, config.mutations))
    frozen = set(seed.frozen)
    rows = []
    for v in seed.vertices:
        rows.append({
            "vertex": v,
            "frozen": v in frozen,
            "expression": str(seed.variables[v]),
            "polynomial": str(polys[v]) if v in polys else None,
        })
    if config.fmt == "json":
        _emit(out, json.dumps({"provenance": config.provenance(), "functions": rows}, indent=2))
        return EXIT_OK
    prov = config.provenance()
    _emit(out, f"# {rs.name} K={prov['K']} word={prov['word']} mutations={prov['mutations']}")
    for row in rows:
        kind = "frozen" if row["frozen"] else "mutable"
        body = row["polynomial"] if row["polynomial"] is not None else row["expression"]
        _emit(out, f"{row['vertex']:>4} ({kind}): {body} > 0")
    return EXIT_OK


def _load_point(rs, config: JobConfig, data: dict):
    if ("matrix" in data) == ("params" in data):
        raise InputError('input must contain exactly one of "matrix" or "params"')
    if "matrix" in data:
        m = data["matrix"]
        if not isinstance(m, list) or not all(isinstance(row, list) for row in m):
            raise InputError('"matrix" must be a list of rows')
        return element_from_matrix(rs, [[parse_rational(x) for x in row] for row in m])
    params = data["params"]
    if not isinstance(params, list):
        raise InputError('"params" must be a list')
    return tp_element(rs, config.word, [parse_rational(x) for x in params])


def render_report(report: CriterionReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2)
    lines = [f"verdict: {report.verdict}"]
    for f in report.functions:
        value = "-" if f.value is None else str(f.value)
        mark = "ok" if f.positive else "FAILS"
        lines.append(f"{f.vertex:>4}  {f.label} = {value}  [{mark}]")
    if report.witness is not None:
        w = report.witness
        lines.append(f"witness: vertex {w.vertex}, {w.label} = {w.value}")
    if "error" in report.provenance:
        lines.append(f"error: {report.provenance['error']}")
    return "\n".join(lines)


def cmd_test(config: JobConfig, data: dict, out=sys.stdout) -> int:
    rs = config.validate()
    point = _load_point(rs, config, data)
    try:
        if not config.K and not config.mutations:
            report = full_flag_test(rs, config.word, point)
        else:
            report = seed_test(partial_flag_seed(rs, config.word, config.K, config.mutations), point)
    except SingularEvaluation as exc:
        report = singular_report(str(exc), config.provenance())
    _emit(out, render_report(report, config.fmt))
    return {ACCEPTED: EXIT_OK, REJECTED: EXIT_REJECTED, SINGULAR: EXIT_SINGULAR}[report.verdict]


def cmd_mutate(config: JobConfig, out=sys.stdout) -> int:
    rs = config.validate()
    seed = partial_flag_seed(rs, config.word, config.K, config.mutations)
    polys = dict(symbolic_criterion(rs, config.word, config.K, config.mutations)) \
        if config.mode == "symbolic" else {}
    arrows = sorted((a, b, m) for a, b, m in seed.quiver.arrows)
    if config.fmt == "json":
        _emit(out, json.dumps({
            "provenance": config.provenance(),
            "frozen": list(seed.frozen),
            "mutable": list(seed.mutable),
            "arrows": [[a, b, m] for a, b, m in arrows],
            "variables": {str(v): str(polys.get(v, seed.variables[v])) for v in seed.vertices},
        }, indent=2))
        return EXIT_OK
    _emit(out, f"# {rs.name} K={list(config.K)} after mutations {list(config.mutations)}")
    _emit(out, f"frozen: {list(seed.frozen)}  mutable: {list(seed.mutable)}")
    for a, b, m in arrows:
        _emit(out, f"arrow {a} -> {b}" + (f" (x{m})" if m > 1 else ""))
    for v in seed.vertices:
        _emit(out, f"{v:>4}: {polys.get(v, seed.variables[v])}")
    return EXIT_OK


def cmd_selfcheck(only: Optional[Sequence[int]] = None, corrupt_quiver: bool = False,
                  out=sys.stdout) -> int:
    rule = acceptance.drop_inclined_arrows if corrupt_quiver else acceptance.rule_r_arrows
    results = []
    for number in only or [s[0] for s in acceptance.SUITES]:
        r = acceptance.run_suite(number, rule)
        results.append(r)
        _emit(out, r.line())
        out.flush()
    failed = [r for r in results if not r.ok]
    _emit(out, f"{len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_OK if not failed else EXIT_DEFECT


# argument parsing ----------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["A", "D", "E", "a", "d", "e"])
    common.add_argument("--rank", type=int)
    common.add_argument("--k", help="parabolic subset, e.g. 1,3")
    common.add_argument("--word", help="reduced word for w0, e.g. 2,1,3,2,1,3")
    common.add_argument("--mutations", help="mutation sequence, e.g. 2,3")
    common.add_argument("--symbolic", action="store_true", help="print polynomials")
    common.add_argument("--format", choices=["text", "json"])
    common.add_argument("--config", help="JSON file with job settings")

    p = argparse.ArgumentParser(prog="clusterpos",
                                description="Cluster-seed total positivity criteria.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("criteria", parents=[common], help="print the criterion functions")
    t = sub.add_parser("test", parents=[common], help="test a point for total positivity")
    t.add_argument("--input", required=True, help='JSON with "matrix" or "params"')
    sub.add_parser("mutate", parents=[common], help="print the seed after mutations")
    s = sub.add_parser("selfcheck", help="run the acceptance suites")
    s.add_argument("--only", help="comma-separated suite numbers")
    s.add_argument("--corrupt-quiver", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _parser().parse_args(argv)
    try:
        if args.command == "selfcheck":
            only = _int_list(args.only) if args.only else None
            return cmd_selfcheck(only, args.corrupt_quiver, out)
        if args.command == "test":
            data = _read_json(args.input)
            config = build_config(args, data)
            return cmd_test(config, data, out)
        config = build_config(args)
        if args.command == "criteria":
            return cmd_criteria(config, out)
        return cmd_mutate(config, out)
    except (InputError, *INPUT_ERRORS) as exc:
        _emit(err, f"error: {type(exc).__name__}: {exc}")
        return EXIT_INPUT
    except SingularEvaluation as exc:
        _emit(err, f"singular: {exc}")
        return EXIT_SINGULAR
    except (InexactDivision, TooLarge, ClusterPosError) as exc:
        _emit(err, f"internal defect: {type(exc).__name__}: {exc}")
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
