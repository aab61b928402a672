"""``pfcirc`` command-line entry point.

Every subcommand builds a :class:`RunReport`.  Plain output is a short
human summary; ``--json`` prints the report itself.  Exit status is 0 when
every verdict passes, 1 when one fails and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import acceptance
from .circuit import EdgeOrder, NonElementaryError, evaluate, evaluate_bruteforce
from .circuit import loads as load_circuit
from .exactfield import Scalar, format_scalar, parse_scalar
from .invariants import dual_invariants, invariants
from .pfaffian import matrix_to_json
from .sampling import DEFAULT_SEED, rng_from
from .swapsub import (
    DegenerateParameters,
    demo_substitution,
    multi_swap_obstruction,
    reference_solution,
    random_solution,
    sample_solution,
)
from .tensor import loads as load_tensor
from .topologies import swap_hosts, with_random_matrices


class InputError(Exception):
    """Malformed or missing input; maps to exit status 2."""


@dataclass
class RunReport:
    command: list[str]
    inputs_digest: str
    results: dict = field(default_factory=dict)
    floats: dict = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)
    wall_ms: float | None = None

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> str:
        data = {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "results": self.results,
            "floats": self.floats,
            "verdicts": self.verdicts,
            "passed": self.passed,
            "wall_ms": self.wall_ms,
        }
        return json.dumps(data, indent=2, sort_keys=True)


def approx(x: Scalar):
    z = x.to_complex()
    if z.imag == 0:
        return z.real
    return [z.real, z.imag]


def _digest(parts: Sequence[bytes]) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(len(p).to_bytes(8, "big"))
        h.update(p)
    return h.hexdigest()


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _parse(loader, data: bytes, path: str):
    try:
        return loader(data.decode("utf-8"))
    except (ValueError, KeyError, TypeError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _matrix_strings(m) -> list[list[str]]:
    return [[format_scalar(v) for v in row] for row in m.entries]


# -- subcommands --------------------------------------------------------------------


def cmd_eval(args, report: RunReport, out: list[str]):
    raw = _read(args.file)
    c = _parse(load_circuit, raw, args.file)
    digests = [raw]
    order = None
    if args.order != "auto":
        raw_order = _read(args.order)
        digests.append(raw_order)
        data = _parse(json.loads, raw_order, args.order)
        seq = data.get("order") if isinstance(data, dict) else data
        try:
            order = EdgeOrder(tuple(int(e) for e in seq))
            order.check_against(c)
        except (TypeError, ValueError) as exc:
            raise InputError(f"{args.order}: {exc}") from exc
    report.inputs_digest = _digest(digests)

    value = None
    if c.is_elementary:
        value = evaluate(c, order)
        report.results["pfaffian"] = format_scalar(value)
        report.floats["pfaffian"] = approx(value)
        out.append(f"pfaffian value : {format_scalar(value)}")
    elif not args.oracle:
        raise InputError("circuit has non-elementary vertices; use --oracle for the brute-force value")
    else:
        out.append("pfaffian value : n/a (non-elementary vertices)")
    if args.oracle:
        try:
            brute = evaluate_bruteforce(c)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        report.results["bruteforce"] = format_scalar(brute)
        report.floats["bruteforce"] = approx(brute)
        out.append(f"brute force    : {format_scalar(brute)}")
        if value is not None:
            report.verdicts["values_equal"] = value == brute
            out.append(f"equal          : {value == brute}")


def cmd_member(args, report: RunReport, out: list[str]):
    from .varieties import MAX_ARITY, in_chart_by_reconstruction, membership

    raw = _read(args.file)
    t = _parse(load_tensor, raw, args.file)
    report.inputs_digest = _digest([raw])
    want = "ket" if args.side == "gate" else "bra"
    if not (t.is_ket if want == "ket" else t.is_bra):
        raise InputError(f"{args.side} membership needs an all-{want} tensor")
    if t.arity > MAX_ARITY:
        if args.cone:
            raise InputError(f"cone test supports arity <= {MAX_ARITY}")
        try:
            ok = in_chart_by_reconstruction(t, args.side)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        report.results["reason"] = "chart reconstruction"
        report.verdicts["member"] = ok
        out.append(f"member : {ok} (chart reconstruction)")
        return
    rep = membership(t, args.side, cone=args.cone)
    report.results["reason"] = rep.reason
    report.results["relation"] = str(rep.relation) if rep.relation is not None else None
    if rep.value is not None:
        report.results["relation_value"] = format_scalar(rep.value)
        report.floats["relation_value"] = approx(rep.value)
    report.verdicts["member"] = rep.member
    out.append(f"member   : {rep.member}")
    out.append(f"reason   : {rep.reason}")
    if rep.relation is not None:
        out.append(f"relation : {rep.relation}")
        out.append(f"value    : {format_scalar(rep.value)}")


def cmd_invariants(args, report: RunReport, out: list[str]):
    raw = _read(args.file)
    t = _parse(load_tensor, raw, args.file)
    report.inputs_digest = _digest([raw])
    if t.arity != 4:
        raise InputError(f"invariants need arity 4, got {t.arity}")
    if args.dual:
        if not t.is_bra:
            raise InputError("--dual needs an all-bra tensor")
        vals = dual_invariants(t)
    else:
        vals = invariants(t)
    for name, v in vals.as_dict().items():
        report.results[name] = format_scalar(v)
        report.floats[name] = approx(v)
        out.append(f"{name:5s} = {format_scalar(v):>20s}   ~ {approx(v)}")


def _solution_dict(sol) -> dict:
    return {
        "M": [[format_scalar(sol.M.a), format_scalar(sol.M.b)], [format_scalar(sol.M.c), format_scalar(sol.M.d)]],
        "N": [[format_scalar(sol.N.a), format_scalar(sol.N.b)], [format_scalar(sol.N.c), format_scalar(sol.N.d)]],
        "S": matrix_to_json(sol.S),
    }


def cmd_swap_demo(args, report: RunReport, out: list[str]):
    report.inputs_digest = _digest([repr((args.params, args.reference_solution, args.trials, args.seed)).encode()])
    if args.params:
        try:
            params = [parse_scalar(p) for p in args.params.split(",")]
            sol = sample_solution(params)
        except DegenerateParameters as exc:
            raise InputError(f"degenerate parameters: {exc}") from exc
        except ValueError as exc:
            raise InputError(f"--params: {exc}") from exc
    else:
        sol = reference_solution()
    bad = sol.check()
    report.results["solution"] = _solution_dict(sol)
    report.verdicts["conditions"] = not bad
    out.append(f"M = {sol.M}")
    out.append(f"N = {sol.N}")
    out.append("S =")
    out.extend("    " + "  ".join(f"{v:>8s}" for v in row) for row in _matrix_strings(sol.S))

    rng = rng_from(args.seed)
    hosts = swap_hosts()
    trials, floats = [], []
    for k in range(args.trials):
        host = with_random_matrices(hosts[k % len(hosts)], rng)
        r = demo_substitution(host, "v", sol)
        trials.append({"before": format_scalar(r.value_before), "after": format_scalar(r.value_after), "equal": r.equal})
        floats.append({"before": approx(r.value_before), "after": approx(r.value_after)})
        out.append(f"trial {k + 1}: before {format_scalar(r.value_before)}  after {format_scalar(r.value_after)}  equal {r.equal}")
    report.results["trials"] = trials
    report.floats["trials"] = floats
    report.verdicts["values_equal"] = all(t["equal"] for t in trials)


def cmd_swap_obstruction(args, report: RunReport, out: list[str]):
    report.inputs_digest = _digest([repr((args.k, args.trials, args.seed)).encode()])
    rng = rng_from(args.seed)
    rows = []
    for k in range(args.trials):
        sols = [random_solution(rng) for _ in range(args.k)]
        rep = multi_swap_obstruction(args.k, sols)
        rows.append(rep.as_dict())
        line = f"trial {k + 1}: cone member {rep.cone_member}"
        if rep.relation is not None:
            line += f"; violates {rep.relation}"
        else:
            line += f"; {rep.reason}"
        out.append(line)
    report.results["trials"] = rows
    report.verdicts["all_outside_cone"] = all(not r["cone_member"] for r in rows)
    report.verdicts["defect_formula"] = all(r["defect_matches"] for r in rows)


def cmd_cert(args, report: RunReport, out: list[str]):
    from .certs import DEFAULT_LADDER, dump_certificate, find_certificate, i_plus_j_system

    report.inputs_digest = _digest([repr((args.system, args.degree)).encode()])
    target, gens, names = i_plus_j_system()
    ladder = [args.degree] if args.degree is not None else list(DEFAULT_LADDER)
    try:
        cert, log = find_certificate(target, gens, ladder)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report.results["attempts"] = log
    found = bool(cert)
    report.verdicts["found"] = found
    if not found:
        out.append(f"no certificate up to degree {ladder[-1]}")
        return
    ok = cert.verify()
    report.verdicts["verified"] = ok
    report.results["degree"] = cert.degree
    report.results["terms"] = cert.size
    report.results["generators_used"] = [names[i] for i, _ in cert.multipliers]
    out.append(f"degree bound : {cert.degree}")
    out.append(f"terms        : {cert.size}")
    out.append(f"verified     : {ok}")
    if args.dump:
        Path(args.dump).write_text(dump_certificate(cert, names) + "\n")
        out.append(f"written      : {args.dump}")


def cmd_selftest(args, report: RunReport, out: list[str]):
    report.inputs_digest = _digest([repr((args.seed, args.scale, args.only)).encode()])
    only = set(args.only) if args.only else None
    for r in acceptance.run_all(seed=args.seed, scale=args.scale, only=only):
        report.verdicts[f"check_{r.number}"] = r.passed
        report.results[f"check_{r.number}"] = {"title": r.title, "details": r.details}
        out.append(r.line())


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report on stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--timing", action="store_true", help="record wall-clock time in the report")

    p = argparse.ArgumentParser(prog="pfcirc", description="Exact Pfaffian circuit evaluation and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a circuit file")
    s.add_argument("file")
    s.add_argument("--oracle", action="store_true", help="also evaluate by brute-force pairing")
    s.add_argument("--order", default="auto", help="'auto' or a JSON file with an edge-id list")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("member", parents=[common], help="test Pfaffian gate/cogate membership")
    s.add_argument("file")
    s.add_argument("--side", choices=["gate", "cogate"], required=True)
    s.add_argument("--cone", action="store_true", help="allow an overall scale")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("invariants", parents=[common], help="four-qubit invariants of a tensor")
    s.add_argument("file")
    s.add_argument("--dual", action="store_true", help="contragredient generators for a bra tensor")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("swap-demo", parents=[common], help="replace a Pfaffian cogate by SWAP")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--paper-solution", dest="reference_solution", action="store_true", help="use the (1/sqrt2) solution (default)")
    g.add_argument("--params", help="free parameters b,c,f,d")
    s.add_argument("--trials", type=int, default=5)
    s.set_defaults(func=cmd_swap_demo)

    s = sub.add_parser("swap-obstruction", parents=[common], help="even part of several SWAPs")
    s.add_argument("--k", type=int, choices=[2, 3], default=2)
    s.add_argument("--trials", type=int, default=5)
    s.set_defaults(func=cmd_swap_obstruction)

    s = sub.add_parser("cert", parents=[common], help="ideal membership certificate")
    s.add_argument("--system", choices=["paper-i-plus-j"], default="paper-i-plus-j")
    s.add_argument("--degree", type=int, help="single degree bound instead of the default ladder")
    s.add_argument("--dump", help="write the certificate JSON here")
    s.set_defaults(func=cmd_cert)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.add_argument("--scale", type=float, default=1.0, help="shrink sample counts (e.g. 0.1)")
    s.add_argument("--only", type=int, nargs="+", choices=range(1, 10), metavar="N")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[RunReport | None, int]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, 2 if exc.code else 0
    report = RunReport(command=argv, inputs_digest="")
    out: list[str] = []
    t0 = time.perf_counter()
    try:
        args.func(args, report, out)
    except InputError as exc:
        print(f"pfcirc: error: {exc}", file=sys.stderr)
        return report, 2
    except NonElementaryError as exc:
        print(f"pfcirc: error: {exc}", file=sys.stderr)
        return report, 2
    if args.timing:
        report.wall_ms = round((time.perf_counter() - t0) * 1000, 3)
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(out))
        if report.verdicts:
            print("verdict: " + ("PASS" if report.passed else "FAIL"))
    return report, report.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    _, code = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
