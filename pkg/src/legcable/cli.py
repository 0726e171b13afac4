"""Command-line entry point.

Examples:
  legcable classify --a "3,2,-1,0,1,0" --b "3,2,-1,0,1,0"
  legcable range --p -3 --q 2 --m 1 --rot1 0 --floor -8 --format ascii
  legcable construct --tuple "2,3,-1,0,1,0" > link.json
  legcable invariants link.json
  legcable verify-geometry --samples 10000 --seed 7

Exit codes: 0 success, 1 negative answer, 2 not realizable / unsupported,
3 input error, 4 failed verification.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import errors
from .classify import Outcome, Verdict, classify_cable
from .construct import construct
from .fronts import FrontDiagram, classical_invariants, cusps, linking_number, validate, writhe
from .geometry import IDENTITY_TOL, verify_geometry
from .jet import (
    JetKnotInvariants, TransverseInvariants, classify_jet, default_floor, jet_mountain_range,
    normalize_jet, normalize_transverse, transverse_range, transverse_realizable,
    transverse_realizable_and_classify,
)
from .ranges import LinkInvariants, ascii_plot, mountain_range, normalize, realizable

SCHEMA = "v1"

EXIT_OK, EXIT_NEGATIVE, EXIT_UNREALIZABLE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3, 4

_EXIT_FOR_ERROR = (
    (errors.CurvesIntersect, EXIT_VERIFY),
    (errors.TemplateMismatch, EXIT_VERIFY),
    (errors.NotRealizable, EXIT_UNREALIZABLE),
    (errors.Unsupported, EXIT_UNREALIZABLE),
    (errors.FloorTooShallow, EXIT_INPUT),
    (ValueError, EXIT_INPUT),
    (KeyError, EXIT_INPUT),
    (OSError, EXIT_INPUT),
)

_EXIT_FOR_OUTCOME = {
    Outcome.ISOTOPIC: EXIT_OK,
    Outcome.NOT_ISOTOPIC: EXIT_NEGATIVE,
    Outcome.NOT_REALIZABLE: EXIT_UNREALIZABLE,
    Outcome.OUT_OF_SCOPE: EXIT_UNREALIZABLE,
}


@dataclass(frozen=True)
class CommandConfig:
    """Everything a run depends on; equal configs give byte-identical output."""
    command: tuple[str, ...]
    options: dict = field(default_factory=dict)
    fmt: str = "json"


@dataclass
class RunResult:
    code: int
    out: str
    err: str = ""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _error_json(kind: str, message: str) -> str:
    return json.dumps({"schema": SCHEMA, "error": kind, "message": message}, sort_keys=True) + "\n"


# --- tuple input ----------------------------------------------------------------

def _load_pair(opts, parse):
    """Two tuples from --a/--b flags or a JSON file {"a": ..., "b": ...}."""
    if opts.get("input"):
        data = json.loads(Path(opts["input"]).read_text(encoding="utf-8"))
        return tuple(_from_json(data[k], parse) for k in ("a", "b"))
    if opts.get("a") is None or opts.get("b") is None:
        raise ValueError("give --a and --b, or --input FILE")
    return parse(opts["a"]), parse(opts["b"])


def _from_json(item, parse):
    if isinstance(item, str):
        return parse(item)
    if isinstance(item, list):
        return parse(",".join(str(x) for x in item))
    raise ValueError(f"cannot read tuple from {item!r}")


def _normalized_report(raw: LinkInvariants):
    inv = normalize(raw)
    return inv, {"input": list(raw.as_tuple()), "normalized": list(inv.as_tuple())}


# --- commands -------------------------------------------------------------------

def _cmd_invariants(cfg: CommandConfig) -> RunResult:
    text = Path(cfg.options["front"]).read_text(encoding="utf-8")
    d = FrontDiagram.from_json(text)
    bad = validate(d)
    if bad:
        return RunResult(EXIT_INPUT, "", dump({"schema": SCHEMA, "error": "InvalidDiagram",
                                                "violations": [v.to_dict() for v in bad]}))
    comps = []
    for c in range(len(d.components)):
        tb, rot = classical_invariants(d, c)
        down, up = cusps(d, c)
        comps.append({"index": c, "tb": tb, "rot": rot, "writhe": writhe(d, c),
                      "cusps_down": down, "cusps_up": up})
    links = [{"pair": [i, j], "lk": linking_number(d, i, j)}
             for i in range(len(d.components)) for j in range(i + 1, len(d.components))]
    out = {"schema": SCHEMA, "ambient": d.ambient.value, "components": comps, "linking": links}
    if cfg.fmt == "text":
        lines = [f"component {c['index']}: tb={c['tb']} rot={c['rot']} writhe={c['writhe']} "
                 f"cusps down/up={c['cusps_down']}/{c['cusps_up']}" for c in comps]
        lines += [f"lk{tuple(x['pair'])} = {x['lk']}" for x in links]
        return RunResult(EXIT_OK, "\n".join(lines) + "\n")
    return RunResult(EXIT_OK, dump(out))


def _verdict_result(v: Verdict, extra: dict, fmt: str) -> RunResult:
    body = v.to_dict()
    body.update(extra)
    code = _EXIT_FOR_OUTCOME[v.outcome]
    if fmt == "text":
        return RunResult(code, f"{v.outcome.value}: {v.reason}\n")
    return RunResult(code, dump(body))


def _cmd_classify(cfg: CommandConfig) -> RunResult:
    a, b = _load_pair(cfg.options, LinkInvariants.parse)
    na, ra = _normalized_report(a)
    nb, rb = _normalized_report(b)
    return _verdict_result(classify_cable(na, nb), {"a": ra, "b": rb}, cfg.fmt)


def _cmd_realizable(cfg: CommandConfig) -> RunResult:
    inv, rep = _normalized_report(LinkInvariants.parse(cfg.options["tuple"]))
    ok, label = realizable(inv)
    out = {"schema": SCHEMA, **rep, "realizable": ok,
           "case": label.case.value if label else None,
           "swapped": label.swapped if label else False}
    if cfg.fmt == "text":
        return RunResult(EXIT_OK if ok else EXIT_NEGATIVE,
                         f"{tuple(inv.as_tuple())}: {'realizable' if ok else 'not realizable'}"
                         f"{' (' + out['case'] + ')' if out['case'] else ''}\n")
    return RunResult(EXIT_OK if ok else EXIT_NEGATIVE, dump(out))


def _cmd_range(cfg: CommandConfig) -> RunResult:
    o = cfg.options
    p, q, m, rot1 = o["p"], o["q"], o["m"], o["rot1"]
    floor = o["floor"] if o.get("floor") is not None else default_floor(p, q, m, rot1)
    mr = mountain_range(p, q, m, rot1, floor)
    if cfg.fmt == "ascii":
        return RunResult(EXIT_OK, ascii_plot(mr))
    if cfg.fmt == "text":
        lines = [f"case {mr.case.value}, max tb2 = {mr.max_tb2}",
                 "peaks: " + " ".join(f"({pk.rot2_peak},{pk.tb2})" for pk in mr.peaks)]
        lines += [f"{r} {t}" for r, t in mr.points]
        return RunResult(EXIT_OK, "\n".join(lines) + "\n")
    return RunResult(EXIT_OK, dump({"schema": SCHEMA, **mr.to_dict()}))


def _cmd_construct(cfg: CommandConfig) -> RunResult:
    inv, rep = _normalized_report(LinkInvariants.parse(cfg.options["tuple"]))
    d = construct(inv)
    tb1, rot1 = classical_invariants(d, 0)
    tb2, rot2 = classical_invariants(d, 1)
    out = {"schema": SCHEMA, "format": "front-v1", **d.to_dict(), "target": rep,
           "computed": {"tb1": tb1, "rot1": rot1, "tb2": tb2, "rot2": rot2,
                        "lk": linking_number(d, 0, 1)}}
    return RunResult(EXIT_OK, dump(out))


def _cmd_jet_classify(cfg: CommandConfig) -> RunResult:
    a, b = _load_pair(cfg.options, JetKnotInvariants.parse)
    extra = {"a": {"input": a.to_dict(), "normalized": normalize_jet(a).to_dict()},
             "b": {"input": b.to_dict(), "normalized": normalize_jet(b).to_dict()}}
    return _verdict_result(classify_jet(a, b), extra, cfg.fmt)


def _cmd_jet_range(cfg: CommandConfig) -> RunResult:
    o = cfg.options
    n, p = o["n"], o["p"]
    floor = o["floor"]
    if floor is None:
        floor = default_floor(p, n, 1, 0) + n * n
    jr = jet_mountain_range(n, p, floor)
    if cfg.fmt in ("text", "ascii"):
        lines = [f"max tb = {jr.max_tb}", "peaks: " + " ".join(str(r) for r in jr.peaks)]
        lines += [f"{r} {t}" for r, t in jr.points]
        return RunResult(EXIT_OK, "\n".join(lines) + "\n")
    return RunResult(EXIT_OK, dump({**jr.to_dict(), "floor": floor}))


def _cmd_transverse_classify(cfg: CommandConfig) -> RunResult:
    a, b = _load_pair(cfg.options, TransverseInvariants.parse)
    jet = bool(cfg.options.get("jet"))
    v = transverse_realizable_and_classify(a, b, cfg.options.get("floor"), jet=jet)
    extra = {"a": {"input": a.to_dict(), "normalized": normalize_transverse(a).to_dict()},
             "b": {"input": b.to_dict(), "normalized": normalize_transverse(b).to_dict()},
             "jet": jet}
    return _verdict_result(v, extra, cfg.fmt)


def _cmd_transverse_realizable(cfg: CommandConfig) -> RunResult:
    t = TransverseInvariants.parse(cfg.options["tuple"])
    jet = bool(cfg.options.get("jet"))
    nt = normalize_transverse(t)
    ok = transverse_realizable(nt, cfg.options.get("floor"), jet=jet)
    out = {"schema": SCHEMA, "input": t.to_dict(), "normalized": nt.to_dict(), "jet": jet,
           "realizable": ok}
    return RunResult(EXIT_OK if ok else EXIT_NEGATIVE, dump(out))


def _cmd_transverse_range(cfg: CommandConfig) -> RunResult:
    o = cfg.options
    tr = transverse_range(o["p"], o["q"], o["m"], o["rot1"], o.get("floor"))
    if cfg.fmt in ("text", "ascii"):
        return RunResult(EXIT_OK, f"sl1 = {-tr.m - tr.rot1}, max sl2 = {tr.sl_max}\n"
                                  + " ".join(str(s) for s in tr.values) + "\n")
    return RunResult(EXIT_OK, dump(tr.to_dict()))


def _cmd_verify_geometry(cfg: CommandConfig) -> RunResult:
    o = cfg.options
    rep = verify_geometry(o["samples"], o["seed"], o["segments"], o.get("tol") or IDENTITY_TOL)
    code = EXIT_OK if rep.passed else EXIT_VERIFY
    if cfg.fmt == "text":
        return RunResult(code, rep.table())
    return RunResult(code, dump(rep.to_dict()), rep.table())


_COMMANDS = {
    ("invariants",): _cmd_invariants,
    ("classify",): _cmd_classify,
    ("realizable",): _cmd_realizable,
    ("range",): _cmd_range,
    ("construct",): _cmd_construct,
    ("jet", "classify"): _cmd_jet_classify,
    ("jet", "range"): _cmd_jet_range,
    ("transverse", "classify"): _cmd_transverse_classify,
    ("transverse", "realizable"): _cmd_transverse_realizable,
    ("transverse", "range"): _cmd_transverse_range,
    ("verify-geometry",): _cmd_verify_geometry,
}


def run(cfg: CommandConfig) -> RunResult:
    handler = _COMMANDS.get(cfg.command)
    if handler is None:
        return RunResult(EXIT_INPUT, "", _error_json("UsageError", f"unknown command {' '.join(cfg.command)}"))
    try:
        return handler(cfg)
    except Exception as exc:
        for kind, code in _EXIT_FOR_ERROR:
            if isinstance(exc, kind):
                return RunResult(code, "", _error_json(type(exc).__name__, str(exc)))
        raise


# --- argument parsing -----------------------------------------------------------

def _fmt(ap, choices=("json", "text")):
    ap.add_argument("--format", dest="fmt", choices=choices, default="json")


def _pair_args(ap, what):
    ap.add_argument("--a", help=f"first {what}")
    ap.add_argument("--b", help=f"second {what}")
    ap.add_argument("--input", help='JSON file {"a": ..., "b": ...} instead of --a/--b')


def _slope_args(ap):
    ap.add_argument("--p", type=int, required=True)
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--m", type=int, required=True, help="-tb(L1)")
    ap.add_argument("--rot1", type=int, required=True)
    ap.add_argument("--floor", type=int, default=None, help="lowest tb2 to enumerate")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="legcable", description="Legendrian cable links: invariants, ranges, classification.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("invariants", help="tb, rot, writhe and linking numbers of a front-v1 file")
    s.add_argument("front")
    _fmt(s)

    s = sub.add_parser("classify", help="decide Legendrian isotopy of two cable links")
    _pair_args(s, 'tuple "p,q,tb1,rot1,tb2,rot2"')
    _fmt(s)

    s = sub.add_parser("realizable", help="realizability of one invariant tuple")
    s.add_argument("--tuple", required=True, help='"p,q,tb1,rot1,tb2,rot2"')
    _fmt(s)

    s = sub.add_parser("range", help="mountain range of realizable (rot2, tb2)")
    _slope_args(s)
    _fmt(s, ("json", "text", "ascii"))

    s = sub.add_parser("construct", help="front-v1 diagram realizing a tuple")
    s.add_argument("--tuple", required=True, help='"p,q,tb1,rot1,tb2,rot2"')

    jet = sub.add_parser("jet", help="Legendrian knots in the 1-jet space of the circle")
    jsub = jet.add_subparsers(dest="jcmd", required=True, parser_class=_Parser)
    s = jsub.add_parser("classify")
    _pair_args(s, 'knot "n,p,tb,rot"')
    _fmt(s)
    s = jsub.add_parser("range")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--floor", type=int, default=None, help="lowest tb to enumerate")
    _fmt(s)

    tr = sub.add_parser("transverse", help="transverse push-offs (sl = tb - rot)")
    tsub = tr.add_subparsers(dest="tcmd", required=True, parser_class=_Parser)
    s = tsub.add_parser("classify")
    _pair_args(s, 'tuple "p,q,sl1,sl2" (or "p,n,sl" with --jet)')
    s.add_argument("--jet", action="store_true", help="tuples describe knots in J^1(S^1)")
    s.add_argument("--floor", type=int, default=None, help="lowest tb2 searched")
    _fmt(s)
    s = tsub.add_parser("realizable")
    s.add_argument("--tuple", required=True)
    s.add_argument("--jet", action="store_true")
    s.add_argument("--floor", type=int, default=None)
    s = tsub.add_parser("range")
    _slope_args(s)
    _fmt(s)

    s = sub.add_parser("verify-geometry", help="numerical checks of the map J^1(S^1) -> S^3")
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--segments", type=int, default=512)
    s.add_argument("--tol", type=float, default=None, help="override the identity tolerance")
    _fmt(s)
    return ap


_NEG_TUPLE = re.compile(r"^-\d+(,\s*-?\d+)+$")


def _join_negative_tuples(argv) -> list[str]:
    # "--tuple -3,2,..." would otherwise be read as an unknown option
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEG_TUPLE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def config_from_args(argv) -> CommandConfig:
    ns = vars(build_parser().parse_args(_join_negative_tuples(argv)))
    cmd = [ns.pop("cmd")]
    for key in ("jcmd", "tcmd"):
        if ns.get(key):
            cmd.append(ns.pop(key))
        ns.pop(key, None)
    fmt = ns.pop("fmt", "json")
    return CommandConfig(tuple(cmd), ns, fmt)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        sys.stderr.write(_error_json("UsageError", str(exc)))
        return EXIT_INPUT
    res = run(cfg)
    sys.stdout.write(res.out)
    sys.stderr.write(res.err)
    return res.code


if __name__ == "__main__":
    raise SystemExit(main())
