"""Command-line front end: ``vertexglue vertex | glue | verify``.

Exit codes: 0 success, 1 a proved check failed (or a conjecture check under
--strict), 2 bad arguments or unparsable input, 3 invalid diagram.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .amplitude import TruncationConfig
from .checks import (SUITES, suite_adkmv, suite_bogoliubov, suite_boson_fermion, suite_kappa, suite_kp,
                     suite_lemma_gluing)
from .diagram import (PRESETS, DiagramError, Table, ToricDiagram, compare_tables, fermionic_partition_function,
                      partition_function, preset)
from .partition import parse_partition
from .vertex import Framing, framed_vertex


class UsageError(Exception):
    pass


def _framing(text: str) -> Framing:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"framing must be three comma-separated integers, got {text!r}") from None
    if len(parts) != 3:
        raise UsageError(f"framing must have three entries, got {text!r}")
    return Framing(*parts)


def _partition(text: str, what: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _truncation(args) -> TruncationConfig:
    try:
        return TruncationConfig.of(energy=args.energy, q_degree=args.qdeg, theta_window=args.theta_window)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload: dict, text_lines: list):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


# --- vertex ----------------------------------------------------------------

def cmd_vertex(args) -> int:
    mus = [_partition(args.mu, "--mu"), _partition(args.nu, "--nu"), _partition(args.la, "--la")]
    a = _framing(args.framing)
    value = framed_vertex(*mus, a).render()
    payload = {"command": "vertex", "config": {"mu": [m.render() for m in mus], "framing": list(a)},
               "value": value}
    _emit(args, payload, [value])
    return 0


# --- glue ------------------------------------------------------------------

def _load_diagram(args) -> ToricDiagram:
    if args.diagram and args.preset:
        raise UsageError("give either --diagram or --preset, not both")
    if args.diagram:
        return ToricDiagram.load(args.diagram)
    name = args.preset or "conifold"
    if name == "xp" and args.p is None:
        raise UsageError("preset xp needs --p")
    return preset(name, args.p)


def _table_rows(table: Table, labels) -> list:
    rows = []
    for key, amp in table.items():
        rows.append({"boundary": {lab: mu.render() for lab, mu in zip(labels, key)}, "value": amp.render()})
    return rows


def _row_text(row) -> str:
    b = " ".join(f"{k}={v}" for k, v in row["boundary"].items())
    return f"{b} : {row['value']}"


def cmd_glue(args) -> int:
    cfg = _truncation(args)
    d = _load_diagram(args)
    labels = [o.label for o in d.outer]
    payload = {"command": "glue", "config": {"diagram": args.diagram, "preset": None if args.diagram else (args.preset or "conifold"),
                                             "p": args.p, "mode": args.mode, "phase": args.phase,
                                             "truncation": cfg.to_dict()},
               "diagram": d.to_dict()}
    lines = [f"# truncation energy={cfg.energy} q_degree={cfg.q_degree} theta_window={cfg.theta_window}"]
    bos = fer = None
    if args.mode in ("bosonic", "both"):
        bos = partition_function(d, cfg)
        payload["bosonic"] = _table_rows(bos, labels)
        lines.append("# bosonic")
        lines += [_row_text(r) for r in payload["bosonic"]]
    if args.mode in ("fermionic", "both"):
        res = fermionic_partition_function(d, cfg, args.phase)
        fer = res.table
        payload["fermionic"] = _table_rows(fer, labels)
        payload["loops"] = res.loops
        lines.append("# fermionic (Theta^0)")
        lines += [_row_text(r) for r in payload["fermionic"]]
        if args.dump_theta:
            payload["raw_state"] = _state_rows(res.raw, labels, cfg)
            lines.append("# glued state before normalization, all Theta sectors")
            lines.append(res.raw.within(cfg).dump())
    if bos is not None and fer is not None:
        diff = compare_tables(bos, fer, cfg.energy)
        disc = [{"boundary": {lab: mu.render() for lab, mu in zip(labels, k)},
                 "difference": (x - y).render()} for k, x, y in diff]
        payload["discrepancy"] = "0" if not disc else disc
        lines.append("# discrepancy: 0" if not disc else f"# discrepancy: {len(disc)} entries differ")
        for row in disc:
            lines.append(" ".join(f"{k}={v}" for k, v in row["boundary"].items()) + f" : {row['difference']}")
        if disc:
            _emit(args, payload, lines)
            return 1
    _emit(args, payload, lines)
    return 0


def _state_rows(state, labels, cfg) -> list:
    rows = []
    for b, a in state.within(cfg).items():
        rows.append({"charges": [c.charge for c in b],
                     "boundary": {lab: c.shape.render() for lab, c in zip(labels, b)},
                     "value": a.render()})
    return rows


# --- verify ----------------------------------------------------------------

def cmd_verify(args) -> int:
    s = args.suite
    if s == "kappa":
        rep = suite_kappa(args.max if args.max is not None else 8)
    elif s == "lemma-gluing":
        rep = suite_lemma_gluing(args.max if args.max is not None else 5, phase=args.phase)
    elif s == "adkmv":
        rep = suite_adkmv(args.legs, args.max, args.strict)
    elif s == "bogoliubov":
        rep = suite_bogoliubov(args.count if args.count is not None else 10, args.seed,
                               args.max if args.max is not None else 4)
    elif s == "kp":
        rep = suite_kp(args.count if args.count is not None else 20, args.seed,
                       args.max if args.max is not None else 5)
    elif s == "boson-fermion":
        rep = suite_boson_fermion(args.max if args.max is not None else 4)
    else:  # argparse restricts the choices
        raise UsageError(f"unknown suite {s!r}")
    rep = {"command": "verify", "config": {"suite": s, "seed": args.seed}, **rep}
    lines = []
    for c in rep["checks"]:
        lines.append(f"{c['status'].upper():8s} {c['name']}")
    lines.append(f"{'PASS' if rep['passed'] else 'FAIL'} suite {s}")
    if args.format == "json" or args.json:
        sys.stdout.write(json.dumps(rep, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return 0 if rep["passed"] else 1


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vertexglue", description="Topological vertex and fermionic gluing toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("vertex", help="evaluate the framed topological vertex")
    v.add_argument("--mu", default="", help="partition on leg 1, e.g. '2,1' (empty for none)")
    v.add_argument("--nu", default="", help="partition on leg 2")
    v.add_argument("--la", default="", help="partition on leg 3")
    v.add_argument("--framing", default="0,0,0", help="a1,a2,a3")
    common(v)
    v.set_defaults(func=cmd_vertex)

    g = sub.add_parser("glue", help="glue a toric diagram (file or preset)")
    g.add_argument("--diagram", help="diagram JSON file")
    g.add_argument("--preset", choices=PRESETS)
    g.add_argument("--p", type=int, help="parameter of the xp preset")
    g.add_argument("--energy", type=int, default=2, help="boundary size cutoff")
    g.add_argument("--qdeg", type=int, default=2, help="Q-degree cutoff")
    g.add_argument("--theta-window", type=int, default=2)
    g.add_argument("--mode", choices=("bosonic", "fermionic", "both"), default="both")
    g.add_argument("--phase", choices=("pairing", "shifted"), default="pairing",
                   help="sign convention of the gluing vectors")
    g.add_argument("--dump-theta", action="store_true", help="also dump every Theta sector of the glued state")
    common(g)
    g.set_defaults(func=cmd_glue)

    r = sub.add_parser("verify", help="run a verification suite")
    r.add_argument("suite", choices=SUITES)
    r.add_argument("--max", type=int, help="size or energy bound of the suite")
    r.add_argument("--legs", type=int, choices=(1, 2, 3), default=2, help="nonempty legs (adkmv)")
    r.add_argument("--count", type=int, help="random instances")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--strict", action="store_true", help="let conjecture checks fail the exit code")
    r.add_argument("--phase", choices=("pairing", "shifted"), default="pairing")
    r.add_argument("--json", action="store_true", help="same as --format json")
    common(r)
    r.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DiagramError as exc:
        print("invalid diagram:", file=sys.stderr)
        for prob in exc.problems:
            print(f"  - {prob}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
