"""Command-line interface.

Conventions: label-level commands take --nn, the dimension 2n of the ambient
space; flag and verification commands take --cycles, a comma-separated cycle
type summing to n.  A cycle type with parts p_1..p_sigma corresponds to
Jordan blocks of the doubled sizes 2*p_1..2*p_sigma, so `phi --cycles 2,1`
reports a label of total 6 while `labels --nn 6` lists labels of that total.

Exit status: 0 on success (and on verified runs), 1 when a verification
fails, 2 on usage errors.

Environment overrides: CHAR2UNI_CACHE_DIR (report cache directory),
CHAR2UNI_THREADS (worker count), CHAR2UNI_BACKEND (kernel selection).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .class_labels import (
    CycleType,
    SpLabel,
    closure_leq,
    enumerate_sp_labels,
    hasse_diagram,
    label_from_cycle_type,
)
from .flags import basis_names, build_flag_pair, standard_space
from .harness import adapted_classes

ENV_CACHE = "CHAR2UNI_CACHE_DIR"
ENV_THREADS = "CHAR2UNI_THREADS"


@dataclass
class RunConfig:
    command: str
    nn: Optional[int] = None
    n: Optional[int] = None
    cycles: Optional[CycleType] = None
    form: str = "sp"
    fmt: str = "json"
    cache_dir: Optional[str] = None
    threads: int = 1
    label_a: Optional[SpLabel] = None
    label_b: Optional[SpLabel] = None


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _parse_label(parser: argparse.ArgumentParser, text: str) -> SpLabel:
    try:
        label = SpLabel.from_dict(json.loads(text))
    except (ValueError, KeyError, TypeError):
        parser.error("malformed label %r (expected JSON like "
                     "'{\"jordan\":[2,2],\"eps\":{\"2\":1}}')" % (text,))
    if not label.is_valid():
        parser.error("label %r is not a valid class label" % (text,))
    return label


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="char2uni",
        description="Unipotent classes of Sp(2n)/SO(2n) in characteristic 2: "
                    "labels, closure order and GF(2) verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("labels", help="enumerate class labels of total nn")
    p.add_argument("--nn", type=int, required=True, help="ambient dimension 2n")
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    p = sub.add_parser("closure", help="compare two labels in the closure order")
    p.add_argument("--a", required=True, help="label as JSON")
    p.add_argument("--b", required=True, help="label as JSON")
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    p = sub.add_parser("hasse", help="covering relation of the closure order")
    p.add_argument("--nn", type=int, required=True, help="ambient dimension 2n")
    p.add_argument("--format", dest="fmt", choices=("json", "dot"), default="json")

    p = sub.add_parser("phi", help="label attached to an elliptic cycle type "
                                   "(doubled parts, eps all 1)")
    p.add_argument("--cycles", required=True, help="comma-separated cycle type")
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    p = sub.add_parser("flags", help="build the flag pair of a cycle type")
    p.add_argument("--cycles", required=True)
    p.add_argument("--form", choices=("sp", "so"), default="sp")

    p = sub.add_parser("adapted", help="enumerate the flag coset and classify")
    p.add_argument("--cycles", required=True)
    p.add_argument("--form", choices=("sp", "so"), default="sp")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--cache", dest="cache_dir", default=None)
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    p = sub.add_parser("verify", help="run the closure-minimality checks")
    p.add_argument("--cycles", required=True)
    p.add_argument("--form", choices=("sp", "so"), default="sp")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--cache", dest="cache_dir", default=None)
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")

    p = sub.add_parser("describe-space", help="gram matrix and Q values of the "
                                              "standard space of rank n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--form", choices=("sp", "so"), default="sp")
    return parser


def _config_from_args(parser: argparse.ArgumentParser, args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.fmt = getattr(args, "fmt", "json")
    cfg.form = getattr(args, "form", "sp")

    if hasattr(args, "nn"):
        if args.nn < 2 or args.nn % 2 == 1:
            parser.error("--nn must be an even integer >= 2")
        cfg.nn = args.nn
    if hasattr(args, "n"):
        if args.n < 2:
            parser.error("--n must be >= 2")
        cfg.n = args.n
    if hasattr(args, "cycles"):
        try:
            cfg.cycles = CycleType.from_string(args.cycles)
        except ValueError as exc:
            parser.error(str(exc))
        if cfg.cycles.n < 2:
            parser.error("cycle type must sum to n >= 2")
        if cfg.form == "so" and cfg.cycles.sigma % 2 == 1:
            parser.error("--form so needs an even number of cycles")
    if hasattr(args, "cache_dir"):
        cfg.cache_dir = args.cache_dir or os.environ.get(ENV_CACHE) or None
    if hasattr(args, "threads"):
        if args.threads is not None:
            cfg.threads = args.threads
        else:
            cfg.threads = int(os.environ.get(ENV_THREADS, "1"))
        if cfg.threads < 1:
            parser.error("--threads must be >= 1")
    if hasattr(args, "a"):
        cfg.label_a = _parse_label(parser, args.a)
        cfg.label_b = _parse_label(parser, args.b)
        if cfg.label_a.jordan.total != cfg.label_b.jordan.total:
            parser.error("labels must have the same total")
    return cfg


def _cmd_labels(cfg: RunConfig) -> int:
    labels = enumerate_sp_labels(cfg.nn)
    if cfg.fmt == "text":
        for lab in labels:
            print(lab.pretty())
    else:
        print(_dumps([lab.to_dict() for lab in labels]))
    return 0


def _cmd_closure(cfg: RunConfig) -> int:
    leq = closure_leq(cfg.label_a, cfg.label_b)
    if cfg.fmt == "text":
        rel = "<=" if leq else "</="
        print("%s %s %s" % (cfg.label_a.pretty(), rel, cfg.label_b.pretty()))
    else:
        print(_dumps({
            "a": cfg.label_a.to_dict(),
            "b": cfg.label_b.to_dict(),
            "leq": leq,
        }))
    return 0


def _cmd_hasse(cfg: RunConfig) -> int:
    labels = enumerate_sp_labels(cfg.nn)
    covers = hasse_diagram(labels)
    if cfg.fmt == "dot":
        idx = {lab: i for i, lab in enumerate(labels)}
        lines = ["digraph closure {"]
        for i, lab in enumerate(labels):
            lines.append('  n%d [label="%s"];' % (i, lab.pretty()))
        for lo, hi in covers:
            lines.append("  n%d -> n%d;" % (idx[lo], idx[hi]))
        lines.append("}")
        print("\n".join(lines))
    else:
        idx = {lab: i for i, lab in enumerate(labels)}
        print(_dumps({
            "nodes": [lab.to_dict() for lab in labels],
            "edges": [[idx[lo], idx[hi]] for lo, hi in covers],
        }))
    return 0


def _cmd_phi(cfg: RunConfig) -> int:
    label = label_from_cycle_type(cfg.cycles)
    if cfg.fmt == "text":
        print(label.pretty())
    else:
        print(_dumps(label.to_dict()))
    return 0


def _cmd_flags(cfg: RunConfig) -> int:
    pair = build_flag_pair(cfg.cycles, with_q=(cfg.form == "so"))
    print(_dumps(pair.to_dict()))
    return 0


def _cmd_adapted(cfg: RunConfig) -> int:
    report = adapted_classes(cfg.cycles, cfg.form, threads=cfg.threads,
                             cache_dir=cfg.cache_dir)
    if cfg.fmt == "text":
        _print_report_text(report)
    else:
        sys.stdout.write(report.to_json_str())
    return 0


def _print_report_text(report) -> None:
    print("form=%s n=%d cycles=%s" % (report.form, report.cycle_type.n,
                                      list(report.cycle_type.parts)))
    print("coset size %d, classified unipotent members %d"
          % (report.coset_size, report.unipotent_count))
    print("phi label: %s" % report.phi_label.pretty())
    print("adapted labels (%d):" % len(report.adapted_labels))
    for lab in report.adapted_labels:
        print("  %s" % lab.pretty())


def _cmd_verify(cfg: RunConfig) -> int:
    report = adapted_classes(cfg.cycles, cfg.form, threads=cfg.threads,
                             cache_dir=cfg.cache_dir)
    verdicts = report.verdicts()
    ok = all(verdicts.values())
    if cfg.fmt == "json":
        sys.stdout.write(report.to_json_str())
    else:
        _print_report_text(report)
        theorem, bad = report.theorem_holds()
        if theorem:
            print("theorem: OK (phi adapted and closure-below all adapted labels)")
        elif report.phi_label not in report.adapted_labels:
            print("theorem: FAILED (phi label not adapted)")
        else:
            print("theorem: FAILED, labels not above phi: %s"
                  % ", ".join(x.pretty() for x in bad))
        print("unique minimum: %s" % ("OK" if verdicts["unique_min"] else "FAILED"))
        if "epsilon_forcing" in verdicts:
            print("epsilon forcing: %s"
                  % ("OK" if verdicts["epsilon_forcing"] else "FAILED"))
    return 0 if ok else 1


def _cmd_describe_space(cfg: RunConfig) -> int:
    space = standard_space(cfg.n, with_q=(cfg.form == "so"))
    obj = space.to_json()
    obj["basis"] = basis_names(cfg.n)
    print(_dumps(obj))
    return 0


_DISPATCH = {
    "labels": _cmd_labels,
    "closure": _cmd_closure,
    "hasse": _cmd_hasse,
    "phi": _cmd_phi,
    "flags": _cmd_flags,
    "adapted": _cmd_adapted,
    "verify": _cmd_verify,
    "describe-space": _cmd_describe_space,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(parser, args)
    return _DISPATCH[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
