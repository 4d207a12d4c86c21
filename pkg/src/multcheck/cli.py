"""Command-line front end.

Exit status: 0 when the computation succeeded and every checked bound holds,
1 when some checked bound or invariant fails (the report is still printed),
2 for unusable input and 3 when a capacity guard stops the computation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .calculus import (
    ResolutionShape,
    basic_double_link,
    bdl_cancellation_ranks,
    bdl_hypotheses,
    cancel_splittings,
    cone_bdl,
)
from .checker import check_curve, check_cyclic, check_dubreil, check_module, check_quasipure, sharp_family
from .corpus import KINDS, Limits, corpus_kind, run_instance
from .determinantal import (
    det_check_conjecture,
    degree_nested,
    degree_recursive,
    en_betti_table,
    en_extremal_shifts,
    load_degree_matrix,
)
from .errors import CapacityError, InputError, MultcheckError
from .hilbert import HilbertData, hilbert_numerator
from .monomial import parse_ideal, parse_monomial
from .resolution import BettiTable, load_betti_json, parse_betti, resolve

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3

log = logging.getLogger("multcheck")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_ideal(path: str):
    return parse_ideal(_read(path), path)


def _load_betti(path: str) -> tuple[BettiTable, int]:
    text = _read(path)
    if text.lstrip().startswith("{"):
        try:
            table, n = load_betti_json(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from None
        if n is None:
            raise InputError(f"{path}: Betti JSON needs a 'vars' field")
        return table, n
    return parse_betti(text, path)


def _emit(args, payload: dict, pretty: str) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(pretty)


def _report_lines(report) -> str:
    data = report.to_json()
    keys = ["context", "classification", "codim", "cohen_macaulay", "lower", "e", "upper",
            "lower_holds", "upper_holds", "lower_sharp", "upper_sharp"]
    keys += [k for k in data if k not in keys and k not in ("m", "M", "findings")]
    lines = [f"{k}: {data[k]}" for k in keys if data[k] is not None]
    if report.m:
        lines.append(f"m: {' '.join(map(str, report.m))}")
        lines.append(f"M: {' '.join(map(str, report.M))}")
    lines += [f"finding: {f}" for f in report.findings]
    return "\n".join(lines)


def _status(report) -> int:
    return EXIT_OK if report.all_hold else EXIT_VIOLATED


# -- verbs ---------------------------------------------------------------------------

def cmd_resolve(args) -> int:
    ideal, _ = _load_ideal(args.ideal)
    table = resolve(ideal, args.method)
    st = table.stats()
    payload = {
        "betti": table.to_json(ideal.n),
        "m": list(st.m),
        "M": list(st.M),
        "pure": st.is_pure,
        "quasi_pure": st.is_quasi_pure,
        "regularity": st.regularity,
    }
    _emit(args, payload, table.format())
    return EXIT_OK


def cmd_hilbert(args) -> int:
    ideal, _ = _load_ideal(args.ideal)
    h = hilbert_numerator(ideal)
    pretty = "\n".join([
        f"numerator: {' '.join(map(str, h.numerator)) or '0'}",
        f"dim: {h.dim}",
        f"codim: {h.codim}",
        f"multiplicity: {h.multiplicity}",
        f"h-vector: {' '.join(map(str, h.h_vector))}",
    ])
    _emit(args, h.to_json(), pretty)
    return EXIT_OK


def _table_source(args) -> tuple[BettiTable, int, HilbertData | None]:
    if bool(args.ideal) == bool(args.betti):
        raise InputError("give exactly one of --ideal or --betti")
    if args.ideal:
        ideal, _ = _load_ideal(args.ideal)
        return resolve(ideal, args.method), ideal.n, hilbert_numerator(ideal)
    table, n = _load_betti(args.betti)
    return table, n, None


def cmd_check_conj1(args) -> int:
    table, n, hilbert = _table_source(args)
    if hilbert is None:
        hilbert = HilbertData.from_numerator(table.euler_polynomial(), n)
    report = check_cyclic(table, hilbert)
    _emit(args, report.to_json(), _report_lines(report))
    return _status(report)


def cmd_check_conj2(args) -> int:
    table, n, _ = _table_source(args)
    report = check_module(table, n)
    _emit(args, report.to_json(), _report_lines(report))
    return _status(report)


def cmd_check_quasipure(args) -> int:
    table, n, _ = _table_source(args)
    report = check_quasipure(table, n)
    _emit(args, report.to_json(), _report_lines(report))
    ok = report.all_hold and report.extras["vandermonde_identity"]
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_check_curve(args) -> int:
    report = check_curve(args.deg, args.m[0], args.m[1], args.M[0], args.M[1], args.ka)
    payload = report.to_json()
    pretty = _report_lines(report)
    ok = report.all_hold
    if args.nu is not None:
        dubreil = check_dubreil(args.nu, args.m[0], args.nu_ka)
        payload["dubreil_holds"] = dubreil
        pretty += f"\ndubreil_holds: {dubreil}"
        ok = ok and dubreil
    _emit(args, payload, pretty)
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_det(args) -> int:
    D = load_degree_matrix(_read(args.matrix))
    if args.action == "degree":
        e = degree_nested(D)
        if degree_recursive(D) != e:
            raise AssertionError("nested and recursive degree formulas disagree")
        _emit(args, {"degree": e, "t": D.t, "c": D.c}, str(e))
        return EXIT_OK
    if args.action == "shifts":
        m, M = en_extremal_shifts(D)
        _emit(args, {"m": list(m), "M": list(M)}, f"m: {' '.join(map(str, m))}\nM: {' '.join(map(str, M))}")
        return EXIT_OK
    if args.action == "betti":
        table = en_betti_table(D)
        _emit(args, {"betti": table.to_json(D.t + D.c - 1)}, table.format())
        return EXIT_OK
    report = det_check_conjecture(D)
    payload = report.to_json()
    pretty = "\n".join(f"{k}: {v}" for k, v in payload.items() if k != "context")
    _emit(args, payload, pretty)
    ok = report.lower_holds and report.upper_holds and report.equivalence_holds
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_bdl(args) -> int:
    I, names = _load_ideal(args.small)
    J, names_j = _load_ideal(args.big)
    if names != names_j:
        raise InputError("both ideals must live in the same ring (identical 'ring' lines)")
    L = parse_monomial(args.form, names, "--form", 1)
    link = basic_double_link(I, J, L)
    BI, BJ, BJ1 = (resolve(x, args.method) for x in (link.I, link.J, link.J1))
    cone = cone_bdl(ResolutionShape.from_betti(BI), ResolutionShape.from_betti(BJ), link.d)
    ranks = None if args.greedy else bdl_cancellation_ranks(link.I, link.J, link.d)
    shape = cancel_splittings(cone, ranks)
    predicted = shape.to_betti()
    c = hilbert_numerator(link.I).codim
    payload = {
        "J1": link.J1.format(names),
        "d": link.d,
        "cone": cone.untagged().to_betti().to_json(I.n),
        "predicted": predicted.to_json(I.n),
        "exact": shape.exact,
        "direct": BJ1.to_json(I.n),
        "matches_direct": predicted == BJ1,
    }
    if BI.pd >= c and BJ.pd >= c + 1 and BJ1.pd >= c + 1:
        payload["hypotheses"] = bdl_hypotheses(BI.stats(), BJ.stats(), BJ1.stats(), link.d, c).to_json()
    pretty = "\n".join([
        f"J1 = ({', '.join(g.format(names) for g in link.J1.generators)})",
        "mapping cone after cancellation:",
        predicted.format(),
        f"exact: {shape.exact}",
        f"matches direct computation: {predicted == BJ1}",
    ])
    if "hypotheses" in payload:
        for name, values in payload["hypotheses"].items():
            pretty += f"\n{name}: " + " ".join(f"{i}:{'T' if v else 'F'}" for i, v in values.items())
    _emit(args, payload, pretty)
    return EXIT_OK if predicted == BJ1 else EXIT_VIOLATED


def cmd_sharp_family(args) -> int:
    report = sharp_family(args.t, args.d)
    pretty = "\n".join([
        f"deg C = {report.degree}",
        f"dim K_A = {report.dim_ka}",
        f"m1 = {report.m1}, m2 = {report.m2}",
        report.identity,
    ])
    _emit(args, report.to_json(), pretty)
    return EXIT_OK if report.identity_holds else EXIT_VIOLATED


def cmd_corpus(args) -> int:
    if args.count < 0:
        raise InputError("--count must be non-negative")
    limits = Limits(
        max_vars=args.max_vars, max_gens=args.max_gens, max_degree=args.max_degree,
        max_t=args.max_t, max_c=args.max_c, max_entry=args.max_entry,
    )
    status = EXIT_OK
    for index in range(args.count):
        kind = corpus_kind(args.kind, index)
        try:
            record = run_instance(args.seed, kind, index, limits)
        except CapacityError as exc:
            log.warning("skipping %s instance %d: %s", kind, index, exc)
            record = {"kind": kind, "index": index, "skipped": str(exc), "ok": True}
        if not record["ok"]:
            status = EXIT_VIOLATED
        print(json.dumps(record, separators=(",", ":")), flush=True)
    return status


# -- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multcheck", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    method = argparse.ArgumentParser(add_help=False)
    method.add_argument("--method", choices=("koszul", "taylor"), default="koszul")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("resolve", parents=[common, method], help="graded Betti table of R/I")
    p.add_argument("--ideal", required=True, metavar="PATH")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series data of R/I")
    p.add_argument("--ideal", required=True, metavar="PATH")
    p.set_defaults(func=cmd_hilbert)

    for verb, func, text in (
        ("check-conj1", cmd_check_conj1, "bounds prod m_i / c! <= e <= prod M_i / c! for R/I"),
        ("check-conj2", cmd_check_conj2, "upper bound prod (M_i - m_0) / c! for a torsion module"),
        ("check-quasipure", cmd_check_quasipure, "two-sided bounds for quasi-pure Cohen-Macaulay tables"),
    ):
        p = sub.add_parser(verb, parents=[common, method], help=text)
        p.add_argument("--ideal", metavar="PATH")
        p.add_argument("--betti", metavar="PATH", help="'pd P vars N' text or JSON")
        p.set_defaults(func=func)

    p = sub.add_parser("check-curve", parents=[common], help="degree bounds for a curve in P^3")
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--m", type=int, nargs=2, required=True, metavar=("m1", "m2"), help="m_1 m_2")
    p.add_argument("--M", type=int, nargs=2, required=True, metavar=("M1", "M2"), help="M_1 M_2")
    p.add_argument("--ka", type=int, required=True, help="dim_k K_A")
    p.add_argument("--nu", type=int, help="nu(C); enables the Dubreil-type check")
    p.add_argument("--nu-ka", type=int, default=0, help="nu(K_A) (default 0)")
    p.set_defaults(func=cmd_check_curve)

    p = sub.add_parser("det", parents=[common], help="standard determinantal ideals from a degree matrix")
    p.add_argument("action", choices=("degree", "shifts", "betti", "check"))
    p.add_argument("--matrix", required=True, metavar="PATH")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("bdl", parents=[common, method], help="basic double link J1 = I + L J")
    p.add_argument("--small", required=True, metavar="PATH", help="ideal I")
    p.add_argument("--big", required=True, metavar="PATH", help="ideal J containing I")
    p.add_argument("--form", required=True, help="monomial L, e.g. 'x^2'")
    p.add_argument("--greedy", action="store_true", help="maximal cancellation instead of exact ranks")
    p.set_defaults(func=cmd_bdl)

    p = sub.add_parser("sharp-family", parents=[common], help="the curve (x0,x1)^t + (F)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_sharp_family)

    p = sub.add_parser("corpus", help="seeded random instances with all cross-checks (JSON lines)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--kind", choices=KINDS + ("mixed",), default="ideal")
    limits = Limits()
    for name in ("max_vars", "max_gens", "max_degree", "max_t", "max_c", "max_entry"):
        p.add_argument("--" + name.replace("_", "-"), type=int, default=getattr(limits, name))
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"multcheck: capacity guard: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except MultcheckError as exc:
        print(f"multcheck: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
