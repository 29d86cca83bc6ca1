"""
Main Entry Point for the Directional Code Toolkit

Run from command line:
    python -m src.main analyze --word NE2NE2N
    python -m src.main params --word NE2NE2N --lx 12 --ly 6
"""

import argparse
import os
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Add src to path if needed
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.config import build_scan_config, default_w_max
from src.errors import DirectionalCodeError
from src.orchestrator.pipeline import run_instance_workflow, scan
from src.tools.certificates import certify
from src.tools.gf2linalg import rank
from src.tools.layouts import ancilla_cosets, parse_layout, row_alternating_layout
from src.tools.pattern import (
    NotRealizable,
    admissible_rectangle_bound,
    ancilla_coset_count,
    difference_multiset,
    lattice_from_generators,
    odd_difference_set,
    offsets_distinct_on_torus,
    is_realizable,
    reconstruct_word,
    support_pattern,
)
from src.tools.qc import (
    RingSpec,
    collapse_k,
    predicted_k,
    qc_check_vectors,
    qc_cross_check,
    su_reduction_check,
)
from src.tools.report_formatter import (
    flatten,
    format_table,
    format_vec,
    format_vec_set,
    records_frame,
    render_report,
    to_csv,
    to_json,
    to_json_lines,
)
from src.tools.torus import CheckerboardTorus, build_code
from src.tools.word import canonical_word, format_word, is_closed, parse_word, word_orbit
from src.workers.evaluator import CSV_COLUMNS

# (payload for json/csv, text rendering, exit code)
Outcome = Tuple[Dict[str, Any], str, int]

OFFSET_PATTERN = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
COLLAPSE_COLUMNS = ["d", "lx", "ly", "closed_form_k", "qc_k", "direct_k", "agree"]


def _torus_or_none(args: argparse.Namespace) -> Optional[CheckerboardTorus]:
    if args.lx is None and args.ly is None:
        return None
    if args.lx is None or args.ly is None:
        raise ValueError("--lx and --ly must be given together")
    return CheckerboardTorus(args.lx, args.ly)


def cmd_analyze(args: argparse.Namespace) -> Outcome:
    """Support pattern, differences, lattice and cosets of a word."""
    word = parse_word(args.word)
    pattern = support_pattern(word)
    diffs = difference_multiset(pattern)
    odd = odd_difference_set(diffs)
    lattice = lattice_from_generators(odd)
    notes: List[str] = []
    cosets: Optional[int] = None
    try:
        cosets = ancilla_coset_count(lattice)
    except DirectionalCodeError as e:
        notes.append(f"degenerate lattice: {e}")
    bound = admissible_rectangle_bound(pattern)

    payload: Dict[str, Any] = {
        "word": format_word(word),
        "raw": word.raw,
        "length": len(word),
        "offsets": [list(q) for q in pattern.offsets],
        "difference_multiset": [[v[0], v[1], m] for v, m in sorted(diffs.entries.items())],
        "odd_differences": [list(v) for v in sorted(odd)],
        "lattice": {
            "rank": lattice.lattice_rank,
            "basis": [list(v) for v in lattice.basis],
            "index": lattice.index,
        },
        "ancilla_cosets": cosets,
        "admissible_rectangle": list(bound),
        "notes": notes,
    }
    sections = [
        ("Support Pattern", [", ".join(format_vec(q) for q in pattern.offsets)]),
        ("Odd-Multiplicity Differences", [format_vec_set(odd) if odd else "{}"]),
        (
            "Lattice",
            [
                f"rank:    {lattice.lattice_rank}",
                f"basis:   {format_vec_set(lattice.basis) if lattice.basis else '{}'}",
                f"index:   {lattice.index if lattice.index is not None else 'infinite'}",
                f"cosets:  {cosets if cosets is not None else 'n/a'}",
            ],
        ),
        ("Admissibility", [f"minimum rectangle (conservative): {bound[0]} x {bound[1]}"]),
    ]

    torus = _torus_or_none(args)
    if torus is not None:
        torus_info: Dict[str, Any] = {
            "lx": torus.lx,
            "ly": torus.ly,
            "offsets_distinct": offsets_distinct_on_torus(pattern, torus.lx, torus.ly),
        }
        lines = [f"offsets distinct on {torus}: {torus_info['offsets_distinct']}"]
        try:
            labels, membership = ancilla_cosets(torus, lattice)
            counts = [membership.count(i) for i in range(len(labels))]
            torus_info["cosets"] = [{"label": list(l), "ancillas": c} for l, c in zip(labels, counts)]
            lines += [f"coset {format_vec(l)}: {c} ancillas" for l, c in zip(labels, counts)]
        except DirectionalCodeError as e:
            torus_info["cosets"] = None
            notes.append(str(e))
            lines.append(f"cosets unavailable: {e}")
        payload["torus"] = torus_info
        sections.append((f"Torus {torus}", lines))

    sections.append(("Notes", notes))
    return payload, render_report(f"Word analysis: {format_word(word)}", sections), 0


def cmd_canon(args: argparse.Namespace) -> Outcome:
    """Canonical representative and orbit size."""
    word = parse_word(args.word)
    include_cyclic = not args.no_cyclic
    canonical = canonical_word(word, include_cyclic)
    orbit = word_orbit(word, include_cyclic)
    closed = is_closed(word)
    payload = {
        "word": format_word(word),
        "canonical": format_word(canonical),
        "canonical_raw": canonical.raw,
        "orbit_size": len(orbit),
        "include_cyclic": include_cyclic,
        "closed": closed,
    }
    lines = [
        f"canonical:   {format_word(canonical)} ({canonical.raw})",
        f"orbit size:  {len(orbit)}",
        f"cyclic:      {'included' if include_cyclic else 'excluded'}",
        f"closed:      {closed}",
    ]
    if include_cyclic and not closed:
        payload["warning"] = "open route: cyclic shifts change the support pattern"
        lines.append("warning:     open route, cyclic shifts change the support pattern")
    return payload, render_report(f"Canonical form: {format_word(word)}", [("Result", lines)]), 0


def _parse_offsets(text: str) -> List[Tuple[int, int]]:
    offsets = [(int(x), int(y)) for x, y in OFFSET_PATTERN.findall(text)]
    leftover = OFFSET_PATTERN.sub("", text).replace(",", " ").strip()
    if leftover or not offsets:
        raise ValueError(f"could not parse offsets from {text!r}; expected e.g. '(0,1) (1,2)'")
    return offsets


def cmd_realize(args: argparse.Namespace) -> Outcome:
    """Reconstruct a word from ordered offsets, or search for one covering an offset set."""
    offsets = _parse_offsets(" ".join(args.offsets))
    if args.ordered:
        result = reconstruct_word(offsets)
        ordering = offsets
    else:
        found = is_realizable(offsets, max_size=args.max_size)
        result = found if isinstance(found, NotRealizable) else found.word
        ordering = [] if isinstance(found, NotRealizable) else list(found.ordering)

    if isinstance(result, NotRealizable):
        payload = {"realizable": False, "reason": result.reason, "position": result.position}
        return payload, str(result) + "\n", 1
    payload = {
        "realizable": True,
        "word": format_word(result),
        "raw": result.raw,
        "ordering": [list(q) for q in ordering],
    }
    return payload, format_word(result) + "\n", 0


def _layout_for(args: argparse.Namespace, word, torus: CheckerboardTorus):
    lattice = lattice_from_generators(odd_difference_set(difference_multiset(support_pattern(word))))
    return parse_layout(args.layout, torus, lattice if args.layout.startswith("coset:") else None)


def cmd_build(args: argparse.Namespace) -> Outcome:
    """Check rows of H_X and H_Z with their ancilla anchors."""
    word = parse_word(args.word)
    torus = CheckerboardTorus(args.lx, args.ly)
    code = build_code(word, torus, _layout_for(args, word, torus), strict_wrap=args.strict_wrap)
    payload = code.as_dict()
    lines = [f"X{i} @ {format_vec(a)}: {row}" for i, (a, row) in enumerate(zip(code.x_anchors, payload["hx"]))]
    lines += [f"Z{i} @ {format_vec(a)}: {row}" for i, (a, row) in enumerate(zip(code.z_anchors, payload["hz"]))]
    title = f"Code {format_word(word)} on {torus} ({code.layout.descriptor})"
    return payload, render_report(title, [("Check Rows (data indices)", lines)]), 0


def cmd_params(args: argparse.Namespace) -> Outcome:
    """Run the instance workflow; exit 1 when the layout does not commute."""
    # input errors keep their own exit codes instead of a generic state error
    word = parse_word(args.word)
    _layout_for(args, word, CheckerboardTorus(args.lx, args.ly))
    final = run_instance_workflow(
        args.word, args.lx, args.ly, args.layout, args.wmax, args.strict_wrap, args.verbose
    )
    if final.get("error"):
        raise DirectionalCodeError(final["error"])
    report = dict(final["report"])
    if args.verbose:
        report["log"] = list(final.get("log", []))
    lines = [
        f"n = {report['n']}",
        f"checks: {report['x_checks']} X, {report['z_checks']} Z",
        f"commutes: {report['commutes']}",
    ]
    if "k" in report:
        lines += [
            f"k = {report['k']} (ranks {report['rank_hx']}, {report['rank_hz']}; "
            f"dependencies {report['k_dependencies']})",
            f"dX = {report['dX']}, dZ = {report['dZ']} (screen up to weight {report['w_max']})",
        ]
    title = f"Parameters: {report['word']} on {report['lx']}x{report['ly']} ({report['layout']})"
    text = render_report(title, [("Code", lines)])
    return report, text, 0 if report["commutes"] else 1


def cmd_qc(args: argparse.Namespace) -> Outcome:
    """QC check vectors, predicted k and the cross-check against direct ranks."""
    word = parse_word(args.word)
    torus = CheckerboardTorus(args.lx, args.ly)
    ring = RingSpec.for_torus(torus)
    x_vector, z_vector = qc_check_vectors(word, ring)
    su = su_reduction_check(word, ring)
    check = qc_cross_check(word, torus, ring)
    k = predicted_k(word, ring)
    payload = {
        "word": format_word(word),
        "ring": [ring.a, ring.b],
        "x_vector": x_vector.as_dict(),
        "z_vector": z_vector.as_dict(),
        "predicted_k": k,
        "su_reduction": su.as_dict(),
        "cross_check": check.as_dict(),
    }
    sections = [
        ("Ring", [f"F2[u,v]/(u^{ring.a} - 1, v^{ring.b} - 1)"]),
        (
            "Check Vectors",
            [
                f"h0 = {x_vector.h0}",
                f"h1 = {x_vector.h1}",
                f"g0 = {z_vector.h0}",
                f"g1 = {z_vector.h1}",
            ],
        ),
        (
            "Dependencies",
            [
                f"dim Ann(h0,h1) = {check.ann_x}",
                f"dim Ann(g0,g1) = {check.ann_z}",
                f"predicted k = {k}",
            ],
        ),
        (
            "S_u Reduction",
            [f"S_u*h0 = {su.su_h0}", f"S_u*h1 = {su.su_h1}", f"S_u*(1+v+v^2) = {su.su_target}"]
            + [f"discrepancy: {d}" for d in su.discrepancies],
        ),
        (
            "Cross-Check",
            [
                f"left kernel dims (direct): {check.left_kernel_x}, {check.left_kernel_z}",
                f"verdict: {'PASS' if check.passed else 'FAIL'}",
            ],
        ),
    ]
    return payload, render_report(f"QC reduction: {format_word(word)} on {torus}", sections), 0 if check.passed else 1


def collapse_row(d: int) -> Dict[str, Any]:
    closed = collapse_k(d)
    torus = CheckerboardTorus(2 * d, d)
    word = parse_word("NE2NE2N")
    qc_k = predicted_k(word, RingSpec.for_torus(torus))
    code = build_code(word, torus, row_alternating_layout(torus))
    direct = torus.n - rank(code.hx) - rank(code.hz)
    return {
        "d": d,
        "lx": torus.lx,
        "ly": torus.ly,
        "closed_form_k": closed,
        "qc_k": qc_k,
        "direct_k": direct,
        "agree": closed == qc_k == direct,
    }


def cmd_collapse(args: argparse.Namespace) -> Outcome:
    """Closed-form, QC and direct k of the case word on (2d, d) tori."""
    rows = [collapse_row(d) for d in args.d_values]
    frame = records_frame(rows, COLLAPSE_COLUMNS)
    agree = all(r["agree"] for r in rows)
    payload = {"rows": rows, "all_agree": agree}
    text = render_report("Dimension collapse: NE2NE2N on (2d, d)", [("Table", format_table(frame).splitlines())])
    return payload, text, 0 if agree else 1


def cmd_certify(args: argparse.Namespace) -> Outcome:
    """Finite k and distance certificates for the case word."""
    word = parse_word(args.word)
    report = certify(word, args.m)
    payload = report.as_dict()
    relation_lines = [
        f"{r.kind} rows with anchor y mod 6 in {sorted(r.residues)}: {len(r.rows)} rows, "
        f"sum {'= 0' if r.sums_to_zero else '!= 0'}"
        for r in report.dependencies.x_relations + report.dependencies.z_relations
    ]
    motif_lines = [
        f"{w.pauli} motif at {format_vec(w.site)}: weight {w.weight}, "
        f"{'logical' if w.nontrivial else 'stabilizer'}"
        for w in report.motifs
    ]
    sections = [("Dependencies", relation_lines), ("Commuting Motifs", motif_lines or ["none found"])]
    text = render_report(f"Certificates: {format_word(word)}, m = {args.m}", sections, footer=report.conclusion)
    ok = report.k_certified and report.d_certified
    return payload, text, 0 if ok else 1


def cmd_scan(args: argparse.Namespace) -> Tuple[str, int]:
    """Scan table in the requested format; the header alone for an empty range."""
    overrides = {
        "min_len": args.min_len,
        "max_len": args.max_len,
        "lx": args.lx,
        "ly": args.ly,
        "layout_rule": args.layout,
        "w_max": args.wmax,
        "include_cyclic": False if args.no_cyclic else None,
        "strict_wrap": True if args.strict_wrap else None,
        "no_backtrack": False if args.allow_backtrack else None,
        "fix_first_n": False if args.any_first_letter else None,
        "distinct_offsets": True if args.distinct_offsets else None,
        "workers": args.workers,
    }
    cfg = build_scan_config(args.config, overrides)
    records = scan(cfg, verbose=args.verbose)
    columns = CSV_COLUMNS + (["layout"] if cfg.layout_rule == "coset" else [])
    frame = records_frame([r.model_dump() for r in records], columns)
    if args.format == "csv":
        return to_csv(frame), 0
    if args.format == "json":
        return to_json_lines(frame), 0
    title = f"Scan: lengths {cfg.min_len}..{cfg.max_len} on {cfg.lx}x{cfg.ly} ({cfg.layout_rule})"
    return render_report(title, [("Records", format_table(frame).splitlines())]), 0


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json", "csv"], default="text", help="Output format (default: text)")
    p.add_argument("--out", type=str, default=None, help="Write output to this file instead of stdout")
    p.add_argument("--verbose", "-v", action="store_true", help="Print stage progress to stderr")


def _add_torus_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--lx", type=int, required=required, help="Torus width (even)")
    p.add_argument("--ly", type=int, required=required, help="Torus height (even)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m src.main",
        description="Directional Code Toolkit - CSS codes from direction words on checkerboard tori",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    python -m src.main analyze --word NE2N
    python -m src.main params --word NE2NE2N --lx 24 --ly 12 --wmax 4
    python -m src.main qc --word NE2NE2N --lx 12 --ly 6 --format json
    python -m src.main collapse 6 8 10 12 14 16 18
    python -m src.main scan --lx 16 --ly 8 --min-len 4 --max-len 8 --no-cyclic --format csv --out scan.csv
    python -m src.main certify --m 2
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Support pattern, odd differences, lattice and cosets of a word")
    p.add_argument("--word", "-w", required=True)
    _add_torus_flags(p, required=False)
    _add_output_flags(p)

    p = sub.add_parser("canon", help="Canonical representative of a word's symmetry class")
    p.add_argument("--word", "-w", required=True)
    p.add_argument("--no-cyclic", action="store_true", help="Quotient without cyclic shifts")
    _add_output_flags(p)

    p = sub.add_parser("realize", help="Find a word whose support pattern equals the given offsets")
    p.add_argument("offsets", nargs="+", help="Offsets such as '(0,1) (1,2)'")
    p.add_argument("--ordered", action="store_true", help="Treat offsets as Q_1..Q_w in route order")
    p.add_argument("--max-size", type=int, default=10, help="Search bound on the offset set size")
    _add_output_flags(p)

    for name, helptext in (
        ("build", "Build H_X and H_Z (JSON: per-row column indices)"),
        ("params", "Exact n, k and the distance screen of one instance"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--word", "-w", required=True)
        _add_torus_flags(p, required=True)
        p.add_argument("--layout", default="row-alt", help="row-alt or coset:<bits> (0 = X, 1 = Z)")
        p.add_argument("--strict-wrap", action="store_true", help="Reject offsets colliding on the torus")
        if name == "params":
            p.add_argument("--wmax", type=int, default=None, help="Distance screen cutoff (default: env or 4)")
        _add_output_flags(p)

    p = sub.add_parser("qc", help="Quasi-cyclic check vectors, annihilators and predicted k")
    p.add_argument("--word", "-w", required=True)
    _add_torus_flags(p, required=True)
    _add_output_flags(p)

    p = sub.add_parser("collapse", help="k of NE2NE2N on (2d, d) tori: closed form, QC and direct")
    p.add_argument("d_values", nargs="*", type=int, default=list(range(6, 19, 2)), help="Even d values")
    _add_output_flags(p)

    p = sub.add_parser("certify", help="Dependency and motif certificates on the 12m x 6m torus")
    p.add_argument("--word", "-w", default="NE2NE2N")
    p.add_argument("--m", type=int, required=True)
    _add_output_flags(p)

    p = sub.add_parser("scan", help="Symmetry-quotiented word scan")
    p.add_argument("--config", type=str, default=None, help="key = value config file")
    p.add_argument("--min-len", type=int, default=None)
    p.add_argument("--max-len", type=int, default=None)
    _add_torus_flags(p, required=False)
    p.add_argument("--layout", choices=["row-alt", "coset"], default=None, help="Layout rule")
    p.add_argument("--wmax", type=int, default=None)
    p.add_argument("--no-cyclic", action="store_true", help="Quotient without cyclic shifts")
    p.add_argument("--strict-wrap", action="store_true")
    p.add_argument("--allow-backtrack", action="store_true")
    p.add_argument("--any-first-letter", action="store_true")
    p.add_argument("--distinct-offsets", action="store_true")
    p.add_argument("--workers", type=int, default=None, help="Parallel evaluations (default: env or 1)")
    _add_output_flags(p)

    return parser


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "analyze": cmd_analyze,
    "canon": cmd_canon,
    "realize": cmd_realize,
    "build": cmd_build,
    "params": cmd_params,
    "qc": cmd_qc,
    "collapse": cmd_collapse,
    "certify": cmd_certify,
}


def render(payload: Dict[str, Any], text: str, fmt: str) -> str:
    if fmt == "json":
        return to_json(payload)
    if fmt == "csv":
        if "rows" in payload:
            return to_csv(records_frame(payload["rows"], COLLAPSE_COLUMNS))
        return to_csv(flatten(payload))
    return text


def _write(output: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "wmax", "absent") is None and args.command == "params":
        args.wmax = default_w_max()

    try:
        if args.command == "scan":
            output, code = cmd_scan(args)
        else:
            payload, text, code = COMMANDS[args.command](args)
            output = render(payload, text, args.format)
        _write(output, args.out)
        return code
    except DirectionalCodeError as e:
        print(f"\n❌ Error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return e.exit_code
    except ValueError as e:
        print(f"\n❌ Error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
