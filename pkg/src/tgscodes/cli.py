"""Command-line front end: ``tgs <command> ...``.

Errors exit with status 2 and a single stderr line ``error: <kind>: <message>``.
Falsified claims are findings and never change the exit status.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import bounds as _bounds
from .algebra import AXIOM_NAMES, AXIOMS, Tgs, check_axioms, dump_document, load_tgs
from .claims import bundled_suite, run_suite, search_valid_tgs
from .codes import as_word, code_document, code_from_spec, code_params, format_real
from .decoder import coset_table_for, decode, decoding_radius, nearest_codeword, simulate_channel, stratification
from .errors import TgsError, UsageError
from .fixtures import (
    CODE_FIXTURES,
    DESCRIPTIONS,
    TGS_FIXTURES,
    load_code_spec,
    load_tgs_ref,
    verify_bundle,
    write_bundle,
)
from .ideals import annihilator, as_set, enumerate_k_ideals, ideal_lattice, is_prime, is_semiprime, minimal_nonzero_elements
from .quotient import build_quotient, quotient_report

FORMATS = ("text", "json", "csv")


def _json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _word(t, w) -> str:
    return "(" + ",".join(t.labels(w)) + ")"


def _verdict(v) -> str:
    if v.ok is None:
        return "n/a"
    return "yes" if v.ok else "no"


# -- commands -------------------------------------------------------------------

def cmd_check(args):
    t = load_tgs_ref(args.tgs)
    rep = check_axioms(t)
    if args.format == "json":
        return _json(rep.to_document(t))
    if args.format == "csv":
        return _csv(["axiom", "status", "violations"], [[a, "pass" if rep.status[a] else "fail", rep.violations[a]] for a in AXIOMS])
    lines = [f"structure {t.name}: {'valid' if rep.ok else 'INVALID'} ({t.m} elements, {len(t.gamma)} gamma labels)"]
    for a in AXIOMS:
        state = "pass" if rep.status[a] else f"FAIL ({rep.violations[a]} violations)"
        lines.append(f"  {a:<14}{state:<22}{AXIOM_NAMES[a]}")
    lines.append("properties:")
    lines.extend(f"  {k}: {v}" for k, v in rep.properties.items())
    if rep.witnesses:
        lines.append("witnesses:")
        lines.extend(f"  {w.render(t)}" for w in rep.witnesses)
    return "\n".join(lines) + "\n"


def cmd_ideals(args):
    t = load_tgs_ref(args.tgs)
    ideals = enumerate_k_ideals(t, literal=args.literal_ideals, force=args.force)
    rows = []
    for i in ideals:
        ann = annihilator(t, i.members, args.literal_ideals)
        rows.append({
            "ideal": i.labels(),
            "minimal_nonzero": t.labels(sorted(minimal_nonzero_elements(i))),
            "prime": _verdict(is_prime(i)),
            "semiprime": _verdict(is_semiprime(i)),
            "annihilator": t.labels(sorted(ann.members)),
            "annihilator_is_ideal": bool(ann.ideal_check),
        })
    if args.format == "json":
        return _json({"structure": t.name, "mode": "literal" if args.literal_ideals else "plus-closed", "ideals": rows})
    if args.format == "csv":
        return _csv(
            ["ideal", "minimal_nonzero", "prime", "semiprime", "annihilator", "annihilator_is_ideal"],
            [[" ".join(r["ideal"]), " ".join(r["minimal_nonzero"]), r["prime"], r["semiprime"], " ".join(r["annihilator"]), r["annihilator_is_ideal"]] for r in rows],
        )
    lines = [f"{len(rows)} k-ideals of {t.name}"]
    for k, r in enumerate(rows):
        lines.append(
            f"  [{k}] {{{','.join(r['ideal'])}}}  minimal={{{','.join(r['minimal_nonzero'])}}}  prime={r['prime']}"
            f"  semiprime={r['semiprime']}  Ann={{{','.join(r['annihilator'])}}}"
        )
    return "\n".join(lines) + "\n"


def cmd_lattice(args):
    t = load_tgs_ref(args.tgs)
    lat = ideal_lattice(t, literal=args.literal_ideals, force=args.force)
    if args.format == "json":
        return _json(lat.to_document())
    if args.format == "csv":
        return _csv(["lower", "upper"], [[lo, hi] for lo, hi in lat.covers])
    verdict = "distributive" if lat.distributive else "NOT distributive, counterexample " + ", ".join(
        lat.nodes[i].render() for i in lat.counterexample
    )
    return f"ideal lattice of {t.name}: {len(lat.nodes)} ideals, {verdict}\n" + lat.hasse_ascii() + "\n"


def cmd_quotient(args):
    t = load_tgs_ref(args.tgs)
    ideal = as_set(t, [s.strip() for s in args.ideal.split(",")])
    q = build_quotient(t, ideal, force=args.force)
    if args.export:
        Path(args.export).write_text(dump_document(q.tgs.to_document()), encoding="utf-8")
    doc = quotient_report(q)
    if args.format == "json":
        return _json(doc)
    if args.format == "csv":
        return _csv(["class", "members"], [[lab, " ".join(ms)] for lab, ms in zip(doc["class_labels"], doc["classes"])])
    lines = [f"{t.name} / {{{','.join(doc['ideal'])}}}: {len(q.classes)} classes, well-defined={q.well_defined}"]
    for lab, ms in zip(doc["class_labels"], doc["classes"]):
        lines.append(f"  {lab}: {{{','.join(ms)}}}")
    lines.append(f"zero class equals ideal: {doc['zero_class_equals_ideal']}")
    if "axioms_pass" in doc:
        lines.append(f"quotient passes axioms: {doc['axioms_pass']}")
    if q.witness:
        lines.append(f"witness: {q.witness}")
    return "\n".join(lines) + "\n"


def _load_code(ref, force=False):
    spec, base = load_code_spec(ref)
    if "tgs" not in spec:
        raise UsageError("code spec needs a 'tgs' entry")
    t = spec["tgs"]
    t = Tgs.from_document(t) if isinstance(t, dict) else load_tgs_ref(t, base)
    return t, code_from_spec(t, spec, force=force)


PARAM_COLUMNS = ["construction", "n", "|T|", "|I|", "|C|", "k", "d", "t"]


def cmd_code(args):
    t, code = _load_code(args.spec, args.force)
    if args.action == "export":
        doc = code_document(code)
        return _json(doc)
    p = code_params(code)
    doc = p.to_document()
    doc["radius"] = decoding_radius(code).to_document()
    if code.notes:
        doc["notes"] = code.notes
    if args.format == "json":
        return _json(doc)
    if args.format == "csv":
        return _csv(PARAM_COLUMNS, [[doc[c] if c != "t" else p.t for c in PARAM_COLUMNS]])
    d = "undefined" if p.d is None else p.d
    tt = "n/a" if p.t is None else p.t
    lines = [
        f"construction={p.construction} n={p.n} |T|={p.m} |I|={p.ideal_size} |T/I|={p.quotient_size}",
        f"|C|={p.size} k={format_real(p.k)} d={d} ({p.d_method}) t={tt}",
    ]
    if p.dimension_ok is not None:
        lines.append(f"dimension formula |I|^n={p.dimension_formula}: {'agrees' if p.dimension_ok else 'DISAGREES'}")
    if p.lattice_ok is not None:
        lines.append(f"lattice prediction d={p.lattice_d}: {'agrees' if p.lattice_ok else 'DISAGREES'}")
    if p.mu is not None:
        lines.append(f"scalar mu(I)={p.mu}, radius formula gives {(p.mu - 1) // 2}")
    return "\n".join(lines) + "\n"


def cmd_decode(args):
    t, code = _load_code(args.code, args.force)
    r = as_word(t, args.word)
    if len(r) != code.n:
        raise UsageError(f"word has length {len(r)}, code has length {code.n}")
    if args.decoder == "nearest":
        near = nearest_codeword(code, r)
        doc = {"decoder": "nearest", "input": t.labels(r), "output": t.labels(near.word), "distance": near.distance, "unique": near.unique}
    else:
        table = coset_table_for(code)
        res = decode(table, code, r)
        doc = {"decoder": "syndrome", "input": t.labels(r)}
        doc.update(res.to_document(t, table.quotient))
    if args.format == "json":
        return _json(doc)
    if args.format == "csv":
        return _csv(list(doc), [[" ".join(v) if isinstance(v, list) else v for v in doc.values()]])
    if args.decoder == "nearest":
        return f"{_word(t, r)} -> {_word(t, near.word)}  distance={near.distance} unique={near.unique}\n"
    flags = f" [{', '.join(res.flags)}]" if res.flags else ""
    leader = f" leader={_word(t, res.leader)}" if res.leader is not None else ""
    return f"{_word(t, r)} -> {_word(t, res.output)}  status={res.status}{flags} syndrome={doc['syndrome']}{leader}\n"


def cmd_simulate(args):
    t, code = _load_code(args.code, args.force)
    rep = simulate_channel(code, args.decoder, args.wmax, args.mode, args.trials, args.seed)
    doc = rep.to_document(t)
    if args.format == "json":
        return _json(doc)
    cols = ["decoder", "w_max", "mode", "trials", "successes", "rate", "seed"]
    if args.format == "csv":
        return _csv(cols, [["" if doc[c] is None else doc[c] for c in cols]])
    lines = [f"{rep.decoder} decoder, w_max={rep.w_max}, {rep.mode}: {rep.successes}/{rep.trials} recovered (rate {doc['rate']})"]
    for f in doc["failures"]:
        lines.append(f"  failure: c=({','.join(f['codeword'])}) e=({','.join(f['error'])}) -> ({','.join(f['output'])})")
    return "\n".join(lines) + "\n"


def cmd_cosets(args):
    t, code = _load_code(args.code, args.force)
    table = coset_table_for(code)
    doc = table.to_document()
    doc["stratification"] = stratification(table)
    if args.format == "json":
        return _json(doc)
    lines = []
    for c in doc["classes"]:
        leaders = " ".join("(" + ",".join(w) + ")" for w in c["leaders"])
        lines.append(f"{c['syndrome']}: size={c['size']} leader weight={c['leader_weight']} unique={c['unique_leader']} leaders: {leaders}")
    return "\n".join(lines) + "\n"


def _load_fixture_dir(directory):
    structures, codes = [], []
    for path in sorted(Path(directory).glob("*.json")):
        if path.name == "MANIFEST.json":
            continue
        name = path.stem
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            if "construction" in doc:
                spec_t = doc["tgs"]
                t = Tgs.from_document(spec_t) if isinstance(spec_t, dict) else load_tgs(Path(directory) / spec_t)
                codes.append((name, t, doc))
            else:
                structures.append((name, Tgs.from_document(doc, name=name)))
        except (TgsError, ValueError, KeyError, OSError) as exc:
            structures.append({"fixture": name, "error": str(exc)})
    return structures, codes


def cmd_verify_claims(args):
    extra = []
    if args.search_seed is not None:
        found = search_valid_tgs(args.search_seed, args.search_size, args.search_candidates)
        extra = [(t.name, t) for t in found]
    if args.fixtures:
        structures, codes = _load_fixture_dir(args.fixtures)
        report = run_suite(structures + extra, codes)
    else:
        report = bundled_suite(extra)
    doc = report.to_document(timings=args.timings)
    if args.counterexamples:
        out = Path(args.counterexamples)
        out.mkdir(parents=True, exist_ok=True)
        for r in report.results:
            if r.counterexample is not None:
                (out / f"{r.claim}__{r.fixture}.json").write_text(_json(r.counterexample), encoding="utf-8")
    # --out names the JSON report here; the summary still goes to stdout
    report_path, args.out = args.report or args.out, None
    if report_path:
        Path(report_path).write_text(_json(doc), encoding="utf-8")
    if args.format == "json":
        return _json(doc)
    if args.format == "csv":
        return _csv(["claim", "fixture", "status", "instances", "scan_size", "detail"],
                    [[r.claim, r.fixture, r.status, r.instances, r.scan_size, r.detail] for r in report.results])
    return report.summary() + "\n"


def cmd_fixtures(args):
    if args.action == "export":
        if not args.dir:
            raise UsageError("fixtures export needs a target directory")
        names = write_bundle(args.dir)
        return "".join(f"{args.dir}/{n}\n" for n in names)
    if args.action == "verify":
        res = verify_bundle()
        if not all(res.values()):
            bad = ", ".join(n for n, ok in res.items() if not ok)
            raise TgsError(f"bundled fixtures fail their checksums: {bad}")
        return "".join(f"{n}: ok\n" for n in sorted(res))
    rows = [(n, "tgs", DESCRIPTIONS[n]) for n in TGS_FIXTURES] + [(n, "code", DESCRIPTIONS[n]) for n in CODE_FIXTURES]
    if args.format == "json":
        return _json([{"name": n, "kind": k, "description": d} for n, k, d in rows])
    if args.format == "csv":
        return _csv(["name", "kind", "description"], rows)
    return "".join(f"{n:<14}{k:<6}{d}\n" for n, k, d in rows)


# -- parser ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"error: usage: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--bounds", default="", help="override caps, e.g. max_words=4096,witness_cap=8")
    common.add_argument("--force", action="store_true", help="allow structures that fail the axioms")
    common.add_argument("--literal-ideals", action="store_true", help="drop the addition-closure clause from k-ideals")

    parser = _Parser(prog="tgs", description="Finite ternary Gamma-semirings and their codes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="scan all axioms")
    p.add_argument("tgs")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("ideals", parents=[common], help="list k-ideals")
    p.add_argument("tgs")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("lattice", parents=[common], help="ideal lattice and Hasse diagram")
    p.add_argument("tgs")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("quotient", parents=[common], help="quotient by a k-ideal")
    p.add_argument("tgs")
    p.add_argument("--ideal", required=True, help="comma-separated labels")
    p.add_argument("--export", help="write the quotient as a TGS document")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("code", parents=[common], help="code parameters or member export")
    p.add_argument("action", choices=("params", "export"))
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("cosets", parents=[common], help="syndrome classes and leaders")
    p.add_argument("--code", required=True)
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("decode", parents=[common], help="decode one received word")
    p.add_argument("--code", required=True)
    p.add_argument("--word", required=True, help="comma-separated labels, e.g. a,0,1")
    p.add_argument("--decoder", choices=("syndrome", "nearest"), default="syndrome")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", parents=[common], help="additive-error channel simulation")
    p.add_argument("--code", required=True)
    p.add_argument("--wmax", type=int, default=1)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--decoder", choices=("syndrome", "nearest"), default="syndrome")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify-claims", parents=[common], help="adjudicate every claim on a fixture set")
    p.add_argument("--fixtures", help="directory of TGS documents and code specs (default: bundled set)")
    p.add_argument("--report", help="write the JSON report here (same as --out)")
    p.add_argument("--counterexamples", help="directory for standalone counterexample documents")
    p.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identical output)")
    p.add_argument("--search-seed", type=int, help="add structures found by seeded random search")
    p.add_argument("--search-size", type=int, default=3)
    p.add_argument("--search-candidates", type=int, default=10_000)
    p.set_defaults(func=cmd_verify_claims)

    p = sub.add_parser("fixtures", parents=[common], help="list, export or verify the bundled fixtures")
    p.add_argument("action", choices=("list", "export", "verify"))
    p.add_argument("dir", nargs="?")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        bounds = _bounds.Bounds.from_env().override(args.bounds)
        with _bounds.using(bounds):
            text = args.func(args)
    except TgsError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
