"""Command-line driver: code construction, searches, and the reproduction suite.

Output discipline: machine-readable JSON (or JSONL for search) on stdout or
--out, human-readable progress and tables on stderr.  Every command is
deterministic given its flags and seed; no timestamps enter any output.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import bounds as bnd
from .codes import (
    LinearCode,
    build_code,
    code_document,
    min_distance,
    weight_enumerator,
)
from .families import (
    DegenerateInput,
    del_pezzo4_fixture,
    del_pezzo6,
    frobenius_orbit,
    geometric_witness_dp6,
    random_cubic_search,
    sample_cayley_salmon,
    shioda_surface,
    van_luijk_surface,
)
from .gf import field_spec_string, make_field, parse_field_spec
from .poly import HomogPoly, monomials
from .projective import (
    BudgetExceeded,
    Surface,
    lines_on_surface,
    section_scan,
    surface_from_text,
    surface_to_text,
)

DEFAULT_BUDGET = 2_000_000


def _info(msg: str):
    print(msg, file=sys.stderr)


def _load_surface(args) -> Surface:
    if getattr(args, "surface", None):
        text = Path(args.surface).read_text()
        return surface_from_text(text)
    family = getattr(args, "family", None)
    if not family:
        raise ValueError("provide --surface FILE or --family NAME")
    fld = parse_field_spec(args.field) if args.field else make_field(7)
    seed = args.seed if args.seed is not None else 0
    if family == "del-pezzo-4":
        return del_pezzo4_fixture(fld)
    if family == "del-pezzo-6":
        return del_pezzo6(frobenius_orbit(fld, seed=seed))
    if family == "shioda":
        if not args.m:
            raise ValueError("shioda family needs --m DEGREE")
        return shioda_surface(args.m, fld)
    if family == "van-luijk":
        rng = random.Random(seed * 1_000_003)
        basis = monomials(4, 4)
        h = {mono: rng.randrange(fld.q) for mono in basis}
        return van_luijk_surface(HomogPoly(fld, 4, 4, h), fld)
    if family in ("cayley-salmon", "cayley-salmon-c12", "c12"):
        return sample_cayley_salmon(fld, seed).surface
    raise ValueError(f"unknown family {family!r}")


def _distance_hint(surface: Surface, code: LinearCode):
    if surface.family == "del-pezzo-6" and code.s == 2 and surface.fld.q > 5:
        return geometric_witness_dp6(surface).codeword
    return None


def _analyze(surface: Surface, s: int, strategy: str, budget: int, workers: int):
    """Build the degree-s code, certify distance, and attach the bound report."""
    code = build_code(surface, s)
    hint = _distance_hint(surface, code)
    dist = min_distance(code, strategy, budget, upper_hint=hint, workers=workers)
    observed = {s: (dist.upper, dist.exact)}
    if s > 1:
        base = build_code(surface, 1)
        base_d = min_distance(base, "auto", budget, workers=workers)
        if base_d.exact:
            observed[1] = (base_d.d, True)
    report = bnd.build_bound_report(surface.fld.q, surface.sectional_genus, code.n, observed)
    return code, dist, report


def cmd_build_code(args) -> int:
    surface = _load_surface(args)
    code, dist, report = _analyze(surface, args.degree, args.strategy, args.budget, args.workers)
    wenum = None
    if args.enumerator:
        wenum = weight_enumerator(code)
    doc = code_document(code, dist, wenum, report.to_json(), include_matrix=args.matrix)
    _emit(args, doc)
    _info(f"[{code.n},{code.k},{_dstr(dist)}] over GF({code.fld.q})  method={dist.method}")
    return 0


def cmd_min_dist(args) -> int:
    surface = _load_surface(args)
    code = build_code(surface, args.degree)
    hint = _distance_hint(surface, code)
    dist = min_distance(code, args.strategy, args.budget, upper_hint=hint, workers=args.workers)
    _emit(args, {"field": field_spec_string(code.fld), "n": code.n, "k": code.k,
                 **dist.to_json()})
    _info(f"d in [{dist.lower}, {dist.upper}] exact={dist.exact} work={dist.work}")
    return 0


def cmd_classify(args) -> int:
    from .families import classify_cubic

    surface = _load_surface(args)
    result = classify_cubic(surface, args.depth)
    doc = result.to_json()
    doc["surface"] = surface.label or surface.family
    _emit(args, doc)
    _info(f"class: {result.matched}  N_r={result.observed}  lines={result.line_count}")
    return 0


def cmd_scan_sections(args) -> int:
    surface = _load_surface(args)
    scan = section_scan(surface)
    doc = {
        "surface": surface.label or surface.family,
        "histogram": {str(k): v for k, v in sorted(scan.histogram.items())},
        "max_count": scan.max_count,
        "total_hyperplanes": scan.total_hyperplanes,
        "witness_hyperplanes": [[int(v) for v in row] for row in scan.witnesses],
    }
    if surface.sectional_genus == 1:
        opt = bnd.optimal_g1_count(surface.fld.q)
        doc["optimal_genus1_count"] = opt.value
        doc["optimal_genus1_certified"] = opt.certified
        doc["max_is_optimal"] = scan.max_count == opt.value
    _emit(args, doc)
    _info(f"max section count = {scan.max_count} over {scan.total_hyperplanes} hyperplanes")
    return 0


def cmd_search(args) -> int:
    fld = parse_field_spec(args.field) if args.field else make_field(7)
    family = args.family or "random-cubic"
    if family in ("cayley-salmon", "cayley-salmon-c12"):
        target = "C12"
    elif family == "random-cubic":
        target = args.target
    else:
        raise ValueError(f"search supports cayley-salmon or random-cubic, not {family!r}")
    seed = args.seed if args.seed is not None else 0
    out_path = Path(args.out) if args.out else None
    done_substreams: set[int] = set()
    if out_path and out_path.exists():
        for line in out_path.read_text().splitlines():
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                continue
            if obj.get("substream_complete") is not None:
                done_substreams.add(obj["substream_complete"])
    sink = out_path.open("a") if out_path else sys.stdout
    try:
        for sub in range(args.substreams):
            if sub in done_substreams:
                _info(f"substream {sub}: already complete, skipping")
                continue
            hits = random_cubic_search(
                fld, target, seed, args.budget, substream=sub,
                classify_depth=args.depth,
            )
            for hit in hits:
                code = build_code(hit.surface, 1)
                dist = min_distance(code, "auto", args.budget_distance)
                report = bnd.build_bound_report(
                    fld.q, hit.surface.sectional_genus, code.n,
                    {1: (dist.upper, dist.exact)},
                )
                row = {
                    "seed": hit.seed,
                    "substream": hit.substream,
                    "index": hit.index,
                    "coefficients": surface_to_text(hit.surface).splitlines()[2:],
                    "classification": hit.classification.to_json(),
                    "smooth": hit.smooth_label,
                    "code": code_document(code, dist),
                    "bounds": report.to_json(),
                }
                print(json.dumps(row, sort_keys=True), file=sink)
            print(json.dumps({"substream_complete": sub, "hits": len(hits)}), file=sink)
            _info(f"substream {sub}: {len(hits)} hits / {args.budget} samples")
    finally:
        if out_path:
            sink.close()
    return 0


# -- paper reproduction ----------------------------------------------------------------


class _Row:
    def __init__(self, rows: list):
        self.rows = rows

    def check(self, rid: str, expected, computed):
        ok = expected == computed
        self.rows.append({"id": rid, "expected": expected, "computed": computed, "pass": ok})
        _info(f"{'PASS' if ok else 'FAIL'}  {rid}: expected {expected}, computed {computed}")
        return ok

    def check_pred(self, rid: str, description: str, ok: bool, computed):
        self.rows.append({"id": rid, "expected": description, "computed": computed, "pass": bool(ok)})
        _info(f"{'PASS' if ok else 'FAIL'}  {rid}: {description} -> {computed}")
        return ok


def _dstr(dist) -> str:
    return str(dist.upper) if dist.exact else f"[{dist.lower},{dist.upper}]"


def cmd_verify_paper(args) -> int:
    rows: list = []
    t = _Row(rows)
    budget = args.budget if args.budget else DEFAULT_BUDGET

    f7 = make_field(7)

    # rows aggregate into three conformance pools at the end: Singleton holds
    # for every code; the genus bound and alarm silence only apply where the
    # NS-generation hypothesis is plausible (the Del Pezzo-6 has rank 2, so
    # the alarm firing there is the expected positive).
    singleton_rows = []
    rho_one_reports = []
    dp6_reports = []

    dp4 = del_pezzo4_fixture(f7)
    t.check("dp4-q7-points", 57, int(dp4.count_points(1)))
    code, dist, report = _analyze(dp4, 1, "exhaustive", budget, args.workers)
    t.check("dp4-q7-s1", [57, 5, 44], [code.n, code.k, dist.upper if dist.exact else None])
    t.check("dp4-q7-lines", 0, len(lines_on_surface(dp4)))
    dp4_scan = section_scan(dp4)
    t.check("dp4-q7-section-max", 13, dp4_scan.max_count)
    singleton_rows.append((code, dist))
    rho_one_reports.append((code, report))

    dp6_expect = {7: (57, 41), 8: (73, 55), 9: (91, 71)}
    for (p, n), q in (((7, 1), 7), ((2, 3), 8), ((3, 2), 9)):
        fld = make_field(p, n)
        dp6 = del_pezzo6(frobenius_orbit(fld, seed=args.seed or 1))
        n_exp, d_exp = dp6_expect[q]
        c1, d1, rep1 = _analyze(dp6, 1, "exhaustive", max(budget, 1_000_000), args.workers)
        t.check(f"dp6-q{q}-s1", [n_exp, 7, d_exp],
                [c1.n, c1.k, d1.upper if d1.exact else None])
        singleton_rows.append((c1, d1))
        dp6_reports.append((c1, rep1))
        c2 = build_code(dp6, 2)
        t.check(f"dp6-q{q}-s2-k", 19, c2.k)
        wit = geometric_witness_dp6(dp6)
        wwt = int((wit.codeword != 0).sum())
        t.check(f"dp6-q{q}-s2-witness-weight", q * q - 3 * q - 1, wwt)
        d2 = min_distance(c2, "information-set", budget, upper_hint=wit.codeword)
        if q in (7, 9):
            target = q * q - 3 * q - 1
            t.check_pred(
                f"dp6-q{q}-s2-interval",
                f"certified interval contains {target}",
                d2.lower <= target <= d2.upper,
                [int(d2.lower), int(d2.upper)],
            )
        else:
            ok = d2.lower <= 37 <= d2.upper and not (d2.exact and d2.upper == 39)
            t.check_pred(
                "dp6-q8-s2-interval-37",
                "interval contains 37 and does not certify 39",
                ok, [int(d2.lower), int(d2.upper)],
            )
        singleton_rows.append((c2, d2))
        t.check_pred(
            f"dp6-q{q}-s2-zero-relation",
            f"n - d2_upper <= 2*(n - d1) with best-known d2",
            (c2.n - d2.upper) <= 2 * (c1.n - d1.upper),
            [c2.n - int(d2.upper), 2 * (c1.n - int(d1.upper))],
        )

    sample = sample_cayley_salmon(f7, seed=args.seed or 1)
    t.check("c12-q7-Nr",
            {1: bnd.predicted_Nr("C12", 7, 1), 2: bnd.predicted_Nr("C12", 7, 2),
             3: bnd.predicted_Nr("C12", 7, 3)},
            sample.classification.observed)
    scan = section_scan(sample.surface)
    t.check("c12-q7-section-max", 13, scan.max_count)
    cc1, dd1, repc1 = _analyze(sample.surface, 1, "exhaustive", budget, args.workers)
    if scan.max_count == 13:
        t.check("c12-q7-s1", [64, 4, 51], [cc1.n, cc1.k, dd1.upper if dd1.exact else None])
    singleton_rows.append((cc1, dd1))
    rho_one_reports.append((cc1, repc1))
    cc2, dd2, repc2 = _analyze(sample.surface, 2, "auto", 20_000_000, args.workers)
    t.check("c12-q7-s2", [64, 10, 38],
            [cc2.n, cc2.k, dd2.upper if dd2.exact else None])
    singleton_rows.append((cc2, dd2))
    rho_one_reports.append((cc2, repc2))
    t.check_pred("c12-q7-s2-zero-doubling", "n - d_2 == 2*(n - d_1) == 26",
                 (64 - dd2.upper) == 2 * (64 - dd1.upper) == 26,
                 [64 - dd2.upper, 2 * (64 - dd1.upper)])

    f11 = make_field(11)
    x4 = shioda_surface(4, f11)
    c4, d4, rep4 = _analyze(x4, 1, "exhaustive", budget, args.workers)
    t.check("shioda4-q11-s1", [144, 4, 120], [c4.n, c4.k, d4.upper if d4.exact else None])
    t.check("shioda4-q11-lines", 0, len(lines_on_surface(x4)))
    singleton_rows.append((c4, d4))
    rho_one_reports.append((c4, rep4))
    f9 = make_field(3, 2)
    x5 = shioda_surface(5, f9)
    c5, d5, rep5 = _analyze(x5, 1, "exhaustive", budget, args.workers)
    t.check("shioda5-q9-s1", [91, 4, 71], [c5.n, c5.k, d5.upper if d5.exact else None])
    t.check("shioda5-q9-lines", 0, len(lines_on_surface(x5)))
    singleton_rows.append((c5, d5))
    rho_one_reports.append((c5, rep5))

    wcub = HomogPoly.from_int_terms(f7, 3, 3, {(0, 2, 1): 1, (3, 0, 0): -1, (0, 0, 3): -3})
    from .projective import count_rational_points

    t.check("weierstrass-q7-points", 13, count_rational_points([wcub]))
    t.check("optimal-g1-q7", 13, bnd.optimal_g1_count(7).value)

    singleton_ok = all(c.k + d.upper <= c.n + 1 for c, d in singleton_rows if d.exact)
    t.check_pred("singleton-bound", "k + d <= n + 1 on every exact code", singleton_ok,
                 [[c.n, c.k, int(d.upper)] for c, d in singleton_rows if d.exact])
    bound_ok = all(v for _, rep in rho_one_reports for v in rep.verdicts.values())
    t.check_pred("genus-bound-conformance",
                 "every recorded bound verdict holds where NS-generation applies",
                 bound_ok, bound_ok)
    alarms = [c.surface_ref for c, rep in rho_one_reports if rep.ns_alarm]
    t.check_pred("ns-alarm-silent", "no NS alarm on any rank-one-consistent surface",
                 not alarms, alarms)
    dp6_alarms = [bool(rep.ns_alarm) for _, rep in dp6_reports]
    t.check_pred("dp6-ns-alarm-fires",
                 "alarm detects that the hyperplane class cannot generate NS (rank 2)",
                 all(dp6_alarms), dp6_alarms)

    doc = {"rows": rows, "all_pass": all(r["pass"] for r in rows)}
    _emit(args, doc)
    n_fail = sum(not r["pass"] for r in rows)
    _info(f"{len(rows) - n_fail}/{len(rows)} rows pass")
    return 0 if n_fail == 0 else 1


# -- wiring -------------------------------------------------------------------------


def _emit(args, doc):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _add_common(sp, *, surface_source=True):
    sp.add_argument("--field", help="field spec, e.g. 7, 7^2, 2^3/1,1,0,1")
    if surface_source:
        sp.add_argument("--surface", help="surface text file")
        sp.add_argument("--family", help="del-pezzo-4|del-pezzo-6|shioda|van-luijk|cayley-salmon")
        sp.add_argument("--m", type=int, help="degree for the shioda family")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="work budget (codeword enumerations)")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="evalcodes",
        description="evaluation codes from projective surfaces over finite fields",
    )
    ap.add_argument("--config", help="JSON file of default flag values (flags win)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build-code", help="construct a code and certify its distance")
    _add_common(sp)
    sp.add_argument("--degree", type=int, default=1, help="evaluation degree s")
    sp.add_argument("--strategy", default="auto", choices=["auto", "exhaustive", "isd", "information-set"])
    sp.add_argument("--enumerator", action="store_true", help="include the weight enumerator")
    sp.add_argument("--matrix", action="store_true", help="include the generator matrix")
    sp.set_defaults(fn=cmd_build_code)

    sp = sub.add_parser("min-dist", help="certify minimum distance only")
    _add_common(sp)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--strategy", default="auto", choices=["auto", "exhaustive", "isd", "information-set"])
    sp.set_defaults(fn=cmd_min_dist)

    sp = sub.add_parser("classify", help="zeta-class a cubic surface by point counts")
    _add_common(sp)
    sp.add_argument("--depth", type=int, default=3, help="max extension degree for counts")
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("scan-sections", help="hyperplane section point-count histogram")
    _add_common(sp)
    sp.set_defaults(fn=cmd_scan_sections)

    sp = sub.add_parser("search", help="seeded random search for classified cubics")
    _add_common(sp, surface_source=False)
    sp.add_argument("--family", help="cayley-salmon | random-cubic (default)")
    sp.add_argument("--target", help="C10..C14 for random-cubic searches")
    sp.add_argument("--substreams", type=int, default=1)
    sp.add_argument("--depth", type=int, default=3, help="classification depth")
    sp.add_argument("--budget-distance", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(fn=cmd_search)

    sp = sub.add_parser("verify-paper", help="run the desk-scale reproduction table")
    _add_common(sp, surface_source=False)
    sp.set_defaults(fn=cmd_verify_paper)

    return ap


def _apply_config(ap: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = ap.parse_args(argv)
    if args.config:
        overrides = json.loads(Path(args.config).read_text())
        explicit = {a.split("=")[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
        for key, value in overrides.items():
            attr = key.replace("-", "_")
            if hasattr(args, attr) and attr not in explicit:
                setattr(args, attr, value)
    return args


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = _apply_config(ap, list(sys.argv[1:] if argv is None else argv))
        return args.fn(args)
    except (ValueError, OSError, json.JSONDecodeError, DegenerateInput, BudgetExceeded) as exc:
        _info(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
