"""Command-line interface.

Subcommands: verify, construct, resolve, prp, develop, gen, profile,
reproduce.  Every command prints a deterministic report; ``--json``
switches it to a structured document.  Exit codes: 0 success, 1 a property
or expectation failed, 2 usage/parse error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import catalog_entry, catalog_names
from .construct import (
    IndexingParams,
    ThreeDesignCase,
    classify_three_design,
    predict_bibd_lambda,
    predict_ibd_params,
    predicted_mu,
    predicted_mu_w4,
    shrikhande_raghavarao,
    triple_coverage_by_alpha,
)
from .core import (
    Design,
    DesignError,
    DesignParams,
    NonConstantReplication,
    intersection_profile,
    is_simple,
    is_trivial,
    t_coverage_spectrum,
    verify_ibd,
)
from .formats import (
    FormatError,
    design_to_dict,
    format_design,
    format_resolution,
    load_design,
    load_resolution,
    resolution_to_dict,
    save_design,
    save_resolution,
)
from .generators import (
    CyclicBaseSpec,
    affine_hyperplane_design,
    cyclic_develop,
    cyclic_point_set,
    round_robin_one_factorization,
    sub_factorization_embedding,
    trivial_design,
)
from .reproduce import reproduce_entry
from .resolution import (
    SearchBudgetExceeded,
    DEFAULT_NODE_BUDGET,
    find_resolutions,
    prp_violations,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(report: dict, lines: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(_jsonable(report), indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _spectrum_text(spectrum: dict[int, int]) -> str:
    return " ".join(f"{key}:{count}" for key, count in sorted(spectrum.items()))


def _params_text(params: DesignParams) -> str:
    return f"v={params.v} b={params.b} r={params.r} k={params.k}"


def _load_design_or_resolution(path):
    """(design, resolution-or-None) from either file flavor."""
    try:
        return load_resolution(path)
    except FormatError:
        return load_design(path), None


def cmd_verify(args) -> int:
    design, _ = _load_design_or_resolution(args.file)
    report: dict = {"command": "verify", "file": args.file}
    lines = [f"file: {args.file}"]
    report["v"] = design.points.size
    report["k"] = design.k
    report["b"] = len(design.blocks)
    lines.append(f"v: {design.points.size}  k: {design.k}  b: {len(design.blocks)}")

    failures = []
    try:
        params = verify_ibd(design)
        report["ibd"] = {"v": params.v, "b": params.b, "r": params.r, "k": params.k}
        lines.append(f"ibd: {_params_text(params)}")
    except NonConstantReplication as exc:
        params = None
        report["ibd"] = None
        report["ibd_error"] = str(exc)
        lines.append(f"ibd: FAIL ({exc})")

    report["spectra"] = {}
    for t in args.t or []:
        spectrum = t_coverage_spectrum(design, t)
        report["spectra"][t] = spectrum
        lines.append(f"coverage t={t}: {_spectrum_text(spectrum)}")

    simple = is_simple(design)
    trivial = is_trivial(design)
    report["simple"] = simple
    report["trivial"] = trivial
    lines.append(f"simple: {'yes' if simple else 'no'}")
    lines.append(f"trivial: {'yes' if trivial else 'no'}")

    def expect(name: str, ok: bool, detail: str) -> None:
        if not ok:
            failures.append(name)
        report.setdefault("expectations", []).append(
            {"name": name, "ok": ok, "detail": detail}
        )
        lines.append(f"expect {name}: {'PASS' if ok else 'FAIL'} ({detail})")

    if args.expect_lambda is not None:
        if not args.t or len(args.t) != 1:
            raise DesignError("--expect-lambda needs exactly one --t")
        spectrum = report["spectra"][args.t[0]]
        ok = list(spectrum) == [args.expect_lambda]
        expect(
            f"lambda={args.expect_lambda} (t={args.t[0]})",
            ok,
            _spectrum_text(spectrum),
        )
    if args.expect_simple:
        expect("simple", simple, "no repeated blocks" if simple else "repeated block")
    if args.expect_params:
        try:
            wanted = tuple(int(x) for x in args.expect_params.split(","))
        except ValueError:
            raise DesignError(
                f"--expect-params wants 'v,b,r,k', got {args.expect_params!r}"
            ) from None
        if len(wanted) != 4:
            raise DesignError("--expect-params wants four integers 'v,b,r,k'")
        observed = params.as_tuple() if params else None
        expect("params", observed == wanted, f"observed {observed}")

    report["ok"] = not failures
    _emit(report, lines, args.json)
    return EXIT_FAIL if failures else EXIT_OK


def _measured_master_params(design) -> DesignParams:
    """Parameters at the strongest balanced strength (t = 1, 2 or 3)."""
    params = verify_ibd(design)
    pair = t_coverage_spectrum(design, 2)
    if len(pair) != 1:
        return params
    lam2 = next(iter(pair))
    if design.k >= 3:
        triple = t_coverage_spectrum(design, 3)
        if len(triple) == 1:
            return DesignParams(
                t=3, v=params.v, b=params.b, r=params.r, k=params.k,
                lam=next(iter(triple)),
            )
    return DesignParams(
        t=2, v=params.v, b=params.b, r=params.r, k=params.k, lam=lam2
    )


def cmd_construct(args) -> int:
    master, embedded = _load_design_or_resolution(args.master)
    if args.resolution is not None:
        res_design, master_res = load_resolution(args.resolution)
        if res_design != master:
            raise DesignError(
                "resolution file does not match the master design"
            )
        source = "file"
    elif embedded is not None:
        master_res = embedded
        source = "embedded"
    elif args.auto_resolve:
        found = find_resolutions(master, limit=1, node_budget=args.budget)
        if not found:
            raise DesignError("master design is not resolvable")
        master_res = found[0]
        source = "auto-resolved"
    else:
        raise DesignError(
            "master file has no classes; pass --resolution or --auto-resolve"
        )

    indexing, _ = _load_design_or_resolution(args.indexing)
    built = shrikhande_raghavarao(master_res, indexing)

    report: dict = {"command": "construct", "master": args.master,
                    "indexing": args.indexing, "resolution_source": source}
    lines = []
    master_params = _measured_master_params(master)
    lines.append(
        f"master: {_params_text(master_params)} lambda={master_params.lam} "
        f"(t={master_params.t}, resolution {source}, "
        f"{len(master_res.classes)} classes)"
    )
    report["master_params"] = {
        "t": master_params.t, "v": master_params.v, "b": master_params.b,
        "r": master_params.r, "k": master_params.k, "lambda": master_params.lam,
    }

    try:
        indexing_params = IndexingParams.from_design(indexing)
        lines.append(
            f"indexing: w={indexing_params.w} b'={indexing_params.b_prime} "
            f"r'={indexing_params.r_prime} k'={indexing_params.k_prime} "
            f"lambda2'={indexing_params.lambda2_prime} "
            f"lambda3'={indexing_params.lambda_prime}"
        )
    except DesignError:
        basic = verify_ibd(indexing)
        indexing_params = IndexingParams(
            w=basic.v, b_prime=basic.b, r_prime=basic.r, k_prime=basic.k,
            lambda_prime=0, lambda2_prime=0,
        )
        lines.append(
            f"indexing: w={basic.v} b'={basic.b} r'={basic.r} k'={basic.k} "
            "(not 2-balanced; coverage predictions skipped)"
        )
        indexing_params_full = None
    else:
        indexing_params_full = indexing_params
    report["indexing_params"] = {
        "w": indexing_params.w, "b_prime": indexing_params.b_prime,
        "r_prime": indexing_params.r_prime, "k_prime": indexing_params.k_prime,
    }

    predicted = predict_ibd_params(master_params, indexing_params)
    observed = verify_ibd(built.design)
    lines.append(f"predicted: {_params_text(predicted)}")
    lines.append(f"observed:  {_params_text(observed)}")
    report["predicted_params"] = list(predicted.as_tuple())
    report["observed_params"] = list(observed.as_tuple())
    report["params_match"] = predicted.as_tuple() == observed.as_tuple()

    if indexing_params_full is not None and master_params.t >= 2:
        lam2 = predict_bibd_lambda(master_params, indexing_params_full)
        lines.append(f"predicted pair coverage: {lam2}")
        report["predicted_pair_coverage"] = lam2

        analysis = classify_three_design(master_params, indexing_params_full.k_prime)
        lines.append(f"three-design case: {analysis.case.value}")
        report["three_design_case"] = analysis.case.value
        if analysis.note:
            lines.append(f"note: {analysis.note}")
            report["three_design_note"] = analysis.note
        mu = None
        if analysis.case is ThreeDesignCase.K_PRIME_HALF_W:
            if indexing_params_full.w == 4:
                mu = predicted_mu_w4(master_params)
            else:
                mu = predicted_mu(
                    master_params, indexing_params_full.lambda_prime
                )
        elif analysis.case is ThreeDesignCase.MASTER_IS_3_DESIGN:
            mu = triple_coverage_by_alpha(
                master_params, indexing_params_full, master_params.lam
            )
        elif analysis.case is ThreeDesignCase.MASTER_BLOCK_SIZE_2:
            mu = triple_coverage_by_alpha(master_params, indexing_params_full, 0)
        if mu is not None:
            lines.append(f"predicted triple coverage: {mu}")
            report["predicted_triple_coverage"] = mu

    simple = is_simple(built.design)
    lines.append(f"constructed simple: {'yes' if simple else 'no'}")
    report["constructed_simple"] = simple

    if args.check_three:
        spectrum = t_coverage_spectrum(built.design, 3)
        lines.append(f"observed coverage t=3: {_spectrum_text(spectrum)}")
        report["observed_triple_spectrum"] = spectrum

    save_design(built.design, args.out)
    lines.append(f"wrote: {args.out}")
    report["out"] = args.out
    if args.provenance:
        payload = {
            "blocks": len(built.design.blocks),
            "provenance": [list(pair) for pair in built.provenance],
            "indexing_blocks": [list(block) for block in indexing.blocks],
        }
        with open(args.provenance, "w") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")
        lines.append(f"wrote provenance: {args.provenance}")
        report["provenance_out"] = args.provenance

    _emit(report, lines, args.json)
    return EXIT_OK


def cmd_resolve(args) -> int:
    design, _ = _load_design_or_resolution(args.file)
    report: dict = {"command": "resolve", "file": args.file, "limit": args.limit}
    lines = [f"file: {args.file}"]
    try:
        found = find_resolutions(design, limit=args.limit, node_budget=args.budget)
    except SearchBudgetExceeded as exc:
        report["budget_exhausted"] = True
        report["found"] = len(exc.found)
        lines.append(f"search budget exhausted: {exc}")
        _emit(report, lines, args.json)
        return EXIT_BUDGET
    report["found"] = len(found)
    report["complete"] = len(found) < args.limit
    lines.append(
        f"resolutions found: {len(found)}"
        + (" (search complete)" if len(found) < args.limit else f" (limit {args.limit})")
    )
    if found and args.out:
        save_resolution(found[0], args.out)
        lines.append(f"wrote: {args.out}")
        report["out"] = args.out
    _emit(report, lines, args.json)
    return EXIT_OK


def cmd_prp(args) -> int:
    design, res = load_resolution(args.file)
    w = design.points.size // design.k
    report: dict = {"command": "prp", "file": args.file,
                    "classes": len(res.classes), "w": w}
    lines = [f"resolution: {len(res.classes)} classes, w={w}"]
    alpha_filter = set(args.alpha) if args.alpha else None
    label = (
        ",".join(str(a) for a in sorted(alpha_filter))
        if alpha_filter
        else f"all 1..{w - 1}"
    )
    lines.append(f"alpha filter: {label}")
    report["alpha_filter"] = sorted(alpha_filter) if alpha_filter else None
    try:
        violations = prp_violations(
            design, res, alpha_filter=alpha_filter, node_budget=args.budget
        )
    except SearchBudgetExceeded as exc:
        report["budget_exhausted"] = True
        report["violations"] = [list(item) for item in exc.found]
        lines.append(f"search budget exhausted: {exc}")
        for i, j, alpha in exc.found:
            lines.append(f"violation: classes {i} and {j} satisfy alpha={alpha}")
        _emit(report, lines, args.json)
        return EXIT_BUDGET
    report["violations"] = [list(item) for item in violations]
    if violations:
        for i, j, alpha in violations:
            lines.append(f"violation: classes {i} and {j} satisfy alpha={alpha}")
    else:
        tag = f"{label}-PRP-free" if alpha_filter else "PRP-free"
        lines.append(f"violations: none ({tag})")
    _emit(report, lines, args.json)
    return EXIT_OK


def cmd_develop(args) -> int:
    base_design = load_design(args.file)
    has_infinity = not args.no_infinity
    n = base_design.points.size - (1 if has_infinity else 0)
    spec = CyclicBaseSpec(
        n=n, has_infinity=has_infinity, base_class=base_design.blocks
    )
    design, res = cyclic_develop(spec)
    params = verify_ibd(design)
    report = {
        "command": "develop", "file": args.file, "n": n,
        "infinity": has_infinity,
        "params": list(params.as_tuple()),
        "classes": len(res.classes),
    }
    lines = [
        f"base: n={n} infinity={'yes' if has_infinity else 'no'} "
        f"blocks={len(base_design.blocks)} k={base_design.k}",
        f"developed: {_params_text(params)} classes={len(res.classes)}",
    ]
    if not args.out:
        print(format_resolution(res), end="")
        return EXIT_OK
    save_resolution(res, args.out)
    lines.append(f"wrote: {args.out}")
    report["out"] = args.out
    _emit(report, lines, args.json)
    return EXIT_OK


def _gen_output(args):
    """(design, resolution-or-None) for every gen variant."""
    if args.kind == "trivial":
        return trivial_design(args.v, args.k), None
    if args.kind == "one-factorization":
        return round_robin_one_factorization(args.v)
    if args.kind == "sub-one-factorization":
        return sub_factorization_embedding(args.n)
    if args.kind == "affine":
        return affine_hyperplane_design(args.m, args.q)
    if args.kind == "catalog":
        entry = catalog_entry(args.name)
        if args.base:
            base_design = Design(
                points=cyclic_point_set(entry.base.n, entry.base.has_infinity),
                blocks=entry.base.base_class,
                k=entry.base.k,
            )
            return base_design, None
        return cyclic_develop(entry.base)
    raise DesignError(f"unknown generator {args.kind!r}")  # pragma: no cover


def cmd_gen(args) -> int:
    design, res = _gen_output(args)
    if args.out:
        if res is not None:
            save_resolution(res, args.out)
        else:
            save_design(design, args.out)
        if args.json:
            print(json.dumps({"command": "gen", "kind": args.kind,
                              "out": args.out}, indent=2, sort_keys=True))
        else:
            print(f"wrote: {args.out}")
    elif args.json:
        data = resolution_to_dict(res) if res is not None else design_to_dict(design)
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        text = format_resolution(res) if res is not None else format_design(design)
        print(text, end="")
    return EXIT_OK


def cmd_profile(args) -> int:
    design, _ = _load_design_or_resolution(args.file)
    profile = intersection_profile(design)
    report: dict = {
        "command": "profile",
        "file": args.file,
        "counts": list(profile.counts),
        "pairs": profile.pair_count,
        "simple": profile.simple,
    }
    lines = [
        f"file: {args.file}",
        "profile: " + " ".join(str(c) for c in profile.counts),
        f"pairs: {profile.pair_count}",
        f"simple: {'yes' if profile.simple else 'no'}",
    ]
    failed = False
    if args.expect:
        try:
            wanted = tuple(int(x) for x in args.expect.split(","))
        except ValueError:
            raise DesignError(f"--expect wants integers, got {args.expect!r}") from None
        ok = wanted == profile.counts
        report["expect_ok"] = ok
        lines.append(
            f"expect: {'PASS' if ok else 'FAIL (expected ' + ' '.join(str(c) for c in wanted) + ')'}"
        )
        failed = not ok
    _emit(report, lines, args.json)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_reproduce(args) -> int:
    if args.all:
        names = catalog_names()
    elif args.names:
        names = args.names
    else:
        raise DesignError("pass entry names or --all")
    entries = []
    lines = []
    all_ok = True
    for name in names:
        report = reproduce_entry(name)
        entry_ok = report.ok
        all_ok = all_ok and entry_ok
        lines.append(f"entry {name}: {'PASS' if entry_ok else 'FAIL'}")
        checks = []
        for check in report.checks:
            status = "PASS" if check.ok else "FAIL"
            detail = "" if check.ok else (
                f" expected={check.expected!r} observed={check.observed!r}"
            )
            lines.append(f"  {check.label}: {status}{detail}")
            checks.append(
                {
                    "label": check.label,
                    "ok": check.ok,
                    "expected": _jsonable(check.expected),
                    "observed": _jsonable(check.observed),
                }
            )
        entries.append({"name": name, "ok": entry_ok, "checks": checks})
    passed = sum(1 for e in entries if e["ok"])
    lines.append(f"summary: {passed}/{len(entries)} entries reproduced")
    report = {"command": "reproduce", "entries": entries, "ok": all_ok}
    _emit(report, lines, args.json)
    return EXIT_OK if all_ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockdesigns",
        description=(
            "Verify block designs, search resolutions, and build 3-designs "
            "from resolvable 2-designs by unioning parallel-class blocks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify design properties")
    p.add_argument("file")
    p.add_argument("--t", action="append", type=int, help="coverage strength (repeatable)")
    p.add_argument("--expect-lambda", type=int, default=None)
    p.add_argument("--expect-simple", action="store_true")
    p.add_argument("--expect-params", default=None, metavar="V,B,R,K")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="run the union construction")
    p.add_argument("master", help="master design or resolution file")
    p.add_argument("indexing", help="indexing design file")
    p.add_argument("--resolution", default=None, help="master resolution file")
    p.add_argument("--auto-resolve", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--out", required=True)
    p.add_argument("--provenance", default=None)
    p.add_argument("--check-three", action="store_true",
                   help="measure the constructed triple coverage spectrum")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("resolve", help="search for resolutions")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("prp", help="check the partial replacement property")
    p.add_argument("file", help="resolution file")
    p.add_argument("--alpha", action="append", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_prp)

    p = sub.add_parser("develop", help="develop a base class through Z_n")
    p.add_argument("file", help="design file holding the base parallel class")
    p.add_argument("--no-infinity", action="store_true",
                   help="all points rotate (no fixed point)")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_develop)

    p = sub.add_parser("gen", help="emit generator output")
    gen_sub = p.add_subparsers(dest="kind", required=True)

    g = gen_sub.add_parser("trivial", help="all k-subsets of v points")
    g.add_argument("v", type=int)
    g.add_argument("k", type=int)

    g = gen_sub.add_parser("one-factorization", help="circle method on K_v")
    g.add_argument("v", type=int)

    g = gen_sub.add_parser(
        "sub-one-factorization",
        help="K_4n one-factorization containing a K_2n sub-one-factorization",
    )
    g.add_argument("n", type=int)

    g = gen_sub.add_parser("affine", help="hyperplanes of AG(m, q)")
    g.add_argument("m", type=int)
    g.add_argument("q", type=int)

    g = gen_sub.add_parser("catalog", help="catalog master (or base class)")
    g.add_argument("name")
    g.add_argument("--base", action="store_true",
                   help="emit the base parallel class instead of the development")

    for g in gen_sub.choices.values():
        g.add_argument("--out", default=None)
        g.add_argument("--json", action="store_true")
        g.set_defaults(func=cmd_gen)

    p = sub.add_parser("profile", help="pairwise intersection histogram")
    p.add_argument("file")
    p.add_argument("--expect", default=None, metavar="C0,C1,...")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("reproduce", help="reproduce catalog entries end to end")
    p.add_argument("names", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, DesignError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
