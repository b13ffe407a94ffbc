"""Command-line front end. Data goes to stdout, logs to stderr.

Exit codes: 0 success, 1 domain failure (death, unexpected verdict,
verification failure), 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Optional

from . import __version__
from . import analysis, ceiling, reference, search, transforms, trees
from .engine import evaluate
from .notation import RecursionSpec, SpecSyntaxError, parse

log = logging.getLogger("conolly")


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    result: Any
    plain: str
    rows: list[dict] = field(default_factory=list)
    code: int = 0


def _spec(text: str, relaxed: bool = False) -> RecursionSpec:
    try:
        return parse(text, relaxed=relaxed)
    except SpecSyntaxError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _range(text: str) -> tuple[int, int]:
    try:
        return search._parse_range(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _value_rows(values) -> list[dict]:
    return [{"n": i, "value": v} for i, v in enumerate(values, start=1)]


# eval / analyze / reference / pairs

def cmd_eval(args) -> Outcome:
    spec = _spec(args.spec)
    if not spec.initial:
        raise UsageError("eval needs initial conditions, e.g. <0;1:1;2>[1,2]")
    res = evaluate(spec, args.n)
    death = res.death.as_dict() if res.death else None
    plain = " ".join(map(str, res.values))
    if death:
        plain += f"\ndeath at n={death['index']} (term {death['term']}, argument {death['argument']})"
    return Outcome({"spec": str(spec), "values": res.values, "death": death},
                   plain, _value_rows(res.values), 1 if death else 0)


def _analyze_values(values: list[int], modulus: int) -> dict:
    out: dict = {"length": len(values), "slow": analysis.is_slow(values)}
    try:
        prof = analysis.frequency(values)
    except ValueError:
        out["frequency"] = None
        out["fit"] = None
    else:
        out["frequency"] = prof.as_list()
        fit = None
        if prof.complete_upto >= 4:
            fit = analysis.fit_conolly(prof)
        out["fit"] = fit.as_dict() if fit else None
    if len(values) >= 1000:
        out["ratio"] = [analysis.ratio_estimate(values, modulus, r).as_dict()
                        for r in range(modulus)]
    return out


def cmd_analyze(args) -> Outcome:
    if args.stdin:
        values = [int(x) for x in sys.stdin.read().replace(",", " ").split()]
        source = "stdin"
    elif args.spec:
        res = evaluate(_spec(args.spec), args.n)
        if res.death:
            log.warning("evaluation died at n=%d; analysing the prefix", res.death.index)
        values, source = res.values, args.spec
    else:
        raise UsageError("analyze needs a spec or --stdin")
    if not values:
        raise UsageError("no values to analyse")
    result = {"source": source, **_analyze_values(values, args.modulus)}
    fit = result["fit"]
    lines = [f"slow: {result['slow']}",
             f"fit: ({fit['alpha']},{fit['beta']}) p={fit['order_p']}" if fit else "fit: none"]
    if result["frequency"] is not None:
        lines.append("frequency: " + " ".join(map(str, result["frequency"][:40])))
    for i, r in enumerate(result.get("ratio", [])):
        lines.append(f"ratio[residue {i}]: {r['ratio']:.6f}")
    rows = [{"m": m, "count": c} for m, c in enumerate(result["frequency"] or [], start=1)]
    return Outcome(result, "\n".join(lines), rows)


def cmd_reference(args) -> Outcome:
    try:
        values = reference.definitional_sequence(args.alpha, args.beta, args.n)
        rec = reference.canonical_recursion(args.alpha, args.beta, seeded=True) \
            if args.alpha % 2 == 0 else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = {"alpha": args.alpha, "beta": args.beta, "values": values,
              "recursion": str(rec) if rec else None}
    plain = " ".join(map(str, values))
    if rec and args.recursion:
        plain = f"{rec}\n{plain}"
    code = 0
    if args.gf:
        sig = analysis.ConollySignature(args.alpha, args.beta)
        result["gf_matches"] = analysis.gf_coefficients(sig, args.n) == values
        plain += f"\ngenerating function matches: {result['gf_matches']}"
        code = 0 if result["gf_matches"] else 1
    if rec and args.check:
        res = evaluate(rec, args.n)
        result["recursion_matches"] = res.alive and res.values == values
        plain += f"\ncanonical recursion matches: {result['recursion_matches']}"
        code = code or (0 if result["recursion_matches"] else 1)
    return Outcome(result, plain, _value_rows(values), code)


def cmd_pairs(args) -> Outcome:
    pairs = reference.all_table_pairs(args.max_order)
    rows = [{"p": x.order_p, "alpha": x.alpha, "beta": x.beta,
             "recursion": str(reference.canonical_recursion(x.alpha, x.beta, seeded=False))}
            for x in pairs]
    plain = "\n".join(f"p={r['p']} ({r['alpha']},{r['beta']}) {r['recursion']}" for r in rows)
    return Outcome(rows, plain, rows)


# construct

def cmd_construct(args) -> Outcome:
    spec = _spec(args.spec)
    try:
        if args.kind == "weave":
            inits = [tuple(_ints(x)) for x in args.init.split(";")]
            out, values = transforms.weave_fixed_order(transforms.WeaveInput(spec, inits), args.n)
            result = {"spec": str(out), "values": values}
            return Outcome(result, f"{out}\n" + " ".join(map(str, values)), _value_rows(values))
        if args.kind == "interleave":
            out = transforms.interleave_order_multiplying(spec, args.m)
            report = transforms.check_interleaving(spec, out, args.m, args.n) if spec.initial else None
        elif args.kind == "perturb":
            out, report = transforms.perturb(spec, args.m, _ints(args.alphas), _ints(args.betas),
                                             args.n if spec.initial else None)
        else:
            out, report = spec, None
            for _ in range(args.iterate):
                out = transforms.shift_alpha_zero(out, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = {"spec": str(out), "report": report.as_dict() if report else None}
    plain = str(out)
    code = 0
    if report:
        plain += f"\ninterleaving: {report.is_interleaving} (checked {report.checked} terms)"
        code = 0 if report.is_interleaving else 1
    return Outcome(result, plain, [{"spec": str(out)}], code)


# tree

def _tree(args, n: int) -> trees.TreePrefix:
    if args.model == "T":
        return trees.build_T(n)
    return trees.build_U(args.alpha, args.beta, n)


def _tree_dict(t: trees.TreePrefix) -> dict:
    out = {"model": t.model, "labels": t.n, "left_right": list(trees.left_right_counts(t))}
    if t.model == "T":
        out["cells"] = trees.count_cells_L(t)
    else:
        out["alpha"], out["beta"] = t.alpha, t.beta
        out["leaves"] = trees.count_leaves_M(t)
    if t.notes:
        out["notes"] = t.notes
    return out


def cmd_tree(args) -> Outcome:
    if args.action == "diff":
        ok = trees.verify_diff_identity(args.n)
        ks = range(2, 13)
        strings_ok = all("0" + trees.diff_string_F(k) == trees.diff_string_D(k) + "0" for k in ks)
        result = {"bits": args.n, "identity": ok, "shifted_strings_match": strings_ok}
        plain = f"D, F and Conolly differences agree on {args.n} bits: {ok}\n0F_k = D_k0 for k=2..12: {strings_ok}"
        return Outcome(result, plain, [result], 0 if ok and strings_ok else 1)
    try:
        t = _tree(args, args.n)
        if args.action == "build":
            result = _tree_dict(t)
            shown = t
            code = 0
        else:
            pruned = trees.prune_T(t) if args.model == "T" else trees.prune_U(t)
            target = _tree(args, pruned.n)
            ok = trees.same_structure(pruned, target)
            result = {"before": _tree_dict(t), "after": _tree_dict(pruned), "matches": ok}
            pruned.relabel()
            shown = pruned
            code = 0 if ok else 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.dot and args.dot != "-":
        with open(args.dot, "w") as fh:
            fh.write(trees.to_dot(shown) + "\n")
        log.info("wrote %s", args.dot)
    if args.dot == "-":
        plain = trees.to_dot(shown)
    elif args.action == "build":
        plain = " ".join(f"{k}={v}" for k, v in result.items())
    else:
        plain = f"{args.model}({t.n}) -> {args.model}({shown.n}) structure match: {result['matches']}"
    return Outcome(result, plain, [result if args.action == "build" else
                                   {"before": t.n, "after": shown.n, "matches": result["matches"]}],
                   code)


# ceiling

def _sweep_specs(p: int, s_rng, t_rng, off_rng):
    offs = list(itertools.product(range(off_rng[0], off_rng[1] + 1), repeat=p))
    for s in range(s_rng[0], s_rng[1] + 1):
        for t in range(t_rng[0], t_rng[1] + 1):
            for a in offs:
                for b in offs:
                    yield RecursionSpec.from_lists([(s, a), (t, b)])


def cmd_ceiling(args) -> Outcome:
    if args.action == "sweep":
        rows, disagree = [], 0
        for spec in _sweep_specs(args.p, _range(args.s), _range(args.t), _range(args.offsets)):
            v = ceiling.check_conditions(spec, args.p)
            o = ceiling.formal_satisfy_oracle(spec, args.p)
            disagree += v.satisfied != o
            if v.satisfied or o or args.all:
                rows.append({"spec": str(spec), "conditions": v.satisfied, "oracle": o})
        result = {"p": args.p, "rows": rows, "disagreements": disagree}
        plain = "\n".join(f"{r['spec']} {r['conditions']} {r['oracle']}" for r in rows)
        plain += f"\ndisagreements: {disagree}"
        return Outcome(result, plain, rows, 1 if disagree else 0)
    spec = _spec(args.spec, relaxed=True)
    try:
        if args.action == "check":
            v = ceiling.check_conditions(spec, args.p)
            result = v.as_dict()
            ok = v.satisfied
            plain = "satisfied" if ok else f"not satisfied: {v.failed.describe()}"
            if ok and v.d is not None:
                plain += f" (d={v.d}{', swapped' if v.swapped else ''})"
                try:
                    result["min_initial_conditions"] = ceiling.min_initial_conditions(spec, args.p)
                except ValueError:
                    pass
        else:
            ok = ceiling.formal_satisfy_oracle(spec, args.p, args.window)
            result = {"satisfied": ok}
            plain = "formally satisfied" if ok else "not formally satisfied"
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    code = 0
    if args.expect is not None and ok != (args.expect == "true"):
        code = 1
    return Outcome(result, plain, [{"spec": str(spec), **result}], code)


# search

def cmd_search(args) -> Outcome:
    try:
        overrides = {"order": args.order, "alpha": args.alpha, "beta": args.beta,
                     "seed_len": args.seed, "compare_len": args.compare}
        if args.box:
            overrides.update(search.parse_box(args.box))
        if args.config:
            config = search.load_config(args.config, **overrides)
        else:
            if None in (args.order, args.alpha, args.beta):
                raise UsageError("search needs --order, --alpha and --beta (or --config)")
            config = search.SearchConfig(**{k: v for k, v in overrides.items() if v is not None},
                                         log_deaths=args.log_deaths)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    jobs = args.jobs or int(os.environ.get("CONOLLY_JOBS", "1"))
    hits = search.run_search(config, jobs=jobs)
    rows = [h.row() for h in hits]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            _write_csv(fh, rows, ["spec", "matched_len", "alpha", "beta"])
        log.info("wrote %d hits to %s", len(rows), args.out)
    plain = "\n".join(r["spec"] for r in rows) + f"\n{len(rows)} hits"
    return Outcome({"count": len(rows), "hits": rows}, plain, rows)


# plumbing

def _write_csv(fh, rows: list[dict], fields: Optional[list[str]] = None) -> None:
    if not rows:
        return
    fields = fields or list(rows[0])
    w = csv.DictWriter(fh, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="conolly", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[fmt], help="evaluate a recursion")
    p.add_argument("spec")
    p.add_argument("--n", type=int, default=20)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("analyze", parents=[fmt], help="classify a sequence")
    p.add_argument("spec", nargs="?")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--stdin", action="store_true", help="read whitespace-separated values")
    p.add_argument("--modulus", type=int, default=1, help="ratio estimates per residue class")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reference", parents=[fmt], help="definitional (alpha,beta) sequence")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--recursion", action="store_true", help="also print the canonical recursion")
    p.add_argument("--gf", action="store_true", help="compare with generating-function coefficients")
    p.add_argument("--check", action="store_true", help="compare with the canonical recursion")
    p.set_defaults(func=cmd_reference)

    p = sub.add_parser("pairs", parents=[fmt], help="admissible (alpha,beta) pairs")
    p.add_argument("--max-order", type=int, default=4)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("construct", parents=[fmt], help="build new recursions from old")
    p.add_argument("kind", choices=["weave", "interleave", "perturb", "shift"])
    p.add_argument("spec")
    p.add_argument("--init", help="weave: initial vectors, ';'-separated, e.g. '1,1;1,2'")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--alphas", default="")
    p.add_argument("--betas", default="")
    p.add_argument("--alpha", type=int, default=2, help="shift: ceiling denominator")
    p.add_argument("--iterate", type=int, default=1)
    p.add_argument("--n", type=int, default=1000)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("tree", parents=[fmt], help="tree models T and U")
    p.add_argument("action", choices=["build", "prune", "diff"])
    p.add_argument("--model", choices=["T", "U"], default="T")
    p.add_argument("--alpha", type=int, default=0)
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--n", type=int, default=20, help="labels, or bits for diff")
    p.add_argument("--dot", nargs="?", const="-", metavar="PATH",
                   help="write Graphviz source to PATH (stdout if omitted)")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("ceiling", parents=[fmt], help="ceil(n/2p) solutions")
    p.add_argument("action", choices=["check", "oracle", "sweep"])
    p.add_argument("spec", nargs="?")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--expect", choices=["true", "false"])
    p.add_argument("--window", type=int)
    p.add_argument("--s", default="0..6")
    p.add_argument("--t", default="0..6")
    p.add_argument("--offsets", default="1..13")
    p.add_argument("--all", action="store_true", help="sweep: list unsatisfied specs too")
    p.set_defaults(func=cmd_ceiling)

    p = sub.add_parser("search", parents=[fmt], help="search a parameter box")
    p.add_argument("--order", type=int)
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--box", help="e.g. s=0..0,t=0..10,a=1..12,b=1..30")
    p.add_argument("--seed", type=int)
    p.add_argument("--compare", type=int)
    p.add_argument("--jobs", type=int, help="worker processes (default $CONOLLY_JOBS or 1)")
    p.add_argument("--config", help="key = value file with a [search] section")
    p.add_argument("--out", help="write hits as CSV")
    p.add_argument("--log-deaths", action="store_true")
    p.set_defaults(func=cmd_search)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "ceiling" and args.action != "sweep" and not args.spec:
        print("conolly: error: ceiling check/oracle need a spec", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"conolly: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError, AssertionError) as exc:
        print(f"conolly: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - start
    try:
        _emit(args, argv, out, elapsed)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader closed early (e.g. piped to head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return out.code


def _emit(args, argv, out: Outcome, elapsed: float) -> None:
    if args.format == "json":
        envelope = {"command": list(argv if argv is not None else sys.argv[1:]),
                    "result": out.result, "timing": {"seconds": round(elapsed, 6)},
                    "version": __version__}
        print(json.dumps(envelope))
    elif args.format == "csv":
        buf = io.StringIO()
        _write_csv(buf, out.rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(out.plain)


if __name__ == "__main__":
    sys.exit(main())
