"""Command-line front end: ``gengraph <command> --group alt|sym --n N ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cache import CacheError, ResultCache
from .config import Caps, InputError, MembershipError, ResourceError
from .graph import (
    circuit_json,
    degree,
    degree_table,
    euler_verdict,
    even_degree_criterion,
    predicted_odd,
)
from .groups import Family, GroupSpec, class_of, conjugacy_classes, normalizer_of_cyclic
from .mobius import degree_via_mobius, overgroup_lattice, symbolic_lattices
from .numtheory import decompositions, odd_degree_probability
from .perm import Permutation, PermutationError, cycle_shape, element_order

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_MEMBERSHIP = 4
EXIT_CAP = 5
EXIT_INPUT = 6
EXIT_IO = 7

EXIT_CODES_HELP = """exit codes:
  0  success
  1  verify: at least one fact failed
  2  usage error (bad arguments)
  3  permutation string could not be parsed
  4  element is not in the group (e.g. odd permutation for Alt)
  5  a configured cap was exceeded
  6  other invalid input (unsupported n, unknown suite, ...)
  7  cache or file I/O failure
"""

CACHED_OPS = ("degrees", "degree", "euler", "mobius", "lattice", "decompose", "prob", "normalizer")


# -- rendering -------------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _spec(req: dict) -> GroupSpec:
    return GroupSpec(Family(req["group"]), req["n"])


def _element(req: dict, spec: GroupSpec) -> Permutation:
    if not req.get("element"):
        raise InputError("--element is required")
    g = Permutation.parse(req["element"], spec.n)
    spec.check(g)
    return g


def _csv_rows(header: list[str], rows: list[list]) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def op_degrees(req, caps):
    report = degree_table(_spec(req), caps, threads=req.get("threads") or caps.threads)
    fmt = req["format"]
    if fmt == "json":
        return _dump(report.to_json())
    if fmt == "csv":
        return report.to_csv()
    return report.to_text() + "\n"


def op_degree(req, caps):
    spec = _spec(req)
    g = _element(req, spec)
    d = degree(spec, g, caps)
    verdict = even_degree_criterion(spec, g, caps) if not g.is_identity() else None
    cls = class_of(spec, g, conjugacy_classes(spec, caps))
    out = {
        "group": spec.name,
        "element": str(g),
        "class": cls.label,
        "shape": list(cycle_shape(g).parts),
        "order": element_order(g),
        "degree": d,
        "parity": "odd" if d % 2 else "even",
        "predicted_parity": "odd" if predicted_odd(spec, g) else "even",
        "criterion": verdict.label if verdict else None,
    }
    return _render_record(out, req["format"], f"δ({g}) = {d} in Γ({spec.name})")


def _render_record(out: dict, fmt: str, headline: str) -> str:
    if fmt == "json":
        return _dump(out)
    if fmt == "csv":
        return _csv_rows(list(out), [[_flat(v) for v in out.values()]])
    lines = [headline] + [f"  {k}: {_flat(v)}" for k, v in out.items()]
    return "\n".join(lines) + "\n"


def _flat(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    return "" if v is None else str(v)


def op_euler(req, caps):
    spec = _spec(req)
    mode = req.get("mode") or "predicate_only"
    v = euler_verdict(spec, mode, caps)
    out = v.to_json()
    if req["format"] == "json":
        return _dump(out)
    head = f"Γ({spec.name}) is {'Eulerian' if v.predicted_eulerian else 'not Eulerian'} (predicate)"
    flat = {k: val for k, val in out.items() if k != "circuit"}
    if v.circuit is not None:
        flat["circuit_length"] = len(v.circuit) - 1
    return _render_record({k: json.dumps(val) if isinstance(val, dict) else val for k, val in flat.items()},
                          req["format"], head)


def op_mobius(req, caps):
    spec = _spec(req)
    g = _element(req, spec)
    lat = overgroup_lattice(spec, g, caps)
    d = degree_via_mobius(spec, g, caps, lattice=lat)
    out = {
        "group": spec.name,
        "element": str(g),
        "degree_via_mobius": d,
        "terms": [{"order": nd.order, "mobius": nd.mobius,
                   "structure_hint": nd.annotations.get("structure_hint", "")}
                  for nd in lat.nodes if nd.mobius],
    }
    if req["format"] == "json":
        return _dump(out)
    if req["format"] == "csv":
        return _csv_rows(["order", "mobius", "structure_hint"],
                         [[t["order"], t["mobius"], t["structure_hint"]] for t in out["terms"]])
    terms = " ".join(f"{'+' if t['mobius'] > 0 else '-'} {abs(t['mobius'])}·{t['order']}" for t in out["terms"])
    return f"δ({g}) = Σ μ(H)|H| = {terms.lstrip('+ ')} = {d}\n"


def op_lattice(req, caps):
    if req.get("symbolic"):
        lats = symbolic_lattices()
        if req["symbolic"] not in lats:
            raise InputError(f"no printed lattice for {req['symbolic']}; have {', '.join(lats)}")
        lat = lats[req["symbolic"]]
        if req["format"] == "json":
            return _dump(lat.to_json())
        lines = [f"{lat.group} [{lat.source}]"]
        lines += [f"  {nd.name:<14} |H| = {nd.order:<14} μ = {nd.mobius}" for nd in lat.nodes]
        lines.append(f"  δ = {lat.degree()} ({lat.degree_parity()})")
        return "\n".join(lines) + "\n"
    spec = _spec(req)
    g = _element(req, spec)
    lat = overgroup_lattice(spec, g, caps)
    fmt = req["format"]
    if fmt == "json":
        return _dump(lat.to_json())
    if fmt == "dot":
        return lat.to_dot() + "\n"
    if fmt == "csv":
        return _csv_rows(["index", "order", "mobius", "structure_hint", "transitive", "primitive", "generators"],
                         [[i, nd.order, nd.mobius, nd.annotations["structure_hint"], nd.annotations["transitive"],
                           nd.annotations["primitive"], " ".join(map(str, nd.generators))]
                          for i, nd in enumerate(lat.nodes)])
    lines = [f"overgroups of <{g}> in {spec.name}: {len(lat.nodes)} nodes"]
    for i, nd in enumerate(lat.nodes):
        lines.append(f"  [{i}] |H| = {nd.order:<6} μ = {nd.mobius:<3} {nd.annotations['structure_hint']}")
    return "\n".join(lines) + "\n"


def op_decompose(req, caps):
    certs = decompositions(req["n"], Family(req["group"]))
    if req["format"] == "json":
        return _dump([c.to_json() for c in certs])
    if req["format"] == "csv":
        return _csv_rows(["sum", "p", "k", "shape"],
                         [[c.render(), c.p, c.k, " ".join(map(str, c.shape.parts))] for c in certs])
    if not certs:
        return f"no decomposition of {req['n']} for {req['group']}\n"
    return "".join(f"{c.render()}, shape {{{', '.join(map(str, c.shape.parts))}}}\n" for c in certs)


def op_prob(req, caps):
    spec = _spec(req)
    rep = odd_degree_probability(spec)
    return _render_record(rep.to_json(), req["format"],
                          f"P(δ(g) odd) in Γ({spec.name}) = {rep.numerator}/{rep.denominator}")


def op_normalizer(req, caps):
    spec = _spec(req)
    g = _element(req, spec)
    rep = normalizer_of_cyclic(spec, g, caps, method=req.get("method") or "auto")
    return _render_record(rep.to_json(), req["format"],
                          f"|N_{spec.name}(<{g}>)| = {rep.normalizer_order}")


OPS = {
    "degrees": op_degrees,
    "degree": op_degree,
    "euler": op_euler,
    "mobius": op_mobius,
    "lattice": op_lattice,
    "decompose": op_decompose,
    "prob": op_prob,
    "normalizer": op_normalizer,
}


def compute(request: dict, caps: Caps | None = None) -> str:
    """Render one request; this is what the cache stores and audits."""
    caps = caps or Caps.load(**(request.get("caps") or {}))
    return OPS[request["op"]](request, caps)


# -- argument parsing ------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with cap overrides")
    common.add_argument("--threads", type=int, default=None, help="worker processes (results do not depend on it)")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")
    common.add_argument("--cache-dir", help="cache directory (default: $GENGRAPH_CACHE_DIR or ~/.cache/gengraph)")

    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--group", choices=["alt", "sym"], required=True)
    group.add_argument("--n", type=int, required=True)

    elem = argparse.ArgumentParser(add_help=False)
    elem.add_argument("--element", required=True, help='cycle notation, e.g. "(1 2 3)(4 5)"')

    def fmt(*extra):
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--format", choices=["json", "csv", "text", *extra], default="text")
        return p

    top = argparse.ArgumentParser(
        prog="gengraph",
        description="Generating graphs of Alt_n and Sym_n.",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = top.add_subparsers(dest="command", required=True)
    sub.add_parser("degrees", parents=[common, group, fmt()], help="degree of every conjugacy class")
    sub.add_parser("degree", parents=[common, group, elem, fmt()], help="degree of one element")
    e = sub.add_parser("euler", parents=[common, group, fmt()], help="Eulerian verdict")
    e.add_argument("--mode", choices=["predicate_only", "empirical", "with_circuit"], default=None)
    e.add_argument("--certificate", help="write the Euler circuit (JSON) here; implies --mode with_circuit")
    sub.add_parser("mobius", parents=[common, group, elem, fmt()], help="degree via the Moebius sum")
    lat = sub.add_parser("lattice", parents=[common, fmt("dot")], help="overgroup lattice of <g>")
    lat.add_argument("--group", choices=["alt", "sym"])
    lat.add_argument("--n", type=int)
    lat.add_argument("--element")
    lat.add_argument("--symbolic", help="print a transcribed lattice instead, e.g. Alt_11")
    sub.add_parser("decompose", parents=[common, group, fmt()], help="decompositions n = sum a_i p^i")
    sub.add_parser("prob", parents=[common, group, fmt()], help="probability of an odd-degree vertex")
    nz = sub.add_parser("normalizer", parents=[common, group, elem, fmt()], help="N_G(<g>) and C_G(g)")
    nz.add_argument("--method", choices=["auto", "scan", "constructive"], default="auto")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", help="suite id (repeatable; default all)")
    v.add_argument("--format", choices=["json", "csv", "markdown"], default="markdown")
    v.add_argument("--output", help="write the ledger here instead of stdout")
    c = sub.add_parser("cache", parents=[common], help="cache administration")
    c.add_argument("action", choices=["stats", "clear", "audit"])
    c.add_argument("--sample", type=int, default=None, help="audit only this many entries")
    return top


def _request(args) -> dict:
    req = {"op": args.command, "format": args.format}
    for name in ("group", "n", "element", "mode", "method", "symbolic"):
        val = getattr(args, name, None)
        if val is not None:
            req[name] = val
    if req.get("element") and req.get("n"):
        # canonical encoding: "(2 3 1)" and "(1 2 3)" share one cache entry
        req["element"] = str(Permutation.parse(req["element"], req["n"]))
    return req


def _run(args) -> int:
    overrides = {"threads": args.threads} if args.threads else {}
    caps = Caps.load(args.config, **overrides)
    cache = ResultCache(args.cache_dir)

    if args.command == "verify":
        from .verify import SUITES, export_ledger, run_all

        ledger = run_all(caps, tuple(args.suite) if args.suite else SUITES)
        text = export_ledger(ledger, args.format)
        if args.output:
            Path(args.output).write_text(text)
            counts = ledger.counts()
            print(f"pass={counts['pass']} fail={counts['fail']} skipped={counts['skipped']}")
        else:
            sys.stdout.write(text)
        return EXIT_OK if ledger.ok else EXIT_VERIFY_FAILED

    if args.command == "cache":
        if args.action == "stats":
            sys.stdout.write(_dump(cache.stats()))
        elif args.action == "clear":
            print(f"removed {cache.clear()} entries")
        else:
            results = cache.audit(lambda r: compute(r), args.sample)
            bad = [r for r in results if not r["match"]]
            sys.stdout.write(_dump({"audited": len(results), "mismatches": bad}))
            return EXIT_VERIFY_FAILED if bad else EXIT_OK
        return EXIT_OK

    if args.command == "lattice" and not args.symbolic and not (args.group and args.n and args.element):
        raise InputError("lattice needs --group, --n and --element (or --symbolic NAME)")
    if args.command == "euler" and args.certificate:
        args.mode = "with_circuit"
    req = _request(args)
    if caps != Caps():
        req["caps"] = {k: v for k, v in caps.as_dict().items() if k != "threads"}
    cached = None if args.no_cache else cache.get(req)
    if cached is not None:
        text = cached
    else:
        req_run = dict(req, threads=caps.threads)
        text = OPS[req["op"]](req_run, caps)
        if not args.no_cache:
            cache.put(req, text)
    sys.stdout.write(text)

    if args.command == "euler" and args.certificate:
        v = euler_verdict(_spec(req), "with_circuit", caps)
        if v.circuit is None:
            print("no circuit: graph is not Eulerian", file=sys.stderr)
        else:
            Path(args.certificate).write_text(circuit_json(v.circuit) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _run(args)
    except PermutationError as exc:
        print(f"error: cannot parse permutation: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MembershipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMBERSHIP
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CacheError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
