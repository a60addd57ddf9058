"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 refuted / witness found,
3 unknown / nothing found within the budget.
"""
import argparse
import json
import os
import platform
import sys
from importlib import metadata

from .action import ActionFamily, action_degree, freeness_check
from .catalog import ACTIONS, NAMED_DERIVATIONS, action, entry, family_ring, named_derivation
from .derivation import depth_bound, format_derivation, parse_derivation
from .errors import CapabilityError, InconsistencyError, InputError
from .induced import Chart, induced_action
from .lieformat import LieFile, emit_lie, parse_lie
from .properness import DEFAULT_ANSATZ, properness_witness_search
from .reduction import dim1_pipeline, family_split, reduce_by_center, reduce_common_shadow
from .slices import SliceFunctions, action_degree_one, degree_one_slice, slice_function_search
from .decomposition import levi_malcev_decomposition
from .slices import LinearSlice

EXIT_OK, EXIT_INPUT, EXIT_REFUTED, EXIT_UNKNOWN = 0, 1, 2, 3
VERDICT_EXIT = {
    "Refuted": EXIT_REFUTED,
    "WitnessFound": EXIT_REFUTED,
    "Unknown": EXIT_UNKNOWN,
    "NoneFound": EXIT_UNKNOWN,
}


def versions():
    out = {"python": platform.python_version()}
    for pkg in ("artifact", "sympy"):
        try:
            out[pkg] = metadata.version(pkg)
        except metadata.PackageNotFoundError:
            out[pkg] = None
    return out


def load(source):
    """(name, LieFile, golden block) from a path or a catalog name."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            lf = parse_lie(fh.read())
        name = lf.algebra.name if lf.algebra else os.path.basename(source)
        return name, lf, {}
    try:
        e = entry(source)
    except InputError:
        raise InputError(f"{source!r} is neither a file nor a catalog entry") from None
    return e.name, e.lie, e.golden


def _pair(lf, args):
    if lf.algebra is None:
        raise InputError("file declares no algebra")
    return lf.sub(args.v), lf.sub(args.h)


def _provenance(golden, keys, observed=None):
    observed = observed or {}
    out = []
    for key in keys:
        if key in golden:
            value, tag = golden[key]
            item = {"key": key, "tag": tag, "expected": value}
            if key in observed:
                item["matches"] = observed[key] == value
            out.append(item)
    return out


def _derivation_strings(derivs):
    return [format_derivation(d) for d in derivs]


def _chart(lf, algebra, h, name):
    if name is None:
        return None
    if name not in lf.charts:
        raise InputError(f"unknown chart {name!r}")
    return Chart(algebra, h, lf.charts[name])


# -- commands ---------------------------------------------------------------------------

def cmd_validate(args):
    name, lf, _ = load(args.file)
    data = {"derivations": sorted(lf.derivations), "subspaces": sorted(lf.subs)}
    if lf.algebra is not None:
        A = lf.algebra
        data.update({"name": A.name, "dim": A.dim, "brackets": len(A.brackets), "step": A.step})
        data["canonical"] = emit_lie(lf)
    return "valid", data, []


def cmd_series(args):
    name, lf, golden = load(args.file)
    A = lf.algebra
    if A is None:
        raise InputError("file declares no algebra")
    dims = [s.dim for s in A.central_series]
    data = {
        "dims": dims,
        "step": A.step,
        "center_dim": A.center.dim,
        "layers": [
            [_fmt(A, b) for b in s.basis] for s in A.central_series
        ],
    }
    prov = _provenance(golden, ["central_series", "step"], {"central_series": dims, "step": A.step})
    return "ok", data, prov


def _fmt(A, b):
    from .algebra import format_vector

    return format_vector(A.labels, b)


def cmd_freeness(args):
    name, lf, golden = load(args.file)
    v, h = _pair(lf, args)
    cert = freeness_check(lf.algebra, v, h, budget=args.budget, seed=args.seed, samples=args.samples)
    return cert.verdict, cert.to_dict(), _provenance(golden, ["freeness"])


def cmd_induced(args):
    name, lf, golden = load(args.file)
    v, h = _pair(lf, args)
    chart = _chart(lf, lf.algebra, h, args.chart)
    chart, derivs = induced_action(lf.algebra, v, h, chart=chart, variables=lf.variables)
    data = {"chart": list(chart.ring.names), "derivations": _derivation_strings(derivs)}
    return "ok", data, _provenance(golden, ["induced"])


def cmd_slice(args):
    name, lf, golden = load(args.file)
    v, h = _pair(lf, args)
    A = lf.algebra
    dec = levi_malcev_decomposition(A, v, h)
    if not isinstance(dec, tuple):
        return "SliceFound", {"method": "levi-malcev", **LinearSlice(A, dec).describe()}, []
    chart = _chart(lf, A, h, args.chart)
    chart, derivs = induced_action(A, v, h, chart=chart, variables=lf.variables)
    data = {"chart": list(chart.ring.names), "derivations": _derivation_strings(derivs)}
    if action_degree_one(derivs):
        res = degree_one_slice(derivs, args.degree)
    else:
        res = slice_function_search(derivs, args.degree)
    prov = _provenance(golden, ["slice_search", "slice_function"])
    if isinstance(res, SliceFunctions):
        data.update({"method": res.method, "degree": res.degree, "functions": [str(f) for f in res.functions]})
        return "SliceFound", data, prov
    data.update({"method": res.method, "ceiling": res.ceiling})
    return "NoneFound", data, prov


def _depth_source(source):
    if source in NAMED_DERIVATIONS:
        return [named_derivation(source)]
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            lf = parse_lie(fh.read())
        return list(lf.derivations.values())
    try:
        return list(entry(source).lie.derivations.values())
    except InputError:
        pass
    return [parse_derivation(source)]


def cmd_depth(args):
    derivs = _depth_source(args.source)
    results = []
    for d in derivs:
        bounds, top = depth_bound(d, args.d_x0)
        results.append({
            "derivation": format_derivation(d),
            "bounds": bounds,
            "max": top,
            "note": f"g^({top - 1}) ≠ 0",
        })
    data = {"d_x0": args.d_x0, "results": results}
    prov = []
    if args.source in NAMED_DERIVATIONS:
        src = NAMED_DERIVATIONS[args.source][0]
        prov = _provenance(entry(src).golden, ["depth"], {"depth": results[0]["bounds"]})
    return "ok", data, prov


def _family(source):
    if source in ACTIONS:
        return action(source)[1], source
    name, lf, _ = load(source)
    if lf.algebra is not None and "v" in lf.subs and "h" in lf.subs:
        _, derivs = induced_action(lf.algebra, lf.sub("v"), lf.sub("h"), variables=lf.variables)
        return derivs, name
    if lf.derivations:
        return family_ring(list(lf.derivations.values()))[1], name
    raise InputError(f"{source!r} defines no action")


def cmd_witness(args):
    derivs, name = _family(args.source)
    fam = ActionFamily.from_derivations(derivs, name)
    res = properness_witness_search(fam, args.ansatz, seed=args.seed)
    data = {"action": _derivation_strings(derivs), "action_degree": action_degree(fam), **res.to_dict()}
    data.pop("verdict")
    return res.verdict, data, []


def cmd_reduce(args):
    name, lf, golden = load(args.file)
    v, h = _pair(lf, args)
    A = lf.algebra
    data = {
        "center": reduce_by_center(A, v, h).describe(),
        "common_shadow": reduce_common_shadow(A, v, h).describe(),
    }
    split = family_split(A, v, h)
    data["family_split"] = split[2].describe() if split else None
    if v.dim == 1:
        try:
            res = dim1_pipeline(A, v, h, variables=lf.variables)
            data["dim1"] = res.describe()
        except InputError as exc:
            data["dim1"] = {"kind": "Rejected", "reason": str(exc)}
    prov = _provenance(golden, ["dim1_route", "family_split"])
    return "reduced", data, prov


def cmd_demo(args):
    name, lf, golden = load(args.name)
    A = lf.algebra
    if A is None or "v" not in lf.subs or "h" not in lf.subs:
        raise InputError(f"{args.name!r} has no (v, h) pair")
    v, h = lf.sub("v"), lf.sub("h")
    dims = [s.dim for s in A.central_series]
    cert = freeness_check(A, v, h, seed=args.seed)
    chart, derivs = induced_action(A, v, h, variables=lf.variables)
    data = {
        "central_series": dims,
        "freeness": cert.to_dict(),
        "chart": list(chart.ring.names),
        "induced": _derivation_strings(derivs),
    }
    dec = levi_malcev_decomposition(A, v, h)
    if not isinstance(dec, tuple):
        data["slice"] = {"method": "levi-malcev", **LinearSlice(A, dec).describe()}
    else:
        if action_degree_one(derivs):
            res = degree_one_slice(derivs, args.degree)
        else:
            res = slice_function_search(derivs, args.degree)
        if isinstance(res, SliceFunctions):
            data["slice"] = {"verdict": "SliceFound", "functions": [str(f) for f in res.functions]}
        else:
            data["slice"] = {"verdict": "NoneFound", "ceiling": res.ceiling}
    prov = _provenance(golden, sorted(golden), {"central_series": dims})
    return "ok", data, prov


# -- plumbing ------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for all sampling (default 0)")
    parser = argparse.ArgumentParser(prog="biquotient", description=__doc__.splitlines()[0], parents=[common])
    parser.set_defaults(json=False, seed=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    def pair(p):
        p.add_argument("--v", default="v", help="name of the v subspace (default v)")
        p.add_argument("--h", default="h", help="name of the h subspace (default h)")

    p = add("validate", cmd_validate, "parse a .lie file and check the Jacobi identity")
    p.add_argument("file")
    p = add("series", cmd_series, "descending central series")
    p.add_argument("file")
    p = add("freeness", cmd_freeness, "certify or refute freeness of the V x H action")
    p.add_argument("file")
    pair(p)
    p.add_argument("--budget", type=int, default=None, help="degree budget (default 2 * step)")
    p.add_argument("--samples", type=int, default=1000)
    p = add("slice", cmd_slice, "search a global slice")
    p.add_argument("file")
    pair(p)
    p.add_argument("--degree", type=int, default=6, help="largest slice-function degree")
    p.add_argument("--chart", default=None, help="named chart from the file")
    p = add("induced", cmd_induced, "induced V action on G/H as derivations")
    p.add_argument("file")
    pair(p)
    p.add_argument("--chart", default=None, help="named chart from the file")
    p = add("depth", cmd_depth, "depth lower bounds for a triangular derivation")
    p.add_argument("source", help="catalog derivation name, .lie file or derivation text")
    p.add_argument("--d-x0", type=int, default=1, dest="d_x0")
    p = add("witness", cmd_witness, "search a non-properness ray")
    p.add_argument("source", help="catalog action name, catalog entry or .lie file")
    p.add_argument("--ansatz", type=int, default=DEFAULT_ANSATZ)
    p = add("reduce", cmd_reduce, "run the reduction steps")
    p.add_argument("file")
    pair(p)
    p = add("demo", cmd_demo, "end-to-end run on a catalog pair")
    p.add_argument("name")
    p.add_argument("--degree", type=int, default=6)
    return parser


def _inputs(args):
    skip = {"func", "json", "seed", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _human(report, out):
    print(f"{report['command']}: {report['verdict']}", file=out)
    _print_tree(report["data"], out, 1)
    for item in report["provenance"]:
        status = "" if "matches" not in item else (" ok" if item["matches"] else " MISMATCH")
        print(f"  [{item['tag']}] {item['key']} = {item['expected']}{status}", file=out)


def _print_tree(data, out, indent):
    pad = "  " * indent
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                print(f"{pad}{k}:", file=out)
                _print_tree(v, out, indent + 1)
            else:
                print(f"{pad}{k}: {_short(v)}", file=out)
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and not _flat(v):
                print(f"{pad}-", file=out)
                _print_tree(v, out, indent + 1)
            else:
                print(f"{pad}- {_short(v)}", file=out)


def _flat(v):
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values())
    return all(not isinstance(x, (dict, list)) for x in v)


def _short(v):
    if isinstance(v, dict):
        return ", ".join(f"{k}: {x}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        verdict, data, provenance = args.func(args)
    except (InputError, CapabilityError, InconsistencyError, OSError) as exc:
        report = {
            "command": args.command,
            "inputs": _inputs(args),
            "verdict": "Error",
            "data": {"error": str(exc), "type": type(exc).__name__},
            "provenance": [],
            "seed": args.seed,
            "versions": versions(),
        }
        if args.json:
            print(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str), file=out)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {
        "command": args.command,
        "inputs": _inputs(args),
        "verdict": verdict,
        "data": data,
        "provenance": provenance,
        "seed": args.seed,
        "versions": versions(),
    }
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str), file=out)
    else:
        _human(report, out)
    return VERDICT_EXIT.get(verdict, EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
