"""Command-line front end.

Subcommands cover every analysis the library exposes: bounds reports,
footprint tables, Steiner packings, the code constructions with
exhaustive verification, the relay gap family, and the sumset lemma
suite.  Reports come in a fixed text format or as a versioned structured
document ("v1") with stable key order; structured output is byte-stable
for a fixed config and seed.  Exit status is 0 iff no operation erred;
on error nothing partial is emitted.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from dataclasses import dataclass, field

from . import bounds as bounds_mod
from . import catalog, codes, functions, network, sumsets
from .errors import NetfuncapError, ParseError, UnknownExample, ValidationError

DEFAULT_SEED = 1729
STATE_BUDGET_ENV = "NETFUNCAP_BUDGET_STATES"


@dataclass
class RunConfig:
    """Parsed invocation: one subcommand plus shared knobs."""

    subcommand: str
    options: dict = field(default_factory=dict)
    output_format: str = "text"
    budget_edges: int = network.DEFAULT_EDGE_BUDGET
    budget_states: int = functions.DEFAULT_STATE_BUDGET
    budget_generators: int = codes.DEFAULT_GENERATOR_BUDGET
    seed: int = DEFAULT_SEED
    tol: float = bounds_mod.DEFAULT_TOL

    def __post_init__(self):
        if min(self.budget_edges, self.budget_states, self.budget_generators) <= 0:
            raise ValidationError("budgets must be positive")
        if not 0 < self.tol <= 1e-3:
            raise ValidationError("tolerance must lie in (0, 1e-3]")
        if self.output_format not in ("text", "structured"):
            raise ValidationError(f"unknown format {self.output_format!r}")


# -- document parsing ----------------------------------------------------------


def parse_network(document) -> network.NetworkSpec:
    """NetworkSpec from a JSON document (text or already-parsed dict).

    Keys: nodes (strings), edges (pairs; repetition = parallel edges),
    sources (ordered), receiver, alphabet.  Validation beyond shape is
    delegated to compilation.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError("document", f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ParseError("document", "top level must be an object")
    for key in ("nodes", "edges", "sources", "receiver", "alphabet"):
        if key not in document:
            raise ParseError(key)
    nodes = document["nodes"]
    edges = document["edges"]
    sources = document["sources"]
    receiver = document["receiver"]
    alphabet = document["alphabet"]
    if not isinstance(nodes, list) or not all(isinstance(v, str) for v in nodes):
        raise ParseError("nodes", "nodes must be a list of strings")
    if not isinstance(edges, list) or not all(
        isinstance(e, (list, tuple)) and len(e) == 2 for e in edges
    ):
        raise ParseError("edges", "edges must be a list of [tail, head] pairs")
    if not isinstance(sources, list) or not sources:
        raise ParseError("sources", "sources must be a nonempty list")
    if not isinstance(receiver, str):
        raise ParseError("receiver", "receiver must be a node id string")
    if not isinstance(alphabet, int):
        raise ParseError("alphabet", "alphabet must be an integer size")
    spec = network.NetworkSpec(
        nodes=nodes,
        edges=[tuple(e) for e in edges],
        sources=sources,
        receiver=receiver,
        alphabet_size=alphabet,
    )
    network.compile_network(spec)  # validate eagerly
    return spec


def emit_network(spec: network.NetworkSpec) -> dict:
    return {
        "nodes": list(spec.nodes),
        "edges": [list(e) for e in spec.edges],
        "sources": list(spec.sources),
        "receiver": spec.receiver,
        "alphabet": spec.alphabet_size,
    }


_KIND_ALIASES = {
    "identity": "identity",
    "arithmetic_sum": "arithmetic_sum",
    "mod_sum": "mod_sum",
    "histogram": "histogram",
    "linear": "linear",
    "maximum": "maximum",
    "minimum": "minimum",
    "table": "table",
}


def parse_function(document, s: int, q: int) -> functions.TargetFunction:
    """TargetFunction from a JSON document, for arity s over alphabet q.

    Keys: kind plus kind-specific parameters (r, coeffs, values) and an
    optional divisible flag.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError("document", f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ParseError("document", "top level must be an object")
    if "kind" not in document:
        raise ParseError("kind")
    kind = _KIND_ALIASES.get(document["kind"])
    if kind is None:
        raise ParseError("kind", f"unknown kind {document['kind']!r}")
    kwargs = {}
    if kind == "mod_sum":
        if "r" not in document:
            raise ParseError("r", "mod_sum needs a modulus r")
        kwargs["r"] = int(document["r"])
    if kind == "linear":
        if "coeffs" not in document:
            raise ParseError("coeffs", "linear needs coefficients")
        kwargs["coeffs"] = list(document["coeffs"])
    if kind == "table":
        if "values" not in document:
            raise ParseError("values", "table needs a value list")
        kwargs["values"] = list(document["values"])
    if "divisible" in document:
        kwargs["divisible"] = bool(document["divisible"])
    return functions.TargetFunction(kind, s, q, **kwargs)


def emit_function(f: functions.TargetFunction) -> dict:
    doc = {"kind": f.kind}
    if f.kind == "mod_sum":
        doc["r"] = f.r
    if f.kind == "linear":
        doc["coeffs"] = list(f.coeffs)
    if f.kind == "table":
        doc["values"] = [
            list(v) if isinstance(v, tuple) else v for v in f._table
        ]
    doc["divisible"] = f.declared_divisible
    return doc


_SHORTHAND = re.compile(r"^([a-z_]+)(?:\(([^)]*)\))?$")


def function_from_argument(text: str, s: int, q: int) -> functions.TargetFunction:
    """Accept inline JSON, a JSON file path, or name(args) shorthand."""
    text = text.strip()
    if text.startswith("{"):
        return parse_function(text, s, q)
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return parse_function(fh.read(), s, q)
    match = _SHORTHAND.match(text)
    if not match:
        raise ParseError("function", f"cannot interpret {text!r}")
    kind, args = match.group(1), match.group(2)
    doc = {"kind": kind}
    if args:
        values = [int(a) for a in args.split(",") if a.strip() != ""]
        if kind == "mod_sum":
            doc["r"] = values[0]
        elif kind == "linear":
            doc["coeffs"] = values
        else:
            raise ParseError("function", f"{kind} takes no inline arguments")
    return parse_function(doc, s, q)


def builtin_example(name: str, params: dict | None = None):
    """(NetworkSpec, default TargetFunction) for a named builtin network."""
    return catalog.builtin_example(name, params)


# -- report assembly -------------------------------------------------------------


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _load_network(options) -> tuple:
    name = options.get("example")
    if name:
        params = {}
        if options.get("M") is not None:
            params["M"] = options["M"]
        if options.get("L") is not None:
            params["L"] = options["L"]
        if options.get("s") is not None:
            params["s"] = options["s"]
        spec, default_f = builtin_example(name, params)
    elif options.get("network"):
        with open(options["network"], encoding="utf-8") as fh:
            spec = parse_network(fh.read())
        default_f = functions.arithmetic_sum(len(spec.sources), spec.alphabet_size)
    else:
        raise ParseError("network", "need --example or --network")
    net = network.compile_network(spec)
    if options.get("function"):
        f = function_from_argument(
            options["function"], net.num_sources, net.alphabet_size
        )
    else:
        f = default_f
    return net, f


def _bounds_document(net, f, tol) -> dict:
    report = bounds_mod.bounds_report(net, f, tol)
    return {
        "upper": report.upper,
        "upper_symbolic": report.upper_symbolic,
        "upper_witness_edges": sorted(report.upper_witness.edge_set),
        "flow_diagnostic": report.flow_diagnostic,
        "lowers": [
            {
                "tag": e.tag,
                "value": e.value,
                "note": e.note,
                "citation_backed": e.citation_backed,
                "symbolic": e.symbolic,
            }
            for e in report.lowers
        ],
        "achievable": [
            {"tag": e.tag, "value": e.value, "note": e.note, "symbolic": e.symbolic}
            for e in report.achievable
        ],
        "best_lower": report.best_lower,
        "certified": report.certified,
    }


def _bounds_text(doc) -> list:
    lines = [
        f"upper (cut-set): {_fmt(doc['upper'])} = {doc['upper_symbolic']} "
        f"[witness edges {','.join(str(e) for e in doc['upper_witness_edges'])}]",
        f"flow diagnostic: {_fmt(doc['flow_diagnostic'])}",
    ]
    for entry in doc["lowers"]:
        mark = " (citation-backed)" if entry["citation_backed"] else ""
        symbolic = f" = {entry['symbolic']}" if entry["symbolic"] else ""
        lines.append(
            f"lower {entry['tag']}: {_fmt(entry['value'])}{symbolic}{mark}"
        )
    for entry in doc["achievable"]:
        lines.append(
            f"achievable {entry['tag']}: {_fmt(entry['value'])} = {entry['symbolic']}"
        )
    lines.append(f"best lower: {_fmt(doc['best_lower'])}")
    lines.append(f"certified: {'true' if doc['certified'] else 'false'}")
    return lines


def _run_bounds(config) -> dict:
    net, f = _load_network(config.options)
    return _bounds_document(net, f, config.tol)


def _run_footprint(config) -> dict:
    options = config.options
    if options.get("example") or options.get("network"):
        net, f = _load_network(options)
        s, q = net.num_sources, net.alphabet_size
    else:
        if options.get("s") is None or options.get("q") is None:
            raise ParseError("s/q", "footprint needs --example or both --s and --q")
        s, q = options["s"], options["q"]
        if not options.get("function"):
            raise ParseError("function")
        f = function_from_argument(options["function"], s, q)
    if options.get("index_set"):
        wanted = [tuple(sorted(options["index_set"]))]
    else:
        wanted = sorted(
            functions.footprint_table(f).keys(), key=lambda t: (len(t), t)
        )
    rows = [
        {"index_set": list(idx), "classes": functions.footprint_size(f, idx)}
        for idx in wanted
    ]
    return {
        "function": f.kind,
        "s": s,
        "q": q,
        "range_size": functions.range_size(f),
        "rows": rows,
    }


def _run_steiner(config) -> dict:
    net, _ = _load_network(config.options)
    packing = bounds_mod.steiner_packing(net)
    return {
        "tree_count": len(packing.trees),
        "packing_value": packing.value,
        "packing_symbolic": bounds_mod._fraction_str(packing.value),
        "trees": [
            {"edges": sorted(t), "weight": w}
            for t, w in zip(packing.trees, packing.weights)
        ],
    }


def _verify_document(net, f, code, budget) -> dict:
    outcome = codes.verify_code(net, f, code, budget)
    doc = {
        "k": code.k,
        "n": code.n,
        "rate": code.rate,
        "pass": outcome.ok,
        "checked_generators": outcome.checked_count,
    }
    if not outcome.ok:
        doc["counterexample"] = [list(block) for block in outcome.counterexample]
    return doc


def _maybe_write_code(options, net, code) -> str | None:
    path = options.get("out")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(codes.code_to_json(net, code))
    return path


def _run_tree_code(config) -> dict:
    options = config.options
    net, f = _load_network(options)
    k, n = options.get("k"), options.get("n")
    if k is None or n is None:
        k, n = codes.best_tree_rate_pair(net, f)
    code = codes.tree_code(net, f, k, n)
    doc = {
        "k": k,
        "n": n,
        "rate_bound": codes.tree_rate_bound(net, f),
        "verify": _verify_document(net, f, code, config.budget_generators),
    }
    path = _maybe_write_code(options, net, code)
    if path:
        doc["written"] = path
    return doc


def _run_diamond_code(config) -> dict:
    options = config.options
    k = options.get("k") or 2
    code = codes.diamond_code(k)
    net = codes.diamond_network()
    f = functions.arithmetic_sum(3, 2)
    doc = {
        "k": code.k,
        "n": code.n,
        "rate": code.rate,
        "rate_limit": 2 / (1 + functions.log_base(3, 2)),
        "counting_feasible": codes.diamond_counting_feasible(code.k, code.n),
    }
    if 2 ** (3 * code.k) <= config.budget_generators:
        doc["verify"] = _verify_document(net, f, code, config.budget_generators)
    path = _maybe_write_code(options, net, code)
    if path:
        doc["written"] = path
    return doc


def _run_xor_code(config) -> dict:
    net = codes.reverse_butterfly_network()
    f = functions.mod_sum(2, 2, 2)
    code = codes.reverse_butterfly_xor_code()
    doc = {
        "k": code.k,
        "n": code.n,
        "rate": code.rate,
        "verify": _verify_document(net, f, code, config.budget_generators),
    }
    path = _maybe_write_code(config.options, net, code)
    if path:
        doc["written"] = path
    return doc


def _run_search_code(config) -> dict:
    options = config.options
    net, f = _load_network(options)
    k, n = options.get("k"), options.get("n")
    if k is None or n is None:
        raise ParseError("k/n", "search-code needs --k and --n")
    outcome = codes.search_code(net, f, k, n, options.get("budget"))
    if outcome is codes.INFEASIBLE:
        return {"k": k, "n": n, "outcome": "infeasible"}
    if outcome is codes.BUDGET_EXHAUSTED:
        return {"k": k, "n": n, "outcome": "budget-exhausted"}
    doc = {
        "k": k,
        "n": n,
        "outcome": "found",
        "verify": _verify_document(net, f, outcome, config.budget_generators),
    }
    path = _maybe_write_code(options, net, outcome)
    if path:
        doc["written"] = path
    return doc


def _run_verify_code(config) -> dict:
    options = config.options
    net, f = _load_network(options)
    if not options.get("code"):
        raise ParseError("code", "verify-code needs --code FILE")
    with open(options["code"], encoding="utf-8") as fh:
        code = codes.code_from_json(net, fh.read())
    return _verify_document(net, f, code, config.budget_generators)


def _run_gap(config) -> dict:
    options = config.options
    M, L = options.get("M"), options.get("L")
    if M is None or L is None:
        raise ParseError("M/L", "gap needs --M and --L")
    value, m_star = bounds_mod.mincut_NML_closed_form(M, L)
    rate_cap = bounds_mod.rate_upper_NML(M, L)
    bracket_hi = min(rate_cap, value)
    return {
        "M": M,
        "L": L,
        "min_cut": value,
        "min_cut_symbolic": f"({L}+{m_star})/log2({m_star + 1})",
        "m_star": m_star,
        "rate_upper": rate_cap,
        "capacity_bracket": [1.0, bracket_hi],
        "bracket_over_min_cut": bracket_hi / value,
    }


def _run_appendix_check(config) -> dict:
    seed = config.seed
    rng = random.Random(seed)
    families = config.options.get("families") or 100
    results = {"seed": seed, "families": families}
    ok_inv = ok_shrink = ok_closed = ok_a2 = True
    for _ in range(families):
        k = rng.randint(2, 4)
        n = rng.randint(1, k - 1)
        M = rng.randint(1, 3)
        family = sumsets.random_family(rng, k, M, n)
        ok_inv &= sumsets.check_invariance(sumsets.compress(family))
        ok_shrink &= sumsets.check_sumset_shrink(family)
        ok_closed &= sumsets.check_downward_closure(family)
        ok_a2 &= sumsets.lemma_A2_check(family, n)
    results["invariance"] = ok_inv
    results["sumset_shrink"] = ok_shrink
    results["downward_closure"] = ok_closed
    results["sumset_floor"] = ok_a2

    ok_product = all(
        sumsets.product_min_bound(k, M, delta)[2]
        for k in range(1, 4)
        for M in range(1, 4)
        for delta in (0.25, 1 / 3, 0.5, 1.0)
    )
    results["product_min"] = ok_product
    ok_counting = all(
        sumsets.check_hamming_count(k, delta)[2]
        for k in range(1, 21)
        for delta in (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5)
    )
    results["hamming_count"] = ok_counting
    ok_gamma = all(
        abs(
            sumsets.binary_entropy(sumsets.gamma(x)) - 0.5 * (1 - 1 / x)
        )
        <= 1e-10
        for x in [1 + 0.1 * i for i in range(91)]
    )
    results["gamma_inverse"] = ok_gamma
    results["all_pass"] = all(
        results[key]
        for key in (
            "invariance",
            "sumset_shrink",
            "downward_closure",
            "sumset_floor",
            "product_min",
            "hamming_count",
            "gamma_inverse",
        )
    )
    return results


_RUNNERS = {
    "bounds": _run_bounds,
    "footprint": _run_footprint,
    "steiner": _run_steiner,
    "tree-code": _run_tree_code,
    "diamond-code": _run_diamond_code,
    "xor-code": _run_xor_code,
    "search-code": _run_search_code,
    "verify-code": _run_verify_code,
    "gap": _run_gap,
    "appendix-check": _run_appendix_check,
}


def _render_text(command: str, doc: dict) -> str:
    if command == "bounds":
        lines = _bounds_text(doc)
    elif command == "footprint":
        lines = [
            f"function: {doc['function']} (s={doc['s']}, q={doc['q']}), "
            f"range size {doc['range_size']}"
        ]
        for row in doc["rows"]:
            idx = ",".join(str(i) for i in row["index_set"])
            lines.append(f"I={{{idx}}} classes={row['classes']}")
    elif command == "steiner":
        lines = [
            f"trees: {doc['tree_count']}",
            f"packing: {_fmt(doc['packing_value'])} = {doc['packing_symbolic']}",
        ]
        for tree in doc["trees"]:
            if tree["weight"] > 0:
                edges = ",".join(str(e) for e in tree["edges"])
                lines.append(f"weight {_fmt(tree['weight'])} on edges {edges}")
    elif command == "gap":
        lines = [
            f"min-cut: {_fmt(doc['min_cut'])} = {doc['min_cut_symbolic']} "
            f"(m*={doc['m_star']})",
            f"rate upper: {_fmt(doc['rate_upper'])}",
            f"capacity bracket: [{_fmt(doc['capacity_bracket'][0])}, "
            f"{_fmt(doc['capacity_bracket'][1])}]",
            f"bracket / min-cut: {_fmt(doc['bracket_over_min_cut'])}",
        ]
    elif command == "appendix-check":
        lines = [f"seed: {doc['seed']}  families: {doc['families']}"]
        for key in (
            "invariance",
            "sumset_shrink",
            "downward_closure",
            "sumset_floor",
            "product_min",
            "hamming_count",
            "gamma_inverse",
        ):
            lines.append(f"{key}: {'pass' if doc[key] else 'FAIL'}")
        lines.append(f"all: {'pass' if doc['all_pass'] else 'FAIL'}")
    else:
        lines = []
        if "outcome" in doc:
            lines.append(f"outcome: {doc['outcome']}")
        if "k" in doc and "n" in doc:
            lines.append(f"(k, n): ({doc['k']}, {doc['n']})")
        if "rate" in doc:
            lines.append(f"rate: {_fmt(doc['rate'])}")
        if "rate_limit" in doc:
            lines.append(f"rate limit: {_fmt(doc['rate_limit'])}")
        if "rate_bound" in doc:
            lines.append(f"rate bound: {_fmt(doc['rate_bound'])}")
        if "counting_feasible" in doc:
            lines.append(
                f"counting feasible: {'true' if doc['counting_feasible'] else 'false'}"
            )
        verify = doc.get("verify") or (doc if "pass" in doc else None)
        if verify is not None:
            status = "pass" if verify["pass"] else "FAIL"
            lines.append(
                f"verify: {status}, {verify['checked_generators']} generators"
            )
        if "written" in doc:
            lines.append(f"written: {doc['written']}")
    return "\n".join(lines)


def run(config: RunConfig) -> tuple:
    """Execute one subcommand; returns (exit_status, rendered_report)."""
    # Budget overrides are process-wide for the duration of the command.
    network.DEFAULT_EDGE_BUDGET = config.budget_edges
    functions.DEFAULT_STATE_BUDGET = config.budget_states
    try:
        runner = _RUNNERS[config.subcommand]
        doc = runner(config)
    except NetfuncapError as exc:
        return 1, f"error: {exc}"
    if config.output_format == "structured":
        payload = {"schema": "v1", "command": config.subcommand}
        payload.update(doc)
        return 0, json.dumps(payload, indent=None, separators=(", ", ": "))
    return 0, _render_text(config.subcommand, doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netfuncap",
        description="cut-set bounds and explicit codes for network computing",
    )
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--tol", type=float, default=bounds_mod.DEFAULT_TOL)
    parser.add_argument("--budget-edges", type=int, default=None)
    parser.add_argument("--budget-states", type=int, default=None)
    parser.add_argument("--budget-generators", type=int, default=None)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_net_args(p, with_function=True):
        p.add_argument("--example")
        p.add_argument("--network")
        if with_function:
            p.add_argument("--function")

    p = sub.add_parser("bounds", help="certified bounds report")
    add_net_args(p)
    p.add_argument("--M", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--s", type=int)

    p = sub.add_parser("footprint", help="equivalence-class table")
    add_net_args(p)
    p.add_argument("--s", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--I", dest="index_set")

    p = sub.add_parser("steiner", help="fractional tree packing")
    add_net_args(p, with_function=False)
    p.add_argument("--M", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--s", type=int)

    p = sub.add_parser("tree-code", help="multi-edge tree construction")
    add_net_args(p)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out")

    p = sub.add_parser("diamond-code", help="diamond split-relay construction")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--out")

    p = sub.add_parser("xor-code", help="reverse butterfly parity witness")
    p.add_argument("--out")

    p = sub.add_parser("search-code", help="exhaustive encoder search")
    add_net_args(p)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--budget", type=int)

    p = sub.add_parser("verify-code", help="exhaustive code verification")
    add_net_args(p)
    p.add_argument("--code")

    p = sub.add_parser("gap", help="relay gap family analysis")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--L", type=int, required=True)

    p = sub.add_parser("appendix-check", help="sumset lemma suite")
    p.add_argument("--families", type=int, default=100)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    options = {
        key: value
        for key, value in vars(args).items()
        if key
        not in (
            "format",
            "tol",
            "budget_edges",
            "budget_states",
            "budget_generators",
            "seed",
            "subcommand",
        )
    }
    if options.get("index_set"):
        options["index_set"] = [
            int(part) for part in str(options["index_set"]).split(",")
        ]
    env_states = os.environ.get(STATE_BUDGET_ENV)
    states = args.budget_states
    if states is None:
        states = int(env_states) if env_states else functions.DEFAULT_STATE_BUDGET
    return RunConfig(
        subcommand=args.subcommand,
        options=options,
        output_format=args.format,
        budget_edges=(
            args.budget_edges
            if args.budget_edges is not None
            else network.DEFAULT_EDGE_BUDGET
        ),
        budget_states=states,
        budget_generators=(
            args.budget_generators
            if args.budget_generators is not None
            else codes.DEFAULT_GENERATOR_BUDGET
        ),
        seed=args.seed,
        tol=args.tol,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = config_from_args(args)
    except NetfuncapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    status, report = run(config)
    if status == 0:
        print(report)
    else:
        print(report, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
