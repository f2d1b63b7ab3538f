"""Command-line front end with JSON configuration and reporting.

Every subcommand emits a single JSON document of the shape
{"format": 1, "command": ..., "inputs": ..., "result": ...} with keys
sorted, so output is byte-identical across runs and worker counts.  Exit
status is 0 on success or a passing verification, 1 when a verification
fails, and 2 on any input problem; nothing is written to stdout on exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Mapping, Sequence

from . import admissibility, counting, gw
from .admissibility import ContactType, DegreeData
from .exactnum import format_rational, parse_rational
from .graphs import GerbyGraph, ModularGraph


class InputError(Exception):
    """A flag or configuration problem; reported on stderr with exit 2."""


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            document = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        )
    if not isinstance(document, dict):
        raise InputError(f"{path}: configuration must be a JSON object")
    version = document.get("format", 1)
    if version != 1:
        raise InputError(f"{path}: unsupported configuration format {version!r}")
    return document


def _expect(config: Mapping, key: str, kind: type, where: str) -> object:
    if key not in config:
        raise InputError(f"{where} is missing the field {key!r}")
    value = config[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InputError(f"field {key!r} must be of type {kind.__name__}, got {value!r}")
    return value


def _int_list(config: Mapping, key: str, where: str) -> list[int]:
    values = _expect(config, key, list, where)
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise InputError(f"field {key!r} must contain only integers, got {v!r}")
    return values


def _graph_common(path: str) -> tuple[dict, ModularGraph, int]:
    config = _load_json(path)
    graph = ModularGraph.from_config(_expect(config, "graph", dict, "configuration"))
    r = _expect(config, "r", int, "configuration")
    return config, graph, r


def _gerby_from(config: Mapping, graph: ModularGraph) -> GerbyGraph:
    section = _expect(config, "gerby", dict, "configuration")
    tail_orders = _int_list(section, "tail_orders", "the 'gerby' section")
    edge_orders = _int_list(section, "edge_orders", "the 'gerby' section")
    return GerbyGraph.from_orders(graph, tail_orders, edge_orders)


def _degree_data_from(config: Mapping) -> DegreeData:
    section = _expect(config, "degree_data", dict, "configuration")
    residues = _int_list(section, "vertex_residues", "the 'degree_data' section")
    raw_types = _expect(section, "tail_types", list, "the 'degree_data' section")
    types = []
    for text in raw_types:
        if not isinstance(text, str):
            raise InputError(f"tail types must be strings like \"m/b\", got {text!r}")
        types.append(ContactType.parse(text))
    return DegreeData(tuple(residues), tuple(types))


def _gw_common(args) -> tuple[gw.GerbeSpec, gw.BaseTheoryTable, int, gw.Truncation, dict]:
    config = _load_json(args.input)
    r = _expect(config, "r", int, "configuration")
    pairing = _int_list(config, "pairing", "configuration")
    if "beta_rank" in config and config["beta_rank"] != len(pairing):
        raise InputError(
            f"beta_rank {config['beta_rank']} does not match the pairing length {len(pairing)}"
        )
    spec = gw.GerbeSpec(r, tuple(pairing))
    basis_size = _expect(config, "basis_size", int, "configuration")
    genus = _expect(config, "genus", int, "configuration")
    section = _expect(config, "truncation", dict, "configuration")
    betas = _expect(section, "betas", list, "the 'truncation' section")
    truncation = gw.Truncation(
        _expect(section, "n_max", int, "the 'truncation' section"),
        _expect(section, "j_max", int, "the 'truncation' section"),
        tuple(tuple(b) for b in betas),
    )
    if args.seed is not None:
        if "base_invariants" in config:
            raise InputError("--seed and a base_invariants table are mutually exclusive")
        table = gw.BaseTheoryTable.seeded(basis_size, genus, truncation, args.seed)
    else:
        if "base_invariants" not in config:
            raise InputError("configuration needs base_invariants unless --seed is given")
        records = []
        for rec in _expect(config, "base_invariants", list, "configuration"):
            if not isinstance(rec, dict):
                raise InputError(f"base_invariants entries must be objects, got {rec!r}")
            insertions = [
                gw.Insertion(
                    _expect(ins, "class", int, "an insertion"),
                    _expect(ins, "psi", int, "an insertion"),
                )
                for ins in _expect(rec, "insertions", list, "a base_invariants entry")
            ]
            value = _expect(rec, "value", str, "a base_invariants entry")
            records.append(
                (
                    _expect(rec, "genus", int, "a base_invariants entry"),
                    tuple(_int_list(rec, "beta", "a base_invariants entry")),
                    insertions,
                    parse_rational(value),
                )
            )
        table = gw.BaseTheoryTable.from_records(basis_size, genus, truncation, records)
    return spec, table, genus, truncation, config


def _run_enumerate_admissible(args) -> tuple[dict, dict, int]:
    vectors = list(admissibility.enumerate_admissible(args.n, args.r, args.k))
    result = {
        "count": len(vectors),
        "vectors": [[str(t) for t in v.entries] for v in vectors],
    }
    return {"n": args.n, "r": args.r, "k": args.k}, result, 0


def _run_compatible_graphs(args) -> tuple[dict, dict, int]:
    config, graph, r = _graph_common(args.input)
    data = _degree_data_from(config)
    decorated = list(admissibility.enumerate_compatible_gerby(graph, data, r))
    result = {
        "count": len(decorated),
        "gerby_graphs": [g.to_config() for g in decorated],
    }
    return {"input": args.input, "config": config}, result, 0


def _run_count_lifts(args) -> tuple[dict, dict, int]:
    config, graph, r = _graph_common(args.input)
    gerby = _gerby_from(config, graph)
    lifts = counting.count_lifts(gerby, r, args.mode)
    formula = {
        "loop-only": "r^(2g-b1) * prod(phi(gamma_e) : e non-separating)",
        "all-edges": "r^(2g-b1) * prod(phi(gamma_e) : e any edge)",
    }[lifts.formula_tag]
    result = {"value": str(lifts.value), "formula": formula}
    return {"input": args.input, "config": config, "mode": args.mode}, result, 0


def _run_picard_torsion(args) -> tuple[dict, dict, int]:
    config, graph, r = _graph_common(args.input)
    if args.quotient:
        if "gerby" not in config:
            raise InputError("--quotient needs a 'gerby' section in the configuration")
        value = counting.twisted_pic_quotient_order(_gerby_from(config, graph))
        formula = "prod(gamma_e : e any edge) * prod(gamma_t : t any tail)"
    elif "gerby" in config:
        value = counting.twisted_picard_torsion(_gerby_from(config, graph), r)
        formula = "r^(2g-b1) * prod(gcd(gamma_e, r) : e non-separating)"
    else:
        value = counting.prestable_picard_torsion(graph, r)
        formula = "r^(2g-b1)"
    result = {"value": str(value), "formula": formula}
    return {"input": args.input, "config": config, "quotient": args.quotient}, result, 0


def _run_fiber_count(args) -> tuple[dict, dict, int]:
    config, graph, r = _graph_common(args.input)
    data = _degree_data_from(config)
    value = counting.fiber_point_count(graph, data, r)
    result = {"value": str(value), "formula": "r^(2g)"}
    return {"input": args.input, "config": config}, result, 0


def _run_degree(args) -> tuple[dict, dict, int]:
    push = (args.genus, args.r)
    stack = (args.field_degree, args.delta_source, args.delta_target)
    if all(v is not None for v in push) and all(v is None for v in stack):
        value = counting.pushforward_degree(args.genus, args.r)
        inputs = {"genus": args.genus, "r": args.r}
        formula = "r^(2g-1)"
    elif all(v is not None for v in stack) and all(v is None for v in push):
        value = counting.stack_degree(*stack)
        inputs = {
            "field_degree": args.field_degree,
            "delta_source": args.delta_source,
            "delta_target": args.delta_target,
        }
        formula = "field_degree * delta_target / delta_source"
    else:
        raise InputError(
            "degree needs either --genus with --r, or --field-degree with "
            "--delta-source and --delta-target"
        )
    return inputs, {"value": format_rational(value), "formula": formula}, 0


def _run_decompose(args) -> tuple[dict, dict, int]:
    spec, table, genus, truncation, config = _gw_common(args)
    lhs = gw.build_potential(spec, table, genus, truncation, "gerbe", workers=args.parallel)
    base_series = gw.build_potential(
        spec, table, genus, truncation, "base", workers=args.parallel
    )
    sectors = [
        {
            "character": rho,
            "records": gw.substitute_novikov(base_series, spec, rho).to_records(),
        }
        for rho in range(spec.band_order)
    ]
    result = {
        "scalar": format_rational(Fraction(spec.band_order) ** (2 * genus - 2)),
        "gerbe_potential": lhs.to_records(),
        "base_potential": base_series.to_records(),
        "sectors": sectors,
    }
    inputs = {"input": args.input, "config": config, "seed": args.seed}
    return inputs, result, 0


def _run_verify(args) -> tuple[dict, dict, int]:
    spec, table, genus, truncation, config = _gw_common(args)
    report = gw.verify_decomposition(spec, table, genus, truncation, workers=args.parallel)
    inputs = {"input": args.input, "config": config, "seed": args.seed}
    return inputs, report.to_dict(), 0 if report.passed else 1


_HANDLERS = {
    "enumerate-admissible": _run_enumerate_admissible,
    "compatible-graphs": _run_compatible_graphs,
    "count-lifts": _run_count_lifts,
    "picard-torsion": _run_picard_torsion,
    "fiber-count": _run_fiber_count,
    "degree": _run_degree,
    "decompose": _run_decompose,
    "verify": _run_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gerbecalc",
        description="Exact computations for root-gerbe Gromov-Witten decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
        return p

    p = add("enumerate-admissible", "List the admissible contact-type vectors for (n, r, k).")
    p.add_argument("--n", type=int, required=True, help="number of marked points")
    p.add_argument("--r", type=int, required=True, help="band order")
    p.add_argument("--k", type=int, required=True, help="degree residue mod r")

    p = add("compatible-graphs", "Enumerate gerby decorations compatible with degree data.")
    p.add_argument("--input", required=True, metavar="FILE", help="graph configuration (JSON)")

    p = add("count-lifts", "Count lifts of a prestable curve along a gerby graph.")
    p.add_argument("--input", required=True, metavar="FILE", help="graph configuration (JSON)")
    p.add_argument(
        "--mode",
        choices=("loop-only", "all-edges"),
        default="loop-only",
        help="which edges contribute totient factors (default: loop-only)",
    )

    p = add("picard-torsion", "Order of the r-torsion of the Picard group of a dual graph.")
    p.add_argument("--input", required=True, metavar="FILE", help="graph configuration (JSON)")
    p.add_argument(
        "--quotient",
        action="store_true",
        help="order of the twisted/coarse torsion quotient instead",
    )

    p = add("fiber-count", "Count the fiber of the root-gerbe map moduli over a point.")
    p.add_argument("--input", required=True, metavar="FILE", help="graph configuration (JSON)")

    p = add("degree", "Pushforward degree r^(2g-1), or a stack-map degree from deltas.")
    p.add_argument("--genus", type=int, help="genus (with --r)")
    p.add_argument("--r", type=int, help="band order (with --genus)")
    p.add_argument("--field-degree", type=int, dest="field_degree", help="coarse field degree")
    p.add_argument("--delta-source", type=int, dest="delta_source", help="source automorphism order")
    p.add_argument("--delta-target", type=int, dest="delta_target", help="target automorphism order")

    for name, help_text in (
        ("decompose", "Emit the gerbe potential and its character-sector decomposition."),
        ("verify", "Check the decomposition identity termwise; exit 1 on failure."),
    ):
        p = add(name, help_text)
        p.add_argument("--input", required=True, metavar="FILE", help="theory configuration (JSON)")
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help="fill the base table with seeded pseudo-random rationals",
        )
        p.add_argument(
            "--parallel",
            type=int,
            default=1,
            metavar="N",
            help="worker threads; never changes the output",
        )

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        inputs, result, status = _HANDLERS[args.command](args)
    except (InputError, ValueError, gw.CoverageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    document = {
        "format": 1,
        "command": args.command,
        "inputs": inputs,
        "result": result,
    }
    text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {args.output}: {exc.strerror or exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
