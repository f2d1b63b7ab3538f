"""Shared fixtures and builders for the test suite."""

from hypothesis import HealthCheck, settings

from gerbecalc.admissibility import ContactType, DegreeData
from gerbecalc.graphs import ModularGraph

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


def graph_of(genera, edges, tails=()) -> ModularGraph:
    """Shorthand for ModularGraph.from_config with bare genus lists."""
    return ModularGraph.from_config(
        {
            "vertices": [{"genus": g} for g in genera],
            "edges": [list(e) for e in edges],
            "tails": list(tails),
        }
    )


def balanced_data(rng, n_vertices: int, n_tails: int, r: int) -> DegreeData:
    """Random degree data that is globally admissible for (r, sum of k_v).

    With tails, the last tail residue absorbs the imbalance; without tails
    the last vertex residue does.
    """
    residues = [rng.randrange(r) for _ in range(n_vertices)]
    if n_tails == 0:
        residues[-1] = (residues[-1] - sum(residues)) % r
        return DegreeData(tuple(residues), ())
    tail_residues = [rng.randrange(r) for _ in range(n_tails - 1)]
    tail_residues.append((sum(residues) - sum(tail_residues)) % r)
    types = tuple(ContactType.from_residue(a, r) for a in tail_residues)
    return DegreeData(tuple(residues), types)
