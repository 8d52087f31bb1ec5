"""JSON-ready summaries shared by the CLI and the HTTP routes."""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from ..core import chartables as ct
from ..core import sandpile as sp
from ..core import towers
from ..core.exact_linalg import IntMatrix, smith_normal_form
from ..core.words import UDWord, WordPolynomial, alpha_values
from .datasets import group_to_json, matrix_to_json
from .exceptions import InputError
from .operators import parse_coefficient_spec, parse_operator, parse_word
from .schemas import encode_integer

Payload = Dict[str, object]


def analyse_matrix(matrix: IntMatrix) -> Payload:
    smith = smith_normal_form(matrix)
    return {
        "shape": [matrix.rows, matrix.cols],
        "diagonal": [encode_integer(v) for v in smith.diagonal],
        "multiset": [encode_integer(v) for v in sorted(smith.coordinate_factors())],
        "rank": smith.rank,
        "cokernel": group_to_json(smith.cokernel()),
    }


def analyse_graph(graph: sp.Digraph, sink: Optional[str] = None) -> Payload:
    order = graph.vertex_order(sink)
    return {
        "vertices": len(graph.vertices),
        "edges": sum(m for _, _, m in graph.edges),
        "sink": order[0],
        "eulerian": graph.is_eulerian(),
        "group": group_to_json(sp.graph_critical_group(graph, order[0])),
        "spanning_trees": encode_integer(sp.spanning_tree_count(graph, order[0])),
    }


def analyse_representation(
    table: ct.CharacterTable,
    V: ct.RepVector,
    subgroup: Optional[ct.CharacterTable] = None,
    fusion: Optional[ct.ClassFusion] = None,
) -> Payload:
    V.check(table)
    group = ct.critical_group(table, V)
    payload: Payload = {
        "table": table.group_name,
        "rep": str(V),
        "dimension": V.dimension(table),
        "faithful": True,
        "group": group_to_json(group),
        "order": encode_integer(ct.critical_group_order(table, V)),
        "subgroups": [[encode_integer(m), e] for m, e in ct.repeated_value_subgroups(table, V)],
    }
    if subgroup is not None:
        if fusion is None:
            raise InputError("Restriction needs a class fusion")
        res = ct.res_map_on_critical_groups(table, subgroup, fusion, V)
        ind = ct.ind_map_on_critical_groups(table, subgroup, fusion, V)
        payload["restriction"] = {
            "subgroup": subgroup.group_name,
            "rep": str(ct.restrict(table, subgroup, fusion, V)),
            "group": group_to_json(res.target),
            "res_surjective": res.surjective,
            "ind_injective": ind.injective,
        }
    return payload


def tower_operator(r: int, word: Optional[str] = None, coefficients: Optional[str] = None) -> Tuple[WordPolynomial, Optional[UDWord]]:
    """Exactly one of an expression in U, D or a coefficient list "i:c_i,..."."""

    if (word is None) == (coefficients is None):
        raise InputError("Give either a word expression or a coefficient list, not both")
    if coefficients is not None:
        return parse_coefficient_spec(coefficients), None
    poly = parse_operator(word, r)
    try:
        single = parse_word(word)
    except InputError:
        single = None
    return poly, single


def analyse_tower(r: int, n: int, f: WordPolynomial, word: Optional[UDWord] = None) -> Payload:
    rep = towers.tower_rep(r, word if word is not None else f, n)
    smith = rep.smith()
    order, subgroups = towers.structure_bounds(r, rep.f, n)
    payload: Payload = {
        "r": r,
        "n": n,
        "f": str(rep.f),
        "dimension": encode_integer(rep.dimension),
        "alphas": [encode_integer(a) for a in alpha_values(rep.f, r, n)],
        "group": group_to_json(towers.tower_critical_group(r, rep.f, n)),
        "structure": {"order": encode_integer(order), "subgroups": [[encode_integer(m), e] for m, e in subgroups]},
        "ones": smith.ones_count,
    }
    if word is not None and word.half_length <= n:
        payload["ones_report"] = towers.ones_count(r, word, n).to_dict()
    return payload


def analyse_cayley(
    group: ct.CharacterTable,
    subgroup: ct.CharacterTable,
    fusion: ct.ClassFusion,
    V: ct.RepVector,
) -> Payload:
    covering, induced = sp.cayley_covering(group, subgroup, fusion, V)
    source = covering.source
    return {
        "group": group.group_name,
        "subgroup": subgroup.group_name,
        "edges": [[s, t, m] for s, t, m in source.edges],
        "vertex_map": dict(covering.vertex_map),
        "fibers": covering.fiber_sizes(),
        "source_group": group_to_json(induced.source),
        "target_group": group_to_json(induced.target),
        "map": matrix_to_json(induced.matrix_in_smith_coordinates),
        "surjective": induced.surjective,
        "matches_restriction": sp.covering_matches_restriction(group, subgroup, fusion, V),
    }
