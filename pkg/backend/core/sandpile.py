"""Directed multigraphs, Laplacians, sandpile groups and Cayley graph coverings."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..services.exceptions import InputError, InternalConsistencyError, NotFaithfulError
from .chartables import (
    CharacterTable,
    ClassFusion,
    RepVector,
    is_faithful,
    reduced_operator,
    restrict,
    restriction_matrix,
    reduced_basis_matrix,
)
from .exact_linalg import AbelianGroup, CokernelMap, IntMatrix, cokernel, determinant, induced_cokernel_map, same_lattice

logger = logging.getLogger(__name__)

Edge = Tuple[str, str, int]


@dataclass(frozen=True)
class Digraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    sink: Optional[str] = None

    @classmethod
    def from_edges(
        cls,
        vertices: Sequence[str],
        edges: Iterable[Sequence],
        sink: Optional[str] = None,
        undirected: bool = False,
    ) -> "Digraph":
        names = tuple(str(v) for v in vertices)
        known = set(names)
        if len(known) != len(names):
            raise InputError("Vertex names must be unique")
        counts: Counter = Counter()
        for edge in edges:
            source, target = str(edge[0]), str(edge[1])
            multiplicity = int(edge[2]) if len(edge) > 2 else 1
            if source not in known or target not in known:
                raise InputError(f"Edge {source}->{target} uses an unknown vertex")
            if multiplicity <= 0:
                raise InputError(f"Edge {source}->{target} has non-positive multiplicity {multiplicity}")
            counts[(source, target)] += multiplicity
            if undirected and source != target:
                counts[(target, source)] += multiplicity
        if sink is not None and sink not in known:
            raise InputError(f"Sink {sink!r} is not a vertex")
        position = {name: i for i, name in enumerate(names)}
        ordered = sorted(counts.items(), key=lambda item: (position[item[0][0]], position[item[0][1]]))
        return cls(names, tuple((s, t, m) for (s, t), m in ordered), sink)

    def multiplicity(self, source: str, target: str) -> int:
        return self._adjacency().get((source, target), 0)

    def _adjacency(self) -> Dict[Tuple[str, str], int]:
        return {(s, t): m for s, t, m in self.edges}

    def out_degree(self, vertex: str) -> int:
        return sum(m for s, _, m in self.edges if s == vertex)

    def in_degree(self, vertex: str) -> int:
        return sum(m for _, t, m in self.edges if t == vertex)

    def is_eulerian(self) -> bool:
        return all(self.out_degree(v) == self.in_degree(v) for v in self.vertices)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_weighted_edges_from(self.edges, weight="multiplicity")
        return graph

    def reaches_sink(self, sink: str) -> bool:
        """Every vertex has a directed path to ``sink``."""

        graph = self.to_networkx()
        return len(nx.ancestors(graph, sink)) + 1 == len(self.vertices)

    def vertex_order(self, sink: Optional[str] = None) -> List[str]:
        sink = self._resolve_sink(sink)
        return [sink] + [v for v in self.vertices if v != sink]

    def _resolve_sink(self, sink: Optional[str]) -> str:
        sink = sink if sink is not None else self.sink if self.sink is not None else self.vertices[0]
        if sink not in self.vertices:
            raise InputError(f"Sink {sink!r} is not a vertex")
        return sink


@dataclass(frozen=True)
class CoveringMap:
    source: Digraph
    target: Digraph
    vertex_map: Tuple[Tuple[str, str], ...]
    verified: bool

    def image(self, vertex: str) -> str:
        return dict(self.vertex_map)[vertex]

    def fiber_sizes(self) -> Dict[str, int]:
        return dict(Counter(t for _, t in self.vertex_map))


def cycle_graph(n: int, directed: bool = False) -> Digraph:
    names = [f"v{i}" for i in range(n)]
    edges = [(names[i], names[(i + 1) % n], 1) for i in range(n)]
    return Digraph.from_edges(names, edges, sink=names[0], undirected=not directed)


def laplacian(g: Digraph, sink: Optional[str] = None) -> IntMatrix:
    """d_i - a_ii on the diagonal, -a_ij off it; vertices ordered with the sink first."""

    order = g.vertex_order(sink)
    adjacency = g._adjacency()
    data = []
    for u in order:
        degree = g.out_degree(u)
        data.append([(degree if u == v else 0) - adjacency.get((u, v), 0) for v in order])
    return IntMatrix.from_rows(data, cols=len(order))


def reduced_laplacian(g: Digraph, sink: Optional[str] = None) -> IntMatrix:
    full = laplacian(g, sink)
    rest = range(1, full.rows)
    return full.submatrix(rest, rest)


def _require_reachable(g: Digraph, sink: Optional[str]) -> str:
    sink = g._resolve_sink(sink)
    if not g.reaches_sink(sink):
        raise InputError(f"Some vertex has no directed path to the sink {sink!r}; the group would be infinite")
    return sink


def firing_matrix(g: Digraph, sink: Optional[str] = None) -> IntMatrix:
    """Column v is the chip change caused by firing v, with the sink coordinate dropped."""

    return reduced_laplacian(g, sink).transpose()


def graph_critical_group(g: Digraph, sink: Optional[str] = None) -> AbelianGroup:
    sink = _require_reachable(g, sink)
    return cokernel(firing_matrix(g, sink))


def spanning_tree_count(g: Digraph, sink: Optional[str] = None) -> int:
    """Spanning trees directed towards the sink (determinant of the reduced Laplacian)."""

    return determinant(reduced_laplacian(g, sink))


# -- Cayley graphs of dual groups ------------------------------------------------------


def _character_product_index(table: CharacterTable) -> Dict[Tuple[int, int], int]:
    lookup = {tuple(row): j for j, row in enumerate(table.characters)}
    products = {}
    for i, left in enumerate(table.characters):
        for k, right in enumerate(table.characters):
            products[(i, k)] = lookup[tuple(a * b for a, b in zip(left, right))]
    return products


def cayley_graph(table: CharacterTable, V: RepVector) -> Digraph:
    """Vertices are the irreducible characters; χ -> χψ once per copy of ψ in V."""

    if not table.is_abelian:
        raise InputError(f"Cayley graphs need an abelian table, {table.group_name} is not")
    V.check(table)
    if not is_faithful(table, V):
        raise NotFaithfulError(f"Representation {V} is not faithful on {table.group_name}")
    products = _character_product_index(table)
    names = table.irrep_names
    edges = []
    for k, count in enumerate(V.multiplicities):
        if count:
            edges.extend((names[i], names[products[(i, k)]], count) for i in range(table.num_irreps))
    return Digraph.from_edges(names, edges, sink=names[table.trivial_index])


def covering_map(source: Digraph, target: Digraph, vertex_map: Mapping[str, str]) -> CoveringMap:
    """Checks that edge fibers at every vertex map bijectively, both outgoing and incoming."""

    phi = dict(vertex_map)
    if set(phi) != set(source.vertices) or not set(phi.values()) <= set(target.vertices):
        raise InputError("Vertex map must send every source vertex to a target vertex")
    adjacency = target._adjacency()
    verified = True
    for v in source.vertices:
        outgoing: Counter = Counter()
        incoming: Counter = Counter()
        for s, t, m in source.edges:
            if s == v:
                outgoing[phi[t]] += m
            if t == v:
                incoming[phi[s]] += m
        expected_out = Counter({t: m for (s, t), m in adjacency.items() if s == phi[v]})
        expected_in = Counter({s: m for (s, t), m in adjacency.items() if t == phi[v]})
        if outgoing != expected_out or incoming != expected_in:
            logger.info("Covering check fails at vertex %s", v)
            verified = False
            break
    ordered = tuple((v, phi[v]) for v in source.vertices)
    return CoveringMap(source=source, target=target, vertex_map=ordered, verified=verified)


def covering_push_forward(covering: CoveringMap, source_sink: str, target_sink: str) -> IntMatrix:
    """Chip push-forward on non-sink coordinates; chips landing on the target sink vanish."""

    rows = covering.target.vertex_order(target_sink)[1:]
    cols = covering.source.vertex_order(source_sink)[1:]
    row_index = {name: i for i, name in enumerate(rows)}
    data = [[0] * len(cols) for _ in rows]
    for j, vertex in enumerate(cols):
        image = covering.image(vertex)
        if image != target_sink:
            data[row_index[image]][j] = 1
    return IntMatrix.from_rows(data, cols=len(cols))


def _character_vertex_map(group: CharacterTable, subgroup: CharacterTable, fusion: ClassFusion) -> Dict[str, str]:
    R = restriction_matrix(group, subgroup, fusion)
    mapping = {}
    for g in range(group.num_irreps):
        column = R.column(g)
        mapping[group.irrep_names[g]] = subgroup.irrep_names[column.index(1)]
    return mapping


def cayley_covering(
    group: CharacterTable, subgroup: CharacterTable, fusion: ClassFusion, V: RepVector
) -> Tuple[CoveringMap, CokernelMap]:
    if not (group.is_abelian and subgroup.is_abelian):
        raise InputError("Cayley coverings need abelian tables")
    res_v = restrict(group, subgroup, fusion, V)
    source, target = cayley_graph(group, V), cayley_graph(subgroup, res_v)
    covering = covering_map(source, target, _character_vertex_map(group, subgroup, fusion))
    if not covering.verified:
        raise InternalConsistencyError(
            f"Restriction {group.group_name} -> {subgroup.group_name} does not give a graph covering"
        )
    F = covering_push_forward(covering, source.sink, target.sink)
    induced = induced_cokernel_map(F, firing_matrix(source), firing_matrix(target))
    if not induced.surjective:
        raise InternalConsistencyError("A graph covering induced a non-surjective map on critical groups")
    logger.info(
        "Covering %s -> %s: %s -> %s",
        group.group_name,
        subgroup.group_name,
        induced.source.pretty(),
        induced.target.pretty(),
    )
    return covering, induced


def covering_matches_restriction(
    group: CharacterTable, subgroup: CharacterTable, fusion: ClassFusion, V: RepVector
) -> bool:
    """Graph side and representation side give the same map once vertices are read as characters."""

    covering, _ = cayley_covering(group, subgroup, fusion, V)
    res_v = restrict(group, subgroup, fusion, V)
    F_graph = covering_push_forward(covering, covering.source.sink, covering.target.sink)
    F_rep = reduced_basis_matrix(
        restriction_matrix(group, subgroup, fusion), group.dimensions, group.trivial_index, subgroup.trivial_index
    )
    return (
        F_graph == F_rep
        and same_lattice(firing_matrix(covering.source), reduced_operator(group, V))
        and same_lattice(firing_matrix(covering.target), reduced_operator(subgroup, res_v))
    )
