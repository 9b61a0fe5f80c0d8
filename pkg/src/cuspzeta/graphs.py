"""Edge-indexed weighted graphs, graphs of finite groups, and cuspidal graphs.

Graphs are stored with *oriented* edges: every undirected edge appears as a
pair of mutually inverse oriented edges, each carrying its own positive
rational weight.  A cuspidal graph is a finite core plus finitely many
standard rays; a ray is never materialized, only its attachment data
(outward weight ``alpha`` and inward weight ``ray_q``) is stored, and
:func:`truncate` produces finite approximations on demand.

Vertex ids are opaque strings.  Matrix row order everywhere in the package
is fixed by the lexicographic order of vertex ids, so identical inputs give
identical outputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from cuspzeta.exact import Rational

__all__ = [
    "OrientedEdge",
    "EdgeIndexedGraph",
    "GraphOfGroups",
    "Cusp",
    "CuspidalGraph",
    "ValidationReport",
    "GraphFormatError",
    "weights_from_groups",
    "validate",
    "truncate",
    "relabel",
    "invariant_signature",
]


class GraphFormatError(ValueError):
    """Raised when graph JSON violates the documented schema."""


@dataclass(frozen=True)
class OrientedEdge:
    """One orientation of an edge: ``id`` and ``inverse`` index into the graph."""

    id: int
    source: str
    target: str
    inverse: int
    weight: Fraction


class EdgeIndexedGraph:
    """Finite graph whose oriented edges carry positive rational weights."""

    __slots__ = ("vertices", "edges", "_out")

    def __init__(self, vertices: Iterable[str], edges: Iterable[OrientedEdge]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.edges: tuple[OrientedEdge, ...] = tuple(edges)
        out: dict[str, list[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.source in out:
                out[e.source].append(e.id)
        self._out = {v: tuple(ids) for v, ids in out.items()}

    @classmethod
    def from_pairs(
        cls,
        vertices: Iterable[str],
        pairs: Iterable[tuple[str, str, Rational | int, Rational | int]],
    ) -> EdgeIndexedGraph:
        """Build a graph from undirected pairs (a, b, weight a->b, weight b->a)."""
        edges: list[OrientedEdge] = []
        for a, b, wa, wb in pairs:
            i = len(edges)
            edges.append(OrientedEdge(i, a, b, i + 1, Fraction(wa)))
            edges.append(OrientedEdge(i + 1, b, a, i, Fraction(wb)))
        return cls(vertices, edges)

    def out_edges(self, vertex: str) -> tuple[int, ...]:
        """Ids of oriented edges whose source is ``vertex``."""
        return self._out.get(vertex, ())

    def edge_pairs(self) -> list[tuple[str, str, Fraction, Fraction]]:
        """Undirected pairs (a, b, w(a->b), w(b->a)), one per inverse pair."""
        pairs = []
        for e in self.edges:
            if e.id < e.inverse:
                pairs.append((e.source, e.target, e.weight, self.edges[e.inverse].weight))
        return pairs

    def canonical_edge_order(self) -> tuple[int, ...]:
        """Edge ids sorted by (source, target, id); fixes matrix row order."""
        return tuple(sorted(range(len(self.edges)),
                            key=lambda i: (self.edges[i].source, self.edges[i].target, i)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeIndexedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self) -> str:
        return f"EdgeIndexedGraph({len(self.vertices)} vertices, {len(self.edges)} oriented edges)"


@dataclass(frozen=True)
class GraphOfGroups:
    """Finite graph with group orders attached to vertices and edges.

    ``edge_order[i]`` is the order of the group on the i-th undirected pair.
    The groups themselves are never needed, only their orders; the central
    order c is user-supplied data and defaults to 1.
    """

    vertices: tuple[str, ...]
    edge_pairs: tuple[tuple[str, str], ...]
    vertex_order: Mapping[str, int]
    edge_order: tuple[int, ...]
    q: int
    central_order: int = 1


def weights_from_groups(g: GraphOfGroups) -> EdgeIndexedGraph:
    """Weight each oriented edge by |G_source| / |G_edge| (always an integer)."""
    pairs = []
    for i, (a, b) in enumerate(g.edge_pairs):
        n_e = g.edge_order[i]
        for v in (a, b):
            if g.vertex_order[v] % n_e:
                raise ValueError(
                    f"edge group order {n_e} of pair ({a}, {b}) does not divide "
                    f"vertex group order {g.vertex_order[v]} at {v}"
                )
        pairs.append((a, b, Fraction(g.vertex_order[a], n_e), Fraction(g.vertex_order[b], n_e)))
    return EdgeIndexedGraph.from_pairs(g.vertices, pairs)


@dataclass(frozen=True)
class Cusp:
    """Standard infinite ray: outward attachment weight alpha, inward ray_q.

    Beyond the attachment edge the ray pattern is fixed (1 outward, ray_q
    inward), so ray_q = 1 would leave no weighted return path and is
    rejected.
    """

    vertex: str
    alpha: int
    ray_q: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("cusp attachment weight alpha must be >= 1")
        if self.ray_q < 2:
            raise ValueError("cusp ray weight ray_q must be >= 2")


@dataclass(frozen=True)
class CuspidalGraph:
    """Finite core plus standard cusp rays; the stand-in for a geometrically finite quotient."""

    core: EdgeIndexedGraph
    cusps: tuple[Cusp, ...]
    q: int
    central_order: int = 1

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be a positive integer")
        if self.central_order < 1:
            raise ValueError("central_order must be a positive integer")

    def cusps_at(self, vertex: str) -> tuple[Cusp, ...]:
        return tuple(c for c in self.cusps if c.vertex == vertex)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "central_order": self.central_order,
            "vertices": list(self.core.vertices),
            "edges": [
                {"a": a, "b": b, "wa": _int_weight(wa), "wb": _int_weight(wb)}
                for a, b, wa, wb in self.core.edge_pairs()
            ],
            "cusps": [
                {"vertex": c.vertex, "alpha": c.alpha, "ray_q": c.ray_q} for c in self.cusps
            ],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> CuspidalGraph:
        return _cuspidal_from_json(data)


def _int_weight(w: Fraction) -> int:
    if w.denominator != 1:
        raise GraphFormatError(f"graph JSON carries integer weights only, got {w}")
    return int(w)


def _require_keys(obj: dict, required: set[str], optional: set[str], where: str) -> None:
    keys = set(obj)
    unknown = keys - required - optional
    if unknown:
        raise GraphFormatError(f"unknown field(s) {sorted(unknown)} in {where}")
    missing = required - keys
    if missing:
        raise GraphFormatError(f"missing field(s) {sorted(missing)} in {where}")


def _positive_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise GraphFormatError(f"{where} must be a positive integer, got {value!r}")
    return value


def _cuspidal_from_json(data: dict) -> CuspidalGraph:
    if not isinstance(data, dict):
        raise GraphFormatError("graph JSON must be an object")
    _require_keys(data, {"q", "vertices", "edges"}, {"central_order", "cusps"}, "graph")
    q = _positive_int(data["q"], "q")
    central = _positive_int(data.get("central_order", 1), "central_order")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError("vertices must be a list of strings")
    if len(set(vertices)) != len(vertices):
        raise GraphFormatError("duplicate vertex ids")
    vset = set(vertices)
    pairs = []
    for entry in data["edges"]:
        if not isinstance(entry, dict):
            raise GraphFormatError("each edge must be an object")
        _require_keys(entry, {"a", "b", "wa", "wb"}, set(), "edge")
        a, b = entry["a"], entry["b"]
        if a not in vset or b not in vset:
            raise GraphFormatError(f"edge ({a!r}, {b!r}) references an unknown vertex")
        if a == b:
            raise GraphFormatError(f"self-loop at {a!r} is not supported")
        pairs.append((a, b, _positive_int(entry["wa"], "wa"), _positive_int(entry["wb"], "wb")))
    cusps = []
    for entry in data.get("cusps", []):
        if not isinstance(entry, dict):
            raise GraphFormatError("each cusp must be an object")
        _require_keys(entry, {"vertex", "alpha"}, {"ray_q"}, "cusp")
        v = entry["vertex"]
        if v not in vset:
            raise GraphFormatError(f"cusp attached to unknown vertex {v!r}")
        ray_q = _positive_int(entry.get("ray_q", q), "ray_q")
        cusps.append(Cusp(v, _positive_int(entry["alpha"], "alpha"), ray_q))
    core = EdgeIndexedGraph.from_pairs(vertices, pairs)
    return CuspidalGraph(core, tuple(cusps), q, central)


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


def validate(
    g: EdgeIndexedGraph | CuspidalGraph, expect_q: int | None = None
) -> ValidationReport:
    """Check structural invariants; regularity failures are warnings only.

    With ``expect_q`` given, every core vertex must have weighted out-degree
    (plus one alpha per attached cusp) equal to ``expect_q + 1``.  Families
    with deliberately small attachment weights are non-regular, so a
    regularity mismatch does not invalidate the graph.
    """
    cusps: tuple[Cusp, ...] = ()
    if isinstance(g, CuspidalGraph):
        cusps = g.cusps
        graph = g.core
    else:
        graph = g
    errors: list[str] = []
    warnings: list[str] = []
    vset = set(graph.vertices)
    n = len(graph.edges)
    for e in graph.edges:
        if e.source not in vset or e.target not in vset:
            errors.append(f"edge {e.id} has endpoint outside the vertex set")
        if not (0 <= e.inverse < n):
            errors.append(f"edge {e.id} has missing inverse {e.inverse}")
            continue
        inv = graph.edges[e.inverse]
        if inv.inverse != e.id:
            errors.append(f"inverse pairing of edges {e.id} and {e.inverse} is not involutive")
        if e.inverse == e.id:
            errors.append(f"edge {e.id} is its own inverse")
        if inv.source != e.target or inv.target != e.source:
            errors.append(f"edge {e.id} and its inverse disagree on endpoints")
        if e.weight <= 0:
            errors.append(f"edge {e.id} has non-positive weight {e.weight}")
    for c in cusps:
        if c.vertex not in vset:
            errors.append(f"cusp attached to unknown vertex {c.vertex!r}")
    if not errors and graph.vertices:
        seen = {graph.vertices[0]}
        stack = [graph.vertices[0]]
        while stack:
            v = stack.pop()
            for i in graph.out_edges(v):
                t = graph.edges[i].target
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        if len(seen) != len(vset):
            errors.append("graph is not connected")
    if expect_q is not None and not errors:
        target = Fraction(expect_q + 1)
        for v in graph.vertices:
            total = sum((graph.edges[i].weight for i in graph.out_edges(v)), Fraction(0))
            total += sum(c.alpha for c in cusps if c.vertex == v)
            if total != target:
                warnings.append(
                    f"vertex {v!r} has weighted out-degree {total}, expected {target}"
                )
        for idx, c in enumerate(cusps):
            if c.ray_q != expect_q:
                warnings.append(
                    f"cusp {idx} has ray weight {c.ray_q}, so the ray is not {expect_q + 1}-regular"
                )
    return ValidationReport(tuple(errors), tuple(warnings))


def truncate(c: CuspidalGraph, depth: int) -> EdgeIndexedGraph:
    """Replace each cusp ray by a path of ``depth`` new vertices.

    The attachment edge keeps weights (alpha out, ray_q in); every deeper
    ray edge carries (1 out, ray_q in).  The deepest ray vertex is a leaf,
    so truncations are nested as subgraphs as ``depth`` grows.
    """
    if depth < 1:
        raise ValueError("truncation depth must be >= 1")
    vertices = list(c.core.vertices)
    existing = set(vertices)
    pairs: list[tuple[str, str, Fraction | int, Fraction | int]] = c.core.edge_pairs()
    for idx, cusp in enumerate(c.cusps):
        prev = cusp.vertex
        for k in range(1, depth + 1):
            name = f"{cusp.vertex}.ray{idx}.{k}"
            if name in existing:
                raise ValueError(f"ray vertex name {name!r} collides with the core")
            existing.add(name)
            vertices.append(name)
            outward = cusp.alpha if k == 1 else 1
            pairs.append((prev, name, outward, cusp.ray_q))
            prev = name
    return EdgeIndexedGraph.from_pairs(vertices, pairs)


def relabel(g: EdgeIndexedGraph | CuspidalGraph, mapping: Mapping[str, str]):
    """Rename vertices through a bijection, carrying all weights along."""
    if isinstance(g, CuspidalGraph):
        return CuspidalGraph(
            relabel(g.core, mapping),
            tuple(Cusp(mapping[c.vertex], c.alpha, c.ray_q) for c in g.cusps),
            g.q,
            g.central_order,
        )
    new_names = [mapping[v] for v in g.vertices]
    if len(set(new_names)) != len(new_names):
        raise ValueError("relabeling map is not a bijection on vertex ids")
    return EdgeIndexedGraph(
        new_names,
        [
            OrientedEdge(e.id, mapping[e.source], mapping[e.target], e.inverse, e.weight)
            for e in g.edges
        ],
    )


def invariant_signature(c: CuspidalGraph):
    """Canonical tuple of isomorphism invariants of a cuspidal graph.

    Equal signatures are necessary for isomorphism; distinct signatures
    certify non-isomorphism.  The components are the sorted degree sequence
    (cusps count as pendant edges), the multiset of unoriented core weight
    pairs, the multiset of cusp parameters, and the canonically aggregated
    per-vertex outgoing-weight multisets.
    """
    graph = c.core
    degree_seq = []
    profiles = []
    for v in graph.vertices:
        out = [graph.edges[i].weight for i in graph.out_edges(v)]
        alphas = [Fraction(x.alpha) for x in c.cusps_at(v)]
        degree_seq.append(len(out) + len(alphas))
        profiles.append(tuple(sorted(out + alphas)))
    weight_pairs = sorted(
        (min(wa, wb), max(wa, wb)) for _, _, wa, wb in graph.edge_pairs()
    )
    cusp_params = sorted((Fraction(x.alpha), x.ray_q) for x in c.cusps)
    return (
        tuple(sorted(degree_seq)),
        tuple(weight_pairs),
        tuple(cusp_params),
        tuple(sorted(profiles)),
    )
