"""Shared test oracles and generators, independent of the engine under test."""

import random
from fractions import Fraction as F

from cuspzeta.exact import Poly, PolyMatrix, poly_det
from cuspzeta.graphs import EdgeIndexedGraph


def vertex_side_determinant(g: EdgeIndexedGraph) -> Poly:
    """det(I - uA + u^2 Q) assembled directly from adjacency counts."""
    verts = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj = [[0] * n for _ in range(n)]
    deg = [0] * n
    for e in g.edges:
        adj[pos[e.source]][pos[e.target]] += 1
        deg[pos[e.source]] += 1
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            c0 = F(1) if i == j else F(0)
            c2 = F(deg[i] - 1) if i == j else F(0)
            row.append(Poly([c0, F(-adj[i][j]), c2]))
        rows.append(row)
    return poly_det(PolyMatrix(rows))


def random_min_degree_two_graph(rng: random.Random, max_vertices: int = 10) -> EdgeIndexedGraph:
    """Connected simple unit-weight graph with minimum degree two.

    A cycle guarantees both properties; a few random chords vary the shape.
    """
    n = rng.randint(3, max_vertices)
    names = [f"v{i}" for i in range(n)]
    pairs = [(names[i], names[(i + 1) % n], 1, 1) for i in range(n)]
    taken = {(i, (i + 1) % n) for i in range(n)} | {((i + 1) % n, i) for i in range(n)}
    for _ in range(rng.randint(0, 3)):
        i, j = rng.sample(range(n), 2)
        if (i, j) not in taken:
            taken.add((i, j))
            taken.add((j, i))
            pairs.append((names[i], names[j], 1, 1))
    return EdgeIndexedGraph.from_pairs(names, pairs)
