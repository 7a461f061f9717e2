"""Subdivision constructions with machine-checkable growth certificates,
strong-product embedding verification, degree-3 expansion, and minor-map
contraction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from .errors import (
    CapacityError,
    ModelError,
    PreconditionError,
    RangeError,
)
from .graphs import Graph, bfs_distances, is_tree

SUBDIVISION_VERTEX_BUDGET = 500_000
SUPERLINEAR_SCAN_BUDGET = 1_000_000


@dataclass(frozen=True)
class HostEmbedding:
    """Placement of a graph inside host_tree boxed with a k-clique: each
    vertex maps injectively to (tree node, copy index in [1,k])."""

    host_tree: Graph
    root: int
    k: int
    vertex_map: Dict[int, Tuple[int, int]]

    def to_json_dict(self) -> dict:
        return {
            "tree_edges": [list(e) for e in self.host_tree.edges()],
            "tree_n": self.host_tree.n,
            "root": self.root,
            "k": self.k,
            "map": [
                {"v": v, "node": node, "copy": copy}
                for v, (node, copy) in sorted(self.vertex_map.items())
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "HostEmbedding":
        n = int(data.get("tree_n", 1 + max((max(e) for e in data["tree_edges"]), default=0)))
        tree = Graph(n, [tuple(e) for e in data["tree_edges"]])
        vmap = {int(d["v"]): (int(d["node"]), int(d["copy"])) for d in data["map"]}
        return HostEmbedding(host_tree=tree, root=int(data["root"]), k=int(data["k"]),
                             vertex_map=vmap)


@dataclass(frozen=True)
class EmbeddingVerdict:
    valid: bool
    first_failure: Optional[str] = None


def check_product_embedding(g: Graph, emb: HostEmbedding) -> EmbeddingVerdict:
    """Valid iff every edge of g maps to a strong-product adjacency of
    host_tree boxed with K_k: tree nodes equal (with distinct copies) or
    adjacent."""
    if not is_tree(emb.host_tree):
        raise PreconditionError("embedding host must be a tree")
    emb.host_tree._check_vertex(emb.root)
    if emb.k < 1:
        raise RangeError(f"copies per node must be >= 1, got {emb.k}")
    for v in range(g.n):
        if v not in emb.vertex_map:
            return EmbeddingVerdict(False, f"vertex {v} has no image")
    images = set()
    for v, (node, copy) in emb.vertex_map.items():
        if not (0 <= node < emb.host_tree.n):
            return EmbeddingVerdict(False, f"vertex {v} maps to missing tree node {node}")
        if not (1 <= copy <= emb.k):
            return EmbeddingVerdict(False, f"vertex {v} maps to copy {copy} outside [1,{emb.k}]")
        if (node, copy) in images:
            return EmbeddingVerdict(False, f"image ({node},{copy}) used twice")
        images.add((node, copy))
    for u, v in g.edges():
        nu, cu = emb.vertex_map[u]
        nv, cv = emb.vertex_map[v]
        if nu == nv:
            if cu == cv:
                return EmbeddingVerdict(False, f"edge ({u},{v}) collapses to one product vertex")
        elif not emb.host_tree.has_edge(nu, nv):
            return EmbeddingVerdict(
                False, f"edge ({u},{v}) maps to non-adjacent tree nodes {nu},{nv}"
            )
    return EmbeddingVerdict(True)


@dataclass(frozen=True)
class SubdivisionRecord:
    """A built subdivision: the base graph, the per-edge path length (in
    edges), and the result.  Host subdivisions also record the per-edge
    root-depth gamma, the deep-edge counts, the certified path-scale table
    and epsilon; uniform ones record the common subdivision count."""

    base: Graph
    lengths: Dict[Tuple[int, int], int]
    result: Graph
    gamma: Optional[Dict[Tuple[int, int], int]] = None
    deep_edge_counts: Optional[Tuple[int, ...]] = None
    scale_table: Optional[Tuple[int, ...]] = None
    epsilon: Optional[Fraction] = None
    uniform_subdivisions: Optional[int] = None

    def to_json_dict(self) -> dict:
        data = {
            "base_n": self.base.n,
            "base_edges": [list(e) for e in self.base.edges()],
            "lengths": [[u, v, l] for (u, v), l in sorted(self.lengths.items())],
            "result_n": self.result.n,
            "result_m": self.result.m,
        }
        if self.gamma is not None:
            data["gamma"] = [[u, v, d] for (u, v), d in sorted(self.gamma.items())]
            data["deep_edge_counts"] = list(self.deep_edge_counts)
            data["scale_table"] = list(self.scale_table)
            data["epsilon"] = str(self.epsilon)
        if self.uniform_subdivisions is not None:
            data["uniform_subdivisions"] = self.uniform_subdivisions
        return data


def subdivide(g: Graph, lengths: Dict[Tuple[int, int], int]) -> Graph:
    """Replace each edge (u,v), u < v, by an internally disjoint path of
    lengths[(u,v)] edges; internal vertices are appended after the originals
    in sorted edge order."""
    edges = list(g.edges())
    if set(lengths) != set(edges):
        raise PreconditionError("path lengths must cover exactly the edges")
    total = g.n + sum(lengths[e] - 1 for e in edges)
    if total > SUBDIVISION_VERTEX_BUDGET:
        raise CapacityError(
            f"subdivision would have {total} vertices (budget {SUBDIVISION_VERTEX_BUDGET})"
        )
    new_edges = []
    next_id = g.n
    for u, v in edges:
        length = lengths[(u, v)]
        if length < 1:
            raise RangeError(f"path length for ({u},{v}) must be >= 1, got {length}")
        prev = u
        for _ in range(length - 1):
            new_edges.append((prev, next_id))
            prev = next_id
            next_id += 1
        new_edges.append((prev, v))
    return Graph(next_id, new_edges)


def host_subdivision_plan(g: Graph, emb: HostEmbedding, epsilon):
    """Certificate data without building the result: per-edge root depth
    gamma, the count ell(i) of edges deeper than i, and the smallest integer
    scale table with scale[n_T] = 1 and
    epsilon * scale[i] >= 2 * scale[i+1] * ell(i) + |V(g)| for all i.
    Each edge gets a path of length 2 * scale[gamma(e)]."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise RangeError(f"epsilon must be positive, got {epsilon}")
    verdict = check_product_embedding(g, emb)
    if not verdict.valid:
        raise PreconditionError(f"invalid embedding: {verdict.first_failure}")
    if g.m < 1:
        raise PreconditionError("host subdivision needs at least one edge")
    depth = bfs_distances(emb.host_tree, emb.root)
    gamma = {}
    for u, v in g.edges():
        gamma[(u, v)] = min(depth[emb.vertex_map[u][0]], depth[emb.vertex_map[v][0]])
    n_t = emb.host_tree.n
    ell = tuple(
        sum(1 for d in gamma.values() if d > i) for i in range(n_t)
    )
    scale = [1] * (n_t + 1)
    for i in range(n_t - 1, -1, -1):
        need = Fraction(2 * scale[i + 1] * ell[i] + g.n, epsilon)
        scale[i] = max(1, math.ceil(need))
    lengths = {e: 2 * scale[d] for e, d in gamma.items()}
    projected = g.n + sum(l - 1 for l in lengths.values())
    return gamma, ell, tuple(scale), lengths, projected


def subdivide_in_host(g: Graph, emb: HostEmbedding, epsilon) -> SubdivisionRecord:
    """Build the host-guided subdivision; the growth certificate
    f(r) <= (k * max_degree + epsilon) * r + 1 is re-verified by the growth
    module, not assumed here."""
    epsilon = Fraction(epsilon)
    gamma, ell, scale, lengths, projected = host_subdivision_plan(g, emb, epsilon)
    if projected > SUBDIVISION_VERTEX_BUDGET:
        raise CapacityError(
            f"host subdivision projects {projected} vertices "
            f"(budget {SUBDIVISION_VERTEX_BUDGET}); increase epsilon"
        )
    result = subdivide(g, lengths)
    return SubdivisionRecord(
        base=g, lengths=lengths, result=result, gamma=gamma,
        deep_edge_counts=ell, scale_table=scale, epsilon=epsilon,
    )


def subdivide_uniform_superlinear(
    g: Graph,
    f: Callable[[int], Fraction],
    f_monotone_declared: bool = True,
    scan_budget: int = SUPERLINEAR_SCAN_BUDGET,
) -> SubdivisionRecord:
    """Uniform subdivision with growth at most f: find the least ell with
    f(ell) >= 2 * ell * m + n and subdivide every edge 2 * ell times.  f must
    be nondecreasing and satisfy f(r) >= max_degree * r + 1 (checked up to
    ell, violations named); superlinearity failures exhaust the scan budget."""
    if not f_monotone_declared:
        raise PreconditionError("f must be declared nondecreasing")
    if g.n == 0:
        raise PreconditionError("cannot subdivide the empty graph")
    delta = g.max_degree()
    m, n = g.m, g.n
    ell = None
    for r in range(1, scan_budget + 1):
        value = Fraction(f(r))
        if value < delta * r + 1:
            raise PreconditionError(
                f"f({r}) = {value} < max_degree * r + 1 = {delta * r + 1}"
            )
        if value >= 2 * r * m + n:
            ell = r
            break
    if ell is None:
        raise PreconditionError(
            f"f(r) < 2*r*m + n for all r <= {scan_budget}; f is not superlinear enough"
        )
    # Monotonicity spot check past the threshold.
    prev = Fraction(f(1))
    for r in range(2, ell + n + 1):
        cur = Fraction(f(r))
        if cur < prev:
            raise PreconditionError(f"f is not nondecreasing at r={r}")
        prev = cur
    lengths = {e: 2 * ell + 1 for e in g.edges()}
    result = subdivide(g, lengths)
    return SubdivisionRecord(
        base=g, lengths=lengths, result=result, uniform_subdivisions=2 * ell,
    )


def expand_to_degree3(g: Graph) -> Tuple[Graph, Dict[int, int]]:
    """Split every vertex of degree >= 4 into a path whose i-th vertex
    inherits the i-th incident edge (neighbors ascending).  Returns the new
    graph and the map from new vertices back to originals; contracting the
    map recovers g exactly."""
    slot: Dict[Tuple[int, int], int] = {}
    minor_map: Dict[int, int] = {}
    new_edges = []
    next_id = 0
    for v in range(g.n):
        deg = len(g.adj[v])
        if deg <= 3:
            vid = next_id
            next_id += 1
            minor_map[vid] = v
            for w in g.adj[v]:
                slot[(v, w)] = vid
        else:
            ids = list(range(next_id, next_id + deg))
            next_id += deg
            for i, w in enumerate(g.adj[v]):
                minor_map[ids[i]] = v
                slot[(v, w)] = ids[i]
            new_edges.extend(zip(ids, ids[1:]))
    for u, v in g.edges():
        new_edges.append((slot[(u, v)], slot[(v, u)]))
    return Graph(next_id, new_edges), minor_map


def contract_minor_map(h: Graph, minor_map: Dict[int, int]) -> Graph:
    """Contract each label's preimage (which must induce a connected
    subgraph) to a single vertex; labels are relabelled densely in sorted
    order; self-loops are discarded."""
    if set(minor_map) != set(range(h.n)):
        raise PreconditionError("minor map must cover exactly the vertices of h")
    labels = sorted(set(minor_map.values()))
    index = {lab: i for i, lab in enumerate(labels)}
    preimages: Dict[int, set] = {lab: set() for lab in labels}
    for v, lab in minor_map.items():
        preimages[lab].add(v)
    for lab, pre in preimages.items():
        if not _connected_subset(h, pre):
            raise ModelError(f"preimage of label {lab} is disconnected")
    edges = set()
    for u, v in h.edges():
        lu, lv = index[minor_map[u]], index[minor_map[v]]
        if lu != lv:
            edges.add((min(lu, lv), max(lu, lv)))
    return Graph(len(labels), edges)


def _connected_subset(g: Graph, vertices: set) -> bool:
    if len(vertices) <= 1:
        return True
    start = next(iter(vertices))
    allowed = frozenset(vertices)
    return len(bfs_distances(g, start, allowed)) == len(vertices)


def suppress_degree_two(g: Graph, keep) -> Graph:
    """Contract away degree-2 vertices outside `keep`, recovering the base
    graph of a subdivision on the kept (original) vertices."""
    keep = sorted(set(keep))
    index = {v: i for i, v in enumerate(keep)}
    keep_set = set(keep)
    edges = set()
    seen_internal = set()
    for v in keep:
        for w in g.adj[v]:
            prev, cur = v, w
            while cur not in keep_set:
                seen_internal.add(cur)
                nxt = [x for x in g.adj[cur] if x != prev]
                if len(g.adj[cur]) != 2 or len(nxt) != 1:
                    raise ModelError(f"internal vertex {cur} is not a degree-2 path vertex")
                prev, cur = cur, nxt[0]
            a, b = index[v], index[cur]
            if a == b:
                raise ModelError(f"path from {v} loops back to itself")
            edges.add((min(a, b), max(a, b)))
    stray = set(range(g.n)) - keep_set - seen_internal
    if stray:
        raise ModelError(f"vertices {sorted(stray)} belong to no kept path")
    return Graph(len(keep), edges)
