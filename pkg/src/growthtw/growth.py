"""Growth function f_G(r) and the growth constant.

f_G(r) is the largest vertex count of a subgraph of radius at most r.  The
fast path computes f_G(r) as max_v |B_r(v)|: the induced subgraph on a ball
B_r(v) has radius at most r (shortest paths from v stay inside the ball),
and conversely any subgraph H of radius <= r centered at w has
V(H) <= B_r(w) since distances in G are at most distances in H.  The
brute-force oracle below validates this reduction by exhaustive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Optional, Tuple

from .errors import CapacityError, PreconditionError, RangeError
from .graphs import Graph, bfs_distances

# Exhaustive enumeration refuses beyond these sizes.
BRUTE_FORCE_EDGE_BUDGET = 20
BRUTE_FORCE_VERTEX_BUDGET = 16


@dataclass(frozen=True)
class GrowthProfile:
    """f(1), ..., f(r_max) plus the exact growth constant
    c = max_{1<=r<=min(r_max,n)} f(r)/r and the smallest radius attaining it."""

    values: Tuple[int, ...]
    growth_constant: Fraction
    argmax_radius: int

    @property
    def r_max(self) -> int:
        return len(self.values)

    def f(self, r: int) -> int:
        if not (1 <= r <= len(self.values)):
            raise RangeError(f"r={r} outside computed range [1,{len(self.values)}]")
        return self.values[r - 1]


def growth_profile(g: Graph, r_max: int) -> GrowthProfile:
    """f(r) = max_v |B_r(v)| for r in [1, r_max], with the growth constant
    maximised over r in [1, min(r_max, n)]."""
    if g.n == 0:
        raise PreconditionError("growth is undefined for the empty graph")
    if r_max < 1:
        raise RangeError(f"r_max must be >= 1, got {r_max}")
    values = [0] * r_max
    for v in range(g.n):
        dist = bfs_distances(g, v)
        ecc = max(dist.values())
        counts = [0] * (ecc + 1)
        for d in dist.values():
            counts[d] += 1
        cum = 0
        sizes = []
        for c in counts:
            cum += c
            sizes.append(cum)
        comp_size = sizes[-1]
        for r in range(1, r_max + 1):
            size = sizes[r] if r <= ecc else comp_size
            if size > values[r - 1]:
                values[r - 1] = size
    best = Fraction(0)
    best_r = 1
    for r in range(1, min(r_max, g.n) + 1):
        ratio = Fraction(values[r - 1], r)
        if ratio > best:
            best = ratio
            best_r = r
    return GrowthProfile(tuple(values), best, best_r)


def growth_constant(g: Graph) -> Fraction:
    """Exact c_G = max_r f(r)/r.  Scanning up to the largest eccentricity
    suffices: f is constant beyond it, so f(r)/r only decreases."""
    if g.n == 0:
        raise PreconditionError("growth is undefined for the empty graph")
    r_max = max(max(bfs_distances(g, v).values()) for v in range(g.n))
    return growth_profile(g, max(1, r_max)).growth_constant


def brute_force_growth(g: Graph, r: int) -> int:
    """Independent oracle: max |V(H)| over ALL subgraphs H with radius <= r.

    Enumerates vertex subsets and checks the radius of the induced subgraph.
    This covers every subgraph: a spanning subgraph of g[W] has distances at
    least those of g[W], so its radius is no smaller; candidates with extra
    isolated vertices are disconnected (hence of infinite radius) except for
    the bare single vertex, which is handled directly.  No ball reasoning is
    used anywhere."""
    if g.n == 0:
        raise PreconditionError("growth is undefined for the empty graph")
    if r < 1:
        raise RangeError(f"r must be >= 1, got {r}")
    if g.m > BRUTE_FORCE_EDGE_BUDGET:
        raise CapacityError(f"brute force refuses m={g.m} > {BRUTE_FORCE_EDGE_BUDGET}")
    table = _radius_table(g)
    return max(size for rad, size in table if rad <= r)


@lru_cache(maxsize=256)
def _radius_table(g: Graph) -> Tuple[Tuple[int, int], ...]:
    """(radius, max vertex count) pairs over connected induced subgraphs,
    computed by plain 2^V enumeration over non-isolated vertices."""
    support = [v for v in range(g.n) if g.adj[v]]
    if len(support) > BRUTE_FORCE_VERTEX_BUDGET:
        raise CapacityError(
            f"brute force refuses {len(support)} non-isolated vertices "
            f"(budget {BRUTE_FORCE_VERTEX_BUDGET})"
        )
    # A single vertex is a subgraph of radius 0.
    best = {0: 1}
    index = {v: i for i, v in enumerate(support)}
    adj_masks = [
        sum(1 << index[w] for w in g.adj[v] if w in index) for v in support
    ]
    k = len(support)
    for mask in range(3, 1 << k):
        if mask & (mask - 1) == 0:
            continue
        rad = _mask_radius(adj_masks, mask, k)
        if rad is None:
            continue
        size = bin(mask).count("1")
        if best.get(rad, 0) < size:
            best[rad] = size
    return tuple(sorted(best.items()))


def _mask_radius(adj_masks, mask: int, k: int) -> Optional[int]:
    """Radius of the induced subgraph on `mask`, or None if disconnected."""
    rad = None
    for v in range(k):
        if not (mask >> v) & 1:
            continue
        reached = 1 << v
        frontier = reached
        ecc = 0
        while True:
            nxt = 0
            f = frontier
            while f:
                u = (f & -f).bit_length() - 1
                nxt |= adj_masks[u]
                f &= f - 1
            nxt &= mask & ~reached
            if not nxt:
                break
            ecc += 1
            reached |= nxt
            frontier = nxt
        if reached != mask:
            return None
        if rad is None or ecc < rad:
            rad = ecc
    return rad


def brute_force_growth_edge_subsets(g: Graph, r: int) -> int:
    """Literal edge-subset enumeration (plus the single-vertex candidate),
    used to cross-validate the vertex-subset oracle on tiny graphs."""
    if g.n == 0:
        raise PreconditionError("growth is undefined for the empty graph")
    if g.m > 14:
        raise CapacityError(f"edge-subset enumeration refuses m={g.m} > 14")
    edges = list(g.edges())
    best = 1
    for size in range(1, len(edges) + 1):
        for subset in combinations(edges, size):
            verts = sorted({u for e in subset for u in e})
            index = {v: i for i, v in enumerate(verts)}
            adj = [0] * len(verts)
            for u, v in subset:
                adj[index[u]] |= 1 << index[v]
                adj[index[v]] |= 1 << index[u]
            mask = (1 << len(verts)) - 1
            rad = _mask_radius(adj, mask, len(verts))
            if rad is not None and rad <= r and len(verts) > best:
                best = len(verts)
    return best


@dataclass(frozen=True)
class BoundVerdict:
    holds: bool
    first_violation: Optional[Tuple[int, int]] = None  # (r, f(r))


def verify_growth_bound(g: Graph, bound: Callable[[int], Fraction]) -> BoundVerdict:
    """Check f_g(r) <= bound(r) for every r in [1, n].  f is constant beyond
    r = n and in-scope bounds are nondecreasing, so this range suffices."""
    profile = growth_profile(g, g.n if g.n >= 1 else 1)
    for r in range(1, g.n + 1):
        try:
            limit = Fraction(bound(r))
        except Exception as exc:
            raise PreconditionError(f"bound not evaluable at r={r}: {exc}") from exc
        if profile.values[r - 1] > limit:
            return BoundVerdict(False, (r, profile.values[r - 1]))
    return BoundVerdict(True)
