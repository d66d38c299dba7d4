"""Span-freeness constraints, exact checkers, and Berge-cycle girth.

A constraint (e, v) demands that every e distinct edges span at least v+1
vertices.  The enumeration kernel below finds all e-subsets whose union
spans at most v vertices.  Rather than scanning all C(m, e) subsets it
roots the search at an edge pair sharing enough vertices: any violating
system with v < e*r must contain a pair sharing at least
ceil((e*r - v) / C(e, 2)) vertices, so rooting at the lexicographically
smallest such pair enumerates every system exactly once.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from math import comb

from .errors import BadRange, BudgetExceeded, GcdCondition, UniformityMismatch
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class FreenessConstraint:
    """Every `e` distinct edges must span at least `v + 1` vertices."""

    e: int
    v: int

    def __post_init__(self):
        if self.e < 1:
            raise BadRange(f"constraint needs e >= 1, got {self.e}")
        if self.v < 0:
            raise BadRange(f"constraint needs v >= 0, got {self.v}")

    def classify(self, r: int) -> str:
        """How the constraint behaves on an r-uniform hypergraph.

        'trivial' constraints hold for every hypergraph (any nonempty union
        spans at least r vertices); 'unsatisfiable' ones are violated by any
        e edges (e edges never span more than e*r vertices); the rest are
        'effective'.
        """
        if self.v < r:
            return "trivial"
        if self.v >= self.e * r:
            return "unsatisfiable"
        return "effective"


@dataclass(frozen=True)
class ConstraintProfile:
    """A conjunction of constraints with pairwise-distinct e values."""

    constraints: tuple[FreenessConstraint, ...]
    tag: str = "custom"

    def __post_init__(self):
        es = [c.e for c in self.constraints]
        if sorted(es) != es:
            raise BadRange("profile constraints must be sorted by e")
        if len(set(es)) != len(es):
            raise BadRange("profile constraints must have distinct e values")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a freeness check, with a witness when it fails.

    The witness is the lexicographically smallest violating edge-index
    tuple and `spanned` is the size of its union.
    """

    holds: bool
    constraint: FreenessConstraint | None = None
    witness: tuple[int, ...] | None = None
    spanned: int | None = None
    flags: tuple[str, ...] = ()

    def to_report(self) -> dict:
        return {
            "holds": self.holds,
            "constraint": None
            if self.constraint is None
            else {"e": self.constraint.e, "v": self.constraint.v},
            "witness": None if self.witness is None else list(self.witness),
            "spanned": self.spanned,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class BergeCycle:
    """An explicit Berge cycle: edges[i] contains vertices[i-1] and vertices[i]
    (cyclically, so edges[0] contains vertices[-1] and vertices[0])."""

    length: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def vertex_index(edges) -> dict[int, list[int]]:
    """Map each vertex to the ascending list of edge indices containing it."""
    index: dict[int, list[int]] = {}
    for i, edge in enumerate(edges):
        for v in edge:
            index.setdefault(v, []).append(i)
    return index


def _mask_vertices(mask: int) -> list[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def _sharing_pairs(edges, masks, threshold: int, index=None) -> list[tuple[int, int]]:
    """All edge-index pairs sharing at least `threshold` vertices, sorted."""
    m = len(edges)
    if threshold < 1:
        raise BadRange("sharing threshold must be >= 1")
    if index is None:
        index = vertex_index(edges)
    # Direct pairwise popcount beats the co-occurrence walk on dense degrees.
    cooc_cost = sum(comb(len(lst), 2) for lst in index.values())
    if comb(m, 2) < cooc_cost:
        out = []
        for i in range(m):
            mi = masks[i]
            for j in range(i + 1, m):
                if (mi & masks[j]).bit_count() >= threshold:
                    out.append((i, j))
        return out
    counts: Counter[tuple[int, int]] = Counter()
    for lst in index.values():
        for pair in itertools.combinations(lst, 2):
            counts[pair] += 1
    return sorted(p for p, c in counts.items() if c >= threshold)


def span_bounded_systems(
    edges,
    masks,
    size: int,
    max_span: int,
    *,
    budget: int | None = None,
    simple: bool = False,
) -> list[tuple[int, ...]]:
    """All `size`-subsets of edge indices whose union spans <= max_span vertices.

    Returns index tuples in lexicographic order.  `budget` caps the number
    of systems; exceeding it raises BudgetExceeded.  With `simple=True` the
    edges are promised pairwise distinct, so a union of `size` of them spans
    at least the smallest u with C(u, r) >= size; spans below that are pruned
    without scanning.
    """
    m = len(edges)
    if size < 1 or m < size:
        return []
    r = len(edges[0])
    if size == 1:
        return [(i,) for i in range(m)] if r <= max_span else []
    if simple:
        u = r
        while comb(u, r) < size:
            u += 1
        if u > max_span:
            return []
    if max_span >= size * r:
        total = comb(m, size)
        if budget is not None and total > budget:
            raise BudgetExceeded(f"{total} span-bounded systems exceed budget {budget}")
        return list(itertools.combinations(range(m), size))

    excess = size * r - max_span
    s_star = max(1, -(-excess // comb(size, 2)))
    index = vertex_index(edges)
    if size == 2:
        # exact threshold: span(a, b) <= max_span iff |a & b| >= 2r - max_span
        need = 2 * r - max_span
        pairs = _sharing_pairs(edges, masks, need, index)
        if budget is not None and len(pairs) > budget:
            raise BudgetExceeded(f"{len(pairs)} span-bounded pairs exceed budget {budget}")
        return pairs

    roots = _sharing_pairs(edges, masks, s_star, index)
    results: list[tuple[int, ...]] = []

    def lexmin_pair(system: tuple[int, ...]) -> tuple[int, int]:
        for a, b in itertools.combinations(system, 2):
            if (masks[a] & masks[b]).bit_count() >= s_star:
                return (a, b)
        raise AssertionError("system without a qualifying pair")

    def emit(i: int, j: int, rest: tuple[int, ...]):
        system = tuple(sorted((i, j) + rest))
        if lexmin_pair(system) == (i, j):
            results.append(system)
            if budget is not None and len(results) > budget:
                raise BudgetExceeded(
                    f"span-bounded system count exceeds budget {budget}"
                )

    for i, j in roots:
        u0 = masks[i] | masks[j]
        span0 = u0.bit_count()
        if span0 > max_span:
            continue

        def rec(chosen: tuple[int, ...], u: int, span: int, start: int):
            t = size - 2 - len(chosen)
            if t == 0:
                emit(i, j, chosen)
                return
            cap = max_span - span
            if cap >= t * r:
                # any t further edges fit inside the span budget
                pool = [k for k in range(start, m) if k != i and k != j]
                for combo in itertools.combinations(pool, t):
                    emit(i, j, chosen + combo)
                return
            if cap >= r:
                cands = (k for k in range(start, m) if k != i and k != j)
            else:
                # the next edge must reuse at least r - cap spanned vertices
                need = r - cap
                cnt: Counter[int] = Counter()
                for v in _mask_vertices(u):
                    for k in index.get(v, ()):
                        if k >= start and k != i and k != j:
                            cnt[k] += 1
                cands = iter(sorted(k for k, c in cnt.items() if c >= need))
            for k in cands:
                u2 = u | masks[k]
                span2 = u2.bit_count()
                if span2 <= max_span:
                    rec(chosen + (k,), u2, span2, k + 1)

        rec((), u0, span0, 0)

    results.sort()
    return results


def check_free(
    h: Hypergraph,
    constraint: FreenessConstraint,
    *,
    r: int | None = None,
    budget: int | None = None,
) -> Verdict:
    """Exact check that every `constraint.e` distinct edges of `h` span more
    than `constraint.v` vertices.  Edge indices refer to `h.edges`; in a
    multigraph, repeated edges are distinct items."""
    if r is not None and h.r != r:
        raise UniformityMismatch(f"hypergraph is {h.r}-uniform, expected {r}")
    e, v = constraint.e, constraint.v
    kind = constraint.classify(h.r)
    flags = () if kind == "effective" else (kind,)
    if h.m < e or kind == "trivial":
        return Verdict(True, constraint, flags=flags)
    if kind == "unsatisfiable":
        witness = tuple(range(e))
        return Verdict(False, constraint, witness, h.union_span(witness), flags)
    systems = span_bounded_systems(h.edges, h.masks, e, v, budget=budget, simple=not h.multi)
    if not systems:
        return Verdict(True, constraint, flags=flags)
    witness = systems[0]
    return Verdict(False, constraint, witness, h.union_span(witness), flags)


def check_profile(
    h: Hypergraph,
    profile: ConstraintProfile,
    *,
    r: int | None = None,
    budget: int | None = None,
) -> Verdict:
    """Conjunction check; fails with the witness of the smallest failing e."""
    if r is not None and h.r != r:
        raise UniformityMismatch(f"hypergraph is {h.r}-uniform, expected {r}")
    flags: tuple[str, ...] = ()
    for c in profile.constraints:
        verdict = check_free(h, c, budget=budget)
        flags = flags + tuple(f for f in verdict.flags if f not in flags)
        if not verdict.holds:
            return Verdict(False, c, verdict.witness, verdict.spanned, flags)
    return Verdict(True, None, flags=flags)


def span_deficits(r: int, e: int, v: int) -> dict[int, int]:
    """The per-level span deficits f(i) = ceil((i-1)(e*r - v)/(e - 1)) for
    2 <= i <= e-1, extended by f(e) = e*r - v.  Requires gcd(e-1, e*r-v) = 1,
    which keeps every f(i) strictly between the window bounds."""
    if r < 3 or e < 3:
        raise BadRange(f"need r >= 3 and e >= 3, got r={r} e={e}")
    if not (r + 1 <= v <= e * r - 1):
        raise BadRange(f"need r+1 <= v <= e*r-1, got v={v}")
    d = e * r - v
    if math.gcd(e - 1, d) != 1:
        raise GcdCondition(f"gcd(e-1, e*r-v) = gcd({e - 1}, {d}) != 1")
    f = {i: -(-((i - 1) * d) // (e - 1)) for i in range(2, e)}
    f[e] = d
    return f


def ladder_profile(r: int, e: int, v: int) -> ConstraintProfile:
    """The graded profile behind the main construction: for every i <= e,
    any i distinct edges must span more than i*r - f(i) vertices, where the
    deficits f interpolate linearly up to the target constraint (e, v)."""
    f = span_deficits(r, e, v)
    constraints = tuple(
        FreenessConstraint(i, i * r - f[i]) for i in range(2, e + 1)
    )
    return ConstraintProfile(constraints, tag="ladder")


def deficit_profile(r: int, q: int, e: int) -> ConstraintProfile:
    """Every i <= e edges must span at least i - q vertices.

    Constraints with i - q - 1 < r hold for any r-uniform hypergraph (they
    are kept but flagged trivial at check time); for i - q - 1 >= r they
    bite, and on multigraphs already at i = r + q + 1 since i repeated
    edges span exactly r vertices.
    """
    if e < 1 or q < 0 or r < 1:
        raise BadRange(f"need e >= 1, q >= 0, r >= 1, got e={e} q={q} r={r}")
    constraints = tuple(FreenessConstraint(i, i - q - 1) for i in range(1, e + 1) if i - q - 1 >= 0)
    return ConstraintProfile(constraints, tag="deficit")


def berge_profile(r: int, t: int) -> ConstraintProfile:
    """Freeness profile equivalent to having no Berge cycle of length <= t:
    for each 2 <= i <= t, any i distinct edges span more than i*(r-1)."""
    if t < 2 or r < 2:
        raise BadRange(f"need t >= 2 and r >= 2, got t={t} r={r}")
    constraints = tuple(FreenessConstraint(i, i * r - i) for i in range(2, t + 1))
    return ConstraintProfile(constraints, tag="berge")


def _shortest_incidence_cycle(adj: dict, nodes: list) -> list:
    """Shortest cycle in a small undirected graph, as a node list."""
    best: list | None = None
    for root in nodes:
        depth = {root: 0}
        parent = {root: None}
        queue = [root]
        qi = 0
        while qi < len(queue):
            w = queue[qi]
            qi += 1
            if best is not None and depth[w] * 2 + 1 >= len(best):
                break
            for u in adj[w]:
                if u == parent[w]:
                    continue
                if u not in depth:
                    depth[u] = depth[w] + 1
                    parent[u] = w
                    queue.append(u)
                    continue
                # cross edge: reconstruct the cycle through the BFS tree
                anc_w = [w]
                while anc_w[-1] is not None:
                    anc_w.append(parent[anc_w[-1]])
                anc_w.pop()
                anc_set = set(anc_w)
                path_u = [u]
                while path_u[-1] not in anc_set:
                    path_u.append(parent[path_u[-1]])
                lca = path_u[-1]
                cycle = anc_w[: anc_w.index(lca) + 1]
                cycle.reverse()
                cycle.extend(path_u[:-1])
                if best is None or len(cycle) < len(best):
                    best = cycle
    if best is None:
        raise AssertionError("no cycle in incidence graph")
    return best


def extract_berge_cycle(h: Hypergraph, system: tuple[int, ...]) -> BergeCycle:
    """Extract an explicit Berge cycle from edges spanning few vertices.

    If the k edges of `system` span at most k*(r-1) vertices, their
    vertex-edge incidence graph has at least as many links as nodes and so
    contains a cycle; any such cycle alternates edges and vertices and is
    exactly a Berge cycle.  Returns the shortest one, deterministically.
    """
    union = 0
    for i in system:
        union |= h.masks[i]
    nodes: list = [("e", i) for i in sorted(system)]
    nodes += [("v", x) for x in _mask_vertices(union)]
    adj: dict = {node: [] for node in nodes}
    for i in sorted(system):
        for x in h.edges[i]:
            adj[("e", i)].append(("v", x))
            adj[("v", x)].append(("e", i))
    for node in nodes:
        adj[node].sort()
    cycle = _shortest_incidence_cycle(adj, nodes)
    # rotate to the smallest edge node, orient toward the smaller neighbor
    estart = min(k for k, node in enumerate(cycle) if node[0] == "e")
    cycle = cycle[estart:] + cycle[:estart]
    if cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[1:][::-1]
    edge_seq = tuple(node[1] for node in cycle[0::2])
    vert_seq = tuple(node[1] for node in cycle[1::2])
    return BergeCycle(len(edge_seq), vert_seq, edge_seq)


def validate_berge_cycle(h: Hypergraph, cycle: BergeCycle) -> bool:
    """Check the cycle convention: distinct vertices, distinct edges, and
    edges[i] contains vertices[i-1] and vertices[i] cyclically."""
    t = cycle.length
    vs, es = cycle.vertices, cycle.edges
    if len(vs) != t or len(es) != t:
        return False
    if len(set(vs)) != t or len(set(es)) != t:
        return False
    for i in range(t):
        edge = set(h.edges[es[i]])
        if vs[i - 1] not in edge or vs[i] not in edge:
            return False
    return True


def berge_girth(h: Hypergraph, t_max: int) -> BergeCycle | None:
    """Smallest t <= t_max such that `h` contains a Berge t-cycle, with an
    explicit witness; None when the girth exceeds t_max.

    Uses the equivalence with span-freeness: a Berge t-cycle's edges span
    at most t*(r-1) vertices, and conversely t edges spanning at most
    t*(r-1) vertices contain a Berge cycle of length <= t.  A two-edge
    Berge cycle means two edges sharing at least two vertices.
    """
    if t_max < 2:
        raise BadRange(f"need t_max >= 2, got {t_max}")
    for i in range(2, t_max + 1):
        systems = span_bounded_systems(h.edges, h.masks, i, i * (h.r - 1), simple=not h.multi)
        if systems:
            cycle = extract_berge_cycle(h, systems[0])
            # scanning i upward means no shorter cycle exists anywhere
            assert cycle.length == i, "extraction found a shorter cycle than the scan"
            return cycle
    return None
