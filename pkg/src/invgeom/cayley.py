"""Cayley graphs, Schützenberger components, and word metrics.

Edges are oriented (s, g s, g).  Within an L-class, edges come in inverse
pairs, so breadth-first search over a symmetric generating set computes
the path metric of each Schützenberger graph; across L-classes the metric
is infinite.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError, ValidationError
from .extmetric import INFINITE, ExtendedMetric, all_pairs_bfs
from .monoid import mulclose


@dataclass(frozen=True, eq=False)
class LabeledDigraph:
    num_vertices: int
    edges: tuple  # (source, target, label) triples, no duplicates

    def __post_init__(self):
        seen = set()
        for s, t, g in self.edges:
            if not (0 <= s < self.num_vertices and 0 <= t < self.num_vertices):
                raise ValidationError(f"edge ({s},{t},{g}) out of range")
            if (s, t, g) in seen:
                raise ValidationError(f"duplicate edge ({s},{t},{g})")
            seen.add((s, t, g))


@dataclass(frozen=True, eq=False)
class CayleyMetricTable:
    metric: ExtendedMetric
    generators: tuple    # symmetrized quasi-generating set
    components: tuple    # L-class partition realised by the metric


def symmetrize(monoid, gens):
    """Close a generating set under inversion; sorted for determinism."""
    out = set(int(g) for g in gens)
    out |= {monoid.inv(g) for g in list(out)}
    return tuple(sorted(out))


def is_quasi_generating(monoid, gens):
    """True iff gens together with all idempotents generate the monoid."""
    seeds = set(gens) | set(monoid.idempotents)
    return len(mulclose(monoid.product, seeds)) == monoid.order


def quasi_generation_witness(monoid, gens):
    """An element unreachable from gens and E(S), or None if none exists."""
    seeds = set(gens) | set(monoid.idempotents)
    reached = mulclose(monoid.product, seeds)
    missing = sorted(set(range(monoid.order)) - reached)
    return missing[0] if missing else None


def cayley_graph(monoid, gens):
    """Oriented edge (s, t, g) for every g in gens and s with g s = t."""
    edges = []
    for g in sorted(set(int(x) for x in gens)):
        row = monoid.product[g, :]
        edges.extend((s, int(row[s]), g) for s in range(monoid.order))
    return LabeledDigraph(monoid.order, tuple(edges))


def strongly_connected_components(num_vertices, adj):
    """Kosaraju's algorithm, iterative; returns a component id per vertex."""
    radj = [[] for _ in range(num_vertices)]
    for u in range(num_vertices):
        for v in adj[u]:
            radj[v].append(u)
    visited = [False] * num_vertices
    order = []
    for start in range(num_vertices):
        if visited[start]:
            continue
        visited[start] = True
        stack = [(start, iter(adj[start]))]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if not visited[nxt]:
                    visited[nxt] = True
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                order.append(node)
                stack.pop()
    comp = [-1] * num_vertices
    label = 0
    for node in reversed(order):
        if comp[node] != -1:
            continue
        comp[node] = label
        stack = [node]
        while stack:
            u = stack.pop()
            for v in radj[u]:
                if comp[v] == -1:
                    comp[v] = label
                    stack.append(v)
        label += 1
    return comp


def _partition_from_ids(ids):
    groups = {}
    for v, c in enumerate(ids):
        groups.setdefault(c, []).append(v)
    return set(frozenset(g) for g in groups.values())


def schutzenberger_components(monoid, gens):
    """Mutual-reachability classes of the Cayley graph over gens and E(S).

    The partition must coincide with the L-classes; a mismatch means
    gens with E(S) do not generate and raises ValidationError.
    """
    letters = sorted(set(gens) | set(monoid.idempotents))
    adj = [[] for _ in range(monoid.order)]
    for g in letters:
        row = monoid.product[g, :]
        for s in range(monoid.order):
            t = int(row[s])
            if t != s:
                adj[s].append(t)
    ids = strongly_connected_components(monoid.order, adj)
    found = _partition_from_ids(ids)
    expected = set(frozenset(c) for c in monoid.lclasses)
    if found != expected:
        bad = sorted(found - expected, key=min)[0]
        raise ValidationError(
            "reachability classes disagree with L-classes "
            "(generators plus idempotents do not generate)",
            witness=tuple(sorted(bad)),
        )
    return tuple(tuple(sorted(c)) for c in sorted(found, key=min))


def _class_adjacency(monoid, letters):
    """Within-L-class neighbours under left multiplication by letters."""
    dom = monoid.dom_table
    adj = [()] * monoid.order
    for s in range(monoid.order):
        seen = set()
        for g in letters:
            t = monoid.mul(g, s)
            if t != s and dom[t] == dom[s]:
                seen.add(t)
        adj[s] = tuple(sorted(seen))
    return adj


def cayley_metric(monoid, gens, config=None):
    """Path metric of the Schützenberger graphs over a quasi-generating set.

    The generating set is symmetrized first.  Distances across L-classes
    are infinite; the finite components are checked against the L-class
    partition.
    """
    sym = symmetrize(monoid, gens)
    witness = quasi_generation_witness(monoid, sym)
    if witness is not None:
        raise PreconditionError(
            f"not quasi-generating: element {witness} unreachable",
            witness=(witness,),
        )
    adj = _class_adjacency(monoid, sym)
    metric = all_pairs_bfs(monoid.order, lambda u: adj[u])
    found = set(frozenset(c) for c in metric.components())
    expected = set(frozenset(c) for c in monoid.lclasses)
    if found != expected:
        raise ValidationError("metric components disagree with L-classes")
    return CayleyMetricTable(
        metric=metric,
        generators=sym,
        components=tuple(tuple(sorted(c)) for c in sorted(found, key=min)),
    )


def word_distances(monoid, letters, source):
    """Minimum word lengths: dist[s] = min k with s = g_k ... g_1 * source.

    Independent of the per-L-class search: plain breadth-first search over
    left multiplication, with no component restriction.
    """
    dist = np.full(monoid.order, INFINITE, dtype=np.float64)
    dist[source] = 0.0
    frontier = [source]
    d = 0
    letters = sorted(set(letters))
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for g in letters:
                v = monoid.mul(g, u)
                if np.isinf(dist[v]):
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def bilipschitz_constants(monoid, gens_m, gens_n, config=None):
    """Extremal ratios between two Cayley metrics sharing their components.

    Returns (L1, L2) as Fractions with d_N <= L1 * d_M and d_M <= L2 * d_N
    on every finite pair; 0/0 on the diagonal counts as ratio 1.
    """
    tm = cayley_metric(monoid, gens_m, config)
    tn = cayley_metric(monoid, gens_n, config)
    if set(map(frozenset, tm.components)) != set(map(frozenset, tn.components)):
        raise ValidationError("metrics do not share the same components")
    dm, dn = tm.metric.table, tn.metric.table
    mask = np.isfinite(dm) & (dm > 0)
    if np.any(np.isfinite(dm) != np.isfinite(dn)):
        raise ValidationError("finiteness patterns differ")

    def extremal(num, den):
        if not np.any(mask):
            return Fraction(1)
        ratios = num[mask] / den[mask]
        flat = int(np.argmax(ratios))
        best = Fraction(int(num[mask][flat]), int(den[mask][flat]))
        return max(best, Fraction(1))

    l1 = extremal(dn, dm)
    l2 = extremal(dm, dn)
    if np.any(dn[mask] > np.float64(l1) * dm[mask]) or np.any(
        dm[mask] > np.float64(l2) * dn[mask]
    ):
        raise ValidationError("extremal ratio failed to bound the metrics")
    return l1, l2


def reduce_quasi_generators(monoid, gens):
    """Greedily drop generators while quasi-generation survives.

    Convenience only: the result is inclusion-reduced, not minimum-size.
    """
    current = list(symmetrize(monoid, gens))
    for g in sorted(current, reverse=True):
        if g not in current:
            continue
        trial = [x for x in current if x not in (g, monoid.inv(g))]
        if is_quasi_generating(monoid, trial):
            current = trial
    return tuple(sorted(current))
