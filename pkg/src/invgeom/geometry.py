"""Orbit-map quasi-isometries, Rips graphs, and metric predicates.

Given a validated proper and cobounded action, a finite quasi-generating
set is extracted by chaining orbit representatives along fiber paths, and
the orbit map from the resulting word metric is certified to be an
order-preserving quasi-isometry with explicit constants.  The Rips graph
construction produces a second metric of the same quasi-isometry type.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .action import coboundedness_constant
from .cayley import cayley_metric, symmetrize
from .config import SweepConfig
from .errors import PreconditionError, TheoremViolationError
from .extmetric import INFINITE, ExtendedMetric, all_pairs_bfs
from .monoid import mulclose, natural_leq_matrix
from .report import CheckResult, Violation

QI_LADDER = tuple(Fraction(k, 4) for k in range(4, 65))


@dataclass(frozen=True)
class QiReport:
    mult: Fraction                 # multiplicative constant L >= 1
    add: Fraction                  # additive constant C >= 0
    coarse_radius: object          # int, or math.inf if not coarsely onto
    components_match: bool
    order_preserving: bool | None = None

    def bounds_hold(self, mapped, da, db):
        """Check (1/L) d - C <= d' <= L d + C on every finite pair, exactly."""
        mask = np.isfinite(da)
        a = da[mask].astype(np.int64)
        b = db[np.ix_(mapped, mapped)][mask].astype(np.int64)
        for x, y in zip(a.tolist(), b.tolist()):
            if not (Fraction(x) / self.mult - self.add <= y <= self.mult * x + self.add):
                return False
        return True


@dataclass(frozen=True)
class GenerationCertificate:
    """One element's factorization along a fiber path.

    ``path_points`` runs from x1.dom(s) to x1.s through the fiber graph;
    ``representatives`` are the orbit representatives chosen within the
    coboundedness radius of each path point (the last is s itself); and
    ``factors`` are the telescoping products u_i = s_i s_{i-1}^-1 whose
    product recovers the element.
    """

    element: int
    path_points: tuple
    representatives: tuple
    factors: tuple

    def chain_products(self, monoid):
        """Running products v_i = u_i ... u_1 dom(s); v_k is the element.

        Every v_i shares dom(s)'s L-class, so each factor labels an edge
        of the element's own Schützenberger graph.
        """
        v = monoid.dom(self.element)
        out = [v]
        for u in self.factors:
            v = monoid.mul(u, v)
            out.append(v)
        return tuple(out)


@dataclass(frozen=True, eq=False)
class GeneratorExtraction:
    generators: tuple       # sorted; every d(x1.s, x1.dom s) <= 2T+1
    certificates: tuple     # one per monoid element
    basepoint: int
    cobound: int            # T
    threshold: int          # 2T+1


@dataclass(frozen=True, eq=False)
class RipsGraph:
    radius: Fraction
    adjacency: tuple        # per element, sorted neighbour tuple
    metric: ExtendedMetric

    @property
    def order(self):
        return len(self.adjacency)

    def edges(self):
        for s, nbrs in enumerate(self.adjacency):
            for t in nbrs:
                if s < t:
                    yield s, t


@dataclass(frozen=True, eq=False)
class MetricPredicateReport:
    components: CheckResult
    uniform_discreteness: CheckResult
    right_subinvariance: CheckResult
    properness: CheckResult
    uniform_properness: CheckResult

    @property
    def checks(self):
        return (
            self.components,
            self.uniform_discreteness,
            self.right_subinvariance,
            self.properness,
            self.uniform_properness,
        )

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)


@dataclass(frozen=True, eq=False)
class QuasiGenerationCertificate:
    generators: tuple        # F1
    factorizations: dict     # element -> tuple of F1 letters, last applied first


def extract_generators(a, x1, t):
    """Generators within orbit displacement 2T+1, with factorizations.

    Requires a T-cobounded validated action and a basepoint in the
    identity fiber.  For every element, a fiber path from x1.dom(s) to
    x1.s is chopped into unit steps, each step point gets the minimal
    orbit representative within distance T, and the telescoping factors
    land in the generating set.  The closure of the result must be the
    whole monoid; anything else raises TheoremViolationError.
    """
    mon, p, act = a.monoid, a.presheaf, a.act
    cb = coboundedness_constant(a, x1)
    if cb is None or cb > t:
        raise PreconditionError(
            f"action is not {t}-cobounded from basepoint {x1} (constant: {cb})"
        )
    threshold = 2 * t + 1
    table = p.metric.table
    orbit = act[x1, :]
    dom = mon.dom_table
    displacement = table[orbit, orbit[dom]]
    gens = tuple(int(s) for s in np.flatnonzero(displacement <= threshold))
    gen_set = frozenset(gens)
    certs = []
    for s in range(mon.order):
        start = int(orbit[dom[s]])
        end = int(orbit[s])
        path = p.shortest_path(start, end)
        if path is None:
            raise TheoremViolationError(
                f"orbit points of {s} and dom({s}) lie in different fibers"
            )
        if len(path) > displacement[s] + 2:
            raise TheoremViolationError(
                f"fiber path for {s} longer than distance + 2"
            )
        reps = []
        for i, pt in enumerate(path):
            if i == len(path) - 1:
                reps.append(int(s))
                continue
            close = np.flatnonzero(table[pt, orbit] <= t)
            if close.size == 0:
                raise TheoremViolationError(
                    f"no orbit representative within {t} of point {pt}"
                )
            reps.append(int(close[0]))
        factors = [reps[0]]
        for i in range(1, len(reps)):
            factors.append(mon.mul(reps[i], mon.inv(reps[i - 1])))
        acc = factors[0]
        for u in factors[1:]:
            acc = mon.mul(u, acc)
        if acc != s:
            raise TheoremViolationError(
                f"factor product for {s} gives {acc}", witness=(s, tuple(factors))
            )
        stray = [u for u in factors if u not in gen_set]
        if stray:
            raise TheoremViolationError(
                f"factor {stray[0]} of {s} fell outside the generating set",
                witness=(s, stray[0]),
            )
        certs.append(
            GenerationCertificate(
                element=s,
                path_points=tuple(path),
                representatives=tuple(reps),
                factors=tuple(factors),
            )
        )
    if mulclose(mon.product, gen_set) != frozenset(range(mon.order)):
        raise TheoremViolationError("extracted set does not generate")
    return GeneratorExtraction(
        generators=gens,
        certificates=tuple(certs),
        basepoint=int(x1),
        cobound=int(cb),
        threshold=threshold,
    )


def qi_constants(mapped, da, db):
    """Best (L, C) on a quarter-step ladder for a map between metrics.

    ``mapped`` sends carrier indices of ``da`` into ``db``.  Finiteness
    must correspond exactly in both directions.  For each ladder L the
    exact residual C(L) is the worst affine violation over finite pairs;
    the report carries the smallest L attaining the minimal residual,
    plus the exact coarse-surjectivity radius into ``db``.
    """
    mapped = np.asarray(mapped, dtype=np.intp)
    a = da.table
    b = db.table[np.ix_(mapped, mapped)]
    fin_a = np.isfinite(a)
    if not np.array_equal(fin_a, np.isfinite(b)):
        x, y = np.argwhere(fin_a != np.isfinite(b))[0]
        raise PreconditionError(
            "map does not preserve finiteness of distances",
            witness=(int(x), int(y)),
        )
    av = a[fin_a]
    bv = b[fin_a]
    best = None
    for lad in QI_LADDER:
        p, q = lad.numerator, lad.denominator
        over = np.max(q * bv - p * av) if av.size else 0.0
        under = np.max(q * av - p * bv) if av.size else 0.0
        residual = max(Fraction(int(over), q), Fraction(int(under), p), Fraction(0))
        if best is None or residual < best[1]:
            best = (lad, residual)
    reach = db.table[mapped, :]
    nearest = reach.min(axis=0)
    radius = INFINITE if np.any(np.isinf(nearest)) else int(nearest.max())
    return QiReport(
        mult=best[0],
        add=best[1],
        coarse_radius=radius,
        components_match=True,
        order_preserving=None,
    )


def orbit_map_qi(a, x1, gens, config=None):
    """QiReport for s -> x1.s from the word metric into the presheaf.

    Finite distances must correspond to shared fibers exactly (a failure
    raises TheoremViolationError), and the order-preserving flag records
    whether the natural partial order maps into the presheaf order.
    """
    mon, p = a.monoid, a.presheaf
    cm = cayley_metric(mon, gens, config)
    orbit = np.asarray(a.act[x1, :], dtype=np.intp)
    fin_w = np.isfinite(cm.metric.table)
    fin_x = np.isfinite(p.metric.table[np.ix_(orbit, orbit)])
    if not np.array_equal(fin_w, fin_x):
        s, t = np.argwhere(fin_w != fin_x)[0]
        raise TheoremViolationError(
            "finite word distance does not match finite orbit distance",
            witness=(int(s), int(t)),
        )
    base = qi_constants(orbit, cm.metric, p.metric)
    leq = natural_leq_matrix(mon)
    ordered = True
    for s, t in np.argwhere(leq):
        if not p.leq(int(orbit[s]), int(orbit[t])):
            ordered = False
            break
    return QiReport(
        mult=base.mult,
        add=base.add,
        coarse_radius=base.coarse_radius,
        components_match=True,
        order_preserving=ordered,
    )


def orbit_inequalities(a, x1, gens, config=None):
    """Two-sided bounds tying word length to orbit displacement.

    For every element: the word distance from dom(s) to s is at most the
    orbit displacement plus 2, and the displacement is at most the word
    length times the largest displacement among that word's own letters.
    Returns the list of violations (empty when both bounds hold).
    """
    mon, p = a.monoid, a.presheaf
    cm = cayley_metric(mon, gens, config)
    sym = cm.generators
    orbit = a.act[x1, :]
    table = p.metric.table
    dom = mon.dom_table
    disp = table[orbit, orbit[dom]]
    word = cm.metric.table[np.arange(mon.order), dom]
    paths = _word_paths(mon, sym)
    out = []
    for s in range(mon.order):
        if word[s] > disp[s] + 2:
            out.append(
                Violation(
                    "word-vs-displacement",
                    (s,),
                    f"word distance {word[s]} exceeds displacement {disp[s]} + 2",
                )
            )
        letters = paths(int(dom[s]), s)
        if letters is None:
            out.append(
                Violation("word-vs-displacement", (s,), "no word reaches s")
            )
            continue
        if len(letters) != word[s]:
            raise TheoremViolationError(
                "recovered word length disagrees with the metric", witness=(s,)
            )
        worst = max((float(disp[m]) for m in letters), default=0.0)
        if disp[s] > len(letters) * worst:
            out.append(
                Violation(
                    "displacement-vs-word",
                    (s,),
                    f"displacement {disp[s]} exceeds {len(letters)} * {worst}",
                )
            )
    return out


def factorization_step_bounds(a, x1, gens, samples=200, seed=0, config=None):
    """Per-step domination along sampled factorizations s = t_n ... t_1 dom(s).

    Each sampled chain follows a shortest word in the symmetrized
    generators, with every letter optionally dressed by an idempotent
    that fixes the running product; each step's orbit movement must be
    bounded by the letter's own displacement.  Returns violations.
    """
    mon, p = a.monoid, a.presheaf
    cm = cayley_metric(mon, gens, config)
    sym = cm.generators
    table = p.metric.table
    orbit = a.act[x1, :]
    dom = mon.dom_table
    adj_letters = _word_paths(mon, sym)
    rng = np.random.default_rng(seed)
    idem = mon.idempotents
    out = []
    order = rng.permutation(mon.order)[: min(samples, mon.order)]
    for s in order:
        s = int(s)
        letters = adj_letters(int(dom[s]), s)
        if letters is None:
            continue
        v = int(dom[s])
        for m in letters:
            ran_v = mon.ran(v)
            fixing = [e for e in idem if mon.mul(e, ran_v) == ran_v]
            e = fixing[rng.integers(0, len(fixing))]
            step = mon.mul(m, e)
            nxt = mon.mul(step, v)
            if nxt != mon.mul(m, v):
                raise TheoremViolationError(
                    "idempotent dressing changed the chain", witness=(s, m, e)
                )
            moved = table[orbit[nxt], orbit[v]]
            allowance = table[orbit[step], orbit[dom[step]]]
            if moved > allowance:
                out.append(
                    Violation(
                        "chain-step",
                        (s, int(m), int(e)),
                        f"step moved {moved}, letter allows {allowance}",
                    )
                )
            v = nxt
        if v != s:
            raise TheoremViolationError(
                "letter chain did not reach its element", witness=(s,)
            )
    return out


def _word_paths(monoid, letters):
    """Letter sequences realising shortest words within each L-class."""
    dom = monoid.dom_table

    def path(source, target):
        if dom[source] != dom[target]:
            return None
        parent = {source: None}
        frontier = [source]
        while frontier and target not in parent:
            nxt = []
            for u in frontier:
                for g in letters:
                    v = monoid.mul(g, u)
                    if dom[v] == dom[u] and v not in parent:
                        parent[v] = (u, g)
                        nxt.append(v)
            frontier = nxt
        if target not in parent:
            return None
        seq = []
        node = target
        while parent[node] is not None:
            prev, g = parent[node]
            seq.append(g)
            node = prev
        return seq[::-1]

    return path


def rips_graph(a, x1, radius):
    """Vertices are elements; s ~ t iff their orbit points are within radius.

    Self-loops are excluded; the path metric gives every edge length 1.
    Radius comparisons are exact (integer distances against a rational
    threshold).
    """
    p = a.presheaf
    if int(p.proj[x1]) != a.identity_base:
        raise PreconditionError(
            f"basepoint {x1} is not in the identity fiber", witness=(x1,)
        )
    radius = Fraction(radius)
    if radius < 0:
        raise PreconditionError(f"radius must be non-negative, got {radius}")
    cutoff = math.floor(radius)
    orbit = np.asarray(a.act[x1, :], dtype=np.intp)
    n = a.monoid.order
    close = a.presheaf.metric.table[np.ix_(orbit, orbit)] <= cutoff
    np.fill_diagonal(close, False)
    adjacency = tuple(
        tuple(int(t) for t in np.flatnonzero(close[s])) for s in range(n)
    )
    metric = all_pairs_bfs(n, lambda u: adjacency[u])
    return RipsGraph(radius=radius, adjacency=adjacency, metric=metric)


def rips_embedding_bounds(a, x1, rips):
    """Affine bounds between the Rips metric and orbit distances.

    For every finite pair: d_R(s,t) <= d(x1.s, x1.t)/R + 1 and
    d(x1.s, x1.t) <= R * d_R(s,t), both checked with exact rationals.
    Returns the list of violations.
    """
    r = rips.radius
    if r <= 0:
        raise PreconditionError("bounds need a positive radius")
    orbit = np.asarray(a.act[x1, :], dtype=np.intp)
    fiber_d = a.presheaf.metric.table[np.ix_(orbit, orbit)]
    rips_d = rips.metric.table
    out = []
    for s, t in np.argwhere(np.isfinite(fiber_d)):
        s, t = int(s), int(t)
        dxy = int(fiber_d[s, t])
        dr = rips_d[s, t]
        if math.isinf(dr):
            out.append(
                Violation(
                    "rips-finite",
                    (s, t),
                    "orbit distance finite but Rips distance infinite",
                )
            )
            continue
        dr = int(dr)
        if Fraction(dr) > Fraction(dxy) / r + 1:
            out.append(
                Violation(
                    "rips-upper", (s, t), f"d_R={dr} > {dxy}/{r} + 1"
                )
            )
        if Fraction(dxy) > r * dr:
            out.append(
                Violation(
                    "rips-lipschitz", (s, t), f"d={dxy} > {r} * {dr}"
                )
            )
    return out


def _solve_left_factor(monoid, x, y):
    """Some f with y = f x, preferring y x^-1; None if no solution exists."""
    f = monoid.mul(y, monoid.inv(x))
    if monoid.mul(f, x) == y:
        return f
    col = monoid.product[:, x]
    sols = np.flatnonzero(col == y)
    return int(sols[0]) if sols.size else None


def _word_depths(monoid, letters, source, limit):
    """Minimum length of a word over ``letters`` mapping source to each element."""
    depths = {source: 0}
    frontier = [source]
    d = 0
    while frontier and d < limit:
        d += 1
        nxt = []
        for u in frontier:
            for f in letters:
                v = monoid.mul(f, u)
                if v not in depths:
                    depths[v] = d
                    nxt.append(v)
        frontier = nxt
    return depths


def validate_metric_predicates(monoid, metric, f1=None, config=None):
    """Report on the four structural predicates of an extended metric on S.

    Components must be the L-classes; distinct points must be uniformly
    separated; right multiplication must not increase distances (exhaustive
    up to the triple cap, seeded sampling above); every radius must admit
    a finite set of left factors; and a single finite set F1 must witness
    all radii through its powers.  ``f1`` overrides the derived witness.
    """
    config = config or SweepConfig()
    n = monoid.order
    t = metric.table
    fin = np.isfinite(t)
    dom = monoid.dom_table
    same_l = dom[:, None] == dom[None, :]
    if np.array_equal(fin, same_l):
        components = CheckResult("components-are-L-classes", True)
    else:
        x, y = np.argwhere(fin != same_l)[0]
        components = CheckResult(
            "components-are-L-classes", False, witness=(int(x), int(y))
        )
    off = t[~np.eye(n, dtype=bool)]
    finite_off = off[np.isfinite(off)]
    gap = float(finite_off.min()) if finite_off.size else None
    uniform_discreteness = CheckResult(
        "uniformly-discrete",
        gap is None or gap > 0,
        data={"separation": gap},
    )
    right_subinvariance = _check_right_subinvariance(monoid, metric, config)
    pair_factor = {}
    properness_fail = None
    for x, y in np.argwhere(fin):
        x, y = int(x), int(y)
        if x == y:
            continue
        f = _solve_left_factor(monoid, x, y)
        if f is None:
            properness_fail = (x, y)
            break
        pair_factor[(x, y)] = f
    if properness_fail:
        properness = CheckResult(
            "proper", False, witness=properness_fail
        )
    else:
        rmax = metric.max_finite()
        sizes = {}
        for r in range(rmax + 1):
            sizes[r] = len(
                {f for (x, y), f in pair_factor.items() if t[x, y] <= r}
            )
        properness = CheckResult("proper", True, data={"factor_counts": sizes})
    if f1 is None:
        f1 = tuple(
            sorted({f for (x, y), f in pair_factor.items() if t[x, y] <= 1})
        )
    else:
        f1 = tuple(sorted(set(int(f) for f in f1)))
    uniform_properness = _check_uniform_properness(monoid, metric, f1)
    return MetricPredicateReport(
        components=components,
        uniform_discreteness=uniform_discreteness,
        right_subinvariance=right_subinvariance,
        properness=properness,
        uniform_properness=uniform_properness,
    )


def _check_right_subinvariance(monoid, metric, config):
    n = monoid.order
    t = metric.table
    product = monoid.product
    if n <= config.triple_exhaustive_cap:
        for x in range(n):
            moved = product[:, x]
            shifted = t[np.ix_(moved, moved)]
            bad = np.argwhere(shifted > t)
            for s, u in bad[:1]:
                return CheckResult(
                    "right-subinvariant",
                    False,
                    witness=(int(s), int(u), x),
                )
        return CheckResult("right-subinvariant", True)
    rng = np.random.default_rng(config.seed)
    s, u, x = rng.integers(0, n, size=(3, config.triple_samples))
    lhs = t[product[s, x], product[u, x]]
    bad = np.flatnonzero(lhs > t[s, u])
    if bad.size:
        b = bad[0]
        return CheckResult(
            "right-subinvariant",
            False,
            witness=(int(s[b]), int(u[b]), int(x[b])),
            data={"sampled": True},
        )
    return CheckResult("right-subinvariant", True, data={"sampled": True})


def _check_uniform_properness(monoid, metric, f1):
    t = metric.table
    fin = np.isfinite(t)
    limit = metric.max_finite()
    for x in range(monoid.order):
        targets = np.flatnonzero(fin[x])
        depths = _word_depths(monoid, f1, x, limit)
        for y in targets:
            y = int(y)
            if y == x:
                continue
            need = math.ceil(t[x, y])
            if depths.get(y, math.inf) > need:
                return CheckResult(
                    "uniformly-proper",
                    False,
                    witness=(x, y),
                    data={"f1": f1},
                )
    return CheckResult("uniformly-proper", True, data={"f1": f1})


def quasi_generators_from_metric(monoid, metric, f1=None, config=None):
    """Recover a quasi-generating set from a uniformly proper metric.

    Every non-idempotent s is factored as a word of at most ceil(d(s, dom s))
    letters of F1 applied to dom(s); the closure of F1 with the idempotents
    must be the whole monoid.  Failures raise TheoremViolationError.
    """
    report = validate_metric_predicates(monoid, metric, f1=f1, config=config)
    if not report.uniform_properness.passed:
        raise PreconditionError(
            "metric is not uniformly proper with the given witness",
            witness=report.uniform_properness.witness,
        )
    letters = report.uniform_properness.data["f1"]
    t = metric.table
    factorizations = {}
    for s in range(monoid.order):
        if monoid.is_idempotent(s):
            continue
        d = t[s, monoid.dom(s)]
        if math.isinf(d):
            raise PreconditionError(
                f"element {s} is infinitely far from its dom", witness=(s,)
            )
        word = _word_to(monoid, letters, monoid.dom(s), s, math.ceil(d))
        if word is None:
            raise TheoremViolationError(
                f"no factorization of {s} within {math.ceil(d)} letters",
                witness=(s,),
            )
        factorizations[s] = tuple(word)
    closure = mulclose(
        monoid.product, set(letters) | set(monoid.idempotents)
    )
    if closure != frozenset(range(monoid.order)):
        missing = sorted(set(range(monoid.order)) - closure)[0]
        raise TheoremViolationError(
            "witness set does not quasi-generate", witness=(missing,)
        )
    return QuasiGenerationCertificate(
        generators=tuple(letters), factorizations=factorizations
    )


def _word_to(monoid, letters, source, target, limit):
    """A shortest word over letters sending source to target, if within limit."""
    if source == target:
        return []
    parent = {source: None}
    frontier = [source]
    d = 0
    while frontier and d < limit:
        d += 1
        nxt = []
        for u in frontier:
            for g in letters:
                v = monoid.mul(g, u)
                if v not in parent:
                    parent[v] = (u, g)
                    nxt.append(v)
                    if v == target:
                        seq = []
                        node = v
                        while parent[node] is not None:
                            prev, letter = parent[node]
                            seq.append(letter)
                            node = prev
                        return seq[::-1]
        frontier = nxt
    return None
