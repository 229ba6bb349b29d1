"""Right actions of an inverse monoid on a metric presheaf.

An action extends restriction (idempotents act as restriction to their
fiber), obeys the action law, moves fibers by conjugation, and never
increases fiber distances.  Properness and coboundedness are measured
from basepoints in the fiber of the identity idempotent.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import PreconditionError, ValidationError
from .presheaf import MetricPresheaf, cayley_presheaf
from .report import Violation


@dataclass(frozen=True, eq=False)
class EtaleAction:
    monoid: object
    presheaf: MetricPresheaf
    act: np.ndarray  # (num_points, order) point indices

    def __post_init__(self):
        m = self.presheaf.num_points
        n = self.monoid.order
        if self.act.shape != (m, n):
            raise ValidationError(
                f"act table has shape {self.act.shape}, expected {(m, n)}"
            )
        labels = self.presheaf.base.labels
        if labels is None or tuple(labels) != tuple(self.monoid.idempotents):
            raise ValidationError(
                "presheaf base is not the idempotent semilattice of the monoid"
            )

    @cached_property
    def base_of(self):
        """Map a monoid idempotent index to its local base index."""
        return {e: i for i, e in enumerate(self.monoid.idempotents)}

    @cached_property
    def identity_base(self):
        return self.base_of[self.monoid.identity]

    def identity_fiber(self):
        """Points of the fiber over the identity idempotent."""
        return self.presheaf.fiber(self.identity_base)

    def apply(self, x, s):
        return int(self.act[x, s])

    def orbit_row(self, x):
        return self.act[x, :]


def cayley_self_action(monoid, gens, config=None):
    """The monoid acting on its own Cayley presheaf by right multiplication."""
    p = cayley_presheaf(monoid, gens, config)
    return EtaleAction(monoid=monoid, presheaf=p, act=monoid.product)


def validate_action(a):
    """Exhaustive sweep of the four action axioms; empty list iff valid.

    Checks, in order: idempotents act as restriction, the action law
    (x.s).t = x.(st), fiber preservation p(x.s) = s^-1 p(x) s, and
    1-Lipschitz behaviour on every fiber.
    """
    out = []
    mon, p, act = a.monoid, a.presheaf, a.act
    n = mon.order
    idem = mon.idempotents
    for i, e in enumerate(idem):
        bad = np.flatnonzero(act[:, e] != p.restrict[:, i])
        for x in bad[:1]:
            out.append(
                Violation(
                    "extends-restriction",
                    (int(x), e),
                    "idempotent does not act as restriction",
                )
            )
    product = mon.product
    for s in range(n):
        lhs = act[act[:, s], :]
        rhs = act[:, product[s, :]]
        if not np.array_equal(lhs, rhs):
            x, t = np.argwhere(lhs != rhs)[0]
            out.append(
                Violation(
                    "action-law",
                    (int(x), s, int(t)),
                    "(x.s).t != x.(st)",
                )
            )
    base_of = a.base_of
    k = len(idem)
    conj = np.empty((k, n), dtype=np.int32)
    for i, e in enumerate(idem):
        conj[i, :] = [
            base_of[int(product[product[mon.inv(s), e], s])] for s in range(n)
        ]
    proj = p.proj
    for s in range(n):
        lhs = proj[act[:, s]]
        rhs = conj[proj, s]
        bad = np.flatnonzero(lhs != rhs)
        for x in bad[:1]:
            out.append(
                Violation(
                    "fiber-preservation",
                    (int(x), s),
                    "p(x.s) != s^-1 p(x) s",
                )
            )
    table = p.metric.table
    for i in range(k):
        pts = np.flatnonzero(proj == i)
        if pts.size < 2:
            continue
        sub = table[np.ix_(pts, pts)]
        for s in range(n):
            imgs = act[pts, s]
            res = table[np.ix_(imgs, imgs)]
            bad = np.argwhere(res > sub)
            for bi, bj in bad[:1]:
                out.append(
                    Violation(
                        "lipschitz",
                        (int(pts[bi]), int(pts[bj]), s),
                        "action increased a fiber distance",
                    )
                )
    return out


def check_theta_isometry(a, s):
    """Does right action by s give an isometry from X.ss^-1 onto X.s^-1 s?

    Compares extended distances (infinite values must agree) over the
    image of restriction by ran(s).  Returns (ok, witness).
    """
    p, act = a.presheaf, a.act
    ran_local = a.base_of[a.monoid.ran(s)]
    domain = np.unique(p.restrict[:, ran_local])
    images = act[domain, s]
    before = p.metric.table[np.ix_(domain, domain)]
    after = p.metric.table[np.ix_(images, images)]
    if np.array_equal(before, after):
        return True, None
    i, j = np.argwhere(before != after)[0]
    return False, (int(domain[i]), int(domain[j]), s)


def coboundedness_constant(a, x1):
    """Least T with B(x1, T) . S = X, or None if some point is unreachable."""
    p, act = a.presheaf, a.act
    if int(p.proj[x1]) != a.identity_base:
        raise PreconditionError(
            f"basepoint {x1} is not in the identity fiber", witness=(x1,)
        )
    row = p.metric.table[x1]
    best = np.full(p.num_points, math.inf)
    for b in np.flatnonzero(np.isfinite(row)):
        np.minimum.at(best, act[b, :], row[b])
    if np.any(np.isinf(best)):
        return None
    return int(best.max())


def _qualifying(a, y1, radius):
    """Elements s with d(y1.s, y1.dom s) <= radius (always a finite value)."""
    act = a.act
    dom = a.monoid.dom_table
    pts_s = act[y1, :]
    pts_d = act[y1, dom]
    dvals = a.presheaf.metric.table[pts_s, pts_d]
    cutoff = math.floor(Fraction(radius))
    return [int(s) for s in np.flatnonzero(dvals <= cutoff)]


def properness_witness(a, y1, radius):
    """A finite C whose idempotent cosets cover the radius-bounded elements.

    Qualifying elements are those moved at most ``radius`` away from their
    restriction to dom; they are covered greedily by translates f.E(S).
    The exact minimum cover is computed instead when at most 20 distinct
    candidate cosets intersect the qualifying set.
    """
    p = a.presheaf
    if int(p.proj[y1]) != a.identity_base:
        raise PreconditionError(
            f"basepoint {y1} is not in the identity fiber", witness=(y1,)
        )
    goal = set(_qualifying(a, y1, radius))
    mon = a.monoid
    cosets = mon.product[:, np.array(mon.idempotents, dtype=np.intp)]
    candidates = {}
    for f in range(mon.order):
        hit = frozenset(int(x) for x in cosets[f]) & frozenset(goal)
        if hit and (hit not in candidates.values()):
            candidates[f] = hit
    if len(candidates) <= 20:
        reps = sorted(candidates)
        for size in range(1, len(reps) + 1):
            for combo in combinations(reps, size):
                covered = set()
                for f in combo:
                    covered |= candidates[f]
                if covered >= goal:
                    return tuple(combo)
    chosen = []
    uncovered = set(goal)
    while uncovered:
        best_f, best_gain = None, -1
        for f, hit in candidates.items():
            gain = len(hit & uncovered)
            if gain > best_gain or (gain == best_gain and f < best_f):
                best_f, best_gain = f, gain
        chosen.append(best_f)
        uncovered -= candidates[best_f]
    return tuple(sorted(chosen))


def coset_cover_holds(monoid, cover, elements):
    """Check that every element lies in f.E(S) for some f in the cover."""
    idem = np.array(monoid.idempotents, dtype=np.intp)
    covered = set()
    for f in cover:
        covered.update(int(x) for x in monoid.product[f, idem])
    return all(s in covered for s in elements)
