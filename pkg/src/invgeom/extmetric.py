"""Symmetric distance tables over a finite carrier, with an infinite sentinel.

Distances live in a float64 table where ``math.inf`` marks pairs in
different components.  Finite values are integers (unit-edge graph
distances), which float64 represents exactly, so comparisons never hit
rounding.  Threshold comparisons against fractional radii are done with
``fractions.Fraction`` by callers.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

INFINITE = math.inf


@dataclass(frozen=True, eq=False)
class ExtendedMetric:
    table: np.ndarray  # (m, m) float64, inf off-component

    @property
    def size(self):
        return int(self.table.shape[0])

    def dist(self, x, y):
        """Distance as an int, or math.inf across components."""
        v = self.table[x, y]
        return INFINITE if math.isinf(v) else int(v)

    def isfinite(self, x, y):
        return not math.isinf(self.table[x, y])

    @property
    def finite_mask(self):
        return np.isfinite(self.table)

    def max_finite(self):
        vals = self.table[self.finite_mask]
        return int(vals.max()) if vals.size else 0

    def components(self):
        """Finite-distance classes, each a tuple of indices."""
        m = self.size
        seen = np.zeros(m, dtype=bool)
        comps = []
        for x in range(m):
            if seen[x]:
                continue
            cls = np.flatnonzero(self.finite_mask[x])
            seen[cls] = True
            comps.append(tuple(int(i) for i in cls))
        return tuple(comps)

    def validate(self, triangle_cap=250, samples=100_000, seed=0):
        """Check symmetry, the zero diagonal, and the triangle inequality.

        The triangle sweep is exhaustive up to ``triangle_cap`` points and
        seeded sampling above.  Raises ValidationError with a witness.
        """
        t = self.table
        m = self.size
        if t.shape != (m, m):
            raise ValidationError(f"table is not square: {t.shape}")
        if np.any(t < 0):
            x, y = np.argwhere(t < 0)[0]
            raise ValidationError("negative distance", witness=(int(x), int(y)))
        if not np.array_equal(t, t.T):
            x, y = np.argwhere(t != t.T)[0]
            raise ValidationError("not symmetric", witness=(int(x), int(y)))
        diag = np.diag(t)
        if np.any(diag != 0):
            x = int(np.argwhere(diag != 0)[0][0])
            raise ValidationError("nonzero diagonal", witness=(x,))
        off = t + np.diag([INFINITE] * m)
        if np.any(off == 0):
            x, y = np.argwhere(off == 0)[0]
            raise ValidationError(
                "distinct points at distance 0", witness=(int(x), int(y))
            )
        if m <= triangle_cap:
            for x in range(m):
                # d(y,z) <= d(y,x) + d(x,z); inf arithmetic is safe here
                bound = t[:, x][:, None] + t[x, :][None, :]
                if np.any(t > bound):
                    y, z = np.argwhere(t > bound)[0]
                    raise ValidationError(
                        "triangle inequality fails", witness=(int(y), int(x), int(z))
                    )
        else:
            rng = np.random.default_rng(seed)
            x, y, z = rng.integers(0, m, size=(3, samples))
            bad = np.flatnonzero(t[y, z] > t[y, x] + t[x, z])
            if bad.size:
                b = bad[0]
                raise ValidationError(
                    "triangle inequality fails",
                    witness=(int(y[b]), int(x[b]), int(z[b])),
                )
        return self


def metric_from_int_table(table):
    """Wrap an integer table using -1 as the infinite marker."""
    arr = np.asarray(table, dtype=np.float64)
    arr[arr < 0] = INFINITE
    arr.setflags(write=False)
    return ExtendedMetric(arr)


def all_pairs_bfs(num_vertices, neighbors):
    """Unit-edge shortest paths from every vertex; inf across components.

    ``neighbors`` maps a vertex to an iterable of adjacent vertices.
    """
    dist = np.full((num_vertices, num_vertices), INFINITE, dtype=np.float64)
    for src in range(num_vertices):
        row = dist[src]
        row[src] = 0.0
        frontier = [src]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in neighbors(u):
                    if math.isinf(row[v]):
                        row[v] = d
                        nxt.append(v)
            frontier = nxt
    dist.setflags(write=False)
    return ExtendedMetric(dist)
