"""Measurable control sets in one and two dimensions.

One-dimensional sets share a small protocol: ``clip(a, b)`` returns the
intersection with ``[a, b]`` as a finite :class:`IntervalSet`, and
``contains(x)`` tests membership with half-open ``[lo, hi)`` convention.
Unbounded sets (half-lines, periodic patterns, the whole line) are generators
that only materialize intervals on demand.

Planar regions implement ``contains(x, y)``, ``box_measure(R1, R2)`` and
``segment_preimage(p0, u, length)``, the last returning the parameters
``t in [0, length]`` for which ``p0 + t*u`` lies in the region.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "Set1D", "IntervalSet", "RealLine", "HalfLine", "Periodic", "normalize",
    "clip_measure", "DensityTrace", "density_trace", "thickness",
    "Product", "Cone", "Rotated", "Indicator", "Plane",
    "box_measure_2d", "disk_measure_2d", "IteratedDensity",
    "iterated_density", "segment_measure", "LineThickness",
    "line_thickness_2d", "region_from_json",
]


# ---------------------------------------------------------------------------
# one dimension


def normalize(raw):
    """Sort and merge a list of ``(lo, hi)`` pairs into an :class:`IntervalSet`.

    Overlapping and touching intervals are merged.

    >>> normalize([(0, 1), (0.5, 2)]).intervals
    ((0.0, 2.0),)
    """
    pairs = []
    for lo, hi in raw:
        lo, hi = float(lo), float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"non-finite endpoint in ({lo}, {hi})")
        if not lo < hi:
            raise ValueError(f"empty or reversed interval ({lo}, {hi})")
        pairs.append((lo, hi))
    pairs.sort()
    merged: list[list[float]] = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return IntervalSet._trusted(tuple((lo, hi) for lo, hi in merged))


def _flat(x0, slope, t0, t1) -> bool:
    """True when ``x0 + slope*t`` cannot be told apart from ``x0`` over ``[t0, t1]``."""
    sweep = abs(slope) * max(abs(t0), abs(t1))
    return sweep <= 4 * np.finfo(float).eps * max(abs(x0), 1.0)


class Set1D:
    """Mixin for one-dimensional sets."""

    def clip(self, a: float, b: float) -> "IntervalSet":
        raise NotImplementedError

    def contains(self, x):
        raise NotImplementedError

    def measure_in(self, a: float, b: float) -> float:
        return clip_measure(self, a, b)

    def affine_preimage(self, x0: float, slope: float, t0: float, t1: float) -> "IntervalSet":
        """Parameters ``t in [t0, t1]`` with ``x0 + slope*t`` in the set."""
        if _flat(x0, slope, t0, t1):
            return IntervalSet._trusted(((t0, t1),)) if bool(self.contains(x0)) else IntervalSet.empty()
        xa, xb = sorted((x0 + slope * t0, x0 + slope * t1))
        return self.clip(xa, xb).affine_preimage(x0, slope, t0, t1)


@dataclass(frozen=True)
class IntervalSet(Set1D):
    """Finite union of disjoint bounded intervals, kept in normalized form."""

    intervals: tuple = ()

    def __post_init__(self):
        norm = normalize(self.intervals).intervals if self.intervals else ()
        object.__setattr__(self, "intervals", norm)

    @classmethod
    def _trusted(cls, intervals):
        obj = object.__new__(cls)
        object.__setattr__(obj, "intervals", intervals)
        return obj

    @classmethod
    def empty(cls):
        return cls._trusted(())

    @property
    def measure(self) -> float:
        return math.fsum(hi - lo for lo, hi in self.intervals)

    @property
    def endpoints(self) -> np.ndarray:
        return np.array([e for pair in self.intervals for e in pair], dtype=float)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def clip(self, a, b):
        if a >= b:
            return IntervalSet.empty()
        out = []
        for lo, hi in self.intervals:
            lo2, hi2 = max(lo, a), min(hi, b)
            if lo2 < hi2:
                out.append((lo2, hi2))
        return IntervalSet._trusted(tuple(out))

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        if not self.intervals:
            return np.zeros(x.shape, dtype=bool)
        lo = np.array([p[0] for p in self.intervals])
        hi = np.array([p[1] for p in self.intervals])
        idx = np.searchsorted(lo, x, side="right") - 1
        ok = idx >= 0
        idx = np.clip(idx, 0, None)
        return ok & (x < hi[idx])

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return normalize(list(self.intervals) + list(other.intervals))

    def shift(self, dx: float) -> "IntervalSet":
        return IntervalSet._trusted(tuple((lo + dx, hi + dx) for lo, hi in self.intervals))

    def affine_preimage(self, x0: float, slope: float, t0: float, t1: float) -> "IntervalSet":
        """Parameters ``t in [t0, t1]`` with ``x0 + slope*t`` in the set."""
        if _flat(x0, slope, t0, t1):
            return IntervalSet._trusted(((t0, t1),)) if bool(self.contains(x0)) else IntervalSet.empty()
        xa, xb = sorted((x0 + slope * t0, x0 + slope * t1))
        out = []
        for lo, hi in self.clip(xa, xb):
            ta, tb = sorted(((lo - x0) / slope, (hi - x0) / slope))
            ta, tb = max(ta, t0), min(tb, t1)
            if ta < tb:
                out.append((ta, tb))
        return normalize(out) if out else IntervalSet.empty()

    def to_json(self):
        return {"type": "intervals", "items": [[lo, hi] for lo, hi in self.intervals]}


@dataclass(frozen=True)
class RealLine(Set1D):
    """The whole real line."""

    def clip(self, a, b):
        return IntervalSet._trusted(((float(a), float(b)),)) if a < b else IntervalSet.empty()

    def contains(self, x):
        return np.ones(np.shape(x), dtype=bool)

    def affine_preimage(self, x0, slope, t0, t1):
        return IntervalSet._trusted(((t0, t1),))

    def to_json(self):
        return {"type": "real"}


@dataclass(frozen=True)
class HalfLine(Set1D):
    """``[start, +inf)`` when ``direction = +1``, ``(-inf, start)`` when ``-1``."""

    start: float = 0.0
    direction: int = 1

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        if not math.isfinite(self.start):
            raise ValueError("start must be finite")

    def _as_interval(self, a, b):
        if self.direction == 1:
            return max(a, self.start), b
        return a, min(b, self.start)

    def clip(self, a, b):
        lo, hi = self._as_interval(a, b)
        return IntervalSet._trusted(((float(lo), float(hi)),)) if lo < hi else IntervalSet.empty()

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        return x >= self.start if self.direction == 1 else x < self.start

    def to_json(self):
        out = {"type": "halfline", "from": self.start}
        if self.direction == -1:
            out["direction"] = -1
        return out


@dataclass(frozen=True)
class Periodic(Set1D):
    """Union over integers k of ``[on[0] + k*period, on[1] + k*period)``."""

    period: float
    on: tuple = (0.0, 0.5)

    def __post_init__(self):
        lo, hi = map(float, self.on)
        if not self.period > 0:
            raise ValueError("period must be positive")
        if not (lo < hi and hi - lo <= self.period):
            raise ValueError("need on[0] < on[1] <= on[0] + period")
        object.__setattr__(self, "on", (lo, hi))

    def clip(self, a, b):
        if a >= b:
            return IntervalSet.empty()
        lo, hi = self.on
        p = self.period
        k0 = math.floor((a - hi) / p)
        k1 = math.ceil((b - lo) / p)
        out = []
        for k in range(k0, k1 + 1):
            l2, h2 = max(lo + k * p, a), min(hi + k * p, b)
            if l2 < h2:
                out.append((l2, h2))
        return normalize(out) if out else IntervalSet.empty()

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        r = np.mod(x - self.on[0], self.period)
        return r < (self.on[1] - self.on[0])

    def to_json(self):
        return {"type": "periodic", "period": self.period, "on": list(self.on)}


def clip_measure(S, a: float, b: float) -> float:
    """Exact Lebesgue measure of ``S ∩ [a, b]``."""
    if a > b:
        raise ValueError("need a <= b")
    return S.clip(a, b).measure


@dataclass(frozen=True)
class DensityTrace:
    radii: np.ndarray
    ratios: np.ndarray
    running_inf: np.ndarray

    @property
    def liminf_estimate(self) -> float:
        """Finite-radius surrogate for the liminf; not a true limit."""
        return float(self.running_inf[-1])


def density_trace(S, radii: Sequence[float]) -> DensityTrace:
    """Ratios ``|S ∩ [-R, R]| / 2R`` over increasing radii, plus running minima."""
    radii = np.asarray(radii, dtype=float)
    if radii.size == 0:
        raise ValueError("empty radii list")
    if np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise ValueError("radii must be positive and increasing")
    ratios = np.array([clip_measure(S, -R, R) / (2 * R) for R in radii])
    return DensityTrace(radii, ratios, np.minimum.accumulate(ratios))


def thickness(S, L: float, window) -> float:
    """Minimum of ``|S ∩ [x, x+L]| / L`` over ``x in [a, b-L]``.

    The sliding measure is piecewise linear in ``x`` with kinks where either
    window edge crosses an endpoint of ``S``, so the minimum is attained on a
    finite candidate set.
    """
    a, b = map(float, window)
    if not L > 0:
        raise ValueError("L must be positive")
    if b - a < L:
        raise ValueError("window shorter than L")
    pieces = S.clip(a, b)
    ends = pieces.endpoints
    cand = np.concatenate([[a, b - L], ends, ends - L])
    cand = cand[(cand >= a) & (cand <= b - L)]
    return min(pieces.measure_in(x, x + L) for x in np.unique(cand)) / L


# ---------------------------------------------------------------------------
# two dimensions


def _half_plane_preimage(p0, u, length, normal, offset=0.0):
    """Parameters t in [0, length] with ``normal . (p0 + t u) >= offset``."""
    a = normal[0] * p0[0] + normal[1] * p0[1] - offset
    b = normal[0] * u[0] + normal[1] * u[1]
    if b == 0.0:
        return (0.0, length) if a >= 0 else None
    t = -a / b
    lo, hi = (max(0.0, t), length) if b > 0 else (0.0, min(length, t))
    return (lo, hi) if lo < hi else None


def _clip_convex(poly, normal, offset):
    """Sutherland-Hodgman clip of a convex polygon to ``normal . p >= offset``."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = normal[0] * p[0] + normal[1] * p[1] - offset
        fq = normal[0] * q[0] + normal[1] * q[1] - offset
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0):
            s = fp / (fp - fq)
            out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    return out


def _polygon_area(poly):
    if len(poly) < 3:
        return 0.0
    xs = np.array([p[0] for p in poly])
    ys = np.array([p[1] for p in poly])
    return 0.5 * abs(float(np.dot(xs, np.roll(ys, -1)) - np.dot(ys, np.roll(xs, -1))))


def _box(R1, R2):
    return [(-R1, -R2), (R1, -R2), (R1, R2), (-R1, R2)]


def _rot(p, angle):
    c, s = math.cos(angle), math.sin(angle)
    return (c * p[0] - s * p[1], s * p[0] + c * p[1])


class _Region:
    """Common behaviour of planar regions."""

    exact = True

    def contains(self, x, y):
        raise NotImplementedError

    def box_measure(self, R1, R2):
        raise NotImplementedError

    def segment_preimage(self, p0, u, length) -> IntervalSet:
        raise NotImplementedError

    def _convex_pieces(self, radius):
        """Convex polygons covering ``self ∩ disk(radius)`` up to a null set, or None."""
        return None

    def sector(self):
        """``(center_angle, half_aperture)`` when the region is a sector, else None."""
        return None


@dataclass(frozen=True)
class Product(_Region):
    """Cartesian product ``x_set × y_set`` of two one-dimensional sets."""

    x: Set1D
    y: Set1D

    def contains(self, x, y):
        return self.x.contains(x) & self.y.contains(y)

    def box_measure(self, R1, R2):
        return clip_measure(self.x, -R1, R1) * clip_measure(self.y, -R2, R2)

    def segment_preimage(self, p0, u, length):
        tx = self.x.affine_preimage(p0[0], u[0], 0.0, length)
        ty = self.y.affine_preimage(p0[1], u[1], 0.0, length)
        return _intersect(tx, ty)

    def _convex_pieces(self, radius):
        xs, ys = self.x.clip(-radius, radius), self.y.clip(-radius, radius)
        return [[(a, c), (b, c), (b, d), (a, d)] for a, b in xs for c, d in ys]

    def to_json(self):
        return {"type": "product", "x": self.x.to_json(), "y": self.y.to_json()}


def Plane() -> Product:
    """The whole plane as a product region."""
    return Product(RealLine(), RealLine())


@dataclass(frozen=True)
class Cone(_Region):
    """``{(r cos θ, r sin θ) : r >= 0, |θ| <= π/2 - delta}``."""

    delta: float

    def __post_init__(self):
        if not 0 < self.delta <= math.pi / 2:
            raise ValueError("delta must lie in (0, pi/2]")

    @property
    def half_aperture(self):
        return math.pi / 2 - self.delta

    def sector(self):
        return (0.0, self.half_aperture)

    def contains(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        return (np.abs(np.arctan2(y, x)) <= self.half_aperture) | ((x == 0) & (y == 0))

    def _normals(self):
        a = self.half_aperture
        # edges through the origin at angles ±a; interior on the side containing +x axis
        return [(math.sin(a), math.cos(a)), (math.sin(a), -math.cos(a))]

    def box_measure(self, R1, R2):
        if self.delta == math.pi / 2:
            return 0.0
        k = math.tan(self.half_aperture)
        if k * R1 <= R2:
            return k * R1 * R1
        return 2 * R1 * R2 - R2 * R2 / k

    def segment_preimage(self, p0, u, length):
        lo, hi = 0.0, length
        for nrm in self._normals():
            piece = _half_plane_preimage(p0, u, length, nrm)
            if piece is None:
                return IntervalSet.empty()
            lo, hi = max(lo, piece[0]), min(hi, piece[1])
        return IntervalSet._trusted(((lo, hi),)) if lo < hi else IntervalSet.empty()

    def _convex_pieces(self, radius):
        # sector of aperture < π clipped to a square of half side ``radius``
        poly = _box(radius, radius)
        for nrm in self._normals():
            poly = _clip_convex(poly, nrm, 0.0)
        return [poly]

    def to_json(self):
        return {"type": "cone", "delta": self.delta}


@dataclass(frozen=True)
class Rotated(_Region):
    """Image of ``inner`` under the counter-clockwise rotation by ``angle``."""

    angle: float
    inner: _Region

    def contains(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        c, s = math.cos(self.angle), math.sin(self.angle)
        return self.inner.contains(c * x + s * y, -s * x + c * y)

    def sector(self):
        sec = self.inner.sector()
        return None if sec is None else (sec[0] + self.angle, sec[1])

    @property
    def exact(self):
        return self.inner._convex_pieces(1.0) is not None

    def _convex_pieces(self, radius):
        pieces = self.inner._convex_pieces(radius * math.sqrt(2))
        if pieces is None:
            return None
        return [[_rot(p, self.angle) for p in poly] for poly in pieces]

    def box_measure(self, R1, R2):
        pieces = self._convex_pieces(math.hypot(R1, R2))
        if pieces is None:
            return _raster_box_measure(self, R1, R2)
        total = 0.0
        clips = [((1.0, 0.0), -R1), ((-1.0, 0.0), -R1), ((0.0, 1.0), -R2), ((0.0, -1.0), -R2)]
        for poly in pieces:
            for nrm, off in clips:
                poly = _clip_convex(poly, nrm, off)
                if not poly:
                    break
            total += _polygon_area(poly)
        return total

    def segment_preimage(self, p0, u, length):
        return self.inner.segment_preimage(_rot(p0, -self.angle), _rot(u, -self.angle), length)

    def to_json(self):
        return {"type": "rotate", "angle": self.angle, "of": self.inner.to_json()}


@dataclass(frozen=True)
class Indicator(_Region):
    """Boolean raster on ``[x0, x1) × [y0, y1)``; row index is y, column index is x."""

    grid: np.ndarray = field(repr=False)
    extent: tuple = (-1.0, 1.0, -1.0, 1.0)

    exact = False

    def __post_init__(self):
        g = np.array(self.grid, dtype=bool)
        g.setflags(write=False)
        object.__setattr__(self, "grid", g)

    def _cells(self):
        x0, x1, y0, y1 = self.extent
        ny, nx = self.grid.shape
        return x0, y0, (x1 - x0) / nx, (y1 - y0) / ny

    def contains(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        x0, y0, hx, hy = self._cells()
        ny, nx = self.grid.shape
        i = np.floor((y - y0) / hy).astype(int)
        j = np.floor((x - x0) / hx).astype(int)
        inside = (i >= 0) & (i < ny) & (j >= 0) & (j < nx)
        out = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        out[inside] = self.grid[i[inside], j[inside]]
        return out

    def box_measure(self, R1, R2):
        # exact cell-area overlap with the box
        x0, y0, hx, hy = self._cells()
        ny, nx = self.grid.shape
        xs = x0 + hx * np.arange(nx + 1)
        ys = y0 + hy * np.arange(ny + 1)
        wx = np.clip(np.minimum(xs[1:], R1) - np.maximum(xs[:-1], -R1), 0, None)
        wy = np.clip(np.minimum(ys[1:], R2) - np.maximum(ys[:-1], -R2), 0, None)
        return float(wy @ self.grid.astype(float) @ wx)

    def segment_preimage(self, p0, u, length, samples=4096):
        t = (np.arange(samples) + 0.5) * (length / samples)
        inside = self.contains(p0[0] + t * u[0], p0[1] + t * u[1])
        return _mask_to_intervals(inside, length / samples)


def _mask_to_intervals(mask, h):
    edges = np.flatnonzero(np.diff(np.concatenate([[0], mask.astype(int), [0]])))
    return normalize([(a * h, b * h) for a, b in zip(edges[::2], edges[1::2])]) if edges.size else IntervalSet.empty()


def _intersect(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    out = []
    for lo, hi in A:
        out.extend(B.clip(lo, hi).intervals)
    return normalize(out) if out else IntervalSet.empty()


def _raster_box_measure(P, R1, R2, n=2048):
    hx, hy = 2 * R1 / n, 2 * R2 / n
    xs = -R1 + hx * (np.arange(n) + 0.5)
    total = 0
    for row in range(0, n, 256):
        ys = -R2 + hy * (np.arange(row, min(row + 256, n)) + 0.5)
        X, Y = np.meshgrid(xs, ys)
        total += int(np.count_nonzero(P.contains(X, Y)))
    return total * hx * hy


def box_measure_2d(P, R1: float, R2: float) -> float:
    """``|P ∩ [-R1, R1] × [-R2, R2]|``.

    Exact (polygon clipping) for product, cone and rotations of those; cell
    overlap for indicators; midpoint raster on a 2048² grid otherwise.
    """
    if not (R1 > 0 and R2 > 0):
        raise ValueError("R1, R2 must be positive")
    return float(P.box_measure(R1, R2))


def disk_measure_2d(P, R: float, n: int = 2048) -> float:
    """Raster estimate of ``|P ∩ disk(0, R)|`` with midpoint counting on an n×n grid."""
    h = 2 * R / n
    xs = -R + h * (np.arange(n) + 0.5)
    total = 0
    for row in range(0, n, 256):
        ys = xs[row:row + 256]
        X, Y = np.meshgrid(xs, ys)
        total += int(np.count_nonzero(P.contains(X, Y) & (X * X + Y * Y < R * R)))
    return total * h * h


@dataclass(frozen=True)
class IteratedDensity:
    r1: np.ndarray
    r2: np.ndarray
    ratios: np.ndarray          # ratios[i, j] at (r1[i], r2[j])
    inner_running_inf: np.ndarray
    outer_running_inf: np.ndarray

    @property
    def estimate(self) -> float:
        return float(self.outer_running_inf[-1])


def iterated_density(P, r1, r2) -> IteratedDensity:
    """Box-density matrix and the iterated running infimum (inner over R2, then R1)."""
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    if r1.size == 0 or r2.size == 0:
        raise ValueError("empty radius grid")
    for r in (r1, r2):
        if np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise ValueError("radius grids must be positive and increasing")
    ratios = np.array([[box_measure_2d(P, a, b) / (4 * a * b) for b in r2] for a in r1])
    inner = np.minimum.accumulate(ratios, axis=1)
    outer = np.minimum.accumulate(inner[:, -1])
    return IteratedDensity(r1, r2, ratios, inner, outer)


def segment_measure(P, point, angle: float, L: float) -> float:
    """Length of ``P`` along the segment starting at ``point`` with direction ``angle``."""
    u = (math.cos(angle), math.sin(angle))
    return P.segment_preimage((float(point[0]), float(point[1])), u, float(L)).measure


@dataclass(frozen=True)
class LineThickness:
    gamma_hat: float
    worst_point: tuple
    worst_angle: float
    box: float
    seed: int
    n_lines: int


def line_thickness_2d(P, L: float, n_lines: int, seed: int = 0, box: float = 50.0) -> LineThickness:
    """Monte Carlo upper estimate of the one-dimensional thickness constant.

    Segment start points are uniform in ``[-box, box]²`` and directions
    uniform in ``[0, π)``. The minimum observed ratio can only overestimate
    the infimum over all segments.
    """
    if not L > 0:
        raise ValueError("L must be positive")
    if n_lines < 1:
        raise ValueError("n_lines must be >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-box, box, size=(n_lines, 2))
    angles = rng.uniform(0.0, math.pi, size=n_lines)
    best = (math.inf, None, None)
    for p, th in zip(pts, angles):
        r = segment_measure(P, p, th, L) / L
        if r < best[0]:
            best = (r, (float(p[0]), float(p[1])), float(th))
    return LineThickness(best[0], best[1], best[2], box, seed, n_lines)


# ---------------------------------------------------------------------------
# JSON


def region_from_json(obj):
    """Build a set or region from its JSON description.

    Accepted ``type`` values: ``intervals``, ``periodic``, ``halfline``,
    ``real``, ``cone``, ``product`` and ``rotate``.
    """
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("region must be an object with a 'type' key")
    kind = obj["type"]
    if kind == "intervals":
        return IntervalSet([tuple(p) for p in obj["items"]]) if obj["items"] else IntervalSet.empty()
    if kind == "periodic":
        return Periodic(float(obj["period"]), tuple(obj["on"]))
    if kind == "halfline":
        return HalfLine(float(obj["from"]), int(obj.get("direction", 1)))
    if kind == "real":
        return RealLine()
    if kind == "cone":
        return Cone(float(obj["delta"]))
    if kind == "product":
        x, y = region_from_json(obj["x"]), region_from_json(obj["y"])
        if not (isinstance(x, Set1D) and isinstance(y, Set1D)):
            raise ValueError("product factors must be one-dimensional")
        return Product(x, y)
    if kind == "rotate":
        inner = region_from_json(obj["of"])
        if isinstance(inner, Set1D):
            raise ValueError("only planar regions can be rotated")
        return Rotated(float(obj["angle"]), inner)
    raise ValueError(f"unknown region type {kind!r}")
