"""The polyhedron M(s), the hypersurface S, and shell/surface intersection counts.

For ``s`` in N^r the 3r affine functionals are

    f_i(x) =  x_{i-1} + x_i - s_i
    g_i(x) =  x_{i-1} - x_i + s_i
    h_i(x) = -x_{i-1} + x_i + s_i

(cyclic, 0-based in code).  M is where all are >= 0 and S is the union of the
faces M ∩ {f_i = 0}.  Everything is exact: integers for membership, Fractions
for feasibility, projections and vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinatorics import Point, RaySpec, as_degree, lambda_box
from .errors import InvalidParameters, SizeCapExceeded

GEOMETRY_SCHEMA_VERSION = 1
DEFAULT_T_MAX_CAP = 10**4

_SIGNS = {"f": (1, 1, -1), "g": (1, -1, 1), "h": (-1, 1, 1)}


@dataclass(frozen=True)
class AffineFunctional:
    """``a * x_{i-1} + b * x_i + c * s_i`` with (a, b, c) fixed by ``kind``."""

    kind: str
    index: int
    r: int
    s_value: int

    def __post_init__(self):
        if self.kind not in _SIGNS:
            raise InvalidParameters(f"unknown functional kind {self.kind!r}")

    @property
    def name(self) -> str:
        return f"{self.kind}_{self.index + 1}"

    def linear_part(self) -> tuple[int, ...]:
        a, b, _ = _SIGNS[self.kind]
        coeffs = [0] * self.r
        coeffs[(self.index - 1) % self.r] += a
        coeffs[self.index] += b
        return tuple(coeffs)

    @property
    def constant(self) -> int:
        return _SIGNS[self.kind][2] * self.s_value

    def __call__(self, x: Sequence[int]) -> int:
        a, b, c = _SIGNS[self.kind]
        return a * x[self.index - 1] + b * x[self.index] + c * self.s_value


class FaceSystem:
    """The functionals f, g, h for a fixed s, with M and S as predicates."""

    def __init__(self, s: Sequence[int]):
        self.s: Point = as_degree(s)
        self.r = len(self.s)
        self.f = tuple(AffineFunctional("f", i, self.r, self.s[i]) for i in range(self.r))
        self.g = tuple(AffineFunctional("g", i, self.r, self.s[i]) for i in range(self.r))
        self.h = tuple(AffineFunctional("h", i, self.r, self.s[i]) for i in range(self.r))
        self._face_cache: dict[int, "_Face"] = {}

    @property
    def functionals(self) -> tuple[AffineFunctional, ...]:
        return self.f + self.g + self.h

    def __repr__(self):
        return f"FaceSystem(s={self.s})"

    def _check_point(self, x) -> tuple[int, ...]:
        x = tuple(x)
        if len(x) != self.r:
            raise InvalidParameters(f"point {x} has length {len(x)}, expected {self.r}")
        return x

    def in_polyhedron(self, x) -> bool:
        x = self._check_point(x)
        return all(phi(x) >= 0 for phi in self.functionals)

    def on_hypersurface(self, x) -> bool:
        x = self._check_point(x)
        return self.in_polyhedron(x) and any(phi(x) == 0 for phi in self.f)

    def on_hypersurface_many(self, pts: np.ndarray) -> np.ndarray:
        """Row-wise :meth:`on_hypersurface` for an (N, r) integer array."""
        pts = np.asarray(pts, dtype=np.int64)
        prev = np.roll(pts, 1, axis=1)
        s = np.asarray(self.s, dtype=np.int64)
        total = prev + pts
        diff = np.abs(prev - pts)
        inside = np.all((diff <= s) & (s <= total), axis=1)
        return inside & np.any(total == s, axis=1)

    # faces

    def face(self, i: int) -> "_Face":
        if not 0 <= i < self.r:
            raise InvalidParameters(f"face index {i} out of range 0..{self.r - 1}")
        if i not in self._face_cache:
            self._face_cache[i] = _Face(self, i)
        return self._face_cache[i]

    def face_constraints(self, i: int) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        """M ∩ {f_i = 0} as a list of ``a . x + c >= 0`` rows (the equality as two rows)."""
        rows = [(tuple(Fraction(a) for a in phi.linear_part()), Fraction(phi.constant)) for phi in self.functionals]
        fi = self.f[i]
        rows.append((tuple(Fraction(-a) for a in fi.linear_part()), Fraction(-fi.constant)))
        return rows

    def surface_coordinate_bound(self) -> int:
        """Largest integer that any coordinate of a point of S can take (-1 if S is empty)."""
        best = -1
        for i in range(self.r):
            fc = self.face(i)
            if not fc.empty:
                best = max(best, max(int(hi.__floor__()) for _, hi in fc.bounds))
        return best


Row = tuple[tuple[Fraction, ...], Fraction]


def _normalize(row: Row) -> Row:
    a, c = row
    scale = max((abs(x) for x in a), default=Fraction(0))
    if scale == 0:
        scale = abs(c) if c != 0 else Fraction(1)
    return tuple(x / scale for x in a), c / scale


def fourier_motzkin(rows: list[Row], eliminate: Sequence[int]) -> list[Row]:
    """Project ``{x : a . x + c >= 0 for all rows}`` by eliminating the given variables."""
    current = {_normalize(r) for r in rows}
    for j in eliminate:
        pos, neg, rest = [], [], []
        for a, c in current:
            (pos if a[j] > 0 else neg if a[j] < 0 else rest).append((a, c))
        new = set(rest)
        for ap, cp in pos:
            for an, cn in neg:
                wp, wn = -an[j], ap[j]
                a = tuple(wp * x + wn * y for x, y in zip(ap, an))
                new.add(_normalize((a, wp * cp + wn * cn)))
        current = new
    return sorted(current)


def _infeasible(rows: list[Row]) -> bool:
    return any(all(x == 0 for x in a) and c < 0 for a, c in rows)


class _Face:
    """Exact data of one face M ∩ {f_i = 0}: emptiness, coordinate ranges, vertices."""

    def __init__(self, fs: FaceSystem, i: int):
        self.index = i
        r = fs.r
        rows = fs.face_constraints(i)
        self.empty = _infeasible(fourier_motzkin(rows, range(r)))
        self.bounds: list[tuple[Fraction | None, Fraction | None]] = []
        self.bounded = True
        if not self.empty:
            for k in range(r):
                proj = fourier_motzkin(rows, [j for j in range(r) if j != k])
                lo = [-c / a[k] for a, c in proj if a[k] > 0]
                hi = [-c / a[k] for a, c in proj if a[k] < 0]
                interval = (max(lo) if lo else None, min(hi) if hi else None)
                if None in interval:
                    self.bounded = False
                self.bounds.append(interval)
        self._rows = rows
        self._r = r
        self._vertices: list[tuple[Fraction, ...]] | None = None

    @property
    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Vertices by exhaustive choice of r-1 tight rows besides f_i = 0."""
        if self._vertices is None:
            self._vertices = _enumerate_vertices(self._rows, self._r)
        return self._vertices


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> tuple[Fraction, ...] | None:
    """Unique solution of a square system by Gauss-Jordan over Fractions, else None."""
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((k for k in range(col, n) if m[k][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for k in range(n):
            if k != col and m[k][col] != 0:
                f = m[k][col]
                m[k] = [x - f * y for x, y in zip(m[k], m[col])]
    return tuple(m[k][n] for k in range(n))


def _enumerate_vertices(rows: list[Row], r: int) -> list[tuple[Fraction, ...]]:
    # rows[-1] is -f_i >= 0 and rows[i] is f_i >= 0; the pinned equality is rows[-1]
    pinned = rows[-1]
    others = rows[:-1]
    found = set()
    for combo in itertools.combinations(range(len(others)), r - 1):
        system = [pinned] + [others[k] for k in combo]
        sol = _solve([list(a) for a, _ in system], [-c for _, c in system])
        if sol is None:
            continue
        if all(sum(x * y for x, y in zip(a, sol)) + c >= 0 for a, c in rows):
            found.add(sol)
    return sorted(found)


def face_is_empty(fs: FaceSystem, i: int) -> bool:
    """Whether M ∩ {f_i = 0} has no real point (0-based i)."""
    return fs.face(i).empty


def in_polyhedron(fs: FaceSystem, x) -> bool:
    return fs.in_polyhedron(x)


def on_hypersurface(fs: FaceSystem, x) -> bool:
    return fs.on_hypersurface(x)


def count_shell_surface_intersections(fs: FaceSystem, n: Sequence[int]) -> int:
    """#{m in Shell(Lambda_n) : m on S}."""
    n = as_degree(n, fs.r)
    pts = lambda_box(n).shell_array()
    return int(np.count_nonzero(fs.on_hypersurface_many(pts)))


def export_geometry(
    fs: FaceSystem,
    ray: RaySpec | None = None,
    t_max: int = 0,
    cap: int = DEFAULT_T_MAX_CAP,
) -> dict:
    """Plain-data description of M, S and (optionally) shells along a ray.

    Faces are reported 1-based.  Vertices are exact rationals as strings.
    """
    if t_max < 0:
        raise InvalidParameters("t_max must be >= 0")
    if t_max > cap:
        raise SizeCapExceeded("t_max", t_max, cap)
    if ray is not None and ray.r != fs.r:
        raise InvalidParameters(f"ray has r={ray.r} but s has r={fs.r}")
    functionals = [
        {"name": phi.name, "kind": phi.kind, "index": phi.index + 1,
         "linear": list(phi.linear_part()), "constant": phi.constant}
        for phi in fs.functionals
    ]
    faces = []
    for i in range(fs.r):
        face = fs.face(i)
        faces.append({
            "index": i + 1,
            "empty": face.empty,
            "bounded": face.bounded,
            "vertices": [[str(x) for x in v] for v in face.vertices] if face.bounded else [],
        })
    doc = {
        "schema_version": GEOMETRY_SCHEMA_VERSION,
        "r": fs.r,
        "s": list(fs.s),
        "functionals": functionals,
        "faces": faces,
        "shells": [],
    }
    if ray is not None:
        doc["z"] = list(ray.z)
        for t, n in ray.points(t_max):
            pts = [
                {"coords": list(m), "on_surface": fs.on_hypersurface(m)}
                for m in lambda_box(n).shell_iter()
            ]
            doc["shells"].append({"t": t, "n": list(n), "points": pts})
    return doc
