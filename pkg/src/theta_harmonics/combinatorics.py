"""Integer parameters, rays of graded degrees, and the Lambda/lambda lattice boxes.

Conventions: cyclic indices are 0-based in code, so ``n[i - 1]`` with ``i = 0``
wraps to ``n[r - 1]`` (the paper's ``n_0 = n_r``).  Degrees and points are plain
tuples of ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidParameters

Point = tuple[int, ...]


def as_rank(r) -> int:
    r = int(r)
    if r < 2:
        raise InvalidParameters(f"rank r must be >= 2, got {r}")
    return r


def as_degree(n: Sequence[int], r: int | None = None) -> Point:
    """Validate a graded degree: r >= 2 non-negative integers."""
    n = tuple(int(x) for x in n)
    if r is not None and len(n) != r:
        raise InvalidParameters(f"degree {n} has length {len(n)}, expected r={r}")
    as_rank(len(n))
    if any(x < 0 for x in n):
        raise InvalidParameters(f"degree {n} has negative entries")
    return n


def n_min(n: Sequence[int]) -> int:
    return min(n)


@dataclass(frozen=True)
class KTypeLabel:
    """Label (z, s) of an irreducible K-representation F_{z,s}.

    ``z`` has r-1 integer entries (central part), ``s`` has r non-negative
    entries (one SL2 highest weight per block).
    """

    z: Point
    s: Point

    def __post_init__(self):
        z = tuple(int(x) for x in self.z)
        s = tuple(int(x) for x in self.s)
        as_rank(len(s))
        if len(z) != len(s) - 1:
            raise InvalidParameters(f"z must have r-1={len(s) - 1} entries, got {len(z)}")
        if any(x < 0 for x in s):
            raise InvalidParameters(f"s={s} has negative entries")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "s", s)

    @property
    def r(self) -> int:
        return len(self.s)

    @property
    def dimension(self) -> int:
        d = 1
        for x in self.s:
            d *= x + 1
        return d

    def __str__(self):
        return f"F[z={self.z}, s={self.s}]"


def is_valid_ktype(label: KTypeLabel) -> bool:
    """Parity gate on labels: sum(z) + sum(s) must be even."""
    return (sum(label.z) + sum(label.s)) % 2 == 0


def covering_kernel_trivial(label: KTypeLabel) -> bool:
    """Whether ker(phi) acts trivially, checked one generator at a time.

    The kernel of ``(C^x)^{r-1} x SL2^r -> K`` is generated by the elements with
    a single ``w_k = -1``; each acts on the irrep by ``(-1)^(z_k + s_k + s_r)``.
    For r = 2 this coincides with :func:`is_valid_ktype`; for larger r it is the
    finer condition satisfied by every label that actually occurs in some H_n.
    """
    s_last = label.s[-1]
    return all((zk + sk + s_last) % 2 == 0 for zk, sk in zip(label.z, label.s))


def central_param_of_degree(n: Sequence[int]) -> Point:
    """Central character z of Z(K) on P_n: z_i = n_i - n_{i-1} - n_r + n_{r-1}."""
    n = as_degree(n)
    r = len(n)
    return tuple(n[i] - n[i - 1] - n[r - 1] + n[r - 2] for i in range(r - 1))


@dataclass(frozen=True)
class RaySpec:
    """The ray b + N(1,...,1) of degrees on which Z(K) acts by z."""

    z: Point
    b: Point
    first_valid_t: int

    @property
    def r(self) -> int:
        return len(self.b)

    def point(self, t: int) -> Point | None:
        """b + t*1, or None when that point leaves N^r."""
        p = tuple(x + t for x in self.b)
        return p if min(p) >= 0 else None

    def contains(self, n: Sequence[int]) -> bool:
        n = tuple(n)
        if len(n) != self.r or min(n) < 0:
            return False
        diffs = {x - y for x, y in zip(n, self.b)}
        return len(diffs) == 1 and diffs.pop() >= 0

    def __iter__(self) -> Iterator[Point]:
        t = self.first_valid_t
        while True:
            yield tuple(x + t for x in self.b)
            t += 1

    def points(self, t_max: int) -> list[tuple[int, Point]]:
        """(t, b + t*1) for t = 0..t_max, skipping points outside N^r."""
        out = []
        for t in range(max(self.first_valid_t, 0), t_max + 1):
            out.append((t, tuple(x + t for x in self.b)))
        return out


def base_point(z: Sequence[int], r: int) -> RaySpec | None:
    """Base point of ray(z), or None when r does not divide sum(z)."""
    r = as_rank(r)
    z = tuple(int(x) for x in z)
    if len(z) != r - 1:
        raise InvalidParameters(f"z must have r-1={r - 1} entries, got {len(z)}")
    total = sum(z)
    if total % r:
        return None
    q = total // r
    b = []
    acc = 0
    for k in range(1, r):
        acc += z[k - 1]
        b.append(acc - k * q)
    b.append(0)
    b = tuple(b)
    return RaySpec(z=z, b=b, first_valid_t=max(0, -min(b)))


def ray_contains(ray: RaySpec, n: Sequence[int]) -> bool:
    return ray.contains(n)


def ray_iter(ray: RaySpec) -> Iterator[Point]:
    return iter(ray)


@dataclass(frozen=True)
class LatticeBox:
    """Product of descending step-2 progressions ``{top_i, top_i - 2, ..., bottom_i}``.

    ``kind`` is ``"Lambda"`` for the capital boxes of degrees and ``"lambda"``
    for the Clebsch-Gordan boxes.  Points of the box are only generated on
    request; shells are filtered by predicate.
    """

    tops: Point
    bottoms: Point
    kind: str = "Lambda"

    def __post_init__(self):
        if len(self.tops) != len(self.bottoms):
            raise InvalidParameters("tops and bottoms differ in length")
        for t, b in zip(self.tops, self.bottoms):
            if b < 0 or b > t or (t - b) % 2:
                raise InvalidParameters(f"bad axis: top={t}, bottom={b}")

    @property
    def r(self) -> int:
        return len(self.tops)

    @property
    def cardinality(self) -> int:
        c = 1
        for t, b in zip(self.tops, self.bottoms):
            c *= (t - b) // 2 + 1
        return c

    def axis_values(self, i: int) -> range:
        return range(self.tops[i], self.bottoms[i] - 1, -2)

    def __contains__(self, p) -> bool:
        p = tuple(p)
        if len(p) != self.r:
            return False
        return all(b <= x <= t and (t - x) % 2 == 0 for x, t, b in zip(p, self.tops, self.bottoms))

    def __iter__(self) -> Iterator[Point]:
        return itertools.product(*(self.axis_values(i) for i in range(self.r)))

    def inner(self) -> "LatticeBox | None":
        """The points p with p + 2 still in the box, or None when there are none."""
        tops = tuple(t - 2 for t in self.tops)
        if any(t < b for t, b in zip(tops, self.bottoms)):
            return None
        return LatticeBox(tops, self.bottoms, self.kind)

    def shell_contains(self, p) -> bool:
        p = tuple(p)
        return p in self and any(x == t for x, t in zip(p, self.tops))

    @property
    def shell_size(self) -> int:
        inner = self.inner()
        return self.cardinality - (inner.cardinality if inner else 0)

    def shell_iter(self) -> Iterator[Point]:
        """Shell points in lexicographically descending order, without scanning the box."""
        r = self.r
        tops, bottoms = self.tops, self.bottoms

        def rec(prefix, hit):
            i = len(prefix)
            if i == r - 1:
                if hit:
                    for v in range(tops[i], bottoms[i] - 1, -2):
                        yield prefix + (v,)
                else:
                    yield prefix + (tops[i],)
                return
            for v in range(tops[i], bottoms[i] - 1, -2):
                yield from rec(prefix + (v,), hit or v == tops[i])

        return rec((), False)

    def shell_array(self) -> np.ndarray:
        """Shell points as an (N, r) int64 array, same order as :meth:`shell_iter`."""
        blocks = []
        for k in range(self.r):
            # points whose first coordinate at its top is axis k
            axes = []
            for j in range(self.r):
                if j < k:
                    axes.append(np.arange(self.tops[j] - 2, self.bottoms[j] - 1, -2))
                elif j == k:
                    axes.append(np.array([self.tops[j]]))
                else:
                    axes.append(np.arange(self.tops[j], self.bottoms[j] - 1, -2))
            if any(a.size == 0 for a in axes):
                continue
            grid = np.meshgrid(*axes, indexing="ij")
            blocks.append(np.stack([g.ravel() for g in grid], axis=1))
        if not blocks:
            return np.zeros((0, self.r), dtype=np.int64)
        pts = np.concatenate(blocks).astype(np.int64)
        order = np.lexsort(tuple(-pts[:, j] for j in reversed(range(self.r))))
        return pts[order]


def lambda_box(n: Sequence[int]) -> LatticeBox:
    """Capital Lambda_n: axis i runs n_i, n_i - 2, ..., n_i mod 2."""
    n = as_degree(n)
    return LatticeBox(n, tuple(x % 2 for x in n), "Lambda")


def little_lambda_box(m: Sequence[int]) -> LatticeBox:
    """lambda_m: axis i runs m_{i-1} + m_i down to |m_{i-1} - m_i| in steps of 2."""
    m = as_degree(m)
    r = len(m)
    tops = tuple(m[i - 1] + m[i] for i in range(r))
    bottoms = tuple(abs(m[i - 1] - m[i]) for i in range(r))
    return LatticeBox(tops, bottoms, "lambda")


def shell_contains(box: LatticeBox, p) -> bool:
    return box.shell_contains(p)


def shell_iter(box: LatticeBox) -> Iterator[Point]:
    return box.shell_iter()
