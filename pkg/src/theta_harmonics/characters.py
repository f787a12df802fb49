"""Exact character ring of the torus of SL2^r and the characters of P_n and H_n.

A :class:`LaurentPoly` in ``u_1..u_r`` is stored densely over the bounding box
of its support.  Arithmetic is exact: int64 arrays are used only while an a
priori bound on every coefficient stays below 2**62, otherwise the array holds
Python ints.
"""

from __future__ import annotations

import functools
import itertools
import types
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .combinatorics import Point, as_degree, lambda_box, little_lambda_box
from .errors import InvalidParameters, NotACharacter

_INT64_SAFE = float(2**61)


def _l1(arr: np.ndarray) -> float:
    if arr.dtype == object:
        return float(sum(abs(int(x)) for x in arr.flat))
    return float(np.abs(arr.astype(np.float64)).sum())


def _pick_dtype(bound: float, *arrays):
    if bound >= _INT64_SAFE or any(a.dtype == object for a in arrays):
        return object
    return np.int64


class LaurentPoly:
    """Laurent polynomial with integer coefficients in ``nvars`` torus variables."""

    __slots__ = ("nvars", "offset", "coeffs")

    def __init__(self, coeffs: np.ndarray, offset: Sequence[int]):
        coeffs = np.asarray(coeffs)
        if coeffs.dtype != object and coeffs.dtype != np.int64:
            coeffs = coeffs.astype(np.int64)
        if coeffs.ndim != len(offset):
            raise InvalidParameters("offset length must match array rank")
        self.nvars = coeffs.ndim
        self.offset, self.coeffs = _trim(coeffs, tuple(int(o) for o in offset))

    # construction

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(np.zeros((0,) * nvars, dtype=np.int64), (0,) * nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.monomial((0,) * nvars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coef: int = 1) -> "LaurentPoly":
        exponent = tuple(exponent)
        arr = np.full((1,) * len(exponent), coef, dtype=object if abs(coef) >= 2**62 else np.int64)
        return cls(arr, exponent)

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], int], nvars: int) -> "LaurentPoly":
        terms = {tuple(e): int(c) for e, c in terms.items() if c}
        if not terms:
            return cls.zero(nvars)
        lo = tuple(min(e[k] for e in terms) for k in range(nvars))
        hi = tuple(max(e[k] for e in terms) for k in range(nvars))
        big = any(abs(c) >= 2**62 for c in terms.values())
        arr = np.zeros(tuple(h - l + 1 for l, h in zip(lo, hi)), dtype=object if big else np.int64)
        for e, c in terms.items():
            arr[tuple(x - l for x, l in zip(e, lo))] = c
        return cls(arr, lo)

    # inspection

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def terms(self) -> dict[Point, int]:
        out = {}
        for idx in zip(*np.nonzero(self.coeffs)):
            out[tuple(int(i) + o for i, o in zip(idx, self.offset))] = int(self.coeffs[idx])
        return out

    def sorted_terms(self) -> list[tuple[Point, int]]:
        """Terms in canonical order: exponent vectors lexicographically descending."""
        return sorted(self.terms().items(), reverse=True)

    def coefficient(self, exponent: Sequence[int]) -> int:
        idx = tuple(e - o for e, o in zip(exponent, self.offset))
        if self.is_zero() or any(i < 0 or i >= s for i, s in zip(idx, self.coeffs.shape)):
            return 0
        return int(self.coeffs[idx])

    def evaluate(self, values: Sequence) -> object:
        """Exact evaluation at a point (ints or Fractions); u=1 gives the dimension."""
        total = 0
        for e, c in self.terms().items():
            term = c
            for v, k in zip(values, e):
                term *= v**k
            total += term
        return total

    def dimension(self) -> int:
        if self.is_zero():
            return 0
        if self.coeffs.dtype == object:
            return int(sum(int(x) for x in self.coeffs.flat))
        return int(self.coeffs.sum(dtype=object)) if _l1(self.coeffs) >= _INT64_SAFE else int(self.coeffs.sum())

    def invert_axis(self, axis: int) -> "LaurentPoly":
        """Substitute u_axis -> u_axis^{-1}."""
        if self.is_zero():
            return self
        offset = list(self.offset)
        offset[axis] = -(self.offset[axis] + self.coeffs.shape[axis] - 1)
        return LaurentPoly(np.flip(self.coeffs, axis=axis).copy(), offset)

    def is_self_dual(self) -> bool:
        return all(self.invert_axis(k) == self for k in range(self.nvars))

    # arithmetic

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise InvalidParameters(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        return None

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.monomial((0,) * self.nvars, other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return _combine(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.monomial((0,) * self.nvars, other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return _combine(self, other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            other = int(other)
            if other == 0 or self.is_zero():
                return LaurentPoly.zero(self.nvars)
            bound = _l1(self.coeffs) * abs(other)
            dtype = _pick_dtype(bound, self.coeffs)
            return LaurentPoly(self.coeffs.astype(dtype) * other, self.offset)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return _multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentPoly.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.offset == other.offset
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms().items()))))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)


def _trim(arr: np.ndarray, offset: Point):
    if arr.size == 0 or not np.any(arr != 0):
        return (0,) * arr.ndim, np.zeros((0,) * arr.ndim, dtype=np.int64)
    nz = arr != 0
    slices = []
    new_offset = []
    for k in range(arr.ndim):
        other = tuple(j for j in range(arr.ndim) if j != k)
        hit = np.flatnonzero(nz.any(axis=other) if other else nz)
        slices.append(slice(hit[0], hit[-1] + 1))
        new_offset.append(offset[k] + int(hit[0]))
    return tuple(new_offset), arr[tuple(slices)]


def _combine(a: LaurentPoly, b: LaurentPoly, sign: int) -> LaurentPoly:
    if b.is_zero():
        return a
    if a.is_zero():
        return b * sign
    lo = tuple(min(x, y) for x, y in zip(a.offset, b.offset))
    hi = tuple(
        max(oa + sa, ob + sb)
        for oa, sa, ob, sb in zip(a.offset, a.coeffs.shape, b.offset, b.coeffs.shape)
    )
    dtype = _pick_dtype(_l1(a.coeffs) + _l1(b.coeffs), a.coeffs, b.coeffs)
    out = np.zeros(tuple(h - l for l, h in zip(lo, hi)), dtype=dtype)
    out[_window(a, lo)] += a.coeffs
    if sign > 0:
        out[_window(b, lo)] += b.coeffs
    else:
        out[_window(b, lo)] -= b.coeffs
    return LaurentPoly(out, lo)


def _window(p: LaurentPoly, lo: Point):
    return tuple(slice(o - l, o - l + s) for o, l, s in zip(p.offset, lo, p.coeffs.shape))


def _multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_zero() or b.is_zero():
        return LaurentPoly.zero(a.nvars)
    if np.count_nonzero(a.coeffs) > np.count_nonzero(b.coeffs):
        a, b = b, a
    dtype = _pick_dtype(_l1(a.coeffs) * _l1(b.coeffs), a.coeffs, b.coeffs)
    shape = tuple(sa + sb - 1 for sa, sb in zip(a.coeffs.shape, b.coeffs.shape))
    out = np.zeros(shape, dtype=dtype)
    big = b.coeffs.astype(dtype)
    for idx in zip(*np.nonzero(a.coeffs)):
        c = a.coeffs[idx]
        window = tuple(slice(i, i + s) for i, s in zip(idx, big.shape))
        out[window] += big * (int(c) if dtype == object else c)
    return LaurentPoly(out, tuple(x + y for x, y in zip(a.offset, b.offset)))


def format_laurent(p: LaurentPoly) -> str:
    """Human-readable form, terms in descending lexicographic exponent order."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            f"u{k + 1}" if x == 1 else f"u{k + 1}^{x}" for k, x in enumerate(e) if x != 0
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# SL2 characters


def chi_sl2(s: int, axis: int = 0, nvars: int | None = None) -> LaurentPoly:
    """chi_s(u_axis) = u^s + u^(s-2) + ... + u^(-s), with 0-based ``axis``."""
    if s < 0:
        raise InvalidParameters(f"SL2 highest weight must be >= 0, got {s}")
    nvars = axis + 1 if nvars is None else nvars
    if not 0 <= axis < nvars:
        raise InvalidParameters(f"axis {axis} out of range for {nvars} variables")
    shape = [1] * nvars
    shape[axis] = 2 * s + 1
    arr = np.zeros(shape, dtype=np.int64)
    arr.reshape(-1)[::2] = 1
    offset = [0] * nvars
    offset[axis] = -s
    return LaurentPoly(arr, offset)


def chi_product(p: Sequence[int]) -> LaurentPoly:
    """chi_p = chi_{p_1}(u_1) ... chi_{p_r}(u_r)."""
    r = len(p)
    out = LaurentPoly.one(r)
    for k, x in enumerate(p):
        out = out * chi_sl2(x, k, r)
    return out


def clebsch_gordan(a: int, b: int) -> list[int]:
    """Highest weights in chi_a * chi_b: a+b, a+b-2, ..., |a-b|."""
    if a < 0 or b < 0:
        raise InvalidParameters("Clebsch-Gordan weights must be >= 0")
    return list(range(a + b, abs(a - b) - 1, -2))


@dataclass(frozen=True)
class CharacterInIrreps:
    """A character written as sum of mult(p) * chi_p; only nonzero multiplicities are kept."""

    nvars: int
    mults: Mapping[Point, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(int(x) for x in p): int(m) for p, m in self.mults.items() if m}
        object.__setattr__(self, "mults", types.MappingProxyType(clean))

    def __getitem__(self, p) -> int:
        return self.mults.get(tuple(p), 0)

    def __len__(self):
        return len(self.mults)

    def items(self):
        return self.mults.items()

    def dimension(self) -> int:
        total = 0
        for p, m in self.mults.items():
            d = m
            for x in p:
                d *= x + 1
            total += d
        return total

    def rebuild(self) -> LaurentPoly:
        """The Laurent polynomial sum of mult(p) * chi_p."""
        if not self.mults:
            return LaurentPoly.zero(self.nvars)
        top = [max(p[k] for p in self.mults) for k in range(self.nvars)]
        bound = float(sum(abs(m) for m in self.mults.values())) * 1.0
        arr = np.zeros(tuple(2 * t + 1 for t in top), dtype=_pick_dtype(bound))
        for p, m in self.mults.items():
            window = tuple(slice(t - x, t + x + 1, 2) for t, x in zip(top, p))
            arr[window] += m
        return LaurentPoly(arr, tuple(-t for t in top))


def decompose_into_irreps(c: LaurentPoly) -> CharacterInIrreps:
    """Expand a self-dual Laurent polynomial in the basis {chi_p}.

    On a u_i <-> u_i^{-1} symmetric polynomial the multiplicity of chi_p is the
    alternating sum of the coefficients at ``p + 2*1_S`` over subsets S of axes.
    Raises NotACharacter on asymmetric input or on a negative multiplicity.
    """
    r = c.nvars
    if c.is_zero():
        return CharacterInIrreps(r, {})
    if not c.is_self_dual():
        raise NotACharacter("polynomial is not invariant under u_i -> u_i^-1")
    start = tuple(-o for o in c.offset)
    q = c.coeffs[tuple(slice(s, None) for s in start)]
    q = q.astype(object) if q.dtype == object else q.copy()
    for k in range(r):
        shifted = np.zeros_like(q)
        src = [slice(None)] * r
        dst = [slice(None)] * r
        src[k] = slice(2, None)
        dst[k] = slice(0, max(q.shape[k] - 2, 0))
        shifted[tuple(dst)] = q[tuple(src)]
        q = q - shifted
    if np.any(q < 0):
        bad = tuple(int(i) for i in np.argwhere(q < 0)[0])
        raise NotACharacter(f"negative multiplicity {q[bad]} at p={bad}")
    mults = {tuple(int(i) for i in idx): int(q[tuple(idx)]) for idx in np.argwhere(q != 0)}
    return CharacterInIrreps(r, mults)


# characters of the graded pieces


def _block_factor(k: int, i: int, r: int) -> LaurentPoly:
    """sum over k' in {k, k-2, ..., k mod 2} of chi_k'(u_i) chi_k'(u_{i+1})."""
    j = (i + 1) % r
    out = LaurentPoly.zero(r)
    for kk in range(k, -1, -2):
        out = out + chi_sl2(kk, i, r) * chi_sl2(kk, j, r)
    return out


def char_P(n: Sequence[int]) -> LaurentPoly:
    """Torus character of P_n as a product of one block factor per X_i."""
    n = as_degree(n)
    r = len(n)
    out = LaurentPoly.one(r)
    for i in sorted(range(r), key=lambda i: -n[i]):
        out = out * _block_factor(n[i], i, r)
    return out


def char_P_double_sum(n: Sequence[int]) -> CharacterInIrreps:
    """chi(P_n) = sum over m in Lambda_n and p in lambda_m of chi_p (no shells)."""
    n = as_degree(n)
    mults: dict[Point, int] = {}
    for m in lambda_box(n):
        for p in little_lambda_box(m):
            mults[p] = mults.get(p, 0) + 1
    return CharacterInIrreps(len(n), mults)


def char_H_shell(n: Sequence[int]) -> CharacterInIrreps:
    """chi(H_n) = sum over m in Shell(Lambda_n) of the chi_p with p in Shell(lambda_m).

    Each Shell(lambda_m) is accumulated as its box minus its inner box, so the
    per-m cost is two strided slice updates.
    """
    n = as_degree(n)
    r = len(n)
    ms = list(lambda_box(n).shell_iter())
    top = [max(m[i - 1] + m[i] for m in ms) for i in range(r)]
    acc = np.zeros(tuple(t + 1 for t in top), dtype=np.int64)
    for m in ms:
        lam = little_lambda_box(m)
        acc[tuple(slice(b, t + 1, 2) for t, b in zip(lam.tops, lam.bottoms))] += 1
        inner = lam.inner()
        if inner is not None:
            acc[tuple(slice(b, t + 1, 2) for t, b in zip(inner.tops, inner.bottoms))] -= 1
    mults = {tuple(int(i) for i in idx): int(acc[tuple(idx)]) for idx in np.argwhere(acc != 0)}
    return CharacterInIrreps(r, mults)


def invariant_multiplicity(j: int) -> int:
    """Number of monomials f^a g^b of multidegree j*(1,...,1): floor(j/2) + 1."""
    return j // 2 + 1


_RECURSION_BUDGET = 256


@functools.lru_cache(maxsize=_RECURSION_BUDGET)
def _char_H_recursive(n: Point) -> LaurentPoly:
    out = char_P(n)
    for j in range(1, min(n) + 1):
        out = out - _char_H_recursive(tuple(x - j for x in n)) * invariant_multiplicity(j)
    return out


def char_H_recursive(n: Sequence[int]) -> LaurentPoly:
    """chi(H_n) = chi(P_n) - sum_{j=1..n_min} (floor(j/2)+1) chi(H_{n-j}).

    Uses only the product formula for chi(P_n) and freeness over the two trace
    invariants; no shells.  Results are memoized in a bounded LRU cache.
    """
    return _char_H_recursive(as_degree(n))


def set_recursion_cache_budget(maxsize: int) -> None:
    """Replace the memo for :func:`char_H_recursive` with one of the given size."""
    global _char_H_recursive
    inner = _char_H_recursive.__wrapped__
    _char_H_recursive = functools.lru_cache(maxsize=maxsize)(inner)


def recursion_cache_info():
    return _char_H_recursive.cache_info()


# the generating function behind the block factor


def _series_mul(a: list[LaurentPoly], b: list[LaurentPoly], order: int) -> list[LaurentPoly]:
    nv = a[0].nvars
    out = [LaurentPoly.zero(nv) for _ in range(order + 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(order + 1 - i):
            if j < len(b) and not b[j].is_zero():
                out[i + j] = out[i + j] + x * b[j]
    return out


def gf_lhs_coefficients(order: int) -> list[LaurentPoly]:
    """q-expansion of (1 - q^2) / prod_{a,b = +-1} (1 - u^a v^b q) through q^order."""
    if order < 0:
        raise InvalidParameters("series order must be >= 0")
    series = [LaurentPoly.one(2)] + [LaurentPoly.zero(2) for _ in range(order)]
    for a, b in itertools.product((1, -1), repeat=2):
        x = LaurentPoly.monomial((a, b))
        geometric = [x**k for k in range(order + 1)]
        series = _series_mul(series, geometric, order)
    numerator = [LaurentPoly.one(2), LaurentPoly.zero(2), LaurentPoly.monomial((0, 0), -1)]
    return _series_mul(series, numerator[: order + 1], order)


def verify_gf_identity(order: int) -> bool:
    """Check the series identity against chi_k(u) chi_k(v) for every k <= order."""
    lhs = gf_lhs_coefficients(order)
    return all(lhs[k] == chi_sl2(k, 0, 2) * chi_sl2(k, 1, 2) for k in range(order + 1))


def iter_irreps(c: CharacterInIrreps) -> Iterable[tuple[Point, int]]:
    return sorted(c.items(), reverse=True)
