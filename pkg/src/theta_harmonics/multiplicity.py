"""Multiplicity of a K-type F_{z,s} in H_n, by four independent routes.

* combinatorial: #{m in Shell(Lambda_n) : s in Shell(lambda_m)}, with the
  membership tested by its three explicit conditions;
* geometric: #{m in Shell(Lambda_n) : m on S(s)}, valid once the M-fixed
  congruences hold (otherwise the K-type cannot occur);
* character_shell: coefficient of chi_s in the shell formula for chi(H_n);
* character_recursive: coefficient of chi_s in the invariant recursion.

All routes share the same gates: parity of the label, divisibility r | sum(z),
and n lying on ray(z).
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .characters import CharacterInIrreps, char_H_recursive, char_H_shell, decompose_into_irreps
from .combinatorics import (
    KTypeLabel,
    Point,
    RaySpec,
    as_degree,
    base_point,
    central_param_of_degree,
    is_valid_ktype,
    lambda_box,
)
from .errors import InvalidParameters, MethodDisagreement
from .geometry import FaceSystem, count_shell_surface_intersections


class Method(str, enum.Enum):
    COMBINATORIAL = "combinatorial"
    GEOMETRIC = "geometric"
    CHARACTER_SHELL = "character_shell"
    CHARACTER_RECURSIVE = "character_recursive"

    def __str__(self):
        return self.value


ALL_METHODS = tuple(Method)

# reason codes attached to every result
OK = "ok"
PARITY = "parity"
CENTRAL = "central"
OFF_RAY = "off_ray"


@dataclass(frozen=True)
class MultiplicityResult:
    n: Point | None
    value: int
    method: Method
    reason: str = OK
    values: Mapping[str, int] | None = None
    agreement: bool | None = None


@dataclass(frozen=True)
class MFixedPredicate:
    z: Point
    s: Point
    r: int
    well_posed: bool
    cond1: bool
    cond2: bool

    @property
    def holds(self) -> bool:
        return self.well_posed and self.cond1 and self.cond2


def mfixed_conditions(label: KTypeLabel) -> MFixedPredicate:
    """The two congruences for an M-fixed vector, with q = sum(z)/r.

    (1) z_k + q = s_k (mod 2) for k < r;  (2) q = s_r (mod 2).
    """
    r, z, s = label.r, label.z, label.s
    total = sum(z)
    if total % r:
        return MFixedPredicate(z, s, r, False, False, False)
    q = total // r
    cond1 = all((zk + q - sk) % 2 == 0 for zk, sk in zip(z, s))
    cond2 = (q - s[-1]) % 2 == 0
    return MFixedPredicate(z, s, r, True, cond1, cond2)


def _gate(label: KTypeLabel, n: Point) -> str:
    if not is_valid_ktype(label):
        return PARITY
    ray = base_point(label.z, label.r)
    if ray is None:
        return CENTRAL
    if not ray.contains(n):
        return OFF_RAY
    return OK


def shell_params(n: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """For each m in Shell(Lambda_n): the tops m_{i-1}+m_i and bottoms |m_{i-1}-m_i| of lambda_m."""
    pts = lambda_box(n).shell_array()
    prev = np.roll(pts, 1, axis=1)
    return prev + pts, np.abs(prev - pts)


def combinatorial_count(s: Sequence[int], n: Sequence[int]) -> int:
    """#{m in Shell(Lambda_n) : s in Shell(lambda_m)} with no gating."""
    tops, bottoms = shell_params(n)
    s = np.asarray(s, dtype=np.int64)
    in_range = np.all((bottoms <= s) & (s <= tops), axis=1)
    parity = np.all((tops - s) % 2 == 0, axis=1)
    at_top = np.any(tops == s, axis=1)
    return int(np.count_nonzero(in_range & parity & at_top))


@functools.lru_cache(maxsize=64)
def _shell_character(n: Point) -> CharacterInIrreps:
    return char_H_shell(n)


@functools.lru_cache(maxsize=64)
def _recursive_character(n: Point) -> CharacterInIrreps:
    return decompose_into_irreps(char_H_recursive(n))


def _run(method: Method, label: KTypeLabel, n: Point) -> int:
    if method is Method.COMBINATORIAL:
        return combinatorial_count(label.s, n)
    if method is Method.GEOMETRIC:
        if not mfixed_conditions(label).holds:
            return 0
        return count_shell_surface_intersections(FaceSystem(label.s), n)
    if method is Method.CHARACTER_SHELL:
        return _shell_character(n)[label.s]
    if method is Method.CHARACTER_RECURSIVE:
        return _recursive_character(n)[label.s]
    raise InvalidParameters(f"unknown method {method!r}")


def multiplicity(
    label: KTypeLabel,
    n: Sequence[int],
    method: Method | str = Method.COMBINATORIAL,
    cross_check: bool = False,
) -> MultiplicityResult:
    """[F_{z,s} : H_n].

    Gated labels come back as 0 with a reason code (``parity``, ``central`` or
    ``off_ray``).  With ``cross_check`` every method runs and any disagreement
    raises :class:`MethodDisagreement`.
    """
    method = Method(method)
    n = as_degree(n, label.r)
    reason = _gate(label, n)
    methods = ALL_METHODS if cross_check else (method,)
    if reason != OK:
        values = {str(m): 0 for m in methods}
    else:
        values = {str(m): _run(m, label, n) for m in methods}
    agreement = None
    if cross_check:
        agreement = len(set(values.values())) == 1
        if not agreement:
            raise MethodDisagreement(label, n, values)
    return MultiplicityResult(
        n=n,
        value=values[str(method)],
        method=method,
        reason=reason,
        values=values if cross_check else None,
        agreement=agreement,
    )


@dataclass(frozen=True)
class MultiplicityTable:
    """Rows b + t*1 for t up to t_max; every degree off the ray has multiplicity ``off_ray``."""

    label: KTypeLabel
    ray: RaySpec | None
    rows: tuple[tuple[int, MultiplicityResult], ...]
    off_ray: int = 0

    def __iter__(self) -> Iterator[tuple[int, MultiplicityResult]]:
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(res.value for _, res in self.rows)


def multiplicity_table(
    label: KTypeLabel,
    t_max: int,
    method: Method | str = Method.COMBINATORIAL,
    cross_check: bool = False,
) -> MultiplicityTable:
    """Graded multiplicities along ray(z).

    Points of the ray outside N^r are skipped.  When r does not divide sum(z)
    there is no ray; the rows then carry ``n=None`` and value 0.
    """
    if t_max < 0:
        raise InvalidParameters("t_max must be >= 0")
    method = Method(method)
    ray = base_point(label.z, label.r)
    rows = []
    if ray is None:
        reason = PARITY if not is_valid_ktype(label) else CENTRAL
        for t in range(t_max + 1):
            values = {str(m): 0 for m in ALL_METHODS} if cross_check else None
            rows.append((t, MultiplicityResult(None, 0, method, reason, values, True if cross_check else None)))
    else:
        for t, n in ray.points(t_max):
            rows.append((t, multiplicity(label, n, method, cross_check)))
    return MultiplicityTable(label, ray, tuple(rows))


def total_multiplicity(label: KTypeLabel, method: Method | str = Method.COMBINATORIAL) -> int:
    """Sum of [F_{z,s} : H_n] over all n.

    Every point of S has all coordinates at most B, the largest coordinate of
    S computed exactly from its faces, while every shell point of Lambda_n has
    a coordinate >= min(n).  So the ray can be cut once min(n) > B.  S is always
    bounded, so the total is always finite.
    """
    ray = base_point(label.z, label.r)
    if not is_valid_ktype(label) or ray is None:
        return 0
    bound = FaceSystem(label.s).surface_coordinate_bound()
    total = 0
    t = ray.first_valid_t
    while True:
        n = ray.point(t)
        if min(n) > bound:
            return total
        total += multiplicity(label, n, method).value
        t += 1


def decompose_component(n: Sequence[int]) -> dict[KTypeLabel, int]:
    """H_n as a K-representation: every chi_p of chi(H_n) tagged with z of n."""
    n = as_degree(n)
    z = central_param_of_degree(n)
    return {KTypeLabel(z, p): m for p, m in sorted(_shell_character(n).items(), reverse=True)}


def clear_caches() -> None:
    _shell_character.cache_clear()
    _recursive_character.cache_clear()
