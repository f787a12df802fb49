"""Brute-force harmonic characters from constant-coefficient differential operators.

P_n is spanned by monomials in the 4r matrix entries x^{(i)}_{ab}.  The two
trace invariants F = tr(X_1...X_r) and G = tr((X_1...X_r)^2) act by replacing
every coordinate with the partial derivative in that coordinate; H_n is the
joint kernel.  Both operators have torus weight zero, so the kernel is computed
one weight block at a time with exact integer rank.
"""

from __future__ import annotations

import functools
import itertools
import math
import threading
from collections import defaultdict
from typing import Sequence

from .characters import LaurentPoly, chi_sl2, invariant_multiplicity
from .combinatorics import Point, as_degree, as_rank
from .errors import OracleConventionError, SizeCapExceeded

DEFAULT_BASIS_CAP = 2 * 10**5

Exponent = tuple[int, ...]
Poly = dict[Exponent, int]


def coordinate_index(i: int, a: int, b: int) -> int:
    """Flat index of x^{(i)}_{ab}, all 0-based."""
    return 4 * i + 2 * a + b


def coordinate_weight(i: int, a: int, b: int, r: int) -> Point:
    """Torus weight: +-1 on axis i from the row index, -+1 on axis i+1 from the column."""
    w = [0] * r
    w[i] += 1 if a == 0 else -1
    w[(i + 1) % r] += -1 if b == 0 else 1
    return tuple(w)


def _coordinate_weights(r: int) -> list[Point]:
    out = [None] * (4 * r)
    for i, a, b in itertools.product(range(r), range(2), range(2)):
        out[coordinate_index(i, a, b)] = coordinate_weight(i, a, b, r)
    return out


def monomial_weight(e: Exponent, r: int) -> Point:
    w = [0] * r
    for k, ek in enumerate(e):
        if ek:
            for axis, x in enumerate(_coordinate_weights(r)[k]):
                w[axis] += ek * x
    return tuple(w)


def block_degrees(e: Exponent, r: int) -> Point:
    return tuple(sum(e[4 * i : 4 * i + 4]) for i in range(r))


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 1:
        return [(total,)]
    return [(k,) + rest for k in range(total, -1, -1) for rest in _compositions(total - k, parts - 1)]


def basis_size(n: Sequence[int]) -> int:
    return math.prod(math.comb(x + 3, 3) for x in n)


def build_monomial_basis(n: Sequence[int], cap: int = DEFAULT_BASIS_CAP) -> list[tuple[Exponent, Point]]:
    """Monomials of P_n with their torus weights, in a fixed order."""
    n = as_degree(n)
    size = basis_size(n)
    if size > cap:
        raise SizeCapExceeded("monomial basis", size, cap)
    r = len(n)
    blocks = [_compositions(x, 4) for x in n]
    out = []
    for parts in itertools.product(*blocks):
        e = tuple(itertools.chain.from_iterable(parts))
        out.append((e, monomial_weight(e, r)))
    return out


# polynomials as exponent -> coefficient dicts


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = defaultdict(int)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[tuple(x + y for x, y in zip(e1, e2))] += c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _matmul(x, y):
    return [[_poly_add(_poly_mul(x[a][0], y[0][b]), _poly_mul(x[a][1], y[1][b])) for b in range(2)] for a in range(2)]


def _block_matrix(i: int, r: int):
    def var(a, b):
        e = [0] * (4 * r)
        e[coordinate_index(i, a, b)] = 1
        return {tuple(e): 1}

    return [[var(a, b) for b in range(2)] for a in range(2)]


@functools.lru_cache(maxsize=None)
def trace_invariants(r: int) -> tuple[Poly, Poly]:
    """F = tr(X_1...X_r) and G = tr((X_1...X_r)^2) expanded from symbolic 2x2 products."""
    r = as_rank(r)
    prod = _block_matrix(0, r)
    for i in range(1, r):
        prod = _matmul(prod, _block_matrix(i, r))
    square = _matmul(prod, prod)
    f = _poly_add(prod[0][0], prod[1][1])
    g = _poly_add(square[0][0], square[1][1])
    for poly, deg in ((f, 1), (g, 2)):
        for e in poly:
            if block_degrees(e, r) != (deg,) * r or any(monomial_weight(e, r)):
                raise OracleConventionError(f"trace invariant term {e} has unexpected degree or weight")
    return f, g


def _differentiate(op: Poly, e: Exponent) -> Poly:
    """op(d/dx) applied to the monomial x^e."""
    out: Poly = {}
    for d, c in op.items():
        if any(dk > ek for dk, ek in zip(d, e)):
            continue
        coef = c
        for dk, ek in zip(d, e):
            if dk:
                coef *= math.perm(ek, dk)
        target = tuple(ek - dk for dk, ek in zip(d, e))
        out[target] = out.get(target, 0) + coef
    return out


def apply_operator(op: Poly, basis_n: Sequence, basis_target: Sequence) -> list[list[int]]:
    """Matrix of ``op`` from span(basis_n) to span(basis_target); rows index the target."""
    index = {_exp(b): k for k, b in enumerate(basis_target)}
    mat = [[0] * len(basis_n) for _ in basis_target]
    for col, b in enumerate(basis_n):
        for e, c in _differentiate(op, _exp(b)).items():
            mat[index[e]][col] += c
    return mat


def _exp(b) -> Exponent:
    # accepts bare exponents or (exponent, weight) pairs from build_monomial_basis
    return b[0] if isinstance(b[0], tuple) else b


def exact_rank(mat: list[list[int]]) -> int:
    """Rank over the integers (fraction-free elimination)."""
    if not mat or not mat[0]:
        return 0
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix

    return DomainMatrix([[ZZ(x) for x in row] for row in mat], (len(mat), len(mat[0])), ZZ).rank()


def _by_weight(basis) -> dict[Point, list[Exponent]]:
    out: dict[Point, list[Exponent]] = defaultdict(list)
    for e, w in basis:
        out[w].append(e)
    return out


def _lower(n: Point, j: int) -> Point | None:
    m = tuple(x - j for x in n)
    return m if min(m) >= 0 else None


def harmonic_weight_kernel(n: Sequence[int], cap: int = DEFAULT_BASIS_CAP) -> dict[Point, int]:
    """Weight -> dim of ker F ∩ ker G inside that weight space of P_n."""
    _ensure_conventions()
    n = as_degree(n)
    r = len(n)
    f, g = trace_invariants(r)
    source = _by_weight(build_monomial_basis(n, cap))
    targets = []
    for op, j in ((f, 1), (g, 2)):
        m = _lower(n, j)
        if m is not None:
            targets.append((op, _by_weight(build_monomial_basis(m, cap))))
    out = {}
    for w, monos in source.items():
        rows = []
        for op, tgt in targets:
            rows.extend(apply_operator(op, monos, tgt.get(w, [])))
        out[w] = len(monos) - exact_rank(rows)
    return {w: d for w, d in out.items() if d}


def harmonic_kernel_dimension_global(n: Sequence[int], cap: int = DEFAULT_BASIS_CAP) -> int:
    """dim H_n from a single unblocked kernel computation (small n only)."""
    n = as_degree(n)
    f, g = trace_invariants(len(n))
    basis = build_monomial_basis(n, cap)
    rows = []
    for op, j in ((f, 1), (g, 2)):
        m = _lower(n, j)
        if m is not None:
            rows.extend(apply_operator(op, basis, build_monomial_basis(m, cap)))
    return len(basis) - exact_rank(rows)


def harmonic_character_oracle(n: Sequence[int], cap: int = DEFAULT_BASIS_CAP) -> LaurentPoly:
    """Sum over weights of kernel dimension times u^weight."""
    n = as_degree(n)
    return LaurentPoly.from_terms(harmonic_weight_kernel(n, cap), len(n))


def verify_lebruyn_procesi_freeness(n: Sequence[int], cap: int = DEFAULT_BASIS_CAP) -> bool:
    """dim P_n == sum_{j=0..n_min} (floor(j/2)+1) dim H_{n-j}, dimensions from the oracle."""
    n = as_degree(n)
    rhs = 0
    for j in range(min(n) + 1):
        rhs += invariant_multiplicity(j) * sum(harmonic_weight_kernel(_lower(n, j), cap).values())
    return basis_size(n) == rhs


# weight-convention self-test

_self_test_lock = threading.Lock()
_self_test_passed = False


def weight_convention_self_test(r: int = 3, max_degree: int = 3) -> None:
    """Weights of the degree-k monomials on a single block must sum to the block factor.

    That factor is sum over k' = k, k-2, ... of chi_k'(u_i) chi_k'(u_{i+1}).
    Raises OracleConventionError on mismatch.
    """
    for i in range(r):
        for k in range(max_degree + 1):
            n = [0] * r
            n[i] = k
            counts: dict[Point, int] = defaultdict(int)
            for _, w in build_monomial_basis(n):
                counts[w] += 1
            got = LaurentPoly.from_terms(counts, r)
            want = LaurentPoly.zero(r)
            for kk in range(k, -1, -2):
                want = want + chi_sl2(kk, i, r) * chi_sl2(kk, (i + 1) % r, r)
            if got != want:
                raise OracleConventionError(
                    f"monomial weights on block {i + 1} in degree {k} give {got}, expected {want}"
                )
    trace_invariants(r)


def _ensure_conventions() -> None:
    global _self_test_passed
    if _self_test_passed:
        return
    with _self_test_lock:
        if not _self_test_passed:
            weight_convention_self_test()
            _self_test_passed = True
