import itertools
import threading
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_lambda, brute_little_lambda_box, brute_shell
from theta_harmonics.characters import (
    CharacterInIrreps,
    LaurentPoly,
    char_H_recursive,
    char_H_shell,
    char_P,
    char_P_double_sum,
    chi_product,
    chi_sl2,
    clebsch_gordan,
    decompose_into_irreps,
    gf_lhs_coefficients,
    recursion_cache_info,
    set_recursion_cache_budget,
    verify_gf_identity,
)
from theta_harmonics.errors import InvalidParameters, NotACharacter


def lp(terms, r):
    return LaurentPoly.from_terms(terms, r)


def greedy_decompose(poly):
    """Reference expansion: peel off the top dominant term repeatedly."""
    terms = dict(poly.terms())
    out = {}
    while terms:
        dominant = [e for e, c in terms.items() if c and all(x >= 0 for x in e)]
        if not dominant:
            raise NotACharacter("residue without dominant terms")
        top = max(dominant)
        c = terms[top]
        if c < 0:
            raise NotACharacter("negative")
        out[top] = c
        for e, d in chi_product(top).terms().items():
            terms[e] = terms.get(e, 0) - c * d
            if terms[e] == 0:
                del terms[e]
    return out


sparse_polys = st.integers(1, 3).flatmap(
    lambda r: st.dictionaries(
        st.tuples(*[st.integers(-4, 4)] * r), st.integers(-5, 5), max_size=6
    ).map(lambda d: lp(d, r))
)


class TestLaurentPoly:
    def test_zero_and_pruning(self):
        p = lp({(1, 0): 2, (0, 0): 0}, 2)
        assert p.terms() == {(1, 0): 2}
        assert (p - p).is_zero()
        assert (p - p) == LaurentPoly.zero(2)
        assert str(LaurentPoly.zero(2)) == "0"

    def test_canonical_string(self):
        p = lp({(0, 0): 1, (1, -1): -2, (0, 3): 1, (2, 0): 1}, 2)
        assert str(p) == "u1^2 - 2*u1*u2^-1 + u2^3 + 1"

    def test_mismatched_variables(self):
        with pytest.raises(InvalidParameters):
            lp({(1,): 1}, 1) + lp({(1, 0): 1}, 2)

    @given(sparse_polys, sparse_polys)
    def test_arithmetic_against_dicts(self, a, b):
        if a.nvars != b.nvars:
            return
        ta, tb = a.terms(), b.terms()
        add = {e: ta.get(e, 0) + tb.get(e, 0) for e in set(ta) | set(tb)}
        assert (a + b).terms() == {e: c for e, c in add.items() if c}
        mul = {}
        for (e1, c1), (e2, c2) in itertools.product(ta.items(), tb.items()):
            e = tuple(x + y for x, y in zip(e1, e2))
            mul[e] = mul.get(e, 0) + c1 * c2
        assert (a * b).terms() == {e: c for e, c in mul.items() if c}
        assert a * b == b * a

    @given(sparse_polys, sparse_polys, sparse_polys)
    def test_ring_laws(self, a, b, c):
        if not a.nvars == b.nvars == c.nvars:
            return
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)

    def test_big_coefficients_stay_exact(self):
        p = lp({(1,): 2**40, (0,): 3}, 1)
        q = p * p * p
        assert q.coefficient((3,)) == 2**120
        assert q.coefficient((0,)) == 27
        assert q.dimension() == (2**40 + 3) ** 3
        assert (q - q).is_zero()

    def test_evaluate_exact(self):
        p = chi_sl2(3, 0, 1)
        assert p.evaluate([Fraction(1, 2)]) == Fraction(8) + 2 + Fraction(1, 2) + Fraction(1, 8)

    def test_hash_and_eq(self):
        a = lp({(1, 2): 3}, 2)
        b = LaurentPoly.monomial((1, 2), 3)
        assert a == b and hash(a) == hash(b)


class TestSL2:
    def test_examples(self):
        assert chi_sl2(0, 0, 1) == LaurentPoly.one(1)
        assert chi_sl2(3, 1, 2).terms() == {(0, 3): 1, (0, 1): 1, (0, -1): 1, (0, -3): 1}
        for s in range(10):
            assert chi_sl2(s, 0, 1).evaluate([1]) == s + 1

    def test_negative_rejected(self):
        with pytest.raises(InvalidParameters):
            chi_sl2(-1)

    def test_value_at_minus_one(self):
        for s in range(21):
            assert chi_sl2(s, 0, 1).evaluate([-1]) == (-1) ** s * (s + 1)

    def test_clebsch_gordan_examples(self):
        assert clebsch_gordan(1, 1) == [2, 0]
        assert clebsch_gordan(3, 2) == [5, 3, 1]
        assert clebsch_gordan(4, 0) == [4]

    def test_tensor_identity(self):
        for a, b in itertools.product(range(21), repeat=2):
            lhs = chi_sl2(a, 0, 1) * chi_sl2(b, 0, 1)
            rhs = LaurentPoly.zero(1)
            for k in clebsch_gordan(a, b):
                rhs = rhs + chi_sl2(k, 0, 1)
            assert lhs == rhs


class TestDecompose:
    def test_examples(self):
        assert decompose_into_irreps(chi_sl2(3, 0, 1) * chi_sl2(2, 0, 1)).mults == {(5,): 1, (3,): 1, (1,): 1}
        assert decompose_into_irreps(LaurentPoly.one(3)).mults == {(0, 0, 0): 1}

    def test_char_P_matches_double_sum(self):
        ds = char_P_double_sum((3, 2, 3))
        dec = decompose_into_irreps(char_P((3, 2, 3)))
        assert dict(dec.items()) == dict(ds.items())
        assert dec.dimension() == char_P((3, 2, 3)).dimension() == 20 * 10 * 20

    def test_rejects_non_characters(self):
        with pytest.raises(NotACharacter):
            decompose_into_irreps(LaurentPoly.monomial((1,)))
        with pytest.raises(NotACharacter):
            decompose_into_irreps(chi_sl2(2, 0, 1) - chi_sl2(4, 0, 1))

    @given(st.integers(1, 3).flatmap(
        lambda r: st.dictionaries(st.tuples(*[st.integers(0, 8)] * r), st.integers(0, 5), max_size=8)
        .map(lambda d: CharacterInIrreps(r, d))))
    def test_round_trip(self, c):
        poly = c.rebuild()
        naive = LaurentPoly.zero(c.nvars)
        for p, m in c.items():
            naive = naive + chi_product(p) * m
        assert poly == naive
        assert dict(decompose_into_irreps(poly).items()) == dict(c.items())
        assert greedy_decompose(poly) == dict(c.items())
        assert poly.dimension() == c.dimension()

    def test_mults_are_read_only(self):
        c = CharacterInIrreps(1, {(1,): 2})
        with pytest.raises(TypeError):
            c.mults[(2,)] = 1


class TestCharP:
    def test_examples(self):
        assert char_P((1, 0)) == chi_sl2(1, 0, 2) * chi_sl2(1, 1, 2)
        assert char_P((1, 0)).dimension() == 4
        assert char_P((0, 0, 0)) == LaurentPoly.one(3)

    def test_eight_terms(self):
        # (chi_3 chi_3 + chi_1 chi_1)(chi_2 chi_2 + 1)(chi_3 chi_3 + chi_1 chi_1), cyclically
        blocks = {3: [3, 1], 2: [2, 0]}
        n = (3, 2, 3)
        total = LaurentPoly.zero(3)
        count = 0
        for ks in itertools.product(*(blocks[x] for x in n)):
            term = LaurentPoly.one(3)
            for i, k in enumerate(ks):
                term = term * chi_sl2(k, i, 3) * chi_sl2(k, (i + 1) % 3, 3)
            total = total + term
            count += 1
        assert count == 8
        assert char_P(n) == total

    @given(st.integers(2, 4).flatmap(lambda r: st.tuples(*[st.integers(0, 4)] * r)))
    def test_dimension(self, n):
        from math import comb, prod
        assert char_P(n).dimension() == prod(comb(x + 3, 3) for x in n)


class TestCharH:
    def test_examples(self):
        assert dict(char_H_shell((1, 1)).items()) == {(2, 2): 1, (2, 0): 1, (0, 2): 1}
        assert dict(char_H_shell((0, 0, 0)).items()) == {(0, 0, 0): 1}
        assert char_H_shell((6, 5, 3))[(7, 5, 4)] == 6
        assert char_H_recursive((1, 1)).dimension() == 15

    def test_recursion_examples(self):
        n = (5, 1, 4, 3)
        assert char_H_recursive(n) == char_P(n) - char_H_recursive((4, 0, 3, 2))
        for m in [(3, 0), (0, 2, 5), (4, 0, 1, 2)]:
            assert char_H_recursive(m) == char_P(m)

    @given(st.integers(2, 3).flatmap(lambda r: st.tuples(*[st.integers(0, 4)] * r)))
    def test_shell_matches_definition(self, n):
        expected = {}
        for m in brute_lambda(n):
            for p in brute_shell(*brute_little_lambda_box(m)):
                expected[p] = expected.get(p, 0) + 1
        assert dict(char_H_shell(n).items()) == expected

    @given(st.integers(2, 4).flatmap(lambda r: st.tuples(*[st.integers(0, 6)] * r)))
    def test_shell_equals_recursion(self, n):
        shell = char_H_shell(n)
        rec = char_H_recursive(n)
        assert shell.rebuild() == rec
        assert shell.dimension() == rec.dimension()
        assert rec.is_self_dual() and char_P(n).is_self_dual()

    def test_cache_budget_and_threads(self):
        set_recursion_cache_budget(8)
        assert recursion_cache_info().maxsize == 8
        results = []

        def work():
            results.append(char_H_recursive((5, 4, 4)))

        threads = [threading.Thread(target=work) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(r == results[0] for r in results)
        assert results[0] == char_H_shell((5, 4, 4)).rebuild()
        set_recursion_cache_budget(256)


class TestGeneratingFunction:
    def test_low_orders(self):
        coeffs = gf_lhs_coefficients(2)
        assert coeffs[0] == LaurentPoly.one(2)
        assert coeffs[1] == chi_sl2(1, 0, 2) * chi_sl2(1, 1, 2)
        assert verify_gf_identity(0)

    def test_through_ten(self):
        assert verify_gf_identity(10)

    def test_negative_order(self):
        with pytest.raises(InvalidParameters):
            gf_lhs_coefficients(-1)
