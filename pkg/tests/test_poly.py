import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amoebatrop import (LaurentFamily, LaurentPolynomial, load_polynomial,
                        polynomial_from_document, polynomial_to_document,
                        save_polynomial)

from helpers import expand_family_product


class TestEvaluate:
    def test_line_at_ones(self, line):
        assert line.evaluate((1, 1)) == 3

    def test_cube_roots_of_unity(self, line):
        w = cmath.exp(2j * cmath.pi / 3)
        assert abs(line.evaluate((w, w * w))) < 1e-14

    def test_laurent_monomial(self):
        f = LaurentPolynomial(2, {(1, -1): 1})
        assert f.evaluate((2, 4)) == 0.5

    def test_zero_coordinate_rejected(self, line):
        with pytest.raises(ValueError):
            line.evaluate((0, 1))

    def test_dimension_mismatch(self, line):
        with pytest.raises(ValueError):
            line.evaluate((1, 1, 1))


class TestMultiply:
    def test_difference_of_squares(self):
        a = LaurentPolynomial(1, {(1,): 1, (0,): 1})
        b = LaurentPolynomial(1, {(1,): 1, (0,): -1})
        assert (a * b).terms == {(2,): 1, (0,): -1}

    def test_multiplicative_identity(self, line):
        one = LaurentPolynomial(2, {(0, 0): 1})
        assert line * one == line

    def test_binomial_square(self, line):
        sq = line * line
        assert sq.terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1,
                            (1, 0): 2, (0, 1): 2, (0, 0): 1}

    def test_exact_cancellation_drops_support(self):
        a = LaurentPolynomial(1, {(1,): 1, (0,): 1})
        b = LaurentPolynomial(1, {(1,): 1, (0,): -1})
        assert (1,) not in (a * b).terms

    def test_dimension_mismatch(self, line):
        with pytest.raises(ValueError):
            line * LaurentPolynomial(1, {(0,): 1})

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_evaluation_is_multiplicative(self, data):
        rng_terms = st.dictionaries(
            st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
            st.integers(-3, 3), min_size=1, max_size=4)
        f = LaurentPolynomial(2, data.draw(rng_terms))
        g = LaurentPolynomial(2, data.draw(rng_terms))
        moduli = data.draw(st.tuples(st.floats(0.5, 2.0), st.floats(0.5, 2.0)))
        phases = data.draw(st.tuples(st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi)))
        z = tuple(r * cmath.exp(1j * t) for r, t in zip(moduli, phases))
        lhs = (f * g).evaluate(z)
        rhs = f.evaluate(z) * g.evaluate(z)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


class TestSpecialize:
    def test_direct_substitution(self):
        F = LaurentFamily(2, {(1, 0): {1: 1}, (0, 1): {-1: 1}, (0, 0): {0: 1}})
        assert F.specialize(0.5).terms == {(1, 0): 0.5, (0, 1): 2, (0, 0): 1}

    def test_constant_family(self, line, line_family):
        assert line_family.specialize(0.37 + 0.2j) == line

    def test_specialize_commutes_with_product(self, line_family, twisted_line_family):
        # Oracle: expand then specialize vs specialize factors then multiply.
        for a in (1.0, 0.5):
            expanded = (line_family * twisted_line_family).specialize(a)
            factored = line_family.specialize(a) * twisted_line_family.specialize(a)
            assert expanded == factored

    def test_zero_rejected(self, twisted_line_family):
        with pytest.raises(ValueError):
            twisted_line_family.specialize(0)


class TestTValuation:
    def test_two_line_family_table(self, line_family, twisted_line_family, product_family):
        # Independent oracle: naive dict convolution, then min t-exponent.
        expected = {m: min(inner) for m, inner in
                    expand_family_product(line_family.terms, twisted_line_family.terms).items()}
        assert product_family.t_valuation().terms == expected
        # The frozen table.
        assert expected == {(2, 0): 1, (1, 1): -1, (0, 2): -1,
                            (1, 0): 0, (0, 1): -1, (0, 0): 0}

    def test_single_term(self):
        F = LaurentFamily(1, {(1,): {3: 1}})
        assert F.t_valuation().terms == {(1,): 3}

    def test_t_free_family(self, line_family):
        assert set(line_family.t_valuation().terms.values()) == {0}

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            LaurentFamily(1, {}).t_valuation()

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_product_valuation_ultrametric(self, data):
        fam = st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2)),
            st.dictionaries(st.integers(-2, 2), st.integers(-2, 2), min_size=1, max_size=2),
            min_size=1, max_size=3)
        F = LaurentFamily(2, data.draw(fam))
        G = LaurentFamily(2, data.draw(fam))
        if F.is_zero() or G.is_zero():
            return
        cf = F.t_valuation().terms
        cg = G.t_valuation().terms
        prod = F * G
        if prod.is_zero():
            return
        for m, c in prod.t_valuation().terms.items():
            splits = [cf[mf] + cg[mg] for mf in cf for mg in cg
                      if tuple(a + b for a, b in zip(mf, mg)) == m]
            best = min(splits)
            assert c >= best
            if splits.count(best) == 1:
                assert c == best


class TestTrivialTropicalization:
    def test_line(self, line):
        trop = line.trivial_tropicalization()
        assert trop.terms == {(1, 0): 0.0, (0, 1): 0.0, (0, 0): 0.0}

    def test_magnitude_discarded(self):
        f = LaurentPolynomial(1, {(2,): 5})
        assert f.trivial_tropicalization().terms == {(2,): 0.0}

    def test_rescaling_invariance(self, product_family):
        f = product_family.specialize(0.3)
        for lam in (2.0, -1j, 0.25 + 0.1j):
            assert f.scaled(lam).trivial_tropicalization() == f.trivial_tropicalization()

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            LaurentPolynomial(2, {}).trivial_tropicalization()


class TestDocuments:
    def test_round_trip_is_bit_exact(self, tmp_path):
        rng = np.random.default_rng(5)
        terms = {(int(a), int(b)): complex(x, y)
                 for (a, b), x, y in zip(
                     [(1, 0), (0, 1), (-2, 3), (0, 0)],
                     rng.standard_normal(4) * 1e3,
                     rng.standard_normal(4) / 1e5)}
        f = LaurentPolynomial(2, terms)
        path = tmp_path / "poly.json"
        save_polynomial(path, f)
        assert load_polynomial(path) == f

    def test_family_round_trip(self, tmp_path, product_family):
        path = tmp_path / "family.json"
        save_polynomial(path, product_family)
        assert load_polynomial(path) == product_family

    def test_plain_document_shape(self, line):
        doc = polynomial_to_document(line)
        assert doc["dim"] == 2
        assert doc["terms"][0] == {"exponent": [0, 0], "coeff": {"re": 1.0, "im": 0.0}}
        assert polynomial_from_document(doc) == line

    def test_parse_error_reports_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"dim": 2,\n "terms": [}')
        with pytest.raises(ValueError, match=r"line 2 column"):
            load_polynomial(path)

    def test_canonical_support_order(self, tmp_path, line):
        doc = polynomial_to_document(line)
        exponents = [tuple(rec["exponent"]) for rec in doc["terms"]]
        assert exponents == sorted(exponents)
