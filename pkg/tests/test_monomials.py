import itertools

import pytest

from monoclone.errors import MonocloneError, ParseError
from monoclone.monomials import (NEG_INF, Monomial, all_monomials,
                                 canonicalize, evaluate, format_monomial,
                                 from_counts, identify, is_idempotent,
                                 monomial_from_json, monomial_to_json,
                                 parse_monomial, projection, reduce_exponent,
                                 scaled, substitute)


class TestReduceExponent:
    def test_zero_stays_zero(self, fp5):
        assert reduce_exponent(0, fp5) == 0

    def test_positive_multiple_goes_to_modulus(self, fp5):
        assert reduce_exponent(8, fp5) == 4

    def test_plain_residue(self, fp5):
        assert reduce_exponent(9, fp5) == 1

    def test_idempotent(self, fp3, fp4, fp5):
        for fp in (fp3, fp4, fp5):
            for a in range(10 * fp.q + 1):
                r = reduce_exponent(a, fp)
                assert reduce_exponent(r, fp) == r

    def test_negative_rejected(self, fp3):
        with pytest.raises(MonocloneError):
            reduce_exponent(-1, fp3)


class TestCanonicalize:
    def test_in_range(self, fp5):
        assert canonicalize([3, 2, 2], fp5) == from_counts({3: 1, 2: 2}, fp5)

    def test_reduces_and_drops_zero(self, fp5):
        assert canonicalize([7, 0, 11], fp5) == from_counts({3: 2}, fp5)

    def test_multiple_of_modulus_stays(self, fp5):
        assert canonicalize([4, 4], fp5) == from_counts({4: 2}, fp5)

    def test_all_zero_rejected(self, fp5):
        with pytest.raises(MonocloneError):
            canonicalize([0, 0], fp5)
        with pytest.raises(MonocloneError):
            canonicalize([], fp5)


class TestIdempotent:
    def test_widest_all_ones(self, fp5):
        assert is_idempotent(from_counts({1: 5}, fp5), fp5)

    def test_bottom_atom_generator(self, fp5):
        assert is_idempotent(from_counts({1: 1, 4: 1}, fp5), fp5)

    def test_square_is_not(self, fp5):
        assert not is_idempotent(from_counts({2: 1}, fp5), fp5)


class TestSubstitute:
    def test_grows_width_by_tail(self, fp3):
        m = from_counts({1: 1, 2: 1}, fp3)
        assert substitute(m, 1, m, fp3) == from_counts({1: 1, 2: 2}, fp3)

    def test_square_into_square(self, fp5):
        m = from_counts({2: 1}, fp5)
        assert substitute(m, 2, m, fp5) == from_counts({4: 1}, fp5)

    def test_fourth_power_slot(self, fp5):
        m = from_counts({1: 1, 4: 1}, fp5)
        assert substitute(m, 4, m, fp5) == from_counts({1: 1, 4: 2}, fp5)

    def test_fourth_power_slot_table_oracle(self, fp5):
        # composing evaluations directly must match the substituted monomial
        m = from_counts({1: 1, 4: 1}, fp5)
        composed = substitute(m, 4, m, fp5)
        pts = [NEG_INF] + list(range(4))
        for x, y, z in itertools.product(pts, repeat=3):
            inner = evaluate(m, (y, z), fp5)
            direct = evaluate(m, (x, inner), fp5)
            via = evaluate(composed, (x, y, z), fp5)
            assert direct == via

    def test_missing_residue_rejected(self, fp5):
        with pytest.raises(MonocloneError):
            substitute(from_counts({2: 1}, fp5), 1, from_counts({1: 1}, fp5), fp5)


class TestIdentify:
    def test_chained_cut(self, fp5):
        m = from_counts({3: 1, 2: 2}, fp5)
        step = identify(m, 2, 2, fp5)
        assert step == from_counts({3: 1, 4: 1}, fp5)
        assert identify(step, 4, 3, fp5) == from_counts({3: 1}, fp5)

    def test_two_ones(self, fp3):
        assert identify(from_counts({1: 2}, fp3), 1, 1, fp3) == \
            from_counts({2: 1}, fp3)

    def test_sum_wraps_to_one(self, fp3):
        assert identify(from_counts({1: 1, 2: 1}, fp3), 1, 2, fp3) == \
            from_counts({1: 1}, fp3)

    def test_width_one_rejected(self, fp3):
        with pytest.raises(MonocloneError):
            identify(from_counts({1: 1}, fp3), 1, 1, fp3)

    def test_insufficient_multiplicity_rejected(self, fp3):
        with pytest.raises(MonocloneError):
            identify(from_counts({1: 1, 2: 1}, fp3), 1, 1, fp3)

    def test_width_always_drops_by_one(self, fp4):
        for m in all_monomials(fp4, 4):
            if m.width < 2:
                continue
            for r1 in m.residues():
                for r2 in m.residues():
                    if r1 == r2 and m.count(r1) < 2:
                        continue
                    assert identify(m, r1, r2, fp4).width == m.width - 1


class TestEvaluate:
    def test_direct_sum(self, fp5):
        m = from_counts({1: 1, 2: 1}, fp5)
        assert evaluate(m, (2, 1), fp5) == 0

    def test_absorbing(self, fp5):
        m = from_counts({1: 2, 3: 1}, fp5)
        assert evaluate(m, (1, NEG_INF, 2), fp5) == NEG_INF

    def test_wraps(self, fp5):
        assert evaluate(from_counts({4: 1}, fp5), (3,), fp5) == 0

    def test_length_mismatch(self, fp5):
        with pytest.raises(MonocloneError):
            evaluate(from_counts({1: 2}, fp5), (1,), fp5)

    def test_equivalence_soundness(self, fp4):
        # replacing a stored residue by any positive lift of it is invisible
        for m in all_monomials(fp4, 3):
            for r in m.residues():
                exps = list(m.exponents())
                exps.remove(r)
                assert canonicalize(exps + [r + 2 * fp4.modulus], fp4) == m


class TestTextAndJson:
    def test_format(self, fp5):
        assert format_monomial(from_counts({3: 1, 2: 2}, fp5)) == "x1^2*x2^2*x3^3"
        assert format_monomial(from_counts({1: 2, 4: 1}, fp5)) == "x1*x2*x3^4"

    def test_parse_basic(self, fp5):
        assert parse_monomial("x1^3*x2^2*x3^2", fp5) == \
            from_counts({3: 1, 2: 2}, fp5)

    def test_parse_reduces(self, fp5):
        assert parse_monomial("x1^7 * x2^8", fp5) == \
            from_counts({3: 1, 4: 1}, fp5)

    def test_parse_merges_repeated_variable(self, fp5):
        assert parse_monomial("x1^2*x1", fp5) == from_counts({3: 1}, fp5)

    def test_roundtrip(self, fp4):
        for m in all_monomials(fp4, 3):
            assert parse_monomial(format_monomial(m), fp4) == m

    def test_parse_error_position(self, fp5):
        with pytest.raises(ParseError) as err:
            parse_monomial("x1^*x2", fp5)
        assert err.value.position == 3

    def test_parse_error_garbage(self, fp5):
        with pytest.raises(ParseError):
            parse_monomial("y1", fp5)
        with pytest.raises(ParseError):
            parse_monomial("x1*", fp5)
        with pytest.raises(ParseError):
            parse_monomial("", fp5)

    def test_json_roundtrip(self, fp5):
        m = from_counts({3: 1, 2: 2}, fp5)
        obj = monomial_to_json(m, fp5)
        assert obj == {"q": 5, "counts": {"2": 2, "3": 1}}
        assert monomial_from_json(obj, fp5) == m

    def test_json_wrong_q(self, fp5, fp3):
        obj = monomial_to_json(from_counts({2: 1}, fp5), fp5)
        with pytest.raises(MonocloneError):
            monomial_from_json(obj, fp3)


class TestHelpers:
    def test_projection(self, fp4):
        assert projection(fp4) == from_counts({1: 1}, fp4)

    def test_scaled(self, fp5):
        assert scaled(from_counts({1: 1, 2: 1}, fp5), 2, fp5) == \
            from_counts({2: 1, 4: 1}, fp5)

    def test_all_monomials_count(self, fp3):
        # multisets over 2 residues of size 1..3: 2 + 3 + 4
        assert len(list(all_monomials(fp3, 3))) == 9

    def test_monomial_invariants(self):
        with pytest.raises(MonocloneError):
            Monomial(())
        with pytest.raises(MonocloneError):
            Monomial((0, 0))
        with pytest.raises(MonocloneError):
            Monomial((-1, 2))
