import pytest

from monoclone.engine import generate
from monoclone.errors import MonocloneError, ParseError
from monoclone.fields import FieldParam
from monoclone.hasse import node_label
from monoclone.monomials import canonicalize, from_counts, projection
from monoclone.semiaffine import (LinearForm, enumerate_semiaffine_lattice,
                                  evaluate_form, fiber, form_from_json,
                                  form_of_monomial, form_to_json,
                                  identity_form, is_semiaffine_form,
                                  linear_clone_to_json, linear_closure,
                                  linear_equal, linear_join, linear_meet,
                                  linear_subset, parse_form, phi_affine)

from figures import (FIG_SA2_EDGES, FIG_SA2_NODES, FIG_SA3_EDGES,
                     FIG_SA3_NODES, match_linear_figure)


class TestLinearForm:
    def test_identity(self):
        assert identity_form(4) == LinearForm((1, 0, 0))
        assert identity_form(1) == LinearForm(())

    def test_str(self):
        assert str(LinearForm((0, 0))) == "0"
        assert str(LinearForm((2, 1))) == "y1+y2+2*y3"

    def test_parse(self):
        assert parse_form("0", 3) == LinearForm((0, 0))
        assert parse_form("y1+2*y2", 3) == LinearForm((1, 1))
        assert parse_form("y1 + y1", 3) == LinearForm((0, 1))  # merges mod 3
        with pytest.raises(ParseError):
            parse_form("z1", 3)

    def test_json_roundtrip(self):
        f = LinearForm((2, 0, 1))
        assert form_from_json(form_to_json(f), 4) == f

    def test_evaluate(self):
        f = LinearForm((1, 1))  # y1 + 2*y2 over Z_3
        assert evaluate_form(f, (1, 1), 3) == 0
        assert evaluate_form(f, (2, 2), 3) == 0
        assert evaluate_form(f, (1, 0), 3) == 1

    def test_semiaffine_property(self):
        for f in (LinearForm((0, 0)), LinearForm((2, 1)), LinearForm((1, 0))):
            assert is_semiaffine_form(f, 3)


class TestLinearClosure:
    def test_odd_all_ones(self):
        lc = linear_closure([LinearForm((3,))], 2)
        got = {f.coeffs for f in lc.members}
        assert got == {(k,) for k in range(1, lc.cap + 1) if k % 2 == 1}

    def test_all_ones_top(self):
        lc = linear_closure([LinearForm((2,))], 2)
        got = {f.coeffs for f in lc.members}
        assert got == {(k,) for k in range(0, lc.cap + 1)}

    def test_constant_zero_closure(self):
        lc = linear_closure([LinearForm((0, 0))], 3)
        assert {f.coeffs for f in lc.members} == {(0, 0), (1, 0)}

    def test_contains_identity(self):
        lc = linear_closure([LinearForm((0, 1))], 3)
        assert identity_form(3) in lc.members

    def test_join_meet_subset(self):
        zero = linear_closure([LinearForm((0, 0))], 3)
        twice = linear_closure([LinearForm((0, 1))], 3)
        both = linear_join(zero, twice)
        assert linear_subset(zero, both) and linear_subset(twice, both)
        assert linear_meet(zero, twice).members == \
            linear_closure([identity_form(3)], 3).members

    def test_serialization(self):
        lc = linear_closure([LinearForm((1, 1))], 3)
        obj = linear_clone_to_json(lc)
        assert obj["modulus"] == 3
        assert {"1": 1, "2": 1} in obj["generators"]


class TestSemiaffineLattice:
    def test_modulus_1(self):
        dia = enumerate_semiaffine_lattice(1)
        assert dia.node_count() == 1

    def test_modulus_2_figure(self):
        dia = enumerate_semiaffine_lattice(2)
        assert dia.node_count() == 4
        match_linear_figure(dia, 2, FIG_SA2_NODES, FIG_SA2_EDGES)

    def test_modulus_3_figure(self):
        dia = enumerate_semiaffine_lattice(3)
        assert dia.node_count() == 6
        match_linear_figure(dia, 3, FIG_SA3_NODES, FIG_SA3_EDGES)

    def test_complete_flags(self):
        assert enumerate_semiaffine_lattice(2).complete
        assert enumerate_semiaffine_lattice(3).complete


class TestPhi:
    def test_power_block_collapse(self, fp5):
        c1 = generate([from_counts({4: 1}, fp5)], fp5)
        c2 = generate([from_counts({4: 2}, fp5)], fp5)
        lc1, lc2 = phi_affine(c1), phi_affine(c2)
        zero = linear_closure([LinearForm((0, 0, 0))], 4)
        assert linear_equal(lc1, zero)
        assert linear_equal(lc1, lc2)  # the non-injectivity witness
        assert not c2.members <= c1.members and c1.members <= c2.members

    def test_projection_clone_image(self, fp5):
        delta = generate([projection(fp5)], fp5)
        lc = phi_affine(delta)
        assert linear_equal(lc, linear_closure([identity_form(4)], 4))

    def test_form_of_monomial_drops_last(self, fp5):
        m = from_counts({1: 1, 4: 2}, fp5)
        assert form_of_monomial(m, fp5) == LinearForm((1, 0, 0))


class TestFiber:
    def test_projection_fiber_q3(self, fp3, lattice3):
        lc = linear_closure([identity_form(2)], 2)
        hits = fiber(lc, fp3, diagram=lattice3)
        labels = {node_label(c) for c in hits}
        assert labels == {"x1", "x1*x2^2"}

    def test_constant_zero_fiber_q3(self, fp3, lattice3):
        # both unary-square clones land here, and so does the coatom whose
        # width-2 members carry only even exponents; the three fibers plus
        # the bottom pair and the two singletons account for all 7 nodes
        lc = linear_closure([LinearForm((0,))], 2)
        hits = fiber(lc, fp3, diagram=lattice3)
        labels = {node_label(c) for c in hits}
        assert {"x1^2", "x1^2*x2^2"} <= labels
        assert labels == {"x1^2", "x1^2*x2^2", "x1^2, x1*x2^2"}

    def test_fiber_sizes_sum_to_seven_q3(self, fp3, lattice3):
        sa = enumerate_semiaffine_lattice(2)
        total = sum(len(fiber(node, fp3, diagram=lattice3))
                    for node in sa.nodes)
        assert total == 7

    def test_modulus_mismatch(self, fp3):
        lc = linear_closure([identity_form(4)], 4)
        with pytest.raises(MonocloneError):
            fiber(lc, fp3)
