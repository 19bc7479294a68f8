import itertools

import pytest

from monoclone.engine import CapPolicy, equal, generate, member, subset
from monoclone.errors import MonocloneError
from monoclone.fields import FieldParam
from monoclone.hasse import node_label
from monoclone.lattice import (ascending_chain, atoms, coatom_member, coatoms,
                               divisor_interval, enumerate_lattice,
                               idempotent_interval, lattice_is_finite,
                               single_generator, single_generator_derivations)
from monoclone.monomials import from_counts, is_idempotent, parse_monomial, projection

from figures import (FIG_Q2_EDGES, FIG_Q2_NODES, FIG_Q3_EDGES, FIG_Q3_NODES,
                     FIG_Q4_EDGES, FIG_Q4_NODES, match_monomial_figure)


class TestEnumeration:
    def test_q2(self, fp2):
        dia = enumerate_lattice(fp2)
        assert dia.node_count() == 2
        assert len(dia.edges) == 1
        match_monomial_figure(dia, fp2, FIG_Q2_NODES, FIG_Q2_EDGES)

    def test_q3_matches_figure_with_labels(self, fp3, lattice3):
        match_monomial_figure(lattice3, fp3, FIG_Q3_NODES, FIG_Q3_EDGES)
        labels = {frozenset(l.strip() for l in node_label(n).split(","))
                  for n in lattice3.nodes}
        expected = {frozenset(l.strip() for l in expr.split(","))
                    for expr in FIG_Q3_NODES}
        assert labels == expected

    def test_q4_matches_figure(self, fp4, lattice4):
        assert lattice4.node_count() == 12
        match_monomial_figure(lattice4, fp4, FIG_Q4_NODES, FIG_Q4_EDGES)

    def test_bottom_and_top(self, fp3, lattice3):
        assert len(lattice3.nodes[lattice3.bottom].members) == 1
        top = lattice3.nodes[lattice3.top]
        assert all(n.members <= top.members for n in lattice3.nodes)

    def test_partial_flag_and_witness(self, fp5):
        dia = enumerate_lattice(fp5, width_bound=2)
        assert not dia.complete
        assert len(dia.chain_witness) == 3
        assert dia.chain_witness[0] == from_counts({2: 1}, fp5)

    def test_complete_flag_squarefree(self, fp3, lattice3):
        assert lattice3.complete


class TestAtoms:
    def test_q3(self, fp3):
        got = {node_label(c) for c in atoms(fp3)}
        assert got == {"x1*x2^2", "x1^2"}

    def test_q4(self, fp4):
        got = {node_label(c) for c in atoms(fp4)}
        assert got == {"x1*x2^3", "x1^2", "x1^3"}

    def test_q5(self, fp5):
        got = {node_label(c) for c in atoms(fp5)}
        assert got == {"x1*x2^4", "x1^3", "x1^4"}

    def test_q2(self, fp2):
        got = atoms(fp2)
        assert len(got) == 1 and node_label(got[0]) == "x1*x2"

    def test_atoms_are_minimal(self, fp5):
        # every atom's proper nonbottom member regenerates the atom
        for c in atoms(fp5):
            for m in c.members:
                if m == projection(fp5):
                    continue
                assert equal(generate([m], fp5, c.cap), c).value


class TestCoatoms:
    @pytest.mark.parametrize("q,count", [(3, 2), (4, 2), (5, 2), (7, 5),
                                         (8, 2), (13, 5)])
    def test_counts(self, q, count):
        fp = FieldParam.from_q(q)
        descriptors = coatoms(fp)
        assert len(descriptors) == count
        l = len(fp.primes)
        assert count == 2**l - 1 + l

    def test_q2_rejected(self, fp2):
        with pytest.raises(MonocloneError):
            coatoms(fp2)

    def test_member_examples_q7(self):
        fp7 = FieldParam.from_q(7)
        assert coatom_member(from_counts({2: 2}, fp7), (1,), fp7)
        assert coatom_member(from_counts({1: 1, 2: 1}, fp7), (1,), fp7)
        assert not coatom_member(from_counts({1: 2, 2: 1}, fp7), (1,), fp7)

    def test_kd_clone_matches_node_q3(self, fp3, lattice3):
        cap = lattice3.nodes[0].cap
        kd = [d for d in coatoms(fp3) if d.kind == "kd"][0]
        clone = kd.clone(fp3, cap)
        node_sets = {n.members for n in lattice3.nodes}
        assert clone.members in node_sets

    def test_kd_predicate_agrees_with_generate_q4(self, fp4):
        kd = [d for d in coatoms(fp4) if d.kind == "kd"][0]
        cap = CapPolicy(2 * fp4.modulus + 4)
        swept = kd.clone(fp4, cap)
        regenerated = generate(swept.generators, fp4, cap)
        assert regenerated.members == swept.members


class TestDivisorInterval:
    def test_q3(self, fp3):
        di = divisor_interval(fp3)
        assert di.divisors == (1, 2)
        assert di.anti_isomorphic
        assert subset(di.clone_of(2), di.clone_of(1)).value

    def test_q5(self, fp5):
        di = divisor_interval(fp5)
        assert di.divisors == (1, 2, 4)
        assert di.anti_isomorphic and di.exact
        assert di.inclusions[(4, 2)] and di.inclusions[(2, 1)]
        assert not di.inclusions[(2, 4)]

    def test_q13_certificates(self):
        di = divisor_interval(FieldParam.from_q(13))
        assert di.divisors == (1, 2, 3, 4, 6, 12)
        assert di.anti_isomorphic
        for a, b in itertools.product(di.divisors, repeat=2):
            assert di.inclusions[(a, b)] == (a % b == 0)

    def test_q2_rejected(self, fp2):
        with pytest.raises(MonocloneError):
            divisor_interval(fp2)


class TestAscendingChain:
    def test_q5_example(self, fp5):
        chain = ascending_chain(fp5, 3)
        assert [node_label(c) for c in chain] == \
            ["x1^2", "x1^2*x2^2*x3^2", "x1^2*x2^2*x3^2*x4^2*x5^2"]
        for small, big in zip(chain, chain[1:]):
            assert subset(small, big).value
            assert not equal(small, big).value

    def test_q9_example(self):
        fp9 = FieldParam.from_q(9)
        chain = ascending_chain(fp9, 2)
        assert sorted(str(g) for g in chain[0].generators) == ["x1^4"]
        assert sorted(str(g) for g in chain[1].generators) == \
            ["x1^4*x2^4*x3^4"]

    def test_squarefree_rejected(self):
        for q in (7, 8):
            fp = FieldParam.from_q(q)
            with pytest.raises(MonocloneError, match="square-free"):
                ascending_chain(fp, 2)

    def test_is_finite(self, fp3, fp5):
        assert lattice_is_finite(fp3)
        assert not lattice_is_finite(fp5)
        assert lattice_is_finite(FieldParam.from_q(7))
        assert lattice_is_finite(FieldParam.from_q(8))


class TestIdempotentInterval:
    def test_q3_chain(self, fp3):
        dia = idempotent_interval(fp3)
        assert [node_label(n) for n in dia.nodes] == \
            ["x1", "x1*x2^2", "x1*x2*x3"]
        assert sorted(dia.edges) == [(0, 1), (1, 2)]

    def test_q4_chain(self, fp4):
        dia = idempotent_interval(fp4)
        assert dia.node_count() == 3
        top = dia.nodes[dia.top]
        expected_top = generate([from_counts({1: 4}, fp4)], fp4,
                                top.cap)
        assert top.members == expected_top.members

    def test_q5_finite_and_witnessed(self, fp5):
        dia = idempotent_interval(fp5)
        witness = from_counts({1: 1, 4: 1}, fp5)
        bottom = dia.nodes[dia.bottom]
        for node in dia.nodes:
            if node is not bottom:
                assert witness in node.members

    def test_all_nodes_idempotent(self, fp4):
        dia = idempotent_interval(fp4)
        for node in dia.nodes:
            assert all(is_idempotent(m, fp4) for m in node.members)


class TestSingleGenerator:
    def test_example_q3(self, fp3):
        m1 = from_counts({1: 1, 2: 1}, fp3)
        m2 = from_counts({1: 3}, fp3)
        m = single_generator(m1, m2, fp3)
        assert m == from_counts({1: 3, 2: 3}, fp3)
        cap = CapPolicy(2 * fp3.modulus + 6)
        assert equal(generate([m1, m2], fp3, cap), generate([m], fp3, cap)).value

    def test_self_pair_q5(self, fp5):
        g = from_counts({1: 1, 4: 1}, fp5)
        m = single_generator(g, g, fp5)
        assert m == from_counts({1: 1, 4: 3}, fp5)
        cap = CapPolicy(2 * fp5.modulus + 4)
        assert equal(generate([m], fp5, cap), generate([g], fp5, cap)).value

    def test_projection_is_identity(self, fp5):
        m2 = from_counts({1: 1, 4: 1}, fp5)
        assert single_generator(projection(fp5), m2, fp5) == m2

    def test_non_idempotent_rejected(self, fp5):
        with pytest.raises(MonocloneError):
            single_generator(from_counts({2: 1}, fp5),
                             from_counts({1: 1}, fp5), fp5)

    def test_derivations_verify(self, fp4):
        from monoclone import derive
        m1 = from_counts({1: 1, 3: 1}, fp4)
        m2 = from_counts({2: 2}, fp4)
        m = single_generator(m1, m2, fp4)
        fwd, b1, b2 = single_generator_derivations(m1, m2, fp4)
        assert derive.verify_membership(fwd, m, [m1, m2], fp4)
        assert derive.verify_membership(b1, m1, [m], fp4)
        assert derive.verify_membership(b2, m2, [m], fp4)
