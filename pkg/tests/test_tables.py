import itertools

from monoclone.monomials import NEG_INF, evaluate, from_counts
from monoclone.tables import (ABSORB, compose, domain, monomial_table,
                              points, projection_table, substitute_slot,
                              table_closure, verify_composition_closure)


def test_domain_and_points(fp3):
    assert domain(3) == (ABSORB, 0, 1)
    assert len(points(3, 2)) == 9


def test_projection_tables(fp3):
    t = projection_table(2, 0, 3)
    assert all(t[i] == pt[0] for i, pt in enumerate(points(3, 2)))


def test_monomial_table_matches_evaluate(fp4):
    # repeated-addition seeding agrees with the modular-sum evaluator
    for counts in ({1: 2}, {2: 1, 3: 1}, {1: 1, 2: 1, 3: 1}):
        m = from_counts(counts, fp4)
        tab = monomial_table(m.exponents(), fp4)
        for i, pt in enumerate(points(4, m.width)):
            model = [NEG_INF if x == ABSORB else x for x in pt]
            v = evaluate(m, model, fp4)
            assert tab[i] == (ABSORB if v == NEG_INF else v)


def test_compose_with_projections_is_permutation(fp3):
    m = from_counts({1: 1, 2: 1}, fp3)
    tab = monomial_table(m.exponents(), fp3)
    swapped = compose(tab, 2, [projection_table(2, 1, 3),
                               projection_table(2, 0, 3)], 2, 3)
    direct = monomial_table((2, 1), fp3)
    assert swapped == direct


def test_substitute_slot_matches_monomial_substitution(fp3):
    m = from_counts({1: 1, 2: 1}, fp3)
    tab = monomial_table(m.exponents(), fp3)
    # plug the whole monomial into the exponent-1 slot (position 0)
    stab = substitute_slot(tab, 2, 0, tab, 2, 3)
    from monoclone.monomials import substitute
    expected_m = substitute(m, 1, m, fp3)
    expected = monomial_table(expected_m.exponents(), fp3)
    # argument order may differ by a permutation; compare canonical sets
    perms = set()
    for perm in itertools.permutations(range(3)):
        perms.add(tuple(stab[_pt_index(tuple(pt[p] for p in perm), 3)]
                        for pt in points(3, 3)))
    assert expected in perms


def _pt_index(pt, q):
    idx = 0
    for v in pt:
        idx = idx * q + (v + 1)
    return idx


def test_closure_contains_seeds_and_projections(fp3):
    g = from_counts({1: 1, 2: 1}, fp3)
    closure = table_closure([g], fp3, max_arity=3)
    assert (1, projection_table(1, 0, 3)) in closure
    assert (2, monomial_table(g.exponents(), fp3)) in closure


def test_closure_is_composition_closed(fp3):
    g = from_counts({1: 1, 2: 1}, fp3)
    closure = table_closure([g], fp3, max_arity=3)
    assert verify_composition_closure(closure, fp3)


def test_fourth_power_clone_has_no_real_binary_part(fp5):
    # the unary fourth power generates nothing essentially binary
    g = from_counts({4: 1}, fp5)
    closure = table_closure([g], fp5, max_arity=2)
    for arity, tab in closure:
        if arity != 2:
            continue
        depends_on = set()
        for i, pt in enumerate(points(5, 2)):
            for j in range(2):
                for v in domain(5):
                    if v == pt[j]:
                        continue
                    other = list(pt)
                    other[j] = v
                    if tab[_pt_index(tuple(other), 5)] != tab[i]:
                        depends_on.add(j)
        assert len(depends_on) <= 1
