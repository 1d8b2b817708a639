import itertools

import pytest
from hypothesis import given, strategies as st

from hopfbrauer.perm import (GroupError, Perm, conjugacy_classes, cyclic_group, element_order,
                             enumerate_group, orbits_and_stabilizers, p_parts, p_regular_classes,
                             parse_cycles, symmetric_group)


def perms(n):
    return st.permutations(list(range(n))).map(Perm)


def P(text, n):
    return Perm.from_cycles(text, n)


def brute_order(g):
    k, h = 1, g
    while not h.is_identity():
        h, k = h * g, k + 1
    return k


class TestPerm:
    def test_composition_is_right_to_left(self):
        s, t = P("(1,2)", 3), P("(2,3)", 3)
        # (s*t)(i) = s(t(i)): 2 -> 3 -> 3 and 3 -> 2 -> 1
        assert (s * t)(1) == 2 and (s * t)(2) == 0

    @pytest.mark.parametrize("text,expected", [
        ("()", "()"), ("(1,2,3)", "(1 2 3)"), ("(3 1)(2 4)", "(1 3)(2 4)"), ("(1)(2 3)", "(2 3)"),
    ])
    def test_cycle_round_trip(self, text, expected):
        assert P(text, 4).to_cycles() == expected

    @pytest.mark.parametrize("bad", ["(1,1)", "(0 2)", "(1 2"])
    def test_bad_cycles(self, bad):
        with pytest.raises(GroupError):
            P(bad, 3)

    def test_parse_cycles_lists_nontrivial_cycles(self):
        assert parse_cycles("(1 2)(3)(4 5 6)") == [(1, 2), (4, 5, 6)]

    @given(perms(6), perms(6), perms(6))
    def test_group_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * a.inverse() == Perm.identity(6)
        assert all((a * b)(i) == a(b(i)) for i in range(6))

    @given(perms(7), st.integers(-5, 12))
    def test_power_matches_repeated_product(self, g, k):
        expected = Perm.identity(7)
        base = g if k >= 0 else g.inverse()
        for _ in range(abs(k)):
            expected = expected * base
        assert g**k == expected

    @pytest.mark.parametrize("text,order", [("()", 1), ("(1 2 3)", 3), ("(1 2)(3 4 5)", 6)])
    def test_element_order_examples(self, text, order):
        assert element_order(P(text, 5)) == order

    @given(perms(7))
    def test_element_order_is_brute_force_order(self, g):
        assert element_order(g) == brute_order(g)


def brute_p_parts(g, p):
    """Unique commuting split into powers of g: u a p-element, s p-regular, g = u s."""
    n = brute_order(g)
    hits = []
    for i in range(n):
        for j in range(n):
            u, s = g**i, g**j
            if u * s == g and brute_order(u) in {p**k for k in range(8)} and brute_order(s) % p:
                hits.append((u, s))
    assert len(set(hits)) == 1
    return hits[0]


class TestPParts:
    def test_commuting_cycles(self):
        assert p_parts(P("(1 2)(3 4 5)", 5), 2) == (P("(1 2)", 5), P("(3 4 5)", 5))

    def test_p_regular_element(self):
        g = P("(1 2 3 4 5)", 5)
        assert p_parts(g, 3) == (Perm.identity(5), g)

    def test_six_cycle_at_three(self):
        # brute-force oracle; u is g^4, not g^2
        g = P("(1 2 3 4 5 6)", 6)
        u, s = p_parts(g, 3)
        assert (u, s) == brute_p_parts(g, 3)
        assert u == P("(1 5 3)(2 6 4)", 6) and s == P("(1 4)(2 5)(3 6)", 6)

    @given(perms(7), st.sampled_from([2, 3, 5, 7]))
    def test_against_oracle(self, g, p):
        assert p_parts(g, p) == brute_p_parts(g, p)


class TestGroups:
    @pytest.mark.parametrize("gens,degree,order", [
        (["(1,2)", "(1,2,3)"], 3, 6), ([], 4, 1), (["(1,2,3,4,5)"], 5, 5),
    ])
    def test_enumerate(self, gens, degree, order):
        G = enumerate_group([P(g, degree) for g in gens], degree)
        assert G.order == order
        assert list(G.elements) == sorted(G.elements)

    def test_degree_mismatch(self):
        with pytest.raises(GroupError):
            enumerate_group([P("(1,2)", 3), P("(1,2)", 4)], 3)

    def test_cap(self):
        with pytest.raises(GroupError):
            enumerate_group(symmetric_group(5).generators, 5, cap=100)

    def test_words_evaluate_to_elements(self):
        G = symmetric_group(4)
        for g, w in G.words().items():
            h = G.identity
            for i in w:
                h = h * G.generators[i]
            assert h == g

    def test_symmetric_fixing(self):
        F = symmetric_group(4, fixing=4)
        assert F.order == 6 and all(g(3) == 3 for g in F.elements)


def brute_classes(G):
    seen, out = set(), []
    for g in G.elements:
        if g not in seen:
            cls = {h * g * h.inverse() for h in G.elements}
            seen |= cls
            out.append(cls)
    return out


class TestClasses:
    @pytest.mark.parametrize("G,sizes", [
        (symmetric_group(3), (1, 3, 2)),
        (enumerate_group([], 3), (1,)),
        (symmetric_group(4), (1, 6, 3, 8, 6)),
    ])
    def test_sizes(self, G, sizes):
        assert conjugacy_classes(G).sizes == sizes

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_partition_matches_brute_force(self, n):
        G = symmetric_group(n)
        cc = conjugacy_classes(G)
        assert sorted(map(frozenset, cc.members), key=min) == sorted(map(frozenset, brute_classes(G)), key=min)
        for rep, members, c in zip(cc.representatives, cc.members, cc.centralizer_orders):
            assert rep == min(members)
            assert c * len(members) == G.order

    @pytest.mark.parametrize("n,p,count", [(3, 3, 2), (3, 5, 3), (4, 3, 4)])
    def test_p_regular(self, n, p, count):
        assert len(p_regular_classes(conjugacy_classes(symmetric_group(n)), p)) == count


class TestOrbits:
    def test_trivial_action(self):
        F = symmetric_group(3)
        orbs = orbits_and_stabilizers(F, [0, 1, 2], lambda x, a: x)
        assert [o.points for o in orbs] == [(0,), (1,), (2,)]
        assert all(o.stabilizer.order == 6 for o in orbs)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_natural_action_transversal(self, n):
        F = symmetric_group(n)
        act = lambda i, a: a.inverse()(i)   # right action i.a = a^-1(i)
        (orb,) = orbits_and_stabilizers(F, list(range(n)), act)
        assert len(orb.points) * orb.stabilizer.order == F.order
        for y, t in zip(orb.points, orb.transversal):
            assert act(y, t) == orb.representative
        # distinct cosets t F_x
        cosets = {frozenset(t * c for c in orb.stabilizer.elements) for t in orb.transversal}
        assert len(cosets) == len(orb.points)

    def test_bad_action_detected(self):
        F = cyclic_group(3)
        with pytest.raises(GroupError):
            orbits_and_stabilizers(F, [0, 1, 2], lambda i, a: a(i) if i else 5)
