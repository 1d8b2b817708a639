import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfbrauer.bismash import BismashProduct, HElem, format_basis
from hopfbrauer.factored import sn_family
from hopfbrauer.perm import Perm, element_order


def P(text, n):
    return Perm.from_cycles(text, n)


def brute_actions(fg, x, a):
    """Solve x a = b y in Q with b in F, y in G; returns (x |> a, x <| a)."""
    hits = [(b, y) for b in fg.F.elements for y in fg.G.elements if b * y == x * a]
    assert len(hits) == 1
    return hits[0]


def left_regular(H, w):
    n = H.dimension
    L = np.zeros((n, n), dtype=np.int64)
    for j, v in enumerate(H.basis):
        wv = H.mul_basis(w, v)
        if wv is not None:
            L[H.index[wv], j] = 1
    return L


class TestExamples:
    def test_h3_products(self, family):
        H = family[3]
        e, t = P("()", 3), P("(1,2)", 3)
        z = P("(1,2,3)", 3)
        assert H.elem((z, t)) * H.elem((z * z, t)) == H.elem((z, e))
        assert (H.elem((z, t)) * H.elem((z, t))).is_zero()

    def test_h3_antipode(self, family):
        H = family[3]
        e, z = P("()", 3), P("(1,2,3)", 3)
        assert H.antipode((z, e)) == (z * z, e)
        for a in H.F.elements:
            assert H.antipode((e, a)) == (e, a.inverse())

    def test_format(self):
        assert format_basis((P("(1,2,3)", 3), P("(1,2)", 3))) == "p[(1 2 3)]#(1 2)"

    def test_dimension(self, family):
        assert [family[n].dimension for n in (3, 4, 5)] == [6, 24, 120]


@pytest.mark.parametrize("n", [3, 4])
def test_multiplication_matches_brute_force_actions(n, family):
    H = family[n]
    fg = H.fg
    for (x, a) in H.basis:
        b, y = brute_actions(fg, x, a)
        assert fg.rhd(x, a) == b and fg.lhd(x, a) == y
        for c in H.F.elements:
            for yy in H.G.elements:
                expect = (x, a * c) if yy == y else None
                assert H.mul_basis((x, a), (yy, c)) == expect


@pytest.mark.parametrize("n", [3, 4, 5])
def test_power_law_and_minimal_polynomial(n, family):
    H = family[n]
    step = 1 if n < 5 else 7
    for w in H.basis[::step]:
        L = left_regular(H, w)
        m = element_order(w[1])
        if w in set(H.b_prime):
            assert H.power(w, m + 1) == H.elem(w)
            P1 = np.linalg.matrix_power(L, m + 1)
            assert np.array_equal(P1, L)
            for j in range(1, m):
                assert not np.array_equal(np.linalg.matrix_power(L, j + 1), L)
        else:
            assert H.power(w, 2).is_zero()
            assert not np.linalg.matrix_power(L, 2).any()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_bprime_is_the_stabilizer_support(n, family):
    H = family[n]
    bp = set(H.b_prime)
    assert bp == {w for w in H.basis if H.mul_basis(w, w) is not None}
    assert {H.antipode(w) for w in bp} == bp
    assert len(bp) == sum(orb.stabilizer.order * len(orb.points) for orb in H.fg.orbits)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_antipode_on_bprime_is_conjugation(n, family):
    H = family[n]
    for y, a in H.b_prime:
        assert H.antipode((y, a)) == (y.inverse(), y * a.inverse() * y.inverse())


@pytest.mark.parametrize("n", [3, 4])
def test_antipode_is_an_involution(n, family):
    H = family[n]
    assert all(H.antipode(H.antipode(w)) == w for w in H.basis)


@pytest.mark.parametrize("n", [3, 4])
def test_comultiplication_of_group_like_idempotent(n, family):
    H = family[n]
    one = H.one_G
    for a in H.F.elements:
        terms = H.comultiply((one, a))
        expect = {((u, H.fg.rhd(u.inverse(), a)), (u.inverse(), a)) for u in H.G.elements}
        assert set(terms) == expect


@pytest.mark.parametrize("n", [3, 4])
def test_counit_law(n, family):
    H = family[n]
    for w in H.basis:
        left = HElem(H, [(r, H.counit(l)) for l, r in H.comultiply(w)])
        right = HElem(H, [(l, H.counit(r)) for l, r in H.comultiply(w)])
        assert left == H.elem(w) == right


@pytest.mark.parametrize("n", [3, 4, 5])
def test_integral(n, family):
    H = family[n]
    Lam = H.integral()
    assert H.counit_elem(Lam) == 1
    for w in H.basis:
        prod = H.elem(w) * Lam
        if w[0] == H.one_G:
            assert prod == Lam
        else:
            assert prod.is_zero()


def test_integral_trivial_F(extra):
    H = extra["dualC3"]
    assert H.integral() == H.elem((H.one_G, H.one_F))


def test_all_axioms_hold_on_extra_groups(extra):
    for H in extra.values():
        assert all(H.axiom_report().values())


def test_different_algebras_do_not_mix(family):
    a = family[3].unit()
    b = family[4].unit()
    with pytest.raises(TypeError):
        a + b
    with pytest.raises(TypeError):
        a * b


def test_unit(family):
    H = family[4]
    for w in H.basis:
        assert H.unit() * H.elem(w) == H.elem(w) == H.elem(w) * H.unit()
    assert H.antipode_elem(H.unit()) == H.unit()


def elements(H):
    coeff = st.integers(-3, 3)
    basis = st.sampled_from(H.basis)
    return st.lists(st.tuples(basis, coeff), max_size=5).map(lambda t: HElem(H, t))


H4_FOR_PROPS = BismashProduct(sn_family(4), verify=False)


@given(elements(H4_FOR_PROPS), elements(H4_FOR_PROPS), elements(H4_FOR_PROPS), st.integers(-4, 4))
def test_bilinear_and_associative(u, v, w, c):
    assert (u + v) * w == u * w + v * w
    assert u * (v + w) == u * v + u * w
    assert (u * c) * v == (u * v) * c
    assert (u * v) * w == u * (v * w)


@given(elements(H4_FOR_PROPS), elements(H4_FOR_PROPS))
def test_antipode_reverses_products(u, v):
    H = H4_FOR_PROPS
    assert H.antipode_elem(u * v) == H.antipode_elem(v) * H.antipode_elem(u)
    assert H.counit_elem(u * v) == H.counit_elem(u) * H.counit_elem(v)


@given(elements(H4_FOR_PROPS))
def test_antipode_axiom(u):
    """m(S (x) id)Delta = eps(.) 1 on arbitrary elements."""
    H = H4_FOR_PROPS
    acc = HElem(H, {})
    for w, c in u.terms.items():
        for l, r in H.comultiply(w):
            acc = acc + (H.elem(H.antipode(l)) * H.elem(r)).scale(c)
    assert acc == H.unit().scale(H.counit_elem(u))
