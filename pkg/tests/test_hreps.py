from fractions import Fraction

import numpy as np
import pytest

from hopfbrauer.cyclotomic import Cyc
from hopfbrauer.hreps import (FormError, HCharacter, IndependenceCertificate, char0_data, character_of,
                              check_form_contract, cyc_rank, decompose, dual_character,
                              dual_permutation, h_brauer_independence, hfactor_check,
                              indicator_char0, indicator_modular, induced_module, invariant_forms,
                              lincom_solvable, nilpotent_part_is_zero, prime_field_scalar,
                              reduction_consistent, trace_character)
from hopfbrauer.meataxe import (chop, is_irreducible, is_isomorphic, module_from_matrices,
                                permutation_module, regular_module)
from hopfbrauer.perm import Perm, element_order

FAMILY = (3, 4, 5)
PRIMES = (3, 5, 7)


def generator_matrices(M):
    """rho of the algebra generators p_y # 1 and 1 # a, a running over generators of F."""
    H = M.H
    F = M.field
    gens = [M.matrix((y, H.one_F)) for y in H.G.elements]
    for a in H.F.generators:
        R = F.zeros((M.dim, M.dim))
        for y in H.G.elements:
            R = F.add(R, M.matrix((y, a)))
        gens.append(R)
    return gens


def hom_dimension(M1, M2):
    """dim Hom_H(M1, M2): solve X rho1(h) = rho2(h) X on generators, entry by entry."""
    F = M1.field
    n1, n2 = M1.dim, M2.dim
    pairs = list(zip(generator_matrices(M1), generator_matrices(M2)))
    cols = []
    for k in range(n2):
        for l in range(n1):
            E = F.zeros((n2, n1))
            E[k, l] = 1
            cols.append(np.concatenate([F.sub(F.matmul(E, A1), F.matmul(A2, E)).ravel()
                                        for A1, A2 in pairs]))
    A = np.stack(cols, axis=1)
    return n1 * n2 - F.rank(A)


class TestOrdinarySimples:
    @pytest.mark.parametrize("n,dims", [(3, [1, 1, 2]), (4, [1, 1, 2, 3, 3]),
                                        (5, [1, 1, 2, 3, 3, 4, 4, 8])])
    def test_dimensions(self, char0, family, n, dims):
        mods = char0[n].modules
        assert sorted(M.dim for M in mods) == dims
        assert sum(d * d for d in dims) == family[n].dimension

    @pytest.mark.parametrize("n", [3, 4])
    def test_schur_brute_force(self, char0, n):
        """End = scalars and Hom = 0 between distinct modules: with the dimension
        count this certifies the full list of simples of the semisimple algebra."""
        mods = char0[n].modules
        for i, M1 in enumerate(mods):
            for j, M2 in enumerate(mods):
                if M1.dim == M2.dim or i == j:
                    assert hom_dimension(M1, M2) == (1 if i == j else 0)

    @pytest.mark.parametrize("key", list(FAMILY) + ["C3", "dualC3", "A4", "Q8"])
    def test_relations(self, char0, key):
        rng = np.random.default_rng(3)
        assert all(M.check_relations(rng, samples=60) for M in char0[key].modules)

    @pytest.mark.parametrize("key", list(FAMILY) + ["C3", "A4", "Q8"])
    def test_trace_oracle(self, char0, family, extra, key):
        H = family.get(key) or extra[key]
        c0 = char0[key]
        for M, chi in zip(c0.modules, c0.characters):
            assert trace_character(M, c0.ctx.lift, H.basis) == chi.values

    def test_h3_two_dimensional_value(self, char0, family):
        H = family[3]
        z = Perm.from_cycles("(1,2,3)", 3)
        chi = next(c for c, M in zip(char0[3].characters, char0[3].modules) if M.dim == 2)
        assert chi((z, H.one_F)) == 1
        assert chi((z * z, H.one_F)) == 1
        assert chi((H.one_G, H.one_F)) == 0

    @pytest.mark.parametrize("n", FAMILY)
    def test_idempotent_values(self, char0, family, n):
        H = family[n]
        for M, chi in zip(char0[n].modules, char0[n].characters):
            for y in H.G.elements:
                expect = M.stab_dim if y in M.orbit.point_index else 0
                assert chi((y, H.one_F)) == expect
            assert chi.evaluate(H.unit()) == M.dim

    @pytest.mark.parametrize("n", FAMILY)
    def test_support_lies_in_orbit_stabilizers(self, char0, family, n):
        H = family[n]
        bp = set(H.b_prime)
        for M, chi in zip(char0[n].modules, char0[n].characters):
            assert set(chi.values) <= {w for w in bp if w[0] in M.orbit.point_index}
            for w in H.basis[::3]:
                if w not in bp:
                    assert nilpotent_part_is_zero(M, w)


class TestDuality:
    @pytest.mark.parametrize("key", list(FAMILY) + ["C3", "dualC3", "A4", "Q8"])
    def test_dual_is_an_involutive_permutation(self, char0, key):
        chars = char0[key].characters
        perm = dual_permutation(chars)
        assert all(perm[perm[i]] == i for i in range(len(perm)))
        for chi in chars:
            assert dual_character(dual_character(chi)) == chi

    def test_c3_swaps_nontrivial_characters(self, char0):
        assert dual_permutation(char0["C3"].characters) == [0, 2, 1]


class TestIndicators:
    @pytest.mark.parametrize("key,expected", [
        (3, [1, 1, 1]), (4, [1] * 5), (5, [1] * 8),
        ("C3", [1, 0, 0]), ("dualC3", [1, 0, 0]), ("A4", [1, 0, 0, 1]), ("Q8", [1, 1, 1, 1, -1]),
    ])
    def test_char0(self, char0, key, expected):
        assert [indicator_char0(chi) for chi in char0[key].characters] == expected

    @pytest.mark.parametrize("key", list(FAMILY) + ["C3", "dualC3", "A4", "Q8"])
    def test_form_solver_matches_integral_formula(self, char0, key):
        c0 = char0[key]
        assert [indicator_modular(M) for M in c0.modules] == \
            [indicator_char0(chi) for chi in c0.characters]

    @pytest.mark.parametrize("key", list(FAMILY) + ["A4", "Q8"])
    def test_nonzero_exactly_when_self_dual(self, char0, key):
        for chi in char0[key].characters:
            assert (indicator_char0(chi) != 0) == (dual_character(chi) == chi)

    def test_skew_form_on_q8(self, char0):
        M = char0["Q8"].modules[-1]
        B = invariant_forms(M)[0].reshape(M.dim, M.dim)
        F = M.field
        assert np.array_equal(B, F.neg(B.T))
        assert check_form_contract(M, B)

    def test_non_self_dual_has_no_form(self, char0):
        assert invariant_forms(char0["C3"].modules[1]).shape[0] == 0

    def test_reducible_module_is_rejected(self, char0, family):
        H = family[3]
        ctx = char0[3].ctx
        W = regular_module(H.fg.orbits[0].stabilizer, ctx.field)
        with pytest.raises(FormError):
            indicator_modular(induced_module(H, 0, W))

    @pytest.mark.parametrize("n,p", [(n, p) for n in FAMILY for p in PRIMES])
    def test_modular_family(self, modular, n, p):
        assert all(indicator_modular(M) == 1 for M in modular[n, p].modules)


class TestModular:
    @pytest.mark.parametrize("n,p,dims", [
        (3, 3, [1, 1, 2]), (4, 3, [1, 1, 3, 3]), (5, 3, [1, 1, 3, 3, 4, 4]),
        (4, 5, [1, 1, 2, 3, 3]), (5, 7, [1, 1, 2, 3, 3, 4, 4, 8]),
    ])
    def test_dimensions(self, modular, n, p, dims):
        assert sorted(M.dim for M in modular[n, p].modules) == dims

    @pytest.mark.parametrize("n,p", [(3, 3), (4, 3), (4, 5), (5, 3)])
    def test_simple_by_meataxe(self, modular, n, p):
        rng = np.random.default_rng(0)
        for M in modular[n, p].modules:
            assert is_irreducible(module_from_matrices(M.field, generator_matrices(M)), rng)

    @pytest.mark.parametrize("n,p", [(n, p) for n in FAMILY for p in PRIMES])
    def test_trace_oracle_and_reduction(self, modular, family, n, p):
        md = modular[n, p]
        for M, phi in zip(md.modules, md.characters):
            assert trace_character(M, md.ctx.lift, family[n].b_p_regular(p)) == phi.values
            assert reduction_consistent(phi, M, md.ctx.lift)

    @pytest.mark.parametrize("n,p", [(4, 3), (5, 3)])
    def test_eigenvalues_ignore_the_p_part(self, modular, family, n, p):
        md = modular[n, p]
        mixed = [w for w in family[n].b_prime if element_order(w[1]) % p == 0]
        assert mixed
        assert all(hfactor_check(M, w, p, md.ctx.m) for M in md.modules for w in mixed)

    @pytest.mark.parametrize("n,p", [(n, p) for n in FAMILY for p in PRIMES])
    def test_independence_and_span(self, char0, modular, n, p):
        md = modular[n, p]
        assert h_brauer_independence(md.characters).full_rank
        assert lincom_solvable(char0[n].characters, md.characters, p)

    def test_independence_negative_control(self, modular):
        chars = modular[4, 3].characters
        cert = h_brauer_independence(chars + chars[:1])
        assert isinstance(cert, IndependenceCertificate)
        assert not cert.full_rank and cert.rank == len(chars)

    def test_field_scalars(self):
        assert prime_field_scalar(1, 7) == 1
        assert prime_field_scalar(Fraction(1, 2), 7) == 4
        with pytest.raises(ZeroDivisionError):
            prime_field_scalar(Fraction(1, 3), 3)

    def test_cyc_rank(self):
        z = Cyc.zeta(3)
        one = Cyc.rational(1)
        assert cyc_rank([[one, z], [z, z * z]]) == 1
        assert cyc_rank([[one, z], [one, z * z]]) == 2


class TestDecomposition:
    def test_h3_mod_3_is_identity(self, char0, modular):
        dec = decompose(char0[3], modular[3, 3])
        assert dec.matrix == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert dec.cartan.det == 1

    def test_h4_mod_3(self, char0, modular):
        dec = decompose(char0[4], modular[4, 3])
        assert dec.matrix == [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        assert dec.cartan.certificate == "3^1"

    def test_h5_mod_3(self, char0, modular):
        dec = decompose(char0[5], modular[5, 3])
        assert dec.cartan.det == 9 and dec.cartan.exponent == 2
        assert dec.block_diagonal and dec.blocks_agree

    @pytest.mark.parametrize("n,p", [(n, p) for n in FAMILY for p in PRIMES])
    def test_block_structure(self, char0, modular, n, p):
        dec = decompose(char0[n], modular[n, p])
        assert dec.block_diagonal and dec.blocks_agree
        assert dec.cartan.exponent is not None
        if p > n:
            assert dec.matrix == np.eye(len(dec.matrix), dtype=int).tolist()


class TestInducedModules:
    @pytest.mark.parametrize("make", [regular_module, permutation_module])
    def test_brauer_character_is_additive(self, family, modular, make):
        """Inducing a non-simple stabilizer module gives the sum over its composition factors."""
        H = family[4]
        md = modular[4, 3]
        ctx = md.ctx
        W = make(H.fg.orbits[0].stabilizer, ctx.field)
        M = induced_module(H, 0, W)
        rng = np.random.default_rng(8)
        assert M.check_relations(rng)
        got = trace_character(M, ctx.lift, H.b_p_regular(3))
        expect = {}
        simples = [(N, phi) for N, phi in zip(md.modules, md.characters) if N.orbit_index == 0]
        for fac in chop(W, rng):
            hits = [phi for N, phi in simples
                    if N.stab_dim == fac.module.dim and is_isomorphic(N.stab_module, fac.module, rng)]
            assert len(hits) == 1
            for w, v in hits[0].values.items():
                expect[w] = expect.get(w, Cyc.rational(0)) + v * fac.multiplicity
        expect = {w: v for w, v in expect.items() if not v.is_zero()}
        assert got == expect

    def test_wrong_group_rejected(self, family, modular):
        H = family[4]
        W = regular_module(H.fg.orbits[1].stabilizer, modular[4, 3].ctx.field)
        with pytest.raises(ValueError):
            induced_module(H, 0, W)


def test_character_equality_ignores_explicit_zeros(family):
    H = family[3]
    w = H.basis[0]
    a = HCharacter(H, {w: Cyc.rational(1), H.basis[1]: Cyc.rational(0)})
    b = HCharacter(H, {w: Cyc.rational(1)})
    assert a == b


def test_character_of_matches_without_explicit_modules(char0, family):
    lean = char0_data(family[4], np.random.default_rng(1), explicit=False)
    assert [chi.values for chi in lean.characters] == [chi.values for chi in char0[4].characters]
    assert all(M.stab_module is None for M in lean.modules)
    assert character_of(lean.modules[0], lean.ctx) == lean.characters[0]
