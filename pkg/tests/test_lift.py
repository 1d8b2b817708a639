import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfbrauer.cyclotomic import Cyc
from hopfbrauer.gf import field
from hopfbrauer.lift import LiftError, brauer_value, build_lift, eigen_multiplicities


class TestBuildLift:
    def test_gf7_cube_roots(self):
        L = build_lift(7, 3)
        assert L.d == 1 and L.omega_bar in (2, 4)
        assert L.omega_bar == 2  # primitive element 3, 3^2 = 2
        assert L.lift(L.omega_bar) == Cyc.zeta(3)

    def test_gf9_fourth_roots(self):
        L = build_lift(3, 4)
        assert L.d == 2 and L.field.q == 9

    def test_trivial(self):
        L = build_lift(5, 1)
        assert L.lift(1) == 1

    def test_rejects_non_coprime(self):
        with pytest.raises(LiftError):
            build_lift(3, 6)

    @pytest.mark.parametrize("p,m", [(7, 3), (3, 4), (5, 12), (7, 6), (3, 8)])
    def test_round_trip_and_multiplicative(self, p, m):
        L = build_lift(p, m)
        F = L.field
        assert F.element_order(L.omega_bar) == m
        for j in range(m):
            x = L.power(j)
            assert L.reduce(L.lift(x)) == x
            for k in range(m):
                assert L.lift(int(F.mul(x, L.power(k)))) == L.lift(x) * L.lift(L.power(k))


class TestBrauerValue:
    def test_identity(self):
        L = build_lift(7, 3)
        assert brauer_value(np.eye(4, dtype=np.int64), L) == 4

    def test_diagonal(self):
        L = build_lift(7, 3)
        assert brauer_value(np.diag([2, 4]), L) == -1

    def test_three_cycle(self):
        L = build_lift(7, 3)
        A = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        assert brauer_value(A, L) == 0
        assert eigen_multiplicities(A, L) == {0: 1, 1: 1, 2: 1}

    def test_not_diagonalizable(self):
        L = build_lift(7, 3)
        with pytest.raises(LiftError):
            brauer_value(np.array([[1, 1], [0, 1]]), L)

    def test_nilpotent_allowed_when_singular(self):
        L = build_lift(7, 3)
        A = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 2]])
        assert eigen_multiplicities(A, L, singular=True) == {1: 1, -1: 2}

    @given(st.integers(0, 2**32 - 1), st.sampled_from([(7, 3), (13, 12), (3, 4)]))
    def test_class_function_and_reduction(self, seed, pm):
        p, m = pm
        L = build_lift(p, m)
        F = L.field
        rng = np.random.default_rng(seed)
        n = 4
        D = np.diag([L.power(int(j)) for j in rng.integers(0, m, n)])
        while True:
            P = F.random(rng, (n, n))
            if F.rank(P) == n:
                break
        A = F.matmul(P, F.matmul(D, F.inverse(P)))
        v = brauer_value(A, L)
        assert v == brauer_value(D, L)
        assert L.reduce(v) == F.trace(A)
