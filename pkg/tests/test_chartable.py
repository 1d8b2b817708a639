import numpy as np
import pytest

from hopfbrauer.chartable import character_table, dixon_prime, structure_constants
from hopfbrauer.cyclotomic import Cyc
from hopfbrauer.gf import is_prime
from hopfbrauer.perm import Perm, conjugacy_classes, cyclic_group, enumerate_group, symmetric_group


def complex_table(ct):
    return np.array([[complex(v) for v in row] for row in ct.rows])


def standard_rep_trace(g):
    """Trace of the 2-dim standard representation of S3: fixed points minus one."""
    return sum(1 for i in range(3) if g(i) == i) - 1


class TestExamples:
    def test_cyclic(self):
        ct = character_table(cyclic_group(3))
        z = cyclic_group(3).generators[0]
        vals = {tuple(ct.value(i, g) for g in (z, z * z)) for i in range(3)}
        w = Cyc.zeta(3)
        assert vals == {(Cyc.rational(1), Cyc.rational(1)), (w, w * w), (w * w, w)}

    def test_s3(self):
        ct = character_table(symmetric_group(3))
        assert ct.degrees == [1, 1, 2]
        assert [int(v.to_rational()) for v in ct.rows[2]] == [2, 0, -1]
        assert ct.rows[0] == [1, 1, 1] and ct.rows[1] == [1, -1, 1]
        for g in symmetric_group(3).elements:
            assert ct.value(2, g) == standard_rep_trace(g)

    def test_s4_degrees(self):
        assert character_table(symmetric_group(4)).degrees == [1, 1, 2, 3, 3]

    def test_trivial_group(self):
        ct = character_table(enumerate_group([], 2))
        assert ct.rows == [[1]]

    @pytest.mark.parametrize("n,p,shape", [(3, 3, (3, 2)), (3, 5, (3, 3)), (4, 3, (5, 4))])
    def test_restriction_shapes(self, n, p, shape):
        ct = character_table(symmetric_group(n))
        cols, rows = ct.restrict_to_p_regular(p)
        assert (len(rows), len(rows[0])) == shape


@pytest.mark.parametrize("G", [
    symmetric_group(3), symmetric_group(4), symmetric_group(5), cyclic_group(5),
    enumerate_group([Perm.from_cycles("(1,2,3,4)(5,6,7,8)", 8),
                     Perm.from_cycles("(1,5,3,7)(2,8,4,6)", 8)], 8, "Q8"),
    enumerate_group([Perm.from_cycles("(1,2,3)", 4), Perm.from_cycles("(1,2)(3,4)", 4)], 4, "A4"),
])
def test_orthogonality_in_floating_point(G):
    """Both orthogonality relations, checked numerically outside Cyc arithmetic."""
    ct = character_table(G)
    X = complex_table(ct)
    sizes = np.array(ct.classes.sizes)
    rows = (X * sizes) @ X.conj().T / G.order
    assert np.allclose(rows, np.eye(len(X)))
    cent = np.array(ct.classes.centralizer_orders)
    cols = X.conj().T @ X
    assert np.allclose(cols, np.diag(cent))


def test_permutation_character_decomposes():
    G = symmetric_group(4)
    ct = character_table(G)
    perm_char = [sum(1 for i in range(4) if g(i) == i) for g in ct.classes.representatives]
    mult = [ct.inner([Cyc.rational(v) for v in perm_char], row) for row in ct.rows]
    # trivial plus the reflection character (degree 3, value 1 on transpositions)
    assert [int(m.to_rational()) for m in mult] == [1, 0, 0, 1, 0]
    assert ct.rows[3][1] == 1


def test_structure_constants_count_products():
    G = symmetric_group(4)
    cc = conjugacy_classes(G)
    a = structure_constants(cc)
    for r in range(len(cc)):
        for s in range(len(cc)):
            for t, z in enumerate(cc.representatives):
                n = sum(1 for x in cc.members[r] for y in cc.members[s] if x * y == z)
                assert a[r, s, t] == n


def test_dixon_prime():
    q = dixon_prime(24, 12, 8)
    assert is_prime(q) and (q - 1) % 12 == 0 and q > 2 * 4 * 8
