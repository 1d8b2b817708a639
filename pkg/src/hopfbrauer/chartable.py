"""Ordinary character tables by the Dixon-Schneider method.

Class sums act on the centre of the group algebra through the structure
constants a[r][s][t] = #{(x, y) in C_r x C_s : x y = z_t}.  The central
characters are their common eigenvectors; we find them over a prime field
GF(q) with q = 1 (mod exp G) and lift the resulting values into Z[zeta_e]
through the eigenvalue multiplicities of each class representative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cyclotomic import Cyc
from .gf import GF, field, is_prime
from .perm import ConjClasses, PermGroup, conjugacy_classes, p_regular_classes


class CharTableError(RuntimeError):
    pass


@dataclass(eq=False)
class CharTable:
    group: PermGroup
    classes: ConjClasses
    exponent: int
    rows: list[list[Cyc]]
    prime: int  # the auxiliary prime the eigenvectors were computed over

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def degrees(self) -> list[int]:
        return [int(r[0].to_rational()) for r in self.rows]

    def value(self, i: int, g) -> Cyc:
        return self.rows[i][self.classes.class_of[g]]

    def inner(self, u, v) -> Cyc:
        """(1/|G|) sum_g u(g) conj(v(g)) for class functions given by rows."""
        acc = Cyc.rational(0)
        for t, size in enumerate(self.classes.sizes):
            acc = acc + u[t] * v[t].conjugate() * size
        return acc / self.group.order

    def restrict_to_p_regular(self, p: int) -> tuple[list[int], list[list[Cyc]]]:
        cols = p_regular_classes(self.classes, p)
        return cols, [[row[c] for c in cols] for row in self.rows]

    def is_rational(self) -> bool:
        return all(v.is_rational() for row in self.rows for v in row)

    def check(self) -> None:
        n = self.group.order
        if sum(d * d for d in self.degrees) != n:
            raise CharTableError("sum of squared degrees is not |G|")
        for i, u in enumerate(self.rows):
            if any(not v.is_integral() for v in u):
                raise CharTableError("character value is not an algebraic integer")
            for j, v in enumerate(self.rows):
                if self.inner(u, v) != (1 if i == j else 0):
                    raise CharTableError(f"rows {i}, {j} are not orthonormal")

    @cached_property
    def labels(self) -> list[str]:
        return [r.to_cycles() for r in self.classes.representatives]

    def to_json(self) -> dict:
        return {
            "group_order": self.group.order,
            "classes": [
                {"representative": lab, "size": s, "order": o}
                for lab, s, o in zip(self.labels, self.classes.sizes, self.classes.rep_orders())
            ],
            "characters": [[str(v) for v in row] for row in self.rows],
        }


def dixon_prime(order: int, exponent: int, max_class: int) -> int:
    bound = 2 * math.isqrt(order) * max_class + 1
    q = bound + 1
    while (q - 1) % exponent or not is_prime(q):
        q += 1
    return q


def structure_constants(cc: ConjClasses) -> np.ndarray:
    k = len(cc)
    a = np.zeros((k, k, k), dtype=np.int64)
    for t, z in enumerate(cc.representatives):
        for r, members in enumerate(cc.members):
            for x in members:
                a[r, cc.class_of[x.inverse() * z], t] += 1
    return a


def _restricted(F: GF, M: np.ndarray, S: np.ndarray, piv: list[int]) -> np.ndarray:
    # S has reduced rows spanning an M-invariant subspace; returns M on coordinates
    images = F.matmul(S, M.T)
    return images[:, piv].T


def common_eigenvectors(F: GF, mats: list[np.ndarray]) -> list[np.ndarray]:
    k = mats[0].shape[0]
    spaces = [np.eye(k, dtype=np.int64)]
    for M in mats:
        refined = []
        for S in spaces:
            if S.shape[0] == 1:
                refined.append(S)
                continue
            S, piv = F.rref(S)
            A = _restricted(F, M, S, piv)
            pieces = []
            for lam in F.charpoly_roots(A):
                coords = F.nullspace(F.sub(A, F.mul(F.eye(A.shape[0]), lam)))
                pieces.append(F.matmul(coords, S))
            if sum(p.shape[0] for p in pieces) != S.shape[0]:
                raise CharTableError("class matrix is not split over the auxiliary field")
            refined.extend(pieces)
        spaces = refined
    if any(S.shape[0] != 1 for S in spaces):
        raise CharTableError("class sums failed to separate the characters")
    return [S[0] for S in spaces]


def character_table(G: PermGroup, classes: ConjClasses | None = None) -> CharTable:
    cc = classes or conjugacy_classes(G)
    k = len(cc)
    n = G.order
    e = G.exponent()
    sizes = cc.sizes
    q = dixon_prime(n, e, max(sizes))
    F = field(q)
    a = structure_constants(cc)
    mats = [a[r] % q for r in range(k)]
    vectors = common_eigenvectors(F, mats)
    inv_class = [cc.inverse_class(t) for t in range(k)]
    omega_bar = F.exp((q - 1) // e)
    orders = cc.rep_orders()
    rows = []
    for vec in vectors:
        w = [int(x) for x in vec]
        w = [x * pow(w[0], -1, q) % q for x in w]
        s = sum(w[t] * w[inv_class[t]] * pow(sizes[t], -1, q) for t in range(k)) % q
        deg_sq = n * pow(s, -1, q) % q
        deg = next((d for d in range(1, math.isqrt(n) + 1) if d * d % q == deg_sq), None)
        if deg is None:
            raise CharTableError("no degree matches the central character")
        vals = [w[t] * deg * pow(sizes[t], -1, q) % q for t in range(k)]
        row = []
        for t in range(k):
            o = orders[t]
            root = pow(omega_bar, e // o, q)
            terms = {}
            for j in range(o):
                acc = sum(vals[cc.power_class(t, l)] * pow(root, -j * l % o, q) for l in range(o))
                mult = acc * pow(o, -1, q) % q
                if mult > deg:
                    raise CharTableError("eigenvalue multiplicity out of range")
                if mult:
                    terms[j * (e // o)] = mult
            row.append(Cyc.from_exponents(e, terms))
        rows.append(row)
    # degree ascending, then values descending so the trivial character leads
    rows.sort(key=lambda r: (r[0].coeffs, [tuple(-c for c in v.coeffs) for v in r]))
    ct = CharTable(G, cc, e, rows, q)
    ct.check()
    return ct
