"""Brauer characters, decomposition and Cartan matrices of small groups."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .chartable import CharTable
from .cyclotomic import Cyc, _solve_rational
from .gf import GF, field, is_prime, multiplicative_order
from .lift import BrauerLift, brauer_value, build_lift
from .meataxe import FFModule, chop, is_isomorphic, module_from_matrices, regular_module
from .perm import ConjClasses, PermGroup, conjugacy_classes, element_order, p_regular_classes


class TheoremViolation(AssertionError):
    """A computed object contradicts a theorem it must satisfy."""


def p_prime_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def working_field(G: PermGroup, p: int, extra_degree: int = 1) -> GF:
    """GF(p^D) holding the roots of unity of order exp(G)_{p'}; it splits G."""
    m = p_prime_part(G.exponent(), p)
    d = multiplicative_order(p, m)
    return field(p, math.lcm(d, extra_degree))


def group_lift(G: PermGroup, p: int, F: GF | None = None) -> BrauerLift:
    F = F or working_field(G, p)
    return build_lift(p, p_prime_part(G.exponent(), p), F)


@dataclass(eq=False)
class GroupBrauerCharacter:
    group: PermGroup
    p: int
    class_ids: list[int]
    values: list[Cyc]
    module: FFModule | None = dc_field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return int(self.values[0].to_rational())

    def value(self, g, classes: ConjClasses) -> Cyc:
        return self.values[self.class_ids.index(classes.class_of[g])]

    def sort_key(self):
        return (self.degree, [tuple(-c for c in v.coeffs) for v in self.values])


def group_brauer_character(M: FFModule, lift: BrauerLift, classes: ConjClasses | None = None) -> GroupBrauerCharacter:
    G = M.group
    cc = classes or conjugacy_classes(G)
    p = lift.p
    ids = p_regular_classes(cc, p)
    vals = [brauer_value(M.element(cc.representatives[c]), lift).promote(lift.m) for c in ids]
    return GroupBrauerCharacter(G, p, ids, vals, M)


def irreducible_brauer_characters(G: PermGroup, p: int, rng: np.random.Generator,
                                  classes: ConjClasses | None = None,
                                  F: GF | None = None) -> list[GroupBrauerCharacter]:
    """IBr(G) from the composition factors of the regular module, sorted."""
    cc = classes or conjugacy_classes(G)
    F = F or working_field(G, p)
    lift = group_lift(G, p, F)
    factors = chop(regular_module(G, F), rng)
    ibr = [group_brauer_character(f.module, lift, cc) for f in factors]
    ibr.sort(key=GroupBrauerCharacter.sort_key)
    if len(ibr) != len(p_regular_classes(cc, p)):
        raise TheoremViolation("#IBr differs from the number of p-regular classes")
    return ibr


def realization_prime(G: PermGroup) -> int:
    """Smallest odd prime q = 1 (mod exp G) not dividing |G|."""
    e = G.exponent()
    q = 3
    while (q - 1) % e or not is_prime(q) or G.order % q == 0:
        q += 1
    return q


def ordinary_representations(G: PermGroup, ct: CharTable, rng: np.random.Generator,
                             q: int | None = None) -> list[FFModule]:
    """Modules over GF(q), q prime to |G|, affording the rows of ``ct`` (same order).

    With q = 1 mod exp G the field splits G and eigenvalue lifts recover the
    ordinary characters exactly; rows are matched by their lifted characters.
    """
    q = q or realization_prime(G)
    if (q - 1) % ct.exponent or G.order % q == 0:
        raise ValueError(f"GF({q}) does not split {G.name} semisimply")
    F = field(q)
    lift = build_lift(q, ct.exponent, F)
    factors = chop(regular_module(G, F), rng)
    out: list[FFModule | None] = [None] * len(ct.rows)
    for fac in factors:
        vals = [brauer_value(fac.module.element(r), lift) for r in ct.classes.representatives]
        idx = [i for i, row in enumerate(ct.rows) if row == vals]
        if len(idx) != 1 or out[idx[0]] is not None:
            raise TheoremViolation("realized module does not match a unique ordinary character")
        if fac.multiplicity != ct.degrees[idx[0]]:
            raise TheoremViolation("regular module multiplicity differs from the degree")
        out[idx[0]] = fac.module
    if any(m is None for m in out):
        raise TheoremViolation("some ordinary character was not realized")
    return out  # type: ignore[return-value]


@dataclass
class DecompMatrix:
    p: int
    matrix: list[list[int]]
    row_labels: list[str]
    col_labels: list[str]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.matrix), len(self.matrix[0]) if self.matrix else 0

    def to_json(self) -> dict:
        return {"p": self.p, "rows": self.row_labels, "columns": self.col_labels,
                "matrix": self.matrix}


@dataclass
class CartanMatrix:
    p: int
    matrix: list[list[int]]
    det: int
    exponent: int | None  # det == p**exponent, or None when it is not a p-power

    @property
    def certificate(self) -> str:
        return f"{self.p}^{self.exponent}" if self.exponent is not None else f"FAIL({self.det})"

    def to_json(self) -> dict:
        return {"p": self.p, "matrix": self.matrix, "det": self.det,
                "certificate": self.certificate}


def solve_decomposition(targets: Sequence[Sequence[Cyc]], basis: Sequence[Sequence[Cyc]]) -> list[list[Fraction | int]]:
    """Coefficients c[i][j] with targets[i] == sum_j c[i][j] basis[j], over Q.

    Each Cyc equation splits into its rational coordinates at a common
    conductor; the solution must exist and be unique.
    """
    conductors = [v.m for row in list(targets) + list(basis) for v in row] or [1]
    N = math.lcm(*conductors)
    cols = [[c for v in row for c in v.promote(N).coeffs] for row in basis]
    out = []
    for row in targets:
        rhs = [c for v in row for c in v.promote(N).coeffs]
        sol = _solve_rational(cols, rhs)
        if sol is None:
            raise TheoremViolation("restriction is not in the span of the Brauer characters")
        out.append(sol)
    if cols and _rational_rank(cols) != len(cols):
        raise TheoremViolation("Brauer characters are linearly dependent")
    return out


def _rational_rank(columns: list[list]) -> int:
    rows = [list(map(Fraction, c)) for c in columns]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def decomposition_matrix(ct: CharTable, ibr: Sequence[GroupBrauerCharacter], p: int) -> DecompMatrix:
    cols, restricted = ct.restrict_to_p_regular(p)
    if any(phi.class_ids != cols for phi in ibr):
        raise ValueError("Brauer characters are not on the p-regular classes of this table")
    if len(ibr) != len(cols):
        raise TheoremViolation("IBr is incomplete")
    coeffs = solve_decomposition(restricted, [phi.values for phi in ibr])
    D = []
    for row in coeffs:
        if any(Fraction(c).denominator != 1 or c < 0 for c in row):
            raise TheoremViolation(f"decomposition numbers {row} are not nonnegative integers")
        D.append([int(c) for c in row])
    return DecompMatrix(
        p, D,
        [f"chi{i + 1}" for i in range(len(ct.rows))],
        [f"phi{j + 1}" for j in range(len(ibr))],
    )


def integer_det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, r)) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def p_power_exponent(n: int, p: int) -> int | None:
    if n <= 0:
        return None
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


def cartan(D: DecompMatrix) -> CartanMatrix:
    M = D.matrix
    cols = len(M[0]) if M else 0
    C = [[sum(M[i][a] * M[i][b] for i in range(len(M))) for b in range(cols)] for a in range(cols)]
    det = integer_det(C)
    return CartanMatrix(D.p, C, det, p_power_exponent(det, D.p))


# independent route: reduce integral lattices and chop ------------------

def _valuation(x: Fraction, p: int) -> int:
    x = Fraction(x)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def local_basis(vectors: Sequence[Sequence], p: int) -> list[list[Fraction]]:
    """Echelon basis over Z_(p) of the lattice the vectors span."""
    rows = [[Fraction(x) for x in v] for v in vectors if any(v)]
    basis = []
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        cand = [r for r in rows if r[c]]
        if not cand:
            continue
        piv = min(cand, key=lambda r: _valuation(r[c], p))
        rest = []
        for r in rows:
            if r is piv:
                continue
            if r[c]:
                f = r[c] / piv[c]
                r = [a - f * b for a, b in zip(r, piv)]
            if any(r):
                rest.append(r)
        basis.append(piv)
        rows = rest
    return basis


def _local_coords(basis: list[list[Fraction]], w: Sequence) -> list[Fraction]:
    w = [Fraction(x) for x in w]
    coords = []
    for b in basis:
        c = next(i for i, x in enumerate(b) if x)
        f = w[c] / b[c]
        coords.append(f)
        if f:
            w = [a - f * x for a, x in zip(w, b)]
    if any(w):
        raise ValueError("vector is not in the lattice span")
    return coords


def reduced_isotypic_lattice(G: PermGroup, chi_row: Sequence[Cyc], classes: ConjClasses,
                             F: GF) -> FFModule:
    """Reduction mod p of the Z_(p)-span of {h e_chi : h in G} in the regular module.

    e_chi = sum_g chi(g^-1) g spans the chi-isotypic block, so the module's
    composition factors are those of chi(1) copies of the reduction of chi.
    """
    p = F.p
    vals = [int(v.to_rational()) for v in chi_row]
    els = G.elements
    idx = G.index
    chi = {g: vals[classes.class_of[g]] for g in els}
    vectors = [[chi[k.inverse() * h] for k in els] for h in els]
    basis = local_basis(vectors, p)
    gens = []
    for s in G.generators:
        cols = []
        for b in basis:
            image = [Fraction(0)] * len(els)
            for j, h in enumerate(els):
                image[idx[s * h]] = b[j]
            coords = _local_coords(basis, image)
            col = []
            for c in coords:
                if c.denominator % p == 0:
                    raise TheoremViolation("lattice is not stable under the group")
                col.append(c.numerator * pow(c.denominator, -1, p) % p)
            cols.append(col)
        gens.append(np.array(cols, dtype=np.int64).T)
    return module_from_matrices(F, gens, G, dim=len(basis), label="lattice")


def decomposition_by_reduction(G: PermGroup, ct: CharTable, ibr: Sequence[GroupBrauerCharacter],
                               p: int, rng: np.random.Generator) -> list[list[int]]:
    """Decomposition numbers by chopping reduced lattices (rational characters only)."""
    if not ct.is_rational():
        raise ValueError("lattice oracle needs rational-valued characters")
    F = ibr[0].module.field
    D = []
    for row, deg in zip(ct.rows, ct.degrees):
        M = reduced_isotypic_lattice(G, row, ct.classes, F)
        if M.dim != deg * deg:
            raise TheoremViolation("isotypic lattice has the wrong rank")
        counts = [0] * len(ibr)
        for fac in chop(M, rng):
            hits = [j for j, phi in enumerate(ibr) if is_isomorphic(phi.module, fac.module, rng)]
            if len(hits) != 1:
                raise TheoremViolation("composition factor matches no unique simple module")
            counts[hits[0]] += fac.multiplicity
        if any(c % deg for c in counts):
            raise TheoremViolation("multiplicities are not divisible by the degree")
        D.append([c // deg for c in counts])
    return D
