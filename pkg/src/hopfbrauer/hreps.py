"""Simple modules of a bismash product, their characters and indicators.

Every simple H-module is induced from an orbit representative x of the
F-action on G and a simple module V of the stabilizer F_x.  On the basis
``t (x) e_i`` (t in the transversal T_x, one coset ``t F_x`` per orbit point)

    (p_y # a)[t (x) v] = [y <| t' == x] t' (x) (t'^-1 a t) v,   a t in t' F_x,

so each basis element acts by a block-monomial matrix.  Characters come from
the closed formula ``sum_t [y <| t == x] chi_x(t^-1 a t)`` and are checked
against traces of these matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .bismash import Basis, BismashProduct, format_basis
from .chartable import CharTable, character_table
from .cyclotomic import Cyc, _solve_rational
from .gf import GF, field, multiplicative_order
from .lift import BrauerLift, LiftError, brauer_value, build_lift
from .meataxe import FFModule, chop, is_isomorphic
from .modular import (CartanMatrix, DecompMatrix, GroupBrauerCharacter, TheoremViolation,
                      cartan, decomposition_matrix, group_brauer_character,
                      irreducible_brauer_characters, ordinary_representations,
                      p_prime_part, realization_prime, solve_decomposition)
from .perm import ConjClasses, Orbit, Perm, conjugacy_classes, element_order, p_parts


class FormError(RuntimeError):
    pass


# characteristic contexts ------------------------------------------------

class Char0Context:
    """Ordinary characters, realized when needed over GF(q) with q = 1 mod exp F."""

    characteristic = 0

    def __init__(self, H: BismashProduct, rng: np.random.Generator):
        self.H = H
        self.rng = rng
        self.q = realization_prime(H.F)
        self.field = field(self.q)
        self.lift = build_lift(self.q, H.F.exponent(), self.field)
        self.orbits = H.fg.orbits
        self.classes = [conjugacy_classes(o.stabilizer) for o in self.orbits]
        self.tables = [character_table(o.stabilizer, cc) for o, cc in zip(self.orbits, self.classes)]
        self._modules: dict[int, list[FFModule]] = {}

    def stabilizer_modules(self, k: int) -> list[FFModule]:
        if k not in self._modules:
            orb = self.orbits[k]
            self._modules[k] = ordinary_representations(orb.stabilizer, self.tables[k],
                                                        self.rng.spawn(1)[0], self.q)
        return self._modules[k]

    def describe(self) -> dict:
        return {"characteristic": 0, "realization_field": self.field.describe(),
                "lift": self.lift.to_json()}


class ModularContext:
    """One field GF(p^D) that splits every stabilizer, with its Brauer lift."""

    def __init__(self, H: BismashProduct, p: int, rng: np.random.Generator):
        if p == 2:
            raise ValueError("p = 2 is not supported")
        self.H = H
        self.characteristic = self.p = p
        self.rng = rng
        self.m = p_prime_part(H.F.exponent(), p)
        self.field = field(p, multiplicative_order(p, self.m))
        self.lift = build_lift(p, self.m, self.field)
        self.orbits = H.fg.orbits
        self.classes = [conjugacy_classes(o.stabilizer) for o in self.orbits]
        self.ibr: list[list[GroupBrauerCharacter]] = []
        for o, cc in zip(self.orbits, self.classes):
            self.ibr.append(irreducible_brauer_characters(o.stabilizer, p, rng.spawn(1)[0], cc,
                                                          self.field))

    def describe(self) -> dict:
        return {"characteristic": self.p, "working_field": self.field.describe(),
                "lift": self.lift.to_json()}


# induced modules ------------------------------------------------------

@dataclass(eq=False)
class InducedHModule:
    H: BismashProduct
    orbit: Orbit
    orbit_index: int
    stab_index: int             # row of the stabilizer table / IBr list; -1 if not simple
    stab_dim: int
    stab_module: FFModule | None = dc_field(default=None, repr=False)
    field: GF | None = dc_field(default=None, repr=False)

    @property
    def x(self) -> Perm:
        return self.orbit.representative

    @property
    def transversal(self) -> tuple[Perm, ...]:
        return self.orbit.transversal

    @property
    def dim(self) -> int:
        return len(self.orbit.points) * self.stab_dim

    @property
    def label(self) -> str:
        return f"x={self.x.to_cycles()},V{self.stab_index + 1}"

    def coset_of(self, g: Perm) -> int:
        """Index of the transversal element t with g in t F_x."""
        y = self.H.fg.lhd(self.x, g.inverse())
        return self.orbit.point_index[y]

    def basis_labels(self) -> list[Perm]:
        """Orbit point y attached to each basis vector: y <| t_y = x."""
        return [y for y in self.orbit.points for _ in range(self.stab_dim)]

    @cached_property
    def _matrices(self) -> dict:
        return {}

    def matrix(self, w: Basis) -> np.ndarray:
        if self.stab_module is None:
            raise ValueError("module has no explicit stabilizer matrices")
        cache = self._matrices
        if w not in cache:
            cache[w] = self._build(w)
        return cache[w]

    def _build(self, w: Basis) -> np.ndarray:
        y, a = w
        d = self.stab_dim
        T = self.transversal
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        fg = self.H.fg
        for j, t in enumerate(T):
            i = self.coset_of(a * t)
            tp = T[i]
            if fg.lhd(y, tp) != self.x:
                continue
            c = tp.inverse() * a * t
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = self.stab_module.element(c)
        return out

    def element_matrix(self, h) -> np.ndarray:
        F = self.field
        out = F.zeros((self.dim, self.dim))
        for w, c in h.terms.items():
            out = F.add(out, F.mul(self.matrix(w), prime_field_scalar(c, F.p)))
        return out

    def check_relations(self, rng: np.random.Generator, samples: int = 30) -> bool:
        """Spot check rho(u v) == rho(u) rho(v) on random basis pairs."""
        F = self.field
        B = self.H.basis
        zero = F.zeros((self.dim, self.dim))
        for _ in range(samples):
            u = B[int(rng.integers(len(B)))]
            v = B[int(rng.integers(len(B)))]
            uv = self.H.mul_basis(u, v)
            lhs = self.matrix(uv) if uv is not None else zero
            if not np.array_equal(lhs, F.matmul(self.matrix(u), self.matrix(v))):
                return False
        return True


def prime_field_scalar(c, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise ZeroDivisionError(f"{c} is not defined modulo {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def simple_modules(ctx, explicit: bool = True) -> list[InducedHModule]:
    """One module per orbit and irreducible of the stabilizer, in orbit order."""
    out = []
    for k, orb in enumerate(ctx.orbits):
        if isinstance(ctx, Char0Context):
            degrees = ctx.tables[k].degrees
            mods = ctx.stabilizer_modules(k) if explicit else [None] * len(degrees)
            for i, d in enumerate(degrees):
                out.append(InducedHModule(ctx.H, orb, k, i, d, mods[i], ctx.field))
        else:
            for i, phi in enumerate(ctx.ibr[k]):
                out.append(InducedHModule(ctx.H, orb, k, i, phi.degree, phi.module, ctx.field))
    return out


def induced_module(H: BismashProduct, k: int, W: FFModule) -> InducedHModule:
    """Induce an arbitrary module of the k-th stabilizer (not necessarily simple)."""
    orb = H.fg.orbits[k]
    if W.group is None or set(W.group.elements) != set(orb.stabilizer.elements):
        raise ValueError("module is not over the orbit stabilizer")
    return InducedHModule(H, orb, k, -1, W.dim, W, W.field)


# characters ---------------------------------------------------------

@dataclass(eq=False)
class HCharacter:
    """Sparse value map on a set of basis elements (zero elsewhere)."""

    H: BismashProduct
    values: dict
    orbit_rep: Perm | None = None
    stab_index: int = -1
    domain: str = "B"   # "B" for ordinary characters, "Bp'" for Brauer characters

    def __call__(self, w: Basis) -> Cyc:
        return self.values.get(w, Cyc.rational(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HCharacter):
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return all(self(w) == other(w) for w in keys)

    def evaluate(self, h) -> Cyc:
        acc = Cyc.rational(0)
        for w, c in h.terms.items():
            acc = acc + self(w) * c
        return acc

    def row(self, columns: Sequence[Basis]) -> list[Cyc]:
        return [self(w) for w in columns]

    def to_json(self) -> dict:
        return {f"({w[0].to_cycles()};{w[1].to_cycles()})": str(v)
                for w, v in sorted(self.values.items()) if not v.is_zero()}


def _formula(M: InducedHModule, values_on_stab, domain: Sequence[Basis]) -> dict:
    fg = M.H.fg
    stab = M.orbit.stabilizer
    x = M.x
    out = {}
    for w in domain:
        y, a = w
        acc = Cyc.rational(0)
        for t in M.transversal:
            c = t.inverse() * a * t
            if c in stab and fg.lhd(y, t) == x:
                acc = acc + values_on_stab(c)
        if not acc.is_zero():
            out[w] = acc
    return out


def character_of(M: InducedHModule, ctx: Char0Context) -> HCharacter:
    ct = ctx.tables[M.orbit_index]
    cc = ctx.classes[M.orbit_index]
    vals = _formula(M, lambda c: ct.rows[M.stab_index][cc.class_of[c]], M.H.basis)
    return HCharacter(M.H, vals, M.x, M.stab_index, "B")


def brauer_character_of(M: InducedHModule, ctx: ModularContext,
                        phi: GroupBrauerCharacter | None = None) -> HCharacter:
    phi = phi or ctx.ibr[M.orbit_index][M.stab_index]
    cc = ctx.classes[M.orbit_index]
    vals = _formula(M, lambda c: phi.value(c, cc), M.H.b_p_regular(ctx.p))
    return HCharacter(M.H, vals, M.x, M.stab_index, "Bp'")


def trace_character(M: InducedHModule, lift: BrauerLift, domain: Sequence[Basis]) -> dict:
    """Eigenvalue-lift of the explicit matrices: the convention-free oracle."""
    out = {}
    for w in domain:
        A = M.matrix(w)
        v = brauer_value(A, lift, singular=True) if A.any() else Cyc.rational(0)
        if not v.is_zero():
            out[w] = v
    return out


def nilpotent_part_is_zero(M: InducedHModule, w: Basis) -> bool:
    """rho(w)^2 == 0 for w outside B', i.e. every eigenvalue of rho(w) is 0."""
    F = M.field
    A = M.matrix(w)
    return not F.matmul(A, A).any()


def dual_character(chi: HCharacter) -> HCharacter:
    H = chi.H
    vals = {H.antipode(w): v for w, v in chi.values.items()}
    return HCharacter(H, vals, chi.orbit_rep, chi.stab_index, chi.domain)


def dual_permutation(chars: Sequence[HCharacter]) -> list[int]:
    """Index of the dual of each character; raises unless it is a bijection."""
    out = []
    for chi in chars:
        d = dual_character(chi)
        idx = [j for j, psi in enumerate(chars) if psi == d]
        if len(idx) != 1:
            raise TheoremViolation("dual of a simple character is not a unique simple character")
        out.append(idx[0])
    if sorted(out) != list(range(len(chars))):
        raise TheoremViolation("duality does not permute the simple characters")
    return out


# indicators ---------------------------------------------------------

def indicator_char0(chi: HCharacter, Lam=None) -> int:
    H = chi.H
    Lam = Lam if Lam is not None else H.integral()
    v = chi.evaluate(H.mult_comult(Lam))
    if not v.is_rational() or v.to_rational() not in (-1, 0, 1):
        raise TheoremViolation(f"indicator value {v} is not in {{-1, 0, 1}}")
    return int(v.to_rational())


def invariant_forms(M: InducedHModule) -> np.ndarray:
    """Basis (rows, flattened N x N) of Gram matrices B with rho(h)^T B = B rho(S h).

    Imposed on the algebra generators p_y # 1 and 1 # a (a a generator of F);
    the idempotents p_y # 1 confine B to entries pairing label y with y^-1.
    """
    H, F = M.H, M.field
    N = M.dim
    labels = M.basis_labels()
    unknowns = [(k, l) for k in range(N) for l in range(N) if labels[l] == labels[k].inverse()]
    if not unknowns:
        return np.zeros((0, N * N), dtype=np.int64)
    blocks = []
    for a in H.F.generators:
        R = F.zeros((N, N))
        RS = F.zeros((N, N))
        for y in H.G.elements:
            R = F.add(R, M.matrix((y, a)))
            RS = F.add(RS, M.matrix(H.antipode((y, a))))
        A = np.zeros((N * N, len(unknowns)), dtype=np.int64)
        for u, (k, l) in enumerate(unknowns):
            col = np.zeros(N * N, dtype=np.int64)
            col[np.arange(N) * N + l] = R[k, :]
            col[k * N + np.arange(N)] = F.sub(col[k * N + np.arange(N)], RS[l, :])
            A[:, u] = col
        blocks.append(A)
    if blocks:
        A = np.vstack(blocks)
        null = F.nullspace(A)
    else:
        null = F.eye(len(unknowns))
    out = np.zeros((null.shape[0], N * N), dtype=np.int64)
    for r, vec in enumerate(null):
        for u, (k, l) in enumerate(unknowns):
            out[r, k * N + l] = vec[u]
    return out


def check_form_contract(M: InducedHModule, B: np.ndarray) -> bool:
    """sum <h1 v, h2 w> == eps(h) <v, w> for every basis element h."""
    H, F = M.H, M.field
    for h in H.basis:
        acc = F.zeros(B.shape)
        for l, r in H.comultiply(h):
            acc = F.add(acc, F.matmul(M.matrix(l).T, F.matmul(B, M.matrix(r))))
        want = B if H.counit(h) else F.zeros(B.shape)
        if not np.array_equal(acc, want):
            return False
    return True


def indicator_modular(M: InducedHModule, verify: bool = True) -> int:
    F = M.field
    N = M.dim
    forms = invariant_forms(M)
    if forms.shape[0] == 0:
        return 0
    if forms.shape[0] > 1:
        raise FormError(f"{forms.shape[0]}-dimensional space of invariant forms: module not simple")
    B = forms[0].reshape(N, N)
    if verify:
        if F.rank(B) != N:
            raise FormError("invariant form is degenerate")
        if not check_form_contract(M, B):
            raise FormError("form fails the H-invariance contract")
    if np.array_equal(B, B.T):
        return 1
    if np.array_equal(B, F.neg(B.T)):
        return -1
    raise FormError("invariant form is neither symmetric nor skew")


# modular checks -----------------------------------------------------

def reduction_consistent(phi: HCharacter, M: InducedHModule, lift: BrauerLift) -> bool:
    """f(phi(w)) == trace(rho(w)) over the working field for every w in B_p'."""
    F = M.field
    for w in M.H.b_p_regular(lift.p):
        if lift.reduce(phi(w)) != int(F.trace(M.matrix(w))):
            return False
    return True


def _generalized_multiplicities(A: np.ndarray, F: GF, points: Sequence[int]) -> dict[int, int]:
    """dim ker (A - lam)^n for each lam: the algebraic multiplicity."""
    n = A.shape[0]
    out = {}
    for lam in points:
        base = F.sub(A, F.mul(F.eye(n), lam))
        Pn = F.eye(n)
        k = n
        while k:
            if k & 1:
                Pn = F.matmul(Pn, base)
            base = F.matmul(base, base)
            k >>= 1
        mult = n - F.rank(Pn)
        if mult:
            out[lam] = mult
    return out


def eigenvalue_multiset(A: np.ndarray, F: GF, m: int) -> dict[int, int]:
    """Algebraic multiplicities of 0 and the m-th roots of unity of F."""
    g = F.exp((F.q - 1) // m)
    pts = [0] + [int(F.power(g, j)) for j in range(m)]
    mults = _generalized_multiplicities(A, F, pts)
    if sum(mults.values()) != A.shape[0]:
        raise LiftError("eigenvalues are not 0 or roots of unity in the field")
    return mults


def hfactor_check(M: InducedHModule, w: Basis, p: int, m: int) -> bool:
    """rho(p_y # a) and rho(p_y # s), s the p-regular part of a, share eigenvalues."""
    y, a = w
    u, s = p_parts(a, p)
    A = M.matrix((y, a))
    S = M.matrix((y, s))
    return eigenvalue_multiset(A, M.field, m) == eigenvalue_multiset(S, M.field, m)


def cyc_rank(rows: Sequence[Sequence[Cyc]]) -> int:
    """Rank over Q(zeta) by Gaussian elimination with exact cyclotomic arithmetic."""
    A = [[Cyc.coerce(v) for v in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = A[rank][c].inverse()
        A[rank] = [v * inv for v in A[rank]]
        for i in range(len(A)):
            if i != rank and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [v - f * b for v, b in zip(A[i], A[rank])]
        rank += 1
        if rank == len(A):
            break
    return rank


@dataclass
class IndependenceCertificate:
    rank: int
    count: int
    columns: list[Basis]

    @property
    def full_rank(self) -> bool:
        return self.rank == self.count


def h_brauer_independence(ibr: Sequence[HCharacter], columns: Sequence[Basis] | None = None) -> IndependenceCertificate:
    if not ibr:
        return IndependenceCertificate(0, 0, [])
    H = ibr[0].H
    cols = list(columns) if columns is not None else sorted({w for phi in ibr for w in phi.values})
    rank = cyc_rank([phi.row(cols) for phi in ibr])
    return IndependenceCertificate(rank, len(ibr), cols)


def lincom_solvable(ordinary: Sequence[HCharacter], ibr: Sequence[HCharacter], p: int) -> bool:
    """Each Brauer character lies in the span of the restricted ordinary characters."""
    H = ibr[0].H
    cols = H.b_p_regular(p)
    basis = [chi.row(cols) for chi in ordinary]
    try:
        _span_solve([phi.row(cols) for phi in ibr], basis)
    except TheoremViolation:
        return False
    return True


def _span_solve(targets, basis) -> None:
    conductors = [v.m for row in list(targets) + list(basis) for v in row] or [1]
    N = math.lcm(*conductors)
    # Q(zeta)-span = Q-span of all zeta^k * chi
    cols = []
    for row in basis:
        for k in range(N):
            z = Cyc.zeta(N, k)
            cols.append([c for v in row for c in (v * z).promote(N).coeffs])
    for row in targets:
        rhs = [c for v in row for c in v.promote(N).coeffs]
        if _solve_rational(cols, rhs) is None:
            raise TheoremViolation("Brauer character outside the span of ordinary restrictions")


# H-level decomposition ---------------------------------------------

@dataclass
class HDecomposition:
    p: int
    matrix: list[list[int]]
    row_orbits: list[int]
    col_orbits: list[int]
    blocks: list[DecompMatrix]          # group-level D_x, one per orbit
    block_diagonal: bool
    blocks_agree: bool
    cartan: CartanMatrix

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "matrix": self.matrix,
            "row_orbits": self.row_orbits,
            "column_orbits": self.col_orbits,
            "block_diagonal": self.block_diagonal,
            "blocks_agree": self.blocks_agree,
            "cartan": self.cartan.to_json(),
        }


def h_decomposition(ordinary: Sequence[HCharacter], ord_orbits: Sequence[int],
                    ibr: Sequence[HCharacter], ibr_orbits: Sequence[int],
                    group_blocks: Sequence[DecompMatrix], p: int) -> HDecomposition:
    H = ibr[0].H
    cols = H.b_p_regular(p)
    coeffs = solve_decomposition([chi.row(cols) for chi in ordinary], [phi.row(cols) for phi in ibr])
    D = []
    for row in coeffs:
        if any(Fraction(c).denominator != 1 or c < 0 for c in row):
            raise TheoremViolation(f"decomposition numbers {row} are not nonnegative integers")
        D.append([int(c) for c in row])
    diag = all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0]))
               if ord_orbits[i] != ibr_orbits[j])
    agree = True
    for k, blk in enumerate(group_blocks):
        ri = [i for i, o in enumerate(ord_orbits) if o == k]
        ci = [j for j, o in enumerate(ibr_orbits) if o == k]
        sub = [[D[i][j] for j in ci] for i in ri]
        if sub != blk.matrix:
            agree = False
    C = cartan(DecompMatrix(p, D, [], []))
    return HDecomposition(p, D, list(ord_orbits), list(ibr_orbits), list(group_blocks), diag, agree, C)


# one-stop pipelines --------------------------------------------------

@dataclass
class Char0Data:
    ctx: Char0Context
    modules: list[InducedHModule]
    characters: list[HCharacter]


def char0_data(H: BismashProduct, rng: np.random.Generator, explicit: bool = False) -> Char0Data:
    ctx = Char0Context(H, rng)
    mods = simple_modules(ctx, explicit=explicit)
    return Char0Data(ctx, mods, [character_of(M, ctx) for M in mods])


@dataclass
class ModularData:
    ctx: ModularContext
    modules: list[InducedHModule]
    characters: list[HCharacter]


def modular_data(H: BismashProduct, p: int, rng: np.random.Generator) -> ModularData:
    ctx = ModularContext(H, p, rng)
    mods = simple_modules(ctx)
    return ModularData(ctx, mods, [brauer_character_of(M, ctx) for M in mods])


def decompose(c0: Char0Data, md: ModularData) -> HDecomposition:
    p = md.ctx.p
    blocks = [decomposition_matrix(ct, ibr, p) for ct, ibr in zip(c0.ctx.tables, md.ctx.ibr)]
    return h_decomposition(c0.characters, [M.orbit_index for M in c0.modules],
                           md.characters, [M.orbit_index for M in md.modules], blocks, p)


def format_character_key(w: Basis) -> str:
    return format_basis(w)
