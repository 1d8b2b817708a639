"""A small MeatAxe: split modules over finite fields into composition factors.

Modules act on column vectors.  Splitting follows Holt-Rees: pick a random
element ``theta`` of the enveloping algebra, take an eigenvalue ``lam`` in the
field, spin a vector of ``ker(theta - lam)``.  A proper spin splits the
module; otherwise, when the kernel is one-dimensional, Norton's test on the
transposed module either splits it or proves irreducibility.  The working
field must split the module (every composition factor absolutely
irreducible), which holds for group algebras over GF(p^d) containing the
p'-part-of-exponent roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from .gf import GF
from .perm import Perm, PermGroup

Word = tuple[int, ...]

DEFAULT_BUDGET = 500


class MeatAxeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Certificate:
    """Algebra element ``sum c * word`` and eigenvalue with a 1-dim kernel."""

    terms: tuple[tuple[int, Word], ...]
    eigenvalue: int


@dataclass(eq=False)
class FFModule:
    field: GF
    gens: list[np.ndarray]
    group: PermGroup | None = None
    label: str = ""
    certificate: Certificate | None = dc_field(default=None, repr=False)

    _dim: int = 0

    @property
    def dim(self) -> int:
        return self.gens[0].shape[0] if self.gens else self._dim

    def word(self, w: Word) -> np.ndarray:
        F = self.field
        out = F.eye(self.dim)
        for i in w:
            out = F.matmul(out, self.gens[i])
        return out

    def algebra_element(self, terms: Sequence[tuple[int, Word]]) -> np.ndarray:
        F = self.field
        out = F.zeros((self.dim, self.dim))
        for c, w in terms:
            out = F.add(out, F.mul(self.word(w), c))
        return out

    @cached_property
    def _words(self) -> dict[Perm, Word]:
        if self.group is None:
            raise MeatAxeError("module is not attached to a group")
        return self.group.words()

    @cached_property
    def _element_cache(self) -> dict:
        return {}

    def element(self, g: Perm) -> np.ndarray:
        """Matrix of a group element (evaluated along a generator word)."""
        cache = self._element_cache
        if g not in cache:
            cache[g] = self.word(self._words[g])
        return cache[g]

    def transpose(self) -> "FFModule":
        return FFModule(self.field, [g.T.copy() for g in self.gens], None,
                        self.label + "^T", _dim=self.dim)

    def submodule(self, S: np.ndarray) -> "FFModule":
        F = self.field
        S, piv = F.rref(S)
        gens = [F.matmul(S, g.T)[:, piv].T.copy() for g in self.gens]
        return FFModule(F, gens, self.group, self.label + "/sub", _dim=S.shape[0])

    def quotient(self, S: np.ndarray) -> "FFModule":
        F = self.field
        S, piv = F.rref(S)
        rest = [c for c in range(self.dim) if c not in set(piv)]
        gens = []
        for g in self.gens:
            W = g[:, rest].T
            W = F.sub(W, F.matmul(W[:, piv], S))
            gens.append(W[:, rest].T.copy())
        return FFModule(F, gens, self.group, self.label + "/quo", _dim=len(rest))

    def check_relations(self, rng: np.random.Generator, samples: int = 20) -> bool:
        """Spot check rho(g h) == rho(g) rho(h) on random pairs."""
        els = self.group.elements
        F = self.field
        for _ in range(samples):
            g = els[int(rng.integers(len(els)))]
            h = els[int(rng.integers(len(els)))]
            if not np.array_equal(self.element(g * h), F.matmul(self.element(g), self.element(h))):
                return False
        return True


def module_from_matrices(F: GF, gens: Sequence[np.ndarray], group: PermGroup | None = None,
                         dim: int | None = None, label: str = "") -> FFModule:
    gens = [np.asarray(g, dtype=np.int64) % F.q for g in gens]
    d = gens[0].shape[0] if gens else dim
    if d is None:
        raise MeatAxeError("dimension needed for a module without generators")
    return FFModule(F, gens, group, label, _dim=d)


def regular_module(G: PermGroup, F: GF) -> FFModule:
    """Left regular module: g . e_h = e_{gh}."""
    n = G.order
    gens = []
    for s in G.generators:
        M = np.zeros((n, n), dtype=np.int64)
        for j, h in enumerate(G.elements):
            M[G.index[s * h], j] = 1
        gens.append(M)
    return FFModule(F, gens, G, f"reg({G.name})", _dim=n)


def permutation_module(G: PermGroup, F: GF) -> FFModule:
    """Natural permutation module on the points moved by G."""
    n = G.degree
    gens = []
    for s in G.generators:
        M = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            M[s[i], i] = 1
        gens.append(M)
    return FFModule(F, gens, G, f"perm({G.name})", _dim=n)


# spinning --------------------------------------------------------------

class _Echelon:
    def __init__(self, F: GF, n: int):
        self.F, self.n = F, n
        self.rows: list[tuple[int, np.ndarray]] = []

    def reduce(self, w: np.ndarray) -> np.ndarray:
        F = self.F
        for c, row in self.rows:
            if w[c]:
                w = F.sub(w, F.mul(row, w[c]))
        return w

    def add(self, w: np.ndarray) -> bool:
        w = self.reduce(np.asarray(w, dtype=np.int64))
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        c = int(nz[0])
        self.rows.append((c, self.F.mul(w, self.F.inv(w[c]))))
        return True

    def __len__(self) -> int:
        return len(self.rows)


def spin(F: GF, gens: Sequence[np.ndarray], vectors: np.ndarray) -> tuple[np.ndarray, list]:
    """Submodule generated by the given rows.

    Returns the spanning vectors in the order found and the recipe
    ``(source index, generator index)`` for each vector after the seeds.
    """
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
    n = vectors.shape[1]
    ech = _Echelon(F, n)
    basis, recipe = [], []
    for v in vectors:
        if ech.add(v):
            basis.append(v)
            recipe.append(None)
    i = 0
    while i < len(basis) and len(basis) < n:
        for k, g in enumerate(gens):
            w = F.matmul(g, basis[i])
            if ech.add(w):
                basis.append(w)
                recipe.append((i, k))
                if len(basis) == n:
                    break
        i += 1
    return np.array(basis, dtype=np.int64).reshape(len(basis), n), recipe


def replay(F: GF, gens: Sequence[np.ndarray], seed: np.ndarray, recipe: list) -> np.ndarray:
    basis = [np.asarray(seed, dtype=np.int64)]
    for step in recipe[1:]:
        i, k = step
        basis.append(F.matmul(gens[k], basis[i]))
    return np.array(basis, dtype=np.int64)


# splitting -------------------------------------------------------------

def _random_terms(M: FFModule, rng: np.random.Generator) -> tuple[tuple[int, Word], ...]:
    F = M.field
    ngens = len(M.gens)
    terms = [(int(F.random(rng)), ())]
    for _ in range(int(rng.integers(2, 6))):
        if ngens == 0:
            break
        length = int(rng.integers(1, 5))
        w = tuple(int(x) for x in rng.integers(0, ngens, size=length))
        terms.append((int(F.random(rng)), w))
    return tuple(terms)


def split(M: FFModule, rng: np.random.Generator, budget: int = DEFAULT_BUDGET):
    """Return a proper submodule (rows) or a Certificate of irreducibility."""
    F = M.field
    n = M.dim
    if n == 1:
        return Certificate(((1, ()),), 1)
    for _ in range(budget):
        terms = _random_terms(M, rng)
        T = M.algebra_element(terms)
        for lam in F.charpoly_roots(T):
            A = F.sub(T, F.mul(F.eye(n), lam))
            N = F.nullspace(A)
            if N.shape[0] == 1:
                v = N[0]
            else:
                v = F.matmul(F.random(rng, N.shape[0]), N)
                if not v.any():
                    v = N[0]
            S, _ = spin(F, M.gens, v)
            if S.shape[0] < n:
                return S
            if N.shape[0] == 1:
                w = F.nullspace(A.T)[0]
                Sd, _ = spin(F, [g.T for g in M.gens], w)
                if Sd.shape[0] < n:
                    return F.nullspace(Sd)
                return Certificate(terms, lam)
    raise MeatAxeError("no split or certificate within the retry budget")


def certify(M: FFModule, rng: np.random.Generator) -> Certificate:
    res = split(M, rng)
    if not isinstance(res, Certificate):
        raise MeatAxeError("module is reducible")
    M.certificate = res
    return res


def is_irreducible(M: FFModule, rng: np.random.Generator) -> bool:
    res = split(M, rng)
    if isinstance(res, Certificate):
        M.certificate = res
        return True
    return False


def _standard_basis(M: FFModule, cert: Certificate):
    F = M.field
    T = M.algebra_element(cert.terms)
    A = F.sub(T, F.mul(F.eye(M.dim), cert.eigenvalue))
    N = F.nullspace(A)
    if N.shape[0] != 1:
        return None
    basis, recipe = spin(F, M.gens, N[0])
    return basis, recipe


def _matrices_in_basis(M: FFModule, P: np.ndarray) -> list[np.ndarray] | None:
    F = M.field
    try:
        Pinv = F.inverse(P)
    except ZeroDivisionError:
        return None
    return [F.matmul(Pinv, F.matmul(g, P)) for g in M.gens]


def is_isomorphic(M1: FFModule, M2: FFModule, rng: np.random.Generator | None = None) -> bool:
    """Isomorphism test for irreducible modules given on matching generators."""
    if M1.field != M2.field or len(M1.gens) != len(M2.gens):
        raise MeatAxeError("modules over different fields or generator lists")
    if M1.dim != M2.dim:
        return False
    rng = rng if rng is not None else np.random.default_rng(0)
    cert = M1.certificate or certify(M1, rng)
    if M2.certificate is None:
        certify(M2, rng)
    sb1 = _standard_basis(M1, cert)
    assert sb1 is not None
    basis1, recipe = sb1
    F = M2.field
    T2 = M2.algebra_element(cert.terms)
    N2 = F.nullspace(F.sub(T2, F.mul(F.eye(M2.dim), cert.eigenvalue)))
    if N2.shape[0] != 1:
        return False
    basis2 = replay(F, M2.gens, N2[0], recipe)
    m1 = _matrices_in_basis(M1, basis1.T)
    m2 = _matrices_in_basis(M2, basis2.T)
    if m1 is None or m2 is None:
        return False
    return all(np.array_equal(a, b) for a, b in zip(m1, m2))


@dataclass
class Factor:
    module: FFModule
    multiplicity: int


def chop(M: FFModule, rng: np.random.Generator, budget: int = DEFAULT_BUDGET) -> list[Factor]:
    """Composition factors up to isomorphism, with multiplicities."""
    found: list[FFModule] = []
    stack = [(M, rng)]
    while stack:
        mod, r = stack.pop()
        if mod.dim == 0:
            continue
        res = split(mod, r, budget)
        if isinstance(res, Certificate):
            mod.certificate = res
            found.append(mod)
            continue
        left, right = r.spawn(2)
        # quotient pushed first so submodule factors are discovered first
        stack.append((mod.quotient(res), right))
        stack.append((mod.submodule(res), left))
    classes: list[Factor] = []
    for mod in found:
        for fac in classes:
            if is_isomorphic(fac.module, mod, rng):
                fac.multiplicity += 1
                break
        else:
            classes.append(Factor(mod, 1))
    if sum(f.module.dim * f.multiplicity for f in classes) != M.dim:
        raise MeatAxeError("factor dimensions do not add up")  # pragma: no cover
    return classes
