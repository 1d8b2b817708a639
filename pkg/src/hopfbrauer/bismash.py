"""The bismash product Hopf algebra H = E^G # EF of a factorization Q = FG.

Basis elements ``p_y # a`` are pairs ``(y, a)`` with y in G, a in F.

    (p_x # a)(p_y # b) = [y == x <| a] p_x # ab
    S(p_x # a)         = p_{(x <| a)^-1} # (x |> a)^-1
    eps(p_x # a)       = [x == 1]
    Delta(p_x # a)     = sum_{u v = x} (p_u # (v |> a)) (x) (p_v # a)

The coproduct is not spelled out where the other structure maps come from,
so every constructed H is run through the full axiom battery.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from .factored import FactoredGroup
from .perm import Perm, element_order

Basis = tuple[Perm, Perm]

COMPOSITION_CONVENTION = "right-to-left: (s*t)(i) = s(t(i))"
DELTA_VARIANT = "Delta(p_x#a) = sum_{uv=x} p_u#(v|>a) (x) p_v#a"


class HopfAxiomError(AssertionError):
    pass


def format_basis(w: Basis) -> str:
    return f"p[{w[0].to_cycles()}]#{w[1].to_cycles()}"


class HElem:
    """Sparse linear combination of basis elements of one bismash product."""

    __slots__ = ("H", "terms")

    def __init__(self, H: "BismashProduct", terms: dict | Iterable = ()):
        self.H = H
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        for w, c in items:
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in acc.items() if c != 0}

    def _check(self, other: "HElem") -> None:
        if not isinstance(other, HElem) or other.H is not self.H:
            raise TypeError("elements of different bismash products")

    def __add__(self, other: "HElem") -> "HElem":
        self._check(other)
        return HElem(self.H, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "HElem") -> "HElem":
        return self + other.scale(-1)

    def scale(self, c) -> "HElem":
        return HElem(self.H, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "HElem") -> "HElem":
        if not isinstance(other, HElem):
            return self.scale(other)
        self._check(other)
        out = []
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                uv = self.H.mul_basis(u, v)
                if uv is not None:
                    out.append((uv, c * d))
        return HElem(self.H, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, HElem) and other.H is self.H and self.terms == other.terms

    def __hash__(self):  # pragma: no cover - mutable-ish value type
        raise TypeError("HElem is unhashable")

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{format_basis(w)}" for w, c in sorted(self.terms.items()))


class BismashProduct:
    def __init__(self, fg: FactoredGroup, verify: bool = True):
        self.fg = fg
        self.G = fg.G
        self.F = fg.F
        self.one_G = fg.G.identity
        self.one_F = fg.F.identity
        self.basis: list[Basis] = [(y, a) for y in fg.G.elements for a in fg.F.elements]
        self.index = {w: i for i, w in enumerate(self.basis)}
        if verify:
            report = self.axiom_report()
            bad = [k for k, ok in report.items() if not ok]
            if bad:
                raise HopfAxiomError(f"Hopf axioms fail: {', '.join(bad)}")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    # structure maps on basis elements ------------------------------------
    def mul_basis(self, u: Basis, v: Basis) -> Basis | None:
        (x, a), (y, b) = u, v
        if y == self.fg.lhd_table[x, a]:
            return (x, a * b)
        return None

    def antipode(self, w: Basis) -> Basis:
        x, a = w
        return (self.fg.lhd_table[x, a].inverse(), self.fg.rhd_table[x, a].inverse())

    def counit(self, w: Basis) -> int:
        return 1 if w[0] == self.one_G else 0

    def comultiply(self, w: Basis) -> list[tuple[Basis, Basis]]:
        x, a = w
        out = []
        for u in self.G.elements:
            v = u.inverse() * x
            out.append(((u, self.fg.rhd_table[v, a]), (v, a)))
        return out

    # elements ---------------------------------------------------------------
    def elem(self, w: Basis, c=1) -> HElem:
        return HElem(self, {w: c})

    def unit(self) -> HElem:
        return HElem(self, {(y, self.one_F): 1 for y in self.G.elements})

    def group_element(self, a: Perm) -> HElem:
        """1 # a = sum_y p_y # a."""
        return HElem(self, {(y, a): 1 for y in self.G.elements})

    def multiply(self, u: HElem, v: HElem) -> HElem:
        return u * v

    def antipode_elem(self, h: HElem) -> HElem:
        return HElem(self, [(self.antipode(w), c) for w, c in h.terms.items()])

    def counit_elem(self, h: HElem):
        return sum((c for w, c in h.terms.items() if w[0] == self.one_G), 0)

    def integral(self) -> HElem:
        """Normalized left integral |F|^-1 sum_a p_1 # a."""
        c = Fraction(1, self.F.order)
        return HElem(self, {(self.one_G, a): c for a in self.F.elements})

    def mult_comult(self, h: HElem) -> HElem:
        """m(Delta(h)) = sum h_1 h_2."""
        out = []
        for w, c in h.terms.items():
            for l, r in self.comultiply(w):
                lr = self.mul_basis(l, r)
                if lr is not None:
                    out.append((lr, c))
        return HElem(self, out)

    def power(self, w: Basis, k: int) -> HElem:
        out = self.elem(w)
        for _ in range(k - 1):
            out = out * self.elem(w)
        return out

    def power_closed_form(self, w: Basis, k: int) -> HElem:
        y, a = w
        if self.fg.stabilizes(y, a):
            return self.elem((y, a**k))
        return HElem(self, {})

    # distinguished subsets ------------------------------------------------
    @cached_property
    def b_prime(self) -> list[Basis]:
        """Non-nilpotent basis elements: a in F_y."""
        return [w for w in self.basis if self.fg.stabilizes(*w)]

    def b_p_regular(self, p: int) -> list[Basis]:
        return [w for w in self.b_prime if element_order(w[1]) % p]

    def nilpotent_by_square(self) -> list[Basis]:
        return [w for w in self.basis if self.mul_basis(w, w) is None]

    # axiom battery ------------------------------------------------------
    @cached_property
    def mult_table(self) -> np.ndarray:
        n = len(self.basis)
        T = np.full((n, n), -1, dtype=np.int64)
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                uv = self.mul_basis(u, v)
                if uv is not None:
                    T[i, j] = self.index[uv]
        return T

    def _delta_counter(self, w: Basis) -> Counter:
        return Counter(self.comultiply(w))

    def _tensor_product(self, A: Counter, B: Counter) -> Counter:
        out: Counter = Counter()
        for (l1, r1), c1 in A.items():
            for (l2, r2), c2 in B.items():
                l = self.mul_basis(l1, l2)
                r = self.mul_basis(r1, r2)
                if l is not None and r is not None:
                    out[l, r] += c1 * c2
        return +out

    def axiom_report(self) -> dict[str, bool]:
        basis = self.basis
        T = self.mult_table
        n = len(basis)
        r: dict[str, bool] = {}

        # associativity, vectorized over all triples
        ok = True
        for i in range(n):
            uv = T[i]  # u*v for all v
            left = np.where(uv[:, None] >= 0, T[np.maximum(uv, 0)], -1)
            vw = T  # v*w
            right = np.where(vw >= 0, T[i][np.maximum(vw, 0)], -1)
            if not np.array_equal(left, right):
                ok = False
                break
        r["associativity"] = ok

        unit = self.unit()
        r["unit"] = all(unit * self.elem(w) == self.elem(w) == self.elem(w) * unit for w in basis)

        deltas = {w: self._delta_counter(w) for w in basis}
        ok = True
        for w in basis:
            lhs: Counter = Counter()
            rhs: Counter = Counter()
            for (l, m), c in deltas[w].items():
                for (ll, lm), d in deltas[l].items():
                    lhs[ll, lm, m] += c * d
                for (ml, mr), d in deltas[m].items():
                    rhs[l, ml, mr] += c * d
            if lhs != rhs:
                ok = False
                break
        r["coassociativity"] = ok

        ok = True
        for w in basis:
            left = Counter()
            right = Counter()
            for (l, m), c in deltas[w].items():
                if self.counit(l):
                    left[m] += c
                if self.counit(m):
                    right[l] += c
            if +left != Counter({w: 1}) or +right != Counter({w: 1}):
                ok = False
                break
        r["counit"] = ok

        ok = True
        for i, u in enumerate(basis):
            for j, v in enumerate(basis):
                k = T[i, j]
                want = deltas[basis[k]] if k >= 0 else Counter()
                if self._tensor_product(deltas[u], deltas[v]) != want:
                    ok = False
                    break
            if not ok:
                break
        r["comultiplication_multiplicative"] = ok

        unit_delta = Counter()
        for y in self.G.elements:
            for l, m in self.comultiply((y, self.one_F)):
                unit_delta[l, m] += 1
        want = Counter({(l, m): 1 for l in unit.terms for m in unit.terms})
        r["comultiplication_unital"] = +unit_delta == want

        r["counit_multiplicative"] = all(
            self.counit(u) * self.counit(v) == (self.counit(basis[T[i, j]]) if T[i, j] >= 0 else 0)
            for i, u in enumerate(basis) for j, v in enumerate(basis))

        ok_left = ok_right = True
        for w in basis:
            want = Counter({(y, self.one_F): 1 for y in self.G.elements}) if self.counit(w) else Counter()
            left, right = Counter(), Counter()
            for l, m in self.comultiply(w):
                a = self.mul_basis(self.antipode(l), m)
                if a is not None:
                    left[a] += 1
                b = self.mul_basis(l, self.antipode(m))
                if b is not None:
                    right[b] += 1
            ok_left &= +left == want
            ok_right &= +right == want
        r["antipode_left"] = ok_left
        r["antipode_right"] = ok_right

        r["antipode_involution"] = all(self.antipode(self.antipode(w)) == w for w in basis)
        ok = True
        for i, u in enumerate(basis):
            for j, v in enumerate(basis):
                k = T[i, j]
                lhs = self.antipode(basis[k]) if k >= 0 else None
                rhs = self.mul_basis(self.antipode(v), self.antipode(u))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        r["antipode_antimultiplicative"] = ok

        lam = self.integral()
        r["integral_left"] = all(self.elem(w) * lam == lam.scale(self.counit(w)) for w in basis)
        r["integral_right"] = all(lam * self.elem(w) == lam.scale(self.counit(w)) for w in basis)
        r["integral_normalized"] = self.counit_elem(lam) == 1
        return r

    def describe(self) -> dict:
        return {
            "dimension": self.dimension,
            "composition_convention": COMPOSITION_CONVENTION,
            "delta_variant": DELTA_VARIANT,
        }
