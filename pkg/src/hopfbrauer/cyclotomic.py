"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are coordinate vectors over the power basis 1, z, ..., z^(phi(m)-1)
reduced modulo the m-th cyclotomic polynomial.  Coordinates are ints when
possible and Fractions otherwise; an element is an algebraic integer iff all
coordinates are integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Scalar = int | Fraction


def _norm(c) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds the coordinates of z^k for k in range(m)."""
    phi = cyclotomic_poly(m)
    n = len(phi) - 1
    rows = []
    cur = [1] + [0] * (n - 1)
    for _ in range(m):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


class Cyc:
    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs: Sequence[Scalar]):
        n = euler_phi(m)
        if len(coeffs) != n:
            raise ValueError(f"need {n} coordinates for conductor {m}")
        self.m = m
        self.coeffs = tuple(_norm(c) for c in coeffs)
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_exponents(cls, m: int, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]]) -> "Cyc":
        """sum of c * z_m^k over the given (k, c) pairs."""
        table = _power_table(m)
        acc = [0] * euler_phi(m)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            if c:
                row = table[k % m]
                for i, r in enumerate(row):
                    if r:
                        acc[i] += c * r
        return cls(m, acc)

    @classmethod
    def rational(cls, c: Scalar) -> "Cyc":
        return cls(1, [c])

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyc":
        return cls.from_exponents(m, {k: 1})

    @classmethod
    def coerce(cls, x) -> "Cyc":
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Rational)):
            return cls.rational(Fraction(x))
        raise TypeError(f"cannot make a cyclotomic number from {x!r}")

    # conductor changes --------------------------------------------------
    def promote(self, M: int) -> "Cyc":
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"conductor {self.m} does not divide {M}")
        step = M // self.m
        return Cyc.from_exponents(M, ((i * step, c) for i, c in enumerate(self.coeffs) if c))

    def demote(self, d: int) -> "Cyc | None":
        """The same number at conductor d, or None if it does not lie there."""
        if self.m % d:
            raise ValueError(f"{d} does not divide the conductor {self.m}")
        if d == self.m:
            return self
        if not self._galois_fixed(d):
            return None
        basis = [Cyc.zeta(d, k).promote(self.m).coeffs for k in range(euler_phi(d))]
        sol = _solve_rational(basis, self.coeffs)
        return None if sol is None else Cyc(d, sol)

    def _galois_fixed(self, d: int) -> bool:
        for t in range(1, self.m):
            if t % d == 1 % d and math.gcd(t, self.m) == 1 and t != 1:
                if self.galois(t) != self:
                    return False
        return True

    def minimal(self) -> "Cyc":
        if all(c == 0 for c in self.coeffs[1:]):
            return Cyc(1, self.coeffs[:1])
        for d in sorted(d for d in range(1, self.m + 1) if self.m % d == 0):
            low = self.demote(d)
            if low is not None:
                return low
        return self

    # arithmetic --------------------------------------------------------
    def _pair(self, other) -> tuple["Cyc", "Cyc"]:
        other = Cyc.coerce(other)
        if other.m == self.m:
            return self, other
        M = math.lcm(self.m, other.m)
        return self.promote(M), other.promote(M)

    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return Cyc(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return Cyc(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return Cyc(self.m, [c * other for c in self.coeffs])
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        m = a.m
        full = [0] * m
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        full[(i + j) % m] += x * y
        return Cyc.from_exponents(m, enumerate(full))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return Cyc(self.m, [Fraction(c) / other for c in self.coeffs])
        return self * Cyc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyc.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyc.rational(1).promote(self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def multiplication_matrix(self) -> list[list[Scalar]]:
        """Column i holds the coordinates of self * z^i."""
        cols = [(self * Cyc.zeta(self.m, i)).coeffs for i in range(len(self.coeffs))]
        return [[cols[i][r] for i in range(len(cols))] for r in range(len(cols))]

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        mat = self.multiplication_matrix()
        one = [1] + [0] * (len(self.coeffs) - 1)
        cols = [[mat[r][i] for r in range(len(mat))] for i in range(len(mat))]
        sol = _solve_rational(cols, one)
        assert sol is not None
        return Cyc(self.m, sol)

    def galois(self, t: int) -> "Cyc":
        """Image under the automorphism z -> z^t."""
        if math.gcd(t, self.m) != 1:
            raise ValueError(f"{t} is not a unit mod {self.m}")
        return Cyc.from_exponents(self.m, ((i * t, c) for i, c in enumerate(self.coeffs) if c))

    def conjugate(self) -> "Cyc":
        return self.galois(-1)

    # predicates and conversion -----------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.minimal().m == 1

    def to_rational(self) -> Scalar:
        low = self.minimal()
        if low.m != 1:
            raise ValueError(f"{self} is not rational")
        return low.coeffs[0]

    def __complex__(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.m), math.sin(2 * math.pi / self.m))
        return sum(complex(float(c)) * z**i for i, c in enumerate(self.coeffs))

    def __eq__(self, other) -> bool:
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            low = self.minimal()
            self._hash = hash((low.m, low.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        low = self.minimal()
        if low.m == 1:
            return str(low.coeffs[0])
        parts = []
        for i, c in enumerate(low.coeffs):
            if not c:
                continue
            base = "1" if i == 0 else (f"E({low.m})" if i == 1 else f"E({low.m})^{i}")
            if i == 0:
                term = str(c)
            elif c == 1:
                term = base
            elif c == -1:
                term = "-" + base
            else:
                term = f"{c}*{base}"
            parts.append(term)
        out = "+".join(parts).replace("+-", "-")
        return out

    def __repr__(self) -> str:
        return f"Cyc({self})"

    def to_json(self) -> dict:
        low = self.minimal()
        return {"conductor": low.m, "coeffs": [str(c) for c in low.coeffs]}


def _solve_rational(columns: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Scalar] | None:
    """Solve sum_j x_j * columns[j] == rhs exactly; None if inconsistent."""
    n = len(columns)
    rows = len(rhs)
    aug = [[Fraction(columns[j][r]) for j in range(n)] + [Fraction(rhs[r])] for r in range(rows)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][n] for i in range(r, rows)):
        return None
    x: list[Scalar] = [0] * n
    for i, c in enumerate(pivots):
        x[c] = _norm(aug[i][n])
    return x


def zero(m: int = 1) -> Cyc:
    return Cyc(m, [0] * euler_phi(m))


def one(m: int = 1) -> Cyc:
    return Cyc.rational(1).promote(m)
