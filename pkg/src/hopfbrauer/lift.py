"""Lifting roots of unity from GF(p^d) to Z[zeta_m] and back.

``omega_bar`` is fixed as ``g**((q-1)//m)`` for the field's deterministic
primitive element ``g``; reduction sends ``zeta_m**j`` to ``omega_bar**j``.
Because the choice comes from one primitive element, the lifts for different
m inside one field are compatible (``omega_bar_m = omega_bar_mn**n``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .cyclotomic import Cyc
from .gf import GF, field, multiplicative_order


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class BrauerLift:
    p: int
    m: int
    d: int
    field: GF
    omega_bar: int
    dlog: dict = dc_field(repr=False)  # omega_bar**j -> j

    def lift(self, a: int) -> Cyc:
        """f^-1 on the m-th roots of unity of the field."""
        try:
            return Cyc.zeta(self.m, self.dlog[a])
        except KeyError:
            raise LiftError(f"{a} is not an {self.m}-th root of unity in {self.field}") from None

    def power(self, j: int) -> int:
        return self.field.power(self.omega_bar, j)

    def reduce(self, c: Cyc) -> int:
        """Image of a p-integral element of Q(zeta_m) in the field."""
        if self.m % c.m:
            c = c.minimal()
            if self.m % c.m:
                raise LiftError(f"conductor {c.m} does not divide {self.m}")
        c = c.promote(self.m)
        F = self.field
        acc = 0
        for j, coef in enumerate(c.coeffs):
            if not coef:
                continue
            coef = Fraction(coef)
            if coef.denominator % self.p == 0:
                raise LiftError(f"{c} is not p-integral for p = {self.p}")
            val = coef.numerator * pow(coef.denominator, -1, self.p) % self.p
            acc = int(F.add(acc, F.mul(val, self.power(j))))
        return acc

    def to_json(self) -> dict:
        return {
            "p": self.p, "m": self.m, "d": self.d,
            "field": self.field.describe(),
            "omega_bar": self.omega_bar,
            "dlog": {str(a): j for a, j in sorted(self.dlog.items(), key=lambda kv: kv[1])},
        }


def build_lift(p: int, m: int, working: GF | None = None) -> BrauerLift:
    """Lift data for m-th roots of unity, in ``working`` or the smallest field holding them."""
    if math.gcd(m, p) != 1:
        raise LiftError(f"m = {m} is not prime to p = {p}")
    d = multiplicative_order(p, m)
    F = working if working is not None else field(p, d)
    if F.p != p or F.d % d:
        raise LiftError(f"{F} does not contain the {m}-th roots of unity")
    omega_bar = F.exp((F.q - 1) // m)
    dlog = {}
    x = 1
    for j in range(m):
        dlog[x] = j
        x = int(F.mul(x, omega_bar))
    assert x == 1 and len(dlog) == m
    return BrauerLift(p, m, d, F, omega_bar, dlog)


def eigen_multiplicities(A: np.ndarray, lift: BrauerLift, singular: bool = False) -> dict[int, int]:
    """Map j -> dim ker(A - omega_bar^j) over the lift's field.

    With ``singular`` the eigenvalue 0 is allowed and reported under key -1
    with its algebraic multiplicity (dim ker A^n), so nilpotent parts are
    fine.  The nonzero eigenspaces together with that generalized kernel must
    fill the whole space; anything else is an internal inconsistency.
    """
    F = lift.field
    n = A.shape[0]
    mults = {}
    I = F.eye(n)
    for j in range(lift.m):
        k = n - F.rank(F.sub(A, F.mul(I, lift.power(j))))
        if k:
            mults[j] = k
    if singular:
        P = A
        for _ in range(max(1, (n - 1).bit_length())):
            P = F.matmul(P, P)
        k = n - F.rank(P)
        if k:
            mults[-1] = k
    if sum(mults.values()) != n:
        raise LiftError("matrix is not diagonalizable over m-th roots of unity (and 0)")
    return mults


def brauer_value(A: np.ndarray, lift: BrauerLift, singular: bool = False) -> Cyc:
    """Sum of the lifted (nonzero) eigenvalues of A."""
    mults = eigen_multiplicities(A, lift, singular=singular)
    return Cyc.from_exponents(lift.m, {j: k for j, k in mults.items() if j >= 0})
