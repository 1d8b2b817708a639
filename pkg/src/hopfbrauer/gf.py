"""Finite fields GF(p^d) and dense linear algebra over them.

Field elements are encoded as ints ``sum c_i p^i`` (the coefficients of the
residue polynomial in the defining root).  Matrices are numpy int64 arrays of
codes.  Prime fields use plain modular arithmetic; extension fields use
exp/log tables built from a deterministic primitive element.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 1 << 20
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def multiplicative_order(a: int, m: int) -> int:
    """Least k >= 1 with a^k == 1 (mod m)."""
    if m == 1:
        return 1
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


# polynomial helpers over GF(p), coefficient lists lowest degree first ------

def _pmod(num: list[int], den: list[int], p: int) -> list[int]:
    num = [c % p for c in num]
    inv = pow(den[-1], -1, p)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] * inv % p
        if c:
            for j, d in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * d) % p
    out = num[:dd]
    while out and out[-1] == 0:
        out.pop()
    return out


def _is_irreducible(poly: list[int], p: int) -> bool:
    d = len(poly) - 1
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _pmod(poly, list(low) + [1], p):
                return False
    return True


def find_modulus(p: int, d: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree d, ordered by the code of its lower coefficients."""
    if d == 1:
        return (0, 1)
    for code in range(p**d):
        low = [(code // p**i) % p for i in range(d)]
        if low[0] == 0:
            continue
        poly = low + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {d} over GF({p})")


class GF:
    """The field with p^d elements."""

    def __init__(self, p: int, d: int = 1):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if d < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**d
        if q > MAX_FIELD_SIZE:
            raise FieldError(f"GF({p}^{d}) exceeds the supported size")
        self.p, self.d, self.q = p, d, q
        self.modulus = find_modulus(p, d)
        self._weights = np.array([p**i for i in range(d)], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._digits = np.stack([(codes // p**i) % p for i in range(d)], axis=1)
        self.primitive = self._find_primitive()
        self._build_tables()

    # construction -----------------------------------------------------
    def _slow_mul(self, a: int, b: int) -> int:
        p, d = self.p, self.d
        if d == 1:
            return a * b % p
        da = [(a // p**i) % p for i in range(d)]
        db = [(b // p**i) % p for i in range(d)]
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        red = _pmod(prod, list(self.modulus), p)
        return sum(c * p**i for i, c in enumerate(red))

    def _find_primitive(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        primes = [f for f in range(2, n + 1) if n % f == 0 and is_prime(f)]
        for g in range(2, self.q) if self.d == 1 else range(1, self.q):
            if all(self._slow_pow(g, n // f) != 1 for f in primes):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _slow_pow(self, a: int, k: int) -> int:
        out, base = 1, a
        while k:
            if k & 1:
                out = self._slow_mul(out, base)
            base = self._slow_mul(base, base)
            k >>= 1
        return out

    def _build_tables(self) -> None:
        n = self.q - 1
        exp = np.zeros(2 * n + 1, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, self.primitive)
        exp[n:2 * n] = exp[:n]
        exp[2 * n] = exp[0]
        self._exp, self._log = exp, log
        if self.d > 1 and self.q <= _ADD_TABLE_LIMIT:
            c = np.arange(self.q)
            self._add_table = self._digit_add(c[:, None], c[None, :])
        else:
            self._add_table = None

    # scalar/vector arithmetic -----------------------------------------
    def _digit_add(self, a, b, sign: int = 1):
        s = (self._digits[a] + sign * self._digits[b]) % self.p
        return s @ self._weights

    def add(self, a, b):
        if self.d == 1:
            return (np.asarray(a) + b) % self.p
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._digit_add(a, b)

    def neg(self, a):
        if self.d == 1:
            return (-np.asarray(a)) % self.p
        return ((-self._digits[a]) % self.p) @ self._weights

    def sub(self, a, b):
        if self.d == 1:
            return (np.asarray(a) - b) % self.p
        if self._add_table is not None:
            return self._add_table[a, self.neg(b)]
        return self._digit_add(a, b, -1)

    def mul(self, a, b):
        if self.d == 1:
            return (np.asarray(a) * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of 0 in finite field")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return int(self._exp[(int(self._log[a]) * k) % (self.q - 1)])

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of 0")
        return int(self._log[a])

    def exp(self, k: int) -> int:
        return int(self._exp[k % (self.q - 1)])

    def element_order(self, a: int) -> int:
        n = self.q - 1
        return n // math.gcd(n, self.log(a))

    def frobenius(self, a):
        return self.mul_pow(a, self.p)

    def mul_pow(self, a, k: int):
        a = np.asarray(a)
        out = self._exp[(self._log[a] * k) % (self.q - 1)]
        return np.where(a == 0, 0 if k else 1, out)

    def from_int(self, n: int) -> int:
        """Image of the integer n (the prime subfield is coded 0..p-1)."""
        return n % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape=None):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self) -> int:
        return hash((self.p, self.d))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.d})" if self.d > 1 else f"GF({self.p})"

    def describe(self) -> dict:
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus),
                "primitive_element": self.primitive}

    # matrices -----------------------------------------------------------
    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def matmul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.d == 1:
            if A.shape[-1] * (self.p - 1) ** 2 < (1 << 62):
                return (A @ B) % self.p
            return np.asarray((A.astype(object) @ B.astype(object)) % self.p, dtype=np.int64)
        if A.ndim == 1:
            return self.matmul(A[None, :], B)[0]
        if B.ndim == 1:
            return self.matmul(A, B[:, None])[:, 0]
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(A.shape[1]):
            col = A[:, k]
            if not col.any():
                continue
            out = self.add(out, self.mul(col[:, None], B[k][None, :]))
        return out

    def scale(self, c: int, A) -> np.ndarray:
        return self.mul(np.asarray(A), c)

    def trace(self, A) -> int:
        t = 0
        for i in range(A.shape[0]):
            t = int(self.add(t, A[i, i]))
        return t

    def rref(self, A) -> tuple[np.ndarray, list[int]]:
        A = np.array(A, dtype=np.int64, copy=True)
        if A.ndim != 2:
            raise ValueError("rref needs a matrix")
        rows, cols = A.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                A[[r, i]] = A[[i, r]]
            A[r] = self.mul(A[r], self.inv(A[r, c]))
            col = A[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                A[hit] = self.sub(A[hit], self.mul(col[hit, None], A[r][None, :]))
            pivots.append(c)
            r += 1
        return A, pivots

    def rank(self, A) -> int:
        A = np.asarray(A)
        if A.size == 0:
            return 0
        return len(self.rref(A)[1])

    def nullspace(self, A) -> np.ndarray:
        """Rows spanning {v : A v = 0}, in reduced form."""
        A = np.asarray(A, dtype=np.int64)
        cols = A.shape[1]
        if A.shape[0] == 0:
            return np.eye(cols, dtype=np.int64)
        R, piv = self.rref(A)
        free = [c for c in range(cols) if c not in set(piv)]
        out = np.zeros((len(free), cols), dtype=np.int64)
        for k, f in enumerate(free):
            out[k, f] = 1
            for i, c in enumerate(piv):
                out[k, c] = self.neg(R[i, f])
        return out

    def inverse(self, A) -> np.ndarray:
        n = A.shape[0]
        R, piv = self.rref(np.hstack([A, self.eye(n)]))
        if len(piv) < n or piv[n - 1] != n - 1:
            raise ZeroDivisionError("singular matrix")
        return R[:, n:]

    def solve(self, A, b) -> np.ndarray | None:
        """One solution x of A x = b, or None."""
        A = np.asarray(A, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
        R, piv = self.rref(np.hstack([A, b]))
        n = A.shape[1]
        if piv and piv[-1] == n:
            return None
        x = np.zeros(n, dtype=np.int64)
        for i, c in enumerate(piv):
            x[c] = R[i, n]
        return x

    def charpoly_roots(self, A) -> list[int]:
        """Eigenvalues of A that lie in this field, in code order."""
        n = A.shape[0]
        I = self.eye(n)
        return [lam for lam in range(self.q)
                if self.rank(self.sub(A, self.mul(I, lam))) < n]

    def poly_eval(self, coeffs, x):
        """Evaluate sum coeffs[i] x^i (coefficients are field codes)."""
        x = np.asarray(x)
        acc = np.zeros_like(x)
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, x), c)
        return acc


@lru_cache(maxsize=None)
def field(p: int, d: int = 1) -> GF:
    return GF(p, d)
