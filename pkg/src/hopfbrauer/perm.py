"""Permutation groups small enough to enumerate element by element.

Composition is right-to-left: ``(s * t)(i) == s(t(i))``.  Points are stored
0-based; cycle notation on input/output is 1-based.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

DEFAULT_ELEMENT_CAP = 10**6


class GroupError(ValueError):
    pass


class Perm(tuple):
    """A permutation of ``range(n)`` stored as its tuple of images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        self = super().__new__(cls, images)
        if sorted(self) != list(range(len(self))):
            raise GroupError(f"not a permutation: {tuple(self)}")
        return self

    @classmethod
    def _raw(cls, images) -> "Perm":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._raw(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Perm":
        cycles = parse_cycles(text)
        top = max((max(c) for c in cycles if c), default=0)
        n = top if degree is None else degree
        if top > n:
            raise GroupError(f"point {top} exceeds degree {n}")
        images = list(range(n))
        seen: set[int] = set()
        for c in cycles:
            if seen.intersection(c):
                raise GroupError(f"cycles are not disjoint in {text!r}")
            seen.update(c)
            for i, pt in enumerate(c):
                images[pt - 1] = c[(i + 1) % len(c)] - 1
        return cls._raw(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":
        if not isinstance(other, Perm):
            return NotImplemented
        if len(other) != len(self):
            raise GroupError("degree mismatch")
        return Perm._raw(self[i] for i in other)

    __rmul__ = None  # block tuple repetition

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, i: int) -> int:
        return self[i]

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm._raw(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its smallest point."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def to_cycles(self) -> str:
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cs)

    def __repr__(self) -> str:
        return f"Perm({self.to_cycles()})"

    __str__ = to_cycles


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    text = text.strip()
    if not text:
        return []
    if _CYCLE_RE.sub("", text).strip():
        raise GroupError(f"cannot parse cycle notation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if len(set(pts)) != len(pts) or any(pt < 1 for pt in pts):
            raise GroupError(f"bad cycle ({body})")
        if len(pts) > 1:
            cycles.append(tuple(pts))
    return cycles


def element_order(g: Perm) -> int:
    return math.lcm(*(len(c) for c in g.cycles())) if not g.is_identity() else 1


def p_parts(g: Perm, p: int) -> tuple[Perm, Perm]:
    """Split ``g = u*s = s*u`` into its p-part ``u`` and p-regular part ``s``."""
    n = element_order(g)
    pa = 1
    while n % (pa * p) == 0:
        pa *= p
    m = n // pa
    # alpha*m == 1 (mod p^a), beta*p^a == 1 (mod m)
    alpha = pow(m, -1, pa) if pa > 1 else 0
    beta = pow(pa, -1, m) if m > 1 else 0
    return g ** (alpha * m), g ** (beta * pa)


@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    name: str = ""
    index: dict = field(repr=False, default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.index

    def exponent(self) -> int:
        return math.lcm(*(element_order(g) for g in self.elements))

    def p_regular(self, p: int) -> list[Perm]:
        return [g for g in self.elements if element_order(g) % p]

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.elements)

    def subgroup(self, generators: Sequence[Perm], name: str = "") -> "PermGroup":
        for g in generators:
            if g not in self:
                raise GroupError(f"{g} is not in {self.name or 'the group'}")
        return enumerate_group(generators, self.degree, name=name)

    def words(self) -> dict[Perm, tuple[int, ...]]:
        """Shortest generator word (left to right product) for every element."""
        words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for i, s in enumerate(self.generators):
                    h = g * s
                    if h not in words:
                        words[h] = words[g] + (i,)
                        nxt.append(h)
            frontier = nxt
        return words

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} of order {self.order} on {self.degree} points>"


def enumerate_group(generators: Iterable[Perm], degree: int, name: str = "",
                    cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    gens = []
    for g in generators:
        g = g if isinstance(g, Perm) else Perm(g)
        if len(g) != degree:
            raise GroupError(f"generator {g} has degree {len(g)}, expected {degree}")
        if not g.is_identity() and g not in gens:
            gens.append(g)
    ident = Perm.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > cap:
                        raise GroupError(f"group exceeds element cap {cap}")
        frontier = nxt
    elements = tuple(sorted(seen))
    return PermGroup(degree, tuple(gens), elements, name,
                     {g: i for i, g in enumerate(elements)})


def symmetric_group(n: int, fixing: int | None = None) -> PermGroup:
    """S_n, or the copy of S_{n-1} fixing the 1-based point ``fixing``."""
    pts = [i for i in range(n) if i + 1 != fixing]
    gens = []
    for a, b in zip(pts, pts[1:]):
        im = list(range(n))
        im[a], im[b] = b, a
        gens.append(Perm._raw(im))
    label = f"S{len(pts)}"
    return enumerate_group(gens, n, name=label)


def cyclic_group(n: int) -> PermGroup:
    z = Perm._raw([(i + 1) % n for i in range(n)])
    return enumerate_group([z], n, name=f"C{n}")


@dataclass(frozen=True, eq=False)
class ConjClasses:
    group: PermGroup
    representatives: tuple[Perm, ...]
    members: tuple[tuple[Perm, ...], ...]
    class_of: dict = field(repr=False)
    centralizer_orders: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.representatives)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.members)

    def rep_orders(self) -> tuple[int, ...]:
        return tuple(element_order(r) for r in self.representatives)

    def inverse_class(self, i: int) -> int:
        return self.class_of[self.representatives[i].inverse()]

    def power_class(self, i: int, k: int) -> int:
        return self.class_of[self.representatives[i] ** k]


def conjugacy_classes(G: PermGroup) -> ConjClasses:
    """Conjugacy classes ordered by (element order, minimal member)."""
    seen: set[Perm] = set()
    found = []
    gens = G.generators
    for g in G.elements:
        if g in seen:
            continue
        orbit = {g}
        frontier = [g]
        while frontier:
            nxt = []
            for h in frontier:
                for s in gens:
                    c = s * h * s.inverse()
                    if c not in orbit:
                        orbit.add(c)
                        nxt.append(c)
            frontier = nxt
        seen |= orbit
        members = tuple(sorted(orbit))
        found.append(members)
    found.sort(key=lambda m: (element_order(m[0]), m[0]))
    class_of = {}
    for i, members in enumerate(found):
        for h in members:
            class_of[h] = i
    return ConjClasses(
        group=G,
        representatives=tuple(m[0] for m in found),
        members=tuple(found),
        class_of=class_of,
        centralizer_orders=tuple(G.order // len(m) for m in found),
    )


def p_regular_classes(cc: ConjClasses, p: int) -> list[int]:
    return [i for i, r in enumerate(cc.representatives) if element_order(r) % p]


@dataclass(frozen=True)
class Orbit:
    points: tuple
    representative: Hashable
    stabilizer: PermGroup
    transversal: tuple[Perm, ...]
    # transversal[i] carries points[i] onto the representative
    point_index: dict = field(repr=False, compare=False)


def orbits_and_stabilizers(F: PermGroup, X: Sequence[Hashable],
                           act: Callable[[Hashable, Perm], Hashable],
                           check: bool = True) -> list[Orbit]:
    """Orbits of a right action ``act(x, a)`` of F on X.

    Each orbit comes with its minimal point ``r`` as representative, the
    stabilizer ``F_r`` and one element ``t_y`` per orbit point ``y`` with
    ``act(y, t_y) == r``; the ``t_y`` form a transversal of the cosets
    ``t F_r``.
    """
    if check:
        Xs = set(X)
        for x in X:
            if act(x, F.identity) != x:
                raise GroupError(f"identity moves {x}")
            for a in F.generators:
                xa = act(x, a)
                if xa not in Xs:
                    raise GroupError("action leaves the set")
                for b in F.generators:
                    if act(xa, b) != act(x, a * b):
                        raise GroupError(f"action axiom fails at {x}, {a}, {b}")
    order = {x: i for i, x in enumerate(sorted(X))}
    done: set = set()
    out = []
    for x in sorted(X):
        if x in done:
            continue
        # reach[y] = some h with act(x, h) == y
        reach = {x: F.identity}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for a in F.generators:
                    z = act(y, a)
                    if z not in reach:
                        reach[z] = reach[y] * a
                        nxt.append(z)
            frontier = nxt
        done.update(reach)
        stab_elems = [a for a in F.elements if act(x, a) == x]
        stab = PermGroup(F.degree, tuple(_small_generating_set(stab_elems, F.degree)),
                         tuple(stab_elems), f"{F.name or 'F'}_{x}",
                         {g: i for i, g in enumerate(stab_elems)})
        points = tuple(sorted(reach, key=order.__getitem__))
        trans = []
        for y in points:
            # all t with act(y, t) == x form reach[y]^-1 * stab; keep the smallest
            base = reach[y].inverse()
            trans.append(min(base * c for c in stab_elems))
        out.append(Orbit(points, x, stab, tuple(trans),
                         {y: i for i, y in enumerate(points)}))
    return out


def _small_generating_set(elements: Sequence[Perm], degree: int) -> list[Perm]:
    """Greedy generating set: add elements until the closure is everything."""
    target = len(elements)
    gens: list[Perm] = []
    closure = {Perm.identity(degree)}
    for g in sorted(elements, key=lambda e: (-element_order(e), e)):
        if len(closure) == target:
            break
        if g in closure:
            continue
        gens.append(g)
        closure = set(enumerate_group(gens, degree).elements)
    return gens


def parse_generator_block(lines: Iterable[str], degree: int | None = None) -> list[Perm]:
    cycles = [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")]
    return [Perm.from_cycles(c, degree) for c in cycles]
