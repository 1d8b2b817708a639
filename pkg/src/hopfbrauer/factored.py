"""Exact factorizations Q = FG and the mutual actions they induce.

Every q in Q is uniquely ``q = a * x`` with a in F, x in G.  For x in G and
a in F the product ``x * a`` refactors as ``(x |> a) * (x <| a)``; ``lhd``
(x <| a) is a right action of F on the set G, ``rhd`` (x |> a) lands in F.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .perm import (GroupError, Orbit, Perm, PermGroup, cyclic_group, enumerate_group,
                   orbits_and_stabilizers, parse_generator_block, symmetric_group)


class NotFactorizable(GroupError):
    pass


class NotSubgroup(GroupError):
    pass


@dataclass(eq=False)
class FactoredGroup:
    Q: PermGroup
    F: PermGroup
    G: PermGroup
    factors: dict = field(repr=False)   # q -> (a, x)
    rhd_table: dict = field(repr=False)  # (x, a) -> x |> a
    lhd_table: dict = field(repr=False)  # (x, a) -> x <| a
    name: str = ""

    def factorize(self, q: Perm) -> tuple[Perm, Perm]:
        try:
            return self.factors[q]
        except KeyError:
            raise GroupError(f"{q} is not in Q") from None

    def lhd(self, x: Perm, a: Perm) -> Perm:
        try:
            return self.lhd_table[x, a]
        except KeyError:
            raise GroupError(f"need x in G and a in F, got {x}, {a}") from None

    def rhd(self, x: Perm, a: Perm) -> Perm:
        try:
            return self.rhd_table[x, a]
        except KeyError:
            raise GroupError(f"need x in G and a in F, got {x}, {a}") from None

    @cached_property
    def orbits(self) -> list[Orbit]:
        """F-orbits on G under <|, representatives minimal in element order."""
        return orbits_and_stabilizers(self.F, self.G.elements, self.lhd, check=False)

    def orbit_of(self, y: Perm) -> Orbit:
        for orb in self.orbits:
            if y in orb.point_index:
                return orb
        raise GroupError(f"{y} is not in G")

    def stabilizes(self, y: Perm, a: Perm) -> bool:
        return self.lhd_table[y, a] == y

    def describe(self) -> dict:
        return {
            "name": self.name,
            "degree": self.Q.degree,
            "orders": {"Q": self.Q.order, "F": self.F.order, "G": self.G.order},
            "generators": {k: [g.to_cycles() for g in grp.generators]
                           for k, grp in (("Q", self.Q), ("F", self.F), ("G", self.G))},
            "orbits": [
                {
                    "representative": orb.representative.to_cycles(),
                    "points": [y.to_cycles() for y in orb.points],
                    "stabilizer_order": orb.stabilizer.order,
                }
                for orb in self.orbits
            ],
        }


def build(Q: PermGroup, F: PermGroup, G: PermGroup, name: str = "") -> FactoredGroup:
    for label, sub in (("F", F), ("G", G)):
        if not sub.is_subgroup_of(Q):
            raise NotSubgroup(f"{label} is not a subgroup of Q")
    if F.order * G.order != Q.order:
        raise NotFactorizable(f"|F|*|G| = {F.order * G.order} != |Q| = {Q.order}")
    if any(g in F for g in G.elements if not g.is_identity()):
        raise NotFactorizable("F and G intersect nontrivially")
    factors = {}
    for a in F.elements:
        for x in G.elements:
            q = a * x
            if q in factors:
                raise NotFactorizable(f"{q} factors twice")
            factors[q] = (a, x)
    if len(factors) != Q.order:
        raise NotFactorizable("FG does not cover Q")
    rhd, lhd = {}, {}
    for x in G.elements:
        for a in F.elements:
            b, y = factors[x * a]
            rhd[x, a] = b
            lhd[x, a] = y
    fg = FactoredGroup(Q, F, G, factors, rhd, lhd, name)
    check_axioms(fg)
    return fg


def check_axioms(fg: FactoredGroup) -> None:
    """Exhaustive check of the identities tying the two actions together."""
    one_F, one_G = fg.F.identity, fg.G.identity
    for x in fg.G.elements:
        if fg.lhd(x, one_F) != x or fg.rhd(x, one_F) != one_F:
            raise GroupError(f"identity of F acts nontrivially at {x}")
        for a in fg.F.elements:
            if x * a != fg.rhd(x, a) * fg.lhd(x, a):
                raise GroupError("x*a != (x|>a)(x<|a)")
    for a in fg.F.elements:
        if fg.lhd(one_G, a) != one_G or fg.rhd(one_G, a) != a:
            raise GroupError(f"1 <| a or 1 |> a wrong at {a}")
    for x in fg.G.elements:
        for a in fg.F.generators:
            xa = fg.lhd(x, a)
            for b in fg.F.elements:
                if fg.lhd(xa, b) != fg.lhd(x, a * b):
                    raise GroupError("<| is not a right action")
                if fg.rhd(x, a * b) != fg.rhd(x, a) * fg.rhd(xa, b):
                    raise GroupError("|> is not compatible with <|")


def sn_family(n: int) -> FactoredGroup:
    """S_n = S_{n-1} C_n: F fixes the point n, G is generated by (1 2 ... n)."""
    if n < 2:
        raise GroupError("need n >= 2")
    Q = symmetric_group(n)
    Q = PermGroup(Q.degree, Q.generators, Q.elements, f"S{n}", Q.index)
    return build(Q, symmetric_group(n, fixing=n), cyclic_group(n), name=f"H{n}")


def parse_group_text(text: str, name: str = "", cap: int = 10**6) -> FactoredGroup:
    """Three blank-line separated blocks of generators: Q, then F, then G."""
    blocks: list[list[str]] = [[]]
    for line in text.splitlines():
        if line.strip().startswith("#"):
            continue
        if line.strip():
            blocks[-1].append(line)
        elif blocks[-1]:
            blocks.append([])
    if not blocks[-1]:
        blocks.pop()
    if len(blocks) != 3:
        raise GroupError(f"expected 3 generator blocks (Q, F, G), found {len(blocks)}")
    raw = [parse_generator_block(b) for b in blocks]
    degree = max((len(g) for gens in raw for g in gens), default=1)
    degree = max(degree, 1)
    gens = [[Perm.from_cycles(g.to_cycles() if not g.is_identity() else "()", degree)
             for g in block] for block in raw]
    Q = enumerate_group(gens[0], degree, "Q", cap=cap)
    F = enumerate_group(gens[1], degree, "F", cap=cap)
    G = enumerate_group(gens[2], degree, "G", cap=cap)
    return build(Q, F, G, name=name)


def load_group_file(path: str | Path, cap: int = 10**6) -> FactoredGroup:
    path = Path(path)
    return parse_group_text(path.read_text(), name=path.stem, cap=cap)


def format_group_text(fg: FactoredGroup) -> str:
    blocks = []
    for grp in (fg.Q, fg.F, fg.G):
        gens = [g.to_cycles() for g in grp.generators] or ["()"]
        blocks.append("\n".join(gens))
    return "\n\n".join(blocks) + "\n"
