"""Indicator lifting and orthogonality descent, checked over a corpus.

For each self-dual simple module P of H over GF(p^D) we look for ordinary
simple characters chi with chi* = chi whose decomposition number d(chi, phi_P)
is odd, and require at least one to exist and all of them to carry the
indicator of P.  A FAIL points at a defect in this package (a convention or
an axiom check upstream), not at the mathematics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

import numpy as np

from .bismash import BismashProduct
from .factored import FactoredGroup, load_group_file, parse_group_text, sn_family
from .hreps import (Char0Data, ModularData, char0_data, decompose, dual_character,
                    indicator_char0, indicator_modular, modular_data)

PASS, FAIL, VACUOUS = "PASS", "FAIL", "VACUOUS"
FAIL_NOTE = "a FAIL indicates a defect in this implementation, not a counterexample"


@dataclass
class LiftEntry:
    phi_index: int
    label: str
    indicator: int
    lifts: list[int]              # ordinary indices: self-dual, odd decomposition number
    lift_indicators: list[int]

    @property
    def verdict(self) -> str:
        ok = bool(self.lifts) and all(v == self.indicator for v in self.lift_indicators)
        return PASS if ok else FAIL

    def to_json(self) -> dict:
        return {"phi": self.phi_index, "module": self.label, "indicator": self.indicator,
                "lifts": self.lifts, "lift_indicators": self.lift_indicators,
                "verdict": self.verdict}


@dataclass
class LiftReport:
    name: str
    p: int
    entries: list[LiftEntry]
    cartan_det: int
    cartan_certificate: str
    notes: list[str] = dc_field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.notes:
            return FAIL
        return PASS if all(e.verdict == PASS for e in self.entries) else FAIL

    def to_json(self) -> dict:
        return {"group": self.name, "p": self.p, "verdict": self.verdict,
                "cartan_det": self.cartan_det, "cartan_certificate": self.cartan_certificate,
                "entries": [e.to_json() for e in self.entries], "notes": self.notes}


@dataclass
class Pipeline:
    """Everything the two checks need for one (H, p)."""

    H: BismashProduct
    p: int
    c0: Char0Data
    md: ModularData
    ind0: list[int]
    indp: list[int]
    self_dual0: list[bool]
    self_dualp: list[bool]


def run_pipeline(fg: FactoredGroup, p: int, rng: np.random.Generator,
                 H: BismashProduct | None = None, c0: Char0Data | None = None) -> Pipeline:
    if p == 2:
        raise ValueError("p = 2 is excluded")
    H = H or BismashProduct(fg)
    c0 = c0 or char0_data(H, rng)
    md = modular_data(H, p, rng)
    ind0 = [indicator_char0(chi) for chi in c0.characters]
    indp = [indicator_modular(M) for M in md.modules]
    sd0 = [dual_character(chi) == chi for chi in c0.characters]
    sdp = [dual_character(phi) == phi for phi in md.characters]
    return Pipeline(H, p, c0, md, ind0, indp, sd0, sdp)


def verify_thompson(fg: FactoredGroup, p: int, rng: np.random.Generator,
                    pipe: Pipeline | None = None) -> LiftReport:
    pipe = pipe or run_pipeline(fg, p, rng)
    dec = decompose(pipe.c0, pipe.md)
    D = dec.matrix
    entries = []
    for j, M in enumerate(pipe.md.modules):
        if not pipe.self_dualp[j]:
            continue
        lifts = [i for i in range(len(D)) if pipe.self_dual0[i] and D[i][j] % 2 == 1]
        entries.append(LiftEntry(j, M.label, pipe.indp[j], lifts, [pipe.ind0[i] for i in lifts]))
    notes = []
    if dec.cartan.exponent is None:
        notes.append(f"det of the Cartan matrix {dec.cartan.det} is not a power of {p}")
    elif dec.cartan.det % 2 == 0:
        notes.append("det of the Cartan matrix is even")
    if not (dec.block_diagonal and dec.blocks_agree):
        notes.append("decomposition matrix is not the block matrix of the stabilizer blocks")
    return LiftReport(fg.name, p, entries, dec.cartan.det, dec.cartan.certificate, notes)


@dataclass
class DescentReport:
    name: str
    p: int
    clauses: dict[str, str]
    char0_indicators: list[int]
    modular_indicators: list[int]

    @property
    def verdict(self) -> str:
        return FAIL if FAIL in self.clauses.values() else PASS

    def to_json(self) -> dict:
        return {"group": self.name, "p": self.p, "clauses": self.clauses,
                "char0_indicators": self.char0_indicators,
                "modular_indicators": self.modular_indicators, "verdict": self.verdict}


def verify_orth_descent(fg: FactoredGroup, p: int, rng: np.random.Generator,
                        pipe: Pipeline | None = None) -> DescentReport:
    pipe = pipe or run_pipeline(fg, p, rng)

    def clause(hyp: bool, concl: bool) -> str:
        if not hyp:
            return VACUOUS
        return PASS if concl else FAIL

    c = {
        "1": clause(all(v == 1 for v in pipe.ind0), all(v == 1 for v in pipe.indp)),
        "2": clause(all(v in (0, 1) for v in pipe.ind0), all(v in (0, 1) for v in pipe.indp)),
        "3": clause(all(pipe.self_dual0), all(pipe.self_dualp)),
    }
    return DescentReport(fg.name, p, c, pipe.ind0, pipe.indp)


# corpus --------------------------------------------------------------

@dataclass
class CorpusMember:
    name: str
    fg: FactoredGroup


@dataclass
class Corpus:
    members: list[CorpusMember]
    primes: list[int]


def default_corpus_path():
    return resources.files("hopfbrauer") / "data" / "default_corpus.json"


def load_corpus(path: str | Path | None = None) -> Corpus:
    """Read a corpus file; members give ``sn``, inline ``text`` or a ``file``."""
    if path is None:
        raw = json.loads(default_corpus_path().read_text())
        base = Path(".")
    else:
        path = Path(path)
        raw = json.loads(path.read_text())
        base = path.parent
    members = []
    for m in raw["members"]:
        if "sn" in m:
            fg = sn_family(int(m["sn"]))
        elif "text" in m:
            fg = parse_group_text(m["text"], name=m.get("name", ""))
        elif "file" in m:
            fg = load_group_file(base / m["file"])
        else:
            raise ValueError(f"corpus member {m} needs one of sn, text, file")
        fg.name = m.get("name", fg.name)
        members.append(CorpusMember(fg.name, fg))
    primes = [int(p) for p in raw.get("primes", [])]
    if any(p == 2 for p in primes):
        raise ValueError("p = 2 is excluded")
    return Corpus(members, primes)


def run_corpus(corpus: Corpus, seed: int, primes: list[int] | None = None) -> list[tuple[LiftReport, DescentReport]]:
    out = []
    for k, mem in enumerate(corpus.members):
        H = BismashProduct(mem.fg)
        rng = np.random.default_rng([seed, k])
        c0 = char0_data(H, rng)
        for p in primes or corpus.primes:
            pipe = run_pipeline(mem.fg, p, rng, H=H, c0=c0)
            out.append((verify_thompson(mem.fg, p, rng, pipe), verify_orth_descent(mem.fg, p, rng, pipe)))
    return out
