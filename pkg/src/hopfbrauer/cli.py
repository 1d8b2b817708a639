"""Command line interface: ``hopfbrauer <subcommand> [options]``.

Exit codes: 0 success, 1 a computed object violates a theorem it must
satisfy (or a check failed), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable

import numpy as np

from .bismash import COMPOSITION_CONVENTION, DELTA_VARIANT, BismashProduct, HopfAxiomError, format_basis
from .chartable import character_table
from .factored import FactoredGroup, load_group_file, sn_family
from .hreps import (FormError, char0_data, decompose, dual_character, h_brauer_independence,
                    hfactor_check, indicator_char0, indicator_modular, modular_data,
                    reduction_consistent, trace_character)
from .modular import (TheoremViolation, cartan, decomposition_matrix, group_lift,
                      irreducible_brauer_characters)
from .perm import GroupError, element_order
from .thompson import FAIL_NOTE, PASS, VACUOUS, load_corpus, run_corpus

SCHEMA = 1
SEED_ENV = "HOPFBRAUER_SEED"


class UsageError(Exception):
    pass


# helpers ------------------------------------------------------------

def _header(command: str, **extra) -> dict:
    out = {"schema": SCHEMA, "command": command,
           "composition_convention": COMPOSITION_CONVENTION, "delta_variant": DELTA_VARIANT}
    out.update(extra)
    return out


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _dump_csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _matrix_text(M: list[list[int]], rows: list[str] | None = None, cols: list[str] | None = None) -> str:
    if not M:
        return "(empty)\n"
    cells = [[str(v) for v in r] for r in M]
    width = max(len(c) for r in cells for c in r)
    lines = []
    if cols:
        width = max(width, *(len(c) for c in cols))
    lw = max((len(r) for r in rows), default=0) if rows else 0
    if cols:
        lines.append(" " * (lw + 1 if rows else 0) + " ".join(c.rjust(width) for c in cols))
    for i, r in enumerate(cells):
        prefix = rows[i].ljust(lw) + " " if rows else ""
        lines.append(prefix + " ".join(c.rjust(width) for c in r))
    return "\n".join(lines) + "\n"


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer") from None
    return args.seed


def _primes(args, single: bool) -> list[int]:
    raw = args.p or []
    out = []
    for item in raw:
        for tok in str(item).split(","):
            if tok.strip():
                try:
                    out.append(int(tok))
                except ValueError:
                    raise UsageError(f"bad prime {tok!r}") from None
    from .gf import is_prime
    for p in out:
        if p == 2 or not is_prime(p):
            raise UsageError(f"p must be an odd prime, got {p}")
    if single:
        if len(out) != 1:
            raise UsageError("exactly one --p is required")
    return out


def _group(args, required: bool = True) -> FactoredGroup | None:
    if args.sn is not None and args.group is not None:
        raise UsageError("give only one of --sn and --group")
    if args.sn is not None:
        if args.sn < 2:
            raise UsageError("--sn needs N >= 2")
        return sn_family(args.sn)
    if args.group is not None:
        try:
            return load_group_file(args.group, cap=args.cap)
        except OSError as exc:
            raise UsageError(str(exc)) from None
    if required:
        raise UsageError("one of --sn or --group is required")
    return None


def _char(args) -> int:
    if args.char is None:
        raise UsageError("--char is required (0 or an odd prime)")
    try:
        c = int(args.char)
    except ValueError:
        raise UsageError("--char takes 0 or an odd prime") from None
    if c != 0:
        from .gf import is_prime
        if c == 2 or not is_prime(c):
            raise UsageError("--char takes 0 or an odd prime")
    return c


def _pick(fg: FactoredGroup, which: str):
    return {"Q": fg.Q, "F": fg.F, "G": fg.G}[which]


def _basis_key(w) -> str:
    return format_basis(w)


# subcommands --------------------------------------------------------

def cmd_group(args) -> tuple[str, int]:
    fg = _group(args)
    if args.format == "json":
        return _dump_json(_header("group", group=fg.describe())), 0
    if args.format == "csv":
        rows = [["x", "a", "x|>a", "x<|a"]]
        for x in fg.G.elements:
            for a in fg.F.elements:
                rows.append([x.to_cycles(), a.to_cycles(), fg.rhd(x, a).to_cycles(), fg.lhd(x, a).to_cycles()])
        return _dump_csv(rows), 0
    d = fg.describe()
    lines = [f"group {d['name']}: |Q| = {d['orders']['Q']}, |F| = {d['orders']['F']}, |G| = {d['orders']['G']}"]
    for k in ("Q", "F", "G"):
        lines.append(f"  {k} generators: {' '.join(d['generators'][k]) or '()'}")
    for orb in d["orbits"]:
        lines.append(f"  orbit of {orb['representative']}: {len(orb['points'])} points, "
                     f"stabilizer order {orb['stabilizer_order']}")
    return "\n".join(lines) + "\n", 0


def cmd_hopf_check(args) -> tuple[str, int]:
    fg = _group(args)
    from .battery import hopf_checks
    H = BismashProduct(fg, verify=False)
    res = hopf_checks(H)
    code = 0 if all(res.values()) else 1
    if args.format == "json":
        return _dump_json(_header("hopf-check", group=fg.name, dimension=H.dimension,
                                  checks={k: (PASS if v else "FAIL") for k, v in res.items()})), code
    if args.format == "csv":
        return _dump_csv([["check", "result"]] + [[k, PASS if v else "FAIL"] for k, v in res.items()]), code
    lines = [f"{k}: {PASS if v else 'FAIL'}" for k, v in res.items()]
    return "\n".join(lines) + "\n", code


def cmd_chartable(args) -> tuple[str, int]:
    fg = _group(args)
    G = _pick(fg, args.of)
    ct = character_table(G)
    if args.format == "json":
        return _dump_json(_header("chartable", group=fg.name, of=args.of, table=ct.to_json())), 0
    rows = [["class"] + ct.labels, ["size"] + [str(s) for s in ct.classes.sizes]]
    rows += [[f"chi{i + 1}"] + [str(v) for v in r] for i, r in enumerate(ct.rows)]
    if args.format == "csv":
        return _dump_csv(rows), 0
    width = max(len(c) for r in rows for c in r)
    return "\n".join(" ".join(c.rjust(width) for c in r) for r in rows) + "\n", 0


def cmd_decomp(args) -> tuple[str, int]:
    fg = _group(args)
    (p,) = _primes(args, single=True)
    G = _pick(fg, args.of)
    rng = np.random.default_rng(_seed(args))
    ct = character_table(G)
    ibr = irreducible_brauer_characters(G, p, rng)
    D = decomposition_matrix(ct, ibr, p)
    C = cartan(D)
    code = 0 if C.exponent is not None else 1
    if args.format == "json":
        return _dump_json(_header("decomp", group=fg.name, of=args.of,
                                  lift=group_lift(G, p).to_json(),
                                  decomposition=D.to_json(), cartan=C.to_json())), code
    if args.format == "csv":
        return _dump_csv([[""] + D.col_labels] + [[r] + row for r, row in zip(D.row_labels, D.matrix)]), code
    out = f"decomposition matrix of {args.of} ({G.order} elements) at p = {p}\n"
    out += _matrix_text(D.matrix, D.row_labels, D.col_labels)
    out += "Cartan matrix\n" + _matrix_text(C.matrix)
    out += f"det = {C.det} = {C.certificate}\n"
    return out, code


def _char_records(args):
    fg = _group(args)
    c = _char(args)
    rng = np.random.default_rng(_seed(args))
    H = BismashProduct(fg)
    if c == 0:
        data = char0_data(H, rng)
        chars = data.characters
        inds = [indicator_char0(chi) for chi in chars]
        domain = H.basis
    else:
        data = modular_data(H, c, rng)
        chars = data.characters
        inds = [indicator_modular(M) for M in data.modules]
        domain = H.b_p_regular(c)
    recs = []
    for M, chi, nu in zip(data.modules, chars, inds):
        recs.append({
            "orbit_rep": M.x.to_cycles(),
            "stabilizer_order": M.orbit.stabilizer.order,
            "dim": M.dim,
            "indicator": nu,
            "self_dual": dual_character(chi) == chi,
            "character": {_basis_key(w): str(chi(w)) for w in domain if not chi(w).is_zero()},
        })
    return fg, H, c, data, recs, domain, chars


def cmd_chars(args) -> tuple[str, int]:
    fg, H, c, data, recs, domain, chars = _char_records(args)
    if args.format == "json":
        return _dump_json(_header("chars", group=fg.name, characteristic=c,
                                  context=data.ctx.describe(),
                                  characters=[{k: r[k] for k in ("orbit_rep", "stabilizer_order", "dim", "character")}
                                              for r in recs])), 0
    rows = [["simple"] + [_basis_key(w) for w in domain]]
    rows += [[f"{i + 1}"] + [str(chi(w)) for w in domain] for i, chi in enumerate(chars)]
    if args.format == "csv":
        return _dump_csv(rows), 0
    lines = []
    for i, r in enumerate(recs):
        lines.append(f"simple {i + 1}: orbit {r['orbit_rep']}, dim {r['dim']}")
        for k, v in r["character"].items():
            lines.append(f"  {k} -> {v}")
    return "\n".join(lines) + "\n", 0


def cmd_indicators(args) -> tuple[str, int]:
    fg, H, c, data, recs, domain, chars = _char_records(args)
    code = 0 if all((r["indicator"] != 0) == r["self_dual"] for r in recs) else 1
    if args.format == "json":
        return _dump_json(_header("indicators", group=fg.name, characteristic=c,
                                  context=data.ctx.describe(), simples=recs)), code
    rows = [["orbit_rep", "stabilizer_order", "dim", "indicator", "self_dual"]]
    rows += [[r["orbit_rep"], str(r["stabilizer_order"]), str(r["dim"]), str(r["indicator"]),
              str(r["self_dual"]).lower()] for r in recs]
    if args.format == "csv":
        return _dump_csv(rows), code
    width = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, width)).rstrip() for r in rows) + "\n", code


def cmd_brauer(args) -> tuple[str, int]:
    fg = _group(args)
    (p,) = _primes(args, single=True)
    rng = np.random.default_rng(_seed(args))
    H = BismashProduct(fg)
    md = modular_data(H, p, rng)
    lift = md.ctx.lift
    bpp = H.b_p_regular(p)
    mixed = [w for w in H.b_prime if element_order(w[1]) % p == 0]
    cert = h_brauer_independence(md.characters)
    checks = {
        "trace_oracle": all(trace_character(M, lift, bpp) == phi.values
                            for M, phi in zip(md.modules, md.characters)),
        "reduction": all(reduction_consistent(phi, M, lift) for phi, M in zip(md.characters, md.modules)),
        "hfactor": all(hfactor_check(M, w, p, md.ctx.m) for M in md.modules for w in mixed),
        "independence": cert.full_rank,
    }
    code = 0 if all(checks.values()) else 1
    if args.format == "json":
        return _dump_json(_header("brauer", group=fg.name, p=p, context=md.ctx.describe(),
                                  rank=cert.rank, count=cert.count,
                                  checks={k: PASS if v else "FAIL" for k, v in checks.items()},
                                  characters=[phi.to_json() for phi in md.characters])), code
    rows = [["simple"] + [_basis_key(w) for w in bpp]]
    rows += [[f"{i + 1}"] + [str(phi(w)) for w in bpp] for i, phi in enumerate(md.characters)]
    if args.format == "csv":
        return _dump_csv(rows), code
    lines = [f"{len(md.characters)} Brauer characters on {len(bpp)} p-regular basis elements (p = {p})",
             f"rank over Q(zeta): {cert.rank}"]
    lines += [f"{k}: {PASS if v else 'FAIL'}" for k, v in checks.items()]
    return "\n".join(lines) + "\n", code


def cmd_hdecomp(args) -> tuple[str, int]:
    fg = _group(args)
    (p,) = _primes(args, single=True)
    rng = np.random.default_rng(_seed(args))
    H = BismashProduct(fg)
    c0 = char0_data(H, rng)
    md = modular_data(H, p, rng)
    dec = decompose(c0, md)
    ok = dec.block_diagonal and dec.blocks_agree and dec.cartan.exponent is not None
    code = 0 if ok else 1
    rl = [f"chi{i + 1}@{M.x.to_cycles()}" for i, M in enumerate(c0.modules)]
    cl = [f"phi{j + 1}@{M.x.to_cycles()}" for j, M in enumerate(md.modules)]
    if args.format == "json":
        return _dump_json(_header("hdecomp", group=fg.name, context=md.ctx.describe(),
                                  rows=rl, columns=cl, decomposition=dec.to_json())), code
    if args.format == "csv":
        return _dump_csv([[""] + cl] + [[r] + row for r, row in zip(rl, dec.matrix)]), code
    out = f"decomposition matrix of {fg.name} at p = {p}\n"
    out += _matrix_text(dec.matrix, rl, cl)
    out += f"block diagonal by orbit: {dec.block_diagonal}\n"
    out += f"blocks equal stabilizer decomposition matrices: {dec.blocks_agree}\n"
    out += "Cartan matrix\n" + _matrix_text(dec.cartan.matrix)
    out += f"det = {dec.cartan.det} = {dec.cartan.certificate}\n"
    return out, code


def cmd_thompson(args) -> tuple[str, int]:
    try:
        corpus = load_corpus(args.corpus)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read corpus: {exc}") from None
    if args.sn is not None or args.group is not None:
        fg = _group(args)
        from .thompson import CorpusMember
        corpus.members = [CorpusMember(fg.name, fg)]
    primes = _primes(args, single=False) or corpus.primes
    if not primes:
        raise UsageError("no primes given")
    results = run_corpus(corpus, _seed(args), primes)
    good = all(l.verdict == PASS and d.verdict == PASS for l, d in results)
    code = 0 if good else 1
    if args.format == "json":
        return _dump_json(_header("thompson", note=FAIL_NOTE, results=[
            {"lift": l.to_json(), "descent": d.to_json()} for l, d in results])), code
    rows = [["group", "p", "lift", "clause1", "clause2", "clause3", "cartan"]]
    for l, d in results:
        rows.append([l.name, str(l.p), l.verdict, d.clauses["1"], d.clauses["2"], d.clauses["3"],
                     l.cartan_certificate])
    if args.format == "csv":
        return _dump_csv(rows), code
    width = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    text = "\n".join("  ".join(c.ljust(w) for c, w in zip(r, width)).rstrip() for r in rows) + "\n"
    if not good:
        text += f"note: {FAIL_NOTE}\n"
    return text, code


def cmd_selftest(args) -> tuple[str, int]:
    from .battery import run_battery
    if args.sn is not None or args.group is not None:
        members = [_group(args)]
    else:
        members = [m.fg for m in load_corpus(args.corpus).members]
    primes = _primes(args, single=False) or [3, 5, 7]
    results = run_battery(members, primes, _seed(args))
    code = 0 if all(ok for _, ok in results) else 1
    if args.format == "json":
        return _dump_json(_header("selftest", seed=_seed(args), primes=primes,
                                  checks={k: PASS if v else "FAIL" for k, v in results})), code
    if args.format == "csv":
        return _dump_csv([["check", "result"]] + [[k, PASS if v else "FAIL"] for k, v in results]), code
    lines = [f"{k}: {PASS if v else 'FAIL'}" for k, v in results]
    lines.append(f"{sum(v for _, v in results)}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", code


COMMANDS: dict[str, tuple[Callable, str]] = {
    "group": (cmd_group, "describe the factorization and the orbits of F on G"),
    "hopf-check": (cmd_hopf_check, "run the Hopf axiom battery on the bismash product"),
    "chartable": (cmd_chartable, "ordinary character table of Q, F or G"),
    "decomp": (cmd_decomp, "decomposition and Cartan matrix of Q, F or G"),
    "chars": (cmd_chars, "characters of the simple H-modules"),
    "indicators": (cmd_indicators, "Frobenius-Schur indicators of the simple H-modules"),
    "brauer": (cmd_brauer, "Brauer characters of H with their consistency checks"),
    "hdecomp": (cmd_hdecomp, "decomposition and Cartan matrix of H"),
    "thompson": (cmd_thompson, "indicator lifting and orthogonality descent over a corpus"),
    "selftest": (cmd_selftest, "full invariant battery"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sn", type=int, help="use S_N = S_{N-1} C_N")
    common.add_argument("--group", help="group file with Q, F, G generator blocks")
    common.add_argument("--p", nargs="+", help="odd prime(s); comma separated lists allowed")
    common.add_argument("--char", help="characteristic: 0 or an odd prime")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0, help=f"random seed ({SEED_ENV} overrides)")
    common.add_argument("--cap", type=int, default=10**6, help="element cap for group enumeration")
    common.add_argument("--corpus", help="corpus file (default: the shipped S_n family)")
    common.add_argument("--of", choices=("Q", "F", "G"), default="F",
                        help="subgroup for chartable/decomp")
    parser = argparse.ArgumentParser(prog="hopfbrauer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    func = COMMANDS[args.command][0]
    try:
        text, code = func(args)
    except UsageError as exc:
        print(f"hopfbrauer: error: {exc}", file=sys.stderr)
        return 2
    except GroupError as exc:
        print(f"hopfbrauer: error: {exc}", file=sys.stderr)
        return 2
    except (TheoremViolation, HopfAxiomError, FormError) as exc:
        print(f"hopfbrauer: theorem violation: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
