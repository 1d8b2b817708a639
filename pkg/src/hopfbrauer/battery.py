"""The invariant battery run by ``selftest``: named boolean checks per (H, p)."""

from __future__ import annotations

import numpy as np

from .bismash import BismashProduct
from .chartable import character_table
from .factored import FactoredGroup
from .hreps import (char0_data, dual_character, h_brauer_independence, hfactor_check,
                    indicator_char0, indicator_modular, lincom_solvable, nilpotent_part_is_zero,
                    reduction_consistent, trace_character)
from .modular import cartan, decomposition_by_reduction, decomposition_matrix, irreducible_brauer_characters
from .perm import element_order, symmetric_group
from .thompson import PASS, run_pipeline, verify_orth_descent, verify_thompson


def hopf_checks(H: BismashProduct) -> dict[str, bool]:
    out = {f"hopf.{k}": v for k, v in H.axiom_report().items()}
    nil = set(H.nilpotent_by_square())
    bp = set(H.b_prime)
    out["basis.bprime_is_nonnilpotent"] = bp == set(H.basis) - nil
    out["basis.bprime_closed_under_S"] = {H.antipode(w) for w in bp} == bp
    for p in (3, 5, 7):
        bpp = set(H.b_p_regular(p))
        out[f"basis.bp'_closed_under_S.p{p}"] = {H.antipode(w) for w in bpp} == bpp
    out["power_law"] = all(H.power(w, k) == H.power_closed_form(w, k)
                           for w in H.basis for k in (2, 3, element_order(w[1]) + 1))
    return out


def char0_checks(H: BismashProduct, rng: np.random.Generator) -> dict[str, bool]:
    c0 = char0_data(H, rng, explicit=True)
    out = {}
    out["char0.semisimple_count"] = sum(M.dim ** 2 for M in c0.modules) == H.dimension
    out["char0.relations"] = all(M.check_relations(rng) for M in c0.modules)
    out["char0.trace_oracle"] = all(trace_character(M, c0.ctx.lift, H.basis) == chi.values
                                    for M, chi in zip(c0.modules, c0.characters))
    out["char0.nilpotent_outside_bprime"] = all(
        nilpotent_part_is_zero(M, w) for M in c0.modules for w in H.basis if w not in set(H.b_prime))
    ind = [indicator_char0(chi) for chi in c0.characters]
    sd = [dual_character(chi) == chi for chi in c0.characters]
    out["char0.indicator_vs_selfdual"] = all((v != 0) == s for v, s in zip(ind, sd))
    out["char0.form_indicator_agrees"] = ind == [indicator_modular(M) for M in c0.modules]
    return out


def modular_checks(fg: FactoredGroup, H: BismashProduct, p: int, rng: np.random.Generator) -> dict[str, bool]:
    pipe = run_pipeline(fg, p, rng, H=H)
    md = pipe.md
    lift = md.ctx.lift
    bpp = H.b_p_regular(p)
    out = {}
    pre = f"p{p}."
    out[pre + "relations"] = all(M.check_relations(rng) for M in md.modules)
    out[pre + "trace_oracle"] = all(trace_character(M, lift, bpp) == phi.values
                                    for M, phi in zip(md.modules, md.characters))
    out[pre + "reduction"] = all(reduction_consistent(phi, M, lift)
                                 for phi, M in zip(md.characters, md.modules))
    mixed = [w for w in H.b_prime if element_order(w[1]) % p == 0]
    out[pre + "hfactor"] = all(hfactor_check(M, w, p, md.ctx.m) for M in md.modules for w in mixed)
    out[pre + "independence"] = h_brauer_independence(md.characters).full_rank
    out[pre + "lincom"] = lincom_solvable(pipe.c0.characters, md.characters, p)
    out[pre + "indicator_vs_selfdual"] = all((v != 0) == s for v, s in zip(pipe.indp, pipe.self_dualp))
    lr = verify_thompson(fg, p, rng, pipe)
    out[pre + "thompson"] = lr.verdict == PASS
    out[pre + "orth_descent"] = verify_orth_descent(fg, p, rng, pipe).verdict == PASS
    out[pre + "cartan_p_power"] = lr.cartan_certificate.startswith(f"{p}^")
    return out


def group_level_checks(rng: np.random.Generator) -> dict[str, bool]:
    out = {}
    for n in (3, 4):
        G = symmetric_group(n)
        ct = character_table(G)
        ibr = irreducible_brauer_characters(G, 3, rng)
        D = decomposition_matrix(ct, ibr, 3)
        out[f"S{n}.p3.decomposition_oracle"] = decomposition_by_reduction(G, ct, ibr, 3, rng) == D.matrix
        out[f"S{n}.p3.cartan_p_power"] = cartan(D).exponent is not None
    return out


def run_battery(members: list[FactoredGroup], primes: list[int], seed: int) -> list[tuple[str, bool]]:
    """Ordered (check name, result) pairs; deterministic for a fixed seed."""
    results = []
    for k, fg in enumerate(members):
        rng = np.random.default_rng([seed, k])
        H = BismashProduct(fg, verify=False)
        for name, ok in hopf_checks(H).items():
            results.append((f"{fg.name}.{name}", ok))
        for name, ok in char0_checks(H, rng).items():
            results.append((f"{fg.name}.{name}", ok))
        for p in primes:
            for name, ok in modular_checks(fg, H, p, rng).items():
                results.append((f"{fg.name}.{name}", ok))
    rng = np.random.default_rng([seed, len(members)])
    results.extend(group_level_checks(rng).items())
    return results
