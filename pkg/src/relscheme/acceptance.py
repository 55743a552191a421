"""The nine acceptance criteria as library functions.

Each criterion returns a ``CheckReport`` whose details record what was
examined and how long it took.  Runtime limits are part of the criterion.
"""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable

from .actegory import self_action
from .basechange import (
    MonoidalAdjunctionData,
    check_theta_iso,
    constant_monoid,
    constant_morphism,
    plus_point_functor,
    presheaf_linear_functor,
)
from .commalg import (
    CommMonoid,
    MonoidMorphism,
    boolean_monoid,
    cartesian_sets,
    cyclic_group,
    enumerate_comm_monoids,
    is_epi,
    isomorphic_monoids,
    monoid_homs,
    to_trivial,
    trivial_monoid,
    unit_morphism,
    with_zero,
)
from .corpus import comparison_corpus, cover_corpus, random_sheaf_instances
from .fincore.categories import FinCategory, FinFunctor
from .gluing import (
    adjunction_checks,
    cmon0_monoids,
    free_comm,
    free_hom_gluing,
    hom_monoid,
    is_field_object,
    naturality_check,
    pointed_monoids,
    saturating,
)
from .report import CheckReport, Status, laws_report
from .scalars import (
    adjunction_check,
    enumerate_modules,
    extend_scalars,
    free_module,
    regular_module,
    restrict_scalars,
    triangle_identities,
)
from .topology import (
    ProbeBudget,
    brute_force_verdict,
    equalizer_diagram,
    equalizer_verdict,
    flatness_probe,
    pretopology_audit,
)


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    limit: float  # seconds
    run: Callable[[int], CheckReport]


def _timed(number: int, name: str, limit: float, body: Callable[[], tuple[list[dict], dict]]) -> CheckReport:
    # objects alive before the criterion are moved out of the collector's scans;
    # garbage made by the criterion itself is still collected
    gc.freeze()
    try:
        t0 = time.perf_counter()
        violations, details = body()
        dt = time.perf_counter() - t0
    finally:
        gc.unfreeze()
    if dt > limit:
        violations = violations + [{"runtime_s": round(dt, 3), "limit_s": limit}]
    r = laws_report(f"criterion_{number}:{name}", violations, op=name, details=details)
    r.details["limit_s"] = limit
    r.timing = dt
    return r


def _monoids(max_size: int) -> list[CommMonoid]:
    return [m for n in range(1, max_size + 1) for m in enumerate_comm_monoids(n)]


# 1. adjunction


def adjunction_suite(seed: int = 0, max_monoid: int = 4, max_module: int = 3) -> CheckReport:
    def body():
        A = self_action(cartesian_sets())
        ms = _monoids(max_monoid)
        mods = {id(m): enumerate_modules(A, m, max_module) for m in ms}
        bad, pairs, morphisms = [], 0, 0
        for a in ms:
            for b in ms:
                for h in monoid_homs(a, b):
                    morphisms += 1
                    rns = [restrict_scalars(h, n) for n in mods[id(b)]]
                    for m in mods[id(a)]:
                        ext = extend_scalars(h, m)
                        for n, rn in zip(mods[id(b)], rns):
                            pairs += 1
                            r = adjunction_check(h, m, n, ext=ext, rn=rn)
                            if not r.ok:
                                bad.append({"morphism": h.to_doc(), "m": m.name, "n": n.name, "witness": r.witness})
                        if not triangle_identities(h, m=m).ok:
                            bad.append({"morphism": h.to_doc(), "triangle": 1, "m": m.name})
                    for n in mods[id(b)]:
                        if not triangle_identities(h, n=n).ok:
                            bad.append({"morphism": h.to_doc(), "triangle": 2, "n": n.name})
                    for x in mods[id(a)] + mods[id(b)]:
                        x.forget()
        return bad, {"monoids": len(ms), "morphisms": morphisms, "module_pairs": pairs}

    return _timed(1, "adjunction_suite", 60.0, body)


# 2. comparison maps


def comparison_suite(seed: int = 0) -> CheckReport:
    def body():
        corpus = comparison_corpus()
        bad = []
        for inst in corpus:
            r = inst.run()
            if r.status is not Status.PASS:
                bad.append({"instance": inst.name, "status": r.status.value, "witness": r.witness})
        backends = sorted({i.backend for i in corpus})
        short = [] if len(corpus) >= 50 else [{"instances": len(corpus), "required": 50}]
        return short + bad, {"instances": len(corpus), "backends": backends}

    return _timed(2, "comparison_suite", 60.0, body)


# 3. flatness refutations


def flatness_refutations(seed: int = 0) -> CheckReport:
    A = self_action(cartesian_sets())
    one, z2 = trivial_monoid(), cyclic_group(2)
    cases = [("trivial->Z2", unit_morphism(z2, one), "terminal"), ("Z2->trivial", to_trivial(z2, one), "product")]
    items = []
    for label, alpha, shape in cases:
        t0 = time.perf_counter()
        v = flatness_probe(alpha, A, ProbeBudget(seed=seed))
        dt = time.perf_counter() - t0
        bad = []
        if not v.refuted:
            bad.append({"case": label, "refuted": False})
        else:
            d = v.witness["diagram"]
            if d["shape"] != shape or d["total_size"] > 4:
                bad.append({"case": label, "shape": d["shape"], "total_size": d["total_size"]})
        if dt > 1.0:
            bad.append({"case": label, "runtime_s": round(dt, 3), "limit_s": 1.0})
        r = laws_report(label, bad, op="flatness_probe",
                        details={"witness": v.witness})
        r.timing = dt
        items.append(r)
    out = laws_report("criterion_3:flatness_refutations",
                      [f.witness for f in items if not f.ok], op="flatness_probe",
                      details={"limit_s": 1.0})
    out.items = items
    out.timing = sum(i.timing for i in items)
    return out


# 4. pretopology


def pretopology_suite(seed: int = 0) -> CheckReport:
    def body():
        covers, morphisms = cover_corpus()
        r = pretopology_audit(covers, morphisms, self_action(cartesian_sets()), ProbeBudget(seed=seed))
        bad = [{"item": i.check_id, "status": i.status.value, "witness": i.witness} for i in r.items if not i.ok]
        return bad, {"items": len(r.items), "covers": len(covers), "morphisms": len(morphisms)}

    return _timed(4, "pretopology_audit", 30.0, body)


# 5. epimorphisms


def _oracle_epi(alpha: MonoidMorphism) -> bool:
    """Coprojections of ``b ⊗_a b`` agree; the congruence is closed by plain fixpoint iteration on pairs."""
    b = alpha.cod
    n, t = b.size, b.table
    els = list(iproduct(range(n), repeat=2))
    pos = {p: k for k, p in enumerate(els)}
    mul = [[pos[(t[u][x], t[v][y])] for (x, y) in els] for (u, v) in els]
    rel = {(i, i) for i in range(len(els))}
    for s in alpha.table:
        for u in range(n):
            for v in range(n):
                rel.add((pos[(t[s][u], v)], pos[(u, t[s][v])]))
    while True:
        new = set(rel)
        new |= {(j, i) for i, j in rel}
        new |= {(mul[w][i], mul[w][j]) for i, j in rel for w in range(len(els))}
        succ: dict[int, set[int]] = {}
        for i, j in new:
            succ.setdefault(i, set()).add(j)
        new |= {(i, k) for i, js in succ.items() for j in js for k in succ.get(j, ())}
        if new == rel:
            break
        rel = new
    e = b.e
    return all((pos[(u, e)], pos[(e, u)]) in rel for u in range(n))


def _distinguishing_pair(alpha: MonoidMorphism, codomains: list[CommMonoid]) -> dict | None:
    for c in codomains:
        seen: dict[tuple, tuple] = {}
        for f in monoid_homs(alpha.cod, c):
            key = tuple(f.table[v] for v in alpha.table)
            if key in seen and seen[key] != f.table:
                return {"codomain": c.to_doc(), "f": list(seen[key]), "g": list(f.table)}
            seen.setdefault(key, f.table)
    return None


def epi_suite(seed: int = 0) -> CheckReport:
    def body():
        small, codomains = _monoids(3), _monoids(4)
        bad, searched, refuted, surjections = [], 0, 0, 0
        for a in small:
            for b in small:
                for h in monoid_homs(a, b):
                    searched += 1
                    ok, _ = is_epi(h)
                    pair = _distinguishing_pair(h, codomains)
                    if pair is not None:
                        refuted += 1
                        if ok:
                            bad.append({"morphism": h.to_doc(), "distinguishing_pair": pair})
                    if len(set(h.table)) == b.size:
                        surjections += 1
                        if ok != _oracle_epi(h):
                            bad.append({"morphism": h.to_doc(), "is_epi": ok, "oracle": not ok})
        one, z2 = trivial_monoid(), cyclic_group(2)
        if is_epi(unit_morphism(z2, one))[0]:
            bad.append({"morphism": "trivial->Z2", "is_epi": True})
        return bad, {"morphisms": searched, "with_distinguishing_pair": refuted, "surjections": surjections,
                     "codomains": len(codomains)}

    return _timed(5, "epi_consistency", 60.0, body)


# 6. sheaf equalizer against the brute-force oracle


def sheaf_oracle_suite(seed: int = 0) -> CheckReport:
    def body():
        inst = random_sheaf_instances(seed=seed, count=100, max_total=200)
        bad, sheaves = [], 0
        for F, C, kind in inst:
            E = equalizer_diagram(F, C)
            fast, slow = equalizer_verdict(E) is None, brute_force_verdict(E) is None
            sheaves += fast
            if fast != slow:
                bad.append({"cover": C.name, "kind": kind, "fast": fast, "oracle": slow})
        return bad, {"instances": len(inst), "sheaves": sheaves, "max_total": max(F.size() for F, _, _ in inst)}

    return _timed(6, "sheaf_oracle", 30.0, body)


# 7. theta


def _two_object_functors() -> list[FinFunctor]:
    X = FinCategory.discrete(["a", "b"], name="X2")
    P = FinCategory.parallel_pair()
    D = FinCategory.discrete(["0", "1"], name="D2")
    return [
        FinFunctor(X, P, {"a": "0", "b": "1"}, {"id_a": "id0", "id_b": "id1"}, name="X2->Par"),
        FinFunctor(X, D, {"a": "0", "b": "1"}, {"id_a": "id_0", "id_b": "id_1"}, name="X2->D2"),
        FinFunctor(X, P, {"a": "1", "b": "0"}, {"id_a": "id1", "id_b": "id0"}, name="X2->Par(flip)"),
        FinFunctor.identity(P),
    ]


def theta_suite(seed: int = 0) -> CheckReport:
    def body():
        one, z2, b2 = trivial_monoid(), cyclic_group(2), boolean_monoid()
        alphas = [unit_morphism(z2, one), unit_morphism(b2, one), MonoidMorphism.identity(z2), to_trivial(z2, one)]
        bad, count = [], 0
        budget = ProbeBudget(seed=seed)
        for phi in _two_object_functors():
            L = presheaf_linear_functor(phi)
            N = L.source.params["inner"]
            adj = MonoidalAdjunctionData.identity(L.source.base)
            idx = L.source.base.index
            for alpha in alphas:
                ac = constant_morphism(alpha, idx)
                a = ac.dom
                for n in (regular_module(N, a), free_module(N, a, N.M.unit())):
                    count += 1
                    r = check_theta_iso(ac, adj, L, n, budget)
                    if r.status is not Status.PASSED_WITHIN_BUDGET or not r.details.get("theta_bijective"):
                        bad.append({"functor": phi.name, "alpha": alpha.name, "module": n.name,
                                    "status": r.status.value, "details": r.details})
        # the planted lax instance
        S = cartesian_sets()
        P = plus_point_functor(S)
        alpha = unit_morphism(z2, one)
        planted = check_theta_iso(alpha, MonoidalAdjunctionData.identity(S), P,
                                  regular_module(self_action(S), one), budget)
        d = planted.details
        if d.get("theta_bijective") or d.get("hypotheses_met") or planted.status is not Status.SKIPPED:
            bad.append({"planted": True, "status": planted.status.value, "details": d})
        return bad, {"instances": count, "planted": {"theta_bijective": d.get("theta_bijective"),
                                                     "unmet": d.get("unmet")}}

    return _timed(7, "theta_suite", 20.0, body)


# 8. gluing


def gluing_suite(seed: int = 0, max_size: int = 4) -> CheckReport:
    def body():
        Ms, As = cmon0_monoids(max_size), pointed_monoids(max_size)
        bad, n_hat, n_nat = [], 0, 0
        for M in Ms:
            for a in As:
                r = adjunction_checks(M, a)
                n_hat += r.details.get("morphisms", 0)
                if not r.ok:
                    bad.append({"hat_tilde": [M.name, a.name], "witness": r.witness})
            if not isomorphic_monoids(hom_monoid(free_comm(M)), M):
                bad.append({"roundtrip": M.name})
        for M in Ms:
            for a in As:
                for b in As:
                    for g in monoid_homs(a, b):
                        n_nat += 1
                        r = naturality_check(M, g)
                        if not r.ok:
                            bad.append({"naturality": [M.name, g.name], "witness": r.witness})
        G = free_hom_gluing(As)
        rg, rd = G.glued.check(), G.glued.delta_naturality()
        for r in (rg, rd):
            if not r.ok:
                bad.append({"glued": r.check_id, "witness": r.witness})
        fields = {"B2": is_field_object(boolean_monoid(True)),
                  "Z2+0": is_field_object(with_zero(cyclic_group(2))),
                  "sat2": is_field_object(saturating(2))}
        if fields != {"B2": True, "Z2+0": True, "sat2": False}:
            bad.append({"fields": fields})
        return bad, {"cmon0": len(Ms), "pointed": len(As), "hat_tilde_morphisms": n_hat,
                     "naturality_squares": n_nat, "glued": rg.details, "fields": fields}

    return _timed(8, "gluing_suite", 60.0, body)


# 9. determinism


def determinism(seed: int = 0) -> CheckReport:
    from .suite import emit_report, load_suite, run_suite, shipped_corpus_path

    def body():
        outs = []
        for jobs in (1, 4):
            S = load_suite(shipped_corpus_path())
            S.budget = S.budget.but(seed=seed)
            for c in S.checks:
                c.budget = c.budget.but(seed=seed)
            outs.append(emit_report(run_suite(S, jobs=jobs), "structured", S))
        bad = [] if outs[0] == outs[1] else [{"first_difference": next(
            k for k, (x, y) in enumerate(zip(outs[0], outs[1])) if x != y)}]
        return bad, {"bytes": len(outs[0]), "runs": 2}

    return _timed(9, "determinism", 60.0, body)


CRITERIA: list[Criterion] = [
    Criterion(1, "adjunction_suite", 60.0, adjunction_suite),
    Criterion(2, "comparison_suite", 60.0, comparison_suite),
    Criterion(3, "flatness_refutations", 1.0, flatness_refutations),
    Criterion(4, "pretopology_audit", 30.0, pretopology_suite),
    Criterion(5, "epi_consistency", 60.0, epi_suite),
    Criterion(6, "sheaf_oracle", 30.0, sheaf_oracle_suite),
    Criterion(7, "theta_suite", 20.0, theta_suite),
    Criterion(8, "gluing_suite", 60.0, gluing_suite),
    Criterion(9, "determinism", 60.0, determinism),
]


def run_all(seed: int = 0) -> list[CheckReport]:
    return [c.run(seed) for c in CRITERIA]
