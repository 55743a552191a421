"""Shipped instance collections: comparison maps over every backend, cover
families for the pretopology audit, and random inputs for the sheaf check."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import islice
from typing import Callable

from .actegory import (
    Actegory,
    diagonal_action,
    digraph,
    digraph_action,
    family,
    monoid_category,
    monoid_hom_functor,
    mset,
    presheaf_action,
    rep_action,
    self_action,
)
from .basechange import constant_monoid, constant_morphism
from .commalg import (
    CommMonoid,
    MonoidMorphism,
    boolean_monoid,
    cartesian_sets,
    cyclic_group,
    enumerate_comm_monoids,
    isomorphic_monoids,
    monoid_homs,
    pointed_sets,
    pushout,
    to_trivial,
    trivial_monoid,
    unit_morphism,
    require_morphism,
    with_zero,
)
from .fincore.categories import FinCategory, FinFunctor
from .fincore.presheaf import FinPresheaf
from .fincore.sets import FinSet
from .report import CheckReport
from .scalars import (
    Module,
    assoc_iso,
    base_change_iso,
    enumerate_modules,
    free_module,
    identity_collapse,
    pseudofunctor_comparison,
    regular_module,
    trivial_module,
)
from .topology import CoverFamily, FunctorData, constant_functor, representable_functor


@dataclass(eq=False)
class ComparisonInstance:
    name: str
    backend: str
    kind: str
    build: Callable[[], CheckReport]

    def run(self) -> CheckReport:
        r = self.build()
        r.check_id = self.name
        return r


# monoid data shared by several backends


def _set_monoids():
    one, z2, b2, z3 = trivial_monoid(), cyclic_group(2), boolean_monoid(), cyclic_group(3)
    u2, u3, ub = unit_morphism(z2, one), unit_morphism(z3, one), unit_morphism(b2, one)
    c2, cb = to_trivial(z2, one), to_trivial(b2, one)
    ids = {m.name: MonoidMorphism.identity(m) for m in (one, z2, b2)}
    return dict(one=one, z2=z2, b2=b2, z3=z3, u2=u2, u3=u3, ub=ub, c2=c2, cb=cb, ids=ids)


def _span_kinds(prefix: str, backend: str, A: Actegory, D: dict, objects: list[FinPresheaf],
                modules_over: Callable[[CommMonoid], list[Module]]) -> list[ComparisonInstance]:
    """The comparison maps for one backend, given monoids ``D`` already living in its base."""
    out: list[ComparisonInstance] = []
    one, z2, b2 = D["one"], D["z2"], D["b2"]
    for k in ("u2", "ub", "c2", "cb"):
        require_morphism(D[k])
    spans = [("u2,u2", D["u2"], D["u2"]), ("u2,ub", D["u2"], D["ub"]), ("ub,ub", D["ub"], D["ub"])]
    for sn, al, be in spans:
        for k, m in enumerate(objects):
            out.append(ComparisonInstance(
                f"{prefix}/assoc1[{sn}]/obj{k}", backend, "assoc_iso",
                lambda al=al, be=be, m=m: assoc_iso(al, be, m, A=A).report))
    # relative version: γ = identity on b, modules over b
    for sn, al, be in spans[:2]:
        gam = MonoidMorphism.identity(be.cod)
        for k, m in enumerate(modules_over(be.cod)[:2]):
            out.append(ComparisonInstance(
                f"{prefix}/assoc2[{sn}]/mod{k}", backend, "assoc_iso",
                lambda al=al, be=be, m=m, gam=gam: assoc_iso(al, be, m, gamma=gam).report))
    chains = [("u2,c2", D["u2"], D["c2"]), ("ub,cb", D["ub"], D["cb"]), ("c2,u2", D["c2"], D["u2"])]
    for cn, al, be in chains:
        for k, m in enumerate(modules_over(al.dom)[:2]):
            out.append(ComparisonInstance(
                f"{prefix}/pseudo[{cn}]/mod{k}", backend, "pseudofunctor_checks",
                lambda al=al, be=be, m=m: pseudofunctor_comparison(al, be, m).report))
    for mon in (z2, b2):
        for k, m in enumerate(modules_over(mon)[:2]):
            out.append(ComparisonInstance(
                f"{prefix}/collapse[{mon.name}]/mod{k}", backend, "pseudofunctor_checks",
                lambda m=m: identity_collapse(m).report))
    for sn, al, be in spans[:2]:
        for k, m in enumerate(modules_over(be.cod)[:2]):
            out.append(ComparisonInstance(
                f"{prefix}/base_change[{sn}]/mod{k}", backend, "base_change_iso",
                lambda al=al, be=be, m=m: base_change_iso(al, be, m).report))
    return out


def _lift(D: dict, index: FinCategory) -> dict:
    """Spread the set monoids of ``D`` constantly over ``index``."""
    L = {k: constant_monoid(D[k], index) for k in ("one", "z2", "b2", "z3")}
    for k in ("u2", "u3", "ub", "c2", "cb"):
        L[k] = constant_morphism(D[k], index)
    return L


def _free_modules(A: Actegory, objects: list[FinPresheaf]):
    def over(a: CommMonoid) -> list[Module]:
        mods = [free_module(A, a, m, name=f"{a.name}⊠obj{k}") for k, m in enumerate(objects)]
        if not A.M.pointed:
            mods.insert(1, trivial_module(A, a, objects[-1], name=f"triv[{a.name}]"))
        return mods
    return over


def comparison_corpus() -> list[ComparisonInstance]:
    """Comparison instances over the self, diagonal, presheaf, representation and digraph backends."""
    out: list[ComparisonInstance] = []
    S = cartesian_sets()
    D = _set_monoids()

    # self-action, plain sets
    A = self_action(S)
    objs = [S.of_set(FinSet.of(["p"])), S.of_set(FinSet.of(["p", "q"]))]
    cache: dict = {}

    def self_modules(a):
        if id(a) not in cache:
            cache[id(a)] = (a, [regular_module(A, a)] + enumerate_modules(A, a, max_size=2)[1:])
        return cache[id(a)][1]

    out += _span_kinds("self", "self", A, D, objs, self_modules)

    # self-action, pointed sets
    P = pointed_sets()
    Ap = self_action(P)
    # the unit S⁰ is initial here; the one-point monoid is the zero object
    s0 = boolean_monoid(True)
    z2p, z3p = with_zero(cyclic_group(2)), with_zero(cyclic_group(3))

    def from_s0(b):
        return MonoidMorphism.from_table(s0, b, (0, b.e), name=f"unit_{b.name}")

    def to_s0(b):
        h = MonoidMorphism.from_table(b, s0, tuple(0 if i == 0 else 1 for i in range(b.size)),
                                      name=f"collapse_{b.name}")
        require_morphism(h)
        return h

    Dp = dict(one=s0, z2=z2p, b2=z3p, u2=from_s0(z2p), ub=from_s0(z3p), c2=to_s0(z2p), cb=to_s0(z3p))
    pobjs = [P.of_set(FinSet.of(["*", "p"])), P.of_set(FinSet.of(["*", "p", "q"]))]
    out += _span_kinds("pointed", "self", Ap, Dp, pobjs,
                       lambda a: [regular_module(Ap, a)] + [free_module(Ap, a, m) for m in pobjs])

    # diagonal: J-families of sets, monoids stay in sets
    Ad = diagonal_action(["0", "1"], S)
    dobjs = [family(Ad, [S.of_set(FinSet.of(["p"])), S.of_set(FinSet.of(["p", "q"]))]),
             family(Ad, [S.of_set(FinSet.of(["p", "q"])), S.of_set(FinSet.of(["r"]))])]
    out += _span_kinds("diagonal", "diagonal", Ad, D, dobjs, _free_modules(Ad, dobjs))

    # presheaves on a discrete pair, acted on by presheaves on the parallel pair
    Y = FinCategory.parallel_pair()
    X = FinCategory.discrete(["a", "b"])
    ida, idb = (X.identities["a"], X.identities["b"])
    phi = FinFunctor(X, Y, {"a": "0", "b": "1"}, {ida: "id0", idb: "id1"}, name="Phi")
    Aps = presheaf_action(phi)
    Dy = _lift(D, Y)
    xobjs = [FinPresheaf(X, {"a": FinSet.of(["p"]), "b": FinSet.of(["p", "q"])},
                         {ida: _ident(1), idb: _ident(2)}),
             FinPresheaf(X, {"a": FinSet.of(["p", "q"]), "b": FinSet.of(["r"])},
                         {ida: _ident(2), idb: _ident(1)})]
    out += _span_kinds("presheaf", "presheaf", Aps, Dy, xobjs, _free_modules(Aps, xobjs))

    # representations: right Z2-sets acted on by right Z2-sets along the identity
    Z2c = monoid_category(["e", "g"], [[0, 1], [1, 0]], 0, name="Z2cat")
    sigma = monoid_hom_functor(Z2c, Z2c, [0, 1], name="id")
    Ar = rep_action(sigma)
    Dr = _lift(D, Z2c)
    robjs = [mset(Z2c, ["p", "q"], {"e": [0, 1], "g": [1, 0]}), mset(Z2c, ["p"], {"e": [0], "g": [0]})]
    out += _span_kinds("rep", "rep", Ar, Dr, robjs, _free_modules(Ar, robjs))

    # directed graphs acted on by Z2-sets, targets twisted by g
    Ag = digraph_action(Z2c, "e", "g")
    Dg = _lift(D, Z2c)
    gobjs = [digraph(["v"], [("l", "v", "v")]), digraph(["v", "w"], [("a", "v", "w")])]
    out += _span_kinds("digraph", "digraph", Ag, Dg, gobjs, _free_modules(Ag, gobjs))
    return out


def _ident(n: int):
    from .fincore.sets import FinMap

    return FinMap.identity(FinSet(n))


# covers


def cover_corpus() -> tuple[list[CoverFamily], list[MonoidMorphism]]:
    """Iso covers and probe-verified covers over small monoids, plus pullback directions."""
    one, z2, b2 = trivial_monoid(), cyclic_group(2), boolean_monoid()
    m3 = enumerate_comm_monoids(3)
    covers = [CoverFamily.identity(m, name=f"id[{m.name}]") for m in (one, z2, b2, m3[1])]
    auts = [h for h in monoid_homs(z2, z2) if h.is_iso()]
    covers.append(CoverFamily(z2, auts, [0], name="aut[Z2]"))
    loc = to_trivial(b2, one)
    loc.name = "B2[x^-1]"
    covers.append(CoverFamily(b2, [MonoidMorphism.identity(b2), loc], [0], name="id+loc[B2]"))
    # inverting the idempotent of a three-element monoid: y ↦ e
    src, b = m3[2], enumerate_comm_monoids(2)[1]
    tgt = next(h for h in monoid_homs(src, b) if h.table == (0, 1, 0))
    tgt.name = f"{src.name}[y^-1]"
    covers.append(CoverFamily(src, [MonoidMorphism.identity(src), tgt], [0], name=f"id+loc[{src.name}]"))
    morphisms = [unit_morphism(z2, one), unit_morphism(b2, one), to_trivial(z2, one), auts[-1],
                 to_trivial(b2, one), tgt]
    return covers, morphisms


# random sheaf inputs


def _pool() -> list[CommMonoid]:
    return [m for n in (1, 2, 3) for m in enumerate_comm_monoids(n)]


def _disjoint_union(F: FunctorData, G: FunctorData) -> FunctorData:
    values = {k: FinSet(F.values[k].size + G.values[k].size) for k in F.values}
    arrows = {}
    for key, t in F.arrows.items():
        s, tt = key[0], key[1]
        off = F.values[tt].size
        arrows[key] = tuple(t) + tuple(off + v for v in G.arrows[key])
    return FunctorData(dict(F.objects), values, arrows)


def random_sheaf_instances(seed: int = 0, count: int = 100, max_total: int = 200):
    """``count`` pairs ``(F, C)`` with ``F.size() <= max_total``.

    ``F`` is a representable, a constant functor, a disjoint union of two of
    those, or one of them with a single arrow table redrawn at random.
    """
    rng = random.Random(seed)
    pool = _pool()
    homs = {(i, j): list(monoid_homs(a, b)) for i, a in enumerate(pool) for j, b in enumerate(pool)}
    out = []
    while len(out) < count:
        i = rng.randrange(len(pool))
        targets = [j for j in range(len(pool)) if homs[(i, j)]]
        legs = [rng.choice(homs[(i, j)]) for j in (rng.choice(targets) for _ in range(rng.choice([1, 2])))]
        C = CoverFamily(pool[i], legs, [0], name=f"rnd{len(out)}")
        objs: list[CommMonoid] = []

        def add(c):
            if not any(o.size == c.size and isomorphic_monoids(o, c) for o in objs):
                objs.append(c)

        add(C.base)
        for l in legs:
            add(l.cod)
        for l in legs:
            for r in legs:
                add(pushout(l, r).obj)
        if any(o.size > 4 for o in objs):
            continue
        named = {f"o{k}": c for k, c in enumerate(objs)}
        kind = rng.choice(["rep", "const", "sum", "perturbed"])
        if kind == "rep":
            F = representable_functor(rng.choice(pool[:6]), named)
        elif kind == "const":
            F = constant_functor(named, rng.randint(1, 3))
        elif kind == "sum":
            F = _disjoint_union(representable_functor(rng.choice(pool[:6]), named),
                                representable_functor(rng.choice(pool[:6]), named))
        else:
            F = representable_functor(rng.choice(pool[:6]), named)
            keys = sorted(F.arrows)
            key = keys[rng.randrange(len(keys))]
            n = F.values[key[1]].size
            if n:
                F.arrows[key] = tuple(rng.randrange(n) for _ in F.arrows[key])
        if F.size() > max_total or F.size() == 0:
            continue
        out.append((F, C, kind))
    return out
