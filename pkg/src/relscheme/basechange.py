"""Change of base along a strong monoidal left adjoint and a lax linear functor.

``B: C -> D`` is strong monoidal with right adjoint ``A``; ``N`` is a
D-actegory, ``B_*N`` the C-actegory obtained by restricting its action, and
``(L, Γ): B_*N -> M`` a lax C-linear functor.  This module transports modules
along ``L``, builds the comparison ``θ: b ⊠_a L(n) -> L(B(b) ⊞_{B(a)} n)`` and
carries covers across ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice, product as iproduct
from typing import Callable, Sequence

from .actegory import (
    Actegory,
    Precomposition,
    IdentityMonoidal,
    LaxLinearFunctor,
    StrongMonoidalFunctor,
    check_monoidal_witnesses,
    diagonal_action,
    presheaf_action,
    restrict_action,
    self_action,
)
from .commalg import CommMonoid, MonoidMorphism
from .errors import InputCompletenessError, InvariantViolation, ShapeError
from .fincore.categories import FinCategory, FinFunctor
from .fincore.presheaf import FinPresheaf, PresheafCat, PresheafMap
from .fincore.sets import FinMap, FinSet, pair_label
from .report import CheckReport, Status, Tag, combine, laws_report
from .scalars import Module, ModuleMorphism, check_equivariance, check_module_laws, extend_scalars
from .topology import CoverFamily, ProbeBudget, check_fpqc_cover


# B on commutative monoids


def monoid_image(B: StrongMonoidalFunctor, a: CommMonoid) -> CommMonoid:
    """``B(a)`` with multiplication ``B(μ)∘mu`` and unit ``B(ι)∘eps``."""
    if isinstance(B, IdentityMonoidal):
        return a
    memo = a.__dict__.setdefault("_images", {})
    hit = memo.get(id(B))
    if hit is not None:
        return hit[1]
    D = B.cod
    car = B.on_obj(a.carrier)
    mu = B.mu(a.carrier, a.carrier).then(B.on_mor(a.mult_map()))
    iota = B.eps().then(B.on_mor(a.unit_map()))
    mult, unit = {}, {}
    for x in D.index.objects:
        n = car.sets[x].size
        t = mu.comps[x].table
        mult[x] = tuple(tuple(t[D.pair(n, n, i, j)] for j in range(n)) for i in range(n))
        unit[x] = iota.comps[x].table[1 if D.pointed else 0]
    img = CommMonoid(D, car, mult, unit, None, name=f"{B.name}({a.name})")
    memo[id(B)] = (B, img)
    return img


def morphism_image(B: StrongMonoidalFunctor, alpha: MonoidMorphism) -> MonoidMorphism:
    if isinstance(B, IdentityMonoidal):
        return alpha
    f = B.on_mor(alpha.map)
    dom, cod = monoid_image(B, alpha.dom), monoid_image(B, alpha.cod)
    return MonoidMorphism(dom, cod, PresheafMap.unchecked(dom.carrier, cod.carrier, f.comps),
                          name=f"{B.name}({alpha.name})")


# adjunction data


@dataclass(eq=False)
class MonoidalAdjunctionData:
    """``B ⊣ A`` with unit ``eta(c): c -> A(B(c))`` and counit ``epsilon(d): B(A(d)) -> d``."""

    B: StrongMonoidalFunctor
    A_obj: Callable[[FinPresheaf], FinPresheaf]
    A_mor: Callable[[PresheafMap], PresheafMap]
    eta: Callable[[FinPresheaf], PresheafMap]
    epsilon: Callable[[FinPresheaf], PresheafMap]
    name: str = "adj"

    @classmethod
    def identity(cls, base: PresheafCat) -> "MonoidalAdjunctionData":
        return cls(IdentityMonoidal(base), lambda d: d, lambda f: f,
                   PresheafMap.identity, PresheafMap.identity, name="id")

    def check(self, cs: Sequence[FinPresheaf] | None = None, ds: Sequence[FinPresheaf] | None = None,
              max_objects: int = 6) -> CheckReport:
        """Both triangle identities on sampled objects, and the witnesses of ``B``."""
        C, D = self.B.dom, self.B.cod
        cs = list(cs) if cs is not None else list(islice(C.objects_up_to(2), max_objects))
        ds = list(ds) if ds is not None else list(islice(D.objects_up_to(2), max_objects))
        bad = []
        for k, c in enumerate(cs):
            Bc = self.B.on_obj(c)
            lhs = self.B.on_mor(self.eta(c)).then(self.epsilon(Bc))
            if not lhs.same_as(PresheafMap.identity(Bc)):
                bad.append({"law": "counit after B(unit)", "object": k})
        for k, d in enumerate(ds):
            Ad = self.A_obj(d)
            lhs = self.eta(Ad).then(self.A_mor(self.epsilon(d)))
            if not lhs.same_as(PresheafMap.identity(Ad)):
                bad.append({"law": "A(counit) after unit", "object": k})
        items = [laws_report("triangles", bad, op="compute_theta"), check_monoidal_witnesses(self.B, cs)]
        return combine(f"adjunction:{self.name}", items, op="compute_theta")


def diagonal_adjunction(J: Sequence[str], base: PresheafCat) -> MonoidalAdjunctionData:
    """The constant-family functor into J-indexed families, right adjoint the product over J."""
    N = diagonal_action(J, base)
    B = N.scalar
    J = N.params["J"]
    D = N.M
    Y = base.index

    def at(j, y):
        return f"({j},{y})"

    def sizes(d, y):
        return [d.sets[at(j, y)].size for j in J]

    def encode(digits, ns):
        k = 0
        for v, n in zip(digits, ns):
            k = k * n + v
        return k

    def decode(k, ns):
        out = []
        for n in reversed(ns):
            out.append(k % n)
            k //= n
        return out[::-1]

    def A_obj(d: FinPresheaf) -> FinPresheaf:
        sets, maps = {}, {}
        for y in Y.objects:
            ns = sizes(d, y)
            labels = [""]
            for j in J:
                labels = [pair_label(l, m) if l else m for l in labels for m in d.sets[at(j, y)].labels]
            total = 1
            for n in ns:
                total *= n
            sets[y] = FinSet(total, tuple(labels)) if total else FinSet(0)
        for arr, (s, t) in Y.arrows.items():
            ns_s, ns_t = sizes(d, s), sizes(d, t)
            tabs = [d.maps[f"(id_{j},{arr})"].table for j in J]
            maps[arr] = FinMap.unchecked(sets[t], sets[s], tuple(
                encode([tb[v] for tb, v in zip(tabs, decode(k, ns_t))], ns_s) for k in range(sets[t].size)))
        return FinPresheaf.unchecked(Y, sets, maps)

    def A_mor(f: PresheafMap) -> PresheafMap:
        dom, cod = A_obj(f.dom), A_obj(f.cod)
        comps = {}
        for y in Y.objects:
            nd, nc = sizes(f.dom, y), sizes(f.cod, y)
            tabs = [f.comps[at(j, y)].table for j in J]
            comps[y] = FinMap.unchecked(dom.sets[y], cod.sets[y], tuple(
                encode([tb[v] for tb, v in zip(tabs, decode(k, nd))], nc) for k in range(dom.sets[y].size)))
        return PresheafMap.unchecked(dom, cod, comps)

    def eta(c: FinPresheaf) -> PresheafMap:
        tgt = A_obj(B.on_obj(c))
        comps = {}
        for y in Y.objects:
            n = c.sets[y].size
            ns = [n] * len(J)
            comps[y] = FinMap.unchecked(c.sets[y], tgt.sets[y], tuple(encode([k] * len(J), ns) for k in range(n)))
        return PresheafMap.unchecked(c, tgt, comps)

    def epsilon(d: FinPresheaf) -> PresheafMap:
        src = B.on_obj(A_obj(d))
        comps = {}
        for i, j in enumerate(J):
            for y in Y.objects:
                ns = sizes(d, y)
                x = at(j, y)
                comps[x] = FinMap.unchecked(src.sets[x], d.sets[x], tuple(
                    decode(k, ns)[i] for k in range(src.sets[x].size)))
        return PresheafMap.unchecked(src, d, comps)

    return MonoidalAdjunctionData(B, A_obj, A_mor, eta, epsilon, name=f"diag⊣prod[{','.join(J)}]")


# lax linear functors used as examples


def presheaf_linear_functor(phi: FinFunctor, pointed: bool = False) -> LaxLinearFunctor:
    """``Φ̂ = -∘Φ`` from presheaves on ``Φ.cod`` to presheaves on ``Φ.dom``.

    The action on the target is ``F ⊠ H = Φ̂(F) × H``, so the witness
    ``F ⊠ Φ̂(H) -> Φ̂(F × H)`` is the identity: the functor is strong.
    """
    M = presheaf_action(phi, pointed)
    S = M.scalar
    N = self_action(S.dom)
    src = restrict_action(IdentityMonoidal(S.dom), N, check=False)
    return LaxLinearFunctor(src, M, S.on_obj, S.on_mor,
                            lambda c, n: PresheafMap.identity(M.act_obj(c, S.on_obj(n))),
                            strong=True, name=f"{phi.name}^")


def plus_point_functor(base: PresheafCat) -> LaxLinearFunctor:
    """``L(n) = n + 1`` on a cartesian single-object base with ``Γ(s, *) = *``.

    Lax linear, preserves coequalizers, and ``Γ`` is not invertible once the
    acting object has more than one element.
    """
    if base.pointed or len(base.index.objects) != 1:
        raise ShapeError("the planted functor lives over plain finite sets")
    x = base.index.objects[0]
    A = self_action(base)

    def on_obj(n: FinPresheaf) -> FinPresheaf:
        s = n.sets[x]
        return base.of_set(FinSet(s.size + 1, s.labels + ("+",)))

    def on_mor(f: PresheafMap) -> PresheafMap:
        k = f.cod.sets[x].size
        t = f.comps[x].table + (k,)
        dom, cod = on_obj(f.dom), on_obj(f.cod)
        return PresheafMap.unchecked(dom, cod, {x: FinMap.unchecked(dom.sets[x], cod.sets[x], t)})

    def gamma(c: FinPresheaf, n: FinPresheaf) -> PresheafMap:
        Ln = on_obj(n)
        dom = A.act_obj(c, Ln)
        cod = on_obj(A.act_obj(c, n))
        nn, nc = n.sets[x].size, c.sets[x].size
        star = nc * nn
        t = []
        for k in range(dom.sets[x].size):
            s, v = base.unpair(nc, nn + 1, k)
            t.append(star if v == nn else base.pair(nc, nn, s, v))
        return PresheafMap.unchecked(dom, cod, {x: FinMap.unchecked(dom.sets[x], cod.sets[x], tuple(t))})

    src = restrict_action(IdentityMonoidal(base), A, check=False)
    return LaxLinearFunctor(src, A, on_obj, on_mor, gamma, strong=False, name="plus_point")


# the induced module functor and θ


def _inner(L: LaxLinearFunctor) -> Actegory:
    return L.source.params.get("inner", L.source)


def _scalar_functor(L: LaxLinearFunctor) -> StrongMonoidalFunctor:
    return L.source.params.get("B") or IdentityMonoidal(L.source.base)


def _gamma(L: LaxLinearFunctor, c: FinPresheaf, n: FinPresheaf) -> PresheafMap:
    try:
        g = L.gamma(c, n)
    except KeyError as e:
        raise InputCompletenessError(f"no witness component supplied for ({c!r}, {n!r})") from e
    if g is None:
        raise InputCompletenessError(f"no witness component supplied for ({c!r}, {n!r})")
    return g


@dataclass(eq=False)
class InducedModuleFunctor:
    """``(n, ρ) ↦ (L(n), L(ρ)∘Γ_{a,n})`` from ``B(a)``-modules to ``a``-modules."""

    L: LaxLinearFunctor
    a: CommMonoid

    def __post_init__(self):
        self._memo: dict = {}

    @property
    def source_monoid(self) -> CommMonoid:
        return monoid_image(_scalar_functor(self.L), self.a)

    def on_module(self, n: Module) -> Module:
        hit = self._memo.get(id(n))
        if hit is not None:
            return hit[1]
        if not n.over.same_as(self.source_monoid):
            raise ShapeError(f"{n.name} is not a module over {self.source_monoid.name}")
        L, M = self.L, self.L.target
        Ln = L.on_obj(n.carrier)
        g = _gamma(L, self.a.carrier, n.carrier)
        act = g.then(L.on_mor(n.action))
        dom = M.act_obj(self.a.carrier, Ln)
        out = Module(M, self.a, Ln, PresheafMap.unchecked(dom, Ln, act.comps), name=f"{L.name}({n.name})")
        self._memo[id(n)] = (n, out)
        return out

    def on_morphism(self, phi: ModuleMorphism) -> ModuleMorphism:
        dom, cod = self.on_module(phi.dom), self.on_module(phi.cod)
        f = self.L.on_mor(phi.map)
        return ModuleMorphism(dom, cod, PresheafMap.unchecked(dom.carrier, cod.carrier, f.comps),
                              name=f"{self.L.name}({phi.name})")


def induced_module_functor(L: LaxLinearFunctor, a: CommMonoid) -> InducedModuleFunctor:
    if L.target.base.index.objects != a.base.index.objects:
        raise ShapeError("monoid lives over a different base than the functor")
    return InducedModuleFunctor(L, a)


def compute_theta(alpha: MonoidMorphism, adj: MonoidalAdjunctionData, L: LaxLinearFunctor,
                  n: Module) -> ModuleMorphism:
    """``θ: b ⊠_a L(n) -> L(B(b) ⊞_{B(a)} n)``, descended from ``L(q)∘Γ_{b,n}``."""
    a, b = alpha.dom, alpha.cod
    Ba = morphism_image(adj.B, alpha)
    if not n.over.same_as(Ba.dom):
        raise ShapeError(f"{n.name} is not a module over {Ba.dom.name}")
    La, Lb = induced_module_functor(L, a), induced_module_functor(L, b)
    left = extend_scalars(alpha, La.on_module(n))
    right = extend_scalars(Ba, n)
    target = Lb.on_module(right.module)
    M = L.target.M
    f = _gamma(L, b.carrier, n.carrier).then(L.on_mor(right.coeq))
    f = PresheafMap.unchecked(left.bm, target.carrier, f.comps)
    h = M.descend(left.coeq, f, what="comparison θ")
    return ModuleMorphism(left.module, target, h, name=f"theta[{alpha.name}]")


def coequalizer_preservation(L: LaxLinearFunctor, budget: ProbeBudget | None = None) -> CheckReport:
    """Spot-check that ``L`` carries coequalizers of small parallel pairs to coequalizers."""
    budget = budget or ProbeBudget()
    N = L.source.M
    M = L.target.M
    objs = list(islice(N.objects_up_to(budget.max_module_size), 8))
    n = 0
    for X, Y in iproduct(objs, repeat=2):
        maps = list(islice(N.homs(X, Y), 6))
        for f, g in iproduct(maps, repeat=2):
            if n >= budget.max_test_morphisms:
                break
            n += 1
            _, q = N.coequalizer(f, g)
            Lf, Lg, Lq = L.on_mor(f), L.on_mor(g), L.on_mor(q)
            _, q2 = M.coequalizer(Lf, Lg)
            try:
                h = M.descend(q2, PresheafMap.unchecked(q2.dom, Lq.cod, Lq.comps), what="L(q)")
            except InvariantViolation:
                return CheckReport("coequalizers", Status.FAIL, (Tag.BUDGET,), op="compute_theta",
                                   witness={"reason": "L(q) does not coequalize", "pair": n},
                                   budget=budget.to_dict())
            if not h.is_iso():
                return CheckReport("coequalizers", Status.FAIL, (Tag.BUDGET,), op="compute_theta",
                                   witness={"reason": "comparison not bijective", "pair": n,
                                            "sizes": [X.size(), Y.size()]},
                                   budget=budget.to_dict())
    return CheckReport("coequalizers", Status.PASSED_WITHIN_BUDGET, (Tag.BUDGET,), op="compute_theta",
                       details={"examined": n}, budget=budget.to_dict())


def _strength(L: LaxLinearFunctor, cs: Sequence[FinPresheaf], ns: Sequence[FinPresheaf]) -> CheckReport:
    bad = []
    if not L.strong:
        bad.append({"reason": "functor is declared lax, not strong"})
    for i, c in enumerate(cs):
        for j, n in enumerate(ns):
            if not _gamma(L, c, n).is_iso():
                bad.append({"reason": "witness component not invertible", "c": i, "n": j,
                            "sizes": [c.size(), n.size()]})
    return laws_report("strong", bad, op="compute_theta")


def check_theta_iso(alpha: MonoidMorphism, adj: MonoidalAdjunctionData, L: LaxLinearFunctor, n: Module,
                    budget: ProbeBudget | None = None) -> CheckReport:
    """θ is bijective whenever ``Γ`` is invertible and ``L`` preserves coequalizers.

    With both hypotheses verified, θ's bijectivity is asserted.  Otherwise it
    is recorded as an observation and the report is ``SKIPPED``.
    """
    budget = budget or ProbeBudget()
    theta = compute_theta(alpha, adj, L, n)
    bij = theta.map.is_iso()
    eq = check_equivariance(theta)
    cs = [alpha.dom.carrier, alpha.cod.carrier]
    ns = [n.carrier] + list(islice(L.source.M.objects_up_to(budget.max_module_size), 4))
    hyp = [_strength(L, cs, ns), coequalizer_preservation(L, budget)]
    met = all(h.ok for h in hyp)
    obs = {"theta_bijective": bij, "theta_equivariant": eq.ok, "hypotheses_met": met,
           "sizes": [theta.dom.carrier.size(), theta.cod.carrier.size()]}
    cid = f"theta:{alpha.name}:{n.name}"
    if not eq.ok:
        return combine(cid, hyp + [eq], op="check_theta_iso", details=obs)
    if not met:
        obs["unmet"] = [h.check_id for h in hyp if not h.ok]
        return CheckReport(cid, Status.SKIPPED, (Tag.EXACT,), details=obs, items=hyp, op="check_theta_iso")
    verdict = laws_report("theta_bijective", [] if bij else [{"sizes": obs["sizes"]}], op="compute_theta")
    return combine(cid, hyp + [verdict], op="check_theta_iso", details=obs)


def transport_cover_check(C: CoverFamily, adj: MonoidalAdjunctionData, L: LaxLinearFunctor,
                          budgets: ProbeBudget | tuple[ProbeBudget, ProbeBudget] | None = None) -> CheckReport:
    """Verify ``C`` in the source backend, then its image under ``B`` in the target backend."""
    if isinstance(budgets, tuple):
        src_b, tgt_b = budgets
    else:
        src_b = tgt_b = budgets or ProbeBudget()
    M, N = L.target, _inner(L)
    source = check_fpqc_cover(C, M, src_b)
    source.check_id = "source"
    if not source.ok:
        target = CheckReport("target", Status.SKIPPED, details={"reason": "source cover not verified"},
                             op="transport_cover_check")
        return CheckReport(f"transport:{C.name}", Status.SKIPPED, details={"source": source.status.value},
                           items=[source, target], op="transport_cover_check")
    legs = [morphism_image(adj.B, l) for l in C.legs]
    image = CoverFamily(monoid_image(adj.B, C.base), legs, C.finite_subset, name=f"{adj.B.name}({C.name})")
    target = check_fpqc_cover(image, N, tgt_b)
    target.check_id = "target"
    return combine(f"transport:{C.name}", [source, target], op="transport_cover_check")


def identity_linear(A: Actegory) -> LaxLinearFunctor:
    """The identity, viewed as a functor from ``id_*A`` to ``A``."""
    src = restrict_action(IdentityMonoidal(A.base), A, check=False)
    return LaxLinearFunctor(src, A, lambda n: n, lambda f: f,
                            lambda c, n: PresheafMap.identity(A.act_obj(c, n)), True, "id")


def transported_module_laws(L: LaxLinearFunctor, a: CommMonoid, modules: Sequence[Module]) -> CheckReport:
    F = induced_module_functor(L, a)
    return combine(f"induced:{L.name}", [check_module_laws(F.on_module(m)) for m in modules],
                   op="induced_module_functor")


_CONSTANT: dict = {}


def constant_functor(base: PresheafCat, index: FinCategory) -> Precomposition:
    """Presheaves on a one-object base spread constantly over ``index``."""
    key = (id(base), id(index))
    hit = _CONSTANT.get(key)
    if hit is None:
        o = base.index.objects[0]
        bang = FinFunctor(index, base.index, {x: o for x in index.objects},
                          {f: base.index.identities[o] for f in index.arrows}, name="const")
        F = Precomposition(bang, base.pointed, dom=base, cod=PresheafCat(index, base.pointed))
        hit = _CONSTANT[key] = (base, index, F)
    return hit[2]


def constant_monoid(a: CommMonoid, index: FinCategory) -> CommMonoid:
    return monoid_image(constant_functor(a.base, index), a)


def constant_morphism(alpha: MonoidMorphism, index: FinCategory) -> MonoidMorphism:
    return morphism_image(constant_functor(alpha.dom.base, index), alpha)
