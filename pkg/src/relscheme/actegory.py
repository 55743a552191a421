"""Actegories ``(M, ⊠, λ, l)`` over a presheaf base, and the concrete backends.

Every backend here acts through a strong monoidal *scalar functor*
``S: C -> M`` into a presheaf category: ``c ⊠ m = S(c) ⊗ m``.  The structure
maps are then assembled from the monoidal structure of ``M`` and the witnesses
of ``S``, so restricting an action along another strong monoidal functor is
just composition of scalar functors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice, product as iproduct
from typing import Callable, Sequence

from .errors import PreconditionError, ShapeError
from .fincore.categories import FinCategory, FinFunctor
from .fincore.presheaf import FinPresheaf, PresheafCat, PresheafMap
from .fincore.sets import FinMap, FinSet
from .report import CheckReport, Status, Tag, combine, laws_report


class StrongMonoidalFunctor:
    """A functor between presheaf bases with coherence isos ``mu`` and ``eps``.

    ``mu(c, d): F(c)⊗F(d) -> F(c⊗d)`` and ``eps: 1 -> F(1)``.
    """

    name = "F"

    def __init__(self, dom: PresheafCat, cod: PresheafCat):
        self.dom, self.cod = dom, cod

    def on_obj(self, c: FinPresheaf) -> FinPresheaf:
        raise NotImplementedError

    def on_mor(self, f: PresheafMap) -> PresheafMap:
        raise NotImplementedError

    def mu(self, c: FinPresheaf, d: FinPresheaf) -> PresheafMap:
        raise NotImplementedError

    def eps(self) -> PresheafMap:
        raise NotImplementedError

    def then(self, other: "StrongMonoidalFunctor") -> "StrongMonoidalFunctor":
        return ComposedMonoidal(self, other)


class IdentityMonoidal(StrongMonoidalFunctor):
    name = "id"

    def __init__(self, base: PresheafCat):
        super().__init__(base, base)

    def on_obj(self, c):
        return c

    def on_mor(self, f):
        return f

    def mu(self, c, d):
        return PresheafMap.identity(self.cod.tensor(c, d))

    def eps(self):
        return PresheafMap.identity(self.cod.unit())


class Precomposition(StrongMonoidalFunctor):
    """``F ↦ F∘Φ^op`` from presheaves on ``Φ.cod`` to presheaves on ``Φ.dom``.

    The pointwise product commutes with precomposition on the nose, so both
    witnesses are identities.
    """

    def __init__(self, phi: FinFunctor, pointed: bool = False, dom: PresheafCat | None = None,
                 cod: PresheafCat | None = None):
        super().__init__(dom or PresheafCat(phi.cod, pointed), cod or PresheafCat(phi.dom, pointed))
        self.phi = phi
        self.name = f"{phi.name}^"

    def on_obj(self, c: FinPresheaf) -> FinPresheaf:
        phi = self.phi
        sets = {x: c.sets[phi.on_objects[x]] for x in phi.dom.objects}
        maps = {a: c.maps[phi.on_arrows[a]] for a in phi.dom.arrows}
        return FinPresheaf.unchecked(phi.dom, sets, maps)

    def on_mor(self, f: PresheafMap) -> PresheafMap:
        comps = {x: f.comps[self.phi.on_objects[x]] for x in self.phi.dom.objects}
        return PresheafMap.unchecked(self.on_obj(f.dom), self.on_obj(f.cod), comps)

    def mu(self, c, d):
        return PresheafMap.identity(self.cod.tensor(self.on_obj(c), self.on_obj(d)))

    def eps(self):
        return PresheafMap.identity(self.cod.unit())


class ComposedMonoidal(StrongMonoidalFunctor):
    """``G∘F`` with ``mu = G(mu_F)∘mu_G`` and ``eps = G(eps_F)∘eps_G``."""

    def __init__(self, f: StrongMonoidalFunctor, g: StrongMonoidalFunctor):
        super().__init__(f.dom, g.cod)
        self.f, self.g = f, g
        self.name = f"{g.name}{f.name}"

    def on_obj(self, c):
        return self.g.on_obj(self.f.on_obj(c))

    def on_mor(self, m):
        return self.g.on_mor(self.f.on_mor(m))

    def mu(self, c, d):
        return self.g.mu(self.f.on_obj(c), self.f.on_obj(d)).then(self.g.on_mor(self.f.mu(c, d)))

    def eps(self):
        return self.g.eps().then(self.g.on_mor(self.f.eps()))


def check_monoidal_witnesses(
    B: StrongMonoidalFunctor, objects: Sequence[FinPresheaf], max_pairs: int = 64
) -> CheckReport:
    """Isomorphy of ``mu``/``eps`` and the associativity square, on sampled objects."""
    bad: list[dict] = []
    C, D = B.dom, B.cod
    if not B.eps().is_iso():
        bad.append({"law": "unit witness is not invertible"})
    for k, (c, d) in enumerate(islice(iproduct(objects, repeat=2), max_pairs)):
        m = B.mu(c, d)
        if not m.is_iso():
            bad.append({"law": "mu not invertible", "pair": [k]})
    for k, (c, d, e) in enumerate(islice(iproduct(objects, repeat=3), max_pairs)):
        fc, fd, fe = B.on_obj(c), B.on_obj(d), B.on_obj(e)
        lhs = (
            D.associator(fc, fd, fe)
            .then(D.tensor_maps(B.mu(c, d), PresheafMap.identity(fe)))
            .then(B.mu(C.tensor(c, d), e))
        )
        rhs = (
            D.tensor_maps(PresheafMap.identity(fc), B.mu(d, e))
            .then(B.mu(c, C.tensor(d, e)))
            .then(B.on_mor(C.associator(c, d, e)))
        )
        if not lhs.same_as(rhs):
            bad.append({"law": "associativity square", "triple": [k]})
    return laws_report(f"monoidal_witnesses:{B.name}", bad, op="restrict_action")


@dataclass(eq=False)
class Actegory:
    """``c ⊠ m = S(c) ⊗ m`` in the presheaf category ``M``."""

    base: PresheafCat
    M: PresheafCat
    scalar: StrongMonoidalFunctor
    name: str = "A"
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def act_obj(self, c: FinPresheaf, m: FinPresheaf) -> FinPresheaf:
        return self.M.tensor(self.scalar.on_obj(c), m)

    def act_mor(self, f: PresheafMap, g: PresheafMap, dom=None, cod=None) -> PresheafMap:
        return self.M.tensor_maps(self.scalar.on_mor(f), g, dom, cod)

    def pair(self, x: str, c: FinPresheaf, m: FinPresheaf, i: int, j: int) -> int:
        """Index of ``(i, j)`` in ``(c ⊠ m)(x)``, ``i`` an element of ``S(c)(x)``."""
        sc = self.scalar.on_obj(c)
        return self.M.pair(sc.sets[x].size, m.sets[x].size, i, j)

    def __post_init__(self):
        self._memo: dict = {}

    def _remember(self, key, objs, value):
        if len(self._memo) > 4096:
            self._memo.clear()
        # holding the objects keeps their ids from being reused
        self._memo[key] = (objs, value)
        return value

    def assoc(self, a: FinPresheaf, b: FinPresheaf, m: FinPresheaf) -> PresheafMap:
        """``λ: a⊠(b⊠m) -> (a⊗b)⊠m``."""
        key = ("assoc", id(a), id(b), id(m))
        hit = self._memo.get(key)
        if hit is not None:
            return hit[1]
        return self._remember(key, (a, b, m), self._assoc(a, b, m))

    def _assoc(self, a: FinPresheaf, b: FinPresheaf, m: FinPresheaf) -> PresheafMap:
        S, M = self.scalar, self.M
        sa, sb = S.on_obj(a), S.on_obj(b)
        step = M.associator(sa, sb, m)
        return step.then(
            M.tensor_maps(S.mu(a, b), PresheafMap.identity(m), dom=step.cod,
                          cod=self.act_obj(self.base.tensor(a, b), m))
        )

    def unitor(self, m: FinPresheaf) -> PresheafMap:
        """``l: 1⊠m -> m``."""
        key = ("unitor", id(m))
        hit = self._memo.get(key)
        if hit is not None:
            return hit[1]
        return self._remember(key, (m,), self._unitor(m))

    def _unitor(self, m: FinPresheaf) -> PresheafMap:
        S, M = self.scalar, self.M
        e = S.eps()
        first = M.tensor_maps(e.inverse(), PresheafMap.identity(m), dom=self.act_obj(self.base.unit(), m))
        return first.then(M.left_unitor(m))

    def __repr__(self) -> str:
        return f"Actegory({self.name})"


# backends


def self_action(base: PresheafCat) -> Actegory:
    return Actegory(base, base, IdentityMonoidal(base), name=f"self({base.name})", kind="self")


def diagonal_action(J: Sequence[str], base: PresheafCat) -> Actegory:
    """J-indexed families of base objects, acted on coordinatewise."""
    J = [str(j) for j in J]
    if not J:
        raise PreconditionError("index set must be nonempty")
    disc = FinCategory.discrete(J, name="J")
    X = FinCategory.product(disc, base.index)
    Y = base.index
    on_obj = {f"({j},{y})": y for j in J for y in Y.objects}
    on_arr = {f"(id_{j},{a})": a for j in J for a in Y.arrows}
    phi = FinFunctor(X, Y, on_obj, on_arr, name="pr")
    M = PresheafCat(X, base.pointed, name=f"[J,{base.name}]")
    return Actegory(base, M, Precomposition(phi, base.pointed, dom=base, cod=M),
                    name=f"diag({','.join(J)};{base.name})", kind="diagonal", params={"J": J})


def family(A: Actegory, members: Sequence[FinPresheaf]) -> FinPresheaf:
    """Assemble a J-family of base objects into an object of the diagonal backend."""
    J = A.params["J"]
    if len(members) != len(J):
        raise ShapeError(f"need {len(J)} members")
    X = A.M.index
    Y = A.base.index
    sets, maps = {}, {}
    for j, m in zip(J, members):
        for y in Y.objects:
            sets[f"({j},{y})"] = m.sets[y]
        for a in Y.arrows:
            maps[f"(id_{j},{a})"] = m.maps[a]
    return FinPresheaf(X, sets, maps)


def member(A: Actegory, f: FinPresheaf, j: str) -> FinPresheaf:
    Y = A.base.index
    return FinPresheaf(
        Y,
        {y: f.sets[f"({j},{y})"] for y in Y.objects},
        {a: f.maps[f"(id_{j},{a})"] for a in Y.arrows},
    )


def presheaf_action(phi: FinFunctor, pointed: bool = False) -> Actegory:
    """Presheaves on ``phi.dom`` acted on by presheaves on ``phi.cod`` via ``(F∘Φ)×H``."""
    rep = phi.check_laws()
    if not rep.ok:
        raise PreconditionError(f"{phi.name} is not a functor: {rep.witness}")
    if not phi.is_essentially_surjective():
        raise PreconditionError(f"{phi.name} is not essentially surjective")
    S = Precomposition(phi, pointed)
    return Actegory(S.dom, S.cod, S, name=f"psh({phi.name})", kind="presheaf")


def monoid_category(elements: Sequence[str], table: Sequence[Sequence[int]], unit: int,
                    name: str = "M") -> FinCategory:
    cat = FinCategory.from_monoid(elements, table, unit, name=name)
    rep = cat.check_laws()
    if not rep.ok:
        raise PreconditionError(f"{name} is not a monoid: {rep.witness}")
    return cat


def monoid_hom_functor(M: FinCategory, N: FinCategory, table: dict[str, str] | Sequence[int],
                       name: str = "sigma") -> FinFunctor:
    if not isinstance(table, dict):
        mel, nel = list(M.arrows), list(N.arrows)
        table = {mel[i]: nel[v] for i, v in enumerate(table)}
    phi = FinFunctor(M, N, {"*": "*"}, dict(table), name=name)
    rep = phi.check_laws()
    if not rep.ok:
        raise PreconditionError(f"{name} is not a monoid homomorphism: {rep.witness}")
    return phi


def rep_action(sigma: FinFunctor) -> Actegory:
    """Right M-sets acted on by right N-sets: ``(s, t).m = (s.σ(m), t.m)``."""
    rep = sigma.check_laws()
    if not rep.ok:
        raise PreconditionError(f"{sigma.name} is not a monoid homomorphism: {rep.witness}")
    S = Precomposition(sigma)
    return Actegory(S.dom, S.cod, S, name=f"rep({sigma.name})", kind="rep")


def mset(M: FinCategory, elements: Sequence[str], action: dict[str, Sequence[int]]) -> FinPresheaf:
    """A right M-set; ``action[m][u]`` is ``u.m``."""
    s = FinSet.of(elements)
    maps = {m: FinMap(s, s, tuple(action[m])) for m in M.arrows}
    p = FinPresheaf(M, {"*": s}, maps)
    rep = p.check_laws()
    if not rep.ok:
        raise PreconditionError(f"not a right action: {rep.witness}")
    return p


def digraph_action(M: FinCategory, m: str, n: str) -> Actegory:
    """Directed graphs acted on by right M-sets, sources twisted by ``m`` and targets by ``n``."""
    P = FinCategory.parallel_pair()
    e = M.identities["*"]
    phi = FinFunctor(P, M, {"0": "*", "1": "*"}, {"id0": e, "id1": e, "d0": m, "d1": n},
                     name=f"graph({m},{n})")
    S = Precomposition(phi)
    return Actegory(S.dom, S.cod, S, name=f"digraph({M.name};{m},{n})", kind="digraph",
                    params={"m": m, "n": n})


def digraph(vertices: Sequence[str], edges: Sequence[tuple[str, str, str]]) -> FinPresheaf:
    """``edges`` lists ``(id, source, target)``; value at ``0`` is V and at ``1`` is E."""
    V = FinSet.of(vertices)
    E = FinSet.of([e[0] for e in edges])
    P = FinCategory.parallel_pair()
    s = FinMap(E, V, tuple(V.index(e[1]) for e in edges))
    t = FinMap(E, V, tuple(V.index(e[2]) for e in edges))
    return FinPresheaf(P, {"0": V, "1": E},
                       {"id0": FinMap.identity(V), "id1": FinMap.identity(E), "d0": s, "d1": t})


def restrict_action(B: StrongMonoidalFunctor, N: Actegory, sample: Sequence[FinPresheaf] | None = None,
                    check: bool = True) -> Actegory:
    """``B_*N``: the domain base acts through ``S_N∘B``."""
    if B.cod.index.objects != N.base.index.objects or B.cod.pointed != N.base.pointed:
        raise ShapeError("functor lands in a different base")
    if check:
        objs = list(sample) if sample is not None else list(islice(B.dom.objects_up_to(2), 6))
        rep = check_monoidal_witnesses(B, objs)
        if not rep.ok:
            raise PreconditionError(f"{B.name} fails its monoidal witness check: {rep.witness}")
    if isinstance(B, IdentityMonoidal):
        scalar = N.scalar
    else:
        scalar = ComposedMonoidal(B, N.scalar)
    return Actegory(B.dom, N.M, scalar, name=f"{B.name}_*{N.name}", kind="restricted",
                    params={"inner": N, "B": B})


# lax linear functors


@dataclass(eq=False)
class LaxLinearFunctor:
    """``L: N -> M`` with ``Γ_{c,n}: c ⊠_M L(n) -> L(c ⊠_N n)``."""

    source: Actegory
    target: Actegory
    on_obj: Callable[[FinPresheaf], FinPresheaf]
    on_mor: Callable[[PresheafMap], PresheafMap]
    gamma: Callable[[FinPresheaf, FinPresheaf], PresheafMap]
    strong: bool = True
    name: str = "L"

    @classmethod
    def identity(cls, A: Actegory) -> "LaxLinearFunctor":
        return cls(A, A, lambda n: n, lambda f: f,
                   lambda c, n: PresheafMap.identity(A.act_obj(c, n)), True, "id")

    def check(self, base_objs: Sequence[FinPresheaf], objs: Sequence[FinPresheaf],
              max_maps: int = 8) -> CheckReport:
        """Γ natural in both slots on the sample; iso everywhere when flagged strong."""
        A, N = self.target, self.source
        bad: list[dict] = []
        for ci, c in enumerate(base_objs):
            for ni, n in enumerate(objs):
                g = self.gamma(c, n)
                if self.strong and not g.is_iso():
                    bad.append({"law": "strong component not invertible", "c": ci, "n": ni})
                for h in islice(N.M.homs(n, n), max_maps):
                    lhs = A.act_mor(PresheafMap.identity(c), self.on_mor(h)).then(self.gamma(c, n))
                    rhs = g.then(self.on_mor(N.act_mor(PresheafMap.identity(c), h)))
                    if not lhs.same_as(rhs):
                        bad.append({"law": "naturality in n", "c": ci, "n": ni})
                        break
                for f in islice(A.base.homs(c, c), max_maps):
                    lhs = A.act_mor(f, PresheafMap.identity(self.on_obj(n))).then(g)
                    rhs = g.then(self.on_mor(N.act_mor(f, PresheafMap.identity(n))))
                    if not lhs.same_as(rhs):
                        bad.append({"law": "naturality in c", "c": ci, "n": ni})
                        break
        return laws_report(f"lax_linear:{self.name}", bad, op="induced_module_functor")


# coherence


@dataclass
class CoherenceBudget:
    max_size: int = 2
    max_tuples: int = 200
    max_maps: int = 4

    def to_dict(self) -> dict:
        return {"max_size": self.max_size, "max_tuples": self.max_tuples, "max_maps": self.max_maps}


def _objects(cat: PresheafCat, max_size: int, limit: int) -> list[FinPresheaf]:
    return list(islice(cat.objects_up_to(max_size), limit))


def check_actegory_coherence(A: Actegory, budget: CoherenceBudget | None = None) -> CheckReport:
    """λ, l invertible and natural; pentagon-style and both triangle-style identities.

    Exhaustive over base and module objects up to ``budget.max_size`` elements,
    capped at ``budget.max_tuples`` tuples per law.
    """
    budget = budget or CoherenceBudget()
    C, M = A.base, A.M
    cs = _objects(C, budget.max_size, 12)
    ms = _objects(M, budget.max_size, 12)
    cap = budget.max_tuples
    iso_bad, nat_bad, pent_bad, tri_bad = [], [], [], []

    def label(*idx):
        return list(idx)

    for k, (a, b, m) in enumerate(islice(iproduct(cs, cs, ms), cap)):
        lam = A.assoc(a, b, m)
        if not lam.is_iso():
            iso_bad.append({"map": "lambda", "tuple": label(cs.index(a), cs.index(b), ms.index(m))})
        # naturality in each slot along sampled endomorphisms and maps
        for f in islice(C.homs(a, a), budget.max_maps):
            ib, im = PresheafMap.identity(b), PresheafMap.identity(m)
            lhs = A.act_mor(f, A.act_mor(ib, im)).then(A.assoc(a, b, m))
            rhs = lam.then(A.act_mor(C.tensor_maps(f, ib), im))
            if not lhs.same_as(rhs):
                nat_bad.append({"map": "lambda", "slot": "a", "tuple": [cs.index(a), cs.index(b), ms.index(m)]})
                break
        for g in islice(C.homs(b, b), budget.max_maps):
            ia, im = PresheafMap.identity(a), PresheafMap.identity(m)
            lhs = A.act_mor(ia, A.act_mor(g, im)).then(lam)
            rhs = lam.then(A.act_mor(C.tensor_maps(ia, g), im))
            if not lhs.same_as(rhs):
                nat_bad.append({"map": "lambda", "slot": "b", "tuple": [cs.index(a), cs.index(b), ms.index(m)]})
                break
        for h in islice(M.homs(m, m), budget.max_maps):
            ia, ib = PresheafMap.identity(a), PresheafMap.identity(b)
            lhs = A.act_mor(ia, A.act_mor(ib, h)).then(lam)
            rhs = lam.then(A.act_mor(C.tensor_maps(ia, ib), h))
            if not lhs.same_as(rhs):
                nat_bad.append({"map": "lambda", "slot": "m", "tuple": [cs.index(a), cs.index(b), ms.index(m)]})
                break
        # triangle-style: λ_{a,1,m} then (r_a ⊠ 1) equals 1_a ⊠ l_m
        one = C.unit()
        lhs = A.assoc(a, one, m).then(A.act_mor(C.right_unitor(a), PresheafMap.identity(m)))
        rhs = A.act_mor(PresheafMap.identity(a), A.unitor(m))
        if not lhs.same_as(rhs):
            tri_bad.append({"law": "middle unit", "tuple": [cs.index(a), ms.index(m)]})
        # left-unit compatibility: λ_{1,b,m} then (l_b ⊠ 1) equals l_{b⊠m}
        bm = A.act_obj(b, m)
        lhs = A.assoc(one, b, m).then(A.act_mor(C.left_unitor(b), PresheafMap.identity(m)))
        if not lhs.same_as(A.unitor(bm)):
            tri_bad.append({"law": "left unit", "tuple": [cs.index(b), ms.index(m)]})

    for m in ms:
        if not A.unitor(m).is_iso():
            iso_bad.append({"map": "unitor", "object": ms.index(m)})
        for h in islice(M.homs(m, m), budget.max_maps):
            lhs = A.act_mor(PresheafMap.identity(C.unit()), h).then(A.unitor(m))
            rhs = A.unitor(m).then(h)
            if not lhs.same_as(rhs):
                nat_bad.append({"map": "unitor", "object": ms.index(m)})
                break

    for a, b, c, m in islice(iproduct(cs, cs, cs, ms), cap):
        cm = A.act_obj(c, m)
        ab = C.tensor(a, b)
        path1 = A.assoc(a, b, cm).then(A.assoc(ab, c, m))
        bc = C.tensor(b, c)
        path2 = (
            A.act_mor(PresheafMap.identity(a), A.assoc(b, c, m))
            .then(A.assoc(a, bc, m))
            .then(A.act_mor(C.associator(a, b, c), PresheafMap.identity(m)))
        )
        if not path1.same_as(path2):
            pent_bad.append({"tuple": [cs.index(a), cs.index(b), cs.index(c), ms.index(m)]})

    b_dict = budget.to_dict()
    items = [
        laws_report("structure maps invertible", iso_bad, op="check_actegory_coherence"),
        laws_report("structure maps natural", nat_bad, op="check_actegory_coherence"),
        laws_report("pentagon-style", pent_bad, op="check_actegory_coherence"),
        laws_report("triangle-style", tri_bad, op="check_actegory_coherence"),
    ]
    for it in items:
        it.tags = (Tag.BUDGET,)
        it.budget = b_dict
        if it.status is Status.PASS:
            it.status = Status.PASSED_WITHIN_BUDGET
    return combine(f"actegory_coherence:{A.name}", items, op="check_actegory_coherence",
                   budget=b_dict, details={"base_objects": len(cs), "module_objects": len(ms)})


def action_preserves_colimits(A: Actegory, c: FinPresheaf, m1: FinPresheaf, m2: FinPresheaf) -> bool:
    """Canonical map ``c⊠m1 ⊔ c⊠m2 -> c⊠(m1 ⊔ m2)`` is a bijection."""
    M = A.M
    cop, i1, i2 = M.coproduct(m1, m2)
    left, j1, j2 = M.coproduct(A.act_obj(c, m1), A.act_obj(c, m2))
    target = A.act_obj(c, cop)
    ic = PresheafMap.identity(c)
    comp = M.copair(left, A.act_mor(ic, i1, cod=target), A.act_mor(ic, i2, cod=target))
    return comp.is_iso()
