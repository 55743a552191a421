"""Pointed finite sets as a base with zero object, and gluing along an adjunction.

A commutative monoid ``c`` in pointed sets has a hom-monoid ``C(1, c)``
carrying an absorbing element; conversely a finite monoid with zero ``M``
(a CMon₀ object, here a plain monoid whose ``zero`` is set) yields ``C[M]``,
the wedge of ``M`` copies of the unit with the zero copy collapsed.  The two
constructions are adjoint and the adjunction is used to glue the categories.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Hashable, Sequence

from .commalg import (
    CommMonoid,
    MonoidMorphism,
    cartesian_sets,
    check_comm_monoid,
    enumerate_comm_monoids,
    monoid_homs,
    pointed_sets,
)
from .errors import InputCompletenessError, PreconditionError, ShapeError, UnsupportedBaseError
from .fincore.categories import FinCategory, FinFunctor
from .fincore.presheaf import PresheafMap
from .fincore.sets import FinMap, FinSet
from .report import CheckReport, Status, Tag, combine, laws_report, passed

# CMon₀ objects


def cmon0(elements: Sequence[str], table: Sequence[Sequence[int]], unit: int, zero: int,
          name: str = "M") -> CommMonoid:
    return CommMonoid.from_table(elements, table, unit, zero=zero, name=name)


def check_cmon0(M: CommMonoid) -> CheckReport:
    items = [check_comm_monoid(M)]
    if M.base.pointed or M.zero is None:
        items.append(laws_report("zero", [{"law": "no absorbing element recorded"}], op="hom_monoid"))
    return combine(f"cmon0:{M.name}", items, op="hom_monoid")


def _absorbing(t) -> list[int]:
    n = len(t)
    return [z for z in range(n) if all(t[z][x] == z for x in range(n))]


def cmon0_monoids(max_size: int) -> list[CommMonoid]:
    """Finite commutative monoids with an absorbing element, up to isomorphism."""
    out = []
    for n in range(1, max_size + 1):
        for m in enumerate_comm_monoids(n):
            for z in _absorbing(m.table):
                out.append(CommMonoid.from_table(m.elements.labels, m.table, m.e, zero=z,
                                                 name=f"{m.name}z"))
    return out


def to_pointed(M: CommMonoid, name: str | None = None) -> CommMonoid:
    """The commutative monoid in pointed sets with the zero of ``M`` as basepoint."""
    if M.zero is None:
        raise PreconditionError(f"{M.name} has no absorbing element")
    z = M.zero["*"]
    order = [z] + [i for i in range(M.size) if i != z]
    pos = {v: k for k, v in enumerate(order)}
    labels = [M.elements.labels[i] for i in order]
    t = [[pos[M.table[i][j]] for j in order] for i in order]
    return CommMonoid.from_table(labels, t, pos[M.e], pointed=True, name=name or M.name)


def pointed_monoids(max_size: int) -> list[CommMonoid]:
    return [to_pointed(M, name=f"{M.name}*") for M in cmon0_monoids(max_size)]


def saturating(n: int) -> CommMonoid:
    """``{0, ..., n}`` under truncated addition; ``n`` absorbs, ``0`` is the unit."""
    t = [[min(i + j, n) for j in range(n + 1)] for i in range(n + 1)]
    return to_pointed(cmon0([str(i) for i in range(n + 1)], t, 0, n, name=f"sat{n}"))


# the hom-monoid C(1, c)


def _require_pointed(c: CommMonoid) -> None:
    if not c.base.pointed:
        raise UnsupportedBaseError("the hom-monoid needs a base with a zero object (pointed sets)")
    if len(c.base.index.objects) != 1:
        raise UnsupportedBaseError("the hom-monoid is implemented over pointed finite sets only")


def points(c: CommMonoid) -> list[PresheafMap]:
    """Pointed maps ``1 -> c``, ordered by the element hit by the non-base point."""
    _require_pointed(c)
    memo = c.__dict__.get("_points")
    if memo is None:
        B = c.base
        memo = sorted(B.homs(B.unit(), c.carrier), key=lambda f: f.comps["*"].table[1])
        c.__dict__["_points"] = memo
    return memo


def hom_monoid(c: CommMonoid) -> CommMonoid:
    """``C(1, c)`` with product ``μ∘(f⊗g)∘ξ``, unit ``ι`` and zero the constant map."""
    hit = c.__dict__.get("_hom_monoid")
    if hit is not None:
        return hit
    pts = points(c)
    B = c.base
    one = B.unit()
    xi = B.left_unitor(one).inverse()
    index = {f.comps["*"].table: k for k, f in enumerate(pts)}
    table = []
    for f in pts:
        row = []
        for g in pts:
            h = xi.then(B.tensor_maps(f, g)).then(c.mult_map())
            row.append(index[h.comps["*"].table])
        table.append(row)
    unit = index[c.unit_map().comps["*"].table]
    zero = index[(0, 0)]
    labels = [c.elements.labels[f.comps["*"].table[1]] for f in pts]
    out = cmon0(labels, table, unit, zero, name=f"C(1,{c.name})")
    c.__dict__["_hom_monoid"] = out
    return out


def hom_monoid_map(gamma: MonoidMorphism) -> MonoidMorphism:
    """``C(1, γ)``: post-composition."""
    src, tgt = hom_monoid(gamma.dom), hom_monoid(gamma.cod)
    index = {f.comps["*"].table: k for k, f in enumerate(points(gamma.cod))}
    t = tuple(index[f.then(gamma.map).comps["*"].table] for f in points(gamma.dom))
    return MonoidMorphism.from_table(src, tgt, t, name=f"C(1,{gamma.name})")


# the free construction C[M]


@dataclass(eq=False)
class FreeComm:
    """``C[M]`` with the wedge ``∐_M 1``, its inclusions and ``coker(i_0)``."""

    M: CommMonoid
    obj: CommMonoid
    wedge: object
    incl: list[PresheafMap]
    coker: PresheafMap


def _require_cmon0(M: CommMonoid) -> None:
    if M.base.pointed or len(M.base.index.objects) != 1 or M.zero is None:
        raise PreconditionError(f"{M.name} is not a finite monoid with an absorbing element")


def free_comm_data(M: CommMonoid) -> FreeComm:
    hit = M.__dict__.get("_free")
    if hit is not None:
        return hit
    _require_cmon0(M)
    B = pointed_sets()
    one = B.unit()
    n = M.size
    labels = M.elements.labels
    wedge = B.of_set(FinSet(n + 1, ("*",) + tuple(f"x[{l}]" for l in labels)))
    incl = [PresheafMap.unchecked(one, wedge, {"*": FinMap.unchecked(one.sets["*"], wedge.sets["*"], (0, 1 + m))})
            for m in range(n)]
    z = M.zero["*"]
    zero_map = PresheafMap.unchecked(one, wedge, {"*": FinMap.unchecked(one.sets["*"], wedge.sets["*"], (0, 0))})
    _, q = B.coequalizer(incl[z], zero_map)
    # renumber classes: basepoint first, then in wedge order
    qt = q.comps["*"].table
    order: list[int] = []
    for k in [0] + list(range(1, n + 1)):
        if qt[k] not in order:
            order.append(qt[k])
    pos = {c: k for k, c in enumerate(order)}
    first = {}
    for k in range(n + 1):
        first.setdefault(pos[qt[k]], k)
    cl = tuple((labels[z] if i == 0 else labels[first[i] - 1]) for i in range(len(order)))
    car = B.of_set(FinSet(len(order), cl))
    coker = PresheafMap.unchecked(wedge, car, {"*": FinMap.unchecked(wedge.sets["*"], car.sets["*"],
                                                                     tuple(pos[v] for v in qt))})
    # θ^M on the wedge: x_m ∧ x_k ↦ x_{mk}, then pushed through the cokernel
    ww = B.tensor(wedge, wedge)
    t = []
    for k in range(ww.sets["*"].size):
        i, j = B.unpair(n + 1, n + 1, k)
        t.append(0 if i == 0 or j == 0 else 1 + M.table[i - 1][j - 1])
    theta = PresheafMap.unchecked(ww, wedge, {"*": FinMap.unchecked(ww.sets["*"], wedge.sets["*"], tuple(t))})
    qq = B.tensor_maps(coker, coker, dom=ww, cod=B.tensor(car, car))
    mult = B.descend(qq, theta.then(coker), what="multiplication of C[M]")
    m = len(order)
    mt = mult.comps["*"].table
    table = [[mt[B.pair(m, m, i, j)] for j in range(m)] for i in range(m)]
    unit = incl[M.e].then(coker).comps["*"].table[1]
    obj = CommMonoid(B, car, {"*": tuple(tuple(r) for r in table)}, {"*": unit}, None, name=f"C[{M.name}]")
    out = FreeComm(M, obj, wedge, incl, coker)
    M.__dict__["_free"] = out
    return out


def free_comm(M: CommMonoid) -> CommMonoid:
    return free_comm_data(M).obj


def free_comm_map(phi: MonoidMorphism) -> MonoidMorphism:
    """``C[φ]``, the transpose of ``M -> N -> C(1, C[N])``."""
    return adjunction_tilde(phi.then(unit_of(phi.cod)), free_comm(phi.cod))


def unit_of(M: CommMonoid) -> MonoidMorphism:
    """``M -> C(1, C[M])``, the hat of the identity."""
    return adjunction_hat(M, MonoidMorphism.identity(free_comm(M)))


# the adjunction


def adjunction_hat(M: CommMonoid, alpha: MonoidMorphism) -> MonoidMorphism:
    """``α̂(m) = α∘coker(i_0)∘i_m``."""
    F = free_comm_data(M)
    if not alpha.dom.same_as(F.obj):
        raise ShapeError(f"{alpha.name} does not start at C[{M.name}]")
    a = alpha.cod
    H = hom_monoid(a)
    index = {f.comps["*"].table: k for k, f in enumerate(points(a))}
    t = tuple(index[i.then(F.coker).then(alpha.map).comps["*"].table] for i in F.incl)
    return MonoidMorphism.from_table(M, H, t, name=f"hat({alpha.name})")


def adjunction_tilde(beta: MonoidMorphism, a: CommMonoid) -> MonoidMorphism:
    """The unique ``β̃: C[M] -> a`` with ``∐β(m) = β̃∘coker(i_0)``."""
    M = beta.dom
    F = free_comm_data(M)
    H = hom_monoid(a)
    if not beta.cod.same_as(H):
        raise ShapeError(f"{beta.name} does not land in C(1, {a.name})")
    if beta.table[M.zero["*"]] != H.zero["*"]:
        raise PreconditionError(f"{beta.name} does not preserve the zero")
    if beta.table[M.e] != H.e:
        raise PreconditionError(f"{beta.name} does not preserve the unit")
    pts = points(a)
    t = (0,) + tuple(pts[beta.table[m]].comps["*"].table[1] for m in range(M.size))
    cop = PresheafMap.unchecked(F.wedge, a.carrier,
                                {"*": FinMap.unchecked(F.wedge.sets["*"], a.carrier.sets["*"], t)})
    h = a.base.descend(F.coker, cop, what="transpose")
    return MonoidMorphism(F.obj, a, h, name=f"tilde({beta.name})")


def adjunction_checks(M: CommMonoid, a: CommMonoid) -> CheckReport:
    """hat and tilde inverse to each other on every morphism, in both directions."""
    F = free_comm_data(M)
    H = hom_monoid(a)
    bad = []
    alphas = list(monoid_homs(F.obj, a))
    for al in alphas:
        h = adjunction_hat(M, al)
        if not h.check().ok:
            bad.append({"law": "hat is a morphism", "alpha": list(al.table)})
        elif not adjunction_tilde(h, a).same_as(al):
            bad.append({"law": "tilde after hat", "alpha": list(al.table)})
    betas = list(monoid_homs(M, H))
    for be in betas:
        t = adjunction_tilde(be, a)
        if not t.check().ok:
            bad.append({"law": "tilde is a morphism", "beta": list(be.table)})
        elif not adjunction_hat(M, t).same_as(be):
            bad.append({"law": "hat after tilde", "beta": list(be.table)})
    if len(alphas) != len(betas):
        bad.append({"law": "hom-set sizes differ", "sizes": [len(alphas), len(betas)]})
    return laws_report(f"hat_tilde:{M.name},{a.name}", bad, op="adjunction_hat",
                       details={"morphisms": len(alphas)})


def naturality_check(M: CommMonoid, gamma: MonoidMorphism) -> CheckReport:
    """``hat(γ∘α) = C(1,γ)∘hat(α)`` for every ``α: C[M] -> a``."""
    F = free_comm_data(M)
    post = hom_monoid_map(gamma)
    bad = []
    for al in monoid_homs(F.obj, gamma.dom):
        lhs = adjunction_hat(M, al.then(gamma))
        rhs = adjunction_hat(M, al).then(post)
        if lhs.table != rhs.table:
            bad.append({"alpha": list(al.table), "gamma": list(gamma.table)})
    return laws_report(f"hat_natural:{M.name},{gamma.name}", bad, op="adjunction_hat")


# field objects


def is_field_object(c: CommMonoid) -> bool:
    """Every nonzero element of ``C(1, c)`` is invertible."""
    H = hom_monoid(c)
    t, e, z = H.table, H.e, H.zero["*"]
    return all(any(t[x][y] == e for y in range(H.size)) for x in range(H.size) if x != z)


# finite categories built from monoid data


@dataclass(eq=False)
class Fragment:
    """A finite full subcategory: named objects, named arrows, and what they stand for."""

    cat: FinCategory
    objects: dict[str, object]
    arrows: dict[str, object]

    def find_object(self, x: object, key: Callable[[object], Hashable]) -> str:
        k = key(x)
        for name, y in self.objects.items():
            if key(y) == k:
                return name
        raise InputCompletenessError(f"object {x!r} is not in the fragment")


def _monoid_key(c: CommMonoid) -> tuple:
    return (c.base.pointed, c.table, c.e, None if c.zero is None else c.zero["*"])


def monoid_fragment(monoids: Sequence[CommMonoid], name: str = "Comm", keep_zero: bool = True) -> Fragment:
    """Full subcategory on ``monoids`` with every monoid morphism between them."""
    names = [m.name for m in monoids]
    if len(set(names)) != len(names):
        raise ShapeError("fragment objects need distinct names")
    objs = dict(zip(names, monoids))
    arrows: dict[str, tuple[str, str]] = {}
    data: dict[str, MonoidMorphism] = {}
    ids: dict[str, str] = {}
    lookup: dict[tuple, str] = {}
    for (x, a), (y, b) in iproduct(objs.items(), repeat=2):
        for k, h in enumerate(monoid_homs(a, b, keep_zero=keep_zero)):
            if x == y and h.table == tuple(range(a.size)):
                nm = f"id_{x}"
                ids[x] = nm
            else:
                nm = f"{x}>{y}#{k}"
            arrows[nm] = (x, y)
            data[nm] = h
            lookup[(x, y, h.table)] = nm
    comp = {}
    for g, f in iproduct(arrows, repeat=2):
        if arrows[f][1] == arrows[g][0]:
            t = tuple(data[g].table[v] for v in data[f].table)
            comp[(g, f)] = lookup[(arrows[f][0], arrows[g][1], t)]
    return Fragment(FinCategory(tuple(names), arrows, ids, comp, name=name), objs, data)


def fragment_functor(src: Fragment, tgt: Fragment, on_obj: Callable, on_mor: Callable,
                     name: str = "F") -> FinFunctor:
    """Read a functor off its action on monoids and morphisms, matching images by their tables."""
    omap = {x: tgt.find_object(on_obj(a), _monoid_key) for x, a in src.objects.items()}
    lookup = {(tgt.cat.arrows[n][0], tgt.cat.arrows[n][1], h.table): n for n, h in tgt.arrows.items()}
    amap = {}
    for n, h in src.arrows.items():
        d, c = src.cat.arrows[n]
        img = on_mor(h)
        key = (omap[d], omap[c], img.table)
        if key not in lookup:
            raise InputCompletenessError(f"image of {n} is not an arrow of {tgt.cat.name}")
        amap[n] = lookup[key]
    return FinFunctor(src.cat, tgt.cat, omap, amap, name=name)


# gluing


@dataclass(eq=False)
class GluedCategory:
    """``A ∪_{L,R} B``: seam arrows ``a -> b`` are arrows ``L a -> b`` of ``B``."""

    A_part: FinCategory
    B_part: FinCategory
    L: FinFunctor
    R: FinFunctor
    phi: dict[tuple[str, str], dict[str, str]]
    cat: FinCategory = field(init=False)
    seam: dict[str, tuple[str, str]] = field(init=False)  # seam arrow -> (a, arrow of B)

    def __post_init__(self):
        A, B, L = self.A_part, self.B_part, self.L
        self.seam = {}
        objects = tuple(self.a_obj(x) for x in A.objects) + tuple(self.b_obj(y) for y in B.objects)
        arrows, ids, comp = {}, {}, {}
        for n, (d, c) in A.arrows.items():
            arrows[self.a_arr(n)] = (self.a_obj(d), self.a_obj(c))
        for n, (d, c) in B.arrows.items():
            arrows[self.b_arr(n)] = (self.b_obj(d), self.b_obj(c))
        for a in A.objects:
            for b in B.objects:
                for k in B.hom(L.on_objects[a], b):
                    s = self.seam_arr(a, k)
                    arrows[s] = (self.a_obj(a), self.b_obj(b))
                    self.seam[s] = (a, k)
        for x in A.objects:
            ids[self.a_obj(x)] = self.a_arr(A.identities[x])
        for y in B.objects:
            ids[self.b_obj(y)] = self.b_arr(B.identities[y])
        for (g, f), h in A.compose.items():
            comp[(self.a_arr(g), self.a_arr(f))] = self.a_arr(h)
        for (g, f), h in B.compose.items():
            comp[(self.b_arr(g), self.b_arr(f))] = self.b_arr(h)
        for s, (a, k) in self.seam.items():
            for f in [f for f in A.arrows if A.arrows[f][1] == a]:
                a2 = A.arrows[f][0]
                comp[(s, self.a_arr(f))] = self.seam_arr(a2, B.comp(k, L.on_arrows[f]))
            b = B.arrows[k][1]
            for h in [h for h in B.arrows if B.arrows[h][0] == b]:
                comp[(self.b_arr(h), s)] = self.seam_arr(a, B.comp(h, k))
        self.cat = FinCategory(objects, arrows, ids, comp, name=f"{A.name}∪{B.name}")

    @staticmethod
    def a_obj(x: str) -> str:
        return f"A:{x}"

    @staticmethod
    def b_obj(y: str) -> str:
        return f"B:{y}"

    @staticmethod
    def a_arr(n: str) -> str:
        return f"A:{n}"

    @staticmethod
    def b_arr(n: str) -> str:
        return f"B:{n}"

    @staticmethod
    def seam_arr(a: str, k: str) -> str:
        return f"S:{a}|{k}"

    def check(self) -> CheckReport:
        """Associativity on every composable triple, and restriction to both parts."""
        C = self.cat
        into: dict[str, list[str]] = {}
        for n, (d, c) in C.arrows.items():
            into.setdefault(d, []).append(n)
        bad, triples = [], 0
        for f, (_, c1) in C.arrows.items():
            for g in into.get(c1, []):
                gf = C.comp(g, f)
                for h in into.get(C.arrows[g][1], []):
                    triples += 1
                    if C.comp(h, gf) != C.comp(C.comp(h, g), f):
                        bad.append({"law": "associativity", "arrows": [h, g, f]})
        for n, (d, c) in C.arrows.items():
            if C.comp(n, C.identities[d]) != n or C.comp(C.identities[c], n) != n:
                bad.append({"law": "unit", "arrow": n})
        for b in self.B_part.objects:
            for a in self.A_part.objects:
                if C.hom(self.b_obj(b), self.a_obj(a)):
                    bad.append({"law": "no arrows from B to A", "pair": [b, a]})
        for (g, f), h in self.A_part.compose.items():
            if C.comp(self.a_arr(g), self.a_arr(f)) != self.a_arr(h):
                bad.append({"law": "restricts to A", "pair": [g, f]})
        return laws_report(f"glued:{C.name}", bad, op="glue", details={"triples": triples})

    def delta(self, b: str) -> str:
        """``δ_b = Φ_{Rb,b}^{-1}(1_{Rb})`` as a seam arrow ``R b -> b``."""
        Rb = self.R.on_objects[b]
        table = self.phi[(Rb, b)]
        ident = self.A_part.identities[Rb]
        hits = [k for k, v in table.items() if v == ident]
        if len(hits) != 1:
            raise PreconditionError(f"no unique preimage of the identity of {Rb} under Φ")
        return self.seam_arr(Rb, hits[0])

    def delta_naturality(self) -> CheckReport:
        """``δ_{b'} ∘ j_A(R g) = g ∘ δ_b`` for every arrow ``g: b -> b'`` of ``B``."""
        C = self.cat
        bad = []
        for g, (b, b2) in self.B_part.arrows.items():
            lhs = C.comp(self.delta(b2), self.a_arr(self.R.on_arrows[g]))
            rhs = C.comp(self.b_arr(g), self.delta(b))
            if lhs != rhs:
                bad.append({"arrow": g, "lhs": lhs, "rhs": rhs})
        return laws_report("delta_natural", bad, op="delta")


def check_transposition(A: FinCategory, B: FinCategory, L: FinFunctor, R: FinFunctor,
                        phi: dict[tuple[str, str], dict[str, str]]) -> CheckReport:
    """Each ``Φ_{a,b}`` is a bijection ``B(La, b) -> A(a, Rb)``, natural in both slots."""
    bad = []
    for a, b in iproduct(A.objects, B.objects):
        t = phi.get((a, b))
        if t is None:
            raise InputCompletenessError(f"no transposition table for ({a}, {b})")
        src, tgt = B.hom(L.on_objects[a], b), A.hom(a, R.on_objects[b])
        if sorted(t) != sorted(src) or sorted(t.values()) != sorted(tgt):
            bad.append({"law": "bijection", "pair": [a, b]})
    if bad:
        return laws_report("transposition", bad, op="glue")
    for f, (a2, a) in A.arrows.items():
        for g, (b, b2) in B.arrows.items():
            for k in B.hom(L.on_objects[a], b):
                lhs = phi[(a2, b2)][B.comp(g, B.comp(k, L.on_arrows[f]))]
                rhs = A.comp(R.on_arrows[g], A.comp(phi[(a, b)][k], f))
                if lhs != rhs:
                    bad.append({"law": "naturality", "f": f, "g": g, "k": k})
                    break
    return laws_report("transposition", bad, op="glue")


def glue(A: FinCategory, B: FinCategory, L: FinFunctor, R: FinFunctor,
         phi: dict[tuple[str, str], dict[str, str]]) -> GluedCategory:
    rep = check_transposition(A, B, L, R, phi)
    if not rep.ok:
        raise PreconditionError(f"transposition tables fail: {rep.witness}")
    return GluedCategory(A, B, L, R, phi)


def identity_gluing(A: FinCategory) -> GluedCategory:
    I = FinFunctor(A, A, {x: x for x in A.objects}, {f: f for f in A.arrows}, name="id")
    phi = {(a, b): {k: k for k in A.hom(a, b)} for a, b in iproduct(A.objects, repeat=2)}
    return glue(A, A, I, I, phi)


@dataclass(eq=False)
class MonoidGluing:
    """The glued category of a CMon₀ fragment and a pointed Comm fragment."""

    glued: GluedCategory
    cmon0: Fragment
    comm: Fragment


def free_hom_gluing(comm_objects: Sequence[CommMonoid]) -> MonoidGluing:
    """Glue along ``C[-] ⊣ C(1, -)``; the CMon₀ side is the hom-monoids of ``comm_objects``.

    Objects must be closed under ``C[C(1, -)]``, which holds on the nose for
    pointed monoids listed basepoint first.
    """
    comm = monoid_fragment(comm_objects, name="Comm")
    homs = [hom_monoid(c) for c in comm_objects]
    cm = monoid_fragment(homs, name="CMon0")
    for H in homs:
        comm.find_object(free_comm(H), _monoid_key)
    L = fragment_functor(cm, comm, free_comm, free_comm_map, name="C[-]")
    R = fragment_functor(comm, cm, hom_monoid, hom_monoid_map, name="C(1,-)")
    lookup = {(cm.cat.arrows[n][0], cm.cat.arrows[n][1], h.table): n for n, h in cm.arrows.items()}
    phi = {}
    for a, M in cm.objects.items():
        for b, c in comm.objects.items():
            t = {}
            for k in comm.cat.hom(L.on_objects[a], b):
                h = adjunction_hat(M, comm.arrows[k])
                t[k] = lookup[(a, R.on_objects[b], h.table)]
            phi[(a, b)] = t
    return MonoidGluing(glue(cm.cat, comm.cat, L, R, phi), cm, comm)


# the checkable scheme condition on a functor out of the glued category


@dataclass
class GluedFunctorData:
    """A covariant functor to finite sets, given by sizes and arrow tables."""

    sizes: dict[str, int]
    tables: dict[str, Sequence[int]]


def check_scheme_condition3(G: MonoidGluing, F: GluedFunctorData) -> CheckReport:
    """``F(δ_c)`` bijective for every field object ``c``; other objects are listed as skipped.

    Only this condition is checked; the two restriction conditions are outside
    what can be decided on finite data and the report says so.
    """
    g = G.glued
    bad, checked, skipped = [], [], []
    for b, c in G.comm.objects.items():
        if not is_field_object(c):
            skipped.append(b)
            continue
        d = g.delta(b)
        src, tgt = g.a_obj(g.R.on_objects[b]), g.b_obj(b)
        for k in (src, tgt):
            if k not in F.sizes:
                raise InputCompletenessError(f"functor data has no value at {k}")
        if d not in F.tables:
            raise InputCompletenessError(f"functor data has no value on {d}")
        t = tuple(F.tables[d])
        if len(t) != F.sizes[src] or any(not 0 <= v < F.sizes[tgt] for v in t):
            raise ShapeError(f"table for {d} has the wrong shape")
        checked.append(b)
        if F.sizes[src] != F.sizes[tgt] or len(set(t)) != len(t):
            bad.append({"object": b, "delta": d, "table": list(t), "sizes": [F.sizes[src], F.sizes[tgt]]})
    details = {"checked": checked, "skipped_non_field": skipped,
               "not_checked": ["restriction to Comm is a scheme", "restriction to CMon0 is a scheme"]}
    return laws_report("scheme_condition3", bad, op="check_scheme_condition3", details=details)


def representable_data(G: MonoidGluing, x: str) -> GluedFunctorData:
    """``Hom(x, -)`` on the glued category, with arrows acting by post-composition."""
    C = G.glued.cat
    sizes = {y: len(C.hom(x, y)) for y in C.objects}
    tables = {}
    for n, (d, c) in C.arrows.items():
        src, tgt = C.hom(x, d), C.hom(x, c)
        pos = {k: i for i, k in enumerate(tgt)}
        tables[n] = tuple(pos[C.comp(n, k)] for k in src)
    return GluedFunctorData(sizes, tables)
