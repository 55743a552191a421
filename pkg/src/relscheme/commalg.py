"""Commutative monoid objects in a presheaf base, their morphisms and pushouts."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product as iproduct
from typing import Iterator, Sequence

from .errors import PreconditionError, ShapeError
from .fincore.categories import FinCategory
from .fincore.presheaf import FinPresheaf, PresheafCat, PresheafMap
from .fincore.sets import FinMap, FinSet, UnionFind, pair_label
from .report import CheckReport, Status, Tag, laws_report

Table = tuple[tuple[int, ...], ...]

_BASES: dict[str, PresheafCat] = {}


def cartesian_sets() -> PresheafCat:
    if "set" not in _BASES:
        _BASES["set"] = PresheafCat(FinCategory.terminal(), False, name="FinSet")
    return _BASES["set"]


def pointed_sets() -> PresheafCat:
    if "pointed" not in _BASES:
        _BASES["pointed"] = PresheafCat(FinCategory.terminal(), True, name="FinSet*")
    return _BASES["pointed"]


def presheaf_topos(index: FinCategory) -> PresheafCat:
    return PresheafCat(index, False)


@dataclass(eq=False)
class CommMonoid:
    """A commutative monoid object; ``mult[x]`` and ``unit[x]`` are given per index object.

    Over a pointed base the basepoint (index 0) is the zero.  Over a plain
    base ``zero`` is optional and records an absorbing element.
    """

    base: PresheafCat
    carrier: FinPresheaf
    mult: dict[str, Table]
    unit: dict[str, int]
    zero: dict[str, int] | None = None
    name: str = "a"
    _mult_map: PresheafMap | None = field(default=None, repr=False)
    _unit_map: PresheafMap | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.base.pointed:
            if self.zero is None:
                self.zero = {x: 0 for x in self.base.index.objects}
            if any(z != 0 for z in self.zero.values()):
                raise ShapeError("over pointed sets the zero is the basepoint")
        for x in self.base.index.objects:
            n = self.carrier.sets[x].size
            t = self.mult[x]
            if len(t) != n or any(len(r) != n for r in t):
                raise ShapeError(f"multiplication table at {x!r} is not {n}x{n}")
            if any(not 0 <= v < n for r in t for v in r):
                raise ShapeError(f"multiplication table at {x!r} leaves the carrier")
            if not 0 <= self.unit[x] < n:
                raise ShapeError("unit outside the carrier")

    @classmethod
    def from_table(
        cls,
        elements: Sequence[str],
        table: Sequence[Sequence[int]],
        unit: int,
        zero: int | None = None,
        pointed: bool = False,
        name: str = "a",
    ) -> "CommMonoid":
        """A monoid over finite sets (or pointed sets, basepoint first)."""
        base = pointed_sets() if pointed else cartesian_sets()
        s = FinSet.of(elements)
        t = tuple(tuple(r) for r in table)
        if pointed and zero not in (None, 0):
            raise ShapeError("over pointed sets the zero must be listed first")
        z = None if zero is None and not pointed else {"*": 0 if zero is None else zero}
        return cls(base, base.of_set(s), {"*": t}, {"*": unit}, z, name=name)

    # single-object conveniences

    @property
    def size(self) -> int:
        return self.carrier.size()

    @property
    def elements(self) -> FinSet:
        return self.carrier.sets[self.base.index.objects[0]]

    @property
    def table(self) -> Table:
        return self.mult[self.base.index.objects[0]]

    @property
    def e(self) -> int:
        return self.unit[self.base.index.objects[0]]

    def mul(self, i: int, j: int, x: str | None = None) -> int:
        return self.mult[x or self.base.index.objects[0]][i][j]

    def mult_map(self) -> PresheafMap:
        """``μ: a⊗a -> a`` read off the tables through the base pairing."""
        if self._mult_map is None:
            B = self.base
            sq = B.tensor(self.carrier, self.carrier)
            comps = {}
            for x in B.index.objects:
                n = self.carrier.sets[x].size
                t = self.mult[x]
                comps[x] = FinMap.unchecked(
                    sq.sets[x],
                    self.carrier.sets[x],
                    tuple(t[i][j] for i, j in (B.unpair(n, n, k) for k in range(sq.sets[x].size))),
                )
            self._mult_map = PresheafMap.unchecked(sq, self.carrier, comps)
        return self._mult_map

    def unit_map(self) -> PresheafMap:
        if self._unit_map is None:
            B = self.base
            one = B.unit()
            comps = {}
            for x in B.index.objects:
                t = (0, self.unit[x]) if B.pointed else (self.unit[x],)
                comps[x] = FinMap.unchecked(one.sets[x], self.carrier.sets[x], t)
            self._unit_map = PresheafMap.unchecked(one, self.carrier, comps)
        return self._unit_map

    def same_as(self, other: "CommMonoid") -> bool:
        return self is other or (
            self.base is other.base
            and self.carrier.same_as(other.carrier)
            and self.mult == other.mult
            and self.unit == other.unit
            and self.zero == other.zero
        )

    def to_doc(self) -> dict:
        if len(self.base.index.objects) != 1:
            raise ShapeError("only single-object carriers serialize to monoid documents")
        d = {
            "elements": list(self.elements.labels),
            "unit": self.elements.labels[self.e],
            "table": [list(r) for r in self.table],
        }
        if self.zero is not None:
            d["zero"] = self.elements.labels[self.zero["*"]]
        if self.base.pointed:
            d["pointed"] = True
        return d

    def __repr__(self) -> str:
        return f"CommMonoid({self.name}, size={self.size})"


def check_comm_monoid(c: CommMonoid) -> CheckReport:
    """Associativity, commutativity, unit, absorption and naturality of the tables."""
    bad: list[dict] = []
    B = c.base
    for x in B.index.objects:
        t = c.mult[x]
        lab = c.carrier.sets[x].labels
        n = len(t)
        e = c.unit[x]
        for i in range(n):
            if t[e][i] != i or t[i][e] != i:
                bad.append({"law": "unit", "object": x, "element": lab[i]})
        for i in range(n):
            for j in range(i + 1, n):
                if t[i][j] != t[j][i]:
                    bad.append({"law": "commutativity", "object": x, "pair": [lab[i], lab[j]]})
        for i, j, k in iproduct(range(n), repeat=3):
            if t[t[i][j]][k] != t[i][t[j][k]]:
                bad.append({"law": "associativity", "object": x, "triple": [lab[i], lab[j], lab[k]]})
                break
        if c.zero is not None:
            z = c.zero[x]
            for i in range(n):
                if t[z][i] != z:
                    bad.append({"law": "absorbing", "object": x, "element": lab[i]})
    for a, (d, cd) in B.index.arrows.items():
        fm = c.carrier.maps[a].table
        td, tc = c.mult[d], c.mult[cd]
        if fm[c.unit[cd]] != c.unit[d]:
            bad.append({"law": "unit naturality", "arrow": a})
        for i, j in iproduct(range(len(tc)), repeat=2):
            if fm[tc[i][j]] != td[fm[i]][fm[j]]:
                bad.append({"law": "multiplication naturality", "arrow": a, "pair": [i, j]})
                break
    return laws_report(f"comm_monoid:{c.name}", bad, op="check_comm_monoid")


@dataclass(eq=False)
class MonoidMorphism:
    dom: CommMonoid
    cod: CommMonoid
    map: PresheafMap
    name: str = "alpha"

    @classmethod
    def from_table(cls, dom: CommMonoid, cod: CommMonoid, table: Sequence[int], name: str = "alpha"):
        x = dom.base.index.objects[0]
        fm = FinMap(dom.carrier.sets[x], cod.carrier.sets[x], tuple(table))
        return cls(dom, cod, PresheafMap(dom.carrier, cod.carrier, {x: fm}), name)

    @classmethod
    def identity(cls, a: CommMonoid) -> "MonoidMorphism":
        return cls(a, a, PresheafMap.identity(a.carrier), name=f"id_{a.name}")

    @property
    def table(self) -> tuple[int, ...]:
        return self.map.comps[self.dom.base.index.objects[0]].table

    def then(self, other: "MonoidMorphism") -> "MonoidMorphism":
        if not other.dom.same_as(self.cod):
            raise ShapeError("morphisms are not composable")
        return MonoidMorphism(self.dom, other.cod, self.map.then(other.map), f"{other.name}∘{self.name}")

    def same_as(self, other: "MonoidMorphism") -> bool:
        return self.map.same_as(other.map)

    def is_iso(self) -> bool:
        return self.map.is_iso()

    def is_surjective(self) -> bool:
        return self.map.is_epi()

    def check(self) -> CheckReport:
        a, b = self.dom, self.cod
        bad: list[dict] = []
        if a.base is not b.base:
            bad.append({"law": "base", "detail": "different bases"})
            return laws_report(f"monoid_morphism:{self.name}", bad, op="check_comm_monoid")
        nat = a.base.check_map(self.map)
        if not nat.ok:
            bad.append({"law": "naturality", **nat.witness})
        for x in a.base.index.objects:
            f = self.map.comps[x].table
            ta, tb = a.mult[x], b.mult[x]
            if f[a.unit[x]] != b.unit[x]:
                bad.append({"law": "unit", "object": x})
            for i, j in iproduct(range(len(ta)), repeat=2):
                if f[ta[i][j]] != tb[f[i]][f[j]]:
                    bad.append({"law": "multiplication", "object": x, "pair": [i, j]})
                    break
            if a.zero is not None and b.zero is not None and f[a.zero[x]] != b.zero[x]:
                bad.append({"law": "zero", "object": x})
        return laws_report(f"monoid_morphism:{self.name}", bad, op="check_comm_monoid")

    def to_doc(self) -> dict:
        la, lb = self.dom.elements.labels, self.cod.elements.labels
        return {la[i]: lb[v] for i, v in enumerate(self.table)}

    def __repr__(self) -> str:
        return f"MonoidMorphism({self.name}: {self.dom.name} -> {self.cod.name})"


def _congruence_closure(n: int, mult: Table, pairs: list[tuple[int, int]]) -> UnionFind:
    uf = UnionFind(n)
    for p, q in pairs:
        uf.union(p, q)
    changed = True
    while changed:
        changed = False
        for p in range(n):
            rp = uf.find(p)
            if rp == p:
                continue
            for r in range(n):
                if uf.union(mult[p][r], mult[rp][r]):
                    changed = True
    return uf


@dataclass(eq=False)
class Pushout:
    obj: CommMonoid
    inl: MonoidMorphism
    inr: MonoidMorphism

    def __iter__(self):
        return iter((self.obj, self.inl, self.inr))


def pushout(alpha: MonoidMorphism, beta: MonoidMorphism, name: str | None = None) -> Pushout:
    """``b ⊗_a a'`` as the product monoid ``b × a'`` modulo the generated congruence."""
    if not alpha.dom.same_as(beta.dom):
        raise ShapeError("pushout needs a span with a common domain")
    a, b, c = alpha.dom, alpha.cod, beta.cod
    B = a.base
    if b.base is not B or c.base is not B:
        raise ShapeError("span lives over different bases")
    ufs, prod_sets, prod_tables = {}, {}, {}
    for x in B.index.objects:
        nb, nc = b.carrier.sets[x].size, c.carrier.sets[x].size
        tb, tc = b.mult[x], c.mult[x]
        n = nb * nc
        prod = tuple(
            tuple(tb[p // nc][q // nc] * nc + tc[p % nc][q % nc] for q in range(n)) for p in range(n)
        )
        fa, fc = alpha.map.comps[x].table, beta.map.comps[x].table
        gens = []
        for s in range(a.carrier.sets[x].size):
            for u in range(nb):
                for v in range(nc):
                    gens.append((tb[fa[s]][u] * nc + v, u * nc + tc[fc[s]][v]))
        ufs[x] = _congruence_closure(n, prod, gens)
        prod_sets[x] = FinSet(
            n,
            tuple(pair_label(p, q) for p in b.carrier.sets[x].labels for q in c.carrier.sets[x].labels),
        )
        prod_tables[x] = prod
    # transitions of the product carrier
    maps = {}
    for arr, (d, cd) in B.index.arrows.items():
        fb, fcm = b.carrier.maps[arr].table, c.carrier.maps[arr].table
        ncd, ncc = c.carrier.sets[d].size, c.carrier.sets[cd].size
        maps[arr] = FinMap.unchecked(
            prod_sets[cd], prod_sets[d],
            tuple(fb[k // ncc] * ncd + fcm[k % ncc] for k in range(prod_sets[cd].size)),
        )
    prod_carrier = FinPresheaf.unchecked(B.index, prod_sets, maps)
    # the quotient in the base: pointed quotients keep the zero class at index 0
    qcar, proj = B.quotient_by(prod_carrier, ufs)
    mult, unit, zero = {}, {}, ({} if b.zero is not None and c.zero is not None else None)
    for x in B.index.objects:
        pt = proj.comps[x].table
        n = qcar.sets[x].size
        rep = [0] * n
        seen = [False] * n
        for k, cls in enumerate(pt):
            if not seen[cls]:
                seen[cls], rep[cls] = True, k
        pr = prod_tables[x]
        mult[x] = tuple(tuple(pt[pr[rep[i]][rep[j]]] for j in range(n)) for i in range(n))
        nc = c.carrier.sets[x].size
        unit[x] = pt[b.unit[x] * nc + c.unit[x]]
        if zero is not None:
            zero[x] = pt[b.zero[x] * nc + c.zero[x]]
    obj = CommMonoid(B, qcar, mult, unit, zero, name=name or f"{b.name}⊗{c.name}")
    inl, inr = {}, {}
    for x in B.index.objects:
        pt = proj.comps[x].table
        nc = c.carrier.sets[x].size
        inl[x] = FinMap.unchecked(b.carrier.sets[x], qcar.sets[x], tuple(pt[u * nc + c.unit[x]] for u in range(b.carrier.sets[x].size)))
        inr[x] = FinMap.unchecked(c.carrier.sets[x], qcar.sets[x], tuple(pt[b.unit[x] * nc + v] for v in range(nc)))
    return Pushout(
        obj,
        MonoidMorphism(b, obj, PresheafMap.unchecked(b.carrier, qcar, inl), "iota1"),
        MonoidMorphism(c, obj, PresheafMap.unchecked(c.carrier, qcar, inr), "iota2"),
    )


def is_epi(alpha: MonoidMorphism) -> tuple[bool, dict | None]:
    """Epi iff both coprojections of ``b ⊗_a b`` agree; otherwise name where they differ."""
    po = pushout(alpha, alpha)
    for x in alpha.dom.base.index.objects:
        t1, t2 = po.inl.map.comps[x].table, po.inr.map.comps[x].table
        for u, (p, q) in enumerate(zip(t1, t2)):
            if p != q:
                return False, {
                    "object": x,
                    "element": alpha.cod.carrier.sets[x].labels[u],
                    "iota1": po.obj.carrier.sets[x].labels[p],
                    "iota2": po.obj.carrier.sets[x].labels[q],
                }
    return True, None


def is_finite_type(alpha: MonoidMorphism) -> CheckReport:
    """Declared true for every finite-carrier morphism; tagged as a policy, not a fact."""
    return CheckReport(
        f"finite_type:{alpha.name}",
        Status.PASS,
        tags=(Tag.POLICY,),
        details={"reason": "finite carriers are presented by their full tables"},
        op="is_finite_type",
    )


# enumeration over finite sets


def monoid_homs(a: CommMonoid, b: CommMonoid, keep_zero: bool = True) -> Iterator[MonoidMorphism]:
    """All unit- and multiplication-preserving maps between single-object carriers."""
    na, nb = a.size, b.size
    ta, tb = a.table, b.table
    ea, eb = a.e, b.e
    f = [-1] * na
    f[ea] = eb
    if keep_zero and a.zero is not None and b.zero is not None:
        za, zb = a.zero["*"], b.zero["*"]
        if za == ea and zb != eb:
            return
        f[za] = zb
    free = [i for i in range(na) if f[i] < 0]

    def consistent() -> bool:
        for i in range(na):
            if f[i] < 0:
                continue
            for j in range(na):
                if f[j] < 0:
                    continue
                k = ta[i][j]
                if f[k] >= 0 and f[k] != tb[f[i]][f[j]]:
                    return False
        return True

    def rec(pos: int):
        if pos == len(free):
            yield MonoidMorphism.from_table(a, b, tuple(f), name="h")
            return
        i = free[pos]
        for v in range(nb):
            f[i] = v
            if consistent():
                yield from rec(pos + 1)
        f[i] = -1

    if consistent():
        yield from rec(0)


def _canonical(table: Table, unit: int, zero: int | None) -> tuple:
    n = len(table)
    others = [i for i in range(n) if i != unit]
    best = None
    for perm in permutations(others):
        order = [unit, *perm]
        pos = {v: k for k, v in enumerate(order)}
        key = (
            None if zero is None else pos[zero],
            tuple(tuple(pos[table[order[i]][order[j]]] for j in range(n)) for i in range(n)),
        )
        if best is None or key < best:
            best = key
    return best


def enumerate_comm_monoids(n: int) -> list[CommMonoid]:
    """Commutative monoids on ``n`` elements up to isomorphism, unit first."""
    if n < 1:
        return []
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    seen: set = set()
    out: list[CommMonoid] = []
    for vals in iproduct(range(n), repeat=len(cells)):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            t[0][i] = t[i][0] = i
        for (i, j), v in zip(cells, vals):
            t[i][j] = t[j][i] = v
        if any(t[t[i][j]][k] != t[i][t[j][k]] for i in range(n) for j in range(n) for k in range(n)):
            continue
        tt = tuple(tuple(r) for r in t)
        key = _canonical(tt, 0, None)
        if key in seen:
            continue
        seen.add(key)
        labels = ["e"] + [f"x{i}" for i in range(1, n)]
        out.append(CommMonoid.from_table(labels, key[1], 0, name=f"M{n}_{len(out)}"))
    return out


def isomorphic_monoids(a: CommMonoid, b: CommMonoid) -> bool:
    if a.size != b.size:
        return False
    return any(h.is_iso() for h in monoid_homs(a, b, keep_zero=True))


# named small monoids used throughout


def trivial_monoid(pointed: bool = False) -> CommMonoid:
    return CommMonoid.from_table(["e"], [[0]], 0, pointed=pointed, name="1")


def cyclic_group(n: int) -> CommMonoid:
    labels = ["e"] + [f"g{k}" for k in range(1, n)]
    return CommMonoid.from_table(labels, [[(i + j) % n for j in range(n)] for i in range(n)], 0, name=f"Z{n}")


def boolean_monoid(pointed: bool = False) -> CommMonoid:
    """``{0, 1}`` under multiplication, zero 0."""
    return CommMonoid.from_table(["0", "1"], [[0, 0], [0, 1]], 1, zero=0, pointed=pointed, name="B2")


def with_zero(g: CommMonoid, pointed: bool = True) -> CommMonoid:
    """Adjoin an absorbing element, listed first."""
    n = g.size
    labels = ["0"] + list(g.elements.labels)
    t = [[0] * (n + 1)] + [[0] + [g.table[i][j] + 1 for j in range(n)] for i in range(n)]
    return CommMonoid.from_table(labels, t, g.e + 1, zero=0, pointed=pointed, name=f"{g.name}+0")


def unit_morphism(b: CommMonoid, a: CommMonoid | None = None) -> MonoidMorphism:
    """The unique morphism from the trivial monoid."""
    a = a or trivial_monoid(b.base.pointed)
    return MonoidMorphism.from_table(a, b, (b.e,), name=f"unit_{b.name}")


def to_trivial(a: CommMonoid, t: CommMonoid | None = None) -> MonoidMorphism:
    t = t or trivial_monoid(a.base.pointed)
    return MonoidMorphism.from_table(a, t, (0,) * a.size, name=f"collapse_{a.name}")


def require_morphism(alpha: MonoidMorphism) -> None:
    rep = alpha.check()
    if not rep.ok:
        raise PreconditionError(f"{alpha.name} is not a monoid morphism: {rep.witness}")
