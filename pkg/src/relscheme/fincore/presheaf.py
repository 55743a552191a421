"""Set-valued presheaves on finite categories, optionally pointed.

Sets, pointed sets and directed graphs are all presheaf categories here: the
first two over the terminal category.  ``PresheafCat`` bundles the monoidal
structure (pointwise product, or smash in the pointed case) with the finite
limits and colimits the rest of the library consumes.

Pointed convention: the basepoint of every pointed set is index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ..errors import InvariantViolation, ShapeError, UnsupportedShapeError
from ..report import CheckReport, laws_report
from .categories import FinCategory
from .search import solve_unary
from .sets import FinMap, FinSet, UnionFind, pair_label, quotient


def _finset(labels: Sequence[str]) -> FinSet:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        return FinSet(len(labels))
    return FinSet(len(labels), labels)


@dataclass(eq=False)
class FinPresheaf:
    """``sets[x]`` for each object; ``maps[f]: sets[cod f] -> sets[dom f]``."""

    base: FinCategory
    sets: dict[str, FinSet]
    maps: dict[str, FinMap]

    def __post_init__(self):
        if set(self.sets) != set(self.base.objects):
            raise ShapeError("presheaf is not defined on every object")
        if set(self.maps) != set(self.base.arrows):
            raise ShapeError("presheaf is not defined on every arrow")
        for a, (d, c) in self.base.arrows.items():
            m = self.maps[a]
            if m.dom.size != self.sets[c].size or m.cod.size != self.sets[d].size:
                raise ShapeError(f"component at arrow {a!r} has the wrong shape")

    @classmethod
    def unchecked(cls, base, sets, maps) -> "FinPresheaf":
        p = object.__new__(cls)
        p.base, p.sets, p.maps = base, sets, maps
        return p

    @classmethod
    def constant(cls, base: FinCategory, s: FinSet) -> "FinPresheaf":
        ident = FinMap.identity(s)
        return cls(base, {x: s for x in base.objects}, {a: ident for a in base.arrows})

    @classmethod
    def of_set(cls, s: FinSet) -> "FinPresheaf":
        return cls.constant(FinCategory.terminal(), s)

    def at(self, x: str) -> FinSet:
        return self.sets[x]

    def size(self) -> int:
        return sum(s.size for s in self.sets.values())

    def shape(self) -> dict[str, int]:
        return {x: self.sets[x].size for x in self.base.objects}

    def same_as(self, other: "FinPresheaf") -> bool:
        return (
            self.base is other.base or self.base.objects == other.base.objects
        ) and all(
            self.sets[x].size == other.sets[x].size for x in self.base.objects
        ) and all(self.maps[a].table == other.maps[a].table for a in self.base.arrows)

    def check_laws(self) -> CheckReport:
        C = self.base
        bad = []
        for x in C.objects:
            if self.maps[C.identities[x]].table != tuple(range(self.sets[x].size)):
                bad.append({"law": "identity", "object": x})
        for (g, f), h in C.compose.items():
            # F(g∘f) = F(f)∘F(g)
            if self.maps[h].table != self.maps[g].then(self.maps[f]).table:
                bad.append({"law": "composition", "pair": [g, f]})
        return laws_report("presheaf_laws", bad, op="check_functor_laws")

    def __repr__(self) -> str:
        return "FinPresheaf(" + ", ".join(f"{x}:{self.sets[x]!r}" for x in self.base.objects) + ")"


@dataclass(eq=False)
class PresheafMap:
    dom: FinPresheaf
    cod: FinPresheaf
    comps: dict[str, FinMap]

    def __post_init__(self):
        for x in self.dom.base.objects:
            c = self.comps.get(x)
            if c is None:
                raise ShapeError(f"missing component at {x!r}")
            if c.dom.size != self.dom.sets[x].size or c.cod.size != self.cod.sets[x].size:
                raise ShapeError(f"component at {x!r} has the wrong shape")

    @classmethod
    def unchecked(cls, dom, cod, comps) -> "PresheafMap":
        m = object.__new__(cls)
        m.dom, m.cod, m.comps = dom, cod, comps
        return m

    @classmethod
    def identity(cls, f: FinPresheaf) -> "PresheafMap":
        i = f.__dict__.get("_identity")
        if i is None:
            i = cls.unchecked(f, f, {x: FinMap.identity(s) for x, s in f.sets.items()})
            f.__dict__["_identity"] = i
        return i

    @classmethod
    def of_map(cls, m: FinMap) -> "PresheafMap":
        return cls(FinPresheaf.of_set(m.dom), FinPresheaf.of_set(m.cod), {"*": m})

    def __getitem__(self, x: str) -> FinMap:
        return self.comps[x]

    def then(self, other: "PresheafMap") -> "PresheafMap":
        return PresheafMap.unchecked(
            self.dom, other.cod, {x: c.then(other.comps[x]) for x, c in self.comps.items()}
        )

    def __matmul__(self, other: "PresheafMap") -> "PresheafMap":
        return other.then(self)

    def is_iso(self) -> bool:
        return all(c.is_bijective() for c in self.comps.values())

    def is_epi(self) -> bool:
        return all(c.is_surjective() for c in self.comps.values())

    def inverse(self) -> "PresheafMap":
        return PresheafMap.unchecked(
            self.cod, self.dom, {x: c.inverse() for x, c in self.comps.items()}
        )

    def same_as(self, other: "PresheafMap") -> bool:
        return all(c.table == other.comps[x].table for x, c in self.comps.items())

    def key(self) -> tuple:
        return tuple(self.comps[x].table for x in self.dom.base.objects)

    def check_naturality(self) -> CheckReport:
        bad = []
        for a, (d, c) in self.dom.base.arrows.items():
            lhs = self.dom.maps[a].then(self.comps[d])
            rhs = self.comps[c].then(self.cod.maps[a])
            if lhs.table != rhs.table:
                i = next(k for k in range(lhs.dom.size) if lhs.table[k] != rhs.table[k])
                bad.append({"arrow": a, "element": self.dom.sets[c].labels[i]})
        return laws_report("naturality", bad, op="check_functor_laws")


@dataclass(frozen=True)
class PCone:
    apex: FinPresheaf
    legs: tuple[PresheafMap, ...]


class PresheafCat:
    """Presheaves on ``index`` with pointwise product (or smash when ``pointed``)."""

    def __init__(self, index: FinCategory, pointed: bool = False, name: str | None = None):
        self.index = index
        self.pointed = pointed
        self.name = name or (("pointed:" if pointed else "") + f"Psh({index.name})")
        self._unit = None
        self._table_memo: dict = {}
        self._tensor_memo: dict = {}

    def __repr__(self) -> str:
        return f"PresheafCat({self.name})"

    # objects

    def presheaf(self, sets, maps) -> FinPresheaf:
        p = FinPresheaf(self.index, dict(sets), dict(maps))
        self.check_object(p)
        return p

    def check_object(self, p: FinPresheaf) -> None:
        if p.base.objects != self.index.objects:
            raise ShapeError("presheaf lives over a different index category")
        rep = p.check_laws()
        if not rep.ok:
            raise ShapeError(f"not a presheaf: {rep.witness}")
        if self.pointed:
            for x, s in p.sets.items():
                if s.size == 0:
                    raise ShapeError(f"pointed presheaf is empty at {x!r}")
            for a, m in p.maps.items():
                if m.table[0] != 0:
                    raise ShapeError(f"transition map at {a!r} moves the basepoint")

    def of_set(self, s: FinSet) -> FinPresheaf:
        return FinPresheaf.constant(self.index, s)

    def check_map(self, f: PresheafMap) -> CheckReport:
        rep = f.check_naturality()
        if rep.ok and self.pointed:
            for x, c in f.comps.items():
                if c.table and c.table[0] != 0:
                    return laws_report("pointed_map", [{"object": x}], op="check_functor_laws")
        return rep

    def identity(self, f: FinPresheaf) -> PresheafMap:
        return PresheafMap.identity(f)

    # monoidal structure

    def unit(self) -> FinPresheaf:
        if self._unit is None:
            s = FinSet(2, ("*", "1")) if self.pointed else FinSet(1, ("1",))
            self._unit = FinPresheaf.constant(self.index, s)
        return self._unit

    def pair(self, nf: int, ng: int, i: int, j: int) -> int:
        if self.pointed:
            if i == 0 or j == 0:
                return 0
            return 1 + (i - 1) * (ng - 1) + (j - 1)
        return i * ng + j

    def unpair(self, nf: int, ng: int, k: int) -> tuple[int, int]:
        if self.pointed:
            if k == 0:
                return 0, 0
            q, r = divmod(k - 1, ng - 1)
            return q + 1, r + 1
        return divmod(k, ng)

    def tensor_size(self, nf: int, ng: int) -> int:
        if self.pointed:
            return 1 + (nf - 1) * (ng - 1)
        return nf * ng

    def _tensor_set(self, a: FinSet, b: FinSet) -> FinSet:
        if self.pointed:
            return FinSet.lazy(
                self.tensor_size(a.size, b.size),
                lambda: ["*"] + [
                    pair_label(a.labels[i], b.labels[j])
                    for i in range(1, a.size)
                    for j in range(1, b.size)
                ],
            )
        return FinSet.lazy(
            a.size * b.size, lambda: [pair_label(x, y) for x in a.labels for y in b.labels]
        )

    def _tensor_table(self, nf: int, ng: int, mf: int, mg: int, ft: tuple, gt: tuple) -> tuple:
        key = (nf, ng, mf, mg, ft, gt)
        t = self._table_memo.get(key)
        if t is None:
            if self.pointed:
                out = [0] * (1 + (nf - 1) * (ng - 1)) if nf and ng else [0]
                for i in range(1, nf):
                    for j in range(1, ng):
                        out[1 + (i - 1) * (ng - 1) + (j - 1)] = self.pair(mf, mg, ft[i], gt[j])
                t = tuple(out)
            else:
                t = tuple(fi * mg + gj for fi in ft for gj in gt)
            if len(self._table_memo) > 200_000:
                self._table_memo = {k: v for k, v in self._table_memo.items() if isinstance(k[0], str)}
            self._table_memo[key] = t
        return t

    def _tensor_fmap(self, f: FinMap, g: FinMap, dom: FinSet, cod: FinSet) -> FinMap:
        return FinMap.unchecked(
            dom, cod, self._tensor_table(f.dom.size, g.dom.size, f.cod.size, g.cod.size, f.table, g.table)
        )

    def tensor(self, f: FinPresheaf, g: FinPresheaf) -> FinPresheaf:
        key = (id(f), id(g))
        hit = self._tensor_memo.get(key)
        if hit is not None:
            return hit[2]
        p = self._tensor(f, g)
        if len(self._tensor_memo) > 4096:
            self._tensor_memo.clear()
        # the entry keeps f and g alive so their ids cannot be reused
        self._tensor_memo[key] = (f, g, p)
        return p

    def _tensor(self, f: FinPresheaf, g: FinPresheaf) -> FinPresheaf:
        sets = {x: self._tensor_set(f.sets[x], g.sets[x]) for x in self.index.objects}
        maps = {}
        for a, (d, c) in self.index.arrows.items():
            maps[a] = self._tensor_fmap(f.maps[a], g.maps[a], sets[c], sets[d])
        return FinPresheaf.unchecked(self.index, sets, maps)

    def tensor_maps(
        self, f: PresheafMap, g: PresheafMap, dom: FinPresheaf | None = None,
        cod: FinPresheaf | None = None,
    ) -> PresheafMap:
        dom = dom or self.tensor(f.dom, g.dom)
        cod = cod or self.tensor(f.cod, g.cod)
        comps = {
            x: self._tensor_fmap(f.comps[x], g.comps[x], dom.sets[x], cod.sets[x])
            for x in self.index.objects
        }
        return PresheafMap.unchecked(dom, cod, comps)

    def _sized_table(self, kind: str, sizes: tuple[int, ...]) -> tuple[int, ...]:
        """Structure-map tables depend only on the sizes involved; memoize them."""
        key = (kind, sizes)
        t = self._table_memo.get(key)
        if t is not None:
            return t
        pair, unpair = self.pair, self.unpair
        if kind == "assoc":
            nf, ng, nh = sizes
            ngh = self.tensor_size(ng, nh)
            nfg = self.tensor_size(nf, ng)
            out = []
            for k in range(self.tensor_size(nf, ngh)):
                i, jl = unpair(nf, ngh, k)
                j, l = unpair(ng, nh, jl)
                out.append(pair(nfg, nh, pair(nf, ng, i, j), l))
        elif kind == "left_unit":
            nu, nf = sizes
            out = [unpair(nu, nf, k)[1] for k in range(self.tensor_size(nu, nf))]
        elif kind == "right_unit":
            nf, nu = sizes
            out = [unpair(nf, nu, k)[0] for k in range(self.tensor_size(nf, nu))]
        elif kind == "swap":
            nf, ng = sizes
            out = []
            for k in range(self.tensor_size(nf, ng)):
                i, j = unpair(nf, ng, k)
                out.append(pair(ng, nf, j, i))
        else:
            raise ValueError(kind)
        t = tuple(out)
        self._table_memo[key] = t
        return t

    def _from_tables(self, dom: FinPresheaf, cod: FinPresheaf, kind: str, sizes) -> PresheafMap:
        comps = {
            x: FinMap.unchecked(dom.sets[x], cod.sets[x], self._sized_table(kind, sizes(x)))
            for x in self.index.objects
        }
        return PresheafMap.unchecked(dom, cod, comps)

    def associator(self, f: FinPresheaf, g: FinPresheaf, h: FinPresheaf) -> PresheafMap:
        """``f⊗(g⊗h) -> (f⊗g)⊗h``."""
        dom = self.tensor(f, self.tensor(g, h))
        cod = self.tensor(self.tensor(f, g), h)
        return self._from_tables(
            dom, cod, "assoc", lambda x: (f.sets[x].size, g.sets[x].size, h.sets[x].size)
        )

    def left_unitor(self, f: FinPresheaf) -> PresheafMap:
        """``1⊗f -> f``; with our pairing this is the identity table."""
        u = self.unit()
        dom = self.tensor(u, f)
        return self._from_tables(dom, f, "left_unit", lambda x: (u.sets[x].size, f.sets[x].size))

    def right_unitor(self, f: FinPresheaf) -> PresheafMap:
        u = self.unit()
        dom = self.tensor(f, u)
        return self._from_tables(dom, f, "right_unit", lambda x: (f.sets[x].size, u.sets[x].size))

    def swap(self, f: FinPresheaf, g: FinPresheaf) -> PresheafMap:
        return self._from_tables(
            self.tensor(f, g), self.tensor(g, f), "swap", lambda x: (f.sets[x].size, g.sets[x].size)
        )

    def _pointwise(self, dom: FinPresheaf, cod: FinPresheaf, fn) -> PresheafMap:
        comps = {}
        for x in self.index.objects:
            comps[x] = FinMap.unchecked(
                dom.sets[x], cod.sets[x], tuple(fn(x, k) for k in range(dom.sets[x].size))
            )
        return PresheafMap.unchecked(dom, cod, comps)

    # colimits

    def initial(self) -> FinPresheaf:
        s = FinSet(1, ("*",)) if self.pointed else FinSet(0)
        return FinPresheaf.constant(self.index, s)

    def coproduct(self, f: FinPresheaf, g: FinPresheaf) -> tuple[FinPresheaf, PresheafMap, PresheafMap]:
        """Disjoint union, or the wedge (basepoints identified) when pointed."""
        sets, inl, inr = {}, {}, {}
        for x in self.index.objects:
            a, b = f.sets[x], g.sets[x]
            if self.pointed:
                s = _finset([a.labels[0]] + [l + ".0" for l in a.labels[1:]] + [l + ".1" for l in b.labels[1:]])
                inl[x] = FinMap.unchecked(a, s, tuple(range(a.size)))
                inr[x] = FinMap.unchecked(b, s, (0,) + tuple(range(a.size, a.size + b.size - 1)))
            else:
                s = _finset([l + ".0" for l in a.labels] + [l + ".1" for l in b.labels])
                inl[x] = FinMap.unchecked(a, s, tuple(range(a.size)))
                inr[x] = FinMap.unchecked(b, s, tuple(range(a.size, a.size + b.size)))
            sets[x] = s
        maps = {}
        for arr, (d, c) in self.index.arrows.items():
            t = [0] * sets[c].size
            for i, v in enumerate(f.maps[arr].table):
                t[inl[c].table[i]] = inl[d].table[v]
            for j, v in enumerate(g.maps[arr].table):
                t[inr[c].table[j]] = inr[d].table[v]
            maps[arr] = FinMap.unchecked(sets[c], sets[d], tuple(t))
        p = FinPresheaf.unchecked(self.index, sets, maps)
        return (
            p,
            PresheafMap.unchecked(f, p, {x: FinMap.unchecked(f.sets[x], sets[x], inl[x].table) for x in sets}),
            PresheafMap.unchecked(g, p, {x: FinMap.unchecked(g.sets[x], sets[x], inr[x].table) for x in sets}),
        )

    def copair(self, coprod: FinPresheaf, f: PresheafMap, g: PresheafMap) -> PresheafMap:
        """The map out of ``coproduct(f.dom, g.dom)[0]`` restricting to f and g."""
        comps = {}
        for x in self.index.objects:
            if self.pointed:
                t = tuple(f.comps[x].table) + tuple(g.comps[x].table[1:])
            else:
                t = tuple(f.comps[x].table) + tuple(g.comps[x].table)
            comps[x] = FinMap.unchecked(coprod.sets[x], f.cod.sets[x], t)
        return PresheafMap.unchecked(coprod, f.cod, comps)

    def quotient_by(self, p: FinPresheaf, ufs: dict[str, UnionFind]) -> tuple[FinPresheaf, PresheafMap]:
        """Quotient by pointwise partitions that must be compatible with transitions."""
        sets, proj = {}, {}
        for x in self.index.objects:
            sets[x], proj[x] = quotient(p.sets[x], ufs[x])
        maps = {}
        for arr, (d, c) in self.index.arrows.items():
            t = [-1] * sets[c].size
            pm = p.maps[arr].table
            for k, cls in enumerate(proj[c].table):
                v = proj[d].table[pm[k]]
                if t[cls] == -1:
                    t[cls] = v
                elif t[cls] != v:
                    raise InvariantViolation(f"partition not stable under arrow {arr!r}")
            maps[arr] = FinMap.unchecked(sets[c], sets[d], tuple(t))
        q = FinPresheaf.unchecked(self.index, sets, maps)
        return q, PresheafMap.unchecked(p, q, {x: FinMap.unchecked(p.sets[x], sets[x], proj[x].table) for x in sets})

    def coequalizer(self, f: PresheafMap, g: PresheafMap) -> tuple[FinPresheaf, PresheafMap]:
        ufs = {}
        for x in self.index.objects:
            uf = UnionFind(f.cod.sets[x].size)
            for a, b in zip(f.comps[x].table, g.comps[x].table):
                uf.union(a, b)
            ufs[x] = uf
        # transitions of a natural parallel pair preserve the generated relation
        return self.quotient_by(f.cod, ufs)

    def descend(self, q: PresheafMap, f: PresheafMap, what: str = "map") -> PresheafMap:
        """The unique ``h`` with ``h∘q = f`` for pointwise surjective ``q``.

        Every element of each fibre is evaluated; disagreement means ``f`` does
        not factor, which callers only hit through a library bug.
        """
        comps = {}
        for x in self.index.objects:
            qt, ft = q.comps[x].table, f.comps[x].table
            t = [-1] * q.cod.sets[x].size
            for k, cls in enumerate(qt):
                v = ft[k]
                if t[cls] == -1:
                    t[cls] = v
                elif t[cls] != v:
                    raise InvariantViolation(
                        f"{what}: representatives of one class disagree at {x!r}"
                    )
            if -1 in t:
                raise InvariantViolation(f"{what}: quotient map is not surjective at {x!r}")
            comps[x] = FinMap.unchecked(q.cod.sets[x], f.cod.sets[x], tuple(t))
        return PresheafMap.unchecked(q.cod, f.cod, comps)

    # limits

    def terminal(self) -> PCone:
        return PCone(FinPresheaf.constant(self.index, FinSet(1, ("*",))), ())

    def to_terminal(self, f: FinPresheaf) -> PresheafMap:
        t = self.terminal().apex
        return PresheafMap.unchecked(
            f, t, {x: FinMap.unchecked(f.sets[x], t.sets[x], (0,) * f.sets[x].size) for x in f.sets}
        )

    def product(self, f: FinPresheaf, g: FinPresheaf) -> PCone:
        sets = {x: _finset([pair_label(a, b) for a in f.sets[x].labels for b in g.sets[x].labels]) for x in self.index.objects}
        maps = {}
        for arr, (d, c) in self.index.arrows.items():
            ft, gt = f.maps[arr].table, g.maps[arr].table
            nd = g.sets[d].size
            maps[arr] = FinMap.unchecked(sets[c], sets[d], tuple(ft[i] * nd + gt[j] for i in range(f.sets[c].size) for j in range(g.sets[c].size)))
        p = FinPresheaf.unchecked(self.index, sets, maps)
        p1 = self._pointwise(p, f, lambda x, k: k // g.sets[x].size)
        p2 = self._pointwise(p, g, lambda x, k: k % g.sets[x].size)
        return PCone(p, (p1, p2))

    def subobject(self, p: FinPresheaf, keep: dict[str, list[int]]) -> tuple[FinPresheaf, PresheafMap]:
        sets, index = {}, {}
        for x in self.index.objects:
            ks = sorted(keep[x])
            sets[x] = FinSet(len(ks), tuple(p.sets[x].labels[i] for i in ks))
            index[x] = {v: n for n, v in enumerate(ks)}
        maps = {}
        for arr, (d, c) in self.index.arrows.items():
            pm = p.maps[arr].table
            ks = sorted(keep[c])
            try:
                maps[arr] = FinMap.unchecked(sets[c], sets[d], tuple(index[d][pm[i]] for i in ks))
            except KeyError:
                raise InvariantViolation("subset is not a subpresheaf") from None
        s = FinPresheaf.unchecked(self.index, sets, maps)
        incl = PresheafMap.unchecked(s, p, {x: FinMap.unchecked(sets[x], p.sets[x], tuple(sorted(keep[x]))) for x in sets})
        return s, incl

    def equalizer(self, f: PresheafMap, g: PresheafMap) -> PCone:
        keep = {
            x: [k for k, (a, b) in enumerate(zip(f.comps[x].table, g.comps[x].table)) if a == b]
            for x in self.index.objects
        }
        s, incl = self.subobject(f.dom, keep)
        return PCone(s, (incl,))

    def pullback(self, f: PresheafMap, g: PresheafMap) -> PCone:
        prod = self.product(f.dom, g.dom)
        keep = {}
        for x in self.index.objects:
            ng = g.dom.sets[x].size
            ft, gt = f.comps[x].table, g.comps[x].table
            keep[x] = [k for k in range(prod.apex.sets[x].size) if ft[k // ng] == gt[k % ng]]
        s, incl = self.subobject(prod.apex, keep)
        return PCone(s, (incl.then(prod.legs[0]), incl.then(prod.legs[1])))

    def finite_limit(self, shape: str, *args) -> PCone:
        if shape == "terminal":
            return self.terminal()
        if shape == "product":
            return self.product(*args)
        if shape == "equalizer":
            return self.equalizer(*args)
        if shape == "pullback":
            return self.pullback(*args)
        raise UnsupportedShapeError(f"unsupported limit shape {shape!r}")

    # hom enumeration

    def offsets(self, f: FinPresheaf) -> dict[str, int]:
        out, n = {}, 0
        for x in self.index.objects:
            out[x] = n
            n += f.sets[x].size
        return out

    def homs(
        self,
        f: FinPresheaf,
        g: FinPresheaf,
        extra: Iterable[tuple[str, int, str, int, Sequence[int]]] = (),
        require_iso: bool = False,
    ) -> Iterator[PresheafMap]:
        """Every natural (basepoint-preserving, when pointed) map ``f -> g``.

        ``extra`` holds further constraints ``(x, i, y, j, h)``: the image of
        element ``j`` at ``y`` must be ``h`` of the image of ``i`` at ``x``.
        """
        objs = self.index.objects
        off = self.offsets(f)
        n = sum(f.sets[x].size for x in objs)
        domains: list[Sequence[int]] = []
        owner: list[str] = []
        for x in objs:
            for i in range(f.sets[x].size):
                if self.pointed and i == 0:
                    domains.append((0,))
                else:
                    domains.append(range(g.sets[x].size))
                owner.append(x)
        props: list[list[tuple[int, Sequence[int]]]] = [[] for _ in range(n)]
        for arr, (d, c) in self.index.arrows.items():
            if self.index.is_identity(arr):
                continue
            ht = g.maps[arr].table
            for i, v in enumerate(f.maps[arr].table):
                props[off[c] + i].append((off[d] + v, ht))
        for x, i, y, j, h in extra:
            props[off[x] + i].append((off[y] + j, h))
        for sol in solve_unary(domains, props):
            comps = {}
            for x in objs:
                t = tuple(sol[off[x]: off[x] + f.sets[x].size])
                comps[x] = FinMap.unchecked(f.sets[x], g.sets[x], t)
            m = PresheafMap.unchecked(f, g, comps)
            if require_iso and not m.is_iso():
                continue
            yield m

    def isos(self, f: FinPresheaf, g: FinPresheaf) -> Iterator[PresheafMap]:
        if f.shape() != g.shape():
            return iter(())
        return self.homs(f, g, require_iso=True)

    def isomorphic(self, f: FinPresheaf, g: FinPresheaf) -> bool:
        return next(iter(self.isos(f, g)), None) is not None

    # enumeration of small objects, used by probes

    def objects_up_to(self, max_total: int) -> Iterator[FinPresheaf]:
        """Presheaves with total size ``<= max_total`` (not deduplicated), by size."""
        from itertools import product as iproduct

        objs = self.index.objects
        lo = 1 if self.pointed else 0
        for total in range(lo * len(objs), max_total + 1):
            for sizes in iproduct(range(lo, total + 1), repeat=len(objs)):
                if sum(sizes) != total:
                    continue
                yield from self._presheaves_with_sizes(dict(zip(objs, sizes)))

    def _presheaves_with_sizes(self, sizes: dict[str, int]) -> Iterator[FinPresheaf]:
        from itertools import product as iproduct

        C = self.index
        sets = {x: FinSet(sizes[x]) for x in C.objects}
        arrows = C.non_identity_arrows()
        choices = []
        for a in arrows:
            d, c = C.arrows[a]
            tables = [t for t in iproduct(range(sizes[d]), repeat=sizes[c])]
            if self.pointed:
                tables = [t for t in tables if t[0] == 0]
            choices.append(tables)
        for pick in iproduct(*choices):
            maps = {}
            for x in C.objects:
                maps[C.identities[x]] = FinMap.identity(sets[x])
            for a, t in zip(arrows, pick):
                d, c = C.arrows[a]
                maps[a] = FinMap.unchecked(sets[c], sets[d], t)
            p = FinPresheaf.unchecked(C, sets, maps)
            if p.check_laws().ok:
                yield p


def presheaf_colimit_pointwise(op: str, *args, pointed: bool = False):
    """Coproduct of presheaves or coequalizer of a parallel pair, objectwise."""
    if op == "coproduct":
        if len(args) != 2:
            raise ShapeError("coproduct takes two presheaves")
        f, g = args
        if f.base.objects != g.base.objects:
            raise ShapeError("presheaves live over different index categories")
        return PresheafCat(f.base, pointed).coproduct(f, g)[0]
    if op == "coequalizer":
        if len(args) != 2:
            raise ShapeError("coequalizer takes two parallel maps")
        f, g = args
        if f.dom.base.objects != g.dom.base.objects:
            raise ShapeError("maps live over different index categories")
        for x in f.dom.base.objects:
            if f.comps[x].dom.size != g.comps[x].dom.size or f.comps[x].cod.size != g.comps[x].cod.size:
                raise ShapeError("coequalizer needs a parallel pair")
        return PresheafCat(f.dom.base, pointed).coequalizer(f, g)[0]
    raise UnsupportedShapeError(f"unsupported colimit {op!r}")
