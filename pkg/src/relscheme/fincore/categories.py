"""Finite categories given by explicit composition tables, and functors between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence

from ..errors import ShapeError
from ..report import CheckReport, laws_report


@dataclass
class FinCategory:
    """Objects, named arrows ``{name: (dom, cod)}``, identities and ``compose[(g, f)] = g∘f``."""

    objects: tuple[str, ...]
    arrows: dict[str, tuple[str, str]]
    identities: dict[str, str]
    compose: dict[tuple[str, str], str]
    name: str = "C"
    _homs: dict[tuple[str, str], list[str]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.objects = tuple(self.objects)
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise ShapeError("duplicate object names")
        for a, (d, c) in self.arrows.items():
            if d not in objs or c not in objs:
                raise ShapeError(f"arrow {a!r} has unknown endpoints ({d}, {c})")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.arrows.get(i) != (x, x):
                raise ShapeError(f"missing or malformed identity for {x!r}")
        for g, f in iproduct(self.arrows, repeat=2):
            if self.arrows[f][1] == self.arrows[g][0]:
                h = self.compose.get((g, f))
                if h is None:
                    raise ShapeError(f"composite {g}∘{f} undefined")
                if self.arrows.get(h) != (self.arrows[f][0], self.arrows[g][1]):
                    raise ShapeError(f"composite {g}∘{f} = {h} has the wrong type")
        self._homs = {}
        for a, (d, c) in self.arrows.items():
            self._homs.setdefault((d, c), []).append(a)

    def dom(self, a: str) -> str:
        return self.arrows[a][0]

    def cod(self, a: str) -> str:
        return self.arrows[a][1]

    def hom(self, x: str, y: str) -> list[str]:
        return self._homs.get((x, y), [])

    def comp(self, g: str, f: str) -> str:
        return self.compose[(g, f)]

    def is_identity(self, a: str) -> bool:
        return self.identities[self.dom(a)] == a

    def non_identity_arrows(self) -> list[str]:
        return [a for a in self.arrows if not self.is_identity(a)]

    def check_laws(self) -> CheckReport:
        bad = []
        for a, (d, c) in self.arrows.items():
            if self.comp(a, self.identities[d]) != a or self.comp(self.identities[c], a) != a:
                bad.append({"law": "unit", "arrow": a})
        for h, g, f in iproduct(self.arrows, repeat=3):
            if self.cod(f) == self.dom(g) and self.cod(g) == self.dom(h):
                if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f):
                    bad.append({"law": "associativity", "arrows": [h, g, f]})
        return laws_report(f"category_laws:{self.name}", bad, op="category.check_laws")

    def is_iso(self, a: str) -> bool:
        d, c = self.arrows[a]
        return any(
            self.comp(b, a) == self.identities[d] and self.comp(a, b) == self.identities[c]
            for b in self.hom(c, d)
        )

    def isomorphic(self, x: str, y: str) -> bool:
        return any(self.is_iso(a) for a in self.hom(x, y))

    # constructors

    @classmethod
    def terminal(cls) -> "FinCategory":
        return cls(("*",), {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"}, name="1")

    @classmethod
    def discrete(cls, objects: Sequence[str], name: str = "J") -> "FinCategory":
        objects = tuple(str(o) for o in objects)
        return cls(
            objects,
            {f"id_{o}": (o, o) for o in objects},
            {o: f"id_{o}" for o in objects},
            {(f"id_{o}", f"id_{o}"): f"id_{o}" for o in objects},
            name=name,
        )

    @classmethod
    def from_monoid(
        cls, elements: Sequence[str], mult: Sequence[Sequence[int]], unit: int, name: str = "M"
    ) -> "FinCategory":
        """One-object category; ``g∘f`` is the product ``g·f``."""
        els = tuple(str(e) for e in elements)
        n = len(els)
        comp = {(els[g], els[f]): els[mult[g][f]] for g in range(n) for f in range(n)}
        return cls(("*",), {e: ("*", "*") for e in els}, {"*": els[unit]}, comp, name=name)

    @classmethod
    def parallel_pair(cls) -> "FinCategory":
        arrows = {"id0": ("0", "0"), "id1": ("1", "1"), "d0": ("0", "1"), "d1": ("0", "1")}
        comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1"}
        for d in ("d0", "d1"):
            comp[(d, "id0")] = d
            comp[("id1", d)] = d
        return cls(("0", "1"), arrows, {"0": "id0", "1": "id1"}, comp, name="Par")

    @classmethod
    def product(cls, a: "FinCategory", b: "FinCategory") -> "FinCategory":
        def ob(x, y):
            return f"({x},{y})"

        objects = tuple(ob(x, y) for x in a.objects for y in b.objects)
        arrows = {
            ob(f, g): (ob(a.dom(f), b.dom(g)), ob(a.cod(f), b.cod(g)))
            for f in a.arrows
            for g in b.arrows
        }
        ids = {ob(x, y): ob(a.identities[x], b.identities[y]) for x in a.objects for y in b.objects}
        comp = {}
        for (f2, f1), h in a.compose.items():
            for (g2, g1), k in b.compose.items():
                comp[(ob(f2, g2), ob(f1, g1))] = ob(h, k)
        return cls(objects, arrows, ids, comp, name=f"{a.name}x{b.name}")


@dataclass
class FinFunctor:
    dom: FinCategory
    cod: FinCategory
    on_objects: dict[str, str]
    on_arrows: dict[str, str]
    name: str = "F"

    def __post_init__(self):
        if set(self.on_objects) != set(self.dom.objects):
            raise ShapeError("functor object map is not total")
        if set(self.on_arrows) != set(self.dom.arrows):
            raise ShapeError("functor arrow map is not total")
        for x, y in self.on_objects.items():
            if y not in self.cod.objects:
                raise ShapeError(f"object {x!r} sent outside the codomain")
        for a, b in self.on_arrows.items():
            if b not in self.cod.arrows:
                raise ShapeError(f"arrow {a!r} sent outside the codomain")

    def __call__(self, a: str) -> str:
        return self.on_arrows[a]

    def ob(self, x: str) -> str:
        return self.on_objects[x]

    def check_laws(self) -> CheckReport:
        C, D = self.dom, self.cod
        bad = []
        for a, (d, c) in C.arrows.items():
            if D.arrows[self.on_arrows[a]] != (self.on_objects[d], self.on_objects[c]):
                bad.append({"law": "typing", "arrow": a})
        for x in C.objects:
            if self.on_arrows[C.identities[x]] != D.identities[self.on_objects[x]]:
                bad.append({"law": "identity", "object": x})
        if not bad:
            for (g, f), h in C.compose.items():
                if self.on_arrows[h] != D.comp(self.on_arrows[g], self.on_arrows[f]):
                    bad.append({"law": "composition", "arrows": [g, f]})
        return laws_report(f"functor_laws:{self.name}", bad, op="functor.check_laws")

    def is_essentially_surjective(self) -> bool:
        image = set(self.on_objects.values())
        return all(any(self.cod.isomorphic(y, x) for x in image) for y in self.cod.objects)

    def then(self, other: "FinFunctor") -> "FinFunctor":
        return FinFunctor(
            self.dom,
            other.cod,
            {x: other.on_objects[y] for x, y in self.on_objects.items()},
            {a: other.on_arrows[b] for a, b in self.on_arrows.items()},
            name=f"{other.name}{self.name}",
        )

    @classmethod
    def identity(cls, c: FinCategory) -> "FinFunctor":
        return cls(c, c, {x: x for x in c.objects}, {a: a for a in c.arrows}, name="id")
