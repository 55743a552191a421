"""Finite sets as index ranges, functions as lookup tables, and the
finite (co)limit calculus in Set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from ..errors import ShapeError, UnsupportedShapeError


class FinSet:
    """A finite set ``{0, ..., size-1}`` carrying display labels.

    Labels of constructed sets (products, quotients) are produced on demand.
    """

    __slots__ = ("size", "_labels", "_make")

    def __init__(self, size: int, labels: Sequence[str] = ()):
        labels = tuple(labels)
        if not labels:
            labels = tuple(str(i) for i in range(size))
        if len(labels) != size:
            raise ShapeError(f"{size} elements but {len(labels)} labels")
        if len(set(labels)) != size:
            raise ShapeError(f"labels are not distinct: {labels}")
        self.size = size
        self._labels = labels
        self._make = None

    @classmethod
    def lazy(cls, size: int, make: Callable[[], Sequence[str]]) -> "FinSet":
        """Labels come from ``make()``; numeric labels replace non-distinct ones."""
        s = object.__new__(cls)
        s.size, s._labels, s._make = size, None, make
        return s

    @property
    def labels(self) -> tuple[str, ...]:
        if self._labels is None:
            labels = tuple(self._make())
            if len(labels) != self.size or len(set(labels)) != self.size:
                labels = tuple(str(i) for i in range(self.size))
            self._labels = labels
        return self._labels

    @classmethod
    def of(cls, labels: Iterable[Hashable]) -> "FinSet":
        labels = tuple(str(x) for x in labels)
        return cls(len(labels), labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSet) and self.size == other.size and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.size, self.labels))

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"no element labelled {label!r}") from None

    def __repr__(self) -> str:
        return "{" + ", ".join(self.labels) + "}"


def singleton(label: str = "*") -> FinSet:
    return FinSet(1, (label,))


EMPTY = FinSet(0, ())


@dataclass(frozen=True)
class FinMap:
    """A function between finite sets, ``table[i]`` is the image of ``i``."""

    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.table, tuple):
            object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.dom.size:
            raise ShapeError(
                f"table has {len(self.table)} entries for a domain of size {self.dom.size}"
            )
        n = self.cod.size
        for v in self.table:
            if not 0 <= v < n:
                raise ShapeError(f"table entry {v} outside codomain of size {n}")

    @classmethod
    def unchecked(cls, dom: FinSet, cod: FinSet, table: tuple[int, ...]) -> "FinMap":
        # internal constructions whose tables are correct by construction
        m = object.__new__(cls)
        object.__setattr__(m, "dom", dom)
        object.__setattr__(m, "cod", cod)
        object.__setattr__(m, "table", table)
        return m

    @classmethod
    def from_function(cls, dom: FinSet, cod: FinSet, fn: Callable[[int], int]) -> "FinMap":
        return cls(dom, cod, tuple(fn(i) for i in range(dom.size)))

    @classmethod
    def identity(cls, s: FinSet) -> "FinMap":
        return cls.unchecked(s, s, tuple(range(s.size)))

    def __call__(self, i: int) -> int:
        return self.table[i]

    def then(self, other: "FinMap") -> "FinMap":
        """Diagrammatic composite: first ``self``, then ``other``."""
        if self.cod.size != other.dom.size:
            raise ShapeError(f"cannot compose {self.cod!r} with {other.dom!r}")
        t = other.table
        return FinMap.unchecked(self.dom, other.cod, tuple(map(t.__getitem__, self.table)))

    def __matmul__(self, other: "FinMap") -> "FinMap":
        # g @ f is g after f
        return other.then(self)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size

    def is_bijective(self) -> bool:
        return self.dom.size == self.cod.size and self.is_injective()

    def inverse(self) -> "FinMap":
        if not self.is_bijective():
            raise ShapeError("map is not a bijection")
        inv = [0] * self.cod.size
        for i, v in enumerate(self.table):
            inv[v] = i
        return FinMap.unchecked(self.cod, self.dom, tuple(inv))

    def image(self) -> frozenset[int]:
        return frozenset(self.table)

    def fibers(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, v in enumerate(self.table):
            out.setdefault(v, []).append(i)
        return out

    def same_as(self, other: "FinMap") -> bool:
        return (
            self.dom.size == other.dom.size
            and self.cod.size == other.cod.size
            and self.table == other.table
        )

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{self.dom.labels[i]}->{self.cod.labels[v]}" for i, v in enumerate(self.table)
        )
        return f"FinMap({pairs})"


class UnionFind:
    """Disjoint sets over ``range(n)``; the root of every class is its smallest member."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        parent = self.parent
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def union(self, i: int, j: int) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if ri < rj:
            self.parent[rj] = ri
        else:
            self.parent[ri] = rj
        return True

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            groups.setdefault(self.find(i), []).append(i)
        return [groups[r] for r in sorted(groups)]


def quotient(s: FinSet, uf: UnionFind) -> tuple[FinSet, FinMap]:
    """Canonical quotient of ``s`` by the partition in ``uf``.

    Classes are numbered by their smallest element and labelled ``{rep}``.
    """
    roots = sorted({uf.find(i) for i in range(s.size)})
    number = {r: k for k, r in enumerate(roots)}
    q = FinSet(len(roots), tuple("{" + s.labels[r] + "}" for r in roots))
    proj = FinMap(s, q, tuple(number[uf.find(i)] for i in range(s.size)))
    return q, proj


def coequalizer(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap]:
    if f.dom.size != g.dom.size or f.cod.size != g.cod.size:
        raise ShapeError("coequalizer needs a parallel pair")
    uf = UnionFind(f.cod.size)
    for x in range(f.dom.size):
        uf.union(f.table[x], g.table[x])
    return quotient(f.cod, uf)


def coproduct(a: FinSet, b: FinSet) -> tuple[FinSet, FinMap, FinMap]:
    s = FinSet(
        a.size + b.size,
        tuple(f"{x}.0" for x in a.labels) + tuple(f"{y}.1" for y in b.labels),
    )
    return (
        s,
        FinMap(a, s, tuple(range(a.size))),
        FinMap(b, s, tuple(range(a.size, a.size + b.size))),
    )


@dataclass(frozen=True)
class Cone:
    """A limit apex together with its leg maps, in diagram order."""

    apex: FinSet
    legs: tuple[FinMap, ...]


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def terminal() -> Cone:
    return Cone(singleton(), ())


def product(a: FinSet, b: FinSet) -> Cone:
    nb = b.size
    p = FinSet(
        a.size * nb,
        tuple(pair_label(x, y) for x in a.labels for y in b.labels),
    )
    return Cone(
        p,
        (
            FinMap(p, a, tuple(k // nb for k in range(p.size))),
            FinMap(p, b, tuple(k % nb for k in range(p.size))),
        ),
    )


def subset(s: FinSet, keep: Sequence[int]) -> tuple[FinSet, FinMap]:
    keep = sorted(keep)
    sub = FinSet(len(keep), tuple(s.labels[i] for i in keep))
    return sub, FinMap(sub, s, tuple(keep))


def equalizer(f: FinMap, g: FinMap) -> Cone:
    if f.dom.size != g.dom.size or f.cod.size != g.cod.size:
        raise ShapeError("equalizer needs a parallel pair")
    e, incl = subset(f.dom, [x for x in range(f.dom.size) if f.table[x] == g.table[x]])
    return Cone(e, (incl,))


def pullback(f: FinMap, g: FinMap) -> Cone:
    if f.cod.size != g.cod.size:
        raise ShapeError("pullback needs a cospan")
    prod = product(f.dom, g.dom)
    nb = g.dom.size
    keep = [k for k in range(prod.apex.size) if f.table[k // nb] == g.table[k % nb]]
    p, incl = subset(prod.apex, keep)
    return Cone(p, (incl.then(prod.legs[0]), incl.then(prod.legs[1])))


def finite_limit(shape: str, *args: FinSet | FinMap) -> Cone:
    """Dispatch on the four built-in limit shapes."""
    if shape == "terminal":
        return terminal()
    if shape == "product":
        return product(*args)  # type: ignore[arg-type]
    if shape == "equalizer":
        return equalizer(*args)  # type: ignore[arg-type]
    if shape == "pullback":
        return pullback(*args)  # type: ignore[arg-type]
    raise UnsupportedShapeError(f"unsupported limit shape {shape!r}")


def all_maps(dom: FinSet, cod: FinSet):
    """Every function ``dom -> cod`` in lexicographic table order."""
    from itertools import product as iproduct

    for t in iproduct(range(cod.size), repeat=dom.size):
        yield FinMap(dom, cod, t)
