"""Flatness and conservativity probes, cover families and their audits, and the
sheaf equalizer check.

Flatness and conservativity quantify over every finite diagram or morphism,
so the probes here are refutation-sound and confirmation-bounded: a refutation
carries a concrete diagram or morphism that fails again when replayed, while a
pass is only ever ``PASSED_WITHIN_BUDGET`` and records the budget it used.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field, replace
from itertools import product as iproduct
from typing import Iterator, Mapping, Sequence

from .actegory import Actegory
from .commalg import CommMonoid, MonoidMorphism, is_epi, is_finite_type, monoid_homs, pushout
from .errors import InputCompletenessError, InvariantViolation, PreconditionError, ShapeError
from .fincore.presheaf import PCone, PresheafMap
from .fincore.sets import FinMap, FinSet, equalizer as set_equalizer, product as set_product
from .report import CheckReport, Status, Tag, combine, failed, laws_report, passed
from .scalars import (
    Module,
    ModuleMorphism,
    enumerate_modules,
    extend_scalars,
    extend_scalars_morphism,
    is_module_iso,
    module_homs,
)

SHAPES = ("terminal", "product", "equalizer", "pullback")


@dataclass(frozen=True)
class ProbeBudget:
    """Bounds for the probes: module size, limit shapes, morphism count, seed."""

    max_module_size: int = 2
    diagram_shapes: tuple[str, ...] = SHAPES
    max_test_morphisms: int = 64
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "diagram_shapes", tuple(self.diagram_shapes))
        if self.max_module_size < 1 or self.max_test_morphisms < 1:
            raise ValueError("probe bounds must be at least 1")
        unknown = set(self.diagram_shapes) - set(SHAPES)
        if unknown:
            raise ValueError(f"unknown diagram shapes {sorted(unknown)}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["diagram_shapes"] = list(self.diagram_shapes)
        return d

    def but(self, **changes) -> "ProbeBudget":
        return replace(self, **changes)


@dataclass(frozen=True)
class ProbeVerdict:
    probe: str
    refuted: bool
    examined: int
    budget: ProbeBudget
    witness: dict | None = None
    evidence: object = field(default=None, compare=False, repr=False)

    @property
    def passed(self) -> bool:
        return not self.refuted

    def report(self, check_id: str | None = None, op: str | None = None) -> CheckReport:
        cid = check_id or self.probe
        if self.refuted:
            return failed(cid, self.witness, tags=(Tag.BUDGET,), op=op or self.probe,
                          details={"examined": self.examined}, budget=self.budget.to_dict())
        return CheckReport(cid, Status.PASSED_WITHIN_BUDGET, tags=(Tag.BUDGET,), op=op or self.probe,
                           details={"examined": self.examined}, budget=self.budget.to_dict())


# limits of modules


@dataclass(eq=False)
class ModuleDiagram:
    """A finite-limit diagram of modules of one of the four supported shapes."""

    shape: str
    A: Actegory
    over: CommMonoid
    modules: tuple[Module, ...] = ()
    arrows: tuple[ModuleMorphism, ...] = ()

    def __post_init__(self):
        want = {"terminal": (0, 0), "product": (2, 0), "equalizer": (0, 2), "pullback": (0, 2)}
        if self.shape not in want:
            raise ShapeError(f"unsupported diagram shape {self.shape!r}")
        if (len(self.modules), len(self.arrows)) != want[self.shape]:
            raise ShapeError(f"wrong data for a {self.shape} diagram")
        if self.shape == "equalizer":
            f, g = self.arrows
            if f.dom is not g.dom or f.cod is not g.cod:
                raise ShapeError("equalizer needs a parallel pair")
        if self.shape == "pullback" and self.arrows[0].cod is not self.arrows[1].cod:
            raise ShapeError("pullback needs a cospan")

    def objects(self) -> list[Module]:
        if self.shape == "product":
            return list(self.modules)
        if self.shape == "equalizer":
            return [self.arrows[0].dom, self.arrows[0].cod]
        if self.shape == "pullback":
            f, g = self.arrows
            return [f.dom, g.dom, f.cod]
        return []

    def total_size(self) -> int:
        return sum(m.carrier.size() for m in self.objects())

    def describe(self) -> dict:
        return {
            "shape": self.shape,
            "over": self.over.name,
            "objects": [{"name": m.name, "size": m.carrier.size()} for m in self.objects()],
            "arrows": [{x: list(c.table) for x, c in f.map.comps.items()} for f in self.arrows],
            "total_size": self.total_size(),
        }


def _factor(cone: PCone, maps: Sequence[PresheafMap], dom) -> PresheafMap:
    """The unique map into the apex whose composites with the legs are ``maps``."""
    comps = {}
    apex = cone.apex
    for x, s in apex.sets.items():
        where = {tuple(leg.comps[x].table[k] for leg in cone.legs): k for k in range(s.size)}
        out = []
        for e in range(dom.sets[x].size):
            key = tuple(f.comps[x].table[e] for f in maps)
            if key not in where:
                raise InvariantViolation("maps do not form a cone over the diagram")
            out.append(where[key])
        comps[x] = FinMap.unchecked(dom.sets[x], s, tuple(out))
    return PresheafMap.unchecked(dom, apex, comps)


def module_limit(D: ModuleDiagram) -> tuple[Module, tuple[ModuleMorphism, ...]]:
    """The limit in modules: the limit of carriers with the action induced leg by leg."""
    A, a = D.A, D.over
    M = A.M
    if D.shape == "terminal":
        cone = M.terminal()
        targets: list[Module] = []
    elif D.shape == "product":
        cone = M.product(D.modules[0].carrier, D.modules[1].carrier)
        targets = list(D.modules)
    elif D.shape == "equalizer":
        cone = M.equalizer(D.arrows[0].map, D.arrows[1].map)
        targets = [D.arrows[0].dom]
    else:
        cone = M.pullback(D.arrows[0].map, D.arrows[1].map)
        targets = [D.arrows[0].dom, D.arrows[1].dom]
    L = cone.apex
    aL = A.act_obj(a.carrier, L)
    ia = PresheafMap.identity(a.carrier)
    via = [A.act_mor(ia, leg, dom=aL, cod=t.action.dom).then(t.action) for leg, t in zip(cone.legs, targets)]
    rho = _factor(cone, via, aL)
    lim = Module(A, a, L, rho, name=f"lim[{D.shape}]")
    legs = tuple(ModuleMorphism(lim, t, leg, name=f"pr{k}") for k, (leg, t) in enumerate(zip(cone.legs, targets)))
    return lim, legs


def extend_diagram(alpha: MonoidMorphism, D: ModuleDiagram) -> ModuleDiagram:
    mods = tuple(extend_scalars(alpha, m).module for m in D.modules)
    arrows = tuple(extend_scalars_morphism(alpha, f) for f in D.arrows)
    return ModuleDiagram(D.shape, D.A, alpha.cod, mods, arrows)


def flatness_defect(alpha: MonoidMorphism, D: ModuleDiagram) -> dict | None:
    """``None`` when ``α^*(lim D) -> lim α^*D`` is bijective, otherwise a description."""
    lim, legs = module_limit(D)
    ext_lim = extend_scalars(alpha, lim).module
    ED = extend_diagram(alpha, D)
    elim, elegs = module_limit(ED)
    images = [extend_scalars_morphism(alpha, leg).map for leg in legs]
    cone = PCone(elim.carrier, tuple(l.map for l in elegs))
    canon = _factor(cone, images, ext_lim.carrier)
    if canon.is_iso():
        return None
    return {
        "diagram": D.describe(),
        "extended_limit_size": ext_lim.carrier.size(),
        "limit_of_extensions_size": elim.carrier.size(),
        "canonical_map": {x: list(c.table) for x, c in canon.comps.items()},
    }


def _sample(items: list, k: int, rng: random.Random) -> list:
    if len(items) <= k:
        return items
    keep = sorted(rng.sample(range(len(items)), k))
    return [items[i] for i in keep]


def probe_diagrams(a: CommMonoid, A: Actegory, B: ProbeBudget) -> Iterator[ModuleDiagram]:
    """Diagrams within budget, shape by shape, smaller diagrams first."""
    rng = random.Random(B.seed)
    mods = enumerate_modules(A, a, B.max_module_size)
    homs = {(i, j): list(module_homs(m, n)) for i, m in enumerate(mods) for j, n in enumerate(mods)}
    left = B.max_test_morphisms
    for shape in SHAPES:
        if shape not in B.diagram_shapes:
            continue
        if shape == "terminal":
            yield ModuleDiagram("terminal", A, a)
        elif shape == "product":
            pairs = [(i, j) for i in range(len(mods)) for j in range(i, len(mods))]
            pairs.sort(key=lambda p: (mods[p[0]].carrier.size() + mods[p[1]].carrier.size(), p))
            for i, j in pairs:
                yield ModuleDiagram("product", A, a, (mods[i], mods[j]))
        elif shape == "equalizer":
            cands = [(f, g) for hs in homs.values() for x, f in enumerate(hs) for g in hs[x + 1:]]
            cands = _sample(cands, left, rng)
            left -= len(cands)
            for f, g in cands:
                yield ModuleDiagram("equalizer", A, a, (), (f, g))
        else:
            cands = []
            for k in range(len(mods)):
                into = [f for (i, j), hs in sorted(homs.items()) if j == k for f in hs]
                cands.extend((f, g) for x, f in enumerate(into) for g in into[x:])
            cands = _sample(cands, max(left, 0), rng)
            for f, g in cands:
                yield ModuleDiagram("pullback", A, a, (), (f, g))


def flatness_probe(alpha: MonoidMorphism, A: Actegory, B: ProbeBudget | None = None) -> ProbeVerdict:
    """Search for a finite-limit diagram whose limit extension of scalars fails to preserve."""
    B = B or ProbeBudget()
    n = 0
    for D in probe_diagrams(alpha.dom, A, B):
        n += 1
        w = flatness_defect(alpha, D)
        if w is not None:
            return ProbeVerdict("flatness_probe", True, n, B, w, evidence=D)
    return ProbeVerdict("flatness_probe", False, n, B)


def conservativity_probe(legs: Sequence[MonoidMorphism], A: Actegory, B: ProbeBudget | None = None) -> ProbeVerdict:
    """Search for a non-isomorphism that every extension along ``legs`` makes invertible."""
    B = B or ProbeBudget()
    if not legs:
        raise PreconditionError("conservativity needs at least one leg")
    a = legs[0].dom
    if any(not l.dom.same_as(a) for l in legs):
        raise ShapeError("legs must share a domain")
    mods = enumerate_modules(A, a, B.max_module_size)
    n = 0
    for m in mods:
        for t in mods:
            for phi in module_homs(m, t):
                if n >= B.max_test_morphisms:
                    return ProbeVerdict("conservativity_probe", False, n, B)
                if is_module_iso(phi):
                    continue
                n += 1
                if all(is_module_iso(extend_scalars_morphism(l, phi)) for l in legs):
                    w = {
                        "morphism": {x: list(c.table) for x, c in phi.map.comps.items()},
                        "dom": {"name": m.name, "size": m.carrier.size()},
                        "cod": {"name": t.name, "size": t.carrier.size()},
                        "legs": [l.name for l in legs],
                    }
                    return ProbeVerdict("conservativity_probe", True, n, B, w, evidence=phi)
    return ProbeVerdict("conservativity_probe", False, n, B)


# covers


@dataclass(eq=False)
class CoverFamily:
    base: CommMonoid
    legs: list[MonoidMorphism]
    finite_subset: list[int]
    name: str = "cover"

    def __post_init__(self):
        self.legs = list(self.legs)
        self.finite_subset = list(self.finite_subset)
        for l in self.legs:
            if not l.dom.same_as(self.base):
                raise ShapeError(f"leg {l.name} does not start at the base {self.base.name}")
        if any(not 0 <= j < len(self.legs) for j in self.finite_subset):
            raise ShapeError("finite subset refers to a missing leg")

    @classmethod
    def identity(cls, a: CommMonoid, name: str | None = None) -> "CoverFamily":
        return cls(a, [MonoidMorphism.identity(a)], [0], name=name or f"id_{a.name}")

    @classmethod
    def singleton(cls, alpha: MonoidMorphism, name: str | None = None) -> "CoverFamily":
        return cls(alpha.dom, [alpha], [0], name=name or f"{{{alpha.name}}}")

    def to_doc(self) -> dict:
        return {"base": self.base.name, "legs": [l.name for l in self.legs], "finite_subset": self.finite_subset}


def check_fpqc_cover(C: CoverFamily, A: Actegory, B: ProbeBudget | None = None) -> CheckReport:
    B = B or ProbeBudget()
    items = [flatness_probe(l, A, B).report(f"flat[{k}]:{l.name}") for k, l in enumerate(C.legs)]
    chosen = [C.legs[j] for j in C.finite_subset]
    if chosen:
        items.append(conservativity_probe(chosen, A, B).report("conservative[J]"))
    else:
        items.append(failed("conservative[J]", {"reason": "empty finite subset"}, op="conservativity_probe"))
    return combine(f"fpqc_cover:{C.name}", items, op="check_fpqc_cover")


def check_spectral_immersion(alpha: MonoidMorphism, A: Actegory, B: ProbeBudget | None = None) -> CheckReport:
    B = B or ProbeBudget()
    flat = flatness_probe(alpha, A, B).report("flat")
    ok, w = is_epi(alpha)
    epi = passed("epi", op="is_epi") if ok else failed("epi", w, op="is_epi")
    ft = is_finite_type(alpha)
    ft.check_id = "finite_type"
    return combine(f"spectral_immersion:{alpha.name}", [flat, epi, ft], op="check_spectral_immersion")


def check_spectral_cover(C: CoverFamily, A: Actegory, B: ProbeBudget | None = None) -> CheckReport:
    B = B or ProbeBudget()
    items = [check_fpqc_cover(C, A, B)]
    items += [check_spectral_immersion(l, A, B) for l in C.legs]
    return combine(f"spectral_cover:{C.name}", items, op="check_spectral_cover")


def pullback_cover(C: CoverFamily, beta: MonoidMorphism) -> CoverFamily:
    """Legs ``b -> a_i ⊗_a b``, the second coprojections of the pushouts along ``β``."""
    if not beta.dom.same_as(C.base):
        raise ShapeError("β must start at the cover's base")
    legs = []
    for l in C.legs:
        P = pushout(l, beta)
        leg = P.inr
        leg.name = f"{l.name}'"
        legs.append(leg)
    return CoverFamily(beta.cod, legs, C.finite_subset, name=f"{beta.name}^*{C.name}")


def compose_covers(C: CoverFamily, refinements: Sequence[CoverFamily]) -> CoverFamily:
    if len(refinements) != len(C.legs):
        raise PreconditionError("one refinement per leg is required")
    legs, index = [], {}
    for i, (l, R) in enumerate(zip(C.legs, refinements)):
        if not R.base.same_as(l.cod):
            raise PreconditionError(f"refinement {i} lives over {R.base.name}, not {l.cod.name}")
        for j, r in enumerate(R.legs):
            index[(i, j)] = len(legs)
            c = l.then(r)
            c.name = f"{r.name}∘{l.name}"
            legs.append(c)
    subset = [index[(i, j)] for i in C.finite_subset for j in refinements[i].finite_subset]
    return CoverFamily(C.base, legs, subset, name=f"{C.name}∘refined")


def _refinement_for(target: CommMonoid, verified: list[CoverFamily]) -> CoverFamily:
    for R in verified:
        if R.base.same_as(target):
            return R
    return CoverFamily.identity(target)


def pretopology_audit(
    covers: Sequence[CoverFamily],
    morphisms: Sequence[MonoidMorphism],
    A: Actegory,
    B: ProbeBudget | None = None,
) -> CheckReport:
    """Isomorphism singletons, stability under pullback and closure under composition."""
    B = B or ProbeBudget()
    items: list[CheckReport] = []
    for h in morphisms:
        if h.is_iso():
            r = check_fpqc_cover(CoverFamily.singleton(h), A, B)
            r.check_id = f"iso_singleton:{h.name}"
            items.append(r)
    verified = []
    for C in covers:
        r = check_fpqc_cover(C, A, B)
        r.check_id = f"cover:{C.name}"
        items.append(r)
        if r.ok:
            verified.append(C)
    for C in verified:
        for h in morphisms:
            if h.dom.same_as(C.base):
                r = check_fpqc_cover(pullback_cover(C, h), A, B)
                r.check_id = f"pullback:{C.name}/{h.name}"
                items.append(r)
    for C in verified:
        refs = [_refinement_for(l.cod, verified) for l in C.legs]
        r = check_fpqc_cover(compose_covers(C, refs), A, B)
        r.check_id = f"composite:{C.name}"
        items.append(r)
    return combine("pretopology_audit", items, op="pretopology_audit")


# the sheaf equalizer


@dataclass(eq=False)
class FunctorData:
    """A finite set-valued functor on named monoids, covariant in monoid morphisms.

    ``arrows`` maps ``(source, target, table)`` of a monoid morphism to the
    table of the induced function between the values.
    """

    objects: dict[str, CommMonoid]
    values: dict[str, FinSet]
    arrows: dict[tuple[str, str, tuple[int, ...]], tuple[int, ...]]

    def name_of(self, c: CommMonoid) -> str:
        for k, v in self.objects.items():
            if v is c or v.same_as(c):
                return k
        raise InputCompletenessError(f"no value supplied for {c.name}")

    def apply(self, src: str, tgt: str, h: MonoidMorphism) -> tuple[int, ...]:
        key = (src, tgt, tuple(h.table))
        if key not in self.arrows:
            raise InputCompletenessError(f"no value supplied on the morphism {src} -> {tgt} {list(h.table)}")
        t = tuple(self.arrows[key])
        if len(t) != self.values[src].size or any(not 0 <= v < self.values[tgt].size for v in t):
            raise ShapeError(f"arrow {src} -> {tgt} has the wrong shape")
        return t

    def size(self) -> int:
        return sum(v.size for v in self.values.values())


def _homs(a: CommMonoid, b: CommMonoid):
    # zeros are structure only in the pointed base
    return monoid_homs(a, b, keep_zero=a.base.pointed)


def _match_object(F: FunctorData, P: CommMonoid) -> tuple[str, MonoidMorphism]:
    """A supplied object isomorphic to ``P`` and the chosen isomorphism ``P -> it``."""
    for k, c in F.objects.items():
        if c.size != P.size:
            continue
        for h in _homs(P, c):
            if h.is_iso():
                return k, h
    raise InputCompletenessError(f"no supplied object is isomorphic to the pushout {P.name}")


@dataclass(frozen=True)
class EqualizerDiagram:
    """``F(a) -> ∏F(a_i) ⇉ ∏F(a_i ⊗_a a_j)`` as plain tables."""

    base_size: int
    leg_sizes: tuple[int, ...]
    restrict: tuple[tuple[int, ...], ...]  # F(a) -> F(a_i), per i
    pairs: tuple[tuple[int, int, int, tuple[int, ...], tuple[int, ...]], ...]  # (i, j, |F(p_ij)|, left, right)


def equalizer_diagram(F: FunctorData, C: CoverFamily) -> EqualizerDiagram:
    base = F.name_of(C.base)
    names = [F.name_of(l.cod) for l in C.legs]
    restrict = tuple(F.apply(base, n, l) for n, l in zip(names, C.legs))
    pairs = []
    for i, li in enumerate(C.legs):
        for j, lj in enumerate(C.legs):
            P = pushout(li, lj)
            k, iso = _match_object(F, P.obj)
            left = F.apply(names[i], k, P.inl.then(iso))
            right = F.apply(names[j], k, P.inr.then(iso))
            pairs.append((i, j, F.values[k].size, left, right))
    return EqualizerDiagram(F.values[base].size, tuple(F.values[n].size for n in names), restrict, tuple(pairs))


def equalizer_verdict(E: EqualizerDiagram) -> dict | None:
    """Matching families through limits of finite sets; ``None`` if ``F(a)`` is exactly them."""
    legs = [FinSet(n) for n in E.leg_sizes]
    # the product of the leg values, with one projection per leg
    if legs:
        apex = legs[0]
        projs = [FinMap.identity(apex)]
        for s in legs[1:]:
            cone = set_product(apex, s)
            projs = [FinMap.unchecked(cone.apex, p.cod, tuple(p.table[k] for k in cone.legs[0].table)) for p in projs]
            projs.append(cone.legs[1])
            apex = cone.apex
    else:
        apex, projs = FinSet(1), []
    keep = FinMap.identity(apex)
    for i, j, n, left, right in E.pairs:
        tgt = FinSet(n)
        u = FinMap.unchecked(apex, tgt, tuple(left[projs[i].table[k]] for k in range(apex.size)))
        v = FinMap.unchecked(apex, tgt, tuple(right[projs[j].table[k]] for k in range(apex.size)))
        sub = set_equalizer(keep.then(u), keep.then(v))
        keep = sub.legs[0].then(keep)
    matching = set(keep.table)
    radix = [1] * len(legs)
    for k in range(len(legs) - 2, -1, -1):
        radix[k] = radix[k + 1] * legs[k + 1].size
    image = []
    for s in range(E.base_size):
        image.append(sum(E.restrict[i][s] * radix[i] for i in range(len(legs))))
    decode = lambda k: [projs[i].table[k] for i in range(len(legs))]  # noqa: E731
    seen: dict[int, int] = {}
    for s, k in enumerate(image):
        if k in seen:
            return {"reason": "not injective", "sections": [seen[k], s], "family": decode(k)}
        seen[k] = s
    for s, k in enumerate(image):
        if k not in matching:
            return {"reason": "restriction is not a matching family", "section": s, "family": decode(k)}
    for k in sorted(matching):
        if k not in seen:
            return {"reason": "matching family not in the image", "family": decode(k)}
    return None


def brute_force_verdict(E: EqualizerDiagram) -> dict | None:
    """The same decision by enumerating every family directly."""
    families = []
    for fam in iproduct(*(range(n) for n in E.leg_sizes)):
        if all(left[fam[i]] == right[fam[j]] for i, j, _, left, right in E.pairs):
            families.append(list(fam))
    restricted = [[E.restrict[i][s] for i in range(len(E.leg_sizes))] for s in range(E.base_size)]
    for s in range(E.base_size):
        for t in range(s):
            if restricted[s] == restricted[t]:
                return {"reason": "not injective", "sections": [t, s], "family": restricted[s]}
    for s, fam in enumerate(restricted):
        if fam not in families:
            return {"reason": "restriction is not a matching family", "section": s, "family": fam}
    for fam in families:
        if fam not in restricted:
            return {"reason": "matching family not in the image", "family": fam}
    return None


def sheaf_equalizer_check(F: FunctorData, C: CoverFamily) -> CheckReport:
    E = equalizer_diagram(F, C)
    w = equalizer_verdict(E)
    return laws_report(f"sheaf_equalizer:{C.name}", [] if w is None else [w], op="sheaf_equalizer_check",
                       details={"families": _product_size(E.leg_sizes)})


def _product_size(sizes: Sequence[int]) -> int:
    n = 1
    for s in sizes:
        n *= s
    return n


def representable_functor(b: CommMonoid, objects: Mapping[str, CommMonoid]) -> FunctorData:
    """``Hom(b, -)`` on the named monoids, with every morphism between them."""
    homs = {k: list(_homs(b, c)) for k, c in objects.items()}
    values = {k: FinSet(len(hs)) for k, hs in homs.items()}
    arrows = {}
    for s, cs in objects.items():
        for t, ct in objects.items():
            for h in _homs(cs, ct):
                index = {tuple(g.table): n for n, g in enumerate(homs[t])}
                arrows[(s, t, tuple(h.table))] = tuple(index[tuple(f.then(h).table)] for f in homs[s])
    return FunctorData(dict(objects), values, arrows)


def constant_functor(objects: Mapping[str, CommMonoid], n: int) -> FunctorData:
    """Value ``{0..n-1}`` everywhere, identities on every morphism."""
    values = {k: FinSet(n) for k in objects}
    arrows = {}
    for s, cs in objects.items():
        for t, ct in objects.items():
            for h in _homs(cs, ct):
                arrows[(s, t, tuple(h.table))] = tuple(range(n))
    return FunctorData(dict(objects), values, arrows)
