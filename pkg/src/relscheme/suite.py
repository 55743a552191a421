"""Suite documents: parsing, resolution, deterministic execution and report emission.

A suite is a JSON object with named declarations and an ordered list of
checks.  Every check row names one library operation; its arguments are
declared names (or lists of names) and its ``params`` are literal options.
"""

from __future__ import annotations

import copy
import json
import os
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from . import basechange as bc
from . import gluing as gl
from .actegory import (
    CoherenceBudget,
    check_actegory_coherence,
    diagonal_action,
    digraph,
    digraph_action,
    monoid_category,
    self_action,
)
from .commalg import (
    CommMonoid,
    MonoidMorphism,
    cartesian_sets,
    check_comm_monoid,
    is_epi,
    is_finite_type,
    pointed_sets,
)
from .errors import ParseError, RelSchemeError, ResolutionError, ValidationError
from .fincore.sets import FinMap, FinSet
from .fincore.presheaf import PresheafMap
from .report import CheckReport, Status, Tag, combine, failed, laws_report, passed
from .scalars import (
    Module,
    adjunction_check,
    assoc_iso,
    base_change_iso,
    check_module_laws,
    enumerate_modules,
    free_module,
    pseudofunctor_checks,
    regular_module,
    trivial_module,
)
from .topology import (
    CoverFamily,
    FunctorData,
    ProbeBudget,
    check_fpqc_cover,
    check_spectral_cover,
    check_spectral_immersion,
    conservativity_probe,
    constant_functor,
    flatness_probe,
    pretopology_audit,
    representable_functor,
    sheaf_equalizer_check,
)

ENV_MAX_SIZE = "RELSCHEME_MAX_SIZE"
SECTIONS = ("monoids", "morphisms", "graphs", "actions", "modules", "covers", "adjunctions", "functors")
_TOP = {"name", "seed", "budget", "validate", "checks", *SECTIONS}


# schema helpers


def _need(d: Any, key: str, where: str, kind: type | tuple = object):
    if not isinstance(d, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in d:
        raise ParseError(f"{where}: missing field {key!r}")
    v = d[key]
    if kind is not object and not isinstance(v, kind):
        raise ParseError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return v


def _labels(xs: Any, where: str) -> list[str]:
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise ParseError(f"{where}: expected a list of strings")
    if len(set(xs)) != len(xs):
        raise ParseError(f"{where}: repeated labels")
    return xs


def _index(labels: list[str], x: Any, where: str) -> int:
    if x not in labels:
        raise ParseError(f"{where}: {x!r} is not one of {labels}")
    return labels.index(x)


def budget_from(d: dict | None, base: ProbeBudget, where: str) -> ProbeBudget:
    if not d:
        return base
    allowed = {"max_module_size", "diagram_shapes", "max_test_morphisms", "seed"}
    extra = set(d) - allowed
    if extra:
        raise ParseError(f"{where}: unknown budget fields {sorted(extra)}")
    try:
        return base.but(**d)
    except (TypeError, ValueError) as e:
        raise ParseError(f"{where}: {e}") from e


def default_budget(seed: int = 0, max_size: int | None = None) -> ProbeBudget:
    if max_size is None and os.environ.get(ENV_MAX_SIZE):
        try:
            max_size = int(os.environ[ENV_MAX_SIZE])
        except ValueError as e:
            raise ParseError(f"{ENV_MAX_SIZE} must be an integer") from e
    b = ProbeBudget(seed=seed)
    return b.but(max_module_size=max_size) if max_size is not None else b


# the resolved suite


@dataclass
class CheckSpec:
    op: str
    args: list
    params: dict
    budget: ProbeBudget
    expect: str | None
    check_id: str


@dataclass(eq=False)
class SuiteSpec:
    name: str
    seed: int
    budget: ProbeBudget
    doc: dict
    objects: dict[str, dict[str, Any]] = field(default_factory=dict)
    checks: list[CheckSpec] = field(default_factory=list)

    def to_doc(self) -> dict:
        """The normalized source document; ``parse_suite(s.to_doc())`` reproduces ``s``."""
        return copy.deepcopy(self.doc)


def _normalize(doc: dict) -> dict:
    out = {"name": doc.get("name", "suite"), "seed": doc.get("seed", 0), "validate": doc.get("validate", True)}
    if doc.get("budget"):
        out["budget"] = dict(doc["budget"])
    for s in SECTIONS:
        out[s] = copy.deepcopy(doc.get(s, {}))
    out["checks"] = []
    for c in doc.get("checks", []):
        row = {"op": c["op"], "args": copy.deepcopy(c.get("args", []))}
        for k in ("params", "budget", "expect", "id"):
            if c.get(k) not in (None, {}, ""):
                row[k] = copy.deepcopy(c[k])
        out["checks"].append(row)
    return out


class _Resolver:
    def __init__(self, doc: dict, validate: bool):
        self.doc = doc
        self.validate = validate
        self.cache: dict[tuple[str, str], Any] = {}
        self.active: set = set()

    def get(self, section: str, name: Any, where: str):
        if not isinstance(name, str):
            raise ParseError(f"{where}: expected a declared name")
        key = (section, name)
        if key in self.cache:
            return self.cache[key]
        decl = self.doc[section].get(name)
        if decl is None:
            raise ResolutionError(f"{where}: {section[:-1]} {name!r} is not declared")
        if key in self.active:
            raise ResolutionError(f"{where}: cyclic reference through {name!r}")
        self.active.add(key)
        try:
            obj = getattr(self, f"_build_{section}")(name, decl, f"{section}.{name}")
        except (ParseError, ResolutionError, ValidationError):
            raise
        except (RelSchemeError, ValueError, TypeError, KeyError, IndexError) as e:
            raise ValidationError(f"{section[:-1]} {name!r}: {type(e).__name__}: {e}") from e
        finally:
            self.active.discard(key)
        self.cache[key] = obj
        return obj

    # builders

    def _build_monoids(self, name, d, where):
        els = _labels(_need(d, "elements", where), f"{where}.elements")
        unit = _index(els, _need(d, "unit", where), f"{where}.unit")
        tab = _need(d, "table", where, list)
        n = len(els)
        if len(tab) != n or any(not isinstance(r, list) or len(r) != n for r in tab):
            raise ParseError(f"{where}.table: expected a {n}x{n} table")
        if any(not isinstance(v, int) or not 0 <= v < n for r in tab for v in r):
            raise ParseError(f"{where}.table: entries must be element indices")
        zero = d.get("zero")
        z = None if zero is None else _index(els, zero, f"{where}.zero")
        pointed = bool(d.get("pointed", False))
        m = CommMonoid.from_table(els, tab, unit, zero=z, pointed=pointed, name=name)
        if self.validate:
            rep = check_comm_monoid(m)
            if not rep.ok:
                raise ValidationError(f"monoid {name!r} fails its laws: {rep.witness}")
        return m

    def _build_morphisms(self, name, d, where):
        a = self.get("monoids", _need(d, "dom", where), f"{where}.dom")
        b = self.get("monoids", _need(d, "cod", where), f"{where}.cod")
        mp = _need(d, "map", where, dict)
        la, lb = list(a.elements.labels), list(b.elements.labels)
        if set(mp) != set(la):
            raise ParseError(f"{where}.map: must assign every element of {a.name}")
        t = tuple(_index(lb, mp[x], f"{where}.map.{x}") for x in la)
        h = MonoidMorphism.from_table(a, b, t, name=name)
        if self.validate:
            rep = h.check()
            if not rep.ok:
                raise ValidationError(f"morphism {name!r} is not a monoid morphism: {rep.witness}")
        return h

    def _build_graphs(self, name, d, where):
        vs = _labels(_need(d, "vertices", where), f"{where}.vertices")
        edges = _need(d, "edges", where, list)
        es = []
        for k, e in enumerate(edges):
            w = f"{where}.edges[{k}]"
            es.append((_need(e, "id", w, str), _need(e, "src", w, str), _need(e, "tgt", w, str)))
            for end in es[-1][1:]:
                _index(vs, end, w)
        return digraph(vs, es)

    def _build_actions(self, name, d, where):
        kind = _need(d, "kind", where, str)
        if kind == "self":
            return self_action(pointed_sets() if d.get("pointed") else cartesian_sets())
        if kind == "diagonal":
            return diagonal_action(_labels(_need(d, "J", where), f"{where}.J"), cartesian_sets())
        if kind == "digraph":
            mon = _need(d, "monoid", where, dict)
            els = _labels(_need(mon, "elements", f"{where}.monoid"), f"{where}.monoid.elements")
            M = monoid_category(els, _need(mon, "table", f"{where}.monoid"),
                                _index(els, _need(mon, "unit", f"{where}.monoid"), f"{where}.monoid.unit"),
                                name=f"{name}.M")
            return digraph_action(M, _need(d, "source_twist", where, str), _need(d, "target_twist", where, str))
        raise ParseError(f"{where}.kind: unknown action kind {kind!r}")

    def scalars(self, a: CommMonoid, A):
        """``a`` moved into the base of ``A`` when that base has more than one index arrow."""
        if A.base is a.base:
            return a
        return bc.constant_monoid(a, A.base.index)

    def scalar_morphism(self, h: MonoidMorphism, A):
        if A.base is h.dom.base:
            return h
        return bc.constant_morphism(h, A.base.index)

    def _carrier(self, d, A, where):
        if "graph" in d:
            return self.get("graphs", d["graph"], f"{where}.graph")
        els = _labels(_need(d, "carrier", where), f"{where}.carrier")
        if len(A.M.index.objects) != 1:
            raise ParseError(f"{where}: this action needs a graph carrier")
        return A.M.of_set(FinSet.of(els))

    def _build_modules(self, name, d, where):
        A = self.get("actions", _need(d, "action", where), f"{where}.action")
        a = self.scalars(self.get("monoids", _need(d, "over", where), f"{where}.over"), A)
        kind = d.get("kind", "table")
        if kind == "regular":
            m = regular_module(A, a)
        elif kind == "free":
            m = free_module(A, a, self._carrier(d, A, where), name=name)
        elif kind == "trivial":
            m = trivial_module(A, a, self._carrier(d, A, where), name=name)
        elif kind == "table":
            if A.M is not A.base or len(A.M.index.objects) != 1:
                raise ParseError(f"{where}: action tables are supported for the self-action only")
            c = self._carrier(d, A, where)
            rows = _need(d, "table", where, list)
            na, nc = a.size, c.size()
            if len(rows) != na or any(not isinstance(r, list) or len(r) != nc for r in rows):
                raise ParseError(f"{where}.table: expected {na} rows of length {nc}")
            dom = A.act_obj(a.carrier, c)
            t = [0] * dom.size()
            for s in range(na):
                for j in range(nc):
                    k = A.M.pair(na, nc, s, j)
                    if A.M.pointed and (s == 0 or j == 0):
                        continue
                    t[k] = rows[s][j]
            act = PresheafMap(dom, c, {"*": FinMap(dom.sets["*"], c.sets["*"], tuple(t))})
            m = Module(A, a, c, act, name=name)
        else:
            raise ParseError(f"{where}.kind: unknown module kind {kind!r}")
        m.name = name
        if self.validate:
            rep = check_module_laws(m)
            if not rep.ok:
                raise ValidationError(f"module {name!r} fails its laws: {rep.witness}")
        return m

    def _build_covers(self, name, d, where):
        base = self.get("monoids", _need(d, "base", where), f"{where}.base")
        legs = [self.get("morphisms", l, f"{where}.legs") for l in _need(d, "legs", where, list)]
        sub = _need(d, "finite_subset", where, list)
        return CoverFamily(base, legs, sub, name=name)

    def _build_adjunctions(self, name, d, where):
        kind = _need(d, "kind", where, str)
        base = pointed_sets() if d.get("pointed") else cartesian_sets()
        if kind == "identity":
            return bc.MonoidalAdjunctionData.identity(base)
        if kind == "diagonal":
            return bc.diagonal_adjunction(_labels(_need(d, "J", where), f"{where}.J"), base)
        raise ParseError(f"{where}.kind: unknown adjunction kind {kind!r}")

    def _build_functors(self, name, d, where):
        kind = _need(d, "kind", where, str)
        objs = {o: self.get("monoids", o, f"{where}.objects") for o in _need(d, "objects", where, list)}
        if kind == "representable":
            return representable_functor(self.get("monoids", _need(d, "at", where), f"{where}.at"), objs)
        if kind == "constant":
            return constant_functor(objs, _need(d, "size", where, int))
        if kind == "table":
            vals = _need(d, "values", where, dict)
            values = {o: FinSet(int(vals[o])) for o in objs if o in vals}
            arrows = {}
            for k, e in enumerate(_need(d, "arrows", where, list)):
                w = f"{where}.arrows[{k}]"
                h = self.get("morphisms", _need(e, "morphism", w, str), w)
                s = next((o for o, c in objs.items() if c is h.dom), None)
                t = next((o for o, c in objs.items() if c is h.cod), None)
                if s is None or t is None:
                    raise ResolutionError(f"{w}: morphism endpoints are not functor objects")
                arrows[(s, t, tuple(h.table))] = tuple(_need(e, "table", w, list))
            return FunctorData(objs, values, arrows)
        raise ParseError(f"{where}.kind: unknown functor kind {kind!r}")


def parse_suite(document: dict | str, validate: bool | None = None) -> SuiteSpec:
    """Check the schema, resolve every name, and (unless deferred) validate the laws of each declaration."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(document, dict):
        raise ParseError("$: a suite is a JSON object")
    extra = set(document) - _TOP
    if extra:
        raise ParseError(f"$: unknown top-level fields {sorted(extra)}")
    for s in SECTIONS:
        if not isinstance(document.get(s, {}), dict):
            raise ParseError(f"$.{s}: expected an object of named declarations")
    if not isinstance(document.get("checks", []), list):
        raise ParseError("$.checks: expected a list")
    if not isinstance(document.get("seed", 0), int):
        raise ParseError("$.seed: expected an integer")
    for k, c in enumerate(document.get("checks", [])):
        if not isinstance(c, dict) or not isinstance(c.get("op"), str):
            raise ParseError(f"$.checks[{k}]: each check needs an 'op' string")
        if c["op"] not in OPS:
            raise ParseError(f"$.checks[{k}].op: unknown operation {c['op']!r}")
        if c.get("expect") not in (None, *[s.value for s in Status]):
            raise ParseError(f"$.checks[{k}].expect: not a status")
    doc = _normalize(document)
    if validate is not None:
        doc["validate"] = validate
    seed = doc["seed"]
    base = budget_from(doc.get("budget"), default_budget(seed), "$.budget")
    R = _Resolver(doc, doc["validate"])
    for s in SECTIONS:
        for name in doc[s]:
            R.get(s, name, f"$.{s}")
    spec = SuiteSpec(doc["name"], seed, base, doc)
    spec.objects = {s: {n: R.cache[(s, n)] for n in doc[s]} for s in SECTIONS}
    spec.resolver = R
    seen_ids: dict[str, int] = {}
    for k, c in enumerate(doc["checks"]):
        where = f"$.checks[{k}]"
        args = [_resolve_arg(R, OPS[c["op"]].kinds, i, a, f"{where}.args[{i}]") for i, a in enumerate(c["args"])]
        cid = c.get("id") or f"{c['op']}({','.join(_argname(a) for a in c['args'])})"
        seen_ids[cid] = seen_ids.get(cid, 0) + 1
        if seen_ids[cid] > 1:
            cid = f"{cid}#{seen_ids[cid]}"
        spec.checks.append(CheckSpec(c["op"], args, dict(c.get("params", {})),
                                     budget_from(c.get("budget"), base, f"{where}.budget"),
                                     c.get("expect"), cid))
    return spec


def _argname(a) -> str:
    return "[" + ",".join(map(str, a)) + "]" if isinstance(a, list) else str(a)


def _resolve_arg(R: _Resolver, kinds: tuple[str, ...], i: int, a, where: str):
    if i >= len(kinds):
        raise ParseError(f"{where}: too many arguments")
    kind = kinds[i]
    if kind.endswith("*"):
        if not isinstance(a, list):
            raise ParseError(f"{where}: expected a list of names")
        return [R.get(kind[:-1], x, where) for x in a]
    return R.get(kind, a, where)


# operations


@dataclass(frozen=True)
class Op:
    kinds: tuple[str, ...]
    run: Callable[..., CheckReport]
    required: int


def _op(*kinds: str, required: int | None = None):
    def deco(fn):
        OPS[fn.__name__.lstrip("_")] = Op(kinds, fn, len(kinds) if required is None else required)
        return fn
    return deco


OPS: dict[str, Op] = {}


@_op("monoids")
def _check_comm_monoid(c, a, p, b):
    return check_comm_monoid(a[0])


@_op("modules")
def _check_module_laws(c, a, p, b):
    return check_module_laws(a[0])


@_op("actions")
def _check_actegory_coherence(c, a, p, b):
    return check_actegory_coherence(a[0], CoherenceBudget(max_size=b.max_module_size))


@_op("morphisms", "actions")
def _adjunction_sweep(c, a, p, b):
    """Transposes and both triangle identities for every pair of modules up to ``max_size``."""
    alpha, A = a
    size = int(p.get("max_size", b.max_module_size))
    ms = enumerate_modules(A, alpha.dom, size)
    ns = enumerate_modules(A, alpha.cod, size)
    items = []
    for m in ms:
        for n in ns:
            items.append(adjunction_check(alpha, m, n))
    for m in ms:
        items.append(_tri(alpha, m, None))
    for n in ns:
        items.append(_tri(alpha, None, n))
    bad = [i for i in items if not i.ok]
    return laws_report(c.check_id, [bad[0].witness] if bad else [], op="adjunction_transpose",
                       details={"module_pairs": len(ms) * len(ns), "failures": len(bad)})


def _tri(alpha, m, n):
    from .scalars import triangle_identities

    return triangle_identities(alpha, m, n)


@_op("morphisms", "morphisms", "actions")
def _assoc_iso(c, a, p, b):
    alpha, beta, A = a
    objs = list(A.M.objects_up_to(int(p.get("max_size", 2))))[: int(p.get("max_objects", 4))]
    return combine(c.check_id, [assoc_iso(alpha, beta, m, A=A).report for m in objs], op="assoc_iso")


@_op("morphisms", "morphisms", "morphisms", "modules")
def _assoc_iso_relative(c, a, p, b):
    alpha, beta, gamma, m = a
    return assoc_iso(alpha, beta, m, gamma=gamma).report


@_op("morphisms", "morphisms", "modules*")
def _pseudofunctor_checks(c, a, p, b):
    return pseudofunctor_checks(a[0], a[1], a[2])


@_op("morphisms", "morphisms", "modules")
def _base_change_iso(c, a, p, b):
    return base_change_iso(*a).report


@_op("morphisms", "actions")
def _flatness_probe(c, a, p, b):
    return flatness_probe(a[0], a[1], b).report(c.check_id)


@_op("morphisms*", "actions")
def _conservativity_probe(c, a, p, b):
    return conservativity_probe(a[0], a[1], b).report(c.check_id)


@_op("covers", "actions")
def _check_fpqc_cover(c, a, p, b):
    return check_fpqc_cover(a[0], a[1], b)


@_op("morphisms", "actions")
def _check_spectral_immersion(c, a, p, b):
    return check_spectral_immersion(a[0], a[1], b)


@_op("covers", "actions")
def _check_spectral_cover(c, a, p, b):
    return check_spectral_cover(a[0], a[1], b)


@_op("covers*", "morphisms*", "actions")
def _pretopology_audit(c, a, p, b):
    return pretopology_audit(a[0], a[1], a[2], b)


@_op("morphisms")
def _is_epi(c, a, p, b):
    ok, w = is_epi(a[0])
    return passed(c.check_id, op="is_epi") if ok else failed(c.check_id, w, op="is_epi")


@_op("morphisms")
def _is_finite_type(c, a, p, b):
    return is_finite_type(a[0])


@_op("functors", "covers")
def _sheaf_equalizer_check(c, a, p, b):
    return sheaf_equalizer_check(a[0], a[1])


_LINEAR = {
    "identity": lambda base: bc.identity_linear(self_action(base)),
    "plus_point": bc.plus_point_functor,
}


@_op("morphisms", "adjunctions", "modules")
def _check_theta_iso(c, a, p, b):
    alpha, adj, n = a
    kind = p.get("functor", "identity")
    if kind not in _LINEAR:
        raise ValidationError(f"unknown linear functor {kind!r}")
    L = _LINEAR[kind](alpha.dom.base)
    return bc.check_theta_iso(alpha, adj, L, n, b)


@_op("covers", "adjunctions")
def _transport_cover_check(c, a, p, b):
    C, adj = a
    N = self_action(adj.B.cod)
    src = bc.restrict_action(adj.B, N, check=False)
    M = self_action(adj.B.dom)
    L = bc.LaxLinearFunctor(src, M, None, None, None, name="transport")
    return bc.transport_cover_check(C, adj, L, b)


@_op("monoids")
def _hom_monoid(c, a, p, b):
    H = gl.hom_monoid(a[0])
    return passed(c.check_id, op="hom_monoid", details={"hom_monoid": H.to_doc()})


@_op("monoids")
def _free_comm_roundtrip(c, a, p, b):
    from .commalg import isomorphic_monoids

    M = a[0]
    F = gl.free_comm(M)
    items = [check_comm_monoid(F)]
    back = gl.hom_monoid(F)
    ok = isomorphic_monoids(back, M) and back.zero is not None
    items.append(laws_report("roundtrip", [] if ok else [{"free": F.to_doc(), "back": back.to_doc()}],
                             op="free_comm"))
    return combine(c.check_id, items, op="free_comm", details={"free": F.to_doc()})


@_op("monoids", "monoids")
def _hat_tilde(c, a, p, b):
    return gl.adjunction_checks(a[0], a[1])


@_op("monoids")
def _is_field_object(c, a, p, b):
    H = gl.hom_monoid(a[0])
    if gl.is_field_object(a[0]):
        return passed(c.check_id, op="is_field_object")
    t, e, z = H.table, H.e, H.zero["*"]
    bad = next(x for x in range(H.size) if x != z and all(t[x][y] != e for y in range(H.size)))
    return failed(c.check_id, {"non_invertible": H.elements.labels[bad]}, op="is_field_object")


@_op("monoids*")
def _glue(c, a, p, b):
    G = gl.free_hom_gluing(a[0])
    return combine(c.check_id, [G.glued.check(), G.glued.delta_naturality()], op="glue")


@_op("monoids*", "monoids")
def _check_scheme_condition3(c, a, p, b):
    G = gl.free_hom_gluing(a[0])
    at = gl.hom_monoid(a[1])
    x = G.cmon0.find_object(at, gl._monoid_key)
    return gl.check_scheme_condition3(G, gl.representable_data(G, G.glued.a_obj(x)))


@_op()
def _acceptance(c, a, p, b):
    """One acceptance criterion, selected by ``params.number``."""
    from .acceptance import CRITERIA

    k = p.get("number")
    crit = next((x for x in CRITERIA if x.number == k), None)
    if crit is None:
        raise ValidationError(f"no acceptance criterion {k!r}")
    return crit.run(b.seed)


# running and emitting


def _sanitize(x):
    if isinstance(x, dict):
        return {str(k): _sanitize(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_sanitize(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def _run_one(c: CheckSpec) -> CheckReport:
    op = OPS[c.op]
    t0 = time.perf_counter()
    try:
        if len(c.args) < op.required:
            raise ValidationError(f"{c.op} needs {op.required} arguments")
        r = op.run(c, c.args, c.params, c.budget)
    except Exception as e:  # a crash becomes an ERROR row, never aborts the suite
        r = CheckReport(c.check_id, Status.ERROR, op=c.op,
                        details={"error": f"{type(e).__name__}: {e}",
                                 "where": traceback.extract_tb(e.__traceback__)[-1].name})
    r.check_id = c.check_id
    r.op = c.op
    r.witness = _sanitize(r.witness)
    r.details = _sanitize(r.details)
    if c.expect is not None:
        seen = r.status.value
        if seen == c.expect:
            r = CheckReport(c.check_id, Status.PASS, r.tags, op=c.op, items=[r],
                            details={"expected": c.expect, "observed": seen})
        else:
            r = CheckReport(c.check_id, Status.FAIL, r.tags, op=c.op, items=[r],
                            witness={"expected": c.expect, "observed": seen},
                            budget=r.budget)
    r.timing = time.perf_counter() - t0
    return r


def run_suite(S: SuiteSpec, jobs: int = 1) -> list[CheckReport]:
    """Reports in declaration order; with ``jobs > 1`` checks run on a thread pool."""
    if jobs <= 1:
        return [_run_one(c) for c in S.checks]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_run_one, S.checks))


REPORT_SCHEMA = "relscheme-report/1"


def emit_report(reports: list[CheckReport], format: str = "structured", suite: SuiteSpec | None = None) -> str:
    if format == "structured":
        doc = {
            "schema": REPORT_SCHEMA,
            "suite": None if suite is None else suite.name,
            "seed": None if suite is None else suite.seed,
            "summary": summarize(reports),
            "reports": [r.to_dict() for r in reports],
        }
        return json.dumps(_sanitize(doc), indent=2, sort_keys=True) + "\n"
    if format != "human":
        raise ValueError(f"unknown format {format!r}")
    head = "relscheme verification report"
    if suite is not None:
        head += f"  suite={suite.name}  seed={suite.seed}"
    lines = [head, "=" * len(head)]
    for r in reports:
        exp = f"; expected {r.details['expected']}" if "expected" in r.details else ""
        lines.append(f"[{r.status.value}] {r.check_id}  ({'/'.join(t.value for t in r.tags)}; op {r.op}{exp})")
        if r.witness is not None:
            lines.append(f"    witness: {json.dumps(_sanitize(r.witness), sort_keys=True)}")
        for f in r.failures():
            if f is not r and f.witness is not None:
                lines.append(f"    {f.check_id}: {json.dumps(_sanitize(f.witness), sort_keys=True)}")
        if r.status is Status.PASSED_WITHIN_BUDGET and r.budget:
            lines.append(f"    budget: {json.dumps(r.budget, sort_keys=True)}")
        if r.status is Status.ERROR:
            lines.append(f"    error: {r.details.get('error')}")
    s = summarize(reports)
    lines.append("-" * len(head))
    lines.append(f"{s['total']} checks: " + ", ".join(f"{k} {v}" for k, v in s["by_status"].items()))
    return "\n".join(lines) + "\n"


def summarize(reports: list[CheckReport]) -> dict:
    by = {}
    for st in Status:
        n = sum(1 for r in reports if r.status is st)
        if n:
            by[st.value] = n
    return {"total": len(reports), "by_status": by,
            "ok": not any(r.status in (Status.FAIL, Status.ERROR) for r in reports)}


def load_suite(path: str, validate: bool | None = None) -> SuiteSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_suite(fh.read(), validate=validate)


SHIPPED = ("corpus", "acceptance")


def shipped_corpus_path(name: str = "corpus") -> str:
    """Path of a suite document shipped with the package: ``corpus`` or ``acceptance``."""
    from importlib.resources import files

    if name not in SHIPPED:
        raise ValueError(f"no shipped suite {name!r}")
    return str(files("relscheme") / "data" / f"{name}.json")
