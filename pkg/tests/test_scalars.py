import pytest
from hypothesis import given
from hypothesis import strategies as st

from relscheme.actegory import self_action
from relscheme.commalg import (
    MonoidMorphism,
    boolean_monoid,
    cartesian_sets,
    cyclic_group,
    monoid_homs,
    pushout,
    to_trivial,
    trivial_monoid,
    unit_morphism,
)
from relscheme.errors import ShapeError
from relscheme.fincore import FinMap, FinSet, PresheafMap
from relscheme.report import Status
from relscheme.scalars import (
    Module,
    ModuleMorphism,
    adjunction_check,
    adjunction_cotranspose,
    adjunction_transpose,
    assoc_iso,
    base_change_iso,
    check_equivariance,
    check_module_laws,
    counit_at,
    enumerate_modules,
    extend_scalars,
    extend_scalars_morphism,
    free_module,
    identity_collapse,
    is_module_iso,
    module_homs,
    modules_isomorphic,
    pseudofunctor_checks,
    regular_module,
    restrict_scalars,
    triangle_identities,
    trivial_module,
    unit_at,
)

from strategies import SMALL_MONOIDS

S = cartesian_sets()
A = self_action(S)
ONE, Z2, B2 = trivial_monoid(), cyclic_group(2), boolean_monoid()


def mods(a, k=2):
    return enumerate_modules(A, a, k)


@st.composite
def adjunction_instances(draw):
    a = draw(st.sampled_from(SMALL_MONOIDS))
    bs = [b for b in SMALL_MONOIDS if any(True for _ in monoid_homs(a, b))]
    b = draw(st.sampled_from(bs))
    h = draw(st.sampled_from(list(monoid_homs(a, b))))
    m = draw(st.sampled_from(mods(a)))
    n = draw(st.sampled_from(mods(b)))
    return h, m, n


class TestModules:
    def test_named_modules_satisfy_laws(self):
        X = S.of_set(FinSet(2))
        for m in (regular_module(A, Z2), free_module(A, B2, X), trivial_module(A, Z2, X)):
            assert check_module_laws(m).ok

    def test_bad_action_reports_witness(self):
        X = S.of_set(FinSet(2))
        good = trivial_module(A, Z2, X)
        dom = good.action.dom
        # the generator sends everything to the first element: not a unital action
        act = PresheafMap(dom, X, {"*": FinMap(dom.sets["*"], X.sets["*"], (0, 0, 0, 0))})
        r = check_module_laws(Module(A, Z2, X, act))
        assert r.status is Status.FAIL and r.witness

    def test_enumeration_is_up_to_iso(self):
        ms = mods(Z2, 3)
        assert [m.carrier.size() for m in ms] == [0, 1, 2, 2, 3, 3]
        for i, m in enumerate(ms):
            for n in ms[i + 1:]:
                assert not modules_isomorphic(m, n)

    def test_module_homs_are_equivariant(self):
        for m in mods(B2):
            for n in mods(B2):
                for phi in module_homs(m, n):
                    assert check_equivariance(phi).ok


class TestRestriction:
    def test_composite(self):
        one_to_z2 = unit_morphism(Z2, ONE)
        z2_to_b2 = MonoidMorphism.from_table(Z2, B2, (1, 1))
        n = regular_module(A, B2)
        lhs = restrict_scalars(one_to_z2.then(z2_to_b2), n)
        rhs = restrict_scalars(one_to_z2, restrict_scalars(z2_to_b2, n))
        assert lhs.carrier.same_as(rhs.carrier)
        assert lhs.action.same_as(rhs.action)

    def test_requires_matching_codomain(self):
        with pytest.raises(ShapeError):
            restrict_scalars(unit_morphism(Z2, ONE), regular_module(A, B2))


class TestExtension:
    def test_identity_collapse(self):
        for m in mods(B2):
            assert identity_collapse(m).ok

    def test_collapse_of_regular_z2_is_orbit_set(self):
        ext = extend_scalars(to_trivial(Z2, ONE), regular_module(A, Z2))
        assert ext.module.carrier.size() == 1

    def test_quotient_map_is_not_an_iso(self):
        ext = extend_scalars(to_trivial(Z2, ONE), regular_module(A, Z2))
        assert not ext.coeq.is_iso()

    def test_functorial(self):
        h = to_trivial(B2, ONE)
        ms = mods(B2)
        for x in ms:
            for y in ms:
                for z in ms:
                    for f in list(module_homs(x, y))[:3]:
                        for g in list(module_homs(y, z))[:3]:
                            lhs = extend_scalars_morphism(h, f.then(g))
                            rhs = extend_scalars_morphism(h, f).then(extend_scalars_morphism(h, g))
                            assert lhs.same_as(rhs)


class TestAdjunction:
    @given(adjunction_instances())
    def test_transpose_bijection(self, inst):
        h, m, n = inst
        assert adjunction_check(h, m, n).ok

    @given(adjunction_instances())
    def test_triangles(self, inst):
        h, m, n = inst
        assert triangle_identities(h, m, n).ok

    def test_roundtrip_and_naturality(self):
        h = unit_morphism(B2, ONE)
        for m in mods(ONE):
            ext = extend_scalars(h, m)
            for n in mods(B2):
                for n2 in mods(B2):
                    xis = list(module_homs(n, n2))
                    for phi in module_homs(ext.module, n):
                        flat = adjunction_transpose(h, phi, ext)
                        assert adjunction_cotranspose(h, flat, n, ext).same_as(phi)
                        for xi in xis[:3]:
                            lhs = adjunction_transpose(h, phi.then(xi), ext)
                            assert lhs.map.same_as(flat.map.then(xi.map))

    def test_cotranspose_from_trivial_monoid(self):
        # ψ̲(u, x) = u·ψ(x)
        h = unit_morphism(Z2, ONE)
        m = trivial_module(A, ONE, S.of_set(FinSet(2)))
        n = regular_module(A, Z2)
        rn = restrict_scalars(h, n)
        ext = extend_scalars(h, m)
        for psi in module_homs(m, rn):
            sharp = adjunction_cotranspose(h, psi, n, ext)
            for u in range(2):
                for x in range(2):
                    k = A.pair("*", Z2.carrier, m.carrier, u, x)
                    cls = ext.coeq["*"](k)
                    assert sharp.map["*"](cls) == Z2.table[u][psi.map["*"](x)]

    def test_identity_unit_and_counit_are_isos(self):
        ida = MonoidMorphism.identity(B2)
        for m in mods(B2):
            assert is_module_iso(unit_at(ida, m))
            assert is_module_iso(counit_at(ida, m))


class TestComparisons:
    def test_assoc_over_trivial(self):
        u2, ub = unit_morphism(Z2, ONE), unit_morphism(B2, ONE)
        for m in list(S.objects_up_to(2)):
            c = assoc_iso(u2, ub, m, A=A)
            assert c.ok
            assert c.cod.carrier.size() == 4 * m.size()

    def test_relative_with_identity_reduces(self):
        u2, ub = unit_morphism(Z2, ONE), unit_morphism(B2, ONE)
        gam = MonoidMorphism.identity(B2)
        for m in mods(B2):
            c = assoc_iso(u2, ub, m, gamma=gam)
            assert c.ok
            assert c.dom.carrier.size() == 2 * m.carrier.size()

    def test_pseudofunctor(self):
        u2 = unit_morphism(Z2, ONE)
        to_b2 = MonoidMorphism.from_table(Z2, B2, (1, 1))
        assert pseudofunctor_checks(u2, to_b2, mods(ONE)).status is Status.PASS

    def test_base_change_through_trivial(self):
        c2 = to_trivial(Z2, ONE)
        for m in mods(ONE):
            c = base_change_iso(c2, c2, m)
            assert c.ok
            assert c.dom.carrier.size() == c.cod.carrier.size() == m.carrier.size()

    def test_base_change_over_b2_square(self):
        ub = unit_morphism(B2, ONE)
        assert pushout(ub, ub).obj.size == 4
        for m in mods(B2):
            assert base_change_iso(ub, ub, m).ok

    def test_base_change_along_identity(self):
        u2 = unit_morphism(Z2, ONE)
        for m in mods(ONE):
            c = base_change_iso(u2, MonoidMorphism.identity(ONE), m)
            assert c.ok
            assert c.dom.carrier.size() == 2 * m.carrier.size()
