import pytest
from hypothesis import given
from hypothesis import strategies as st

from relscheme.commalg import (
    boolean_monoid,
    check_comm_monoid,
    cyclic_group,
    isomorphic_monoids,
    monoid_homs,
    trivial_monoid,
    with_zero,
)
from relscheme.errors import InputCompletenessError, PreconditionError, UnsupportedBaseError
from relscheme.fincore import FinCategory
from relscheme.gluing import (
    GluedFunctorData,
    adjunction_checks,
    adjunction_hat,
    adjunction_tilde,
    check_cmon0,
    check_scheme_condition3,
    cmon0,
    cmon0_monoids,
    free_comm,
    free_comm_data,
    free_hom_gluing,
    hom_monoid,
    identity_gluing,
    is_field_object,
    naturality_check,
    pointed_monoids,
    points,
    representable_data,
    saturating,
    to_pointed,
    unit_of,
)
from relscheme.report import Status

B2_0 = cmon0(["0", "1"], [[0, 0], [0, 1]], 1, 0, name="B2")
CM = cmon0_monoids(3)
PM = pointed_monoids(3)


class TestHomMonoid:
    def test_boolean(self):
        H = hom_monoid(boolean_monoid(True))
        assert H.size == 2
        assert isomorphic_monoids(H, B2_0)
        assert H.zero is not None and H.base.pointed is False

    def test_group_with_zero(self):
        c = with_zero(cyclic_group(2))
        assert len(points(c)) == 3
        assert check_cmon0(hom_monoid(c)).ok

    def test_needs_pointed_base(self):
        with pytest.raises(UnsupportedBaseError):
            hom_monoid(cyclic_group(2))


class TestFreeComm:
    def test_boolean(self):
        F = free_comm(B2_0)
        assert F.base.pointed and F.size == 2
        assert F.table[1][1] == 1
        assert check_comm_monoid(F).ok

    def test_wedge_and_cokernel_sizes(self):
        d = free_comm_data(B2_0)
        # S⁰ ∧ M has |M| + 1 points; the cokernel kills the copy of the zero
        assert d.wedge.size() == B2_0.size + 1
        assert d.obj.size == B2_0.size

    @pytest.mark.parametrize("M", cmon0_monoids(4), ids=lambda m: m.name)
    def test_roundtrip(self, M):
        assert isomorphic_monoids(hom_monoid(free_comm(M)), M)

    def test_requires_absorbing_element(self):
        with pytest.raises(PreconditionError):
            free_comm(cyclic_group(2))


class TestAdjunction:
    @given(st.sampled_from(CM), st.sampled_from(PM))
    def test_hat_tilde_inverse(self, M, a):
        r = adjunction_checks(M, a)
        assert r.ok

    @given(st.sampled_from(CM), st.sampled_from(PM), st.sampled_from(PM))
    def test_natural_in_target(self, M, a, b):
        for g in list(monoid_homs(a, b))[:4]:
            assert naturality_check(M, g).ok

    def test_hat_of_identity_is_canonical_iso(self):
        F = free_comm(B2_0)
        from relscheme.commalg import MonoidMorphism

        h = adjunction_hat(B2_0, MonoidMorphism.identity(F))
        assert h.is_iso()
        assert h.same_as(unit_of(B2_0))

    def test_hat_to_zero_object_is_constant(self):
        F = free_comm(B2_0)
        zero = trivial_monoid(True)
        alpha = next(iter(monoid_homs(F, zero)))
        h = adjunction_hat(B2_0, alpha)
        assert set(h.table) == {0}

    def test_tilde_of_unit_is_identity(self):
        for M in CM:
            t = adjunction_tilde(unit_of(M), free_comm(M))
            assert t.table == tuple(range(free_comm(M).size))

    def test_one_element_monoid(self):
        M = cmon0(["0"], [[0]], 0, 0, name="0")
        F = free_comm(M)
        assert F.size == 1
        # morphisms out of C[0] match morphisms 0 -> C(1, a); only the zero object admits one
        for a in PM:
            n = len(list(monoid_homs(F, a)))
            assert n == len(list(monoid_homs(M, hom_monoid(a))))
            assert n == (1 if a.size == 1 else 0)


class TestFields:
    def test_examples(self):
        assert is_field_object(boolean_monoid(True))
        assert is_field_object(with_zero(cyclic_group(2)))
        assert not is_field_object(saturating(2))

    def test_saturating_shape(self):
        s = saturating(2)
        assert s.size == 3 and s.elements.labels[0] == "2"


class TestGluing:
    def test_identity_gluing_of_monoid_category(self):
        M = FinCategory.from_monoid(["e", "g", "h"], [[0, 1, 2], [1, 2, 0], [2, 0, 1]], 0)
        G = identity_gluing(M)
        assert G.check().ok
        seams = [n for n in G.cat.arrows if n.startswith("S:")]
        assert len(seams) == 3
        assert G.cat.comp(G.delta("*"), G.a_arr(M.identities["*"])) == G.delta("*")

    def test_free_hom_gluing(self):
        G = free_hom_gluing(PM)
        r = G.glued.check()
        assert r.ok and r.details["triples"] > 0
        assert G.glued.delta_naturality().ok

    def test_delta_is_counit_iso(self):
        G = free_hom_gluing(PM)
        B = G.comm.cat
        for b in G.comm.objects:
            _, k = G.glued.seam[G.glued.delta(b)]
            assert B.is_iso(k)

    def test_condition3_on_representables(self):
        G = free_hom_gluing(PM)
        for x in list(G.cmon0.objects)[:3]:
            r = check_scheme_condition3(G, representable_data(G, G.glued.a_obj(x)))
            assert r.status is Status.PASS
            assert len(r.details["not_checked"]) == 2

    def test_condition3_missing_data(self):
        G = free_hom_gluing(PM)
        with pytest.raises(InputCompletenessError):
            check_scheme_condition3(G, GluedFunctorData({}, {}))

    def test_condition3_planted_failure(self):
        G = free_hom_gluing(PM)
        F = representable_data(G, G.glued.a_obj(next(iter(G.cmon0.objects))))
        b = next(b for b, c in G.comm.objects.items() if is_field_object(c))
        d = G.glued.delta(b)
        t = list(F.tables[d])
        if len(t) >= 2:
            t[1] = t[0]
            F.tables[d] = tuple(t)
            r = check_scheme_condition3(G, F)
            assert r.status is Status.FAIL and r.witness["delta"] == d

    def test_to_pointed_keeps_zero_first(self):
        for M in CM:
            P = to_pointed(M)
            assert P.elements.labels[0] == M.elements.labels[M.zero["*"]]
