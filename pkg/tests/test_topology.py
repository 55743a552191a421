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
    to_trivial,
    trivial_monoid,
    unit_morphism,
)
from relscheme.corpus import cover_corpus, random_sheaf_instances
from relscheme.errors import InputCompletenessError, ShapeError
from relscheme.report import Status, Tag
from relscheme.topology import (
    CoverFamily,
    FunctorData,
    ProbeBudget,
    brute_force_verdict,
    check_fpqc_cover,
    check_spectral_cover,
    check_spectral_immersion,
    compose_covers,
    conservativity_probe,
    constant_functor,
    equalizer_diagram,
    equalizer_verdict,
    flatness_probe,
    pretopology_audit,
    pullback_cover,
    representable_functor,
    sheaf_equalizer_check,
)

A = self_action(cartesian_sets())
ONE, Z2, B2 = trivial_monoid(), cyclic_group(2), boolean_monoid()


class TestFlatness:
    def test_unit_of_z2_refuted_by_terminal(self):
        v = flatness_probe(unit_morphism(Z2, ONE), A)
        assert v.refuted
        assert v.witness["diagram"]["shape"] == "terminal"
        assert v.witness["extended_limit_size"] == 2 and v.witness["limit_of_extensions_size"] == 1

    def test_collapse_of_z2_refuted_by_product(self):
        v = flatness_probe(to_trivial(Z2, ONE), A)
        assert v.refuted
        assert v.witness["diagram"]["shape"] == "product"
        assert v.witness["diagram"]["total_size"] <= 4

    def test_identity_passes_within_budget(self):
        r = flatness_probe(MonoidMorphism.identity(B2), A).report()
        assert r.status is Status.PASSED_WITHIN_BUDGET
        assert Tag.BUDGET in r.tags and r.budget["max_module_size"] == 2

    @given(st.sampled_from(["terminal", "product", "equalizer", "pullback"]))
    def test_isomorphisms_pass_every_shape(self, shape):
        B = ProbeBudget(diagram_shapes=(shape,))
        for h in monoid_homs(Z2, Z2):
            if h.is_iso():
                assert not flatness_probe(h, A, B).refuted

    def test_budget_validation(self):
        with pytest.raises(ValueError):
            ProbeBudget(max_module_size=0)
        with pytest.raises(ValueError):
            ProbeBudget(diagram_shapes=("pushout",))


class TestCovers:
    def test_orbit_collapse_becomes_iso(self):
        v = conservativity_probe([to_trivial(Z2, ONE)], A)
        assert v.refuted
        assert v.witness["dom"]["size"] == 2 and v.witness["cod"]["size"] == 1

    def test_iso_family(self):
        z3 = cyclic_group(3)
        auts = [h for h in monoid_homs(z3, z3) if h.is_iso()]
        assert len(auts) == 2
        assert check_fpqc_cover(CoverFamily(z3, auts, [1]), A).status is Status.PASSED_WITHIN_BUDGET

    def test_family_with_unit_of_z2_fails_flatness(self):
        r = check_fpqc_cover(CoverFamily.singleton(unit_morphism(Z2, ONE)), A)
        assert r.status is Status.FAIL
        assert r.items[0].witness["diagram"]["shape"] == "terminal"

    def test_spectral_immersion_needs_epi(self):
        r = check_spectral_immersion(unit_morphism(Z2, ONE), A)
        assert {i.check_id: i.status for i in r.items}["epi"] is Status.FAIL

    def test_spectral_cover(self):
        assert check_spectral_cover(CoverFamily.identity(B2), A).ok
        assert not check_spectral_cover(CoverFamily.singleton(unit_morphism(B2, ONE)), A).ok

    def test_leg_domain_checked(self):
        with pytest.raises(ShapeError):
            CoverFamily(Z2, [MonoidMorphism.identity(B2)], [0])

    def test_pullback_of_iso_cover_is_iso_cover(self):
        auts = [h for h in monoid_homs(Z2, Z2) if h.is_iso()]
        C = CoverFamily(Z2, auts, [0])
        for beta in monoid_homs(Z2, B2):
            P = pullback_cover(C, beta)
            assert all(l.is_iso() for l in P.legs)
            assert P.base.same_as(B2)

    def test_compose_with_identity_refinements(self):
        covers, _ = cover_corpus()
        C = covers[-1]
        refs = [CoverFamily.identity(l.cod) for l in C.legs]
        D = compose_covers(C, refs)
        assert [l.table for l in D.legs] == [l.table for l in C.legs]

    def test_audit_flags_planted_non_cover(self):
        covers, morphisms = cover_corpus()
        bad = CoverFamily.singleton(unit_morphism(Z2, ONE), name="planted")
        r = pretopology_audit(covers[:2] + [bad], morphisms[:2], A)
        failing = [i.check_id for i in r.items if not i.ok]
        assert failing == ["cover:planted"]

    def test_empty_audit_is_vacuous(self):
        r = pretopology_audit([], [], A)
        assert r.ok and r.items == []


class TestSheaves:
    def test_representable_on_iso_cover(self):
        objs = {"one": ONE, "z2": Z2, "b2": B2}
        F = representable_functor(B2, objs)
        auts = [h for h in monoid_homs(Z2, Z2) if h.is_iso()]
        assert sheaf_equalizer_check(F, CoverFamily(Z2, auts, [0])).status is Status.PASS

    def test_planted_mismatch_fails(self):
        objs = {"one": ONE, "z2": Z2}
        F = constant_functor(objs, 2)
        c2 = to_trivial(Z2, ONE)
        # collapse both sections along the legs
        F.arrows[("z2", "one", tuple(c2.table))] = (0, 0)
        r = sheaf_equalizer_check(F, CoverFamily(Z2, [c2, c2], [0, 1]))
        assert r.status is Status.FAIL
        assert r.witness["sections"] == [0, 1]

    def test_missing_values_reported(self):
        F = FunctorData({"z2": Z2}, {}, {})
        with pytest.raises(InputCompletenessError):
            sheaf_equalizer_check(F, CoverFamily.identity(Z2))

    @given(st.integers(0, 10_000))
    def test_agrees_with_brute_force(self, seed):
        for F, C, _ in random_sheaf_instances(seed=seed, count=3, max_total=60):
            E = equalizer_diagram(F, C)
            assert (equalizer_verdict(E) is None) == (brute_force_verdict(E) is None)
