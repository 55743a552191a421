import pytest

from relscheme.actegory import LaxLinearFunctor, restrict_action, self_action
from relscheme.basechange import (
    MonoidalAdjunctionData,
    check_theta_iso,
    coequalizer_preservation,
    compute_theta,
    constant_monoid,
    constant_morphism,
    diagonal_adjunction,
    identity_linear,
    induced_module_functor,
    monoid_image,
    morphism_image,
    plus_point_functor,
    presheaf_linear_functor,
    transport_cover_check,
    transported_module_laws,
)
from relscheme.commalg import (
    MonoidMorphism,
    boolean_monoid,
    cartesian_sets,
    check_comm_monoid,
    cyclic_group,
    trivial_monoid,
    unit_morphism,
)
from relscheme.errors import InputCompletenessError
from relscheme.fincore import FinCategory, FinFunctor
from relscheme.report import Status
from relscheme.scalars import check_module_laws, enumerate_modules, regular_module
from relscheme.topology import CoverFamily

S = cartesian_sets()
A = self_action(S)
ONE, Z2, B2 = trivial_monoid(), cyclic_group(2), boolean_monoid()
U2 = unit_morphism(Z2, ONE)


def phi_hat():
    X = FinCategory.discrete(["a", "b"], name="X2")
    P = FinCategory.parallel_pair()
    phi = FinFunctor(X, P, {"a": "0", "b": "1"}, {"id_a": "id0", "id_b": "id1"}, name="Phi")
    return presheaf_linear_functor(phi), P


class TestAdjunctionData:
    def test_identity(self):
        assert MonoidalAdjunctionData.identity(S).check().ok

    def test_diagonal(self):
        D = diagonal_adjunction(["l", "r"], S)
        assert D.check().ok
        img = monoid_image(D.B, Z2)
        assert check_comm_monoid(img).ok
        assert img.carrier.size() == 4  # one copy per index

    def test_images_are_cached_and_functorial(self):
        D = diagonal_adjunction(["l", "r"], S)
        assert monoid_image(D.B, Z2) is monoid_image(D.B, Z2)
        h = morphism_image(D.B, U2)
        assert h.check().ok


class TestInducedModules:
    def test_presheaf_functor_transports_modules(self):
        L, P = phi_hat()
        a = constant_monoid(Z2, P)
        N = L.source.params["inner"]
        ms = enumerate_modules(N, a, 2)
        assert transported_module_laws(L, a, ms).ok

    def test_identity_transport(self):
        L = identity_linear(A)
        F = induced_module_functor(L, B2)
        for m in enumerate_modules(A, B2, 2):
            t = F.on_module(m)
            assert check_module_laws(t).ok
            assert t.carrier.size() == m.carrier.size()

    def test_plus_point_is_lax(self):
        L = plus_point_functor(S)
        assert not L.strong
        m = regular_module(A, ONE)
        assert L.check([Z2.carrier], [m.carrier]).ok


class TestTheta:
    def test_identity_everything(self):
        r = check_theta_iso(U2, MonoidalAdjunctionData.identity(S), identity_linear(A), regular_module(A, ONE))
        assert r.status is Status.PASSED_WITHIN_BUDGET
        assert r.details["theta_bijective"] and r.details["hypotheses_met"]

    def test_strong_presheaf_functor(self):
        L, P = phi_hat()
        adj = MonoidalAdjunctionData.identity(L.source.base)
        alpha = constant_morphism(U2, P)
        n = regular_module(L.source.params["inner"], alpha.dom)
        r = check_theta_iso(alpha, adj, L, n)
        assert r.status is Status.PASSED_WITHIN_BUDGET
        assert r.details["theta_bijective"]
        assert r.details["sizes"] == [4, 4]

    def test_planted_lax_instance(self):
        L = plus_point_functor(S)
        adj = MonoidalAdjunctionData.identity(S)
        n = regular_module(A, ONE)
        theta = compute_theta(U2, adj, L, n)
        assert not theta.map.is_iso()
        r = check_theta_iso(U2, adj, L, n)
        assert r.status is Status.SKIPPED
        assert r.details["theta_bijective"] is False
        assert r.details["unmet"] == ["strong"]

    def test_coequalizer_preservation_budget(self):
        r = coequalizer_preservation(identity_linear(A))
        assert r.status is Status.PASSED_WITHIN_BUDGET and r.budget

    def test_missing_gamma(self):
        L = LaxLinearFunctor(restrict_action(MonoidalAdjunctionData.identity(S).B, A, check=False), A,
                             lambda n: n, lambda f: f, lambda c, n: None)
        with pytest.raises(InputCompletenessError):
            compute_theta(U2, MonoidalAdjunctionData.identity(S), L, regular_module(A, ONE))


class TestTransport:
    def diag(self):
        D = diagonal_adjunction(["l", "r"], S)
        L = LaxLinearFunctor(restrict_action(D.B, self_action(D.B.cod)), A, None, None, None)
        return D, L

    def test_identity_cover(self):
        D, L = self.diag()
        r = transport_cover_check(CoverFamily.identity(Z2), D, L)
        assert [i.status for i in r.items] == [Status.PASSED_WITHIN_BUDGET] * 2

    def test_iso_cover_under_identity(self):
        z3 = cyclic_group(3)
        inv = MonoidMorphism.from_table(z3, z3, (0, 2, 1))
        r = transport_cover_check(CoverFamily.singleton(inv), MonoidalAdjunctionData.identity(S), identity_linear(A))
        assert r.ok

    def test_failing_source_skips_target(self):
        D, L = self.diag()
        r = transport_cover_check(CoverFamily.singleton(U2), D, L)
        assert r.status is Status.SKIPPED
        src, tgt = r.items
        assert src.status is Status.FAIL and tgt.status is Status.SKIPPED
