from itertools import product as iproduct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relscheme.commalg import (
    CommMonoid,
    MonoidMorphism,
    boolean_monoid,
    check_comm_monoid,
    cyclic_group,
    enumerate_comm_monoids,
    is_epi,
    is_finite_type,
    isomorphic_monoids,
    monoid_homs,
    pushout,
    require_morphism,
    to_trivial,
    trivial_monoid,
    unit_morphism,
    with_zero,
)
from relscheme.acceptance import _oracle_epi
from relscheme.errors import PreconditionError, ShapeError
from relscheme.report import Status, Tag

from strategies import SMALL_MONOIDS, small_monoids


def _brute_homs(a, b):
    """Every table a -> b preserving unit and products, by plain enumeration."""
    out = []
    for t in iproduct(range(b.size), repeat=a.size):
        if t[a.e] != b.e:
            continue
        if all(t[a.table[i][j]] == b.table[t[i]][t[j]] for i in range(a.size) for j in range(a.size)):
            out.append(t)
    return out


def z4_to_z2():
    return MonoidMorphism.from_table(cyclic_group(4), cyclic_group(2), (0, 1, 0, 1), name="mod2")


class TestMonoids:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 19)])
    def test_enumeration_counts(self, n, count):
        # commutative monoids up to isomorphism: 1, 2, 5, 19
        ms = enumerate_comm_monoids(n)
        assert len(ms) == count
        assert all(check_comm_monoid(m).ok for m in ms)

    def test_enumeration_has_no_isomorphic_pairs(self):
        ms = enumerate_comm_monoids(3)
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                assert not isomorphic_monoids(a, b)

    def test_law_failure_has_witness(self):
        bad = CommMonoid.from_table(["e", "x", "y"], [[0, 1, 2], [1, 2, 0], [2, 1, 1]], 0, name="bad")
        r = check_comm_monoid(bad)
        assert r.status is Status.FAIL
        assert r.witness is not None

    def test_pointed_zero_must_come_first(self):
        with pytest.raises(ShapeError):
            CommMonoid.from_table(["1", "0"], [[0, 1], [1, 1]], 0, zero=1, pointed=True)

    def test_pointed_monoids_absorb(self):
        for m in (boolean_monoid(True), with_zero(cyclic_group(3))):
            assert check_comm_monoid(m).ok
            assert all(m.table[0][j] == 0 for j in range(m.size))

    @given(small_monoids, small_monoids)
    def test_homs_match_brute_force(self, a, b):
        got = sorted(h.table for h in monoid_homs(a, b))
        assert got == _brute_homs(a, b)
        for h in monoid_homs(a, b):
            assert h.check().ok

    def test_non_morphism_rejected(self):
        z2 = cyclic_group(2)
        with pytest.raises(PreconditionError):
            require_morphism(MonoidMorphism.from_table(z2, z2, (1, 0)))


class TestPushout:
    def test_over_trivial_is_product(self):
        one, b2 = trivial_monoid(), boolean_monoid()
        u = unit_morphism(b2, one)
        P = pushout(u, u)
        assert P.obj.size == 4
        assert check_comm_monoid(P.obj).ok

    def test_along_identity(self):
        z2, b2 = cyclic_group(2), boolean_monoid()
        beta = MonoidMorphism.from_table(z2, b2, (1, 1))
        P = pushout(MonoidMorphism.identity(z2), beta)
        assert P.obj.size == b2.size
        assert P.inr.is_iso()

    def test_domain_mismatch(self):
        with pytest.raises(ShapeError):
            pushout(unit_morphism(cyclic_group(2)), MonoidMorphism.identity(cyclic_group(2)))

    @given(small_monoids, st.data())
    def test_universal_property_by_counting(self, a, data):
        bs = [m for m in SMALL_MONOIDS if any(True for _ in monoid_homs(a, m))]
        b, c = data.draw(st.sampled_from(bs)), data.draw(st.sampled_from(bs))
        alpha = data.draw(st.sampled_from(list(monoid_homs(a, b))))
        beta = data.draw(st.sampled_from(list(monoid_homs(a, c))))
        P = pushout(alpha, beta)
        assert [P.inl.table[v] for v in alpha.table] == [P.inr.table[v] for v in beta.table]
        for d in SMALL_MONOIDS[:5]:
            cocones = sum(
                1
                for f in _brute_homs(b, d)
                for g in _brute_homs(c, d)
                if all(f[alpha.table[x]] == g[beta.table[x]] for x in range(a.size))
            )
            assert cocones == len(_brute_homs(P.obj, d))


class TestEpi:
    def test_identity(self):
        assert is_epi(MonoidMorphism.identity(cyclic_group(3)))[0]

    def test_unit_of_z2(self):
        ok, w = is_epi(unit_morphism(cyclic_group(2), trivial_monoid()))
        assert not ok
        assert w["element"] == "g1"
        assert w["iota1"] != w["iota2"]

    def test_reduction_z4_z2(self):
        assert is_epi(z4_to_z2())[0]

    @given(small_monoids, small_monoids, st.data())
    def test_agrees_with_congruence_oracle(self, a, b, data):
        hs = list(monoid_homs(a, b))
        if not hs:
            return
        h = data.draw(st.sampled_from(hs))
        assert is_epi(h)[0] == _oracle_epi(h)

    def test_surjections_are_epi(self):
        for a in SMALL_MONOIDS:
            for b in SMALL_MONOIDS:
                for h in monoid_homs(a, b):
                    if h.is_surjective():
                        assert is_epi(h)[0]

    def test_finite_type_is_policy(self):
        for h in (MonoidMorphism.identity(cyclic_group(2)), unit_morphism(boolean_monoid()),
                  to_trivial(cyclic_group(3))):
            r = is_finite_type(h)
            assert r.status is Status.PASS
            assert r.tags == (Tag.POLICY,)
