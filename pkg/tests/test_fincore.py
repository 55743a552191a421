from itertools import product as iproduct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relscheme.errors import ShapeError, UnsupportedShapeError
from relscheme.fincore import (
    FinCategory,
    FinFunctor,
    FinMap,
    FinSet,
    PresheafCat,
    PresheafMap,
    UnionFind,
    coequalizer,
    coproduct,
    equalizer,
    finite_limit,
    product,
    pullback,
    quotient,
)
from relscheme.fincore.sets import all_maps

from strategies import cospans, finmaps, parallel_pairs


def _partition_oracle(n, pairs):
    """Blocks of the equivalence generated by ``pairs`` via repeated merging of overlapping blocks."""
    blocks = [{i} for i in range(n)]
    for a, b in pairs:
        ba = next(x for x in blocks if a in x)
        bb = next(x for x in blocks if b in x)
        if ba is not bb:
            blocks.remove(bb)
            ba |= bb
    return sorted(sorted(b) for b in blocks)


class TestSets:
    def test_coequalizer_chain_collapses(self):
        f = FinMap(FinSet(2), FinSet(3), (0, 1))
        g = FinMap(FinSet(2), FinSet(3), (1, 2))
        q, proj = coequalizer(f, g)
        assert q.size == 1
        assert proj.table == (0, 0, 0)

    def test_pullback_of_constant_maps(self):
        f = FinMap(FinSet.of(["x", "y"]), FinSet(1), (0, 0))
        g = FinMap(FinSet.of(["z"]), FinSet(1), (0,))
        assert pullback(f, g).apex.size == 2

    def test_unknown_shape(self):
        with pytest.raises(UnsupportedShapeError):
            finite_limit("pushout")

    def test_mismatched_pair(self):
        with pytest.raises(ShapeError):
            equalizer(FinMap(FinSet(1), FinSet(1), (0,)), FinMap(FinSet(2), FinSet(1), (0, 0)))

    @given(parallel_pairs())
    def test_coequalizer_matches_partition_oracle(self, fg):
        f, g = fg
        q, proj = coequalizer(f, g)
        blocks = _partition_oracle(f.cod.size, list(zip(f.table, g.table)))
        assert q.size == len(blocks)
        for b in blocks:
            assert len({proj(i) for i in b}) == 1
        assert proj.is_surjective()
        assert f.then(proj).table == g.then(proj).table

    @given(cospans())
    def test_pullback_is_all_agreeing_pairs(self, fg):
        f, g = fg
        cone = pullback(f, g)
        expect = [(x, y) for x in range(f.dom.size) for y in range(g.dom.size) if f(x) == g(y)]
        got = sorted(zip(cone.legs[0].table, cone.legs[1].table))
        assert got == expect

    @given(parallel_pairs(max_dom=3, max_cod=3))
    def test_equalizer_universal(self, fg):
        f, g = fg
        cone = equalizer(f, g)
        (incl,) = cone.legs
        assert incl.is_injective()
        # every map from a one-point set equalizing f, g factors uniquely
        pt = FinSet(1)
        for h in all_maps(pt, f.dom):
            if f(h(0)) == g(h(0)):
                assert sum(1 for k in all_maps(pt, cone.apex) if incl(k(0)) == h(0)) == 1

    @given(st.integers(0, 4), st.integers(0, 4))
    def test_product_and_coproduct_sizes(self, a, b):
        A, B = FinSet(a), FinSet(b)
        assert product(A, B).apex.size == a * b
        s, i, j = coproduct(A, B)
        assert s.size == a + b
        assert set(i.table).isdisjoint(j.table)

    @given(st.integers(1, 6), st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=6))
    def test_union_find_quotient(self, n, pairs):
        pairs = [(a % n, b % n) for a, b in pairs]
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        q, proj = quotient(FinSet(n), uf)
        assert q.size == len(_partition_oracle(n, pairs))
        # classes are numbered by smallest member
        firsts = [min(i for i in range(n) if proj(i) == k) for k in range(q.size)]
        assert firsts == sorted(firsts)

    @given(finmaps(3, 3))
    def test_inverse_of_bijection(self, f):
        if f.is_bijective():
            assert f.then(f.inverse()).table == tuple(range(f.dom.size))


class TestCategories:
    def test_builtin_categories_satisfy_laws(self):
        for C in (FinCategory.terminal(), FinCategory.discrete("abc"), FinCategory.parallel_pair(),
                  FinCategory.from_monoid(["e", "g"], [[0, 1], [1, 0]], 0),
                  FinCategory.product(FinCategory.parallel_pair(), FinCategory.discrete("xy"))):
            assert C.check_laws().ok

    def test_missing_composite(self):
        with pytest.raises(ShapeError):
            FinCategory(("*",), {"i": ("*", "*"), "f": ("*", "*")}, {"*": "i"},
                        {("i", "i"): "i", ("i", "f"): "f", ("f", "i"): "f"})

    def test_functor_laws_and_composition(self):
        X = FinCategory.discrete(["a", "b"])
        P = FinCategory.parallel_pair()
        phi = FinFunctor(X, P, {"a": "0", "b": "1"}, {"id_a": "id0", "id_b": "id1"})
        assert phi.check_laws().ok
        assert phi.is_essentially_surjective()
        assert phi.then(FinFunctor.identity(P)).check_laws().ok

    def test_isomorphisms_in_group_category(self):
        G = FinCategory.from_monoid(["e", "g"], [[0, 1], [1, 0]], 0)
        assert G.is_iso("g")
        B = FinCategory.from_monoid(["1", "0"], [[0, 1], [1, 1]], 0)
        assert not B.is_iso("0")


@pytest.fixture(scope="module")
def P():
    return PresheafCat(FinCategory.parallel_pair())


class TestPresheaves:
    def test_objects_satisfy_functor_laws(self, P):
        objs = list(P.objects_up_to(3))
        assert objs
        assert all(o.check_laws().ok for o in objs)

    def test_coequalizer_is_pointwise(self, P):
        objs = [o for o in P.objects_up_to(3) if o.size() >= 2]
        seen = 0
        for F in objs[:6]:
            for G in objs[:6]:
                homs = list(P.homs(F, G))[:4]
                for f, g in iproduct(homs, repeat=2):
                    Q, q = P.coequalizer(f, g)
                    for x in P.index.objects:
                        qs, _ = coequalizer(f[x], g[x])
                        assert Q.sets[x].size == qs.size
                    assert q.check_naturality().ok
                    seen += 1
        assert seen > 0

    def test_tensor_unitors_and_associator_are_isos(self, P):
        objs = list(P.objects_up_to(2))[:4]
        for f in objs:
            assert P.left_unitor(f).is_iso() and P.right_unitor(f).is_iso()
            for g in objs:
                assert P.swap(f, g).is_iso()
                for h in objs[:2]:
                    assert P.associator(f, g, h).is_iso()

    def test_pointed_tensor_is_smash(self):
        S = PresheafCat(FinCategory.terminal(), pointed=True)
        a = S.of_set(FinSet(3))
        b = S.of_set(FinSet(4))
        assert S.tensor(a, b).size() == 1 + 2 * 3
        assert S.unit().size() == 2

    def test_identity_map(self, P):
        F = next(o for o in P.objects_up_to(2) if o.size() == 2)
        assert PresheafMap.identity(F).is_iso()
