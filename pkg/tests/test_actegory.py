from itertools import islice

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relscheme.actegory import (
    CoherenceBudget,
    LaxLinearFunctor,
    Precomposition,
    check_actegory_coherence,
    diagonal_action,
    digraph,
    digraph_action,
    family,
    member,
    monoid_category,
    monoid_hom_functor,
    mset,
    presheaf_action,
    rep_action,
    restrict_action,
    self_action,
)
from relscheme.basechange import monoid_image
from relscheme.commalg import cartesian_sets, cyclic_group, pointed_sets, trivial_monoid
from relscheme.errors import PreconditionError
from relscheme.fincore import FinCategory, FinFunctor, FinSet, PresheafCat
from relscheme.report import Status
from relscheme.scalars import enumerate_modules


def x2_to_par():
    X = FinCategory.discrete(["a", "b"], name="X2")
    return FinFunctor(X, FinCategory.parallel_pair(), {"a": "0", "b": "1"}, {"id_a": "id0", "id_b": "id1"},
                      name="Phi")


Z2_CAT = monoid_category(["e", "g"], [[0, 1], [1, 0]], 0, name="Z2")
ONE_CAT = monoid_category(["e"], [[0]], 0, name="1")


def backends():
    S = cartesian_sets()
    return {
        "self": self_action(S),
        "pointed": self_action(pointed_sets()),
        "diagonal": diagonal_action(["l", "r"], S),
        "presheaf": presheaf_action(x2_to_par()),
        "rep": rep_action(monoid_hom_functor(Z2_CAT, ONE_CAT, [0, 0])),
        "digraph": digraph_action(Z2_CAT, "g", "e"),
    }


@pytest.mark.parametrize("kind", list(backends()))
def test_coherence_within_budget(kind):
    r = check_actegory_coherence(backends()[kind], CoherenceBudget(max_size=2, max_tuples=60))
    assert r.status is Status.PASSED_WITHIN_BUDGET
    assert r.budget is not None


def test_presheaf_action_is_pointwise_product():
    A = presheaf_action(x2_to_par())
    base, M = A.base, A.M
    F = next(f for f in base.objects_up_to(4) if f.sets["1"].size == 2)
    H = next(h for h in M.objects_up_to(4) if h.sets["b"].size == 3)
    assert A.act_obj(F, H).sets["b"].size == 6


def test_rep_action_example():
    # trivial N-action on a 2-set, regular right Z2-set
    sigma = monoid_hom_functor(Z2_CAT, ONE_CAT, [0, 0])
    A = rep_action(sigma)
    S = mset(ONE_CAT, ["s0", "s1"], {"e": [0, 1]})
    T = mset(Z2_CAT, ["t0", "t1"], {"e": [0, 1], "g": [1, 0]})
    P = A.act_obj(S, T)
    assert P.size() == 4
    g = P.maps["g"].table
    for i in range(2):
        for j in range(2):
            k = A.pair("*", S, T, i, j)
            assert g[k] == A.pair("*", S, T, i, 1 - j)


def test_digraph_action_with_trivial_monoid_doubles_graph():
    A = digraph_action(ONE_CAT, "e", "e")
    G = digraph(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")])
    U = mset(ONE_CAT, ["p", "q"], {"e": [0, 1]})
    P = A.act_obj(U, G)
    assert P.sets["0"].size == 6 and P.sets["1"].size == 4
    s, t = P.maps["d0"].table, P.maps["d1"].table
    # edges stay inside their copy
    for copy in range(2):
        for e in range(2):
            k = A.pair("1", U, G, copy, e)
            assert s[k] == A.pair("0", U, G, copy, G.maps["d0"].table[e])
            assert t[k] == A.pair("0", U, G, copy, G.maps["d1"].table[e])


def test_family_roundtrip():
    S = cartesian_sets()
    D = diagonal_action(["l", "r"], S)
    a, b = S.of_set(FinSet(2)), S.of_set(FinSet(3))
    f = family(D, [a, b])
    assert member(D, f, "l").same_as(a) and member(D, f, "r").same_as(b)


def test_diagonal_modules_are_families():
    # modules over a in [J, C] correspond to J-families of a-modules
    S = cartesian_sets()
    z2 = cyclic_group(2)
    counts = {}
    for m in enumerate_modules(self_action(S), z2, 3):
        counts[m.carrier.size()] = counts.get(m.carrier.size(), 0) + 1
    families = sum(counts[i] * counts[j] for i in counts for j in counts if i + j <= 3)
    assert len(enumerate_modules(diagonal_action(["l", "r"], S), z2, 3)) == families == 16


def test_restriction_along_precomposition_is_presheaf_action():
    phi = x2_to_par()
    B = Precomposition(phi, False)
    R = restrict_action(B, self_action(B.cod))
    P = presheaf_action(phi)
    for c in islice(P.base.objects_up_to(2), 6):
        for m in islice(P.M.objects_up_to(2), 6):
            assert R.act_obj(c, m).shape() == P.act_obj(c, m).shape()


def test_restricted_modules_enumerate_like_image_modules():
    phi = x2_to_par()
    B = Precomposition(phi, False)
    N = self_action(B.cod)
    R = restrict_action(B, N)
    from relscheme.basechange import constant_monoid

    a = constant_monoid(cyclic_group(2), phi.cod)
    lhs = enumerate_modules(R, a, 2)
    rhs = enumerate_modules(N, monoid_image(B, a), 2)
    assert len(lhs) == len(rhs)


def test_preconditions():
    X = FinCategory.discrete(["a", "b"])
    P = FinCategory.parallel_pair()
    not_surj = FinFunctor(X, P, {"a": "1", "b": "1"}, {"id_a": "id1", "id_b": "id1"})
    with pytest.raises(PreconditionError):
        presheaf_action(not_surj)
    with pytest.raises(PreconditionError):
        monoid_category(["e", "x"], [[0, 1], [1, 0]], 1)
    with pytest.raises(PreconditionError):
        diagonal_action([], cartesian_sets())


def test_identity_linear_functor_is_strong():
    A = self_action(cartesian_sets())
    L = LaxLinearFunctor.identity(A)
    objs = list(islice(A.M.objects_up_to(2), 3))
    assert L.check(objs, objs).ok


@given(st.integers(0, 3), st.integers(0, 3))
def test_self_action_sizes(i, j):
    S = cartesian_sets()
    A = self_action(S)
    assert A.act_obj(S.of_set(FinSet(i)), S.of_set(FinSet(j))).size() == i * j
