from collections import Counter

import pytest

from relscheme.corpus import comparison_corpus, cover_corpus, random_sheaf_instances
from relscheme.topology import ProbeBudget, check_fpqc_cover


@pytest.fixture(scope="module")
def instances():
    return comparison_corpus()


def test_comparison_corpus_spans_backends(instances):
    assert len(instances) >= 50
    per = Counter(i.backend for i in instances)
    assert len(per) == 5
    assert min(per.values()) >= 5


def test_comparison_names_unique(instances):
    names = [i.name for i in instances]
    assert len(names) == len(set(names))


def test_comparison_sample_passes(instances):
    for inst in instances[::12]:
        assert inst.run().status.value == "PASS", inst.name


def test_cover_corpus_verifies():
    from relscheme.actegory import self_action
    from relscheme.commalg import cartesian_sets

    A = self_action(cartesian_sets())
    covers, morphisms = cover_corpus()
    assert morphisms
    for C in covers:
        assert check_fpqc_cover(C, A, ProbeBudget()).ok, C.name


def test_random_instances_respect_size_and_seed():
    a = random_sheaf_instances(seed=5, count=10)
    b = random_sheaf_instances(seed=5, count=10)
    assert len(a) == 10
    assert all(0 < F.size() <= 200 for F, _, _ in a)
    assert {k for _, _, k in random_sheaf_instances(seed=0)} == {"rep", "const", "sum", "perturbed"}
    assert [(C.name, k, F.size()) for F, C, k in a] == [(C.name, k, F.size()) for F, C, k in b]
