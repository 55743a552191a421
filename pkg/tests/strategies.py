"""Shared hypothesis strategies over small finite structures."""

from hypothesis import strategies as st

from relscheme.commalg import enumerate_comm_monoids
from relscheme.fincore import FinMap, FinSet

SMALL_MONOIDS = [m for n in (1, 2, 3) for m in enumerate_comm_monoids(n)]


@st.composite
def finmaps(draw, max_dom=4, max_cod=4, dom=None, cod=None):
    if dom is None:
        dom = FinSet(draw(st.integers(0, max_dom)))
    if cod is None:
        cod = FinSet(draw(st.integers(1, max_cod)))
    t = draw(st.lists(st.integers(0, cod.size - 1), min_size=dom.size, max_size=dom.size))
    return FinMap(dom, cod, tuple(t))


@st.composite
def parallel_pairs(draw, max_dom=4, max_cod=4):
    f = draw(finmaps(max_dom, max_cod))
    g = draw(finmaps(dom=f.dom, cod=f.cod))
    return f, g


@st.composite
def cospans(draw, max_size=4):
    c = FinSet(draw(st.integers(1, max_size)))
    return draw(finmaps(max_size, dom=None, cod=c)), draw(finmaps(max_size, dom=None, cod=c))


small_monoids = st.sampled_from(SMALL_MONOIDS)
