"""Backtracking search over finite assignments with unary propagation.

A constraint ``(w, h)`` attached to variable ``v`` says that once ``v`` takes
value ``x``, ``w`` is forced to ``h[x]``.  Naturality squares and module
equivariance both have this shape, which makes hom-set enumeration cheap.
"""

from __future__ import annotations

from typing import Iterator, Sequence


def solve_unary(
    domains: Sequence[Sequence[int]],
    props: Sequence[Sequence[tuple[int, Sequence[int]]]],
) -> Iterator[list[int]]:
    """Yield every assignment ``val`` with ``val[v] in domains[v]`` satisfying all props.

    Solutions come out in lexicographic order of the variable values.
    """
    n = len(domains)
    val = [-1] * n
    # full ranges only need a bounds check
    bound = [d.stop if isinstance(d, range) and d.start == 0 and d.step == 1 else -1 for d in domains]
    allowed = [None if b >= 0 else frozenset(d) for b, d in zip(bound, domains)]

    def assign(v: int, x: int, trail: list[int]) -> bool:
        stack = [(v, x)]
        pop, push = stack.pop, stack.append
        while stack:
            v, x = pop()
            cur = val[v]
            if cur >= 0:
                if cur != x:
                    return False
                continue
            b = bound[v]
            if b >= 0:
                if x >= b:
                    return False
            elif x not in allowed[v]:
                return False
            val[v] = x
            trail.append(v)
            for w, h in props[v]:
                push((w, h[x]))
        return True

    def rec(start: int) -> Iterator[list[int]]:
        v = start
        while v < n and val[v] >= 0:
            v += 1
        if v == n:
            yield list(val)
            return
        for x in domains[v]:
            trail: list[int] = []
            if assign(v, x, trail):
                yield from rec(v + 1)
            for t in trail:
                val[t] = -1

    yield from rec(0)
