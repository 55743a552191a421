"""Free commutative monoids, hom-monoids and field objects on pointed sets."""

from relscheme.commalg import boolean_monoid, cyclic_group, isomorphic_monoids, with_zero
from relscheme.gluing import (
    adjunction_checks,
    cmon0_monoids,
    free_comm,
    hom_monoid,
    is_field_object,
    pointed_monoids,
    saturating,
)

# %% hom_monoid undoes free_comm
for M in cmon0_monoids(3):
    back = hom_monoid(free_comm(M))
    print(f"{M.name:>8}: C(1, C[M]) ~ M ? {isomorphic_monoids(back, M) is not None}")

# %% hat and tilde
M = cmon0_monoids(2)[-1]
for a in pointed_monoids(3):
    print(f"hat/tilde  {M.name} vs {a.name}: {adjunction_checks(M, a).status.value}")

# %% field objects
for c in (boolean_monoid(True), with_zero(cyclic_group(2)), saturating(2)):
    print(f"{c.name:>8} field object: {is_field_object(c)}")
