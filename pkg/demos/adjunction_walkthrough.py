"""Extension and restriction of scalars on finite sets.

Walks through Z2 -> Z4 on the cartesian self-action: build a
morphism, extend a module along it, and check the hom-set bijection.
"""

from relscheme.actegory import self_action
from relscheme.commalg import cartesian_sets, cyclic_group, monoid_homs
from relscheme.scalars import (
    adjunction_check,
    enumerate_modules,
    extend_scalars,
    regular_module,
    restrict_scalars,
    triangle_identities,
)

A = self_action(cartesian_sets())
z2, z4 = cyclic_group(2), cyclic_group(4)

# %% morphisms Z2 -> Z4
homs = list(monoid_homs(z2, z4))
print(f"{len(homs)} monoid morphisms Z2 -> Z4")
alpha = homs[-1]
print("chosen:", alpha.to_doc())

# %% extend the regular Z2-module along alpha
m = regular_module(A, z2)
ext = extend_scalars(alpha, m)
print("b (x)_a m has", ext.module.carrier.size(), "elements")

# %% restrict a Z4-module back
n = regular_module(A, z4)
rn = restrict_scalars(alpha, n)
print("restricted carrier size:", rn.carrier.size())

# %% transpose / cotranspose on all small modules
total = 0
for m in enumerate_modules(A, z2, 3):
    for n in enumerate_modules(A, z4, 3):
        r = adjunction_check(alpha, m, n)
        assert r.ok, r.witness
        total += r.details["homs"]
print("hom-set bijection verified,", total, "maps in total")

print("triangle identities:", triangle_identities(alpha, m=m, n=n).status.value)
