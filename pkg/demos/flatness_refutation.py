"""A flatness probe that finds counterexamples.

The probe searches finite-limit diagrams of small modules; a refutation
carries the diagram as its witness.  Passing only means nothing was found
within the budget.
"""

from relscheme.actegory import self_action
from relscheme.commalg import cartesian_sets, cyclic_group, to_trivial, unit_morphism
from relscheme.topology import ProbeBudget, flatness_probe

A = self_action(cartesian_sets())
z2 = cyclic_group(2)

for alpha in (unit_morphism(z2), to_trivial(z2)):
    for size in (1, 2):
        v = flatness_probe(alpha, A, ProbeBudget(max_module_size=size))
        rep = v.report()
        print(f"{alpha.name:>14}  max size {size}: {rep.status.value:<22} examined {v.examined}")
        if v.refuted:
            print("    witness:", v.witness)
