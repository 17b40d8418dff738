"""
Rim surgery on Seiberg-Witten invariants
========================================

Rim surgery along a knot K multiplies the SW invariant of the fiber sum by
Delta_K(exp(2T)).  We watch the basic classes spread into collections
{b + 2mT} and read off the two decision procedures.
"""

from rimcalc.knot import BraidWord, mirror
from rimcalc.swtheory import (
    basic_class_collections,
    distinguish,
    load_preset,
    rim_surgery_sw,
    symplectic_isotopy_obstruction,
)
from rimcalc.alexander import alexander

# E(3) = K3 fiber-summed with Y_1.  Its invariant is exp(F) - exp(-F).
pair = load_preset("k3_fiber")
base = pair.base_sw
print("base classes:", [base.format_class(b) for b in base.basic_classes()])

trefoil = BraidWord(2, (1, 1, 1))
delta = alexander(trefoil)
print("Delta(trefoil) =", delta)

surgered = rim_surgery_sw(pair, delta)
for beta, c in surgered.value.items():
    print(f"  SW({surgered.format_class(beta)}) = {c}")

# Each base class b grows into a collection of |support of Delta| classes.
for col in basic_class_collections(base, surgered, pair.rim_class):
    print(base.format_class(col.base_class), "->", [surgered.format_class(c) for c in col.classes])

# Different Alexander polynomials: the surgered pairs are not diffeomorphic.
figure_eight = BraidWord(3, (1, -2, 1, -2))
print(distinguish(pair, trefoil, figure_eight).verdict.value)

# Mirror images share Delta, so nothing can be concluded.
print(distinguish(pair, trefoil, mirror(trefoil)).verdict.value)

# Several classes per collection: no symplectic representative.
report = symplectic_isotopy_obstruction(pair, trefoil)
print(report.verdict.value, "witness sizes", report.witness_sizes)

# The unknot changes nothing.
unknot = BraidWord(2, (1,))
print(symplectic_isotopy_obstruction(pair, unknot).verdict.value)
