"""
Three ways to the Alexander polynomial
======================================

The same knot, entered as a braid, a PD code and a DT code, goes through
every engine that accepts it.  The answers must agree exactly.
"""

from rimcalc.alexander import alexander_all, check_agreement
from rimcalc.knot import parse_presentation, seifert_matrix_from_braid

# The figure-eight knot in all three notations.
braid = parse_presentation("3: 1 -2 1 -2", "braid")
pd = parse_presentation("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)", "pd")
dt = parse_presentation("4 6 8 2", "dt")

# The Seifert engine starts from this matrix: det(V - t V^T).
V = seifert_matrix_from_braid(braid)
print("Seifert matrix:", V.as_lists())

results = alexander_all(braid, pd, dt)
for engine, delta in results.items():
    print(f"{engine:14s} {delta}")

# A single answer, or EngineDisagreement if anything is off.
print("agreed:", check_agreement(results))

# Torus knots have a closed form to compare against.
from rimcalc.alexander import alexander_torus_closed_form, alexander_via_burau
from rimcalc.knot import torus_knot

for g in range(1, 4):
    k = torus_knot(2, 2 * g + 1)
    print(f"T(2,{2 * g + 1}):", alexander_via_burau(k), "| closed form:", alexander_torus_closed_form(2, 2 * g + 1))
