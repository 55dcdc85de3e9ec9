"""
Detecting finite domination with eight rings
============================================

A bounded complex of finitely generated free modules over the Laurent
ring is finitely dominated iff it becomes contractible over each of the
eight Novikov-type rings.  The detector eliminates unit pivots; when it
succeeds the pivot list is a replayable certificate.
"""

from findom.detector import check_finite_domination, eliminate, replay
from findom.fixtures import MU, NU, cone_of, koszul_example
from findom.flavors import corner_novikov
from findom.laurent import LaurentPoly

x, y = LaurentPoly.x(), LaurentPoly.y()

# the two-term complex given by multiplication with mu and nu
C = koszul_example()
print("mu =", MU, "   nu =", NU)
rep = check_finite_domination(C)
print("overall:", rep.overall)

# which polynomial serves as the first pivot depends on the ring
for v in rep.verdicts:
    first = "mu" if v.first_pivot == MU else "nu"
    print(f"  {v.flavor.name:16s} {v.outcome:12s} first pivot {first}")

# certificates replay exactly
v = eliminate(C, corner_novikov(1, 1))
print("replay problems:", replay(C, v))

# cone of 1 + x: contractible over some rings, not over others
rep = check_finite_domination(cone_of(1 + x))
print("cone(1+x):", rep.overall, "- fails over", rep.failing)
