"""
Units of the eight Novikov-type rings
=====================================

A Laurent polynomial is invertible in a corner ring Z[[x,y]][(xy)^-1]
exactly when one support point dominates all others (coordinatewise,
after orienting the quadrant) and carries coefficient ±1.  In an edge
ring Z[x,1/x]((y)) the extreme slice in the series direction must be a
±monomial.  We check this on a few polynomials and look at truncated
inverses.
"""

from findom.flavors import corner_novikov, detection_flavors, edge_novikov, initial_form_obstruction, invert, is_unit
from findom.laurent import LaurentPoly

x, y = LaurentPoly.x(), LaurentPoly.y()

# 1 + x is a unit wherever x points "up" in the series direction
p = 1 + x
for f in detection_flavors():
    print(f"{f.name:16s} unit={bool(is_unit(f, p))}")

# the geometric series, truncated to a window of radius 6
s = invert(corner_novikov(1, 1), p, 6)
print("1/(1+x) ~", s.terms, "  exact up to radius", s.radius)
print("check:", ((s.terms * p) - 1).clip(s.radius))

# 1 + x + y is a unit of Nov(x,y) (no obstruction); over Z[x,1/x]((y)) the
# lowest y-slice 1 + x is not a ±monomial, which certifies a non-unit
q = 1 + x + y
for f in (corner_novikov(1, 1), edge_novikov("y", 1)):
    print(f.name, "obstruction:", initial_form_obstruction(f, q))

# coefficients matter: 2 + x is a unit only where x dominates
print({f.name: bool(is_unit(f, 2 + x)) for f in detection_flavors()})
