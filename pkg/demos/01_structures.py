# Truth-value structures: information order, meets and connectives.
from fractions import Fraction

from wadf import U, make_structure
from wadf.valuation import enumerate_values, glb, upward_set

flat = make_structure("unit-flat")
refined = make_structure("unit-refined")
belnap = make_structure("belnap")
grid = make_structure("interval-grid", 5)

# flat: distinct defined values only meet at u
print(glb(flat, [Fraction(2, 5), Fraction(2, 5)]))  # 2/5
print(glb(flat, [Fraction(2, 5), Fraction(3, 5)]))  # u

# refined: 0.5 sits right above u, information grows away from it
print(refined.leq(Fraction(1, 2), Fraction(4, 5)))  # True
print(glb(refined, [Fraction(3, 5), Fraction(9, 10)]))  # 3/5
print(glb(refined, [Fraction(3, 10), Fraction(7, 10)]))  # 1/2
print(upward_set(refined, Fraction(4, 5)))  # ValueRange(lo=4/5, hi=1)

# Belnap: N below F and T, both below B
print(enumerate_values(belnap))
print(glb(belnap, ["T", "F"]))  # N
print(belnap.conj("N", "B"), belnap.disj("N", "B"))  # F T

# intervals ordered by reverse inclusion; the meet is the hull
a = grid.parse_value("[0.25,0.5]")
b = grid.parse_value("[0.5,0.75]")
print(grid.render(glb(grid, [a, b])))  # [0.25,0.75]
print(grid.render(grid.neg(a)))  # [0.5,0.75]

# u is below everything
print(all(s.leq(U, x) for s in (belnap, grid) for x in s.values()))
