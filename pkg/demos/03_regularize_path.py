"""
Removing the pauses from a path
===============================

A piecewise-linear path that dwells at some points factors as p = q ∘ phi,
where phi collapses every dwell interval and q never dwells.
"""

from fractions import Fraction

from reparam import PLPath, compose, is_regular, paths_equal, regularize, stop_intervals_of_path
from reparam.io import parse_csv_path

p = parse_csv_path("""t,x,y
0,0,0
0.2,1,0
0.35,1,0
0.5,1,1
0.6,1,1
0.7,1,1
1,0,1
""")
print("dwell intervals:", [str(j) for j in stop_intervals_of_path(p)])

q, phi = regularize(p)
print("phi:", [(str(x), str(y)) for x, y in phi.breakpoints])
print("q:  ", [(str(u), tuple(map(str, pt))) for u, pt in q.breakpoints])
assert is_regular(q) and paths_equal(compose(q, phi), p)

for t in (Fraction(0), Fraction(1, 4), Fraction(3, 5), Fraction(9, 10)):
    point = ", ".join(map(str, p(t)))
    print(f"p({t}) = q(phi({t})) = q({phi(t)}) = ({point})")

# an already regular path is left alone
line = PLPath.from_points([(0, [0, 0]), (1, [1, 1])])
assert regularize(line)[0] == line
