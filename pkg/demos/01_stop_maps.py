"""
Stop maps and their realizations
================================

A reparametrization of [0, 1] may pause: it is constant on some closed
intervals.  Those intervals and the values taken there form its stop map.
This script builds a stop map, checks whether a reparametrization can have
it, realizes it, and reads the stop data back.
"""

from fractions import Fraction

from reparam import ClosedInterval, StopMap, build_from_stopmap, check_conditions, stop_data_of_reparam
from reparam.io import render_report

# Three pauses; the first one starts at 0, so its value has to be 0.
f = StopMap.from_pairs([
    (ClosedInterval.of("1/3", "1/2"), Fraction(2, 5)),
    (ClosedInterval.of(0, "1/8"), Fraction(0)),
    (ClosedInterval.of("3/4", "7/8"), Fraction(9, 10)),
])
print(render_report(check_conditions(f)))

phi = build_from_stopmap(f)
print("breakpoints:", [(str(x), str(y)) for x, y in phi.breakpoints])
print("phi(5/8) =", phi(Fraction(5, 8)))
assert stop_data_of_reparam(phi) == f

# A value of 1 on an interval that stops short of 1 cannot be realized:
# the map would have to stay at 1 on a longer interval.
bad = StopMap.from_pairs([(ClosedInterval.of("1/4", "1/2"), Fraction(1))])
print(render_report(check_conditions(bad)))
