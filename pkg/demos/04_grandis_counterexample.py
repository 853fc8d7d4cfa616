"""
Why midpoint values do not work
===============================

Intervals piling up at 1/2 from the left, followed by [1/2, 3/4].  Sending
each interval to its midpoint is order preserving, but the midpoints on the
left converge to 1/2 while [1/2, 3/4] is sent to 5/8: any reparametrization
with this stop data would jump at 1/2.  Only finitely many intervals can be
inspected, so the checker refutes but never certifies.
"""

from fractions import Fraction

from reparam import check_conditions_lazy, evaluate_lazy
from reparam.catalog import grandis
from reparam.io import render_report

entry = grandis()
for n in range(1, 6):
    j = entry.family.generator(n)
    print(f"J({n}) = {j}, value {entry.values(n)}")

print()
print(render_report(check_conditions_lazy(entry.family, entry.values, 20)))

# Setting the value on [1/2, 3/4] to 1/2 repairs condition 1.  The midpoint of
# [0, 1/8] is still not 0, which the endpoint check keeps reporting.
fixed = grandis(tail_value=Fraction(1, 2))
print(render_report(check_conditions_lazy(fixed.family, fixed.values, 20)))

# The dyadic construction still realizes this family of intervals; near the
# accumulation point it is only reachable through the approximants.
for e in (4, 8, 16):
    value, bound = evaluate_lazy(entry.family, entry.oracle, Fraction(499, 1000), Fraction(1, 2 ** e))
    print(f"phi(499/1000) = {value} +- {bound}")
