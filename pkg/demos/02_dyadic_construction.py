"""
Realizing a stop family without prescribed values
=================================================

Given only the intervals, the dyadic construction picks the values: level by
level it hands out dyadic rationals l/2^k, giving each new z the earliest
(in a chosen enumeration) interval that fits between its neighbours, or a
single filler point when none fits.  The approximants phi_k move by less than
1/2^k from one level to the next.
"""

from fractions import Fraction

from reparam import dyadic_assignment, make_stop_family, stop_data_of_reparam, sup_distance
from reparam import ClosedInterval as I
from reparam.construct import approximants, dyadic_run

delta = make_stop_family([I.of("1/8", "1/4"), I.of("1/2", "3/4"), I.of("5/6", "9/10"), I.of("1/3", "2/5")])

for name, enum in (("left to right", None), ("reversed", [4, 3, 2, 1])):
    phi, assignment = dyadic_run(delta, enum)
    print(f"{name}: all intervals placed by depth {assignment.depth}")
    for z, entry in assignment.real_entries():
        print(f"   z = {z!s:>5} <- {entry.interval} (enumeration index {entry.index})")
    sm = stop_data_of_reparam(phi)
    assert sm.family == delta
    print("   stop values:", ", ".join(str(v) for v in sm.values))

print("\nfull assignment at depth 3:")
for z, entry in dyadic_assignment(delta, None, 3).entries:
    what = f"interval {entry.interval}" if hasattr(entry, "interval") else f"point {entry.t}"
    print(f"   {z!s:>5} -> {what}")

print("\nk   sup|phi_k - phi_k+1|   1/2^k")
phis = approximants(delta, None, 6)
for k in range(6):
    print(f"{k:<3} {str(sup_distance(phis[k], phis[k + 1])):<22} {Fraction(1, 2 ** k)}")
