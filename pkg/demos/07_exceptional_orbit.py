"""
The boundary current as an exceptional point
============================================

The Fibonacci map fixes the commutator class, so its counting current is a
fixed point of the projective action.  A generic seed instead flows to the
attracting limit, which sits far away.
"""
from currents_lab import counting_current, exceptional_orbit_check, fixed_point_check
from currents_lab.catalog import fibonacci
from currents_lab.free_group import Word

phi = fibonacci()
boundary = counting_current(Word.parse("abAB", 2))
generic = counting_current(Word.parse("a", 2))

rep = exceptional_orbit_check(phi, boundary, generic, 25, 3, [Word.parse("abAB", 2)])
for key, value in rep.to_dict().items():
    print(f"{key:>24}: {value}")

print([str(s) for s in fixed_point_check(phi, [boundary, generic], 3)])
