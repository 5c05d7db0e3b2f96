"""
Rational currents and their frequency profiles
==============================================

A counting current remembers every cyclic subword of its class.  Profiles
normalise the counts of all reduced words up to some length.
"""
from fractions import Fraction

from currents_lab import (
    act,
    add,
    counting_current,
    frequency_profile,
    occurrences,
    projective_distance,
    scale,
    weight,
)
from currents_lab.catalog import fibonacci
from currents_lab.free_group import Word

eta_comm = counting_current(Word.parse("abAB", 2))
eta_a = counting_current(Word.parse("a", 2))
nu = add(eta_comm, scale(Fraction(1, 3), eta_a))
print("nu =", nu)
print("weight:", weight(nu))

for v in ["a", "ab", "aB", "abA"]:
    print(f"  <{v}, nu> = {occurrences(Word.parse(v, 2), nu)}")

# the action pushes classes forward and adds coefficients of equal classes
print("fib nu =", act(fibonacci(), nu))

p = frequency_profile(nu, 2)
q = frequency_profile(act(fibonacci(), nu), 2)
for word, value in p.as_dict().items():
    print(f"  {word:>3}  {value:.4f}")
print("projective distance to the image:", projective_distance(p, q))
