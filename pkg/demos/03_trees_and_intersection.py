"""
Marked metric graphs and the length pairing
===========================================

A current paired with a graph adds up translation lengths.  Acting on the
graph or on the current gives the same number.
"""
from currents_lab import counting_current, intersection, rose, translation_length, tree_act
from currents_lab.catalog import fibonacci
from currents_lab.currents import act
from currents_lab.free_group import Word

T = rose(2, [2, 1])
g = Word.parse("abAB", 2)
print("length of [a,b] on the rose:", translation_length(T, g))

nu = counting_current(g)
phi = fibonacci()
print("<T phi, nu> =", intersection(tree_act(T, phi), nu))
print("<T, phi nu> =", intersection(T, act(phi, nu)))
