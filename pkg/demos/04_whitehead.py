"""
Whitehead graphs and primitivity
================================
"""
from currents_lab import (
    conjugacy_class,
    is_primitive,
    minimal_set_obstruction,
    whitehead_graph,
    whitehead_reduce,
)
from currents_lab.free_group import Word

for text in ["abAB", "aab", "aBaBB", "abab"]:
    c = conjugacy_class(Word.parse(text, 2))
    g = whitehead_graph(c)
    length, witness = whitehead_reduce(c)
    print(f"{text:>6}: cut vertex or split={minimal_set_obstruction(g)!s:5} "
          f"minimal length={length} via {[str(w) for w in witness]}")
    print("        primitive:", is_primitive(Word.parse(text, 2)))

print(whitehead_graph(conjugacy_class(Word.parse("abAB", 2))).to_dot("commutator"))
