"""
Words, conjugacy classes and automorphisms
==========================================

Letters a, b, c, ... are generators; upper case is the inverse.
"""
from currents_lab import Automorphism, Word, apply, compose, conjugacy_class, cyclic_reduce, power

w = Word.parse("aabAAbbB", 2)
print("reduced:", w)

# the class of a word is stored as its least rotation
core, conjugator = cyclic_reduce(Word.parse("BabaB", 2))
print("cyclic core:", core, "conjugator:", conjugator)
print("class of aabA:", conjugacy_class(Word.parse("aabA", 2)))

fib = Automorphism.from_strings(["ab", "a"], ["b", "Ba"], name="fib")
for k in range(1, 6):
    print(k, apply(power(fib, k), Word.parse("a", 2)))

# phi o phi^-1 acts trivially on generators
ident = compose(fib, fib.inverse())
print([str(apply(ident, Word.generator(i, 2))) for i in (1, 2)])
