"""
Orbit of a current under the Fibonacci automorphism
===================================================

Weights grow like the golden ratio, and the level-3 profile settles on one
projective class whatever primitive seed we start from.
"""
from currents_lab import (
    counting_current,
    detect_convergence,
    estimate_dilatation,
    orbit,
    pf_eigenvalue,
    transition_matrix,
)
from currents_lab.catalog import fibonacci
from currents_lab.free_group import Word

phi = fibonacci()
r = orbit(phi, counting_current(Word.parse("a", 2)), 20, 3, seed_id="eta_a")
for k in (0, 1, 2, 5, 10, 20):
    print(f"step {k:>2}: weight {r.weights[k]}")

conv, limit = detect_convergence(r, 1e-6)
print("converged at step", conv)
print({w: round(x, 5) for w, x in limit.as_dict().items() if len(w) <= 2})

print("estimated dilatation:", estimate_dilatation(r, 5))
m = transition_matrix(phi)
print("transition matrix:\n", m)
print("Perron-Frobenius:", pf_eigenvalue(m).eigenvalue)

# the boundary commutator never moves projectively
fixed = orbit(phi, counting_current(Word.parse("abAB", 2)), 5, 2)
print("commutator weights:", [str(w) for w in fixed.weights])
