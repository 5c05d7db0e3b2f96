"""
Periodic classes and bounded hyperbolicity certificates
=======================================================

An automorphism with no periodic conjugacy class is a candidate for being
atoroidal.  The search here is bounded in length and period, so an empty
result is evidence, not proof.
"""
from currents_lab import boundary_class_test, hyperbolic_candidate_search, periodic_class_search
from currents_lab.catalog import commutator, fibonacci, phi3, surface_automorphism
from currents_lab.free_group import Automorphism

cert = periodic_class_search(fibonacci(), 6, 4)
print("fibonacci:", [(str(c), k) for c, k in cert.findings], "checked", cert.classes_checked)

cert = periodic_class_search(phi3(), 5, 4)
print("phi3 periodic classes up to length 5:", cert.findings or "none")

# compose a surface map with a slide that moves the boundary
phi = surface_automorphism(2)
boundary = commutator(4)
psi = Automorphism.from_strings(["ac", "b", "c", "d"], ["aC", "b", "c", "d"], name="slide")
print("boundary under phi:", boundary_class_test(phi, boundary))
print("boundary under psi:", boundary_class_test(psi, boundary))
rep = hyperbolic_candidate_search(phi, psi, boundary, m_max=3, max_length=3, p=2)
print("least m with an empty certificate:", rep.least_m)
