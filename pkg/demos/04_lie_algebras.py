# coding: utf-8

# # From group generators to a Lie algebra
#
# Bracket-closing the span of the two A4 generators gives a 9-dimensional
# algebra: an 8-dimensional semisimple part plus a one-dimensional center.

# In[1]:

from tripartite import gates, liealg

g = liealg.lie_closure([gates.constant("x_a4"), gates.constant("y_a4")])
print(liealg.algebra_invariants(g))


# # Roots
#
# The printed Cartan pair h1, h2 acts diagonally; its weights form an A2
# root system, which identifies the semisimple part as sl(3).

# In[2]:

rd = liealg.roots_relative(g, [gates.constant("ga4.h1"), gates.constant("ga4.h2")])
print("roots:", [tuple(str(x) for x in w) for w in rd.weights])
print("type:", liealg.root_system_type(rd))
print(liealg.cartan_matrix(rd))


# A Cartan pair can also be found without being told, by a sparse random
# search inside the algebra.

# In[3]:

found = liealg.find_cartan_pair(liealg.derived_algebra(g), seed=3)
print("found type:", liealg.root_system_type(found))


# # The commutator table
#
# The printed basis x1..h2 satisfies all 28 brackets of the sl(3) table.

# In[4]:

report = liealg.verify_chevalley_table(gates.basis("ga4"))
print(report.as_dict()["checked"], "pairs checked, ok =", report.ok)


# # Killing forms and real forms
#
# The signature of the Killing form tells real forms apart.  The split form
# sl(2, R) has signature (2, 1); the compact so(3) is negative definite.

# In[5]:

spin = liealg.LieAlgebraBasis([gates.constant(f"appendix.spin.{k}") for k in ("z", "plus", "minus")])
print(liealg.killing_form(spin))
print("sl(2,R):", liealg.killing_signature(spin))

from tripartite.linalg import Matrix

so3 = liealg.LieAlgebraBasis([
    Matrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]),
    Matrix([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
    Matrix([[0, 0, 0], [0, 0, 1], [0, -1, 0]]),
])
print("so(3):", liealg.killing_signature(so3))
