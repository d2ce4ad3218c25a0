# coding: utf-8

# # Exact three-qubit entanglement
#
# Amplitudes here are exact numbers: rationals, or elements of Q(sqrt d).
# Tangles come out as exact fractions, so identities such as monogamy can be
# checked with `==` rather than a tolerance.

# In[1]:

import random
from fractions import Fraction

from tripartite import qubits
from tripartite.linalg import eigen_quadratic


# Three reference states.  GHZ carries only genuinely tripartite entanglement,
# W only pairwise entanglement, and the B-state splits it evenly.

# In[2]:

for name, s in [("GHZ", qubits.ghz_state()), ("W", qubits.w_state()), ("B", qubits.b_state())]:
    print(f"{name:4s} {s}")
    print("     three-tangle:", qubits.three_tangle(s))


# # Reduced states and the spin flip
#
# Tracing out one qubit of the B-state leaves a two-qubit density matrix.
# The spectrum of rho times its spin flip lives in Q(sqrt 2).

# In[3]:

rho = qubits.reduce(qubits.b_state(), "BC")
print(rho.data)
spectrum = eigen_quadratic(rho.data @ qubits.spin_flip(rho).data)
print("eigenvalues:", [str(v) for v in spectrum.flat()], "exact:", spectrum.exact)
print("two-tangle:", qubits.two_tangle(rho))


# The full profile bundles every tangle together with the monogamy residuals
# tau_X(YZ) - (tau3 + tau_XY + tau_XZ).

# In[4]:

profile = qubits.entanglement_profile(qubits.b_state())
for k, v in profile.as_dict().items():
    print(f"{k:20s} {v}")
print("B-type:", qubits.is_b_type(profile))


# # Monogamy on random states
#
# Random rational points on the unit sphere give exactly normalized states.
# The residuals should all be zero, with no rounding anywhere.

# In[5]:

rng = random.Random(0)
states = [qubits.random_rational_state(rng) for _ in range(200)]
worst = max(max(abs(r) for r in qubits.entanglement_profile(s).residuals) for s in states)
print("largest |residual| over 200 states:", worst)


# # A continuous phase
#
# The canonical five-parameter form with a generic phase drops to floating
# point.  The identity still holds to machine precision.

# In[6]:

h = Fraction(1, 2)
s = qubits.generic_state(h, h, h, 0, h, phi=1.1)
p = qubits.entanglement_profile(s)
print("exact:", p.exact, "three-tangle:", round(p.tau3, 12), "residuals:", [f"{r:.1e}" for r in p.residuals])
