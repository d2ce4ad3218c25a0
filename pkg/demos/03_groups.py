# coding: utf-8

# # Finite matrix groups
#
# Two orthogonal 8x8 gates generate a group of order 12.  Small groups can
# be enumerated outright; large ones need a stabilizer chain.

# In[1]:

import time

from tripartite import gates, matgroup
from tripartite.linalg import diag, identity

A4 = matgroup.MatrixGroup([gates.constant("x_a4"), gates.constant("y_a4")])
closure = matgroup.enumerate_group(A4)
print("order:", closure.order)
print(matgroup.identify_small(closure).as_dict())


# The derived subgroup is the Klein four-group.

# In[2]:

D = matgroup.derived_subgroup(closure)
print("derived:", matgroup.identify_small(D).name)


# # Schreier-Sims
#
# For sigma_x (x) S2 and S3, enumeration is out of reach at 3.5e8 elements.
# The stabilizer chain certifies the order from orbit sizes.

# In[3]:

WE8 = matgroup.MatrixGroup([gates.constant("we8.a"), gates.constant("we8.b")])
t0 = time.perf_counter()
order, chain = matgroup.order_bsgs(WE8, seed=0, verify=True)
print(f"order {order:,} in {time.perf_counter() - t0:.1f} s, verified={chain.verified}")
print("orbit sizes:", chain.orbit_sizes)


# Membership is a sift through the chain.

# In[4]:

word = matgroup.random_words(WE8, 1, length=50, seed=1)[0]
print("random word in group:", matgroup.contains(chain, word))
print("-I in group:", matgroup.contains(chain, -identity(8)))
# A reflection has determinant -1, so it lies outside a group of rotations.
print("reflection in group:", matgroup.contains(chain, diag(-1, 1, 1, 1, 1, 1, 1, 1)))
