# coding: utf-8

# # Gates as joint eigenbases
#
# The rows of the two-qubit gate S2 are common eigenvectors of the
# commuting observables XZ, ZX and YY.  The three-qubit gate S3 does the
# same for their lift by Z.

# In[1]:

from tripartite import gates
from tripartite.linalg import identity

S2 = gates.constant("s2")
print(S2)
print("S2^T S2 = I:", S2.T @ S2 == identity(4))


# Each row gets a sign for each observable.

# In[2]:

for row, signs in enumerate(gates.joint_eigensign_check(S2, gates.observable_triple("two_qubit")), 1):
    print(f"row {row}: " + " ".join(f"{s:+d}" for s in signs))


# In[3]:

S3 = gates.constant("s3")
pattern = gates.joint_eigensign_check(S3, gates.observable_triple("three_qubit"))
print("S3 sign patterns:", pattern)


# # Which vectors of x_A4 are B-type?
#
# Reading the gate's rows as three-qubit states gives tau3 = 1/4 but one
# two-tangle vanishes.  Its columns are balanced: every tangle equals 1/4.

# In[4]:

x = gates.constant("x_a4")
for axis in ("rows", "columns"):
    report = gates.gate_entanglement_report(x, axis)
    first = report[0]["profile"]
    print(f"{axis:8s} B-type: {sum(r['b_type'] for r in report)}/8, "
          f"first (tau3, tau_AB, tau_AC, tau_BC) = {first.tau3}, {first.tau_ab}, {first.tau_ac}, {first.tau_bc}")
