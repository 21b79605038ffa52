"""Are the two 2x3x3 families mutually unbiased?  No -- and by how much.

Two orthonormal sets of an 18-dimensional space would be mutually
unbiased if every cross overlap had magnitude 1/sqrt(18) = 0.2357...
The two unextendible families instead realize only three magnitudes:
0, 1/sqrt(12) = 0.2887, and 1/sqrt(6) = 0.4082, the latter already on
the very first pair.
"""

import numpy as np

from umeb import mub_overlap, umeb_2x3x3_first, umeb_2x3x3_second

first, second = umeb_2x3x3_first(), umeb_2x3x3_second()
rep = mub_overlap(first, second)

print(f"overlap magnitudes |<phi_ij|psi_kl>| ({len(first)} x {len(second)}):")
header = "        " + " ".join(f"{lab:>6s}" for lab in second.labels[:6]) + "  ..."
print(header)
for i, lab in enumerate(first.labels[:6]):
    row = " ".join(f"{m:6.4f}" for m in rep.magnitudes[i, :6])
    print(f"  {lab:>6s} {row}  ...")

values = sorted({float(m) for m in np.round(rep.magnitudes.reshape(-1), 10)})
print(f"\ndistinct magnitudes: {values}")
print(f"unbiased target 1/sqrt(18) = {rep.target:.16f}")
print(f"max deviation from target  = {rep.max_deviation:.16f}")
i, j = rep.first_violation
print(f"first violating pair: ({first.labels[i]}, {second.labels[j]}) "
      f"with |overlap| = {rep.magnitudes[i, j]:.16f}")
print(f"note: {rep.note}")
print(f"verdict: {'mutually unbiased' if rep.unbiased else 'not mutually unbiased'}")
