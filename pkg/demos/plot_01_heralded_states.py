"""
Heralded states and their probabilities
=======================================

A squeezed vacuum hits a beam splitter; counting n photons in the reflected
arm leaves the transmitted mode in a state of definite parity.
"""

# One operating point: squeezing s = 1 and a 90% transmitting splitter.
import numpy as np
from paritystates import ModelParams, heralded_amplitudes, herald_distribution

p = ModelParams(s=1.0, t=0.9)
print(f"y0 = {p.y0:.6f}, y1 = {p.y1:.6f}")

# Amplitudes for two and three clicks.  The even state lives on |0>, |2>, ...
# and the odd one on |1>, |3>, ...
for n in (2, 3):
    v = heralded_amplitudes(p, n)
    print(f"n={n}: {v.parity}, kept up to |{v.trunc_N}>, discarded <= {v.tail_bound:.1e}")
    print("   first amplitudes:", np.round(v.amps[:5], 6))

# Heralding probabilities.  No click is by far the likeliest outcome.
dist = herald_distribution(p, 10)
for n, prob in enumerate(dist.probs):
    print(f"P_{n:<2d} = {prob:.6e}")
print(f"probability beyond n=10: {dist.tail:.2e}")
