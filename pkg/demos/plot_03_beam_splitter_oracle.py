"""
Cross-check against a simulated beam splitter
=============================================

The closed forms never touch a two-mode state.  Here the splitter is applied
to the truncated Fock expansion by brute force and the reflected mode is
projected on n photons; both routes must agree.
"""

import numpy as np
from paritystates import ModelParams, heralded_amplitudes, smsv_amplitudes, success_probability
from paritystates.oracle import bs_transform, moments_from_amplitudes, project_and_normalize
from paritystates.stats import mean_photon, quadrature_variances

s, t = 1.0, 0.6
two_mode = bs_transform(smsv_amplitudes(s, 1e-32), t)
print(f"two-mode grid {two_mode.amps.shape}, norm^2 = {two_mode.norm_sq:.15f}")

p = ModelParams(s, t)
for n in range(5):
    simulated, prob = project_and_normalize(two_mode, n)
    closed = heralded_amplitudes(p, n, 1e-30).amps
    k = min(len(closed), len(simulated.amps))
    diff = np.max(np.abs(closed[:k] - simulated.amps[:k]))
    print(f"n={n}: max |amplitude diff| = {diff:.1e}, "
          f"P from simulation {prob:.10f} vs closed form {success_probability(p, n):.10f}")

# Moments by direct summation over the simulated amplitudes.
simulated, _ = project_and_normalize(two_mode, 3)
om = moments_from_amplitudes(simulated)
print(f"<n>: summed {om.mean:.12f}, closed {mean_photon(p, 3):.12f}")
print(f"Var X2: summed {om.var_x2:.12f}, closed {quadrature_variances(p, 3)[1]:.12f}")
