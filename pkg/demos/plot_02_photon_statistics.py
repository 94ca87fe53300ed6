"""
Photon statistics and phase sensitivity
=======================================

Mean photon number, number uncertainty and the quantum Cramer-Rao bound of
the heralded states, compared with the squeezed vacuum they come from.
"""

from paritystates import ModelParams, herald_stats, smsv_reference

s, t = 3.0, 0.99
ref = smsv_reference(s)
print(f"squeezed vacuum at s={s}: <n> = {ref.mean:.2f}, dn^(1/2) = {ref.variance ** 0.5:.2f}")

# Every click count raises the mean photon number.  The gain column says how
# many dB the phase bound improves on the squeezed vacuum.
print(" n      <n>     sqrt(dn)    Rn     RV   gain/dB")
for n in (0, 1, 2, 5, 10, 20, 50, 100):
    st = herald_stats(ModelParams(s, t), n)
    print(f"{n:3d} {st.mean:9.2f} {st.sqrt_variance:9.2f} {st.rn:6.2f} {st.rv:6.2f} {st.gain_db:7.2f}")

# Quadrature squeezing: even states stay squeezed (dX2 < 1/2), odd ones are
# noisier than the squeezed vacuum.
p = ModelParams(1.0, 0.9)
for n in range(6):
    st = herald_stats(p, n)
    print(f"n={n}: dX2 = {st.dx2:.4f}   (squeezed vacuum {smsv_reference(1.0).dx2:.4f})")
