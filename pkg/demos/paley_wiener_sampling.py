"""Band-limited functions on H and their sinc series.

A spectrum on [-A, A] with a quaternion coefficient gives an entire slice
regular function of exponential type A.  Its samples at pi k / A rebuild it
anywhere in H, with the sinc factor on the left of each sample.  The error of
the truncated series is bounded by the energy of the omitted samples.

    python demos/paley_wiener_sampling.py
"""

import numpy as np

from slicepw import paley_wiener as pw
from slicepw import qft as qf
from slicepw import quaternion as qt
from slicepw import sampling as sp

rng = np.random.default_rng(3)
A = np.pi
S = pw.random_compact_spectrum(rng, A, qt.random_units(rng, 1)[0])
f = pw.synthesize_compact(S)

q = qt.random_quaternions(rng, 200, 6.0)
rep = pw.growth_check(f, q)
print(f"growth ratio |f(q)| / (C e^(A |Im q|)): max {rep.max_ratio:.3f} over {len(q)} points")

F = f.restrict(qf.UniformGrid.symmetric(60.0, 0.05))
spec = qf.qft_left(F)
print(f"spectral support radius {qf.support_radius(spec, 1e-6):.4f} (band {A:.4f}, bin {spec.grid.step:.4f})")
print("in PW_A:", pw.pw_membership(F, A, 1e-6), " in PW_2:", pw.pw_membership(F, 2.0, 1e-6))

samples = sp.SampleSet.from_function(f, A, 400)
print(f"sample energy {sp.sample_energy(samples):.10f} vs line energy {sp.line_energy(f, sp.error_grid(samples)):.10f}")

M = 0.5
pts = qt.from_slice(rng.uniform(-5, 5, 50), rng.uniform(-M, M, 50), qt.random_units(rng, 50))
exact = f.eval_array(pts)
print(" K    max error    bound (p=2)")
for K in (5, 10, 20, 40, 80, 200):
    err = np.max(qt.norm(sp.wks_reconstruct(samples.truncate(K), pts, M) - exact))
    bound = sp.truncation_bound(K, M, 2.0, sp.tail_energy(samples, K))
    print(f"{K:3d}  {err:.3e}    {bound:.3e}")

curve = sp.l2_error_curve(f, samples, [5, 10, 20, 40, 80, 160])
print("L2 error curve:", " ".join(f"{v:.2e}" for v in curve))

line = f.restrict(qf.UniformGrid.symmetric(40.0, 0.01))
q0 = np.array([1.0, 0.0, 1.0, 0.0])
print("reproducing kernel vs synthesis at 1+j:", qt.norm(pw.reproduce(line, A, q0) - f.eval_array(q0)))
