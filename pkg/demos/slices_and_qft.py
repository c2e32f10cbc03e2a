"""Slices, the representation formula and the left QFT.

A slice regular function is fixed by its values on one complex slice.  We
rebuild q -> sin(q) c on a random slice from the i-slice, split a function
into four slice preserving parts, and watch the left QFT move between
imaginary units.

    python demos/slices_and_qft.py
"""

import numpy as np

from slicepw import qft as qf
from slicepw import quaternion as qt
from slicepw import slicefn as sf
from slicepw.quaternion import UNIT_I, ImaginaryUnit

rng = np.random.default_rng(1)
c = np.array([0.5, -1.0, 2.0, 0.25])
f = sf.SliceEvaluator(lambda q: qt.mul(qt.sin_q(q), np.broadcast_to(c, q.shape)), name="sin*c")

# values on C_i at x +- i y determine f at x + J y for every J
x, y = 0.7, 1.3
J = qt.random_units(rng, 1)[0]
fp, fm = f.on_slice(x, y, UNIT_I.vec), f.on_slice(x, -y, UNIT_I.vec)
rebuilt = sf.represent(fp, fm, UNIT_I, J)
print("representation formula error on a random slice:", qt.norm(rebuilt - f.on_slice(x, y, J)))

# f = h0 + h1 i + h2 j + h3 k with slice preserving h's
quad = sf.decompose(f)
q = sf.probe_points(n=256)
print("decompose/recombine error:", np.max(qt.norm(quad.recombine(q) - f.eval_array(q))))
print("components slice preserving:", [sf.is_slice_preserving(h, 1e-10) for h in quad.components])
print("sin*c itself slice preserving:", sf.is_slice_preserving(f))

# left QFT of a real Gaussian is the same Gaussian on every unit
grid = qf.UniformGrid.symmetric(12.0, 0.01)
F = qf.LineSamples.from_function(lambda t: np.exp(-t**2 / 2) / np.pi**0.25, grid)
for U in (UNIT_I, ImaginaryUnit.from_vector([1, -2, 0.5])):
    S = qf.qft_left(F, U)
    err = np.max(np.abs(S.values[:, 0] - np.exp(-S.t**2 / 2) / np.pi**0.25))
    print(f"gaussian pair on unit {np.round(U.vec, 3)}: max error {err:.2e}, plancherel {qf.plancherel_norm(F, S)}")

# a quaternion valued signal: the spectrum on J follows from the one on I
xs = grid.points
cq = qt.random_quaternions(rng, 2)
G = qf.LineSamples(grid, np.exp(-xs**2)[:, None] * (cq[0] + np.outer(xs, cq[1])))
I1, I2 = (ImaginaryUnit.from_vector(v) for v in qt.random_units(rng, 2))
S1 = qf.qft_left(G, I1)
print("transfer I -> J vs direct transform:", qf.transfer_spectrum(S1, I2).max_deviation(qf.qft_left(G, I2, method="direct")))
