"""Hardy functions on the right half-space.

A spectrum on (-inf, 0] synthesizes a function on Re q > 0.  Its boundary
values on one slice give it back through the Poisson or the Cauchy kernel, and
the spectrum of the boundary data does not depend on the slice.  A Gaussian
has spectrum on both sides of zero and is not a Hardy trace.

    python demos/hardy_half_space.py
"""

import numpy as np

from slicepw import hardy as hd
from slicepw import qft as qf
from slicepw import quaternion as qt
from slicepw.quaternion import UNIT_J

rng = np.random.default_rng(5)
g = hd.random_rational_hardy(rng)
f = hd.hardy_function(g.half_line())
print(f"spectrum cutoff {f.spectrum.cutoff:g}, admissible Re q >= {f.spectrum.x_floor:.3f}")

grid = qf.UniformGrid.symmetric(100.0, 0.05)
trace = f.boundary_trace(grid, UNIT_J)
q = qt.random_quaternions(rng, 20, 2.0)
q[:, 0] = np.abs(q[:, 0]) + 0.5
syn = f.eval_array(q)
poi = hd.poisson_extend(trace, q)
cau = hd.cauchy_extend(trace, q)
print("synthesis vs Poisson:", np.max(qt.norm(syn - poi)))
print("synthesis vs Cauchy: ", np.max(qt.norm(syn - cau)))
print("synthesis vs closed form:", np.max(qt.norm(syn - g(q))))
print("reproducing kernel at 2+i:", qt.norm(hd.rk_reproduce(trace, np.array([2.0, 1, 0, 0])) - g(np.array([2.0, 1, 0, 0]))))

units = [qt.UNIT_I, UNIT_J, qt.ImaginaryUnit.from_vector([1, 1, 1])]
S, dev = qf.essential_spectra(lambda U: f.boundary_trace(grid, U).samples, units)
print(f"spectra of the boundary data on three slices agree to {dev:.2e}")

y = grid.points
gauss = hd.BoundaryTrace(qf.LineSamples(grid, qt.from_slice(np.exp(-y**2), 0 * y, UNIT_J.vec)), UNIT_J)
print("Hardy trace accepted:", hd.hardy_membership(trace), " Gaussian accepted:", hd.hardy_membership(gauss))
