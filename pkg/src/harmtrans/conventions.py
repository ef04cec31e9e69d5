"""Sign and normalization ledger.

Every kernel sign, orientation and energy normalization used across the
package is fixed here, once.  The jump-relation and oracle tests enforce
these choices; do not change one entry without re-deriving the rest.

Orientation
-----------
Curves are positively oriented (counterclockwise, enclosed area > 0).
The unit tangent is ``gamma'/|gamma'|`` and the outward normal (pointing
from the interior side to the exterior side) is ``-i * tangent``.

Laplace kernels
---------------
Fundamental solution:  G(z, w) = -log|z - w| / (2*pi).

Double layer with density mu (outward normal at the source point):

    D[mu](z) = -(1/2*pi) * Int Im[gamma'(s) / (gamma(s) - z)] mu(s) ds.

Unit density gives D[1] = -1 inside and 0 outside; the boundary operator
K (smooth-curve limit on the diagonal) therefore satisfies K 1 = -1/2,
and the one-sided limits are  interior = (-1/2 I + K) mu,
exterior = (+1/2 I + K) mu.

Single layer S has eigenvalues 1/(2|k|) on Fourier modes e^{ikt} of the
unit circle (and annihilates constants there).

Exterior solvability
--------------------
(+1/2 I + K) annihilates constants, so the exterior system is completed
with the rank-one term R mu = (arclength mean of mu) and the exterior
solution is represented as  u = D[mu] + R mu.  The pure double-layer
part decays at infinity; the additive constant is carried explicitly so
boundary data (constants included) are matched exactly.  Constants do
not change any Dirichlet energy.

Neumann data
------------
The normal derivative of a double-layer potential is continuous across
the curve and is evaluated through the tangential-derivative factorization
of the hypersingular operator:  d/dn u = d/ds S [d mu/ds],
never by finite-part quadrature.

Green's function of the disk
----------------------------
g_p(z) = -log| (z - p) / (1 - conj(p) z) |, positive on the punctured
disk, zero on the unit circle.  Its conjugate differential has period
-2*pi around the boundary:  Int_Gamma *dg_p = -2*pi.

Energy normalizations
---------------------
Two fixed conventions coexist and are related by a factor of 2:

* ``series`` convention (harmonic-series inner product):
  (f, g) = IntInt [ f_z conj(g_z) + f_zbar conj(g_zbar) ] dA,
  so that (z^n, z^n) on the unit disk equals n*pi.  Used by
  ``series.dirichlet_inner``, ``series.collar_extension`` ratios, and
  by the mode-energy Gram matrices (circle Gram = diag(|k| pi)).

* ``gradient`` convention (classical Dirichlet integral):
  E(u) = IntInt |grad u|^2 dA = 2 * (u, u), computed on the boundary as
  Int u (du/dn) ds.  Used by ``bie.dirichlet_energy`` (so that
  E(Re z^k; disk) = k*pi and E(Re z; Omega) = area(Omega)) and by
  ``series.collar_energy_greens``.

Cross-path comparisons between the two routes must include the factor
GRADIENT_OVER_SERIES = 2.
"""

# classical |grad u|^2 integral divided by the series inner product (u, u)
GRADIENT_OVER_SERIES = 2.0

# conjugate period of the disk Green's function around the boundary
GREEN_COPERIOD = -6.283185307179586476925286766559  # -2*pi

# interior / exterior values of the unit-density double layer
DOUBLE_LAYER_INSIDE = -1.0
DOUBLE_LAYER_OUTSIDE = 0.0

# boundary operator acting on constants: K 1 = JUMP_CONSTANT * 1
JUMP_CONSTANT = -0.5
