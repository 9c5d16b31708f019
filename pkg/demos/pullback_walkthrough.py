"""Pull a degree-2 foliation of P^2 back to P^3 and look at what comes out.

Run from the repository root:

    python3 demos/pullback_walkthrough.py
"""
from foliage import fixtures as fx
from foliage.exterior import radial_field, interior_product, exterior_derivative
from foliage.foliation import EXACT, is_integrable, omega_from_1d, probabilistic, pullback_foliation
from foliage.ratmap import indeterminacy_witness_check
from foliage.singular import kupka_at
from foliage.text import format_poly

G = fx.acceptance_foliation(2)
print("G is given by the homogeneous field")
for i, c in enumerate(G.X.comps):
    print(f"  X{i} = {format_poly(c)}")

omega = omega_from_1d(G)
print(f"\nIts 1-form omega has coefficients of degree {omega.coefficient_degree()}.")

f = fx.binomial_map(2)
print("\nThe map f : P^3 --> P^2 is")
for c in f.comps:
    print("  ", format_poly(c))

F = pullback_foliation(f, G, integrability=None)
print(f"\nf*G has degree {F.theta}; the formula (d + 2) nu - 2 predicts {F.meta['predicted_degree']}.")
print(f"Common factor removed from the pull-back: degree {F.removed_degree}.")

eta = F.eta
k, q = eta.coefficient_degree(), eta.formdeg
R = radial_field(4)
print("\nStructural identities on eta:")
print("  i_R eta == 0          ", interior_product(R, eta).is_zero())
print("  i_R d eta == (k+q) eta", interior_product(R, exterior_derivative(eta)) == eta.scale(k + q))
print("  integrable (exact)    ", is_integrable(eta, EXACT))
print("  integrable (mod p)    ", is_integrable(eta, probabilistic(seed=7)))

# The eight points [1:+-1:+-1:+-1] are where all three components vanish.
pts = [(1, a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
rep = indeterminacy_witness_check(f, pts)
print(f"\nIndeterminacy: {rep.witnessed} of {rep.bezout_bound} points witnessed ({rep.status}).")

print("\nThe fiber over the singular point [0:0:1] of G:")
for p in fx.kupka_fiber_points():
    print(f"  {[str(x) for x in p]}  kupka: {kupka_at(eta, p)}")
