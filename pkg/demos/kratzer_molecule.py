"""A Kratzer-Fues diatomic model: levels, expectation values and the virial relation.

Run:  python3 demos/kratzer_molecule.py
"""
import numpy as np

from mie_nd import Channel, KratzerForm, KratzerVariant, from_kratzer, radial_state, virial
from mie_nd.observables import expect_inv_r, expect_inv_r2
from mie_nd.quadrature import expect_power
from mie_nd.spectrum import energy

# depth and equilibrium distance in natural units; a heavy reduced mass sets levels deep in the well
well = KratzerForm(kappa=0.2, r_e=2.0)
params = from_kratzer(well, mu=50.0)
print(f"Kratzer-Fues well: depth {well.kappa}, r_e {well.r_e} -> A={params.A}, B={params.B}, C={params.C}")

print("\nRotation-vibration levels (N = 3)")
for ell in (0, 1, 2):
    row = [energy(params, Channel(3, ell, n)).energy for n in range(4)]
    print(f"  l={ell}: " + "  ".join(f"{e:+.6f}" for e in row))

print("\nClosed forms against quadrature for the ground state")
ch = Channel(3, 0, 0)
state = radial_state(params, ch)
print(f"  <1/r>   {expect_inv_r(params, ch):.12f}   quadrature {expect_power(state, -1):.12f}")
print(f"  <1/r^2> {expect_inv_r2(params, ch):.12f}   quadrature {expect_power(state, -2):.12f}")
print(f"  <r>     {expect_power(state, 1):.6f}  (r_e = {well.r_e})")

hv = virial(params, ch)
print(f"\nVirial: beta = {hv.beta:.6f}, -(2-beta)<T> = {hv.virial_lhs:.10f}, (1-beta)<V> = {hv.virial_rhs:.10f}")

# the modified form shifts every level by kappa so the dissociation limit sits at +kappa
shifted = from_kratzer(KratzerForm(0.2, 2.0, KratzerVariant.MODIFIED_KRATZER), mu=50.0)
gap = energy(shifted, ch).energy - energy(params, ch).energy
print(f"Modified Kratzer shifts levels by {gap:.6f}")

r = np.array([1.0, 2.0, 4.0, 8.0])
print("\nGround-state radial function:", np.round(state(r), 6))
