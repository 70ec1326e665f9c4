"""Walking up and down a fixed-decay-rate family with the ladder operators.

Run:  python3 demos/ladder_walk.py
"""
from mie_nd import ladder as lad
from mie_nd import make_params

params = make_params(A=2.0, B=1.0)
family = lad.LadderFamily.physical(params, N=4, ell=0)
v = family.v
print(f"Family in N=4, l=0 with v = {v:.6f} and shared decay rate eps = {family.epsilon:.6f}\n")

print(f"{'n':>2} {'lower coeff':>12} {'residual':>9} {'raise coeff':>12} {'residual':>9} {'[L-,L+]':>10} {'Casimir':>9}")
for n in range(8):
    state = family.state(n)
    down = lad.apply_lower(state)
    up = lad.apply_raise(state)
    down_res = down.residual if n == 0 else down.relative_residual
    comm = lad.commutator_check(family, n)
    cas = lad.casimir_eigenvalue(family, n)
    print(f"{n:>2} {down.coefficient:>12.6f} {down_res:>9.1e} {up.coefficient:>12.6f} "
          f"{up.relative_residual:>9.1e} {comm:>10.6f} {cas:>9.6f}")

print(f"\nCasimir should be v(v+1) = {v * (v + 1):.6f} for every n")

# the alternative creation constant is off by exactly N
bad = lad.apply_raise(family.state(2), convention="printed")
print(f"Alternative creation constant: relative residual {bad.relative_residual:.2f}")

me = lad.matrix_elements(family, 4)
print("\nMatrix of r (rows: expansion of r R_n in the family)")
print(me.M_r.round(6))
print(f"agreement with quadrature projection: {me.r_agreement:.1e}")
