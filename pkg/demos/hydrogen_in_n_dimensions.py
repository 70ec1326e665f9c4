"""Coulomb levels in several dimensions, closed form against a finite-difference solve.

Run:  python3 demos/hydrogen_in_n_dimensions.py
"""
from mie_nd import Channel, energy, fd_eigenvalues, fd_problem, make_params

coulomb = make_params(A=1.0, B=0.0)

print("Coulomb potential -1/r, hbar = mu = 1")
print(f"{'N':>2} {'l':>2} {'n_r':>3} {'closed form':>16} {'finite diff.':>16} {'rel. diff':>10}")
for N in (3, 4, 5, 6):
    for ell in (0, 1):
        # three lowest levels of this channel from one Richardson-extrapolated solve
        numeric = fd_eigenvalues(fd_problem(coulomb, N, ell, k=3), 3)
        for n_r, e_fd in enumerate(numeric):
            e = energy(coulomb, Channel(N, ell, n_r)).energy
            print(f"{N:>2} {ell:>2} {n_r:>3} {e:>16.10f} {e_fd:>16.10f} {abs(e - e_fd) / abs(e):>10.1e}")

# Levels depend on N and l only through n_r + l + (N-3)/2, so N=5, l=0 sits on N=3, l=1.
a = energy(coulomb, Channel(5, 0, 0)).energy
b = energy(coulomb, Channel(3, 1, 0)).energy
print(f"\nN=5 l=0 ground {a:.6f} equals N=3 l=1 lowest {b:.6f}")
