"""Degeneracies of the integer principal levels in N = 3..10.

Run:  python3 demos/degeneracy_table.py
"""
from mie_nd.spectrum import degeneracy, degeneracy_enumerated, multiplicity

print("Closed-form degeneracies, cross-checked by counting hyperspherical labels\n")
print(" N  " + "".join(f"{f'n={n}':>7}" for n in range(1, 6)))
for N in range(3, 11):
    row = []
    for n in range(1, 6):
        d = degeneracy(n, N)
        assert d == degeneracy_enumerated(n, N)
        row.append(d)
    print(f"{N:>2}  " + "".join(f"{d:>7}" for d in row))

print("\nN=9, n=5 is 1 + 9 + 44 + 156 + 450 =", sum(multiplicity(nu, 9) for nu in range(5)))
print("Three dimensions give n^2:", [degeneracy(n, 3) for n in range(1, 8)])
