"""Demo 5: bracket-generation ladders, Levi type, and the cross-check.

The differential route to minimality: iterated Lie brackets of the CR pair
span growing subspaces at the basepoint, and the dimension jumps (lengths
and multiplicities) must total the same codimension as the chain-rank
increments.  Levi type measures how many conjugate derivatives of the
defining gradients are needed to span the ambient space.
"""

from segrechains import (
    crosscheck_totals,
    e1_determinant,
    format_series,
    holomorphic_nondegeneracy,
    hormander_numbers,
    levi_type,
    new_manifold,
)

print("== Ladder for the codimension-4 example in C^5 ==")
M = new_manifold(
    1,
    4,
    [
        "w1*zeta1",
        "w1^2*zeta1 + w1*zeta1^2",
        "w1^3*zeta1 + w1*zeta1^3",
        "w1^2*zeta1^2",
    ],
)
hd = hormander_numbers(M)
for mu, l, dim in hd.ladder:
    print(f"  bracket length {mu}: multiplicity {l}, span dimension {dim}")
print("minimal by brackets:", hd.minimal)

cc = crosscheck_totals(M)
print("increment total == multiplicity total:", cc["totals_agree"],
      f"({cc['sum_e']} == {cc['sum_l']})")
print("minimality verdicts agree:", cc["verdicts_agree"])

print()
print("== Levi types ==")
H = new_manifold(1, 1, ["w1*zeta1"])
print("Heisenberg Levi type at 0:", levi_type(H))
quartic = new_manifold(1, 1, ["w1^2*zeta1^2"])
print("quartic at 0 (not finitely nondegenerate):", levi_type(quartic))
print("quartic generically:", holomorphic_nondegeneracy(quartic))
product = new_manifold(2, 1, ["w1*zeta1"])
print("Heisenberg x C (degenerate product):", holomorphic_nondegeneracy(product))

print()
print("== The increment-2 determinant test (m = d = 2) ==")
elliptic = new_manifold(2, 2, ["w1*zeta1", "w2*zeta2"])
det, nonzero = e1_determinant(elliptic)
print("elliptic quadric: det =", format_series(det), "-> first increment 2:", nonzero)
