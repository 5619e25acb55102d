"""Demo 4: generic-rank profiles, multitype, minimality, witness points.

The generic ranks of the chains start at m, 2m and climb by increments
e_1, e_2, ... until they stabilize.  The increments determine the type,
the multitype and minimality; a witness point realizes the maximal rank on
a chain that returns exactly to the basepoint.
"""

from segrechains import (
    Basepoint,
    hypersurface_minimality,
    new_manifold,
    segre_invariants,
    witness_point,
)

examples = {
    "Heisenberg quadric": new_manifold(1, 1, ["w1*zeta1"]),
    "Levi-flat plane": new_manifold(1, 1, ["0"]),
    "quartic z=conj(z)+i w^2 conj(w)^2": new_manifold(1, 1, ["w1^2*zeta1^2"]),
    "codim-2 tube-like in C^3": new_manifold(
        1, 2, ["w1*zeta1", "w1^2*zeta1 + w1*zeta1^2"]
    ),
}

for name, M in examples.items():
    inv = segre_invariants(M)
    print(f"== {name} ==")
    print("  ranks     :", list(inv.profile.r))
    print("  increments:", list(inv.profile.e))
    print("  multitype :", inv.multitype, " type:", inv.mu)
    print("  minimal   :", inv.minimal)
    if M.d == 1:
        print("  transversal-slice test agrees:",
              hypersurface_minimality(M) == inv.minimal)
    print()

print("== Witness chain for the quartic hypersurface ==")
M = examples["quartic z=conj(z)+i w^2 conj(w)^2"]
inv = segre_invariants(M)
rec = witness_point(M, inv)
print("chain length       :", rec.chain_length)
print("returns to base    :", rec.returns_to_basepoint)
print("rank at the witness:", rec.rank_at_witness, "(= dim of the complexification)")

print()
print("== Semicontinuity: origin vs generic basepoint ==")
M10 = new_manifold(2, 2, ["w1*zeta1", "xi1^2*w2*zeta2 + i*xi1*w1*zeta1*w2*zeta2"])
origin = segre_invariants(M10)
generic = segre_invariants(M10, Basepoint.symbolic())
print("first increment at the origin :", origin.profile.e[0])
print("first increment generically   :", generic.profile.e[0])
