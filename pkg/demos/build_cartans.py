"""Build one Cartan subalgebra per class in sp(3, R) and check the lifts.

Each admissible system F gives a Cartan subalgebra: the compact vectors
x_a - x_a^t for a in F together with the part of the diagonal orthogonal to F.
Every Weyl element fixing the whole family is then lifted to K and checked to
normalize each of these subalgebras.

    python demos/build_cartans.py [family] [rank]
"""

import sys

from cartanstab import kind, stabilizer
from cartanstab.admissible import root_str
from cartanstab.liealg import class_cartans, is_cartan, lift_weyl, realize, verify_fixes
from cartanstab.ratlin import fmt


def show(m):
    return "\n".join("    " + " ".join(f"{fmt(x):>3}" for x in row) for row in m)


def main(argv):
    fam = argv[0] if argv else "sp"
    n = int(argv[1]) if len(argv) > 1 else 3
    g = realize(kind(fam, n))
    print(f"{g.kind}: realized as {g.d} x {g.d} matrices, dim {g.dim}")

    cartans = class_cartans(g)
    for cs in cartans:
        roots = ", ".join(root_str(g.kind, a) for a in cs.system.roots) or "(none)"
        print(f"\nclass {cs.source_class}: F = {{{roots}}}")
        print(f"  toroidal dim {len(cs.toroidal_basis)}, vector dim {len(cs.vector_basis)}, "
              f"Cartan: {is_cartan(g, cs.h_basis)}")
        for x in cs.toroidal_basis:
            print(show(x))
            print()

    print("lifts of the stabilizer:")
    for w in stabilizer(g.kind).elements:
        k = lift_weyl(g, w)
        print(f"  {w}: fixes every class Cartan = {verify_fixes(g, k, cartans)}")


if __name__ == "__main__":
    main(sys.argv[1:])
