"""The exceptional case G2, done with roots alone.

There are four classes of admissible systems: the empty one, a single short
root, a single long root, and a short root paired with an orthogonal long
root.  Only the centre {1, -1} of the dihedral Weyl group fixes all four.

    python demos/g2_geometry.py
"""

from cartanstab import classify, kind, stabilizer
from cartanstab.roots import enumerate_weyl, g2_form, positive_roots


def main():
    k = kind("g2")
    print("positive roots and squared lengths:")
    for a in positive_roots(k):
        print(f"  {a}: {g2_form(a, a)}")

    print("\nclasses:")
    for c in classify(k).classes:
        print(f"  {c.class_id}: {list(c.representative.roots)}  ({c.orbit_size_spans} spans in orbit)")

    group = list(enumerate_weyl(k))
    stab = stabilizer(k)
    print(f"\n|W| = {len(group)}, stabilizer = {[w.matrix for w in stab.elements]}")


if __name__ == "__main__":
    main()
