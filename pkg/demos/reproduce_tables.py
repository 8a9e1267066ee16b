"""Class counts and Weyl stabilizers for the classical split algebras.

For each family we count conjugacy classes of Cartan subalgebras (orbits of
admissible root systems) and compute the subgroup of the Weyl group fixing a
chosen representative of every class.  The last column compares the result
with the stabilizer predicted for that family.

    python demos/reproduce_tables.py
"""

from cartanstab import check_against_paper, classify, kind, stabilizer
from cartanstab.stabilizer import NotCatalogued

RANKS = {"sl": range(2, 8), "sp": range(1, 6), "so-odd": range(1, 6), "so-even": range(2, 7)}


def verdict(k, rep):
    try:
        return check_against_paper(k, rep).verdict
    except NotCatalogued:
        return "-"


def main():
    print(f"{'algebra':<14}{'classes':>8}{'|Stab|':>8}  verdict   nontrivial elements")
    for fam, ranks in RANKS.items():
        for n in ranks:
            k = kind(fam, n)
            rep = stabilizer(k)
            shown = " ".join(f"[{w}]" for w in rep.nontrivial[:3])
            if len(rep.nontrivial) > 3:
                shown += ", ..."
            print(f"{str(k):<14}{len(classify(k)):>8}{rep.order:>8}  {verdict(k, rep):<9} {shown}")
    g2 = kind("g2")
    rep = stabilizer(g2)
    print(f"{str(g2):<14}{len(classify(g2)):>8}{rep.order:>8}  {verdict(g2, rep):<9} "
          + " ".join(f"[{w}]" for w in rep.nontrivial))

    # In rank 4 the orthogonal family is fixed by more than the central flip.
    d4 = kind("so-even", 4)
    c = check_against_paper(d4)
    print("\nso-even(4): elements beyond the expected list:", " ".join(f"[{w}]" for w in c.extra))


if __name__ == "__main__":
    main()
