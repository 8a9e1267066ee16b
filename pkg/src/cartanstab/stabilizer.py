"""Weyl elements fixing every member of a representative family.

``w`` fixes ``F`` when it maps span(F) onto itself; the roots themselves may
be permuted or negated.  The stabilizer of a family is the intersection of
these span stabilizers, found by scanning the whole Weyl group.
"""

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .admissible import AdmissibleSystem, classify, family_for
from .roots import (
    AlgebraKind,
    Family,
    WeylElement,
    apply,
    compose,
    enumerate_weyl,
    flip,
    identity,
    inverse,
    signed_perm,
    transposition,
)


class NotCatalogued(ValueError):
    """No stabilizer statement is recorded for this kind/rank."""


@dataclass(frozen=True)
class StabilizerReport:
    kind: AlgebraKind
    family: tuple
    elements: tuple
    generators_hint: tuple
    family_ids: tuple = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def nontrivial(self) -> tuple:
        return tuple(w for w in self.elements if not w.is_identity())


@dataclass(frozen=True)
class PaperClaim:
    kind: AlgebraKind
    listed: tuple  # nontrivial elements named explicitly
    generated: bool  # True: claim is the subgroup generated by ``listed``
    source: str

    def claimed_set(self) -> frozenset:
        if self.generated:
            return frozenset(closure(self.kind, self.listed))
        return frozenset(self.listed) | {identity(self.kind)}


@dataclass(frozen=True)
class Comparison:
    kind: AlgebraKind
    computed: StabilizerReport
    claim: PaperClaim
    verdict: str  # MATCH | SUPERSET | MISMATCH
    missing: tuple = ()  # claimed but not computed
    extra: tuple = ()  # computed but not claimed
    notes: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return self.verdict in ("MATCH", "SUPERSET")


def closure(k: AlgebraKind, gens: Iterable[WeylElement]) -> list[WeylElement]:
    """Subgroup generated by ``gens``, canonically sorted."""
    gens = list(gens)
    seen = {identity(k)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = compose(g, w)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return sorted(seen, key=WeylElement.sort_key)


def is_subgroup(k: AlgebraKind, elements: Sequence[WeylElement]) -> bool:
    s = set(elements)
    if identity(k) not in s:
        return False
    return all(inverse(a) in s for a in s) and all(compose(a, b) in s for a in s for b in s)


def _generators(k: AlgebraKind, elements: Sequence[WeylElement]) -> tuple:
    gens: list[WeylElement] = []
    covered = {identity(k)}
    for w in elements:
        if w not in covered:
            gens.append(w)
            covered = set(closure(k, gens))
    return tuple(gens)


def family_stabilizer(k: AlgebraKind, family: Sequence[AdmissibleSystem]) -> StabilizerReport:
    if not family:
        raise ValueError("family must be non-empty")
    for f in family:
        if f.kind != k:
            raise ValueError(f"family member {f} belongs to {f.kind}, not {k}")
    # Membership of the images of a basis is equivalent to span equality since w is invertible.
    # Low-dimensional spans reject most elements fastest, so test them first.
    checks = sorted(((f.span, f.span.basis) for f in family if f.roots), key=lambda t: t[0].dim)
    found = []
    for w in enumerate_weyl(k):
        if all(sp.contains(apply(w, row)) for sp, basis in checks for row in basis):
            found.append(w)
    if not is_subgroup(k, found):
        raise AssertionError(f"stabilizer scan for {k} did not return a subgroup")
    report = classify(k)
    ids = tuple(report.class_of(f) for f in family)
    return StabilizerReport(k, tuple(family), tuple(found), _generators(k, found), ids)


def stabilizer(k: AlgebraKind) -> StabilizerReport:
    """Stabilizer of the standard representative family of ``k``."""
    return family_stabilizer(k, family_for(k))


def expected_stabilizer(k: AlgebraKind) -> PaperClaim:
    """The published description of the fixing subgroup, as data."""
    f, n = k.family, k.rank
    if f is Family.SL:
        gens = tuple(transposition(k, 2 * i - 1, 2 * i) for i in range(1, n // 2 + 1))
        return PaperClaim(k, gens, True, "A-type: products of transpositions (i i+1), i odd")
    if f is Family.SP:
        return PaperClaim(k, (flip(k),), False, "C-type: unique element e_i -> -e_i")
    if f is Family.SO_ODD:
        if n % 2 == 0:
            return PaperClaim(k, (flip(k),), False, "B-type, n even: flip all signs")
        listed = {flip(k, [n]), flip(k, range(1, n)), flip(k)} - {identity(k)}
        return PaperClaim(k, tuple(sorted(listed, key=WeylElement.sort_key)), False,
                          "B-type, n odd: flip e_n; flip e_1..e_{n-1}; flip all")
    if f is Family.SO_EVEN:
        if n == 4:
            listed = (signed_perm(k, [2, 1, 4, 3]), flip(k))
            return PaperClaim(k, listed, False, "D4: (12)(34) and flip all signs")
        if n == 5:
            listed = (signed_perm(k, [2, 1, 4, 3, 5]), flip(k, [1, 2, 3, 4]))
            return PaperClaim(k, listed, False, "D5: same elements as D4 (flip e_1..e_4)")
        if n >= 6:
            el = flip(k) if n % 2 == 0 else flip(k, range(1, n))
            return PaperClaim(k, (el,), False, "D_n, n>=6: unique sign change of e_1..e_n (n even) / e_1..e_{n-1} (n odd)")
        raise NotCatalogued(f"no stabilizer statement for {k}")
    if f is Family.G2:
        return PaperClaim(k, (flip(k),), False, "G2: center {1, -1} of the Weyl group")
    raise NotCatalogued(str(k))


def check_against_paper(k: AlgebraKind, computed: StabilizerReport | None = None) -> Comparison:
    """MATCH if computed == claim; SUPERSET if computed is the closure of a
    non-closed listed set; MISMATCH otherwise (with both diffs)."""
    claim = expected_stabilizer(k)
    if computed is None:
        computed = stabilizer(k)
    got = set(computed.elements)
    want = claim.claimed_set()
    key = WeylElement.sort_key
    missing = tuple(sorted(want - got, key=key))
    extra = tuple(sorted(got - want, key=key))
    if not missing and not extra:
        verdict = "MATCH"
    elif not missing and got == set(closure(k, claim.listed)):
        verdict = "SUPERSET"
    else:
        verdict = "MISMATCH"
    return Comparison(k, computed, claim, verdict, missing, extra)


def conjugate_family(w: WeylElement, family: Sequence[AdmissibleSystem]) -> list[AdmissibleSystem]:
    """Replace each member by its (positivity-normalized) image under ``w``."""
    from .admissible import image, make_system

    return [make_system(f.kind, image(w, f)) for f in family]


def report_json(c: Comparison) -> dict:
    rep = c.computed
    out = {
        "algebra": c.kind.family.value,
        "rank": c.kind.rank,
        "order": rep.order,
        "elements": [w.to_json() for w in rep.elements],
        "generators": [w.to_json() for w in rep.generators_hint],
        "family_used": list(rep.family_ids),
        "claim": {"source": c.claim.source, "listed": [w.to_json() for w in c.claim.listed],
                  "generated": c.claim.generated},
        "verdict": c.verdict,
    }
    if c.missing or c.extra:
        out["diff"] = {"missing": [w.to_json() for w in c.missing], "extra": [w.to_json() for w in c.extra]}
    return out
