"""Admissible root systems and their classification up to the Weyl group.

A set of positive roots is admissible when no sum, difference or double of
its members is a root (pairwise strongly orthogonal, no doubled roots).  Its
span in e-coordinates is the subspace that the Cartan subalgebra built from
it does *not* keep in its vector part; two systems are equivalent when some
Weyl element carries one span onto the other.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import ratlin
from .ratlin import Subspace
from .roots import (
    AlgebraKind,
    Family,
    Root,
    WeylElement,
    apply,
    check_weyl_guard,
    is_root,
    positive_part,
    positive_roots,
    simple_reflections,
)


@dataclass(frozen=True)
class AdmissibleSystem:
    kind: AlgebraKind
    roots: tuple
    span: Subspace = field(compare=False)

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def vector_part_dim(self) -> int:
        return self.kind.lie_rank - len(self.roots)

    def sort_key(self) -> tuple:
        return (len(self.roots), self.span.key(), self.roots)

    def __str__(self) -> str:
        return "{" + ", ".join(root_str(self.kind, r) for r in self.roots) + "}"


def root_str(k: AlgebraKind, r: Root) -> str:
    if k.family is Family.G2:
        return f"({r[0]},{r[1]})"
    terms = []
    for i, c in enumerate(r):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        terms.append(f"{sign}{mag}e{i + 1}")
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _compatible(k: AlgebraKind, a: Root, b: Root) -> bool:
    if a == b or a == tuple(-x for x in b):
        return False
    return not is_root(k, _add(a, b)) and not is_root(k, _sub(a, b))


def is_admissible(k: AlgebraKind, roots: Iterable[Sequence]) -> bool:
    roots = [tuple(r) for r in roots]
    for r in roots:
        if not is_root(k, r):
            raise ValueError(f"{r} is not a root of {k}")
    for i, a in enumerate(roots):
        if is_root(k, _add(a, a)):
            return False
        for b in roots[i + 1:]:
            if not _compatible(k, a, b):
                return False
    return True


def make_system(k: AlgebraKind, roots: Iterable[Sequence]) -> AdmissibleSystem:
    """Validate and canonicalize an admissible system (roots sorted descending)."""
    roots = [tuple(r) for r in roots]
    if not is_admissible(k, roots):
        raise ValueError(f"roots {roots} are not admissible in {k}")
    for r in roots:
        if positive_part(r) != r:
            raise ValueError(f"{r} is not a positive root")
    roots = tuple(sorted(roots, reverse=True))
    sp = ratlin.span(roots, k.coord_len)
    if sp.dim != len(roots):
        raise AssertionError(f"admissible roots {roots} are linearly dependent")
    return AdmissibleSystem(k, roots, sp)


@lru_cache(maxsize=None)
def _enumerate(k: AlgebraKind) -> tuple:
    pos = positive_roots(k)
    ok = [[_compatible(k, a, b) for b in pos] for a in pos]
    usable = [not is_root(k, _add(a, a)) for a in pos]
    out = []

    def extend(chosen: list[int], start: int):
        out.append(make_system(k, [pos[i] for i in chosen]))
        for j in range(start, len(pos)):
            if usable[j] and all(ok[i][j] for i in chosen):
                chosen.append(j)
                extend(chosen, j + 1)
                chosen.pop()

    extend([], 0)
    return tuple(out)


def enumerate_admissible(k: AlgebraKind) -> list[AdmissibleSystem]:
    """All admissible sets of positive roots, by backtracking over positive_roots order."""
    check_weyl_guard(k)
    return list(_enumerate(k))


def transform_span(w: WeylElement, s: Subspace) -> Subspace:
    return ratlin.span((apply(w, row) for row in s.basis), s.ambient_dim)


def image(w: WeylElement, f: AdmissibleSystem) -> list[Root]:
    """w(F) with each image root replaced by its positive representative."""
    if w.kind != f.kind:
        raise ValueError(f"kind mismatch: {w.kind} vs {f.kind}")
    return sorted((positive_part(apply(w, r)) for r in f.roots), reverse=True)


def fixes(w: WeylElement, f: AdmissibleSystem) -> bool:
    """True when span(w F) == span(F)."""
    if w.kind != f.kind:
        raise ValueError(f"kind mismatch: {w.kind} vs {f.kind}")
    return ratlin.span((apply(w, r) for r in f.roots), f.span.ambient_dim) == f.span


@dataclass(frozen=True)
class CartanClass:
    class_id: int
    representative: AdmissibleSystem
    orbit_size_spans: int
    members: tuple = field(repr=False, compare=False)  # spans in the orbit

    @property
    def vector_part_dim(self) -> int:
        return self.representative.vector_part_dim


@dataclass(frozen=True)
class ClassReport:
    kind: AlgebraKind
    classes: tuple

    def __len__(self) -> int:
        return len(self.classes)

    def class_of_span(self, s: Subspace) -> int:
        for c in self.classes:
            if s in c.members:
                return c.class_id
        raise KeyError(f"{s} is not an admissible span of {self.kind}")

    def class_of(self, f: AdmissibleSystem) -> int:
        return self.class_of_span(f.span)

    def to_json(self) -> dict:
        return {
            "algebra": self.kind.family.value,
            "rank": self.kind.rank,
            "classes": [
                {
                    "id": c.class_id,
                    "roots": [list(r) for r in c.representative.roots],
                    "vector_part_dim": c.vector_part_dim,
                    "orbit_size_spans": c.orbit_size_spans,
                    "span": [[ratlin.fmt(x) for x in row] for row in c.representative.span.basis],
                }
                for c in self.classes
            ],
        }


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[y] = x


@lru_cache(maxsize=None)
def classify(k: AlgebraKind) -> ClassReport:
    """Weyl orbits of admissible spans, one canonical representative each.

    Orbits are closed under the simple reflections only; that suffices since
    they generate W.  The representative is the orbit's lexicographically
    least span, then the least root list realizing it.
    """
    systems = enumerate_admissible(k)
    by_span: dict[Subspace, list[AdmissibleSystem]] = {}
    for f in systems:
        by_span.setdefault(f.span, []).append(f)

    uf = _UnionFind(by_span)
    for g in simple_reflections(k):
        for s in by_span:
            t = transform_span(g, s)
            if t not in by_span:
                raise AssertionError(f"W image {t} of admissible span {s} is not admissible")
            uf.union(s, t)

    orbits: dict[Subspace, list[Subspace]] = {}
    for s in by_span:
        orbits.setdefault(uf.find(s), []).append(s)

    reps = []
    for members in orbits.values():
        least = min(members, key=Subspace.key)
        rep = min(by_span[least], key=lambda f: f.roots)
        reps.append((rep, frozenset(members)))
    reps.sort(key=lambda t: t[0].sort_key())
    classes = tuple(
        CartanClass(i + 1, rep, len(members), members) for i, (rep, members) in enumerate(reps)
    )
    return ClassReport(k, classes)


def class_representatives(k: AlgebraKind) -> list[AdmissibleSystem]:
    return [c.representative for c in classify(k).classes]


def set_level_classes(k: AlgebraKind) -> int:
    """Number of W-orbits on admissible *root sets* (sign-normalized).

    Used to compare set-level conjugacy against span-level equivalence.
    """
    systems = enumerate_admissible(k)
    keys = {f.roots for f in systems}
    uf = _UnionFind(keys)
    for g in simple_reflections(k):
        for f in systems:
            img = tuple(image(g, f))
            uf.union(f.roots, img)
    return len({uf.find(x) for x in keys})


def _d_family(k: AlgebraKind, kk: int, ll: int, extra: bool = False) -> list[Root]:
    n = k.rank
    roots = []

    def e(*pairs):
        v = [0] * n
        for i, c in pairs:
            v[i - 1] += c
        return tuple(v)

    for i in range(1, kk + 1):
        roots.append(e((2 * i - 1, 1), (2 * i, 1)))
        roots.append(e((2 * i - 1, 1), (2 * i, -1)))
    for i in range(1, ll + 1):
        roots.append(e((2 * kk + i, 1), (2 * kk + ll + i, -1)))
    if extra:
        roots.append(e((2 * kk + 2 * ll + 1, 1)))
    return roots


def paper_representatives(k: AlgebraKind) -> list[AdmissibleSystem]:
    """The explicit representative families for each classical type.

    sl(n): F_k = {e1-e2, e3-e4, ..., e_{2k-1}-e_{2k}}, 0 <= k <= n/2.
    sp(n): F(k,l) = {2e1..2ek, e_{k+1}-e_{k+2}, ..., e_{k+2l-1}-e_{k+2l}}, k+2l <= n.
    so(2n+1): F(k,l) (2k+2l <= n) and F(k,l)' = F(k,l) + {e_{2k+2l+1}} (2k+2l+1 <= n).
    so(n,n): F(k,l) (2k+2l <= n), plus for even n the one class these miss,
    represented by the canonical representative from :func:`classify`.
    """
    f, n = k.family, k.rank
    out: list[AdmissibleSystem] = []
    if f is Family.SL:
        for kk in range(n // 2 + 1):
            roots = []
            for i in range(1, kk + 1):
                v = [0] * n
                v[2 * i - 2], v[2 * i - 1] = 1, -1
                roots.append(tuple(v))
            out.append(make_system(k, roots))
    elif f is Family.SP:
        for kk in range(n + 1):
            for ll in range((n - kk) // 2 + 1):
                roots = []
                for i in range(kk):
                    v = [0] * n
                    v[i] = 2
                    roots.append(tuple(v))
                for i in range(ll):
                    v = [0] * n
                    v[kk + 2 * i], v[kk + 2 * i + 1] = 1, -1
                    roots.append(tuple(v))
                out.append(make_system(k, roots))
    elif f in (Family.SO_ODD, Family.SO_EVEN):
        for kk in range(n // 2 + 1):
            for ll in range((n - 2 * kk) // 2 + 1):
                out.append(make_system(k, _d_family(k, kk, ll)))
        if f is Family.SO_ODD:
            for kk in range((n - 1) // 2 + 1):
                for ll in range((n - 1 - 2 * kk) // 2 + 1):
                    out.append(make_system(k, _d_family(k, kk, ll, extra=True)))
        elif n % 2 == 0:
            report = classify(k)
            hit = {report.class_of(s) for s in out}
            missing = [c for c in report.classes if c.class_id not in hit]
            if len(missing) != 1:
                raise AssertionError(f"expected exactly one extra D-type class, found {len(missing)}")
            out.append(missing[0].representative)
    else:
        raise ValueError(f"no catalogued representative family for {k}")
    return out


def family_for(k: AlgebraKind) -> list[AdmissibleSystem]:
    """The representative family used for stabilizers: catalogued, or canonical for G2."""
    if k.family is Family.G2:
        return class_representatives(k)
    return paper_representatives(k)


def partition_matches(k: AlgebraKind) -> bool:
    """Each family member lies in a distinct class and every class is hit."""
    report = classify(k)
    ids = [report.class_of(f) for f in family_for(k)]
    return sorted(ids) == [c.class_id for c in report.classes]
