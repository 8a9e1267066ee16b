"""Root systems of the split classical algebras and G2, with their Weyl groups.

Roots are integer tuples in the e-basis.  Classical Weyl elements are signed
permutations: ``w(e_i) = signs[i] * e_{perm[i]}`` (0-based ``perm``).  G2
lives in the basis where the short roots are ``+-(1,0), +-(1,1), +-(0,1)``
and the long roots ``+-(2,1), +-(1,2), +-(1,-1)``; the invariant form there is
``Q((a,b),(c,d)) = ac + bd - (ad+bc)/2`` and the Weyl group acts by integer
matrices.
"""

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import ratlin

Root = tuple  # tuple[int, ...]

WEYL_ENUMERATION_LIMIT = 11_000_000


class GuardError(ValueError):
    """Requested rank exceeds an enumeration or matrix-size guard."""


class Family(Enum):
    SL = "sl"
    SP = "sp"
    SO_ODD = "so-odd"
    SO_EVEN = "so-even"
    G2 = "g2"


@dataclass(frozen=True, order=True)
class AlgebraKind:
    family: Family
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f is Family.G2:
            if n != 2:
                raise ValueError("G2 has fixed rank 2")
        elif f is Family.SL and n < 2:
            raise ValueError("sl(n) needs n >= 2")
        elif f is Family.SO_EVEN and n < 2:
            raise ValueError("so(n,n) needs n >= 2")
        elif n < 1:
            raise ValueError(f"{f.value} needs rank >= 1")

    @property
    def coord_len(self) -> int:
        return self.rank

    @property
    def lie_rank(self) -> int:
        """Dimension of a Cartan subalgebra (n - 1 for sl(n))."""
        return self.rank - 1 if self.family is Family.SL else self.rank

    def __str__(self) -> str:
        if self.family is Family.G2:
            return "g2"
        return f"{self.family.value}({self.rank})"


def kind(family: str | Family, rank: int | None = None) -> AlgebraKind:
    """Convenience constructor: ``kind("sp", 3)``, ``kind("g2")``."""
    fam = family if isinstance(family, Family) else Family(family.lower().replace("_", "-"))
    if fam is Family.G2:
        rank = 2 if rank is None else rank
    if rank is None:
        raise ValueError("rank is required")
    return AlgebraKind(fam, rank)


G2_SHORT = ((1, 0), (1, 1), (0, 1))
G2_LONG = ((2, 1), (1, 2), (1, -1))


def g2_form(u: Sequence, v: Sequence):
    return ratlin.q(u[0] * v[0] + u[1] * v[1] - Fraction(u[0] * v[1] + u[1] * v[0], 2))


def inner(k: AlgebraKind, u: Sequence, v: Sequence):
    """W-invariant inner product: Q for G2, the dot product otherwise."""
    if k.family is Family.G2:
        return g2_form(u, v)
    return sum(a * b for a, b in zip(u, v))


def _is_positive(v: Sequence) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def positive_part(v: Root) -> Root:
    """The representative of {v, -v} whose first nonzero coordinate is positive."""
    return v if _is_positive(v) else tuple(-x for x in v)


def _unit(n: int, i: int, c: int = 1) -> list:
    v = [0] * n
    v[i] = c
    return v


@lru_cache(maxsize=None)
def _all_roots(k: AlgebraKind) -> frozenset:
    f, n = k.family, k.rank
    out = set()
    if f is Family.G2:
        for r in G2_SHORT + G2_LONG:
            out.add(r)
            out.add(tuple(-x for x in r))
        return frozenset(out)
    for i, j in itertools.permutations(range(n), 2):
        v = [0] * n
        v[i], v[j] = 1, -1
        out.add(tuple(v))
        if f is not Family.SL:
            for s in (1, -1):
                v = [0] * n
                v[i], v[j] = s, s
                out.add(tuple(v))
    if f is Family.SP:
        for i in range(n):
            for s in (2, -2):
                out.add(tuple(_unit(n, i, s)))
    if f is Family.SO_ODD:
        for i in range(n):
            for s in (1, -1):
                out.add(tuple(_unit(n, i, s)))
    return frozenset(out)


def all_roots(k: AlgebraKind) -> list[Root]:
    return sorted(_all_roots(k), reverse=True)


@lru_cache(maxsize=None)
def _positive_roots(k: AlgebraKind) -> tuple:
    return tuple(sorted((r for r in _all_roots(k) if _is_positive(r)), reverse=True))


def positive_roots(k: AlgebraKind) -> list[Root]:
    """Positive roots (first nonzero coordinate positive), lexicographically descending."""
    return list(_positive_roots(k))


def is_root(k: AlgebraKind, v: Sequence) -> bool:
    if len(v) != k.coord_len:
        raise ValueError(f"{k} roots have {k.coord_len} coordinates, got {len(v)}")
    return tuple(v) in _all_roots(k)


def weyl_order(k: AlgebraKind) -> int:
    f, n = k.family, k.rank
    if f is Family.SL:
        return math.factorial(n)
    if f in (Family.SP, Family.SO_ODD):
        return 2**n * math.factorial(n)
    if f is Family.SO_EVEN:
        return 2 ** (n - 1) * math.factorial(n)
    return 12


def check_weyl_guard(k: AlgebraKind) -> None:
    order = weyl_order(k)
    if order > WEYL_ENUMERATION_LIMIT:
        raise GuardError(
            f"Weyl group of {k} has order {order}, above the enumeration limit {WEYL_ENUMERATION_LIMIT}"
        )


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation (classical types) or integer 2x2 matrix (G2)."""

    kind: AlgebraKind
    perm: tuple = ()
    signs: tuple = ()
    matrix: tuple = ()

    def __post_init__(self):
        k = self.kind
        if k.family is Family.G2:
            if len(self.matrix) != 2:
                raise ValueError("G2 Weyl elements are 2x2 matrices")
            return
        n = k.rank
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise ValueError(f"not a signed permutation of {n} letters: {self.perm}, {self.signs}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1")
        if k.family is Family.SL and -1 in self.signs:
            raise ValueError("sl(n) Weyl elements carry no sign changes")
        if k.family is Family.SO_EVEN and self.signs.count(-1) % 2:
            raise ValueError("D-type Weyl elements change an even number of signs")

    def __call__(self, v: Sequence) -> Root:
        return apply(self, v)

    def sort_key(self) -> tuple:
        if self.kind.family is Family.G2:
            return tuple(Fraction(x) for x in ratlin.flatten(self.matrix))
        return (self.perm, self.signs)

    def as_matrix(self) -> ratlin.Matrix:
        """Matrix acting on coordinate column vectors."""
        if self.kind.family is Family.G2:
            return self.matrix
        n = self.kind.rank
        rows = [[0] * n for _ in range(n)]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            rows[p][i] = s
        return ratlin.matrix(rows)

    def is_identity(self) -> bool:
        return self == identity(self.kind)

    def to_json(self) -> dict:
        if self.kind.family is Family.G2:
            return {"matrix": [[ratlin.fmt(x) for x in row] for row in self.matrix]}
        return {"perm": [p + 1 for p in self.perm], "signs": list(self.signs)}

    def __str__(self) -> str:
        if self.kind.family is Family.G2:
            return "[" + "; ".join(" ".join(ratlin.fmt(x) for x in r) for r in self.matrix) + "]"
        parts = []
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            if p != i or s != 1:
                parts.append(f"e{i + 1}->{'-' if s < 0 else ''}e{p + 1}")
        return "id" if not parts else ", ".join(parts)


def weyl_from_json(k: AlgebraKind, obj: dict) -> WeylElement:
    if "matrix" in obj:
        return WeylElement(k, matrix=ratlin.matrix([[ratlin.parse(x) for x in row] for row in obj["matrix"]]))
    return WeylElement(k, tuple(p - 1 for p in obj["perm"]), tuple(obj["signs"]))


def identity(k: AlgebraKind) -> WeylElement:
    if k.family is Family.G2:
        return WeylElement(k, matrix=ratlin.identity(2))
    n = k.rank
    return WeylElement(k, tuple(range(n)), (1,) * n)


def signed_perm(k: AlgebraKind, images: Sequence[int] | None = None, flips: Sequence[int] = ()) -> WeylElement:
    """Weyl element from 1-based images and a set of 1-based coordinates to negate.

    The sign of ``e_i`` is applied before permuting: ``w(e_i) = -e_{images[i]}``
    when ``i`` is in ``flips``.
    """
    n = k.rank
    perm = tuple(p - 1 for p in images) if images is not None else tuple(range(n))
    signs = tuple(-1 if i + 1 in set(flips) else 1 for i in range(n))
    return WeylElement(k, perm, signs)


def transposition(k: AlgebraKind, i: int, j: int) -> WeylElement:
    """The transposition (i j), 1-based."""
    images = list(range(1, k.rank + 1))
    images[i - 1], images[j - 1] = j, i
    return signed_perm(k, images)


def flip(k: AlgebraKind, coords: Sequence[int] | None = None) -> WeylElement:
    """Sign change of the given 1-based coordinates (all of them by default)."""
    if k.family is Family.G2:
        if coords is not None:
            raise ValueError("G2 has no coordinate sign changes")
        return WeylElement(k, matrix=ratlin.matrix([[-1, 0], [0, -1]]))
    coords = range(1, k.rank + 1) if coords is None else coords
    return signed_perm(k, None, coords)


def _check_same(a: AlgebraKind, b: AlgebraKind) -> None:
    if a != b:
        raise ValueError(f"kind mismatch: {a} vs {b}")


def apply(w: WeylElement, v: Sequence) -> Root:
    k = w.kind
    if len(v) != k.coord_len:
        raise ValueError(f"vector of length {len(v)} for {k}")
    if k.family is Family.G2:
        m = w.matrix
        return tuple(ratlin.q(m[i][0] * v[0] + m[i][1] * v[1]) for i in range(2))
    out = [0] * len(v)
    for i, (p, s) in enumerate(zip(w.perm, w.signs)):
        out[p] = s * v[i]
    return tuple(out)


def compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """w1 o w2."""
    _check_same(w1.kind, w2.kind)
    k = w1.kind
    if k.family is Family.G2:
        return WeylElement(k, matrix=ratlin.matmul(w1.matrix, w2.matrix))
    perm = tuple(w1.perm[p] for p in w2.perm)
    signs = tuple(s2 * w1.signs[p] for p, s2 in zip(w2.perm, w2.signs))
    return WeylElement(k, perm, signs)


def inverse(w: WeylElement) -> WeylElement:
    k = w.kind
    if k.family is Family.G2:
        # Q-orthogonal integer matrix with determinant +-1: adjugate formula.
        (a, b), (c, d) = w.matrix
        dt = a * d - b * c
        return WeylElement(k, matrix=ratlin.matrix([[Fraction(d, dt), Fraction(-b, dt)], [Fraction(-c, dt), Fraction(a, dt)]]))
    n = k.rank
    perm = [0] * n
    signs = [0] * n
    for i, (p, s) in enumerate(zip(w.perm, w.signs)):
        perm[p] = i
        signs[p] = s
    return WeylElement(k, tuple(perm), tuple(signs))


def reflection(k: AlgebraKind, alpha: Root) -> WeylElement:
    """Reflection in the hyperplane orthogonal to a root."""
    if not is_root(k, alpha):
        raise ValueError(f"{alpha} is not a root of {k}")
    if k.family is Family.G2:
        aa = g2_form(alpha, alpha)
        cols = []
        for e in ((1, 0), (0, 1)):
            c = Fraction(2 * g2_form(e, alpha)) / aa
            cols.append([e[i] - c * alpha[i] for i in range(2)])
        return WeylElement(k, matrix=ratlin.transpose(ratlin.matrix(cols)))
    n = k.rank
    aa = sum(x * x for x in alpha)
    images, signs = [], []
    for i in range(n):
        e = _unit(n, i)
        img = [e[j] - Fraction(2 * alpha[i], aa) * alpha[j] for j in range(n)]
        j = next(j for j, x in enumerate(img) if x)
        images.append(j)
        signs.append(int(img[j]))
    return WeylElement(k, tuple(images), tuple(signs))


def simple_reflections(k: AlgebraKind) -> list[WeylElement]:
    """Generators of W: reflections in a simple system."""
    f, n = k.family, k.rank
    if f is Family.G2:
        return [reflection(k, (1, 0)), reflection(k, (1, -1))]
    simple = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simple.append(tuple(v))
    if f is Family.SP:
        simple.append(tuple(_unit(n, n - 1, 2)))
    elif f is Family.SO_ODD:
        simple.append(tuple(_unit(n, n - 1, 1)))
    elif f is Family.SO_EVEN:
        v = [0] * n
        v[n - 2], v[n - 1] = 1, 1
        simple.append(tuple(v))
    return [reflection(k, a) for a in simple]


@lru_cache(maxsize=None)
def _g2_group(k: AlgebraKind) -> tuple:
    gens = simple_reflections(k)
    seen = {identity(k)}
    frontier = [identity(k)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = compose(g, w)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return tuple(sorted(seen, key=WeylElement.sort_key))


def enumerate_weyl(k: AlgebraKind) -> Iterator[WeylElement]:
    """Every Weyl group element once, lexicographic in (images, signs)."""
    check_weyl_guard(k)
    if k.family is Family.G2:
        yield from _g2_group(k)
        return
    n = k.rank
    for perm in itertools.permutations(range(n)):
        if k.family is Family.SL:
            yield WeylElement(k, perm, (1,) * n)
            continue
        for signs in itertools.product((-1, 1), repeat=n):
            if k.family is Family.SO_EVEN and signs.count(-1) % 2:
                continue
            yield WeylElement(k, perm, signs)
