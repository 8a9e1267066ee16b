import math

import pytest

from cartanstab import roots
from cartanstab.roots import (
    GuardError,
    WeylElement,
    apply,
    compose,
    enumerate_weyl,
    flip,
    g2_form,
    inverse,
    is_root,
    kind,
    positive_roots,
    signed_perm,
    transposition,
)


def test_positive_roots_examples():
    assert set(positive_roots(kind("sp", 2))) == {(2, 0), (0, 2), (1, 1), (1, -1)}
    assert positive_roots(kind("sl", 2)) == [(1, -1)]
    assert len(positive_roots(kind("so-even", 4))) == 2 * math.comb(4, 2)


@pytest.mark.parametrize(
    "fam,n,count",
    [("sl", 5, 10), ("sp", 3, 9), ("so-odd", 3, 9), ("so-even", 5, 20), ("g2", 2, 6)],
)
def test_positive_root_counts(fam, n, count):
    pos = positive_roots(kind(fam, n))
    assert len(pos) == count
    every = set(pos) | {tuple(-x for x in r) for r in pos}
    assert every == set(roots.all_roots(kind(fam, n)))


def test_positive_roots_deterministic():
    k = kind("so-odd", 4)
    assert positive_roots(k) == positive_roots(k)
    assert positive_roots(k) == sorted(positive_roots(k), reverse=True)


def test_is_root():
    assert is_root(kind("sp", 2), (2, 0))
    assert not is_root(kind("sp", 2), (4, 0))
    assert is_root(kind("so-odd", 3), (0, 1, 0))
    assert not is_root(kind("so-even", 3), (0, 1, 0))
    with pytest.raises(ValueError):
        is_root(kind("sp", 2), (1, 1, 0))


def test_sl_roots_are_differences():
    for r in roots.all_roots(kind("sl", 4)):
        assert sum(r) == 0 and sorted(r) == [-1, 0, 0, 1]


def test_apply_examples():
    sl2 = kind("sl", 2)
    assert apply(transposition(sl2, 1, 2), (1, -1)) == (-1, 1)
    sp2 = kind("sp", 2)
    assert apply(flip(sp2), (2, 0)) == (-2, 0)
    b3 = kind("so-odd", 3)
    assert apply(flip(b3, [3]), (1, 1, 0)) == (1, 1, 0)


def test_signed_perm_convention():
    b3 = kind("so-odd", 3)
    w = signed_perm(b3, [2, 3, 1], flips=[3])
    # w(e1) = e2, w(e2) = e3, w(e3) = -e1
    assert apply(w, (1, 0, 0)) == (0, 1, 0)
    assert apply(w, (0, 1, 0)) == (0, 0, 1)
    assert apply(w, (0, 0, 1)) == (-1, 0, 0)


def test_compose_and_inverse():
    b3 = kind("so-odd", 3)
    w = signed_perm(b3, [2, 3, 1], flips=[3])
    e = roots.identity(b3)
    assert compose(w, e) == w and compose(e, w) == w
    t = transposition(kind("sl", 3), 1, 2)
    assert compose(t, t) == roots.identity(kind("sl", 3))
    assert compose(inverse(w), w) == e and compose(w, inverse(w)) == e
    v = (3, -1, 2)
    w2 = flip(b3, [1])
    assert apply(compose(w, w2), v) == apply(w, apply(w2, v))


def test_kind_mismatch():
    with pytest.raises(ValueError):
        compose(roots.identity(kind("sp", 2)), roots.identity(kind("so-odd", 2)))


def test_type_invariants_enforced():
    with pytest.raises(ValueError):
        WeylElement(kind("sl", 2), (0, 1), (1, -1))
    with pytest.raises(ValueError):
        WeylElement(kind("so-even", 3), (0, 1, 2), (1, 1, -1))
    with pytest.raises(ValueError):
        WeylElement(kind("sp", 2), (0, 0), (1, 1))


@pytest.mark.parametrize(
    "fam,n,order",
    [
        ("sl", 2, 2), ("sl", 3, 6), ("sl", 5, 120),
        ("sp", 1, 2), ("sp", 3, 48), ("so-odd", 4, 384),
        ("so-even", 2, 4), ("so-even", 4, 192), ("so-even", 5, 1920),
        ("g2", 2, 12),
    ],
)
def test_weyl_orders(fam, n, order):
    els = list(enumerate_weyl(kind(fam, n)))
    assert len(els) == order
    assert len(set(els)) == order
    assert roots.weyl_order(kind(fam, n)) == order


def test_enumeration_order_is_lexicographic():
    els = list(enumerate_weyl(kind("so-even", 3)))
    keys = [w.sort_key() for w in els]
    assert keys == sorted(keys)


@pytest.mark.parametrize("fam,n", [("sl", 4), ("sp", 3), ("so-odd", 3), ("so-even", 4), ("g2", 2)])
def test_weyl_group_preserves_roots(fam, n):
    k = kind(fam, n)
    rs = set(roots.all_roots(k))
    for w in enumerate_weyl(k):
        assert {apply(w, r) for r in rs} == rs


def test_enumerated_elements_satisfy_type_invariants():
    for w in enumerate_weyl(kind("so-even", 4)):
        assert w.signs.count(-1) % 2 == 0
    for w in enumerate_weyl(kind("sl", 4)):
        assert set(w.signs) == {1}


def test_g2_geometry():
    k = kind("g2")
    short = [r for r in roots.all_roots(k) if g2_form(r, r) == 1]
    long_ = [r for r in roots.all_roots(k) if g2_form(r, r) == 3]
    assert len(short) == 6 and len(long_) == 6
    basis = [(1, 0), (0, 1)]
    for w in enumerate_weyl(k):
        for u in basis:
            for v in basis:
                assert g2_form(apply(w, u), apply(w, v)) == g2_form(u, v)
    # -1 is central
    minus = flip(k)
    for w in enumerate_weyl(k):
        assert compose(w, minus) == compose(minus, w)


def test_g2_reflections_generate_dihedral_12():
    k = kind("g2")
    rot = compose(*roots.simple_reflections(k))
    powers = [roots.identity(k)]
    for _ in range(6):
        powers.append(compose(rot, powers[-1]))
    assert powers[6] == roots.identity(k)
    assert powers[3] == flip(k)


def test_enumeration_guard():
    with pytest.raises(GuardError):
        list(enumerate_weyl(kind("sp", 9)))
    assert roots.weyl_order(kind("so-even", 8)) <= roots.WEYL_ENUMERATION_LIMIT
    assert roots.weyl_order(kind("sl", 10)) <= roots.WEYL_ENUMERATION_LIMIT


def test_invalid_ranks():
    with pytest.raises(ValueError):
        kind("sl", 1)
    with pytest.raises(ValueError):
        kind("so-even", 1)
    with pytest.raises(ValueError):
        kind("g2", 3)


def test_json_round_trip():
    for k in (kind("so-odd", 3), kind("g2")):
        for w in enumerate_weyl(k):
            assert roots.weyl_from_json(k, w.to_json()) == w
    assert signed_perm(kind("sp", 2), [2, 1], [1]).to_json() == {"perm": [2, 1], "signs": [-1, 1]}
