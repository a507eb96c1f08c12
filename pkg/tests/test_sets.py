"""Decidable sets: closure, interior, relative sets, bar and convexity checks."""

from __future__ import annotations

import random

import pytest

from fankit import (DSet, bar_verdict, closure, complement,
                    convexity_verdict, dset, finite_set, full_set, interior,
                    iter_level, len_ge, restrict, restrict_set, uniform_bound,
                    uniform_bound_ext_closed, union_sets)
from fankit.errors import PreconditionError

from bruteforce import all_words, brute_interior_member, brute_least_uniform_bound
from corpus import random_dset


def test_closure_membership():
    a = finite_set([(0,)])
    ab = closure(a)
    assert (0, 1) in ab
    assert (1,) not in ab


def test_closure_of_empty():
    ab = closure(finite_set([]))
    assert all(u not in ab for u in all_words(5))


def test_closure_keeps_coconvexity():
    # outside of {e, (0)}: a co-convex set; its closure stays co-convex
    a = dset(lambda u: u not in ((), (0,)), stab=2, co_convex=True)
    ab = closure(a)
    assert ab.co_convex
    for d in range(7):
        assert convexity_verdict(ab, d, "co-convex").is_yes


def test_restrict_set_at_root_is_identity():
    a = random_dset(random.Random(11), 4)
    a_e = restrict_set(a, ())
    for u in all_words(5):
        assert a.member(u) == a_e.member(u)


def test_restrict_set_below_fixed_bit():
    a = dset(lambda u: len(u) >= 1 and u[0] == 1, stab=1, extension_closed=True)
    a1 = restrict_set(a, (1,))
    assert a1.member(())
    assert all(a1.member(u) for u in all_words(4))


def test_interior_commutes_with_restriction():
    rng = random.Random(23)
    for _ in range(12):
        a = random_dset(rng, 5)
        for n in range(5):
            for u in iter_level(n):
                left = interior(restrict_set(a, u))
                right = restrict_set(interior(a), u)
                for w in all_words(3):
                    expect = brute_interior_member(a.member, a.stab, u + w)
                    assert left.member(w) == expect
                    assert right.member(w) == expect


def test_interior_examples():
    a = dset(lambda u: len(u) >= 1 and u[0] == 0, stab=1)
    inner = interior(a)
    assert inner.member((0,))
    assert not inner.member(())
    assert not inner.member((1,))

    everything = full_set()
    assert all(interior(everything).member(u) for u in all_words(4))

    b = dset(lambda u: len(u) >= 2 or u == (1,), stab=2)
    ib = interior(b)
    assert not ib.member(())
    assert ib.member((1,))
    assert not ib.member((0,))
    for u in all_words(4):
        assert ib.member(u) == brute_interior_member(b.member, 2, u)


def test_interior_requires_stab():
    with pytest.raises(PreconditionError):
        interior(DSet(lambda u: True))


def test_interior_idempotent():
    rng = random.Random(5)
    for _ in range(20):
        a = random_dset(rng, rng.randrange(0, 6))
        once = interior(a)
        twice = interior(once)
        for u in all_words(a.stab + 2):
            assert once.member(u) == twice.member(u)


def test_interior_means_relative_set_is_full():
    rng = random.Random(7)
    for _ in range(15):
        a = random_dset(rng, 4)
        inner = interior(a)
        for u in all_words(4):
            rel = restrict_set(a, u)
            rel_full = all(rel.member(w) for w in all_words(4 - len(u) + 2))
            assert inner.member(u) == rel_full


def test_bar_verdict_yes():
    v = bar_verdict(len_ge(2), 4)
    assert v.is_yes and v.bound == 2


def test_bar_verdict_no_with_escape():
    v = bar_verdict(finite_set([]), 4)
    assert v.is_no
    assert restrict(v.escape, 6) == (0, 0, 0, 0, 0, 0)


def test_bar_verdict_unknown_without_stab():
    ones_somewhere = DSet(lambda u: any(b == 1 for b in u))
    v = bar_verdict(ones_somewhere, 6)
    assert v.is_unknown and v.depth == 6


def test_uniform_bound_simple():
    v = uniform_bound(len_ge(2), 8)
    assert v.is_yes and v.bound == 2


def test_uniform_bound_mixed_set():
    b = dset(lambda u: (len(u) >= 1 and u[0] == 1) or len(u) >= 3, stab=3)
    assert brute_least_uniform_bound(b.member, 8) == 3
    v = uniform_bound(b, 8)
    assert v.is_yes and v.bound == 3


def test_uniform_bound_unknown():
    v = uniform_bound(finite_set([(1,)]), 7)
    assert v.is_unknown and v.depth == 7


def test_uniform_bound_ext_closed():
    b1 = closure(finite_set([(0,), (1,)]))
    assert uniform_bound_ext_closed(b1, 6).bound == 1
    b2 = closure(finite_set([(0, 0), (0, 1), (1,)]))
    v = uniform_bound_ext_closed(b2, 6)
    assert v.is_yes and v.bound == 2
    assert brute_least_uniform_bound(b2.member, 6) == 2
    b3 = closure(finite_set([]))
    assert uniform_bound_ext_closed(b3, 6).is_unknown


def test_uniform_bound_ext_closed_requires_flag():
    with pytest.raises(PreconditionError):
        uniform_bound_ext_closed(DSet(lambda u: True), 4)


def test_uniform_bound_routes_agree_on_closed_sets():
    rng = random.Random(13)
    for _ in range(25):
        b = closure(random_dset(rng, rng.randrange(0, 6)))
        via_levels = uniform_bound_ext_closed(b, 7)
        via_prefixes = uniform_bound(b, 7)
        assert via_levels.outcome == via_prefixes.outcome
        if via_levels.is_yes:
            assert via_levels.bound == via_prefixes.bound


def test_convexity_verdict_examples():
    a = finite_set([(0, 1), (1, 0)])
    assert convexity_verdict(a, 2, "convex").is_yes

    b = finite_set([(0, 0), (1, 1)])
    v = convexity_verdict(b, 2, "convex")
    assert v.is_no
    assert v.witness == ((0, 0), (0, 1), (1, 1))

    c = len_ge(3)
    assert convexity_verdict(c, 5, "co-convex").is_yes


def test_closure_suite_on_random_sets():
    rng = random.Random(101)
    for _ in range(60):
        b = random_dset(rng, rng.randrange(0, 7))
        bb = closure(b)
        for u in all_words(6):
            if b.member(u):
                assert bb.member(u)  # the set sits inside its closure
            if bb.member(u):
                assert bb.member(u + (0,)) and bb.member(u + (1,))
        v_b = bar_verdict(b, 6)
        if v_b.is_yes:
            v_bb = bar_verdict(bb, 6)
            assert v_bb.is_yes and v_bb.bound <= v_b.bound
        u_bb = uniform_bound(bb, 6)
        if u_bb.is_yes:
            u_b = uniform_bound(b, 6)
            assert u_b.is_yes and u_b.bound <= u_bb.bound


def test_uniform_bound_implies_bar():
    rng = random.Random(303)
    for _ in range(40):
        b = random_dset(rng, rng.randrange(0, 6))
        ub = uniform_bound(b, 6)
        if ub.is_yes:
            bv = bar_verdict(b, 6)
            assert bv.is_yes and bv.bound <= ub.bound


def test_flag_validation_catches_lies():
    with pytest.raises(PreconditionError):
        dset(lambda u: len(u) == 1, extension_closed=True)
    with pytest.raises(PreconditionError):
        dset(lambda u: len(u) <= 1, stab=1)
    with pytest.raises(PreconditionError):
        dset(lambda u: u in ((0, 0), (1, 1)), convex=True)


def test_stab_propagation():
    a = len_ge(3)
    b = union_sets(a, finite_set([(1,)]))
    assert b.stab == 3
    assert restrict_set(a, (0, 1)).stab == 1
    assert complement(a).stab == 3
    assert closure(b).stab == 3
