"""Trees: depth diagnostics, completion, and the convex-unique path descent."""

from __future__ import annotations

import random

import pytest

from fankit import (DSet, complete, convexity_verdict,
                    escape_witness, find_path_convex_unique, finite_set,
                    full_set, has_descendant, is_infinite_to, is_summit,
                    members_at, survival_verdict, survivor_width, tree)
from fankit.errors import (BudgetExceededError, CertificateError, FuelError,
                           InconsistencyError, PreconditionError)

from bruteforce import (all_words, brute_longest_path_prefix_ok,
                        brute_survivors, brute_tree_infinite_to, words_at)
from corpus import random_convex_tree, random_finite_tree, random_tree


def full_tree():
    return tree(full_set(), validate=False)


def zero_ray_tree(stab=None, convex=True):
    carrier = DSet(lambda u: not any(u), stab=stab,
                   restriction_closed=True, convex=convex)
    return tree(carrier, validate=False)


def one_ray_tree():
    carrier = DSet(lambda u: all(b == 1 for b in u),
                   restriction_closed=True, convex=True)
    return tree(carrier, validate=False)


def spine_tree():
    # e and (0), plus the ray 1,0,0,0,...
    def mem(u):
        if len(u) == 0 or u == (0,):
            return True
        return u[0] == 1 and not any(u[1:])
    return tree(DSet(mem, restriction_closed=True, convex=True), validate=False)


def test_tree_factory_validates_restriction_closure():
    with pytest.raises(PreconditionError):
        tree(DSet(lambda u: len(u) == 2))


def test_is_infinite_to():
    assert is_infinite_to(full_tree(), 6).is_yes
    v = is_infinite_to(tree(finite_set([(), (0,)]), validate=False), 3)
    assert v.is_no and v.bound == 2
    assert is_infinite_to(zero_ray_tree(), 8).is_yes


def test_summit_of_empty_tree_is_root():
    t = tree(finite_set([]), validate=False)
    assert is_summit(t, ())
    assert not is_summit(t, (0,))


def test_infinite_tree_has_no_summit():
    t = tree(full_set(), validate=False)
    for u in all_words(4):
        assert not is_summit(t, u)


def test_summit_is_deepest_lex_greatest_member():
    t = tree(finite_set([(), (0,)]), validate=False)
    assert is_summit(t, (0,))
    assert not is_summit(t, ())
    t2 = tree(finite_set([(), (0,), (1,)]), validate=False)
    assert is_summit(t2, (1,))  # lex-greatest at the top level
    assert not is_summit(t2, (0,))


def test_complete_empty_tree_is_zero_ray():
    t = tree(finite_set([]), validate=False)
    tc = complete(t)
    for u in all_words(6):
        assert tc.member(u) == (not any(u))


def test_complete_infinite_tree_is_itself():
    t = tree(full_set(), validate=False)
    tc = complete(t)
    assert tc is t


def test_complete_hangs_ray_on_summit():
    t = tree(finite_set([(), (0,), (1,)]), validate=False)
    tc = complete(t)
    assert tc.member((1, 0, 0))
    assert not tc.member((0, 0))
    for u in all_words(6):
        expected = t.member(u) or u == () or (
            len(u) >= 1 and u[0] == 1 and not any(u[1:]))
        assert tc.member(u) == expected


def test_complete_requires_stab():
    with pytest.raises(PreconditionError):
        complete(zero_ray_tree(stab=None))


def test_has_descendant():
    assert has_descendant(full_tree(), (0,), 5)
    zt = zero_ray_tree()
    assert not has_descendant(zt, (1,), 1)
    assert has_descendant(zt, (0,), 4)


def test_has_descendant_budget(monkeypatch):
    monkeypatch.setenv("FANKIT_BUDGET", "64")
    with pytest.raises(BudgetExceededError):
        has_descendant(full_tree(), (), 30)


def test_survival_verdict():
    v = survival_verdict(full_tree(), (), 5)
    assert v.is_yes and v.bound == 5
    t = tree(finite_set([(), (0,)]), validate=False)
    v = survival_verdict(t, (0,), 3)
    assert v.is_no and v.bound == 1
    v = survival_verdict(zero_ray_tree(), (0,), 6)
    assert v.is_yes and v.bound == 6
    v = survival_verdict(t, (1,), 3)
    assert v.is_no and v.bound == 0


def test_survivor_width():
    assert survivor_width(full_tree(), 2, 5) == 4
    assert survivor_width(zero_ray_tree(), 3, 6) == 1
    t = tree(finite_set([(), (0,), (1,)]), validate=False)
    assert survivor_width(t, 1, 2) == 0
    with pytest.raises(PreconditionError):
        survivor_width(t, 3, 2)


def test_find_path_zero_ray():
    t = zero_ray_tree()
    gen = find_path_convex_unique(t, escape_witness(t, 32))
    assert gen.take(6) == (0, 0, 0, 0, 0, 0)
    assert brute_survivors(t.member, 6, 12) == {(0,) * 6}


def test_find_path_one_ray():
    t = one_ray_tree()
    gen = find_path_convex_unique(t, escape_witness(t, 32))
    assert gen.take(4) == (1, 1, 1, 1)
    assert brute_survivors(t.member, 4, 10) == {(1,) * 4}


def test_find_path_spine():
    t = spine_tree()
    gen = find_path_convex_unique(t, escape_witness(t, 32))
    assert gen.take(3) == (1, 0, 0)
    assert brute_survivors(t.member, 3, 9) == {(1, 0, 0)}
    assert gen.trace  # witness queries were recorded


def test_find_path_requires_convex_flag():
    t = zero_ray_tree(convex=False)
    with pytest.raises(PreconditionError):
        find_path_convex_unique(t, escape_witness(t, 16))


def test_find_path_rejects_lying_witness():
    t = zero_ray_tree()
    gen = find_path_convex_unique(t, lambda alpha: 0)
    with pytest.raises(CertificateError):
        gen.take(1)


def test_find_path_flags_dead_tree():
    t = tree(DSet(lambda u: len(u) <= 1, restriction_closed=True, convex=True),
             validate=False)
    wit = escape_witness(t, 16)
    gen = find_path_convex_unique(t, wit, fuel=8)
    with pytest.raises(InconsistencyError):
        gen.take(3)


def test_path_generator_fuel():
    t = zero_ray_tree()
    gen = find_path_convex_unique(t, escape_witness(t, 64), fuel=4)
    gen.take(4)
    with pytest.raises(FuelError):
        gen.next()


def test_completion_suite_random_trees():
    rng = random.Random(42)
    for i in range(40):
        s = rng.randrange(1, 7)
        if i % 3 == 0:
            t = random_convex_tree(rng, s)
        elif i % 3 == 1:
            t = random_tree(rng, s, ensure_infinite=True)
        else:
            t = random_finite_tree(rng, s)
        tc = complete(t)
        # the original tree embeds in its completion
        for u in all_words(8):
            if t.member(u):
                assert tc.member(u)
        # completions are always infinite
        assert is_infinite_to(tc, 8).is_yes
        infinite = brute_tree_infinite_to(t.member, s)
        if infinite:
            for u in all_words(8):
                assert t.member(u) == tc.member(u)
        else:
            for k in range(9):
                assert survivor_width(tc, k, 8) <= 1
        if t.convex:
            assert convexity_verdict(tc.carrier, 8, "convex").is_yes
        # depth-8 survivor prefixes of the completion restrict into the tree
        for k in range(9):
            for u in members_at(tc, k):
                if has_descendant(tc, u, 8 - k):
                    assert brute_longest_path_prefix_ok(t.member, u, 8)


def test_longest_path_prefixes_vs_infinity():
    rng = random.Random(77)
    for i in range(25):
        s = rng.randrange(1, 6)
        t = random_tree(rng, s, ensure_infinite=(i % 2 == 0))
        infinite = brute_tree_infinite_to(t.member, 6)
        prefixes = [p for p in words_at(6)
                    if brute_longest_path_prefix_ok(t.member, p, 6)]
        assert prefixes, "a longest-path prefix always exists at desk scale"
        if infinite:
            assert all(t.member(p) for p in prefixes)
        else:
            assert any(not t.member(p) for p in prefixes)
