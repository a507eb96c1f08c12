"""Bars with witnesses and the uniform-bound layer.

A Bar packages a carrier set with an optional witness that locates, for
any sequence, a prefix inside the carrier; witness answers are re-checked
on every call.  Fan oracles turn bars into uniform bounds; every returned
bound is verified by a level scan before release, so an oracle is never
trusted blindly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ._budget import check_enumeration
from .errors import (CertificateError, InconsistencyError, PreconditionError,
                     WitnessError)
from .sets import DSet, Outcome, closure, complement, uniform_bound
from .trees import (DEFAULT_FUEL, PathGen, Tree, complete, find_path_convex_unique,
                    has_descendant, tree)
from .words import Seq, Word, format_word, iter_level, restrict


@dataclass(frozen=True)
class Bar:
    carrier: DSet
    wit: Callable[[Seq], int] | None = None

    def query(self, alpha: Seq) -> int:
        """Call the witness and re-check its claim before trusting it."""
        if self.wit is None:
            raise PreconditionError("bar carries no witness")
        n = self.wit(alpha)
        if not self.carrier.member(restrict(alpha, n)):
            raise CertificateError(
                f"witness claimed level {n} but the prefix is outside the carrier")
        return n


def minimal_witness(carrier: DSet, scan_cap: int) -> Callable[[Seq], int]:
    """The least-prefix witness, found by scanning up to the cap."""
    def wit(alpha: Seq) -> int:
        for n in range(scan_cap + 1):
            if carrier.member(restrict(alpha, n)):
                return n
        raise WitnessError(f"no prefix entered the carrier within {scan_cap} steps")
    return wit


def _verify_uniform(carrier: DSet, n: int) -> bool:
    check_enumeration(1 << (n + 1))
    return all(any(carrier.member(u[:k]) for k in range(n + 1))
               for u in iter_level(n))


@dataclass(frozen=True)
class FanOracle:
    raw_bound: Callable[[Bar], int]
    tag: str
    reverify: bool = True

    def bound(self, b: Bar) -> int:
        n = self.raw_bound(b)
        if self.reverify and not _verify_uniform(b.carrier, n):
            raise CertificateError(
                f"fan oracle [{self.tag}] returned {n}, which is not a uniform bound")
        return n


def fan_bruteforce(max_n: int) -> FanOracle:
    """A fan oracle backed by the incremental level scan; its search is
    its own verification, and minimality comes for free."""
    def raw(b: Bar) -> int:
        v = uniform_bound(b.carrier, max_n)
        if v.outcome is not Outcome.YES:
            raise PreconditionError(
                f"no uniform bound within {max_n}; the input may not be a uniform bar")
        return v.bound
    return FanOracle(raw, tag=f"brute-force(maxN={max_n})", reverify=False)


def fan_from_lpl(b: Bar, lpl: Callable[[Tree], PathGen]) -> int:
    """Uniform bound from a longest-path generator.

    The complement of an extension-closed bar is a tree with at most one
    path; the witness applied to its longest path yields a level that the
    whole tree misses.  The level is re-scanned before being returned.
    """
    if b.wit is None:
        raise PreconditionError("bar must carry a witness")
    if not b.carrier.extension_closed:
        raise PreconditionError(
            "carrier must be flagged extension-closed; take its closure first")
    t = tree(complement(b.carrier), validate=False)
    gen = lpl(t)
    n = b.query(gen.as_seq())
    check_enumeration(1 << n)
    for u in iter_level(n):
        if not b.carrier.member(u):
            raise CertificateError(
                f"level {n} is not inside the carrier (saw {format_word(u)}); "
                "the witness or the path generator violated its contract")
    return n


def wkl_unique_from_fan(t: Tree, fan: FanOracle,
                        bar_wit: Callable[[Word], Callable[[Seq], int]] | None = None,
                        fuel: int = DEFAULT_FUEL) -> PathGen:
    """Path generator for a tree asserted infinite with at most one path,
    powered by a fan oracle.

    At each node the decidable side-death bar is formed (a word joins it
    when the left child loses that word or the right child loses its
    whole level), the oracle bounds it, and a survival scan at the bound
    decides the branch: a side dead at the bound cannot carry the tree.
    """

    def advance(u: Word, trace: list) -> int:
        right_alive: dict[int, bool] = {}

        def right_ok(m: int) -> bool:
            got = right_alive.get(m)
            if got is None:
                got = has_descendant(t, u + (1,), m)
                right_alive[m] = got
            return got

        def b_member(v: Word) -> bool:
            if not t.member(u + (0,) + v):
                return True
            return not right_ok(len(v))

        carrier = DSet(b_member, extension_closed=True)
        wit = bar_wit(u) if bar_wit is not None else None
        n = fan.bound(Bar(carrier, wit))
        trace.append(f"fan[{fan.tag}]@{format_word(u)}={n}")
        alive0 = has_descendant(t, u + (0,), n)
        alive1 = has_descendant(t, u + (1,), n)
        trace.append(f"scan@{format_word(u)}:n={n}:{int(alive0)}{int(alive1)}")
        if not alive0 and not alive1:
            raise InconsistencyError(u, "both sides dead at the fan bound")
        if alive0 and alive1:
            raise CertificateError(
                f"fan bound {n} failed to separate the children at {format_word(u)}; "
                "the uniqueness assertion or the oracle is wrong")
        return 0 if alive0 else 1

    return PathGen(t, advance, fuel=fuel)


def coconvex_bound(b: Bar, fuel: int = DEFAULT_FUEL) -> int:
    """Uniform bound for a co-convex bar, with no oracle anywhere.

    The closure keeps co-convexity, its complement is a convex tree, and
    the probe-driven descent walks the completion's unique surviving ray.
    The witness applied to that ray gives the bound, re-verified by a
    level scan.
    """
    if b.wit is None:
        raise PreconditionError("bar must carry a witness")
    if not b.carrier.co_convex:
        raise PreconditionError("carrier must be flagged co-convex")
    closed = closure(b.carrier)
    if closed.stab is None:
        raise PreconditionError(
            "carrier needs a stabilization depth (the completion requires one)")
    t = tree(complement(closed), validate=False)
    completed = complete(t)
    scan_slack = closed.stab + 4

    def exit_wit(alpha: Seq) -> int:
        base = b.query(alpha)
        for m in range(base, base + scan_slack + fuel + 1):
            if not completed.member(restrict(alpha, m)):
                return m
        raise WitnessError("probe never left the completed tree")

    gen = find_path_convex_unique(completed, exit_wit, fuel=fuel)
    n = b.query(gen.as_seq())
    check_enumeration(1 << n)
    for u in iter_level(n):
        if not closed.member(u):
            raise CertificateError(
                f"level {n} is not inside the closed carrier (saw {format_word(u)})")
    return n
