"""Decidable sets of binary words.

A DSet is a total membership function plus optional structural metadata:
a stabilization depth (membership is extension-invariant past it) and
flags for extension/restriction closure and convexity.  Flags are
validated eagerly to a construction horizon and trusted beyond it;
lies beyond the horizon surface later as certificate-check failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from ._budget import check_enumeration
from .errors import InconsistencyError, PreconditionError
from .words import EMPTY, Seq, Word, format_word, iter_level

DEFAULT_HORIZON = 8

MemberFn = Callable[[Word], bool]


@dataclass(frozen=True)
class DSet:
    member_fn: MemberFn
    stab: int | None = None
    extension_closed: bool = False
    restriction_closed: bool = False
    convex: bool = False
    co_convex: bool = False

    def member(self, u: Word) -> bool:
        return bool(self.member_fn(u))

    def __contains__(self, u: Word) -> bool:
        return self.member(u)

    def __repr__(self) -> str:
        flags = [name for name in ("extension_closed", "restriction_closed", "convex", "co_convex")
                 if getattr(self, name)]
        meta = (f" stab={self.stab}" if self.stab is not None else "") + \
               ("".join(" " + f for f in flags))
        return f"DSet[{meta.strip() or 'plain'}]"


def _prefix_hit(ds: DSet, u: Word, up_to: int | None = None) -> bool:
    end = len(u) if up_to is None else min(up_to, len(u))
    return any(ds.member(u[:k]) for k in range(end + 1))


def validate_claims(ds: DSet, horizon: int = DEFAULT_HORIZON) -> None:
    """Spot-check declared stab and flags on all words up to the horizon."""
    check_enumeration(1 << (horizon + 1))
    if ds.stab is not None:
        if ds.stab < 0:
            raise PreconditionError(f"stab must be nonnegative, got {ds.stab}")
        for n in range(ds.stab, horizon):
            for u in iter_level(n):
                m = ds.member(u)
                for b in (0, 1):
                    if ds.member(u + (b,)) != m:
                        raise PreconditionError(
                            f"stab={ds.stab} violated at {format_word(u)} -> {format_word(u + (b,))}")
    if ds.extension_closed:
        for n in range(horizon):
            for u in iter_level(n):
                if ds.member(u) and not (ds.member(u + (0,)) and ds.member(u + (1,))):
                    raise PreconditionError(
                        f"extension-closed flag violated above {format_word(u)}")
    if ds.restriction_closed:
        for n in range(1, horizon + 1):
            for u in iter_level(n):
                if ds.member(u) and not ds.member(u[:-1]):
                    raise PreconditionError(
                        f"restriction-closed flag violated below {format_word(u)}")
    if ds.convex:
        for n in range(horizon + 1):
            bad = _contiguity_gap([ds.member(u) for u in iter_level(n)])
            if bad is not None:
                raise PreconditionError(f"convex flag violated at level {n}")
    if ds.co_convex:
        for n in range(horizon + 1):
            bad = _contiguity_gap([not ds.member(u) for u in iter_level(n)])
            if bad is not None:
                raise PreconditionError(f"co-convex flag violated at level {n}")


def dset(member_fn: MemberFn, *, stab: int | None = None,
         extension_closed: bool = False, restriction_closed: bool = False,
         convex: bool = False, co_convex: bool = False,
         horizon: int = DEFAULT_HORIZON, validate: bool = True) -> DSet:
    """Public constructor: builds a DSet and validates its claims eagerly."""
    ds = DSet(member_fn, stab=stab, extension_closed=extension_closed,
              restriction_closed=restriction_closed, convex=convex, co_convex=co_convex)
    if validate:
        validate_claims(ds, horizon)
    return ds


# ---------------------------------------------------------------------------
# Common stabilized families.

def full_set() -> DSet:
    return DSet(lambda u: True, stab=0, extension_closed=True,
                restriction_closed=True, convex=True)


def empty_set() -> DSet:
    return DSet(lambda u: False, stab=0, extension_closed=True,
                restriction_closed=True, co_convex=True)


def len_ge(k: int) -> DSet:
    """Words of length at least k."""
    return DSet(lambda u: len(u) >= k, stab=k, extension_closed=True, co_convex=True)


def bit_at(i: int, b: int) -> DSet:
    """Words long enough to fix position i, with that bit equal to b."""
    if b not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {b!r}")
    return DSet(lambda u: len(u) > i and u[i] == b, stab=i + 1, extension_closed=True)


def count_ones_ge(k: int) -> DSet:
    """Words carrying at least k one bits.  Not stabilized for k > 0."""
    if k <= 0:
        return full_set()
    return DSet(lambda u: sum(u) >= k, extension_closed=True)


def has_prefix(w: Word) -> DSet:
    """Words extending the fixed word w."""
    w = tuple(w)
    return DSet(lambda u: len(u) >= len(w) and u[:len(w)] == w,
                stab=len(w), extension_closed=True)


def finite_set(members: Iterable[Word]) -> DSet:
    """A literal finite set; stabilizes just past its longest member."""
    table = frozenset(tuple(m) for m in members)
    stab = max((len(m) for m in table), default=-1) + 1
    return DSet(lambda u: u in table, stab=stab)


def union_sets(a: DSet, b: DSet) -> DSet:
    stab = max(a.stab, b.stab) if a.stab is not None and b.stab is not None else None
    return DSet(lambda u: a.member(u) or b.member(u), stab=stab,
                extension_closed=a.extension_closed and b.extension_closed,
                restriction_closed=a.restriction_closed and b.restriction_closed,
                co_convex=a.co_convex and b.co_convex)


def intersect_sets(a: DSet, b: DSet) -> DSet:
    stab = max(a.stab, b.stab) if a.stab is not None and b.stab is not None else None
    return DSet(lambda u: a.member(u) and b.member(u), stab=stab,
                extension_closed=a.extension_closed and b.extension_closed,
                restriction_closed=a.restriction_closed and b.restriction_closed,
                convex=a.convex and b.convex)


def complement(a: DSet) -> DSet:
    return DSet(lambda u: not a.member(u), stab=a.stab,
                extension_closed=a.restriction_closed,
                restriction_closed=a.extension_closed,
                convex=a.co_convex, co_convex=a.convex)


# ---------------------------------------------------------------------------
# The prefix-closure, relative set, and interior operators.

def closure(a: DSet) -> DSet:
    """Words having some prefix in a.  Extension-closed by construction;
    co-convexity survives the closure."""
    def mem(u: Word) -> bool:
        return _prefix_hit(a, u)
    return DSet(mem, stab=a.stab, extension_closed=True, co_convex=a.co_convex)


def restrict_set(a: DSet, u: Word) -> DSet:
    """The relative set seen below u: w is a member iff u*w is in a."""
    u = tuple(u)
    stab = max(0, a.stab - len(u)) if a.stab is not None else None
    return DSet(lambda w: a.member(u + w), stab=stab,
                extension_closed=a.extension_closed,
                restriction_closed=a.restriction_closed,
                convex=a.convex, co_convex=a.co_convex)


def interior(a: DSet) -> DSet:
    """Words all of whose extensions stay inside a.

    Decidable only with a declared stabilization depth: the recursion
    u in A* iff u in A and both children in A* bottoms out there.
    """
    if a.stab is None:
        raise PreconditionError("interior needs a declared stabilization depth")
    s = a.stab
    memo: dict[Word, bool] = {}

    def mem(u: Word) -> bool:
        if len(u) >= s:
            return a.member(u)
        got = memo.get(u)
        if got is None:
            got = a.member(u) and mem(u + (0,)) and mem(u + (1,))
            memo[u] = got
        return got

    return DSet(mem, stab=s, extension_closed=True)


# ---------------------------------------------------------------------------
# Verdicts.

class Outcome(Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer with an independently checkable payload.

    YES and NO carry a bound/witness/escape; UNKNOWN carries the depth
    exhausted.  Which payload field is meaningful depends on the query.
    """
    outcome: Outcome
    bound: int | None = None
    witness: tuple | None = None
    escape: Seq | None = None
    depth: int | None = None

    @staticmethod
    def yes(bound: int | None = None, witness: tuple | None = None) -> "Verdict":
        return Verdict(Outcome.YES, bound=bound, witness=witness)

    @staticmethod
    def no(bound: int | None = None, witness: tuple | None = None,
           escape: Seq | None = None) -> "Verdict":
        return Verdict(Outcome.NO, bound=bound, witness=witness, escape=escape)

    @staticmethod
    def unknown(depth: int) -> "Verdict":
        return Verdict(Outcome.UNKNOWN, depth=depth)

    @property
    def is_yes(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def is_no(self) -> bool:
        return self.outcome is Outcome.NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN


# ---------------------------------------------------------------------------
# Bar and convexity checks.

def _hits_level(b: DSet, n: int) -> bool:
    """Does every word at level n carry a prefix in b?"""
    return all(_prefix_hit(b, u) for u in iter_level(n))


def least_uniform_bound(b: DSet, max_n: int) -> int | None:
    """Least N <= max_n such that every level-N word has a prefix in b.

    The search is incremental, so the budget is only charged for the
    levels actually scanned.
    """
    for n in range(max_n + 1):
        if _hits_level(b, n):
            return n
    return None


def bar_verdict(b: DSet, depth: int) -> Verdict:
    """Is b met by every sequence within the given depth?

    YES(N): least N <= depth with every level-N word prefixed in b.
    NO(escape): only certifiable when b stabilizes by depth; the escape
    is a level-stab word with no prefix in b, extended by zeros.
    UNKNOWN(depth) otherwise.
    """
    n = least_uniform_bound(b, depth)
    if n is not None:
        return Verdict.yes(bound=n)
    s = b.stab
    if s is not None and s <= depth:
        for u in iter_level(s):
            if not _prefix_hit(b, u):
                return Verdict.no(escape=Seq.eventually_constant(u, 0))
        raise InconsistencyError(EMPTY, "declared stab inconsistent with level scan")
    return Verdict.unknown(depth)


def uniform_bound(b: DSet, max_n: int) -> Verdict:
    """Least uniform bar bound, or UNKNOWN past max_n.  Minimality is
    part of the contract: the search is incremental from zero."""
    n = least_uniform_bound(b, max_n)
    if n is not None:
        return Verdict.yes(bound=n)
    return Verdict.unknown(max_n)


def uniform_bound_ext_closed(b: DSet, max_n: int) -> Verdict:
    """For extension-closed b the uniform bound is the first full level."""
    if not b.extension_closed:
        raise PreconditionError("set must be flagged extension-closed")
    for n in range(max_n + 1):
        if all(b.member(u) for u in iter_level(n)):
            return Verdict.yes(bound=n)
    return Verdict.unknown(max_n)


def _contiguity_gap(flags: list[bool]) -> tuple[int, int, int] | None:
    """Indices (i, j, k) with flags[i] and flags[k] true, flags[j] false,
    i < j < k; None when the true entries form one contiguous block."""
    first = None
    last = None
    for idx, f in enumerate(flags):
        if f:
            if first is None:
                first = idx
            last = idx
    if first is None:
        return None
    for j in range(first + 1, last):
        if not flags[j]:
            return (first, j, last)
    return None


def convexity_verdict(a: DSet, depth: int, mode: str = "convex") -> Verdict:
    """Per-level betweenness check to the given depth.

    Convexity only relates words of equal length, so each level is
    checked independently; YES(depth) means consistent so far.
    """
    if mode not in ("convex", "co-convex"):
        raise PreconditionError(f"mode must be 'convex' or 'co-convex', got {mode!r}")
    for n in range(depth + 1):
        words = list(iter_level(n))
        flags = [a.member(u) for u in words]
        if mode == "co-convex":
            flags = [not f for f in flags]
        gap = _contiguity_gap(flags)
        if gap is not None:
            i, j, k = gap
            return Verdict.no(witness=(words[i], words[j], words[k]))
    return Verdict.yes(bound=depth)
