"""Query-based functionals on Cantor space and the continuity layer.

Two representations: finite decision trees, on which constancy, moduli,
and uniform-continuity bounds are all decidable outright, and fueled
query programs for the least-prefix constructions that have no natural
finite tree.  Programs log their queries per evaluation, so outputs can
be replayed and reconstructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from ._budget import check_enumeration
from .errors import CertificateError, FuelError, PreconditionError
from .fan import Bar, FanOracle, minimal_witness
from .oracles import WKLOracle
from .sets import DSet, interior
from .trees import Tree
from .words import EMPTY, ONE, ZERO, Seq, Word, concat, format_word, iter_level, restrict


@dataclass(frozen=True)
class Leaf:
    value: int


@dataclass(frozen=True)
class Node:
    index: int
    low: "Functional"
    high: "Functional"


Functional = Union[Leaf, Node]


@dataclass(frozen=True)
class ProgramFunctional:
    """A total map given as a bit-querying program with a fuel budget."""
    run: Callable[[Callable[[int], int]], int]
    fuel: int
    label: str = "program"


AnyFunctional = Union[Leaf, Node, ProgramFunctional]


def query_depth(f: Functional) -> int:
    """1 + the largest index the tree can query; 0 for a leaf."""
    if isinstance(f, Leaf):
        return 0
    return max(f.index + 1, query_depth(f.low), query_depth(f.high))


def eval_traced(f: AnyFunctional, alpha: Seq) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Value at alpha together with the (index, bit) query log."""
    log: list[tuple[int, int]] = []
    if isinstance(f, ProgramFunctional):
        def qfn(i: int) -> int:
            if len(log) >= f.fuel:
                raise FuelError(f"{f.label} exceeded its fuel of {f.fuel} queries")
            b = alpha.at(i)
            log.append((i, b))
            return b
        value = f.run(qfn)
        return value, tuple(log)
    node = f
    while isinstance(node, Node):
        b = alpha.at(node.index)
        log.append((node.index, b))
        node = node.high if b else node.low
    return node.value, tuple(log)


def evaluate(f: AnyFunctional, alpha: Seq) -> int:
    return eval_traced(f, alpha)[0]


def replay(f: AnyFunctional, log) -> int:
    """Re-run an evaluation answering queries from its own log; the result
    must reproduce the original output (programs are deterministic)."""
    table = dict(log)

    def lookup(i: int) -> int:
        if i not in table:
            raise CertificateError(f"replay log holds no bit for index {i}")
        return table[i]

    return evaluate(f, Seq.from_rule(lookup))


def eval_word(f: AnyFunctional, u: Word) -> int:
    """Value on the finite word u, padded with zeros."""
    return evaluate(f, concat(tuple(u), ZERO))


def residual(f: Functional, u: Word) -> Functional:
    """The functional seen after the prefix u: queries under the prefix are
    resolved by it, the rest shift down by its length."""
    if isinstance(f, Leaf):
        return f
    if f.index < len(u):
        return residual(f.high if u[f.index] else f.low, u)
    return Node(f.index - len(u), residual(f.low, u), residual(f.high, u))


def _leaf_paths(f: Functional, assign: dict[int, int]):
    """Feasible root-to-leaf paths: a repeated query follows the bit the
    path already fixed, so phantom leaves are never enumerated."""
    if isinstance(f, Leaf):
        yield dict(assign), f.value
        return
    if f.index in assign:
        yield from _leaf_paths(f.high if assign[f.index] else f.low, assign)
        return
    for b, branch in ((0, f.low), (1, f.high)):
        assign[f.index] = b
        yield from _leaf_paths(branch, assign)
        del assign[f.index]


def _pad_assignment(assign: dict[int, int]) -> Seq:
    width = max(assign) + 1 if assign else 0
    return Seq.eventually_constant(tuple(assign.get(i, 0) for i in range(width)), 0)


@dataclass(frozen=True)
class ConstancyVerdict:
    value: int | None = None
    witnesses: tuple[Seq, Seq] | None = None

    @property
    def constant(self) -> bool:
        return self.value is not None


def is_constant(f: Functional) -> ConstancyVerdict:
    """Constant with its value, or two zero-padded witness sequences with
    distinct values; witnesses are the leftmost disagreeing leaf pair."""
    paths = _leaf_paths(f, {})
    first_assign, first_value = next(paths)
    for assign, value in paths:
        if value != first_value:
            return ConstancyVerdict(
                witnesses=(_pad_assignment(first_assign), _pad_assignment(assign)))
    return ConstancyVerdict(value=first_value)


def pointwise_modulus(f: AnyFunctional, alpha: Seq) -> int:
    """1 + the largest index actually queried at alpha (0 when none);
    any sequence agreeing on that prefix evaluates identically."""
    _, log = eval_traced(f, alpha)
    return max((i for i, _ in log), default=-1) + 1


def uc_bound_bruteforce(f: Functional) -> int:
    """Least level at which every residual is constant."""
    top = query_depth(f)
    check_enumeration(1 << (top + 1))
    for n in range(top + 1):
        if all(is_constant(residual(f, u)).constant for u in iter_level(n)):
            return n
    return top


def bound_of(f: Functional) -> int:
    """Largest leaf value; a bound for every evaluation."""
    if isinstance(f, Leaf):
        return f.value
    return max(bound_of(f.low), bound_of(f.high))


def path_modulus(f: Functional) -> Functional:
    """The exact query-closure modulus: along each branch, the leaf holds
    1 + the largest index met on the way."""
    def go(node: Functional, seen: int) -> Functional:
        if isinstance(node, Leaf):
            return Leaf(seen)
        deeper = max(seen, node.index + 1)
        return Node(node.index, go(node.low, deeper), go(node.high, deeper))
    return go(f, 0)


def materialize(p: ProgramFunctional, depth_cap: int = 20) -> Functional:
    """Reconstruct a finite decision tree by splitting the program on each
    bit it asks for; requires the program to be deterministic."""

    class _Need(Exception):
        def __init__(self, idx: int):
            self.idx = idx

    def build(assign: dict[int, int]) -> Functional:
        def qfn(i: int) -> int:
            if i in assign:
                return assign[i]
            raise _Need(i)
        try:
            return Leaf(p.run(qfn))
        except _Need as need:
            if len(assign) >= depth_cap:
                raise FuelError(
                    f"{p.label} still querying after {depth_cap} pinned bits")
            i = need.idx
            low = build({**assign, i: 0})
            high = build({**assign, i: 1})
            return Node(i, low, high)

    return build({})


# ---------------------------------------------------------------------------
# Bars from continuity and back.

def bar_from_pc(f: Functional) -> Bar:
    """The value-overtaken-by-length bar of a finite-tree functional.

    Carrier: words whose zero-padded value is at most their length.  The
    witness takes each sequence to max(queried prefix, value), which lands
    inside the carrier by construction.
    """
    stab = max(query_depth(f), bound_of(f))
    carrier = DSet(lambda u: eval_word(f, u) <= len(u), stab=stab)

    def wit(alpha: Seq) -> int:
        value, log = eval_traced(f, alpha)
        modulus = max((i for i, _ in log), default=-1) + 1
        return max(modulus, value)

    return Bar(carrier, wit)


def functional_from_bar(b: Bar, fuel: int = 64) -> ProgramFunctional:
    """The least-prefix-in-the-carrier functional; it is a modulus of
    itself, since deciding the value queries exactly that prefix."""
    carrier = b.carrier

    def run(query: Callable[[int], int]) -> int:
        u: Word = EMPTY
        for n in range(fuel + 1):
            if carrier.member(u):
                return n
            u = u + (query(n),)
        raise FuelError(f"no prefix entered the carrier within {fuel} bits")

    return ProgramFunctional(run, fuel=fuel + 1, label="least-bar-hit")


_ALT = Seq.periodic(EMPTY, (0, 1))


def _spot_check_modulus(f: AnyFunctional, m: Functional) -> None:
    for alpha in (ZERO, ONE, _ALT):
        depth = evaluate(m, alpha)
        head = restrict(alpha, depth)
        flipped = concat(head, ONE if alpha.at(depth) == 0 else ZERO)
        if evaluate(f, alpha) != evaluate(f, flipped):
            raise CertificateError(
                "claimed modulus fails a spot check: values differ inside a "
                f"depth-{depth} cylinder")


def uc_via_fan(f: AnyFunctional, m: Functional, fan: FanOracle) -> int:
    """Uniform-continuity bound through a fan oracle.

    The modulus's overtaken bar is bounded by the oracle; the bound is
    then verified directly: every residual at that level must be constant
    (finite trees), or sampled tails must agree (programs).
    """
    _spot_check_modulus(f, m)
    n = fan.bound(bar_from_pc(m))
    if isinstance(f, ProgramFunctional):
        check_enumeration(1 << n)
        tails = (ZERO, ONE, _ALT)
        for u in iter_level(n):
            got = {evaluate(f, concat(u, tail)) for tail in tails}
            if len(got) != 1:
                raise CertificateError(
                    f"program values split below {format_word(u)}; "
                    "the modulus assertion was false")
    else:
        check_enumeration(1 << n)
        for u in iter_level(n):
            if not is_constant(residual(f, u)).constant:
                raise CertificateError(
                    f"residual below {format_word(u)} is not constant; "
                    "the modulus assertion was false")
    return n


# ---------------------------------------------------------------------------
# Decidability of non-constancy and of escaping words.

@dataclass(frozen=True)
class DecoVerdict:
    exists: bool
    witnesses: tuple[Seq, Seq] | None = None


def deco_decide(f: Functional) -> DecoVerdict:
    """Do two sequences get different values?  Decidable on finite trees."""
    verdict = is_constant(f)
    if verdict.constant:
        return DecoVerdict(exists=False)
    return DecoVerdict(exists=True, witnesses=verdict.witnesses)


def defu_set_from_functional(f: Functional) -> DSet:
    """Words where flipping the next bit to 1 leaves the value unchanged.

    Its interior is a bar, and a word escapes it exactly when the
    functional is non-constant.
    """
    return DSet(lambda u: eval_word(f, u) == eval_word(f, tuple(u) + (1,)),
                stab=query_depth(f))


def functional_from_defu(d: DSet, fuel: int = 64) -> ProgramFunctional:
    """The least level from which every longer prefix stays inside d;
    the declared stabilization depth bounds the tail check."""
    if d.stab is None:
        raise PreconditionError("set needs a declared stabilization depth")
    s = d.stab

    def run(query: Callable[[int], int]) -> int:
        got: list[int] = []

        def prefix(m: int) -> Word:
            while len(got) < m:
                got.append(query(len(got)))
            return tuple(got[:m])

        for n in range(fuel + 1):
            if all(d.member(prefix(m)) for m in range(n, max(s, n) + 1)):
                return n
        raise FuelError(f"no permanent entry into the set within {fuel} levels")

    return ProgramFunctional(run, fuel=max(fuel, s) + 2, label="least-permanent-entry")


@dataclass(frozen=True)
class DefuVerdict:
    exists: bool
    witness: Word | None = None


def _least_escape_level(d: DSet, s: int) -> int | None:
    """Least level up to the stabilization depth holding a word outside d."""
    check_enumeration(1 << (s + 1))
    for n in range(s + 1):
        if any(not d.member(u) for u in iter_level(n)):
            return n
    return None


def defu_via_wkl(d: DSet, wkl: WKLOracle) -> DefuVerdict:
    """Decide whether some word escapes d, via a path oracle.

    The guide tree keeps words whose own prefixes escape at least as
    early as any escape seen at their length; any path through it
    funnels past an escaping prefix whenever one exists at all, so a
    bounded scan along the path settles the question.
    """
    if d.stab is None:
        raise PreconditionError("set needs a declared stabilization depth")
    s = d.stab
    e = _least_escape_level(d, s)

    def t_member(u: Word) -> bool:
        if e is None or len(u) < e:
            return True
        return any(not d.member(u[:k]) for k in range(e + 1))

    guide = Tree(DSet(t_member, stab=(0 if e is None else e), restriction_closed=True))
    gen = wkl.solve(guide)
    alpha = gen.as_seq()
    inner = interior(d)
    bound = None
    for n in range(s + 1):
        if inner.member(restrict(alpha, n)):
            bound = n
            break
    if bound is None:
        raise CertificateError(
            "the interior is not a bar along the produced path; "
            "the bar assertion on the interior was false")
    for n in range(max(bound, s) + 1):
        u = restrict(alpha, n)
        if not d.member(u):
            return DefuVerdict(exists=True, witness=u)
    return DefuVerdict(exists=False)


def cfan_bound(d: DSet, fan: FanOracle) -> int:
    """Uniform bound for the interior of d: the interior of a stabilized
    set is itself detachable and stabilized, so it wraps as an ordinary
    bar and the fan oracle bounds it."""
    if d.stab is None:
        raise PreconditionError("set needs a declared stabilization depth")
    inner = interior(d)
    wit = minimal_witness(inner, d.stab + 1)
    return fan.bound(Bar(inner, wit))
