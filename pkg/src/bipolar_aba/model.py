"""Core model: frameworks, assumption sets and the primitive semantic checks.

A framework holds a language of sentences with dense integer ids, a
non-empty subset of assumptions (always the low ids ``0 .. n_assumptions-1``),
a total contrary map on the assumptions and single-body rules.  Everything
downstream (verification, labelling search, translation) is built on the
five primitives here: derivability, closure, attack, conflict-freeness and
closedness.

Derivability is plain graph reachability over the rule edges
``body -> head``, so each assumption's reachable-sentence set is computed
once (strongly connected components condensed, then a reverse topological
sweep) and kept as an int bitmask.  All set-level operations then reduce to
a few bitwise ops.  Above a configurable language-size threshold the tables
are skipped and every query falls back to an on-demand traversal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import (
    DuplicateContrary,
    EmptyAssumptions,
    MissingContrary,
    NonBipolarRule,
    UnknownName,
)

DEFAULT_PRECOMPUTE_THRESHOLD = 4096


@dataclass(frozen=True)
class Sentence:
    """A language element: dense id plus its textual name."""

    id: int
    name: str


@dataclass(frozen=True)
class AssumptionSet:
    """A subset of a framework's assumptions, stored as an id bitmask."""

    mask: int = 0

    @classmethod
    def of(cls, ids: Iterable[int]) -> "AssumptionSet":
        m = 0
        for i in ids:
            m |= 1 << i
        return cls(m)

    def ids(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, assumption_id: int) -> bool:
        return bool(self.mask >> assumption_id & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def issubset(self, other: "AssumptionSet") -> bool:
        return self.mask & ~other.mask == 0

    def __or__(self, other: "AssumptionSet") -> "AssumptionSet":
        return AssumptionSet(self.mask | other.mask)

    def __and__(self, other: "AssumptionSet") -> "AssumptionSet":
        return AssumptionSet(self.mask & other.mask)


EMPTY_SET = AssumptionSet(0)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Tables:
    """Per-assumption bitmask tables derived from the rule graph."""

    __slots__ = (
        "reach", "cl", "att", "attackers", "cl_att", "att_cl",
        "containers", "self_attack_mask",
    )

    def __init__(self, fw: "Framework"):
        n_sent = fw.n_sentences
        n_asm = fw.n_assumptions
        asm_mask = fw.assumption_mask

        graph = nx.DiGraph()
        graph.add_nodes_from(range(n_sent))
        graph.add_edges_from((body, head) for head, body in fw.rules)
        cond = nx.condensation(graph)
        comp_reach: dict[int, int] = {}
        for comp in reversed(list(nx.topological_sort(cond))):
            m = 0
            for v in cond.nodes[comp]["members"]:
                m |= 1 << v
            for nxt in cond.successors(comp):
                m |= comp_reach[nxt]
            comp_reach[comp] = m
        mapping = cond.graph["mapping"]
        self.reach = [comp_reach[mapping[s]] for s in range(n_sent)]

        self.cl = [self.reach[a] & asm_mask for a in range(n_asm)]

        # att[a] = assumptions whose contrary is derivable from {a} alone
        by_contrary: dict[int, int] = {}
        for b in range(n_asm):
            by_contrary[fw.contrary[b]] = by_contrary.get(fw.contrary[b], 0) | (1 << b)
        self.att = []
        for a in range(n_asm):
            reach = self.reach[a]
            row = 0
            for sentence, owners in by_contrary.items():
                if reach >> sentence & 1:
                    row |= owners
            self.att.append(row)

        self.attackers = [0] * n_asm
        for a in range(n_asm):
            for b in _bits(self.att[a]):
                self.attackers[b] |= 1 << a

        # cl_att[g] = assumptions attacking Cl({g}); att_cl is its transpose
        self.cl_att = []
        for g in range(n_asm):
            row = 0
            for member in _bits(self.cl[g]):
                row |= self.attackers[member]
            self.cl_att.append(row)
        self.att_cl = [0] * n_asm
        for g in range(n_asm):
            for a in _bits(self.cl_att[g]):
                self.att_cl[a] |= 1 << g

        self.containers = [0] * n_asm
        for b in range(n_asm):
            for member in _bits(self.cl[b]):
                self.containers[member] |= 1 << b

        self.self_attack_mask = 0
        for g in range(n_asm):
            if self.att[g] & self.cl[g]:
                self.self_attack_mask |= 1 << g


class Framework:
    """A validated bipolar ABA framework.

    Immutable after construction; safe to share across threads.  Use
    :func:`build_framework` to construct one from name-level declarations.
    """

    def __init__(self, names: Sequence[str], n_assumptions: int,
                 contrary: Sequence[int], rules: Sequence[tuple[int, int]],
                 precompute_threshold: int = DEFAULT_PRECOMPUTE_THRESHOLD):
        self.names: tuple[str, ...] = tuple(names)
        self.index: dict[str, int] = {n: i for i, n in enumerate(self.names)}
        self.n_sentences = len(self.names)
        self.n_assumptions = n_assumptions
        self.assumption_mask = (1 << n_assumptions) - 1
        self.contrary: tuple[int, ...] = tuple(contrary)
        self.rules: tuple[tuple[int, int], ...] = tuple(sorted(set(rules)))
        succ: list[list[int]] = [[] for _ in range(self.n_sentences)]
        for head, body in self.rules:
            succ[body].append(head)
        self.succ: tuple[tuple[int, ...], ...] = tuple(tuple(s) for s in succ)

        h = [0] * n_assumptions
        h_ctr = [0] * n_assumptions
        contrary_owner: dict[int, list[int]] = {}
        for a in range(n_assumptions):
            contrary_owner.setdefault(self.contrary[a], []).append(a)
        for head, body in self.rules:
            h[body] += 1
            h_ctr[body] += 1
            if head < n_assumptions:
                h[head] += 1
                h_ctr[head] += 1
            for owner in contrary_owner.get(head, ()):
                h_ctr[owner] += 1
        self.h_scores: tuple[int, ...] = tuple(h)
        self.h_scores_with_contraries: tuple[int, ...] = tuple(h_ctr)
        self.selection_order: tuple[int, ...] = tuple(
            sorted(range(n_assumptions), key=lambda a: (-h[a], a)))
        self.selection_order_with_contraries: tuple[int, ...] = tuple(
            sorted(range(n_assumptions), key=lambda a: (-h_ctr[a], a)))

        self.precompute_threshold = precompute_threshold
        self._tables: _Tables | None = None
        if self.n_sentences <= precompute_threshold:
            self._tables = _Tables(self)

    # --- name lookups ---

    def sentence_id(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownName(f"unknown sentence {name!r}") from None

    def sentences(self) -> tuple[Sentence, ...]:
        return tuple(Sentence(i, n) for i, n in enumerate(self.names))

    @property
    def assumption_names(self) -> tuple[str, ...]:
        return self.names[: self.n_assumptions]

    def is_assumption(self, sentence_id: int) -> bool:
        return 0 <= sentence_id < self.n_assumptions

    def assumption_set(self, names: Iterable[str]) -> AssumptionSet:
        mask = 0
        for name in names:
            i = self.index.get(name)
            if i is None or i >= self.n_assumptions:
                raise UnknownName(f"{name!r} is not an assumption")
            mask |= 1 << i
        return AssumptionSet(mask)

    def set_names(self, s: AssumptionSet) -> tuple[str, ...]:
        return tuple(sorted(self.names[i] for i in s.ids()))

    def all_assumptions(self) -> AssumptionSet:
        return AssumptionSet(self.assumption_mask)

    def structurally_equal(self, other: "Framework") -> bool:
        if self.assumption_names != other.assumption_names:
            return False
        if set(self.names) != set(other.names):
            return False
        mine = {self.names[a]: self.names[self.contrary[a]]
                for a in range(self.n_assumptions)}
        theirs = {other.names[a]: other.names[other.contrary[a]]
                  for a in range(other.n_assumptions)}
        if mine != theirs:
            return False
        my_rules = {(self.names[h], self.names[b]) for h, b in self.rules}
        their_rules = {(other.names[h], other.names[b]) for h, b in other.rules}
        return my_rules == their_rules

    def __repr__(self) -> str:
        return (f"Framework(|L|={self.n_sentences}, |A|={self.n_assumptions},"
                f" |R|={len(self.rules)})")

    # --- reachability-backed accessors ---

    def _bfs_reach(self, sentence: int) -> int:
        mask = 1 << sentence
        frontier = [sentence]
        while frontier:
            nxt = []
            for v in frontier:
                for head in self.succ[v]:
                    if not mask >> head & 1:
                        mask |= 1 << head
                        nxt.append(head)
            frontier = nxt
        return mask

    def reach_mask(self, assumption: int) -> int:
        t = self._tables
        if t is not None:
            return t.reach[assumption]
        return self._bfs_reach(assumption)

    def closure_mask(self, assumption: int) -> int:
        t = self._tables
        if t is not None:
            return t.cl[assumption]
        return self._bfs_reach(assumption) & self.assumption_mask

    def attack_row(self, assumption: int) -> int:
        """Assumptions b with contrary(b) derivable from the singleton."""
        t = self._tables
        if t is not None:
            return t.att[assumption]
        reach = self._bfs_reach(assumption)
        row = 0
        for b in range(self.n_assumptions):
            if reach >> self.contrary[b] & 1:
                row |= 1 << b
        return row

    def attackers_row(self, assumption: int) -> int:
        """Assumptions whose singleton attacks the given one."""
        t = self._tables
        if t is not None:
            return t.attackers[assumption]
        row = 0
        for a in range(self.n_assumptions):
            if self.attack_row(a) >> assumption & 1:
                row |= 1 << a
        return row

    def closure_attackers_row(self, assumption: int) -> int:
        """Assumptions whose singleton attacks Cl of the given singleton."""
        t = self._tables
        if t is not None:
            return t.cl_att[assumption]
        cl = self.closure_mask(assumption)
        row = 0
        for a in range(self.n_assumptions):
            if self.attack_row(a) & cl:
                row |= 1 << a
        return row

    def attacked_closures_row(self, assumption: int) -> int:
        """Assumptions g with Cl({g}) attacked by the given singleton."""
        t = self._tables
        if t is not None:
            return t.att_cl[assumption]
        att = self.attack_row(assumption)
        row = 0
        for g in range(self.n_assumptions):
            if att & self.closure_mask(g):
                row |= 1 << g
        return row

    def containers_row(self, assumption: int) -> int:
        """Assumptions b whose closure contains the given assumption."""
        t = self._tables
        if t is not None:
            return t.containers[assumption]
        row = 0
        for b in range(self.n_assumptions):
            if self.closure_mask(b) >> assumption & 1:
                row |= 1 << b
        return row

    def self_attack_mask(self) -> int:
        """Assumptions whose singleton attacks its own closure."""
        t = self._tables
        if t is not None:
            return t.self_attack_mask
        mask = 0
        for g in range(self.n_assumptions):
            if self.attack_row(g) & self.closure_mask(g):
                mask |= 1 << g
        return mask


def build_framework(language_names: Iterable[str],
                    assumption_names: Iterable[str],
                    contrary_pairs: Iterable[tuple[str, str]],
                    rule_pairs: Iterable[tuple[str, str]],
                    precompute_threshold: int = DEFAULT_PRECOMPUTE_THRESHOLD,
                    ) -> Framework:
    """Validate name-level declarations and assemble a :class:`Framework`.

    Assumptions receive the low ids in declaration order; the remaining
    language sentences follow in declaration order.  Duplicate rules are
    dropped silently.
    """
    assumptions: list[str] = []
    seen = set()
    for name in assumption_names:
        if name not in seen:
            seen.add(name)
            assumptions.append(name)
    if not assumptions:
        raise EmptyAssumptions("the assumption set must be non-empty")

    names: list[str] = list(assumptions)
    known = set(assumptions)
    for name in language_names:
        if name not in known:
            known.add(name)
            names.append(name)

    index = {n: i for i, n in enumerate(names)}
    n_asm = len(assumptions)

    contrary: list[int | None] = [None] * n_asm
    for asm, target in contrary_pairs:
        i = index.get(asm)
        if i is None or i >= n_asm:
            raise UnknownName(f"contrary declared for non-assumption {asm!r}")
        if target not in index:
            raise UnknownName(f"contrary of {asm!r} is undeclared sentence {target!r}")
        if contrary[i] is not None:
            raise DuplicateContrary(f"assumption {asm!r} has more than one contrary")
        contrary[i] = index[target]
    for i, c in enumerate(contrary):
        if c is None:
            raise MissingContrary(f"assumption {names[i]!r} has no contrary")

    contrary_values = set(contrary)
    rules: list[tuple[int, int]] = []
    for head, body in rule_pairs:
        if head not in index:
            raise UnknownName(f"rule head {head!r} is undeclared")
        if body not in index:
            raise UnknownName(f"rule body {body!r} is undeclared")
        h, b = index[head], index[body]
        if b >= n_asm:
            raise NonBipolarRule(f"rule body {body!r} is not an assumption")
        if h >= n_asm and h not in contrary_values:
            raise NonBipolarRule(
                f"rule head {head!r} is neither an assumption nor a contrary")
        rules.append((h, b))

    return Framework(names, n_asm, [c for c in contrary], rules,
                     precompute_threshold=precompute_threshold)


# --- primitive operations ---

def derivable(fw: Framework, s: AssumptionSet, sentence_id: int) -> bool:
    """Is the sentence derivable from some subset of ``s``?"""
    for a in s.ids():
        if fw.reach_mask(a) >> sentence_id & 1:
            return True
    return False


def closure(fw: Framework, s: AssumptionSet) -> AssumptionSet:
    """All assumptions derivable from ``s``."""
    mask = 0
    for a in s.ids():
        mask |= fw.closure_mask(a)
    return AssumptionSet(mask)


def attacks(fw: Framework, attacker: AssumptionSet, target: AssumptionSet) -> bool:
    """Does ``attacker`` derive the contrary of some member of ``target``?"""
    for a in attacker.ids():
        if fw.attack_row(a) & target.mask:
            return True
    return False


def singleton_attackers(fw: Framework, target: AssumptionSet) -> AssumptionSet:
    """Assumptions whose singleton attacks ``target``.

    These are exactly the sources of minimal attacks on ``target``:
    every deduction in a bipolar framework is a chain from a single
    assumption, so any attack shrinks to a singleton-sourced one.
    """
    mask = 0
    for b in target.ids():
        mask |= fw.attackers_row(b)
    return AssumptionSet(mask)


def is_conflict_free(fw: Framework, s: AssumptionSet) -> bool:
    return not attacks(fw, s, s)


def is_closed(fw: Framework, s: AssumptionSet) -> bool:
    return closure(fw, s).mask == s.mask
