"""Search-state machinery: labellings, transitions, propagation, heuristics.

A labelling assigns one of five labels to every assumption.  The
enumeration algorithms walk a binary tree whose nodes are labellings:
taking an assumption IN applies a left-transition, excluding it applies a
right-transition.  MUST_OUT records an obligation: the assumption attacks
the closure of the IN set, so the IN set must eventually counter-attack
its closure (which discharges it to OUT) or the branch is dead.

Labellings are value types built on int bitmasks; transitions return fresh
labellings and never mutate their input.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .errors import IllegalSelection, NoBlank
from .model import Framework, _bits


class Label(enum.Enum):
    IN = "IN"
    OUT = "OUT"
    UNDEC = "UNDEC"
    BLANK = "BLANK"
    MUST_OUT = "MUST_OUT"


@dataclass(frozen=True)
class Labelling:
    """Total label assignment over a framework's assumptions.

    Stored as one bitmask per non-blank label; blank is the complement.
    """

    n: int
    in_mask: int = 0
    out_mask: int = 0
    undec_mask: int = 0
    must_out_mask: int = 0

    @property
    def blank_mask(self) -> int:
        full = (1 << self.n) - 1
        return full & ~(self.in_mask | self.out_mask | self.undec_mask
                        | self.must_out_mask)

    def label_of(self, assumption: int) -> Label:
        bit = 1 << assumption
        if self.in_mask & bit:
            return Label.IN
        if self.out_mask & bit:
            return Label.OUT
        if self.undec_mask & bit:
            return Label.UNDEC
        if self.must_out_mask & bit:
            return Label.MUST_OUT
        return Label.BLANK

    def counts(self) -> dict[Label, int]:
        return {
            Label.IN: self.in_mask.bit_count(),
            Label.OUT: self.out_mask.bit_count(),
            Label.UNDEC: self.undec_mask.bit_count(),
            Label.MUST_OUT: self.must_out_mask.bit_count(),
            Label.BLANK: self.blank_mask.bit_count(),
        }

    def as_dict(self, fw: Framework) -> dict[str, Label]:
        return {fw.names[a]: self.label_of(a) for a in range(self.n)}


def initial_labelling(fw: Framework) -> Labelling:
    """Root state: assumptions attacking their own closure start UNDEC."""
    return Labelling(fw.n_assumptions, undec_mask=fw.self_attack_mask())


def initial_set_stable_labelling(fw: Framework) -> Labelling:
    """Root state for set-stable search: self-attackers start MUST_OUT."""
    return Labelling(fw.n_assumptions, must_out_mask=fw.self_attack_mask())


def can_select(fw: Framework, lab: Labelling, assumption: int) -> bool:
    """May a left-transition be applied to this assumption?

    The assumption must be blank and its closure must not contain an
    assumption that is already excluded (OUT, UNDEC or MUST_OUT): labelling
    such a closure IN would break closedness or conflict-freeness of the IN
    set, so the searches skip the left branch as hopeless instead.
    """
    if not lab.blank_mask >> assumption & 1:
        return False
    tainted = lab.out_mask | lab.undec_mask | lab.must_out_mask
    return not fw.closure_mask(assumption) & tainted


def _apply_in(fw: Framework, lab: Labelling, assumption: int) -> Labelling:
    """Label an assumption's closure IN and rebook the consequences.

    Shared body of the left-transition and of one propagation step: the
    closure goes IN, every assumption whose closure is now attacked goes
    OUT (discharging MUST_OUT obligations), and every assumption attacking
    the new closure becomes MUST_OUT unless already OUT.
    """
    cl = fw.closure_mask(assumption)
    in_mask = lab.in_mask | cl

    outs = fw.attacked_closures_row(assumption)
    if outs & in_mask:
        raise IllegalSelection(
            f"selected assumption {fw.names[assumption]!r} attacks the closure "
            f"of an IN assumption")
    out_mask = lab.out_mask | outs

    new_must = fw.closure_attackers_row(assumption) & ~out_mask
    if new_must & in_mask:
        raise IllegalSelection(
            f"closure of {fw.names[assumption]!r} is attacked from inside the IN set")

    return Labelling(
        lab.n,
        in_mask=in_mask,
        out_mask=out_mask,
        undec_mask=lab.undec_mask & ~outs & ~new_must,
        must_out_mask=(lab.must_out_mask | new_must) & ~outs,
    )


def left_transition(fw: Framework, lab: Labelling, assumption: int) -> Labelling:
    """Take the assumption (and so its whole closure) into the IN set."""
    if not can_select(fw, lab, assumption):
        raise IllegalSelection(
            f"left-transition on non-selectable assumption {fw.names[assumption]!r}")
    return _apply_in(fw, lab, assumption)


def right_transition(fw: Framework, lab: Labelling, assumption: int) -> Labelling:
    """Exclude the assumption by choice.

    Every blank assumption whose closure contains it becomes UNDEC (taking
    any of them IN would drag the excluded assumption back in).  Labels
    that carry information, OUT and MUST_OUT, are left untouched.
    """
    if not lab.blank_mask >> assumption & 1:
        raise IllegalSelection(
            f"right-transition on non-blank assumption {fw.names[assumption]!r}")
    undec = fw.containers_row(assumption) & lab.blank_mask
    return replace(lab, undec_mask=lab.undec_mask | undec)


def set_stable_right_transition(fw: Framework, lab: Labelling,
                                assumption: int) -> Labelling:
    """Exclude the assumption in a set-stable search.

    Exclusion is never free under set-stable semantics: the IN set must
    end up attacking the closure of everything it leaves out.  So the
    assumptions that a plain right-transition would mark UNDEC instead
    become MUST_OUT and await discharge.
    """
    if not lab.blank_mask >> assumption & 1:
        raise IllegalSelection(
            f"right-transition on non-blank assumption {fw.names[assumption]!r}")
    must = fw.containers_row(assumption) & lab.blank_mask
    return replace(lab, must_out_mask=lab.must_out_mask | must)


def is_terminal(lab: Labelling) -> bool:
    return lab.blank_mask == 0


def is_hopeless(fw: Framework, lab: Labelling) -> bool:
    """Is some MUST_OUT obligation impossible to discharge?

    A MUST_OUT assumption is discharged when a later IN assumption attacks
    its closure, and only blank assumptions can still become IN.  If every
    attacker of the closure is OUT or UNDEC (in particular, if there is
    none), the obligation is dead and the branch can be cut.
    """
    usable = ~(lab.out_mask | lab.undec_mask)
    for a in _bits(lab.must_out_mask):
        if not fw.closure_attackers_row(a) & usable:
            return True
    return False


def is_admissible_labelling(fw: Framework, lab: Labelling) -> bool:
    return lab.blank_mask == 0 and lab.must_out_mask == 0


def is_set_stable_labelling(fw: Framework, lab: Labelling) -> bool:
    return is_admissible_labelling(fw, lab)


def _find_must_in(fw: Framework, lab: Labelling) -> int | None:
    """Lowest-id blank assumption that every admissible continuation must take IN.

    That is one whose closure is untainted and whose closure's attackers
    are all OUT or MUST_OUT: none of them can ever become IN, so the
    assumption is already defended.
    """
    dead = lab.out_mask | lab.must_out_mask
    tainted = dead | lab.undec_mask
    for a in _bits(lab.blank_mask):
        if fw.closure_mask(a) & tainted:
            continue
        if not fw.closure_attackers_row(a) & ~dead:
            return a
    return None


def propagate(fw: Framework, lab: Labelling) -> Labelling:
    """Repeatedly force must-in assumptions IN; returns the fixpoint."""
    while True:
        a = _find_must_in(fw, lab)
        if a is None:
            return lab
        lab = _apply_in(fw, lab, a)


def influential(fw: Framework, lab: Labelling,
                count_contrary_heads: bool = False) -> int:
    """Blank assumption occurring in the most rules, lowest id on ties.

    By default a rule counts for an assumption only when the assumption
    itself is its head or body; ``count_contrary_heads`` also counts rules
    headed by the assumption's contrary.
    """
    order = (fw.selection_order_with_contraries if count_contrary_heads
             else fw.selection_order)
    blank = lab.blank_mask
    for a in order:
        if blank >> a & 1:
            return a
    raise NoBlank("no blank assumption to select")
