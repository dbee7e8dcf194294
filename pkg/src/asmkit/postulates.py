"""Executable checkers for the four postulates over a bounded universe.

Quantifiers over "all states" range over the closure of the canonical states
under renamings into the universe.  The bounded-exploration checkers require
universe headroom of twice the largest nonlogical carrier plus the three
logical ids, so that fresh-element constructions are expressible; smaller
universes make the check inconclusive rather than wrong.

The coincidence and similarity quantifications over state pairs are computed
by grouping states on their witness-value vectors (respectively, on the
equality pattern of those vectors): a pairwise property that only depends on
the group data holds for all pairs exactly when the data is constant on each
group.  Witnesses are materialized from the first offending group in a fixed
lexicographic order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AsmError, HeadroomError, PreconditionError, VocabularyMismatchError
from .kernel import (
    LOGICAL_IDS,
    Renaming,
    State,
    Term,
    Vocabulary,
    apply_renaming,
    evaluate_term,
    is_subterm_closed,
    sorted_terms,
)
from .report import CheckReport
from .transition import (
    Algorithm,
    Update,
    apply_rule,
    apply_updates,
    canonical_delta,
    canonical_step,
    lift_update_set,
    step,
)


@dataclass
class Copy:
    """One state of the universe closure, remembered with its provenance."""

    canonical_index: int
    renaming: Renaming
    state: State


def required_headroom(algorithm: Algorithm) -> int:
    """Smallest universe size under which the BE checks are conclusive."""
    return 2 * algorithm.max_nonlogical_carrier() + 3


def universe_fits(algorithm: Algorithm, universe_size: int) -> None:
    """Every canonical carrier must live inside the universe."""
    for state in algorithm.canonical_states:
        worst = max(state.base, default=0)
        if worst >= universe_size:
            raise HeadroomError(
                f"universe of size {universe_size} does not contain carrier element {worst}"
            )


def _require_headroom(algorithm: Algorithm, universe_size: int) -> None:
    universe_fits(algorithm, universe_size)
    needed = required_headroom(algorithm)
    if universe_size < needed:
        raise HeadroomError(
            f"universe of size {universe_size} is inconclusive for this algorithm; "
            f"need at least {needed} for fresh-element constructions"
        )


def _require_ground_terms(vocabulary: Vocabulary, terms: Iterable[Term]) -> None:
    for t in terms:
        for sub in t.subterms():
            if sub.root not in vocabulary:
                raise VocabularyMismatchError(f"witness term {t} uses unknown symbol {sub.root}")


def renamings_into(base: frozenset[int], universe_size: int) -> Iterable[Renaming]:
    """All renamings of a carrier into the universe, in lexicographic order."""
    sources = tuple(sorted(e for e in base if e not in LOGICAL_IDS))
    targets = range(3, universe_size)
    for perm in itertools.permutations(targets, len(sources)):
        yield Renaming(dict(zip(sources, perm)))


def closure(algorithm: Algorithm, universe_size: int) -> list[Copy]:
    """The deduplicated closure of the canonical states under renamings."""
    universe_fits(algorithm, universe_size)
    seen: set[tuple] = set()
    copies: list[Copy] = []
    for index, canonical in enumerate(algorithm.canonical_states):
        for renaming in renamings_into(canonical.base, universe_size):
            state = apply_renaming(canonical, renaming)
            key = state.key()
            if key in seen:
                continue
            seen.add(key)
            copies.append(Copy(index, renaming, state))
    return copies


def check_sequential_time(algorithm: Algorithm) -> CheckReport:
    """Nonempty states, a nonempty initial subset, and a total one-step map."""
    label = "sequential-time"
    if not algorithm.canonical_states:
        return CheckReport(False, label, "empty state set", witness={"states": 0})
    if not any(algorithm.initial):
        return CheckReport(
            False, label, "no initial state", witness={"initial_flags": algorithm.initial}
        )
    for index, state in enumerate(algorithm.canonical_states):
        try:
            canonical_step(algorithm, index)
        except AsmError as exc:
            return CheckReport(
                False,
                label,
                f"one-step transformation undefined on canonical state {index}: {exc}",
                witness={"state": state, "error": str(exc)},
            )
    return CheckReport(
        True,
        label,
        notes=(
            f"states={len(algorithm.canonical_states)}",
            f"initial={sum(algorithm.initial)}",
        ),
    )


def check_abstract_state(algorithm: Algorithm, universe_size: int) -> CheckReport:
    """Base-set preservation plus naturality of the step under every renaming.

    Closure of the family under isomorphism holds by construction, because
    copies are generated on demand rather than stored; the report says so.
    """
    label = "abstract-state"
    universe_fits(algorithm, universe_size)
    successors: list[State] = []
    for index, state in enumerate(algorithm.canonical_states):
        successor = canonical_step(algorithm, index)
        if successor.base != state.base:
            return CheckReport(
                False,
                label,
                f"successor of canonical state {index} changes the base set",
                witness={"state": state, "successor": successor},
            )
        successors.append(successor)
    for index, state in enumerate(algorithm.canonical_states):
        for renaming in renamings_into(state.base, universe_size):
            copy = apply_renaming(state, renaming)
            expected = apply_renaming(successors[index], renaming)
            if algorithm.rule_based:
                actual = apply_updates(copy, apply_rule(copy, algorithm.program))
            else:
                actual = step(algorithm, copy)
            if actual != expected or actual.base != copy.base:
                return CheckReport(
                    False,
                    label,
                    f"step does not commute with a renaming of canonical state {index}",
                    witness={
                        "state": state,
                        "renaming": renaming,
                        "expected": expected,
                        "actual": actual,
                    },
                )
    return CheckReport(
        True,
        label,
        notes=("closure under isomorphism holds by construction (copies are generated)",),
    )


def _value_vectors(
    algorithm: Algorithm, order: Sequence[Term]
) -> list[tuple[int, ...]]:
    return [
        tuple(evaluate_term(state, t) for t in order)
        for state in algorithm.canonical_states
    ]


def _canonical_deltas(algorithm: Algorithm) -> list[frozenset[Update]]:
    return [canonical_delta(algorithm, i) for i in range(len(algorithm.canonical_states))]


def check_old_be(
    algorithm: Algorithm, terms: Iterable[Term], universe_size: int
) -> CheckReport:
    """Coincidence over the witness must force equal update sets.

    Assumes the abstract-state postulate: update sets on renamed copies are
    the transported canonical ones.
    """
    label = "old-be"
    terms = frozenset(terms)
    _require_ground_terms(algorithm.vocabulary, terms)
    _require_headroom(algorithm, universe_size)
    order = sorted_terms(terms)
    vectors = _value_vectors(algorithm, order)
    deltas = _canonical_deltas(algorithm)
    delta_encodings = [frozenset(u.encoded() for u in d) for d in deltas]

    groups: dict[tuple[int, ...], list[Copy]] = {}
    copies = closure(algorithm, universe_size)
    for copy in copies:
        r = copy.renaming
        vector = tuple(r[v] for v in vectors[copy.canonical_index])
        groups.setdefault(vector, []).append(copy)

    def lifted_encoding(copy: Copy) -> frozenset[tuple[str, tuple[int, ...], int]]:
        r = copy.renaming
        return frozenset(
            (name, tuple(r[a] for a in args), r[value])
            for name, args, value in delta_encodings[copy.canonical_index]
        )

    for vector in sorted(groups):
        members = sorted(groups[vector], key=lambda c: c.state.key())
        baseline = lifted_encoding(members[0])
        for other in members[1:]:
            if lifted_encoding(other) != baseline:
                left, right = members[0], other
                return CheckReport(
                    False,
                    label,
                    "states coincide over the witness but have different update sets",
                    witness={
                        "terms": terms,
                        "left": left.state,
                        "right": right.state,
                        "left_delta": lift_update_set(
                            left.renaming, deltas[left.canonical_index]
                        ),
                        "right_delta": lift_update_set(
                            right.renaming, deltas[right.canonical_index]
                        ),
                    },
                )
    return CheckReport(
        True,
        label,
        notes=(f"states={len(copies)}", f"coincidence-classes={len(groups)}"),
    )


def _pattern(vector: Sequence[int]) -> tuple[tuple[int, ...], dict[int, int]]:
    """First-occurrence encoding of a value vector and the value->index map."""
    first: dict[int, int] = {}
    sig = []
    for i, v in enumerate(vector):
        first.setdefault(v, i)
        sig.append(first[v])
    return tuple(sig), first


def _accessible_trace(
    delta: frozenset[Update], first: dict[int, int]
) -> frozenset[tuple[str, tuple[int, ...], int]]:
    """Accessible members of an update set, encoded by witness-term index class."""
    trace = set()
    for u in delta:
        if u.value in first and all(a in first for a in u.args):
            trace.add((u.symbol.name, tuple(first[a] for a in u.args), first[u.value]))
    return frozenset(trace)


def check_new_be(
    algorithm: Algorithm, terms: Iterable[Term], universe_size: int
) -> CheckReport:
    """Accessibility of all update sets plus similarity transport of membership.

    Requirement one is checked on canonical states only; accessibility of an
    update set is invariant under renaming.  Requirement two groups the
    closure by the equality pattern of witness values: two states are similar
    exactly when their patterns agree, and membership transport holds for a
    pair exactly when their accessible update sets have the same pattern
    encoding.
    """
    label = "new-be"
    terms = frozenset(terms)
    _require_ground_terms(algorithm.vocabulary, terms)
    if not is_subterm_closed(terms):
        raise PreconditionError("the witness for the new postulate must be subterm-closed")
    _require_headroom(algorithm, universe_size)
    order = sorted_terms(terms)
    vectors = _value_vectors(algorithm, order)
    deltas = _canonical_deltas(algorithm)

    requirement_i_passed = True
    witness_i: dict | None = None
    for index, state in enumerate(algorithm.canonical_states):
        accessible = frozenset(vectors[index])
        for u in sorted(deltas[index], key=lambda u: u.encoded()):
            if u.value not in accessible or any(a not in accessible for a in u.args):
                requirement_i_passed = False
                witness_i = {
                    "requirement": "i",
                    "state": state,
                    "update": u,
                    "accessible": accessible,
                    "terms": terms,
                }
                break
        if witness_i:
            break

    requirement_ii_passed = True
    witness_ii: dict | None = None
    groups: dict[tuple[int, ...], list[tuple[Copy, tuple[int, ...], frozenset]]] = {}
    for copy in closure(algorithm, universe_size):
        r = copy.renaming
        vector = tuple(r[v] for v in vectors[copy.canonical_index])
        sig, first = _pattern(vector)
        delta = lift_update_set(r, deltas[copy.canonical_index])
        trace = _accessible_trace(delta, first)
        groups.setdefault(sig, []).append((copy, vector, trace))
    for sig in sorted(groups):
        members = sorted(groups[sig], key=lambda item: item[0].state.key())
        base_copy, base_vector, base_trace = members[0]
        for copy, vector, trace in members[1:]:
            if trace == base_trace:
                continue
            requirement_ii_passed = False
            diff = sorted(trace.symmetric_difference(base_trace))
            name, arg_idx, value_idx = diff[0]
            symbol = algorithm.vocabulary.symbol(name)
            u_left = Update(
                symbol, tuple(base_vector[i] for i in arg_idx), base_vector[value_idx]
            )
            u_right = Update(
                symbol, tuple(vector[i] for i in arg_idx), vector[value_idx]
            )
            left_delta = lift_update_set(
                base_copy.renaming, deltas[base_copy.canonical_index]
            )
            right_delta = lift_update_set(copy.renaming, deltas[copy.canonical_index])
            witness_ii = {
                "requirement": "ii",
                "left": base_copy.state,
                "right": copy.state,
                "update": u_left,
                "lifted_update": u_right,
                "in_left": u_left in left_delta,
                "in_right": u_right in right_delta,
                "terms": terms,
            }
            break
        if witness_ii:
            break

    notes = (
        f"requirement-i={'pass' if requirement_i_passed else 'fail'}",
        f"requirement-ii={'pass' if requirement_ii_passed else 'fail'}",
        f"similarity-classes={len(groups)}",
    )
    if requirement_i_passed and requirement_ii_passed:
        return CheckReport(True, label, notes=notes)
    witness = witness_i if witness_i is not None else witness_ii
    witness["requirement_i_passed"] = requirement_i_passed
    witness["requirement_ii_passed"] = requirement_ii_passed
    failed = "i" if witness_i is not None else "ii"
    return CheckReport(
        False, label, f"requirement ({failed}) violated", witness=witness, notes=notes
    )


def witness_monotonicity(
    algorithm: Algorithm,
    small: Iterable[Term],
    large: Iterable[Term],
    universe_size: int,
) -> CheckReport:
    """A passing witness must keep passing after growing the term set.

    A failure here is an implementation-bug signal, not a property of the
    algorithm.
    """
    label = "witness-monotonicity"
    small = frozenset(small)
    large = frozenset(large)
    if not small <= large:
        raise PreconditionError("the first witness must be a subset of the second")
    if not (is_subterm_closed(small) and is_subterm_closed(large)):
        raise PreconditionError("both witnesses must be subterm-closed")
    notes = []
    for name, checker in (("old-be", check_old_be), ("new-be", check_new_be)):
        small_report = checker(algorithm, small, universe_size)
        if not small_report.passed:
            notes.append(f"{name}: vacuous (small witness fails)")
            continue
        large_report = checker(algorithm, large, universe_size)
        if not large_report.passed:
            return CheckReport(
                False,
                label,
                f"{name} passes on the small witness but fails on the superset",
                witness={
                    "postulate": name,
                    "small": small,
                    "large": large,
                    "large_report": large_report,
                },
            )
        notes.append(f"{name}: pass -> pass")
    return CheckReport(True, label, notes=tuple(notes))
