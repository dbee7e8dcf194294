"""Desk-scale verification that the two bounded-exploration checks agree.

Besides running both checkers and comparing verdicts, the verifier replays
the transport argument behind the agreement on a bounded, deterministic
sample of similar state pairs: route each accessible update through the
value-replacement construction (disjoint value sets) or through a disjoint
copy followed by the replacement (overlapping value sets), and confirm the
transported update's membership claim.  Pairs whose similarity function
moves a logical element cannot be expressed as renamings here, because the
three logical ids are global; those chains are confirmed by direct
membership transport and counted separately.

The module also hosts the seeded generators used by the property suites.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import AsmError, CaseHypothesisError, HeadroomError, InvalidRenamingError
from .kernel import (
    FALSE_TERM,
    LOGICAL_IDS,
    TRUE_TERM,
    UNDEF_TERM,
    AND_SYMBOL,
    EQ_SYMBOL,
    NOT_SYMBOL,
    OR_SYMBOL,
    Renaming,
    State,
    Symbol,
    Term,
    Vocabulary,
    apply_renaming,
    coincides_over,
    evaluate_set,
    identity_renaming,
    isomorphisms_between,
    sorted_terms,
    subterm_closure,
)
from .postulates import Copy, _pattern, _value_vectors, check_new_be, check_old_be, closure
from .report import CheckReport
from .similarity import (
    SimilarityFunction,
    lift_accessible_update,
    similarity_function,
    t_similar,
)
from .transition import (
    Algorithm,
    Assign,
    Cond,
    Par,
    Rule,
    Update,
    canonical_delta,
    lift_update,
    lift_update_set,
    rule_terms,
)


@dataclass(frozen=True)
class GeneratorConfig:
    """Bounds for the seeded algorithm and witness generators."""

    max_canonical_states: int = 3
    max_carrier_size: int = 4
    max_nonlogical_symbols: int = 3
    max_arity: int = 2
    max_term_depth: int = 2
    seed: int = 0
    instances: int = 100

    def __post_init__(self) -> None:
        for name in (
            "max_canonical_states",
            "max_carrier_size",
            "max_nonlogical_symbols",
            "max_term_depth",
            "instances",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_arity < 0:
            raise ValueError("max_arity must be non-negative")

    @property
    def universe_size(self) -> int:
        return 2 * self.max_carrier_size + 3


@dataclass
class SuiteInstance:
    index: int
    description: str
    algorithm: Algorithm
    witnesses: tuple[frozenset[Term], ...]


def flip_algorithm(extra_symbols: tuple[Symbol, ...] = ()) -> Algorithm:
    """Two-element dynamics that always moves a nullary constant to the other
    nonlogical element; its transformation is not expressible by ground terms."""
    vocabulary = Vocabulary((Symbol("f", 0),) + extra_symbols)
    carrier = {0, 1, 2, 3, 4}
    low = State(vocabulary, carrier, {"f": {(): 3}})
    high = State(vocabulary, carrier, {"f": {(): 4}})
    return Algorithm(vocabulary, (low, high), (True, True), successors=(high, low))


def construct_case1_state(
    x: State, y: State, terms: frozenset[Term]
) -> tuple[State, Renaming]:
    """Replace each witness value of ``x`` by the corresponding value of ``y``.

    Requires similar states with disjoint witness-value sets up to logical
    elements the similarity function fixes.  The returned renaming coincides
    with the similarity function on the witness values and is the identity on
    the rest of the carrier; the copy coincides with ``y`` over the witness.
    """
    sigma = similarity_function(x, y, terms)
    shared = sigma.domain & sigma.image
    nonlogical_shared = sorted(v for v in shared if v not in LOGICAL_IDS)
    if nonlogical_shared:
        raise CaseHypothesisError(
            f"witness value sets share nonlogical elements {nonlogical_shared}"
        )
    mapping = {e: e for e in x.base}
    for v, w in sigma.items():
        mapping[v] = w
    try:
        xi = Renaming(mapping)
    except InvalidRenamingError as exc:
        raise CaseHypothesisError(f"value replacement is not a renaming: {exc}") from exc
    replaced = apply_renaming(x, xi)
    if not coincides_over(replaced, y, terms):
        raise AsmError("internal: value-replacement copy fails to coincide")
    return replaced, xi


def construct_disjoint_copy(
    x: State, y: State, terms: frozenset[Term], universe_size: int
) -> tuple[State, Renaming]:
    """An isomorphic copy of ``x`` with no nonlogical witness value of ``y``.

    When the nonlogical carriers (hence the value sets) are already disjoint
    the identity is returned.  Otherwise the whole carrier moves to the least
    ids unused by either state; if the universe has no room for that, only
    the elements appearing among ``y``'s witness values move, which always
    fits inside the documented headroom of twice the carrier bound.
    """
    x_carrier = set(x.nonlogical_elements())
    y_carrier = set(y.nonlogical_elements())
    y_values = {v for v in evaluate_set(y, terms) if v not in LOGICAL_IDS}
    if x_carrier.isdisjoint(y_carrier) or x_carrier.isdisjoint(y_values):
        eta = identity_renaming(x.base)
        copy = x
    else:
        unused = [e for e in range(3, universe_size) if e not in x.base | y.base]
        if len(unused) >= len(x_carrier):
            eta = Renaming(dict(zip(sorted(x_carrier), unused)))
        else:
            moved = sorted(x_carrier & y_values)
            keep = x_carrier.difference(moved)
            allowed = [
                e
                for e in range(3, universe_size)
                if e not in y_values and e not in keep and e not in moved
            ]
            if len(allowed) < len(moved):
                raise HeadroomError(
                    f"universe of size {universe_size} has no room for a disjoint copy"
                )
            mapping = {e: e for e in keep}
            mapping.update(zip(moved, allowed))
            eta = Renaming(mapping)
        copy = apply_renaming(x, eta)
    overlap = evaluate_set(copy, terms) & evaluate_set(y, terms)
    if any(v not in LOGICAL_IDS for v in overlap):
        raise AsmError("internal: disjoint copy still shares nonlogical witness values")
    return copy, eta


def _logically_compatible(sigma: SimilarityFunction) -> bool:
    """The similarity function fixes every logical value it touches."""
    return all(
        v == w
        for v, w in sigma.items()
        if v in LOGICAL_IDS or w in LOGICAL_IDS
    )


@dataclass
class _Entry:
    copy: Copy
    vector: tuple[int, ...]
    delta: frozenset[Update]


def _transport_chain(
    x: _Entry,
    y: _Entry,
    terms: frozenset[Term],
    update: Update,
    sigma: SimilarityFunction,
    universe_size: int,
) -> tuple[bool, str, Update]:
    """Carry one accessible update of ``x`` over to ``y`` along the proof route."""
    expected = lift_accessible_update(sigma, update)
    if not _logically_compatible(sigma):
        return expected in y.delta, "direct", expected
    x_values = set(x.vector)
    y_values = set(y.vector)
    if x_values.isdisjoint(y_values):
        try:
            _, xi = construct_case1_state(x.copy.state, y.copy.state, terms)
            replaced_delta = lift_update_set(xi, x.delta)
            if replaced_delta != y.delta:
                raise AsmError(
                    "replayed chain broken: replacement copy and target disagree on updates"
                )
            moved = lift_update(xi, update)
            if moved != expected:
                raise AsmError(
                    "replayed chain broken: replacement transport differs from similarity lift"
                )
            return moved in y.delta, "case1", moved
        except CaseHypothesisError:
            pass  # replacement collides inside the carrier; sanitize via a disjoint copy
    detached, eta = construct_disjoint_copy(x.copy.state, y.copy.state, terms, universe_size)
    detached_delta = lift_update_set(eta, x.delta)
    moved = lift_update(eta, update)
    _, xi = construct_case1_state(detached, y.copy.state, terms)
    final_delta = lift_update_set(xi, detached_delta)
    if final_delta != y.delta:
        raise AsmError(
            "replayed chain broken: composed copy and target disagree on updates"
        )
    final = lift_update(xi, moved)
    if final != expected:
        raise AsmError(
            "replayed chain broken: composed transport differs from similarity lift"
        )
    return final in y.delta, "case2", final


def _sample_pairs(members: list[_Entry], limit: int) -> list[tuple[_Entry, _Entry]]:
    pairs: list[tuple[_Entry, _Entry]] = []
    seen: set[tuple] = set()

    def push(a: _Entry, b: _Entry) -> None:
        if a is b or len(pairs) >= limit:
            return
        key = (a.copy.state.key(), b.copy.state.key())
        if key in seen:
            return
        seen.add(key)
        pairs.append((a, b))

    head = members[0]
    for other in members[1:]:
        push(head, other)
    representatives: dict[int, _Entry] = {}
    for m in members:
        representatives.setdefault(m.copy.canonical_index, m)
    reps = sorted(representatives.values(), key=lambda e: e.copy.state.key())
    for a, b in itertools.combinations(reps, 2):
        push(a, b)
    if len(members) > 2:
        push(members[0], members[-1])
    return pairs


def verify_equivalence(
    algorithm: Algorithm,
    terms: frozenset[Term],
    universe_size: int,
    *,
    replay_pair_limit: int = 24,
    replay_update_limit: int = 8,
) -> CheckReport:
    """Both bounded-exploration verdicts must agree; on a double pass the
    transport argument is additionally replayed on sampled similar pairs."""
    label = "equivalence"
    terms = frozenset(terms)
    old = check_old_be(algorithm, terms, universe_size)
    new = check_new_be(algorithm, terms, universe_size)
    notes = [f"old-be={old.verdict}", f"new-be={new.verdict}"]
    if old.passed != new.passed:
        return CheckReport(
            False,
            label,
            "bounded-exploration verdicts disagree",
            witness={"old": old, "new": new, "terms": terms},
            notes=tuple(notes),
        )
    if old.passed and new.passed:
        replay = _replay_proof(
            algorithm, terms, universe_size, replay_pair_limit, replay_update_limit
        )
        if isinstance(replay, CheckReport):
            return replay
        notes.extend(replay)
    return CheckReport(True, label, notes=tuple(notes))


def _replay_proof(
    algorithm: Algorithm,
    terms: frozenset[Term],
    universe_size: int,
    pair_limit: int,
    update_limit: int,
) -> list[str] | CheckReport:
    order = sorted_terms(terms)
    vectors = _value_vectors(algorithm, order)
    deltas = [canonical_delta(algorithm, i) for i in range(len(algorithm.canonical_states))]
    groups: dict[tuple[int, ...], list[_Entry]] = {}
    for copy in closure(algorithm, universe_size):
        vector = tuple(copy.renaming[v] for v in vectors[copy.canonical_index])
        sig, _ = _pattern(vector)
        delta = lift_update_set(copy.renaming, deltas[copy.canonical_index])
        groups.setdefault(sig, []).append(_Entry(copy, vector, delta))

    counts = {"case1": 0, "case2": 0, "direct": 0, "coincident-pairs": 0}
    for sig in sorted(groups):
        members = sorted(groups[sig], key=lambda e: e.copy.state.key())
        for left, right in _sample_pairs(members, pair_limit):
            sigma = similarity_function(left.copy.state, right.copy.state, terms)
            if left.vector == right.vector:
                counts["coincident-pairs"] += 1
                if not sigma.is_identity:
                    return CheckReport(
                        False,
                        "equivalence",
                        "similarity of a coinciding pair is not the identity",
                        witness={"left": left.copy.state, "right": right.copy.state},
                    )
                if left.delta != right.delta:
                    return CheckReport(
                        False,
                        "equivalence",
                        "coinciding pair with different update sets survived the checker",
                        witness={"left": left.copy.state, "right": right.copy.state},
                    )
            accessible = set(left.vector)
            carried = [
                u
                for u in sorted(left.delta, key=lambda u: u.encoded())
                if u.value in accessible and all(a in accessible for a in u.args)
            ]
            for u in carried[:update_limit]:
                ok, route, final = _transport_chain(
                    left, right, terms, u, sigma, universe_size
                )
                if not ok:
                    return CheckReport(
                        False,
                        "equivalence",
                        "replayed transport contradicts the passing verdicts",
                        witness={
                            "left": left.copy.state,
                            "right": right.copy.state,
                            "update": u,
                            "transported": final,
                            "route": route,
                            "terms": terms,
                        },
                    )
                counts[route] += 1
    stats = [f"replayed-chains={counts['case1'] + counts['case2'] + counts['direct']}"]
    stats.extend(f"{k}={v}" for k, v in counts.items())
    return stats


# ---------------------------------------------------------------------------
# Seeded generators


_SYMBOL_POOL = ("f", "g", "h", "k", "m")


def _rng(seed: int, tag: str) -> random.Random:
    return random.Random(f"{seed}:{tag}")


def _random_vocabulary(rng: random.Random, cfg: GeneratorConfig) -> Vocabulary:
    count = rng.randint(1, cfg.max_nonlogical_symbols)
    arity_pool = list(range(cfg.max_arity + 1)) + [0]
    symbols = [
        Symbol(_SYMBOL_POOL[i], rng.choice(arity_pool)) for i in range(count)
    ]
    return Vocabulary(symbols)


def _carrier_size(rng: random.Random, cfg: GeneratorConfig) -> int:
    pool = [c for c in (1, 1, 2, 2, 2, 2, 3, 3, 3, 4) if c <= cfg.max_carrier_size]
    return rng.choice(pool)


def _random_state_over(
    rng: random.Random, vocabulary: Vocabulary, base: frozenset[int]
) -> State:
    elements = sorted(base)
    tables: dict[str, dict[tuple[int, ...], int]] = {}
    for sym in vocabulary.nonlogical:
        entries: dict[tuple[int, ...], int] = {}
        budget = rng.randint(0, 1 if sym.arity == 0 else 2)
        for _ in range(budget):
            args = tuple(rng.choice(elements) for _ in range(sym.arity))
            entries[args] = rng.choice(elements)
        if entries:
            tables[sym.name] = entries
    return State(vocabulary, base, tables)


def _random_state(rng: random.Random, vocabulary: Vocabulary, carrier: int) -> State:
    base = frozenset(range(3, 3 + carrier)) | frozenset(LOGICAL_IDS)
    return _random_state_over(rng, vocabulary, base)


def _random_term(rng: random.Random, vocabulary: Vocabulary, max_depth: int) -> Term:
    leaves = [Term(s) for s in vocabulary.nonlogical if s.arity == 0]
    leaves += [TRUE_TERM, FALSE_TERM, UNDEF_TERM]
    composites = [s for s in vocabulary.nonlogical if s.arity >= 1]
    composites += [EQ_SYMBOL, NOT_SYMBOL, AND_SYMBOL, OR_SYMBOL]

    def build(depth: int) -> Term:
        if depth <= 0 or rng.random() < 0.4:
            return rng.choice(leaves)
        sym = rng.choice(composites)
        return Term(sym, tuple(build(depth - 1) for _ in range(sym.arity)))

    return build(max_depth)


def _random_rule(rng: random.Random, vocabulary: Vocabulary, cfg: GeneratorConfig) -> Rule:
    # Distinct target symbols per parallel member keep the rule clash-free on
    # every state; guards are equality-rooted so they are always Boolean.
    nonlogical = list(vocabulary.nonlogical)
    count = rng.randint(1, min(3, len(nonlogical)))
    targets = rng.sample(nonlogical, count)
    members: list[Rule] = []
    for sym in targets:
        def assignment() -> Assign:
            args = tuple(
                _random_term(rng, vocabulary, cfg.max_term_depth - 1)
                for _ in range(sym.arity)
            )
            value = _random_term(rng, vocabulary, cfg.max_term_depth)
            return Assign(sym, args, value)

        member: Rule = assignment()
        if rng.random() < 0.35:
            guard = Term(
                EQ_SYMBOL,
                (
                    _random_term(rng, vocabulary, cfg.max_term_depth - 1),
                    _random_term(rng, vocabulary, cfg.max_term_depth - 1),
                ),
            )
            member = Cond(guard, member, assignment())
        members.append(member)
    return members[0] if len(members) == 1 else Par(tuple(members))


def _initial_flags(rng: random.Random, count: int) -> tuple[bool, ...]:
    flags = [rng.random() < 0.8 for _ in range(count)]
    if not any(flags):
        flags[0] = True
    return tuple(flags)


def _coherent(states: list[State], successors: list[State]) -> bool:
    for i in range(len(states)):
        for j in range(i, len(states)):
            for rho in isomorphisms_between(states[i], states[j]):
                if apply_renaming(successors[i], rho) != successors[j]:
                    return False
    return True


def _random_rule_algorithm(
    rng: random.Random, cfg: GeneratorConfig
) -> Algorithm:
    vocabulary = _random_vocabulary(rng, cfg)
    count = rng.randint(1, cfg.max_canonical_states)
    states = [_random_state(rng, vocabulary, _carrier_size(rng, cfg)) for _ in range(count)]
    return Algorithm(
        vocabulary,
        states,
        _initial_flags(rng, count),
        program=_random_rule(rng, vocabulary, cfg),
    )


def _random_explicit_algorithm(
    rng: random.Random, cfg: GeneratorConfig, identity_only: bool = False
) -> Algorithm:
    vocabulary = _random_vocabulary(rng, cfg)
    count = rng.randint(1, cfg.max_canonical_states)
    states = [_random_state(rng, vocabulary, _carrier_size(rng, cfg)) for _ in range(count)]
    flags = _initial_flags(rng, count)
    if identity_only:
        return Algorithm(vocabulary, states, flags, successors=tuple(states))
    for _ in range(30):
        successors = [
            s if rng.random() < 0.25 else _random_state_over(rng, vocabulary, s.base)
            for s in states
        ]
        if _coherent(states, successors):
            return Algorithm(vocabulary, states, flags, successors=tuple(successors))
    return Algorithm(vocabulary, states, flags, successors=tuple(states))


def ground_terms_up_to(
    vocabulary: Vocabulary, max_depth: int, cap: int = 64
) -> list[Term]:
    """Ground terms over the nonlogical symbols with logical-constant leaves.

    Connective-rooted terms are excluded to keep the set small; the result is
    truncated to ``cap`` terms by (depth, text) order, which preserves
    subterm closure.
    """
    terms: set[Term] = {Term(s) for s in vocabulary.nonlogical if s.arity == 0}
    terms |= {TRUE_TERM, FALSE_TERM, UNDEF_TERM}
    builders = [s for s in vocabulary.nonlogical if s.arity >= 1]
    for _ in range(max_depth):
        snapshot = sorted(terms, key=str)
        fresh: set[Term] = set()
        for sym in builders:
            for combo in itertools.product(snapshot, repeat=sym.arity):
                t = Term(sym, combo)
                if t not in terms:
                    fresh.add(t)
        if not fresh:
            break
        terms |= fresh
        if len(terms) > cap * 4:
            break
    ordered = sorted(terms, key=lambda t: (t.depth, str(t)))
    return sorted_terms(ordered[:cap])


LOGICAL_CONSTANT_TERMS = frozenset({TRUE_TERM, FALSE_TERM, UNDEF_TERM})


def _candidate_witnesses(
    algorithm: Algorithm, cfg: GeneratorConfig, rng: random.Random
) -> tuple[frozenset[Term], ...]:
    # Every candidate carries the logical constant terms: without them the
    # coincidence-based and accessibility-based checks can genuinely diverge
    # (an update writing a logical element is invisible to coincidence but
    # fails accessibility), so the per-witness agreement the suite asserts
    # only holds above this floor.
    full = ground_terms_up_to(algorithm.vocabulary, cfg.max_term_depth)
    candidates: list[frozenset[Term]] = [LOGICAL_CONSTANT_TERMS, frozenset(full)]
    if algorithm.rule_based:
        candidates.append(
            subterm_closure(rule_terms(algorithm.program)) | LOGICAL_CONSTANT_TERMS
        )
    for _ in range(2):
        k = rng.randint(1, max(1, len(full) // 3))
        sample = subterm_closure(rng.sample(full, k=min(k, len(full))))
        candidates.append(sample | LOGICAL_CONSTANT_TERMS)
    unique: list[frozenset[Term]] = []
    for c in candidates:
        if c not in unique:
            unique.append(c)
    return tuple(unique)


def generate_algorithm_suite(cfg: GeneratorConfig) -> list[SuiteInstance]:
    """Deterministic stream of rule-based and explicit algorithms with witnesses."""
    instances: list[SuiteInstance] = []
    kinds = ["rule", "rule", "rule", "explicit", "explicit", "identity", "flip"]
    for index in range(cfg.instances):
        rng = _rng(cfg.seed, f"suite:{index}")
        if index == 0 and cfg.max_carrier_size >= 2:
            description = "flip"
            algorithm = flip_algorithm()
        else:
            description = rng.choice(kinds)
            if description == "flip" and cfg.max_carrier_size >= 2:
                extras = tuple(
                    Symbol(_SYMBOL_POOL[i + 1], 0)
                    for i in range(rng.randint(0, min(1, cfg.max_nonlogical_symbols - 1)))
                )
                algorithm = flip_algorithm(extras)
            elif description == "rule":
                algorithm = _random_rule_algorithm(rng, cfg)
            elif description == "identity":
                algorithm = _random_explicit_algorithm(rng, cfg, identity_only=True)
            else:
                description = "explicit"
                algorithm = _random_explicit_algorithm(rng, cfg)
        witnesses = _candidate_witnesses(algorithm, cfg, rng)
        instances.append(SuiteInstance(index, description, algorithm, witnesses))
    return instances


def _random_renaming(
    rng: random.Random, base: frozenset[int], universe_size: int
) -> Renaming:
    sources = sorted(e for e in base if e not in LOGICAL_IDS)
    targets = rng.sample(range(3, universe_size), k=len(sources))
    return Renaming(dict(zip(sources, targets)))


def generate_similar_pairs(cfg: GeneratorConfig, count: int):
    """Seeded stream of (state, state, closed witness) triples that are similar.

    Odd draws are renamed copies (similar over any witness); even draws are
    rejection-sampled independent states, falling back to a copy when no
    similar partner shows up.
    """
    attempt = 0
    produced = 0
    while produced < count:
        rng = _rng(cfg.seed, f"pair:{attempt}")
        attempt += 1
        vocabulary = _random_vocabulary(rng, cfg)
        carrier = _carrier_size(rng, cfg)
        x = _random_state(rng, vocabulary, carrier)
        terms = subterm_closure(
            _random_term(rng, vocabulary, cfg.max_term_depth)
            for _ in range(rng.randint(1, 4))
        )
        y: State | None = None
        if attempt % 2 == 0:
            for _ in range(40):
                candidate = _random_state(rng, vocabulary, carrier)
                if t_similar(x, candidate, terms):
                    y = candidate
                    break
        if y is None:
            y = apply_renaming(x, _random_renaming(rng, x.base, cfg.universe_size))
        produced += 1
        yield x, y, terms


def generate_monotonicity_cases(cfg: GeneratorConfig, count: int):
    """Rule-based algorithms with the rule-term closure as a passing witness,
    paired with a strictly larger closed witness."""
    for index in range(count):
        rng = _rng(cfg.seed, f"mono:{index}")
        algorithm = _random_rule_algorithm(rng, cfg)
        small = subterm_closure(rule_terms(algorithm.program)) | LOGICAL_CONSTANT_TERMS
        extras = [
            _random_term(rng, algorithm.vocabulary, cfg.max_term_depth)
            for _ in range(rng.randint(1, 3))
        ]
        large = small | subterm_closure(extras)
        yield algorithm, small, large


def run_suite(cfg: GeneratorConfig, emit=None) -> CheckReport:
    """Verify equivalence across the whole generated suite.

    Emits one log line per (instance, witness) check: seed, instance id,
    witness id, both verdicts, and the agreement flag.
    """
    emit = emit or (lambda line: None)
    instances = generate_algorithm_suite(cfg)
    agreed = 0
    first_failure: CheckReport | None = None
    for instance in instances:
        instance_ok = True
        for w_index, terms in enumerate(instance.witnesses):
            report = verify_equivalence(instance.algorithm, terms, cfg.universe_size)
            verdicts = dict(
                note.split("=", 1) for note in report.notes if "=" in note
            )
            emit(
                f"seed={cfg.seed} instance={instance.index} witness=w{w_index} "
                f"old={verdicts.get('old-be', '?')} new={verdicts.get('new-be', '?')} "
                f"agree={str(report.passed).lower()}"
            )
            if not report.passed:
                instance_ok = False
                if first_failure is None:
                    first_failure = report
        if instance_ok:
            agreed += 1
    total = len(instances)
    passed = agreed == total
    return CheckReport(
        passed,
        "equivalence-suite",
        f"{agreed}/{total} instances agree",
        witness=None if passed else (first_failure.witness if first_failure else {}),
        notes=(f"instances={total}",),
    )
