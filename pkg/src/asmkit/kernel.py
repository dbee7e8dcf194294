"""Finite first-order structures: vocabularies, ground terms, states, renamings.

Element ids are small non-negative integers drawn from a bounded universe.
Ids 0, 1 and 2 are reserved in every state for the three logical elements
interpreting true, false and undef; every carrier contains them.

Nonlogical interpretations are sparse tables with default value undef, and
tables never store an undef-valued entry.  That normalization makes state
equality canonical: two states are equal exactly when they have the same
vocabulary, the same carrier and the same tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    DomainError,
    InvalidRenamingError,
    ValidationError,
    VocabularyMismatchError,
)

TRUE, FALSE, UNDEF = 0, 1, 2
LOGICAL_IDS = (TRUE, FALSE, UNDEF)
LOGICAL_LABELS = {TRUE: "TRUE", FALSE: "FALSE", UNDEF: "UNDEF"}

KIND_LOGICAL = "logical"
KIND_NONLOGICAL = "nonlogical"

DEFAULT_MAX_ARITY = 3


def _is_identifier(name: str) -> bool:
    return bool(name) and (name[0].isalpha() or name[0] == "_") and all(
        ch.isalnum() or ch == "_" for ch in name
    )


@dataclass(frozen=True, order=True)
class Symbol:
    """An arity-tagged function symbol; relations are Boolean-valued functions."""

    name: str
    arity: int
    kind: str = KIND_NONLOGICAL

    def __post_init__(self) -> None:
        if not _is_identifier(self.name):
            raise ValidationError(f"bad symbol name {self.name!r}")
        if self.arity < 0:
            raise ValidationError(f"negative arity for symbol {self.name}")
        if self.kind not in (KIND_LOGICAL, KIND_NONLOGICAL):
            raise ValidationError(f"bad symbol kind {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


TRUE_SYMBOL = Symbol("true", 0, KIND_LOGICAL)
FALSE_SYMBOL = Symbol("false", 0, KIND_LOGICAL)
UNDEF_SYMBOL = Symbol("undef", 0, KIND_LOGICAL)
EQ_SYMBOL = Symbol("eq", 2, KIND_LOGICAL)
NOT_SYMBOL = Symbol("not", 1, KIND_LOGICAL)
AND_SYMBOL = Symbol("and", 2, KIND_LOGICAL)
OR_SYMBOL = Symbol("or", 2, KIND_LOGICAL)

LOGICAL_SYMBOLS = (
    TRUE_SYMBOL,
    FALSE_SYMBOL,
    UNDEF_SYMBOL,
    EQ_SYMBOL,
    NOT_SYMBOL,
    AND_SYMBOL,
    OR_SYMBOL,
)


class Vocabulary:
    """A finite set of function symbols; the logical symbols are always present."""

    __slots__ = ("_by_name", "_symbols", "_max_arity")

    def __init__(self, nonlogical: Iterable[Symbol] = (), max_arity: int = DEFAULT_MAX_ARITY) -> None:
        by_name = {sym.name: sym for sym in LOGICAL_SYMBOLS}
        for sym in nonlogical:
            if sym.kind != KIND_NONLOGICAL:
                raise ValidationError(f"symbol {sym.name} must be declared nonlogical")
            if sym.arity > max_arity:
                raise ValidationError(
                    f"arity {sym.arity} of {sym.name} exceeds the limit {max_arity}"
                )
            if sym.name in by_name:
                raise ValidationError(f"duplicate or reserved symbol name {sym.name!r}")
            by_name[sym.name] = sym
        self._by_name = by_name
        self._symbols = frozenset(by_name.values())
        self._max_arity = max_arity

    @property
    def symbols(self) -> frozenset[Symbol]:
        return self._symbols

    @property
    def max_arity(self) -> int:
        return self._max_arity

    @property
    def nonlogical(self) -> tuple[Symbol, ...]:
        return tuple(sorted(s for s in self._symbols if s.kind == KIND_NONLOGICAL))

    def symbol(self, name: str) -> Symbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise VocabularyMismatchError(f"unknown symbol {name!r}") from None

    def get(self, name: str) -> Symbol | None:
        return self._by_name.get(name)

    def __contains__(self, sym: Symbol) -> bool:
        return self._by_name.get(sym.name) == sym

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vocabulary) and self._symbols == other._symbols

    def __hash__(self) -> int:
        return hash(self._symbols)

    def __repr__(self) -> str:
        names = ", ".join(str(s) for s in self.nonlogical)
        return f"Vocabulary({names})"


@dataclass(frozen=True)
class Term:
    """A ground term; the toolkit has no variables."""

    root: Symbol
    children: tuple["Term", ...] = ()

    def __post_init__(self) -> None:
        if len(self.children) != self.root.arity:
            raise ValidationError(
                f"symbol {self.root.name}/{self.root.arity} applied to "
                f"{len(self.children)} arguments"
            )

    def subterms(self) -> Iterator["Term"]:
        yield self
        for child in self.children:
            yield from child.subterms()

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0) if self.children else 0

    def __str__(self) -> str:
        if not self.children:
            return self.root.name
        return f"{self.root.name}({', '.join(str(c) for c in self.children)})"


TRUE_TERM = Term(TRUE_SYMBOL)
FALSE_TERM = Term(FALSE_SYMBOL)
UNDEF_TERM = Term(UNDEF_SYMBOL)


def subterm_closure(terms: Iterable[Term]) -> frozenset[Term]:
    """Least superset closed under subterms; idempotent and extensive."""
    closed: set[Term] = set()
    for t in terms:
        closed.update(t.subterms())
    return frozenset(closed)


def is_subterm_closed(terms: Iterable[Term]) -> bool:
    terms = frozenset(terms)
    return all(s in terms for t in terms for s in t.subterms())


def sorted_terms(terms: Iterable[Term]) -> list[Term]:
    """Deterministic term order: lexicographic on the rendered form."""
    return sorted(terms, key=str)


class State:
    """A finite first-order structure over a fixed vocabulary.

    ``tables`` maps nonlogical symbol names to sparse interpretation tables
    from argument tuples to values; absent tuples take the value undef.
    """

    __slots__ = ("vocabulary", "base", "_tables", "_nonlogical", "_key", "_hash")

    def __init__(
        self,
        vocabulary: Vocabulary,
        base: Iterable[int],
        tables: Mapping[str, Mapping[tuple[int, ...], int]] | None = None,
    ) -> None:
        carrier = frozenset(base) | frozenset(LOGICAL_IDS)
        for e in carrier:
            if not isinstance(e, int) or e < 0:
                raise ValidationError(f"bad element id {e!r}")
        normalized: dict[str, dict[tuple[int, ...], int]] = {}
        for name, table in (tables or {}).items():
            sym = vocabulary.get(name)
            if sym is None:
                raise VocabularyMismatchError(f"table for unknown symbol {name!r}")
            if sym.kind == KIND_LOGICAL:
                raise ValidationError(f"logical symbol {name} has a fixed interpretation")
            entries: dict[tuple[int, ...], int] = {}
            for args, value in table.items():
                args = tuple(args)
                if len(args) != sym.arity:
                    raise ValidationError(
                        f"{name}/{sym.arity} table entry with {len(args)} arguments"
                    )
                if any(a not in carrier for a in args) or value not in carrier:
                    raise ValidationError(
                        f"table entry {name}{args} = {value} leaves the carrier"
                    )
                if value != UNDEF:
                    entries[args] = value
            if entries:
                normalized[name] = entries
        self.vocabulary = vocabulary
        self.base = carrier
        self._tables = normalized
        self._nonlogical = tuple(sorted(carrier - frozenset(LOGICAL_IDS)))
        self._key = (
            tuple(sorted(carrier)),
            tuple(
                (name, tuple(sorted(normalized[name].items())))
                for name in sorted(normalized)
            ),
        )
        self._hash = hash(self._key)

    @property
    def interpretations(self) -> dict[str, dict[tuple[int, ...], int]]:
        """Normalized tables; treat as read-only."""
        return self._tables

    def value(self, name: str, args: tuple[int, ...]) -> int:
        table = self._tables.get(name)
        if table is None:
            return UNDEF
        return table.get(args, UNDEF)

    def nonlogical_elements(self) -> tuple[int, ...]:
        return self._nonlogical

    def key(self) -> tuple:
        """Canonical, sortable encoding used for deterministic enumeration."""
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self._key == other._key and self.vocabulary == other.vocabulary

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        tables = "; ".join(
            f"{name}={{{', '.join(f'{args}->{v}' for args, v in sorted(t.items()))}}}"
            for name, t in sorted(self._tables.items())
        )
        return f"State(base={sorted(self.base)}, {tables or 'all default'})"


def _boolean(x: int) -> bool:
    return x == TRUE or x == FALSE


def interpret(state: State, symbol: Symbol, args: tuple[int, ...]) -> int:
    """Apply one symbol's interpretation in ``state`` to already-evaluated args.

    Logical symbols have fixed built-in interpretations: equality compares
    element ids, the connectives act classically on the two Boolean elements
    and yield undef on any non-Boolean operand.
    """
    if symbol.kind == KIND_NONLOGICAL:
        return state.value(symbol.name, args)
    name = symbol.name
    if name == "true":
        return TRUE
    if name == "false":
        return FALSE
    if name == "undef":
        return UNDEF
    if name == "eq":
        return TRUE if args[0] == args[1] else FALSE
    if name == "not":
        a = args[0]
        if not _boolean(a):
            return UNDEF
        return FALSE if a == TRUE else TRUE
    a, b = args
    if not (_boolean(a) and _boolean(b)):
        return UNDEF
    if name == "and":
        return TRUE if a == TRUE and b == TRUE else FALSE
    if name == "or":
        return TRUE if a == TRUE or b == TRUE else FALSE
    raise VocabularyMismatchError(f"unknown logical symbol {name!r}")


def evaluate_term(state: State, term: Term) -> int:
    """Bottom-up evaluation of a ground term in a state."""
    if term.root not in state.vocabulary:
        raise VocabularyMismatchError(
            f"term symbol {term.root} is not in the state's vocabulary"
        )
    args = tuple(evaluate_term(state, child) for child in term.children)
    return interpret(state, term.root, args)


def evaluate_set(state: State, terms: Iterable[Term]) -> frozenset[int]:
    """The image of a term set under evaluation."""
    return frozenset(evaluate_term(state, t) for t in terms)


def _require_same_vocabulary(x: State, y: State) -> None:
    if x.vocabulary != y.vocabulary:
        raise VocabularyMismatchError("states have different vocabularies")


def coincides_over(x: State, y: State, terms: Iterable[Term]) -> bool:
    """True iff every term of the set has the same value in both states."""
    _require_same_vocabulary(x, y)
    return all(evaluate_term(x, t) == evaluate_term(y, t) for t in terms)


class Renaming:
    """An injective finite element map fixing the three logical elements."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Mapping[int, int]) -> None:
        m = dict(mapping)
        for lid in LOGICAL_IDS:
            if m.setdefault(lid, lid) != lid:
                raise InvalidRenamingError(f"renaming moves logical element {lid}")
        for src, dst in m.items():
            if src < 0 or dst < 0:
                raise InvalidRenamingError(f"bad renaming pair {src}->{dst}")
            if dst in LOGICAL_IDS and src != dst:
                raise InvalidRenamingError(
                    f"renaming maps nonlogical {src} onto logical element {dst}"
                )
        if len(set(m.values())) != len(m):
            raise InvalidRenamingError("renaming is not injective")
        self._map = m

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self._map)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self._map.values())

    def __getitem__(self, element: int) -> int:
        try:
            return self._map[element]
        except KeyError:
            raise DomainError(f"element {element} outside renaming domain") from None

    def get(self, element: int, default: int | None = None) -> int | None:
        return self._map.get(element, default)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._map.items()))

    def inverse(self) -> "Renaming":
        return Renaming({v: k for k, v in self._map.items()})

    @property
    def is_identity(self) -> bool:
        return all(k == v for k, v in self._map.items())

    def moved_pairs(self) -> list[tuple[int, int]]:
        return [(k, v) for k, v in sorted(self._map.items()) if k != v]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Renaming) and self._map == other._map

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._map.items())))

    def __repr__(self) -> str:
        moved = ", ".join(f"{k}->{v}" for k, v in self.moved_pairs())
        return f"Renaming({moved or 'identity'})"


def identity_renaming(elements: Iterable[int]) -> Renaming:
    return Renaming({e: e for e in elements})


def apply_renaming(state: State, renaming: Renaming) -> State:
    """The isomorphic copy of ``state`` along ``renaming``."""
    missing = [e for e in state.base if e not in renaming.domain]
    if missing:
        raise InvalidRenamingError(
            f"renaming does not cover carrier elements {sorted(missing)}"
        )
    base = [renaming[e] for e in state.base]
    tables = {
        name: {
            tuple(renaming[a] for a in args): renaming[v]
            for args, v in table.items()
        }
        for name, table in state.interpretations.items()
    }
    return State(state.vocabulary, base, tables)


def isomorphisms_between(x: State, y: State) -> Iterator[Renaming]:
    """All renamings carrying ``x`` onto ``y``, in a fixed deterministic order."""
    if x.vocabulary != y.vocabulary or len(x.base) != len(y.base):
        return
    xt, yt = x.interpretations, y.interpretations
    if set(xt) != set(yt) or any(len(xt[n]) != len(yt[n]) for n in xt):
        return
    sources = x.nonlogical_elements()
    targets = y.nonlogical_elements()
    for perm in itertools.permutations(targets, len(sources)):
        m = dict(zip(sources, perm))
        m.update({lid: lid for lid in LOGICAL_IDS})
        ok = True
        for name, table in xt.items():
            other = yt[name]
            for args, v in table.items():
                if other.get(tuple(m[a] for a in args)) != m[v]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield Renaming(m)


def automorphisms(state: State) -> Iterator[Renaming]:
    return isomorphisms_between(state, state)
