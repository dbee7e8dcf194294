import random

import pytest

from asmkit import (
    FALSE,
    FALSE_TERM,
    TRUE,
    TRUE_TERM,
    UNDEF,
    UNDEF_TERM,
    InvalidRenamingError,
    Renaming,
    State,
    Symbol,
    Term,
    ValidationError,
    VocabularyMismatchError,
    apply_renaming,
    coincides_over,
    evaluate_set,
    evaluate_term,
    identity_renaming,
    is_subterm_closed,
    isomorphisms_between,
    subterm_closure,
)
from conftest import mk, random_state, random_term


class TestSubtermClosure:
    def test_single_application(self, simple_vocab):
        a = Term(simple_vocab.symbol("a"))
        fa = mk(simple_vocab.symbol("f"), a)
        assert subterm_closure({fa}) == {fa, a}

    def test_empty(self):
        assert subterm_closure(()) == frozenset()

    def test_equality_term(self, simple_vocab):
        a = Term(simple_vocab.symbol("a"))
        b = Term(simple_vocab.symbol("b"))
        eq_ab = mk(simple_vocab.symbol("eq"), a, b)
        assert subterm_closure({eq_ab, a}) == {eq_ab, a, b}

    def test_idempotent_extensive_monotone(self, simple_vocab):
        rng = random.Random(7)
        for _ in range(25):
            terms = frozenset(random_term(rng, simple_vocab, 3) for _ in range(4))
            closed = subterm_closure(terms)
            assert terms <= closed
            assert subterm_closure(closed) == closed
            assert is_subterm_closed(closed)
            smaller = frozenset(list(terms)[:2])
            assert subterm_closure(smaller) <= closed

    def test_is_subterm_closed_detects_holes(self, simple_vocab):
        a = Term(simple_vocab.symbol("a"))
        fa = mk(simple_vocab.symbol("f"), a)
        assert not is_subterm_closed({fa})
        assert is_subterm_closed({fa, a})


class TestEvaluation:
    def test_remark_constant(self, remark):
        x, _, _, labels = remark
        a = Term(x.vocabulary.symbol("a"))
        assert labels[evaluate_term(x, a)] == "1"

    def test_logical_constants(self, remark):
        x, _, _, _ = remark
        assert evaluate_term(x, TRUE_TERM) == TRUE
        assert evaluate_term(x, FALSE_TERM) == FALSE
        assert evaluate_term(x, UNDEF_TERM) == UNDEF

    def test_remark_chained_application(self, remark):
        x, _, _, labels = remark
        f = x.vocabulary.symbol("f")
        a = Term(x.vocabulary.symbol("a"))
        ffa = mk(f, mk(f, a))
        assert labels[evaluate_term(x, ffa)] == "3"

    def test_equality_semantics(self, remark):
        x, _, _, _ = remark
        eq = x.vocabulary.symbol("eq")
        a = Term(x.vocabulary.symbol("a"))
        b = Term(x.vocabulary.symbol("b"))
        assert evaluate_term(x, mk(eq, a, a)) == TRUE
        assert evaluate_term(x, mk(eq, a, b)) == FALSE

    def test_connectives_classical_and_undef(self, remark):
        x, _, _, _ = remark
        v = x.vocabulary
        t, f, u = TRUE_TERM, FALSE_TERM, UNDEF_TERM
        assert evaluate_term(x, mk(v.symbol("not"), t)) == FALSE
        assert evaluate_term(x, mk(v.symbol("not"), f)) == TRUE
        assert evaluate_term(x, mk(v.symbol("not"), u)) == UNDEF
        assert evaluate_term(x, mk(v.symbol("and"), t, t)) == TRUE
        assert evaluate_term(x, mk(v.symbol("and"), t, f)) == FALSE
        assert evaluate_term(x, mk(v.symbol("and"), t, u)) == UNDEF
        assert evaluate_term(x, mk(v.symbol("or"), f, t)) == TRUE
        assert evaluate_term(x, mk(v.symbol("or"), f, f)) == FALSE
        assert evaluate_term(x, mk(v.symbol("or"), u, f)) == UNDEF
        # non-Boolean nonlogical operand
        a = Term(v.symbol("a"))
        assert evaluate_term(x, mk(v.symbol("and"), a, t)) == UNDEF

    def test_unset_symbol_defaults_to_undef(self, simple_vocab):
        state = State(simple_vocab, {0, 1, 2, 3})
        assert evaluate_term(state, Term(simple_vocab.symbol("a"))) == UNDEF

    def test_foreign_symbol_rejected(self, remark):
        x, _, _, _ = remark
        foreign = Symbol("zz", 0)
        with pytest.raises(VocabularyMismatchError):
            evaluate_term(x, Term(foreign))

    def test_evaluate_set_images(self, remark):
        x, y, witness, labels = remark
        assert {labels[v] for v in evaluate_set(x, witness)} == {"1", "2"}
        assert {labels[v] for v in evaluate_set(y, witness)} == {"1", "3"}
        assert evaluate_set(x, ()) == frozenset()


class TestCoincidence:
    def test_reflexive(self, remark):
        x, _, witness, _ = remark
        assert coincides_over(x, x, witness)

    def test_remark_pair(self, remark):
        x, y, witness, _ = remark
        a = Term(x.vocabulary.symbol("a"))
        assert coincides_over(x, y, {a})
        assert not coincides_over(x, y, witness)

    def test_subset_monotone(self, simple_vocab):
        rng = random.Random(11)
        for _ in range(20):
            x = random_state(rng, simple_vocab, 3)
            y = random_state(rng, simple_vocab, 3)
            terms = [random_term(rng, simple_vocab, 2) for _ in range(5)]
            if coincides_over(x, y, terms):
                assert coincides_over(x, y, terms[:2])

    def test_vocabulary_mismatch(self, remark, simple_vocab):
        x, _, _, _ = remark
        other = State(simple_vocab, {0, 1, 2, 3})
        with pytest.raises(VocabularyMismatchError):
            coincides_over(x, other, ())


class TestRenaming:
    def test_identity_fixes_state(self, remark):
        x, _, _, _ = remark
        assert apply_renaming(x, identity_renaming(x.base)) == x

    def test_remark_transport(self, remark):
        x, _, _, _ = remark
        r = Renaming({3: 6, 4: 7, 5: 8})
        moved = apply_renaming(x, r)
        expected = State(
            x.vocabulary,
            {0, 1, 2, 6, 7, 8},
            {"f": {(6,): 7, (7,): 8, (8,): 6}, "a": {(): 6}, "b": {(): 7}},
        )
        assert moved == expected

    def test_flip_fresh_element(self, flip):
        low = flip.canonical_states[0]
        moved = apply_renaming(low, Renaming({3: 3, 4: 5}))
        expected = State(flip.vocabulary, {0, 1, 2, 3, 5}, {"f": {(): 3}})
        assert moved == expected

    def test_rejects_non_injective(self):
        with pytest.raises(InvalidRenamingError):
            Renaming({3: 5, 4: 5})

    def test_rejects_moving_logical(self):
        with pytest.raises(InvalidRenamingError):
            Renaming({0: 4})
        with pytest.raises(InvalidRenamingError):
            Renaming({3: 1})

    def test_rejects_uncovered_carrier(self, remark):
        x, _, _, _ = remark
        with pytest.raises(InvalidRenamingError):
            apply_renaming(x, Renaming({3: 6}))

    def test_inverse_roundtrip(self, remark):
        x, _, _, _ = remark
        r = Renaming({3: 6, 4: 7, 5: 8})
        assert apply_renaming(apply_renaming(x, r), r.inverse()) == x

    def test_evaluation_commutes_with_renaming(self, simple_vocab):
        rng = random.Random(3)
        for _ in range(40):
            state = random_state(rng, simple_vocab, 3)
            targets = rng.sample(range(3, 12), k=len(state.nonlogical_elements()))
            r = Renaming(dict(zip(state.nonlogical_elements(), targets)))
            term = random_term(rng, simple_vocab, 3)
            assert evaluate_term(apply_renaming(state, r), term) == r[evaluate_term(state, term)]


class TestStateCanonicalForm:
    def test_explicit_undef_entry_is_dropped(self, simple_vocab):
        with_entry = State(simple_vocab, {0, 1, 2, 3}, {"a": {(): UNDEF}})
        without = State(simple_vocab, {0, 1, 2, 3})
        assert with_entry == without
        assert hash(with_entry) == hash(without)

    def test_equality_is_representation_independent(self, simple_vocab):
        t1 = {"g": {(3, 4): 3, (4, 3): 4}}
        t2 = {"g": {(4, 3): 4, (3, 4): 3}}
        assert State(simple_vocab, {3, 4}, t1) == State(simple_vocab, {3, 4}, t2)

    def test_logical_ids_always_in_carrier(self, simple_vocab):
        state = State(simple_vocab, {5})
        assert {0, 1, 2, 5} == set(state.base)

    def test_rejects_entry_leaving_carrier(self, simple_vocab):
        with pytest.raises(ValidationError):
            State(simple_vocab, {3}, {"a": {(): 9}})

    def test_rejects_logical_symbol_table(self, simple_vocab):
        with pytest.raises(ValidationError):
            State(simple_vocab, {3}, {"true": {(): 3}})

    def test_rejects_arity_mismatch(self, simple_vocab):
        with pytest.raises(ValidationError):
            State(simple_vocab, {3}, {"f": {(): 3}})

    def test_arity_limit(self):
        from asmkit import Vocabulary

        with pytest.raises(ValidationError):
            Vocabulary((Symbol("h", 4),))
        assert Vocabulary((Symbol("h", 4),), max_arity=4).symbol("h").arity == 4

    def test_isomorphisms_between_copies(self, remark):
        x, _, _, _ = remark
        r = Renaming({3: 6, 4: 7, 5: 8})
        copies = list(isomorphisms_between(x, apply_renaming(x, r)))
        assert r in copies
        assert all(apply_renaming(x, iso) == apply_renaming(x, r) for iso in copies)
