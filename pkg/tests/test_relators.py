import json

import pytest
from hypothesis import given, settings, strategies as st

from torsor import catalog
from torsor.groups import load_group
from torsor.relators import (Answer, AutGeneratorSet, Presentation, PresentationError, TrivialWords,
                             acts_trivially, apply_aut_word, check_aut_generators, check_derivation,
                             enumerate_aut_relators, free_reduce, parse_aut_generators,
                             parse_presentation, shortlex_words, word_problem_bfs, WordTooLong)

X, Y = 1, 2


@pytest.fixture(scope="module")
def S3P():
    return parse_presentation(catalog.path("presentations", "S3").read_text())


@pytest.fixture(scope="module")
def inner_gens(S3P):
    return parse_aut_generators(catalog.path("presentations", "S3_inner").read_text(), S3P)


@pytest.fixture(scope="module")
def model():
    return load_group(catalog.path("presentations", "S3_model"))


@pytest.fixture(scope="module")
def trivial8(S3P):
    return TrivialWords(S3P, 8)


def test_free_reduce_examples():
    assert free_reduce([X, Y, -Y, -X]) == ()
    assert free_reduce([X, X, X]) == (X, X, X)
    assert free_reduce([X, -Y, Y, X]) == (X, X)
    with pytest.raises(PresentationError):
        free_reduce([1, 0])


words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12)


@given(words)
def test_free_reduce_idempotent_and_shrinking(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert all(a != -b for a, b in zip(r, r[1:]))


def test_word_problem_examples(S3P, model):
    assert word_problem_bfs(S3P, [], 0).yes
    cyc = Presentation(("x",), ((1, 1, 1),))
    res = word_problem_bfs(cyc, [1, 1, 1], 3)
    assert res.yes and res.derivation == ((1, 1, 1), ())
    w = [X, Y] * 4
    assert model.evaluate_word(w) == 0
    res = word_problem_bfs(S3P, w, 8)
    assert res.yes and check_derivation(S3P, res.derivation, 8)
    assert not word_problem_bfs(S3P, [X], 8).yes
    assert word_problem_bfs(S3P, [X], 8).answer is Answer.UNKNOWN


def test_word_problem_respects_budgets(S3P):
    assert word_problem_bfs(S3P, [X] * 9, 8).answer is Answer.UNKNOWN  # too long to start
    assert word_problem_bfs(S3P, [X, X, X, Y, Y], 6, max_states=1).answer is Answer.UNKNOWN
    assert word_problem_bfs(S3P, [X, X, X, Y, Y], 6).yes


@settings(deadline=None, max_examples=60)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6))
def test_yes_answers_are_sound(S3P, model, trivial8, w):
    res = word_problem_bfs(S3P, w, 7, max_states=5000)
    if res.yes:
        assert model.evaluate_word(w) == 0
        assert check_derivation(S3P, res.derivation, 7)
    if (free_reduce(w) in trivial8):
        assert model.evaluate_word(w) == 0
        assert check_derivation(S3P, trivial8.certify(w), 8)


def test_trivial_words_is_complete_for_s3_length_6(S3P, model):
    tw = TrivialWords(S3P, 6)
    assert tw.complete
    # every reduced word of length <= 4 that is trivial in S3 is certified
    for w in shortlex_words(2, 4):
        if model.evaluate_word(w) == 0:
            assert w in tw, w
        else:
            assert w not in tw


def test_apply_aut_word(S3P, inner_gens):
    assert apply_aut_word(S3P, inner_gens, (), Y) == (Y,)
    assert apply_aut_word(S3P, inner_gens, (1,), Y) == (-X, Y, X)
    assert apply_aut_word(S3P, inner_gens, (1, -1), Y) == (Y,)
    assert apply_aut_word(S3P, inner_gens, (-2, 2), X) == (X,)
    with pytest.raises(WordTooLong):
        apply_aut_word(S3P, inner_gens, (1,) * 10, Y, cap=10)


def test_identity_generator_emits_at_length_one(S3P):
    A = parse_aut_generators(catalog.path("presentations", "S3_identity").read_text(), S3P)
    out = list(enumerate_aut_relators(S3P, A, 1))
    assert [e.word for e in out] == [(1,), (-1,)]


def test_s3_inner_relators(S3P, inner_gens, model, trivial8):
    out = list(enumerate_aut_relators(S3P, inner_gens, 8, trivial=trivial8))
    emitted = [e.word for e in out]
    for r in [(2, 2), (1, 1, 1), (1, 2, 1, 2)]:
        assert r in emitted
    assert emitted == sorted(emitted, key=lambda w: (len(w), [(abs(x), x < 0) for x in w]))
    for e in out:
        assert acts_trivially(model, inner_gens, e.word)
        assert all(check_derivation(S3P, c, 8) for c in e.derivations)


def test_monotone_and_deterministic(S3P, inner_gens):
    small = [e.word for e in enumerate_aut_relators(S3P, inner_gens, 6)]
    big = [e.word for e in enumerate_aut_relators(S3P, inner_gens, 8)]
    assert set(small) <= set(big)
    again = [e.to_json() for e in enumerate_aut_relators(S3P, inner_gens, 6)]
    assert again == [e.to_json() for e in enumerate_aut_relators(S3P, inner_gens, 6)]
    assert list(enumerate_aut_relators(S3P, inner_gens, 0)) == []


def test_aut_generator_sanity_check(S3P, inner_gens, trivial8):
    check_aut_generators(S3P, inner_gens, trivial8)
    broken = AutGeneratorSet(inner_gens.u, ((( X,), (Y,)), inner_gens.v[1]))
    with pytest.raises(PresentationError):
        check_aut_generators(S3P, broken, trivial8)


def test_shortlex_order():
    w = list(shortlex_words(1, 2))
    assert w == [(1,), (-1,), (1, 1), (-1, -1)]
    assert len(list(shortlex_words(2, 3))) == 4 + 12 + 36


@pytest.mark.parametrize("text", [
    "[", json.dumps({"generators": []}), json.dumps({"generators": ["x"], "relators": [[2]]}),
    json.dumps({"generators": ["x"], "relators": [[1, -1]]}), json.dumps({"generators": ["x"], "relators": [[0]]}),
])
def test_bad_presentations(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_bad_aut_files(S3P):
    for text in ["{}", json.dumps({"u": [[[1]]], "v": [[[1]]]}), json.dumps({"u": [], "v": []})]:
        with pytest.raises(PresentationError):
            parse_aut_generators(text, S3P)
