import random

import pytest

from conjstab import (
    Alphabet,
    BallSpec,
    Word,
    centralizer_generator,
    conjugate_in_free,
    enumerate_ball,
)
from conjstab.words import free_reduce

from helpers import ball_words


def test_alphabet_validation():
    assert Alphabet("ab").rank == 2
    assert Alphabet.of_rank(3).names == ("a", "b", "c")
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("A",))
    with pytest.raises(ValueError):
        Alphabet(("ab",))


def test_parse_and_print(ab):
    assert str(ab.word("abA")) == "abA"
    assert str(ab.word("")) == "1"
    assert str(ab.word("1")) == "1"
    assert ab.word("1").machine_str() == ""
    assert ab.word("aBAb").letters == (1, -2, -1, 2)
    # parse applies free reduction
    assert ab.word("abBA").is_identity
    with pytest.raises(ValueError):
        ab.word("ac")
    with pytest.raises(ValueError):
        ab.word("a1b")


def test_word_invariant_enforced(ab):
    with pytest.raises(ValueError):
        Word(ab, (1, -1))
    with pytest.raises(ValueError):
        Word(ab, (3,))
    with pytest.raises(ValueError):
        Word(ab, (0,))


def test_reduce_examples(ab):
    assert ab.word([1, -1, 2]) == ab.word("b")
    assert ab.word([]) == ab.identity()
    assert ab.word([1, 2, -2, 1]) == ab.word("aa")


def test_reduce_idempotent_exhaustive(ab):
    letters = (1, -1, 2, -2)
    seqs = [()]
    for _ in range(5):
        seqs = [s + (l,) for s in seqs for l in letters]
        for s in seqs:
            once = free_reduce(s)
            assert free_reduce(once) == once


def test_reduce_idempotent_random(ab):
    rng = random.Random(20240601)
    for _ in range(300):
        seq = [rng.choice((1, -1, 2, -2)) for _ in range(rng.randrange(0, 40))]
        once = free_reduce(seq)
        assert free_reduce(once) == once


def test_multiply_invert_examples(ab):
    assert ab.word("ab") * ab.word("Ba") == ab.word("aa")
    assert ab.word("ab").inverse() == ab.word("BA")
    u = ab.word("abab")
    assert (u * u.inverse()).is_identity


def test_group_laws_sampled(ab):
    rng = random.Random(7)
    words = ball_words(ab, 4)
    for _ in range(300):
        u, v, w = (rng.choice(words) for _ in range(3))
        assert (u * v) * w == u * (v * w)
        assert (u * u.inverse()).is_identity
        assert u * ab.identity() == u
        assert (u * v).inverse() == v.inverse() * u.inverse()


def test_alphabet_mismatch_raises(ab):
    other = Alphabet("xy")
    with pytest.raises(ValueError):
        ab.word("a") * other.word("x")


def test_pow(ab):
    u = ab.word("ab")
    assert u**0 == ab.identity()
    assert u**3 == ab.word("ababab")
    assert u**-2 == ab.word("BABA")


def test_cyclic_reduce_examples(ab):
    assert ab.word("abA").cyclic_reduce() == (ab.word("a"), ab.word("b"))
    assert ab.word("ab").cyclic_reduce() == (ab.identity(), ab.word("ab"))
    assert ab.word("Abba").cyclic_reduce() == (ab.word("A"), ab.word("bb"))


def test_cyclic_reduce_properties(ab):
    for w in ball_words(ab, 6):
        conj, core = w.cyclic_reduce()
        assert conj * core * conj.inverse() == w
        if core.letters:
            assert core.letters[0] != -core.letters[-1]
        else:
            assert w.is_identity


def test_root_examples(ab):
    assert ab.word("abab").root().root == ab.word("ab")
    assert ab.word("abab").root().exponent == 2
    dec = ab.word("Abba").root()
    assert (dec.root, dec.exponent) == (ab.word("Aba"), 2)
    assert ab.word("ab").root() == ab.word("ab").root().__class__(ab.word("ab"), 1)
    with pytest.raises(ValueError):
        ab.identity().root()


def _root_oracle_check(w):
    """root ** exponent reproduces w and no larger exponent works."""
    dec = w.root()
    assert dec.root**dec.exponent == w
    _, core = w.cyclic_reduce()
    k = core.letters
    n = len(k)
    for m in range(n, dec.exponent, -1):
        if n % m == 0:
            assert k[: n // m] * m != k, (w, m)


def test_root_soundness_exhaustive(ab, monkeypatch):
    # exhaustive to length 10; lengths 11..12 sampled below
    monkeypatch.setenv("CONJSTAB_MAX_BALL", "10")
    for w in ball_words(ab, 10):
        if not w.is_identity:
            _root_oracle_check(w)


def test_root_soundness_sampled_long(ab):
    rng = random.Random(99)
    for _ in range(4000):
        length = rng.choice((11, 12))
        letters = []
        last = 0
        for _ in range(length):
            letters.append(rng.choice([l for l in (1, -1, 2, -2) if l != -last]))
            last = letters[-1]
        _root_oracle_check(Word(ab, tuple(letters)))


def test_conjugate_in_free_examples(ab):
    assert conjugate_in_free(ab.word("ab"), ab.word("ba")) == ab.word("a")
    assert conjugate_in_free(ab.word("a"), ab.word("b")) is None
    assert conjugate_in_free(ab.word("aa"), ab.word("aa")) == ab.identity()


def test_conjugate_in_free_returns_exact_conjugator(ab):
    for u in ball_words(ab, 3):
        for v in ball_words(ab, 3):
            t = conjugate_in_free(u, v)
            if t is not None:
                assert u.conjugated_by(t) == v


def test_conjugate_in_free_brute_agreement(ab):
    # conjugacy of |u|,|v| <= 4 always admits a conjugator of length <= 6
    ball4 = ball_words(ab, 4)
    ball6 = [w.letters for w in ball_words(ab, 6)]
    inverses = [tuple(-l for l in reversed(t)) for t in ball6]
    for u in ball4:
        reachable = set()
        for t, ti in zip(ball6, inverses):
            reachable.add(free_reduce(ti + u.letters + t))
        for v in ball4:
            assert (conjugate_in_free(u, v) is not None) == (v.letters in reachable)


def test_centralizer_generator(ab):
    assert centralizer_generator(ab.word("aa")) == ab.word("a")
    assert centralizer_generator(ab.word("abab")) == ab.word("ab")
    assert centralizer_generator(ab.word("ab")) == ab.word("ab")
    with pytest.raises(ValueError):
        centralizer_generator(ab.identity())


def test_shortlex_order(ab):
    ordered = [w.letters for w in enumerate_ball(BallSpec(ab, 2))]
    resorted = sorted(
        (Word(ab, ls) for ls in ordered), key=lambda w: w.shortlex_key()
    )
    assert [w.letters for w in resorted] == ordered
    assert ab.word("a") < ab.word("A") < ab.word("b") < ab.word("B") < ab.word("aa")
