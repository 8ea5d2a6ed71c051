"""Free group arithmetic on freely reduced words.

An element of the free group F(X) is a freely reduced sequence of signed
letters over a fixed alphabet.  Letter ``+k`` (1-based) is the k-th
generator, ``-k`` its inverse.  The text form writes ``+k`` as the
generator's lowercase name and ``-k`` as the uppercase name, so over the
alphabet ``ab`` the string ``"abA"`` is a b a^-1.  The identity prints as
``"1"`` and parses from ``"1"`` or ``""``; input text need not be reduced.

All values are immutable and every operation is a pure function, so words
can be shared between threads without locking.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

__all__ = [
    "Alphabet",
    "Word",
    "RootDecomposition",
    "free_reduce",
    "signed_letter_order",
    "conjugate_in_free",
    "centralizer_generator",
]


def free_reduce(letters) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def signed_letter_order(rank: int) -> tuple[int, ...]:
    """Signed letters in canonical scan order: +1, -1, +2, -2, ..."""
    out: list[int] = []
    for k in range(1, rank + 1):
        out.append(k)
        out.append(-k)
    return tuple(out)


def _letter_key(letter: int) -> int:
    # position of the letter in signed_letter_order
    return (abs(letter) << 1) | (letter < 0)


@dataclass(frozen=True, slots=True)
class Alphabet:
    """Ordered generator names for a free group of finite rank."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("alphabet needs at least one generator")
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be distinct: {names!r}")
        for name in names:
            if len(name) != 1 or name not in string.ascii_lowercase:
                raise ValueError(
                    f"generator names must be single lowercase ascii letters, got {name!r}"
                )

    @classmethod
    def of_rank(cls, rank: int) -> Alphabet:
        if not 1 <= rank <= 26:
            raise ValueError(f"rank must be between 1 and 26, got {rank}")
        return cls(tuple(string.ascii_lowercase[:rank]))

    @property
    def rank(self) -> int:
        return len(self.names)

    def identity(self) -> Word:
        return Word(self, ())

    def generator(self, index: int) -> Word:
        if not 0 <= index < self.rank:
            raise ValueError(f"generator index {index} out of range")
        return Word(self, (index + 1,))

    def generators(self) -> tuple[Word, ...]:
        return tuple(self.generator(i) for i in range(self.rank))

    def letter_str(self, letter: int) -> str:
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name.upper()

    def word(self, source) -> Word:
        """Reduced word from text or from a raw signed-letter sequence."""
        if isinstance(source, str):
            letters = self._parse(source)
        elif isinstance(source, Word):
            if source.alphabet != self:
                raise ValueError("alphabet mismatch")
            return source
        else:
            letters = tuple(source)
        return Word(self, free_reduce(letters))

    def _parse(self, text: str) -> tuple[int, ...]:
        s = text.strip()
        if s in ("", "1"):
            return ()
        letters = []
        for ch in s:
            low = ch.lower()
            try:
                index = self.names.index(low)
            except ValueError:
                raise ValueError(f"unknown letter {ch!r} for alphabet {self}") from None
            letters.append(-(index + 1) if ch.isupper() else index + 1)
        return tuple(letters)

    def __str__(self) -> str:
        return "".join(self.names)


@dataclass(frozen=True, slots=True, repr=False)
class Word:
    """A freely reduced word; the empty sequence is the identity.

    Direct construction requires already-reduced letters; use
    :meth:`Alphabet.word` to reduce arbitrary input.
    """

    alphabet: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        rank = self.alphabet.rank
        prev = 0
        for letter in letters:
            if letter == 0 or abs(letter) > rank:
                raise ValueError(f"letter {letter} outside alphabet of rank {rank}")
            if letter == -prev:
                raise ValueError(f"word {letters!r} is not freely reduced")
            prev = letter

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return "".join(map(self.alphabet.letter_str, self.letters)) or "1"

    def machine_str(self) -> str:
        """Text form with the identity rendered as the empty string."""
        return "".join(map(self.alphabet.letter_str, self.letters))

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def shortlex_key(self) -> tuple:
        return (len(self.letters), tuple(map(_letter_key, self.letters)))

    def __lt__(self, other: Word) -> bool:
        self._require_same_alphabet(other)
        return self.shortlex_key() < other.shortlex_key()

    def _require_same_alphabet(self, other: Word) -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")

    def __mul__(self, other: Word) -> Word:
        self._require_same_alphabet(other)
        a, b = self.letters, other.letters
        i, j = len(a), 0
        while i > 0 and j < len(b) and a[i - 1] == -b[j]:
            i -= 1
            j += 1
        return Word(self.alphabet, a[:i] + b[j:])

    def inverse(self) -> Word:
        return Word(self.alphabet, tuple(-l for l in reversed(self.letters)))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        out = Word(self.alphabet, ())
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugated_by(self, t: Word) -> Word:
        """t^-1 * self * t, reduced."""
        return t.inverse() * self * t

    def cyclic_reduce(self) -> tuple[Word, Word]:
        """Split off the conjugating tail: self = conjugator * core * conjugator^-1.

        The core is cyclically reduced (its first letter is not the inverse
        of its last).
        """
        ls = self.letters
        i, j = 0, len(ls)
        while j - i >= 2 and ls[i] == -ls[j - 1]:
            i += 1
            j -= 1
        return Word(self.alphabet, ls[:i]), Word(self.alphabet, ls[i:j])

    def root(self) -> RootDecomposition:
        """Maximal-exponent decomposition self = root ** exponent.

        A cyclically reduced word is a proper power exactly when it is a
        string power of a prefix whose length divides the word length, so
        the scan runs over divisors in decreasing exponent order and the
        first match is maximal.
        """
        if not self.letters:
            raise ValueError("identity has no root decomposition")
        conj, core = self.cyclic_reduce()
        k = core.letters
        n = len(k)
        for exponent in range(n, 0, -1):
            if n % exponent:
                continue
            period = n // exponent
            if k[:period] * exponent == k:
                root = conj * Word(self.alphabet, k[:period]) * conj.inverse()
                return RootDecomposition(root, exponent)
        raise AssertionError("unreachable: exponent 1 always matches")


@dataclass(frozen=True, slots=True)
class RootDecomposition:
    """A word as a maximal power: root ** exponent, root not a proper power."""

    root: Word
    exponent: int


def conjugate_in_free(u: Word, v: Word) -> Word | None:
    """Some t with t^-1 u t = v, or None when u and v are not conjugate in F.

    Two elements are conjugate exactly when their cyclically reduced cores
    are cyclic rotations of one another; the conjugator is assembled from
    the first matching rotation point, so the result is deterministic, and
    it satisfies t^-1 u t = v exactly.
    """
    u._require_same_alphabet(v)
    cu, ku = u.cyclic_reduce()
    cv, kv = v.cyclic_reduce()
    a, b = ku.letters, kv.letters
    if len(a) != len(b):
        return None
    if not a:
        return u.alphabet.identity()
    doubled = a + a
    for i in range(len(a)):
        if doubled[i : i + len(a)] == b:
            t = cu * Word(u.alphabet, a[:i]) * cv.inverse()
            assert u.conjugated_by(t) == v
            return t
    return None


def centralizer_generator(w: Word) -> Word:
    """Generator of the centralizer of a nontrivial element: its root.

    Centralizers in a free group are infinite cyclic, generated by the
    unique root of the element.
    """
    if w.is_identity:
        raise ValueError("the identity's centralizer is the whole group")
    return w.root().root
