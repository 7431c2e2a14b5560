"""Free-group word arithmetic.

Letters are nonzero integers: ``+i`` is the i-th generator, ``-i`` its
inverse.  Words are tuples of letters kept freely reduced.  Cyclic words
(conjugacy classes of nontrivial elements) are wrapped in
:class:`CyclicWord`, which stores a canonical rotation so that equal
classes compare and hash equal.

The canonical order on letters is ``a < a^-1 < b < b^-1 < ...``, i.e.
generator index ascending with the positive letter first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidInputError, ParseError

Word = tuple[int, ...]


def letter_key(x: int) -> tuple[int, int]:
    """Sort key realising the canonical letter order."""
    return (abs(x), 0 if x > 0 else 1)


def word_key(word) -> tuple:
    return tuple(letter_key(x) for x in word)


def invert_word(word) -> Word:
    """Group inverse: reverse the word and invert each letter."""
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class Alphabet:
    """The ranked generating set a_1, ..., a_n of a free group."""

    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidInputError(f"alphabet rank must be >= 1, got {self.rank}")

    def letters(self) -> tuple[int, ...]:
        """All 2n letters in canonical order: 1, -1, 2, -2, ..."""
        return tuple(s * i for i in range(1, self.rank + 1) for s in (1, -1))

    def contains(self, letter: int) -> bool:
        return letter != 0 and abs(letter) <= self.rank

    def validate_letters(self, letters) -> None:
        for x in letters:
            if not isinstance(x, int) or not self.contains(x):
                raise InvalidInputError(f"letter {x!r} outside alphabet of rank {self.rank}")


def free_reduce(letters, alphabet: Alphabet | None = None) -> Word:
    """Freely reduce a letter sequence by cancelling adjacent x, x^-1 pairs.

    Idempotent and length-nonincreasing.  If ``alphabet`` is given, letters
    are range-checked first.

    >>> free_reduce((1, 2, -2, -1))
    ()
    >>> free_reduce((1, -1, 2))
    (2,)
    """
    if alphabet is not None:
        alphabet.validate_letters(letters)
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            if not isinstance(x, int) or x == 0:
                raise InvalidInputError(f"invalid letter {x!r}")
            out.append(x)
    return tuple(out)


def reduced_mul(word: Word, letter: int) -> Word:
    """Right-multiply a reduced word by one letter, staying reduced."""
    if word and word[-1] == -letter:
        return word[:-1]
    return word + (letter,)


def is_cyclically_reduced(word) -> bool:
    word = tuple(word)
    if not word:
        return False
    if any(word[i] == -word[i + 1] for i in range(len(word) - 1)):
        return False
    return word[0] != -word[-1]


def canonical_rotation(word: Word) -> Word:
    """Lexicographically least rotation under the canonical letter order."""
    return min((word[i:] + word[:i] for i in range(len(word))), key=word_key)


class CyclicWord:
    """A cyclically reduced word stored in canonical rotation.

    Represents the conjugacy class of a nontrivial element.  Two
    CyclicWords built from any rotations of the same letter sequence
    compare equal.  A word and its inverse are distinct objects.
    """

    __slots__ = ("letters",)

    def __init__(self, letters):
        letters = tuple(letters)
        if not letters:
            raise InvalidInputError("cyclic word must be nonempty")
        if not is_cyclically_reduced(letters):
            raise InvalidInputError(f"not cyclically reduced: {letters}")
        object.__setattr__(self, "letters", canonical_rotation(letters))

    def __setattr__(self, name, value):
        raise AttributeError("CyclicWord is immutable")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.letters == other.letters

    def __hash__(self):
        return hash(("CyclicWord", self.letters))

    def __lt__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return (len(self.letters), word_key(self.letters)) < (
            len(other.letters),
            word_key(other.letters),
        )

    def __repr__(self):
        return f"CyclicWord({format_word(self.letters)!r})"

    def inverse(self) -> "CyclicWord":
        return CyclicWord(invert_word(self.letters))

    def rotations(self) -> tuple[Word, ...]:
        """All distinct rotations, as linear words."""
        w = self.letters
        return tuple({w[i:] + w[:i] for i in range(len(w))})

    def cyclic_pairs(self):
        """Adjacent letter pairs read cyclically, including the wrap pair."""
        w = self.letters
        for i in range(len(w)):
            yield w[i], w[(i + 1) % len(w)]

    def generator_support(self) -> frozenset[int]:
        return frozenset(abs(x) for x in self.letters)

    def is_proper_power(self) -> bool:
        """True iff the word equals some nontrivial rotation of itself."""
        w = self.letters
        return any(w == w[i:] + w[:i] for i in range(1, len(w)))


def conjugacy_class_rep(word: CyclicWord) -> CyclicWord:
    """Canonical representative of the class {word, word inverse}."""
    inv = word.inverse()
    return word if word < inv or word == inv else inv


def cyclic_reduce(word) -> tuple[CyclicWord | None, Word]:
    """Split a word as g c g^-1 with c cyclically reduced.

    Returns ``(c, g)``; ``c`` is None exactly when the input is trivial.

    >>> cyclic_reduce((2, 1, -2))
    (CyclicWord('a'), (2,))
    """
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    core = w[i:j]
    prefix = w[:i]
    if not core:
        return None, prefix
    result = CyclicWord(core)
    # rotating the core to canonical form shifts the conjugator:
    # core = core[:k] . canonical . core[:k]^-1
    for k in range(len(core)):
        if core[k:] + core[:k] == result.letters:
            return result, free_reduce(prefix + core[:k])
    raise AssertionError("unreachable: canonical form is a rotation")


def total_cyclic_length(family) -> int:
    """Sum of cyclically reduced lengths over a family of cyclic words."""
    return sum(len(w) for w in family)


# ---------------------------------------------------------------------------
# Automorphisms


class FreeGroupMap:
    """An endomorphism of the free group, given by generator images.

    All maps produced by this package are automorphisms (compositions of
    Whitehead automorphisms), but nothing here depends on invertibility.
    """

    __slots__ = ("rank", "images")

    def __init__(self, rank: int, images):
        images = tuple(tuple(img) for img in images)
        if len(images) != rank:
            raise InvalidInputError(f"need {rank} generator images, got {len(images)}")
        self.rank = rank
        self.images = tuple(free_reduce(img) for img in images)

    @classmethod
    def identity(cls, rank: int) -> "FreeGroupMap":
        return cls(rank, [(i,) for i in range(1, rank + 1)])

    def letter_image(self, x: int) -> Word:
        if x > 0:
            return self.images[x - 1]
        return invert_word(self.images[-x - 1])

    def apply(self, word) -> Word:
        return free_reduce(itertools.chain.from_iterable(self.letter_image(x) for x in word))

    def apply_cyclic(self, word: CyclicWord) -> CyclicWord:
        core, _ = cyclic_reduce(self.apply(word.letters))
        if core is None:
            raise InvalidInputError(f"map sends {word!r} to the trivial word")
        return core

    def then(self, after: "FreeGroupMap") -> "FreeGroupMap":
        """The composition applying self first, then ``after``."""
        return FreeGroupMap(self.rank, [after.apply(img) for img in self.images])

    def is_identity(self) -> bool:
        return all(img == (i + 1,) for i, img in enumerate(self.images))

    def __eq__(self, other):
        return (
            isinstance(other, FreeGroupMap)
            and self.rank == other.rank
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.rank, self.images))

    def __repr__(self):
        imgs = ", ".join(format_word(img) for img in self.images)
        return f"FreeGroupMap({self.rank}, [{imgs}])"


@dataclass(frozen=True)
class PermutationAutomorphism:
    """Type I Whitehead automorphism: a_i -> a_{perm[i]}^{signs[i]}."""

    rank: int
    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, self.rank + 1)):
            raise InvalidInputError(f"not a permutation of 1..{self.rank}: {self.perm}")
        if len(self.signs) != self.rank or any(s not in (1, -1) for s in self.signs):
            raise InvalidInputError(f"signs must be +-1 per generator: {self.signs}")

    @classmethod
    def identity(cls, rank: int) -> "PermutationAutomorphism":
        return cls(rank, tuple(range(1, rank + 1)), (1,) * rank)

    def to_map(self) -> FreeGroupMap:
        return FreeGroupMap(
            self.rank, [(self.signs[i] * self.perm[i],) for i in range(self.rank)]
        )

    def inverse(self) -> "PermutationAutomorphism":
        inv_perm = [0] * self.rank
        inv_signs = [1] * self.rank
        for i in range(self.rank):
            inv_perm[self.perm[i] - 1] = i + 1
            inv_signs[self.perm[i] - 1] = self.signs[i]
        return PermutationAutomorphism(self.rank, tuple(inv_perm), tuple(inv_signs))


@dataclass(frozen=True)
class MultiplierAutomorphism:
    """Type II Whitehead automorphism with multiplier x and side set A.

    Requires x in A and x^-1 not in A.  Fixes x, and sends every other
    generator g to x^-p g x^q where p = 1 iff g^-1 in A and q = 1 iff
    g in A.  (So membership of g in A appends x, membership of g^-1
    prepends x^-1.)
    """

    rank: int
    multiplier: int
    side: frozenset[int]

    def __post_init__(self):
        alphabet = Alphabet(self.rank)
        alphabet.validate_letters([self.multiplier])
        alphabet.validate_letters(self.side)
        if self.multiplier not in self.side:
            raise InvalidInputError("multiplier must belong to the side set")
        if -self.multiplier in self.side:
            raise InvalidInputError("side set must not contain the multiplier inverse")

    def to_map(self) -> FreeGroupMap:
        x = self.multiplier
        images = []
        for g in range(1, self.rank + 1):
            if g == abs(x):
                images.append((g,))
                continue
            img: list[int] = []
            if -g in self.side:
                img.append(-x)
            img.append(g)
            if g in self.side:
                img.append(x)
            images.append(tuple(img))
        return FreeGroupMap(self.rank, images)

    def inverse(self) -> "MultiplierAutomorphism":
        flipped = frozenset(self.side - {self.multiplier}) | {-self.multiplier}
        return MultiplierAutomorphism(self.rank, -self.multiplier, flipped)


WhiteheadAutomorphism = PermutationAutomorphism | MultiplierAutomorphism


def apply_automorphism(phi, word: CyclicWord) -> CyclicWord:
    """Image of a conjugacy class under an automorphism, canonicalised."""
    mapping = phi if isinstance(phi, FreeGroupMap) else phi.to_map()
    return mapping.apply_cyclic(word)


# ---------------------------------------------------------------------------
# Text syntax

_LOWER = "abcdefghijklmnopqrstuvwxyz"


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse the word text syntax: letter form or numeric form.

    Letter form maps a-z to generators 1..26 and uppercase to inverses;
    numeric form is whitespace-separated signed integers.  Mixing the two
    forms in one token stream is rejected.  The empty string is the
    trivial word.  The result is NOT freely reduced.
    """
    tokens = text.split()
    if not tokens:
        return ()
    numeric = all(_is_int_token(t) for t in tokens)
    alphabetic = all(t.isalpha() and t.isascii() for t in tokens)
    if numeric:
        letters = [int(t) for t in tokens]
    elif alphabetic:
        letters = [_parse_letter_char(c) for c in "".join(tokens)]
    else:
        raise ParseError(f"mixed or malformed word syntax: {text!r}")
    for x in letters:
        if x == 0:
            raise ParseError("0 is not a letter")
        if not alphabet.contains(x):
            raise ParseError(f"letter {format_letter(x)!r} outside alphabet of rank {alphabet.rank}")
    return tuple(letters)


def _is_int_token(token: str) -> bool:
    body = token[1:] if token[0] in "+-" else token
    return body.isdigit()


def _parse_letter_char(c: str) -> int:
    if c.islower():
        return _LOWER.index(c) + 1
    return -(_LOWER.index(c.lower()) + 1)


def format_letter(x: int) -> str:
    """Letter shorthand when the index fits a-z, else a<i>/A<i> labels."""
    if 1 <= abs(x) <= 26:
        c = _LOWER[abs(x) - 1]
        return c if x > 0 else c.upper()
    return f"a{abs(x)}" if x > 0 else f"A{abs(x)}"


def format_word(word) -> str:
    """Render a word: letter shorthand if every index fits, else numeric.

    The empty word renders as ``'1'`` (the group identity).
    """
    word = tuple(word)
    if not word:
        return "1"
    if all(1 <= abs(x) <= 26 for x in word):
        return "".join(format_letter(x) for x in word)
    return " ".join(str(x) for x in word)
