"""
Words over a finite alphabet of generator names, the input representation for group elements everywhere in
the package.

The text syntax is whitespace separated letters with an optional exponent: ``s t s^-1``.  Exponents may be
braced (``s^{-1}``) and letters may be run together when the alphabet makes the split unambiguous
(``sts t^{-1}s^{-1}``).
"""
import re
from collections import namedtuple
from typing import Iterable, Sequence

import numpy as np

from .exceptions import GraphSyntaxException

DIHEDRAL_ALPHABET = ('s', 't')
IDENTITY_TOKENS = ('e', '1')

_EXPONENT = re.compile(r'\^\{?\s*([+-]?\d+)\s*\}?')


class Letter(namedtuple("LetterTuple", ["generator", "exponent"])):
    """
    A generator name with exponent +1 or -1.
    """

    @property
    def inverse(self) -> 'Letter':
        return Letter(self.generator, -self.exponent)

    def __str__(self):
        return self.generator if self.exponent == 1 else f"{self.generator}^-1"


class Word(tuple):
    """
    Immutable sequence of :class:`Letter`, freely concatenated (no cancellation is done here).

    >>> w = Word.parse("s t s^-1")
    >>> len(w), w.abelianization
    (3, 1)

    >>> str(Word.parse("sts t^{-1}s^{-1}t^{-1}"))
    's t s t^-1 s^-1 t^-1'

    >>> str(Word.parse("s^3 t^-2"))
    's^3 t^-2'

    >>> str(Word.parse("a b^-1", alphabet=("a", "b")).inverse)
    'b a^-1'
    """

    def __new__(cls, letters: Iterable = ()):
        return super().__new__(cls, (letter if isinstance(letter, Letter) else Letter(*letter) for letter in letters))

    @classmethod
    def parse(cls, text: str, alphabet: Sequence[str] = DIHEDRAL_ALPHABET) -> 'Word':
        """
        Parse the text syntax.  Generator names are matched longest first, so multi-character names work as long
        as no name is a prefix of a run of others.

        :param text: word text; empty, ``e`` and ``1`` denote the identity.
        :param alphabet: allowed generator names.
        """
        names = sorted(alphabet, key=len, reverse=True)
        letters = []
        pos, end = 0, len(text)
        while pos < end:
            if text[pos].isspace() or text[pos] == '.':
                pos += 1
                continue
            name = next((n for n in names if text.startswith(n, pos)), None)
            if name is None:
                token = next((t for t in IDENTITY_TOKENS if text.startswith(t, pos)), None)
                if token is None:
                    raise GraphSyntaxException(f"Unknown letter at position {pos} of {text!r}; "
                                               f"expected one of {', '.join(alphabet)}")
                pos += len(token)
                continue
            pos += len(name)
            exponent = 1
            match = _EXPONENT.match(text, pos)
            if match:
                exponent = int(match.group(1))
                pos = match.end()
            sign = 1 if exponent > 0 else -1
            letters.extend([Letter(name, sign)] * abs(exponent))
        return cls(letters)

    @classmethod
    def power_of(cls, generator: str, exponent: int) -> 'Word':
        sign = 1 if exponent > 0 else -1
        return cls([Letter(generator, sign)] * abs(exponent))

    @property
    def inverse(self) -> 'Word':
        return Word(letter.inverse for letter in reversed(self))

    @property
    def abelianization(self) -> int:
        """
        Image under the homomorphism sending every generator to 1.

        >>> Word.parse("s t s").abelianization
        3
        """
        return sum(letter.exponent for letter in self)

    @property
    def generators(self) -> frozenset:
        return frozenset(letter.generator for letter in self)

    def power(self, k: int) -> 'Word':
        base = self if k >= 0 else self.inverse
        return Word(tuple(base) * abs(k))

    def rename(self, mapping: dict) -> 'Word':
        return Word(Letter(mapping.get(g, g), e) for g, e in self)

    def free_reduce(self) -> 'Word':
        """
        Cancel adjacent inverse pairs.

        >>> str(Word.parse("s t t^-1 s^-1 t"))
        's t t^-1 s^-1 t'
        >>> str(Word.parse("s t t^-1 s^-1 t").free_reduce())
        't'
        """
        stack = []
        for letter in self:
            if stack and stack[-1] == letter.inverse:
                stack.pop()
            else:
                stack.append(letter)
        return Word(stack)

    def syllables(self) -> list[tuple[str, int]]:
        """
        Maximal runs of one generator with their summed exponent (zero sums are kept, nothing cancels here).
        """
        runs = []
        for g, e in self:
            if runs and runs[-1][0] == g:
                runs[-1] = (g, runs[-1][1] + e)
            else:
                runs.append((g, e))
        return runs

    def codes(self, alphabet: Sequence[str] = DIHEDRAL_ALPHABET) -> np.ndarray:
        """
        Integer encoding used by the jitted kernels: letter ``i`` of the alphabet is ``2 i`` and its inverse is
        ``2 i + 1``.
        """
        index = {name: i for i, name in enumerate(alphabet)}
        return np.array([2 * index[g] + (e < 0) for g, e in self], dtype=np.int64)

    def __mul__(self, other) -> 'Word':
        return Word(tuple(self) + tuple(other))

    def __str__(self):
        if not self:
            return 'e'
        parts = []
        for g, e in self._runs():
            parts.append(g if e == 1 else f"{g}^{e}")
        return ' '.join(parts)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def _runs(self):
        # runs of one signed letter, so that s s^-1 prints as "s s^-1" rather than vanishing
        runs = []
        for g, e in self:
            if runs and runs[-1][0] == g and (runs[-1][1] > 0) == (e > 0):
                runs[-1] = (g, runs[-1][1] + e)
            else:
                runs.append((g, e))
        return runs


def as_word(value, alphabet: Sequence[str] = DIHEDRAL_ALPHABET) -> Word:
    """
    Accept either a :class:`Word` or its text form.
    """
    if isinstance(value, Word):
        return value
    if isinstance(value, str):
        return Word.parse(value, alphabet)
    raise GraphSyntaxException(f"Cannot read a word from {value!r}")


def decode(codes: Sequence[int], alphabet: Sequence[str] = DIHEDRAL_ALPHABET) -> Word:
    return Word(Letter(alphabet[c // 2], -1 if c % 2 else 1) for c in codes)
