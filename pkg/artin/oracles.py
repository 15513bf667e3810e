"""
Correctness oracles that share no code path with the Garside normal form: syllable normal forms in the
two-factor presentations, a piling normal form for right-angled Artin groups, and bounded brute-force search.
"""
import itertools
from collections import namedtuple, deque
from functools import lru_cache

import numpy as np

from . import garside
from .config import Limits, DEFAULT_LIMITS
from .exceptions import TranslationException, PreconditionException, ResourceLimitException
from .logger import logger
from .presentation import PresentationGraph
from .syllables import presentation, reduce, identity_flags
from .word import Word, as_word, decode, DIHEDRAL_ALPHABET

AmalgamNF = namedtuple("AmalgamNF", ["syllables", "central_exp"])


def _image(w, m: int) -> AmalgamNF:
    syllables, central = reduce(as_word(w).codes(), m)
    return AmalgamNF(syllables, central)


@lru_cache(maxsize=None)
def validate_translations(m: int) -> bool:
    """
    Check the word translation for label ``m`` before anything is computed through it: the braid relator must
    map to the identity and the generators of the target presentation must be hit by their intended words.
    Raises :class:`TranslationException` otherwise.
    """
    if m < 3:
        raise PreconditionException(f"The amalgam oracle needs m >= 3, got {m}")
    delta = garside.delta_word(m)
    relator = delta * Word.parse(' '.join(garside.alternating('t', m))).inverse
    checks = [("braid relator", relator, AmalgamNF((), 0))]
    if m % 2:
        checks.append(("Delta = x", delta, AmalgamNF(((0, 1),), 0)))
        checks.append(("st = y", Word.parse("s t"), AmalgamNF(((1, 1),), 0)))
    else:
        checks.append(("s = b", Word.parse("s"), AmalgamNF(((1, 1),), 0)))
        checks.append(("st = a", Word.parse("s t"), AmalgamNF(((0, 1),), 0)))
    for name, w, expected in checks:
        got = _image(w, m)
        if got != expected:
            raise TranslationException(f"Translation for m={m} fails {name}: got {got}, expected {expected}")
    logger.debug("Translation for m=%d validated (%s)", m, ', '.join(presentation(m).factor_names))
    return True


def amalgam_normal_form(w, m: int) -> AmalgamNF:
    """
    >>> amalgam_normal_form("s t", 3)
    AmalgamNF(syllables=((1, 1),), central_exp=0)
    """
    validate_translations(m)
    return _image(w, m)


def amalgam_is_identity(w, m: int) -> bool:
    """
    >>> amalgam_is_identity("s t s t^-1 s^-1 t^-1", 3), amalgam_is_identity("s", 5)
    (True, False)
    """
    nf = amalgam_normal_form(w, m)
    return not nf.syllables and nf.central_exp == 0


RaagNF = namedtuple("RaagNF", ["syllables"])


class Piling:
    """
    One pile per generator.  A letter goes on its own pile and leaves a blank on the pile of every generator it
    does not commute with, so a letter cancels exactly when the top of its own pile is its inverse.
    """

    def __init__(self, graph: PresentationGraph):
        graph.require_right_angled()
        self.generators = graph.generators
        self.non_commuters = {g: tuple(h for h in self.generators if h != g and graph.label(g, h) is None)
                              for g in self.generators}
        self.piles = {g: deque() for g in self.generators}
        self.pile_count = 0

    def push(self, generator: str, epsilon: int):
        pile = self.piles[generator]
        if pile and pile[-1] == -epsilon:
            self.pile_count -= 1
            pile.pop()
            for h in self.non_commuters[generator]:
                self.piles[h].pop()
        else:
            self.pile_count += 1
            pile.append(epsilon)
            for h in self.non_commuters[generator]:
                self.piles[h].append(0)

    def depile(self) -> Word:
        """
        Empty the piles into a word, always taking the first generator (in graph order) whose pile has a letter at
        the bottom.
        """
        letters = []
        while self.pile_count:
            g = next(g for g in self.generators if self.piles[g] and self.piles[g][0])
            letters.append((g, self.piles[g].popleft()))
            self.pile_count -= 1
            for h in self.non_commuters[g]:
                self.piles[h].popleft()
        return Word(letters)


def raag_normal_form(w, graph: PresentationGraph) -> RaagNF:
    """
    >>> raag_normal_form("b a b^-1 c", PresentationGraph("abc", {frozenset("ab"): 2}))
    RaagNF(syllables=(('a', 1), ('c', 1)))
    """
    piling = Piling(graph)
    for g, e in as_word(w, graph.generators):
        piling.push(g, e)
    return RaagNF(tuple(piling.depile().syllables()))


def raag_is_identity(w, graph: PresentationGraph) -> bool:
    return not raag_normal_form(w, graph).syllables


def brute_conjugacy_search(w, target, m: int, bound: int, limits: Limits = DEFAULT_LIMITS):
    """
    First element ``c`` of canonical length at most ``bound`` with ``c w c^-1 = target``, or ``None``.  ``None``
    only says nothing was found in the ball.

    >>> str(brute_conjugacy_search("s", "t", 3, 3))
    'D'
    """
    if bound < 0:
        raise PreconditionException(f"Search bound must be non-negative, got {bound}")
    element = garside.normal_form(w, m)
    goal = garside.normal_form(target, m)
    if element.abelianization != goal.abelianization:
        return None
    for count, c in enumerate(garside.ball(m, bound)):
        if count >= limits.budget:
            raise ResourceLimitException(f"Conjugator search exceeded budget of {limits.budget} elements")
        if c * element * c.inverse() == goal:
            logger.debug("Conjugator %s found after %d candidates", c, count + 1)
            return c
    return None


SweepReport = namedtuple("SweepReport", ["m", "length", "words", "identities", "disagreements",
                                         "first_disagreement"])


def word_ball_codes(length: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Every word of length at most ``length`` as letter codes, padded with zeros to ``length`` columns, with the
    true lengths alongside.

    >>> words, lengths = word_ball_codes(2)
    >>> words.shape, int(lengths.sum())
    ((21, 2), 36)
    """
    blocks, lengths = [], []
    for k in range(length + 1):
        block = np.indices((4,) * k, dtype=np.int64).reshape(k, -1).T if k else np.zeros((1, 0), dtype=np.int64)
        padded = np.zeros((block.shape[0], length), dtype=np.int64)
        padded[:, :k] = block
        blocks.append(padded)
        lengths.append(np.full(block.shape[0], k, dtype=np.int64))
    return np.concatenate(blocks), np.concatenate(lengths)


def oracle_sweep(m: int, length: int, disable_numba: bool = False, limits: Limits = DEFAULT_LIMITS) -> SweepReport:
    """
    Compare the Garside word problem with the amalgam oracle on every word of length at most ``length``.
    """
    validate_translations(m)
    total = sum(4 ** k for k in range(length + 1))
    if total > limits.budget:
        raise ResourceLimitException(f"Sweep of {total} words exceeds budget of {limits.budget}")
    words, lengths = word_ball_codes(length)
    p = presentation(m)
    kernel = identity_flags.py_func if disable_numba else identity_flags
    flags = kernel(words, lengths, p.trans_factor, p.trans_exp, p.trans_len, p.orders)
    disagreements, first = 0, None
    for row, n, flag in zip(words, lengths, flags):
        w = decode(row[:n].tolist(), DIHEDRAL_ALPHABET)
        if garside.normal_form(w, m).is_identity != bool(flag):
            disagreements += 1
            if first is None:
                first = str(w)
                logger.warning("Oracle disagreement for m=%d on %s", m, first)
    report = SweepReport(m, length, len(words), int(np.count_nonzero(flags)), disagreements, first)
    logger.debug("Oracle sweep %s", report)
    return report


def reduced_words(letters, depth: int):
    """
    Freely reduced words of exactly ``depth`` symbols over ``letters`` and their formal inverses, as tuples of
    ``(letter index, sign)``.  There are ``2k (2k - 1)^(depth - 1)`` of them for ``k`` letters.

    >>> sum(1 for _ in reduced_words("ab", 2))
    12
    """
    symbols = [(i, e) for i in range(len(letters)) for e in (1, -1)]
    for combo in itertools.product(symbols, repeat=depth):
        if all(combo[j + 1] != (combo[j][0], -combo[j][1]) for j in range(depth - 1)):
            yield combo
