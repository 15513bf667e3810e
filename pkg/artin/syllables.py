"""
Two-factor presentations of a dihedral Artin group and the jitted syllable reduction behind both the amalgam
word-problem oracle and the central-quotient conjugacy test.

For odd ``m`` the group is ``<x, y | x^2 = y^m>`` with ``x = Delta`` and ``y = st``; the word translation is
``s = y^((m+1)/2) x^-1`` and ``t = x y^((1-m)/2)``.  For even ``m`` it is ``<a, b | [a^(m/2), b]>`` with
``a = st`` and ``b = s``; the translation is ``s = b`` and ``t = b^-1 a``.  In both cases the element
``x^2 = y^m`` (odd) or ``a^(m/2)`` (even) is central, so an element is a central exponent times an alternating
sequence of syllables whose exponents lie in a fixed transversal.  Dropping the central exponent gives the
free product ``Z/2 * Z/m`` or ``Z/(m/2) * Z``.

Letters are integer codes: ``0 = s``, ``1 = s^-1``, ``2 = t``, ``3 = t^-1``.
"""
from collections import namedtuple
from functools import lru_cache

import numpy as np
from numba import jit

xjit = jit(nopython=True, fastmath=True)

# order 0 marks an infinite cyclic factor
Presentation = namedtuple("Presentation", ["m", "factor_names", "orders", "trans_factor", "trans_exp", "trans_len"])


@lru_cache(maxsize=None)
def presentation(m: int) -> Presentation:
    """
    Translation tables for label ``m``.

    >>> p = presentation(3)
    >>> p.factor_names, tuple(p.orders)
    (('x', 'y'), (2, 3))
    >>> presentation(4).factor_names, tuple(presentation(4).orders)
    (('a', 'b'), (2, 0))
    """
    if m < 3:
        raise ValueError(f"Two-factor presentation needs m >= 3, got {m}")
    trans_factor = np.zeros((4, 2), dtype=np.int64)
    trans_exp = np.zeros((4, 2), dtype=np.int64)
    trans_len = np.full(4, 2, dtype=np.int64)
    if m % 2:
        x, y = 0, 1
        h, g = (m + 1) // 2, (m - 1) // 2
        table = {0: [(y, h), (x, -1)],
                 1: [(x, 1), (y, -h)],
                 2: [(x, 1), (y, -g)],
                 3: [(y, g), (x, -1)]}
        names, orders = ('x', 'y'), np.array([2, m], dtype=np.int64)
    else:
        a, b = 0, 1
        table = {0: [(b, 1)],
                 1: [(b, -1)],
                 2: [(b, -1), (a, 1)],
                 3: [(a, -1), (b, 1)]}
        names, orders = ('a', 'b'), np.array([m // 2, 0], dtype=np.int64)
    for code, syllables in table.items():
        trans_len[code] = len(syllables)
        for j, (f, e) in enumerate(syllables):
            trans_factor[code, j] = f
            trans_exp[code, j] = e
    return Presentation(m, names, orders, trans_factor, trans_exp, trans_len)


@xjit
def reduce_codes(codes, trans_factor, trans_exp, trans_len, orders, out_factor, out_exp):
    """
    Stack reduction of a letter code array into normal form.  ``out_factor``/``out_exp`` receive the syllables
    and must hold at least ``2 * len(codes)`` entries.  Returns ``(number of syllables, central exponent)``.
    """
    size = 0
    central = 0
    for i in range(codes.shape[0]):
        c = codes[i]
        for j in range(trans_len[c]):
            f = trans_factor[c, j]
            e = trans_exp[c, j]
            if size > 0 and out_factor[size - 1] == f:
                e += out_exp[size - 1]
                size -= 1
            order = orders[f]
            if order > 0:
                central += e // order
                e = e % order
            if e != 0:
                out_factor[size] = f
                out_exp[size] = e
                size += 1
    return size, central


@xjit
def identity_flags(words, lengths, trans_factor, trans_exp, trans_len, orders):
    """
    For each row of ``words`` (only the first ``lengths[r]`` codes count) decide whether it is the identity.
    """
    n = words.shape[0]
    flags = np.zeros(n, dtype=np.bool_)
    out_factor = np.empty(2 * words.shape[1] + 2, dtype=np.int64)
    out_exp = np.empty(2 * words.shape[1] + 2, dtype=np.int64)
    for r in range(n):
        size, central = reduce_codes(words[r, :lengths[r]], trans_factor, trans_exp, trans_len, orders,
                                     out_factor, out_exp)
        flags[r] = size == 0 and central == 0
    return flags


def reduce(codes: np.ndarray, m: int) -> tuple[tuple[tuple[int, int], ...], int]:
    """
    Normal form of a code array: syllables as ``(factor index, exponent)`` plus the central exponent.
    """
    p = presentation(m)
    out_factor = np.empty(2 * len(codes) + 2, dtype=np.int64)
    out_exp = np.empty(2 * len(codes) + 2, dtype=np.int64)
    size, central = reduce_codes(np.asarray(codes, dtype=np.int64), p.trans_factor, p.trans_exp, p.trans_len,
                                 p.orders, out_factor, out_exp)
    return tuple(zip(out_factor[:size].tolist(), out_exp[:size].tolist())), int(central)


def normalize_exponent(factor: int, exponent: int, orders) -> int:
    order = int(orders[factor])
    return exponent % order if order else exponent


def cyclic_reduce(syllables, m: int) -> tuple[tuple[int, int], ...]:
    """
    Cyclically reduce a free-product syllable sequence (central part already dropped) by conjugating the last
    syllable to the front until the two ends lie in different factors.

    >>> cyclic_reduce(((1, 2), (0, 1), (1, 2)), 3)
    ((1, 1), (0, 1))
    """
    orders = presentation(m).orders
    seq = list(syllables)
    while len(seq) >= 2 and seq[0][0] == seq[-1][0]:
        f, e = seq.pop()
        merged = normalize_exponent(f, seq[0][1] + e, orders)
        if merged == 0:
            seq.pop(0)
        else:
            seq[0] = (f, merged)
    return tuple(seq)


def cyclically_equal(u, v) -> bool:
    """
    Two cyclically reduced sequences represent conjugate elements iff one is a rotation of the other.

    >>> cyclically_equal(((0, 1), (1, 2)), ((1, 2), (0, 1)))
    True
    """
    if len(u) != len(v):
        return False
    if len(u) <= 1:
        return tuple(u) == tuple(v)
    doubled = tuple(u) + tuple(u)
    return any(doubled[k:k + len(v)] == tuple(v) for k in range(len(u)))
