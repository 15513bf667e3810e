"""
Exact arithmetic in dihedral Artin groups ``A_st = <s, t | sts... = tst...>`` (both sides of length ``m``).

For ``m >= 3`` elements are kept in Garside normal form ``m_1 ... m_k Delta^l``: the ``m_i`` are atoms (proper
alternating positive words) and consecutive atoms are left-weighted, meaning the last letter of ``m_i`` is the
first letter of ``m_(i+1)``.  Since the form is unique, the word problem is equality of normal forms.  For
``m = 2`` the group is ``Z^2`` and elements are kept as ``s^p t^q``.

Conjugation by ``Delta`` (``tau``) swaps ``s`` and ``t`` when ``m`` is odd and is trivial when ``m`` is even.
"""
import abc
from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .exceptions import ModulusMismatchException, IdentityInputException, SpecException, PreconditionException
from .logger import logger
from .syllables import reduce, cyclic_reduce, cyclically_equal
from .word import Word, Letter, as_word, DIHEDRAL_ALPHABET

OTHER = {'s': 't', 't': 's'}


def other(letter: str) -> str:
    return OTHER[letter]


def alternating(start: str, length: int) -> tuple[str, ...]:
    """
    >>> alternating('s', 3)
    ('s', 't', 's')
    """
    return tuple(start if i % 2 == 0 else OTHER[start] for i in range(length))


class Atom(namedtuple("AtomTuple", ["start", "length"])):
    """
    Alternating positive word of the given length starting with ``start``; a proper simple element when
    ``1 <= length <= m - 1``.

    >>> str(Atom('t', 2)), Atom('t', 2).last, Atom('s', 3).last
    ('ts', 's', 's')
    """

    @property
    def letters(self) -> tuple[str, ...]:
        return alternating(self.start, self.length)

    @property
    def last(self) -> str:
        return self.start if self.length % 2 else OTHER[self.start]

    def twist(self, k: int, m: int) -> 'Atom':
        """Image under ``tau^k``."""
        if m % 2 and k % 2:
            return Atom(OTHER[self.start], self.length)
        return self

    def word(self) -> Word:
        return Word(Letter(x, 1) for x in self.letters)

    def __str__(self):
        return ''.join(self.letters)


def atoms_of(m: int) -> tuple[Atom, ...]:
    """
    The ``2(m - 1)`` atoms, ordered by start letter then length.

    >>> len(atoms_of(3)), len(atoms_of(5))
    (4, 8)
    """
    return tuple(Atom(x, n) for x in DIHEDRAL_ALPHABET for n in range(1, m))


class DihedralElement(metaclass=abc.ABCMeta):
    """
    Common interface of :class:`GarsideNF` and :class:`AbelianNF`.
    """
    modulus: int

    @property
    @abc.abstractmethod
    def is_identity(self) -> bool:
        pass

    @property
    @abc.abstractmethod
    def abelianization(self) -> int:
        pass

    @abc.abstractmethod
    def word(self) -> Word:
        """A word representing this element."""
        pass

    @abc.abstractmethod
    def _multiply(self, other: 'DihedralElement') -> 'DihedralElement':
        pass

    @abc.abstractmethod
    def twist(self, k: int = 1) -> 'DihedralElement':
        """``Delta^-k x Delta^k``."""
        pass

    def __mul__(self, other: 'DihedralElement') -> 'DihedralElement':
        if self.modulus != other.modulus:
            raise ModulusMismatchException(f"Cannot combine elements with m={self.modulus} and m={other.modulus}")
        return self._multiply(other)

    def inverse(self) -> 'DihedralElement':
        return normal_form(self.word().inverse, self.modulus)

    def __pow__(self, k: int) -> 'DihedralElement':
        base = self if k >= 0 else self.inverse()
        result = identity(self.modulus)
        for _ in range(abs(k)):
            result = result * base
        return result


@dataclass(frozen=True, order=True)
class GarsideNF(DihedralElement):
    """
    Normal form ``atoms[0] ... atoms[-1] Delta^delta_exp`` of an element of the dihedral Artin group with label
    ``modulus >= 3``.  Equal elements have field-wise equal normal forms.
    """
    atoms: tuple[Atom, ...]
    delta_exp: int
    modulus: int

    @property
    def is_identity(self) -> bool:
        return not self.atoms and self.delta_exp == 0

    @property
    def abelianization(self) -> int:
        return sum(a.length for a in self.atoms) + self.modulus * self.delta_exp

    @property
    def infimum(self) -> int:
        return self.delta_exp

    @property
    def supremum(self) -> int:
        return self.delta_exp + len(self.atoms)

    @property
    def canonical_length(self) -> int:
        return len(self.atoms) + abs(self.delta_exp)

    @property
    def sort_key(self):
        return len(self.atoms), abs(self.delta_exp), self.atoms, self.delta_exp

    def word(self) -> Word:
        letters = [Letter(x, 1) for atom in self.atoms for x in atom.letters]
        return Word(letters) * delta_word(self.modulus).power(self.delta_exp)

    def _multiply(self, other: 'GarsideNF') -> 'GarsideNF':
        atoms = list(self.atoms)
        extracted = 0
        for atom in other.atoms:
            atoms.append(atom.twist(self.delta_exp + extracted, self.modulus))
            extracted += _left_weight(atoms, self.modulus, len(atoms) - 2)
        return GarsideNF(tuple(atoms), self.delta_exp + other.delta_exp + extracted, self.modulus)

    def twist(self, k: int = 1) -> 'GarsideNF':
        return GarsideNF(tuple(a.twist(k, self.modulus) for a in self.atoms), self.delta_exp, self.modulus)

    def __str__(self):
        body = '.'.join(str(a) for a in self.atoms)
        if self.delta_exp:
            delta = 'D' if self.delta_exp == 1 else f'D^{self.delta_exp}'
            return f"{body} {delta}" if body else delta
        return body or 'e'


@dataclass(frozen=True, order=True)
class AbelianNF(DihedralElement):
    """
    ``s^p t^q`` in the label 2 group, which is free abelian on ``s`` and ``t``.
    """
    p: int
    q: int
    modulus: int = 2

    @property
    def is_identity(self) -> bool:
        return self.p == 0 and self.q == 0

    @property
    def abelianization(self) -> int:
        return self.p + self.q

    @property
    def canonical_length(self) -> int:
        return abs(self.p) + abs(self.q)

    @property
    def sort_key(self):
        return self.canonical_length, self.p, self.q

    def word(self) -> Word:
        return Word.power_of('s', self.p) * Word.power_of('t', self.q)

    def _multiply(self, other: 'AbelianNF') -> 'AbelianNF':
        return AbelianNF(self.p + other.p, self.q + other.q)

    def twist(self, k: int = 1) -> 'AbelianNF':
        return self

    def __str__(self):
        return str(self.word())


def _left_weight(atoms: list, m: int, start: int = 0) -> int:
    """
    Slide letters leftward until every adjacent pair of ``atoms`` is left-weighted, in place.  Any ``Delta``
    that forms is pulled out to the right (twisting the atoms it passes).  Returns the number of ``Delta``
    factors pulled out.
    """
    extracted = 0
    i = max(start, 0)
    while i < len(atoms) - 1:
        a, b = atoms[i], atoms[i + 1]
        if a.last == b.start:
            i += 1
            continue
        total = a.length + b.length
        if total < m:
            atoms[i:i + 2] = [Atom(a.start, total)]
        else:
            rest = total - m
            tail = ([Atom(a.start if m % 2 == 0 else OTHER[a.start], rest)] if rest else []) + atoms[i + 2:]
            atoms[i:] = [x.twist(1, m) for x in tail]
            extracted += 1
        logger.verbose("left weighting step at %d gives %s", i, '.'.join(str(x) for x in atoms))
        i = max(i - 1, 0)
    return extracted


def identity(m: int) -> DihedralElement:
    return AbelianNF(0, 0) if m == 2 else GarsideNF((), 0, m)


def delta(m: int) -> DihedralElement:
    """
    The Garside element; for ``m = 2`` this is ``st``.
    """
    return AbelianNF(1, 1) if m == 2 else GarsideNF((), 1, m)


def delta_word(m: int) -> Word:
    return Word(Letter(x, 1) for x in alternating('s', m))


def _check_modulus(m: int):
    if m < 2:
        raise PreconditionException(f"Dihedral label must be at least 2, got {m}")


def normal_form(w, m: int) -> DihedralElement:
    """
    Normal form of a word over ``s, t``.

    >>> str(normal_form("s t s", 3))
    'D'
    >>> str(normal_form("s t s^-1", 3))
    'st.ts D^-1'
    >>> normal_form("s t^2 s^-1", 2)
    AbelianNF(p=0, q=2, modulus=2)
    """
    _check_modulus(m)
    w = as_word(w)
    if m == 2:
        return AbelianNF(sum(e for g, e in w if g == 's'), sum(e for g, e in w if g == 't'))
    atoms = []
    delta_exp = 0
    for g, e in w:
        if e > 0:
            atoms.append(Atom(g, 1).twist(delta_exp, m))
        else:
            atoms.append(Atom(OTHER[g], m - 1).twist(delta_exp, m))
            delta_exp -= 1
        delta_exp += _left_weight(atoms, m, len(atoms) - 2)
    return GarsideNF(tuple(atoms), delta_exp, m)


def letter_form(generator: str, exponent: int, m: int) -> DihedralElement:
    return normal_form(Word.power_of(generator, exponent), m)


def multiply(x: DihedralElement, y: DihedralElement) -> DihedralElement:
    return x * y


def invert(x: DihedralElement) -> DihedralElement:
    return x.inverse()


def power(x: DihedralElement, k: int) -> DihedralElement:
    return x ** k


def equals(x, y, m: int) -> bool:
    """
    Word problem.

    >>> equals("s t s", "t s t", 3), equals("s t", "t s", 3), equals("s t s t", "t s t s", 4)
    (True, False, True)
    """
    return normal_form(x, m) == normal_form(y, m)


def tau(x: DihedralElement) -> DihedralElement:
    """
    Conjugation by the Garside element, ``Delta^-1 x Delta``.

    >>> str(tau(normal_form("s", 3))), str(tau(normal_form("s", 4)))
    ('t', 's')
    """
    return x.twist(1)


def abelianization(w) -> int:
    return as_word(w).abelianization


def ball(m: int, radius: int) -> Iterator[DihedralElement]:
    """
    Every element of canonical length at most ``radius`` (atoms plus ``|delta_exp|``; ``|p| + |q|`` for
    ``m = 2``), shortest first and in a fixed order within each length.

    >>> sum(1 for _ in ball(3, 1))
    7
    """
    _check_modulus(m)
    if m == 2:
        for length in range(radius + 1):
            for p in range(-length, length + 1):
                rest = length - abs(p)
                for q in dict.fromkeys((rest, -rest)):
                    yield AbelianNF(p, q)
        return
    for length in range(radius + 1):
        for k in range(length + 1):
            ell = length - k
            for sequence in left_weighted_sequences(m, k):
                for d in dict.fromkeys((ell, -ell)):
                    yield GarsideNF(sequence, d, m)


@lru_cache(maxsize=64)
def left_weighted_sequences(m: int, k: int) -> tuple[tuple[Atom, ...], ...]:
    """
    All left-weighted sequences of exactly ``k`` atoms.  There are ``2 (m - 1)^k`` of them for ``k >= 1``.

    >>> len(left_weighted_sequences(3, 3)), len(left_weighted_sequences(4, 2))
    (16, 18)
    """
    if k == 0:
        return ((),)
    result = []
    for prefix in left_weighted_sequences(m, k - 1):
        starts = (prefix[-1].last,) if prefix else DIHEDRAL_ALPHABET
        for x in starts:
            for n in range(1, m):
                result.append(prefix + (Atom(x, n),))
    return tuple(result)


GeneratorPower = namedtuple("GeneratorPower", ["generators", "power"])


class TreeElliptic(namedtuple("TreeEllipticTuple", ["generators", "power"])):
    """
    Conjugate to ``x^power`` for ``x`` in ``generators``.  For odd labels ``s`` and ``t`` are conjugate, so the
    class holds both.
    """
    is_tree = True

    def __str__(self):
        return f"TreeElliptic({'|'.join(self.generators)}, {self.power})"


class VertexElliptic(namedtuple("VertexEllipticTuple", [])):
    """
    Fixes only the type 2 vertex of its vertex group.
    """
    is_tree = False

    def __str__(self):
        return "VertexElliptic"


def generator_classes(m: int) -> tuple[tuple[str, ...], ...]:
    return (('s', 't'),) if m % 2 else (('s',), ('t',))


def quotient_form(w, m: int) -> tuple[tuple[int, int], ...]:
    """
    Cyclically reduced image in the central quotient (``Z/2 * Z/m`` for odd ``m``, ``Z/(m/2) * Z`` for even).
    """
    syllables, _ = reduce(as_word(w).codes(), m)
    return cyclic_reduce(syllables, m)


def conjugate_to_generator_power(w, m: int) -> GeneratorPower | None:
    """
    Decide whether ``w`` is conjugate to a nontrivial power of a standard generator.  Conjugacy is decided in
    the central quotient by cyclic reduction, and the abelianization pins down the central part: the kernel is
    generated by a power of ``Delta``, whose abelianization is nonzero.

    >>> conjugate_to_generator_power("t s t^-1", 3)
    GeneratorPower(generators=('s', 't'), power=1)
    >>> conjugate_to_generator_power("s t", 3) is None
    True
    >>> conjugate_to_generator_power("s^4", 4)
    GeneratorPower(generators=('s',), power=4)
    """
    w = as_word(w)
    nf = normal_form(w, m)
    if nf.is_identity:
        raise IdentityInputException(f"{w} is the identity")
    if m == 2:
        if nf.q == 0:
            return GeneratorPower(('s',), nf.p)
        if nf.p == 0:
            return GeneratorPower(('t',), nf.q)
        return None
    k = w.abelianization
    if k == 0:
        return None
    image = quotient_form(w, m)
    for generators in generator_classes(m):
        if cyclically_equal(image, quotient_form(Word.power_of(generators[0], k), m)):
            return GeneratorPower(generators, k)
    return None


def classify_elliptic(w, m: int) -> TreeElliptic | VertexElliptic:
    """
    >>> str(classify_elliptic("s^2", 3)), str(classify_elliptic("s t", 3)), str(classify_elliptic("s t", 2))
    ('TreeElliptic(s|t, 2)', 'VertexElliptic', 'VertexElliptic')
    """
    found = conjugate_to_generator_power(w, m)
    if found is None:
        return VertexElliptic()
    return TreeElliptic(*found)


TreeSpec = namedtuple("TreeSpec", ["conjugator", "generator", "power"])


def tree_spec(conjugator, generator: str, power_: int) -> TreeSpec:
    """
    Validated ``conjugator generator^power conjugator^-1`` description.
    """
    conjugator = as_word(conjugator)
    if generator not in DIHEDRAL_ALPHABET:
        raise SpecException(f"Generator must be s or t, got {generator!r}")
    if power_ == 0:
        raise SpecException("A tree-elliptic power must be nonzero")
    return TreeSpec(conjugator, generator, power_)


def spec_word(spec: TreeSpec) -> Word:
    return spec.conjugator * Word.power_of(spec.generator, spec.power) * spec.conjugator.inverse


def vertex_elliptic_product(a: TreeSpec, b: TreeSpec) -> Word:
    """
    For ``a = g x^n g^-1`` and ``b = h y^k h^-1`` return ``a^k b^-n``, which has abelianization zero.

    >>> str(vertex_elliptic_product(tree_spec("", "s", 1), tree_spec("", "t", 1)))
    's t^-1'
    >>> str(vertex_elliptic_product(tree_spec("", "s", 2), tree_spec("", "t", 3)))
    's^6 t^-6'
    """
    for spec in (a, b):
        if not isinstance(spec, TreeSpec) or spec.power == 0:
            raise SpecException(f"Malformed tree-elliptic spec {spec!r}")
    return spec_word(a).power(b.power) * spec_word(b).power(-a.power)
