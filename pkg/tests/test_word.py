import pytest

from artin import GraphSyntaxException
from artin.word import Word, Letter, as_word, decode


def test_parse_exponents():
    """
    Exponents expand into single letters, braced or not.
    """
    w = Word.parse("s^2 t^{-1}")
    assert list(w) == [Letter('s', 1), Letter('s', 1), Letter('t', -1)]
    assert str(w) == 's^2 t^-1'


def test_parse_identity_tokens():
    assert Word.parse("") == Word()
    assert Word.parse("e") == Word()
    assert Word.parse("1") == Word()
    assert str(Word()) == 'e'


def test_parse_run_together():
    assert Word.parse("sts") == Word.parse("s t s")


def test_parse_other_alphabet():
    w = Word.parse("a c^-1", alphabet=("a", "b", "c"))
    assert w.generators == frozenset("ac")
    assert w.abelianization == 0


def test_unknown_letter():
    with pytest.raises(GraphSyntaxException):
        Word.parse("s x t")


def test_inverse_and_reduction():
    w = Word.parse("s t^-1 s")
    assert str(w.inverse) == 's^-1 t s^-1'
    assert (w * w.inverse).free_reduce() == Word()


def test_power():
    w = Word.parse("s t")
    assert str(w.power(3)) == 's t s t s t'
    assert w.power(-1) == w.inverse
    assert w.power(0) == Word()


def test_rename():
    assert str(Word.parse("s t").rename({'s': 'a', 't': 'b'})) == 'a b'


def test_codes_decode():
    w = Word.parse("s t^-1 t s^-1")
    assert w.codes().tolist() == [0, 3, 2, 1]
    assert decode(w.codes().tolist()) == w


def test_as_word_rejects_numbers():
    with pytest.raises(GraphSyntaxException):
        as_word(3)
