import pytest
from hypothesis import given, settings, assume, strategies as st

from artin import IdentityInputException, PreconditionException, SpecException
from artin.garside import normal_form, equals, tau, delta, delta_word, identity, letter_form, ball, atoms_of, \
    alternating, left_weighted_sequences, GarsideNF, AbelianNF, Atom, classify_elliptic, TreeElliptic, VertexElliptic, \
    conjugate_to_generator_power, tree_spec, spec_word, vertex_elliptic_product
from artin.linkgeom import same_tree
from artin.oracles import brute_conjugacy_search
from artin.word import Word

LETTERS = st.sampled_from(["s", "t", "s^-1", "t^-1"])
SHORT_WORDS = st.lists(LETTERS, max_size=2).map(" ".join)
POWERS = st.integers(1, 3) | st.integers(-3, -1)


def test_braid_relation():
    assert equals("s t s", "t s t", 3)
    assert equals("s t s t", "t s t s", 4)
    assert not equals("s t", "t s", 3)
    assert equals("s t", "t s", 2)


def test_delta():
    for m in range(3, 7):
        assert normal_form(delta_word(m), m) == delta(m)
        assert str(delta(m)) == 'D'


@pytest.mark.parametrize('m', [3, 5])
def test_tau_swaps_for_odd_labels(m):
    s, t = letter_form('s', 1, m), letter_form('t', 1, m)
    assert tau(s) == t
    assert tau(t) == s


@pytest.mark.parametrize('m', [4, 6])
def test_tau_fixes_atoms_for_even_labels(m):
    for atom in atoms_of(m):
        element = GarsideNF((atom,), 0, m)
        assert tau(element) == element


@pytest.mark.parametrize('m', [3, 4, 5, 6])
def test_delta_twists(m):
    """
    ``x Delta = Delta tau(x)`` for every atom, and ``Delta^2`` is central.
    """
    d = delta(m)
    for atom in atoms_of(m):
        x = GarsideNF((atom,), 0, m)
        assert x * d == d * tau(x)
        assert x * d * d == d * d * x


@pytest.mark.parametrize('m', [2, 3, 4, 5])
def test_inverse(m):
    for w in ["s", "s t^-1", "t^-2 s t s^-1", "s t s t s"]:
        x = normal_form(w, m)
        assert (x * x.inverse()).is_identity
        assert x.inverse() == normal_form(Word.parse(w).inverse, m)


def test_power():
    x = normal_form("s t", 3)
    assert x ** 3 == delta(3) ** 2
    assert (x ** -2) * (x ** 2) == identity(3)


def test_normal_form_shape():
    nf = normal_form("s t s^-1", 3)
    assert nf.atoms == (Atom('s', 2), Atom('t', 2))
    assert nf.delta_exp == -1
    assert nf.infimum == -1 and nf.supremum == 1
    assert nf.abelianization == 1


def test_abelian_normal_form():
    assert normal_form("s t^2 s^-1", 2) == AbelianNF(0, 2)
    assert delta(2) == AbelianNF(1, 1)


def test_label_must_be_at_least_two():
    with pytest.raises(PreconditionException):
        normal_form("s", 1)


def test_ball_sizes():
    assert sum(1 for _ in ball(3, 1)) == 7
    assert len(left_weighted_sequences(3, 3)) == 16
    assert len(left_weighted_sequences(4, 2)) == 18
    elements = list(ball(4, 3))
    assert len(elements) == len(set(elements))


def test_classify_elliptic():
    assert classify_elliptic("s^2", 3) == TreeElliptic(('s', 't'), 2)
    assert classify_elliptic("t s^3 t^-1", 4) == TreeElliptic(('s',), 3)
    assert isinstance(classify_elliptic("s t", 3), VertexElliptic)
    assert isinstance(classify_elliptic("s t^-1", 4), VertexElliptic)
    assert isinstance(classify_elliptic("s t", 2), VertexElliptic)


def test_classify_identity():
    with pytest.raises(IdentityInputException):
        classify_elliptic("s t s t^-1 s^-1 t^-1", 3)


def test_conjugate_found_by_search():
    assert conjugate_to_generator_power("t s t^-1", 3).power == 1
    found = brute_conjugacy_search("t s t^-1", "s", 3, 2)
    assert found is not None
    assert found * normal_form("t s t^-1", 3) * found.inverse() == letter_form('s', 1, 3)


def test_tree_spec_validation():
    with pytest.raises(SpecException):
        tree_spec("", "u", 1)
    with pytest.raises(SpecException):
        tree_spec("", "s", 0)
    assert str(spec_word(tree_spec("t", "s", 2))) == 't s^2 t^-1'


@pytest.mark.parametrize('m', [3, 4])
@settings(max_examples=100, deadline=None)
@given(g=SHORT_WORDS, h=SHORT_WORDS, p=POWERS, q=POWERS)
def test_vertex_elliptic_product(m, g, h, p, q):
    """
    For tree-elliptic ``a = g s^p g^-1`` and ``b = h t^q h^-1`` with different fixed trees, ``a^q b^-p`` fixes only
    a type 2 vertex.
    """
    a, b = tree_spec(g, 's', p), tree_spec(h, 't', q)
    assume(not same_tree(a, b, m))
    product = vertex_elliptic_product(a, b)
    assume(not normal_form(product, m).is_identity)
    assert isinstance(classify_elliptic(product, m), VertexElliptic)
    assert normal_form(product, m).abelianization == 0
    conjugator = brute_conjugacy_search(spec_word(a), letter_form('s', p, m), m, 2 * len(Word.parse(g)))
    assert conjugator is not None
    for x in ('s', 't'):
        for k in (-2, -1, 1, 2):
            assert brute_conjugacy_search(product, letter_form(x, k, m), m, 2) is None


@pytest.mark.parametrize('m, word', [(3, "s t"), (4, "s t"), (5, "s t"), (3, "s t s t"), (5, "s t s t")])
def test_vertex_elliptic_has_no_generator_conjugate(m, word):
    """
    These words map to nontrivial rotations of the dihedral group, so no conjugate is a generator power.
    """
    assert isinstance(classify_elliptic(word, m), VertexElliptic)
    k = Word.parse(word).abelianization
    for x in ('s', 't'):
        assert brute_conjugacy_search(word, letter_form(x, k, m), m, 3) is None


@pytest.mark.parametrize('m', [3, 4, 5])
@settings(max_examples=50, deadline=None)
@given(c=SHORT_WORDS, x=st.sampled_from(['s', 't']), k=POWERS, w=SHORT_WORDS)
def test_generator_conjugates_are_found(m, c, x, k, w):
    """
    A conjugate of a generator power is recognised, and a word the search conjugates onto one is never called
    vertex-elliptic.
    """
    conjugate = Word.parse(c) * Word.power_of(x, k) * Word.parse(c).inverse
    assert conjugate_to_generator_power(conjugate, m).power == k
    assume(not normal_form(w, m).is_identity)
    target = letter_form(x, normal_form(w, m).abelianization or 1, m)
    if brute_conjugacy_search(w, target, m, 2) is not None:
        assert isinstance(classify_elliptic(w, m), TreeElliptic)


WORDS = st.lists(LETTERS, max_size=8).map(" ".join)


@pytest.mark.parametrize('m', [3, 4, 5])
@settings(max_examples=50, deadline=None)
@given(w=WORDS, position=st.integers(0, 8))
def test_relator_insertion(m, w, position):
    """
    Splicing the braid relator anywhere into a word leaves its normal form unchanged.
    """
    word = Word.parse(w)
    relator = delta_word(m) * Word.parse(" ".join(alternating('t', m))).inverse
    cut = min(position, len(word))
    spliced = Word(word[:cut]) * relator * Word(word[cut:])
    assert normal_form(spliced, m) == normal_form(word, m)


@pytest.mark.parametrize('m', [2, 3, 4])
@settings(max_examples=50, deadline=None)
@given(x=WORDS, y=WORDS)
def test_abelianization_is_a_homomorphism(m, x, y):
    product = normal_form(x, m) * normal_form(y, m)
    assert product.abelianization == normal_form(x, m).abelianization + normal_form(y, m).abelianization
    assert product == normal_form(Word.parse(x) * Word.parse(y), m)
