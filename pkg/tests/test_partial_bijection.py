import pytest
from hypothesis import given
from hypothesis import strategies as st

from invgeom import PartialBijection, SizeMismatchError, compose, invert

from conftest import enumerate_partial_bijections


@st.composite
def partial_bijections(draw, n=None):
    if n is None:
        n = draw(st.integers(min_value=1, max_value=5))
    k = draw(st.integers(min_value=0, max_value=n))
    dom = draw(st.permutations(range(n)))[:k]
    ran = draw(st.permutations(range(n)))[:k]
    img = [None] * n
    for x, y in zip(dom, ran):
        img[x] = y
    return PartialBijection(n, tuple(img))


@st.composite
def bijection_triples(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    return tuple(draw(partial_bijections(n=n)) for _ in range(3))


swap = PartialBijection.transposition(2, 0, 1)
e0 = PartialBijection.partial_identity(2, [0])
e1 = PartialBijection.partial_identity(2, [1])


def test_compose_identity_absorbs_everywhere():
    ident = PartialBijection.identity(2)
    for f in enumerate_partial_bijections(2):
        assert compose(ident, f) == f
        assert compose(f, ident) == f


def test_compose_empty_is_absorbing():
    empty = PartialBijection.empty(2)
    assert compose(empty, swap) == empty
    assert compose(swap, empty) == empty


def test_compose_partial_identity_with_swap():
    # e1 after swap keeps only 0 |-> 1
    assert compose(e1, swap) == PartialBijection(2, (1, None))
    # and the other order keeps only 1 |-> 0
    assert compose(e0, swap) == PartialBijection(2, (None, 0))


def test_invert_examples():
    assert invert(swap) == swap
    assert invert(PartialBijection(2, (1, None))) == PartialBijection(2, (None, 0))
    assert invert(e0) == e0


def test_size_mismatch():
    with pytest.raises(SizeMismatchError):
        compose(swap, PartialBijection.identity(3))


def test_not_injective_rejected():
    with pytest.raises(ValueError):
        PartialBijection(2, (0, 0))
    with pytest.raises(ValueError):
        PartialBijection(2, (2, None))


@given(bijection_triples())
def test_compose_associative(triple):
    f, g, h = triple
    assert compose(compose(h, g), f) == compose(h, compose(g, f))


@given(partial_bijections())
def test_invert_involution(f):
    assert invert(invert(f)) == f


@given(partial_bijections())
def test_inverse_laws(f):
    fi = invert(f)
    assert compose(f, compose(fi, f)) == f
    assert compose(fi, compose(f, fi)) == fi


@given(partial_bijections())
def test_dom_ran_are_partial_identities(f):
    dom = compose(invert(f), f)
    ran = compose(f, invert(f))
    assert dom == PartialBijection.partial_identity(f.ground_size, f.domain())
    assert ran == PartialBijection.partial_identity(f.ground_size, f.range())


@given(partial_bijections())
def test_sort_key_orders_undefined_last(f):
    key = f.sort_key()
    for x, y in enumerate(f.image):
        if y is None:
            assert key[x] == f.ground_size
        else:
            assert key[x] == y
