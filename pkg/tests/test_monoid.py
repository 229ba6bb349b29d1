import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invgeom import (
    CapacityError,
    PartialBijection,
    ValidationError,
    from_table,
    generate_monoid,
    mulclose,
    natural_leq_matrix,
    trivial_monoid,
)

from conftest import enumerate_partial_bijections

swap = PartialBijection.transposition(2, 0, 1)
e0 = PartialBijection.partial_identity(2, [0])


def elt(monoid, *image):
    """Index of the element with the given image array."""
    target = tuple(image)
    for i, f in enumerate(monoid.elements):
        if f.image == target:
            return i
    raise AssertionError(f"no element with image {target}")


def test_generate_empty_gives_trivial():
    m = generate_monoid([])
    assert m.order == 1
    assert m.identity == 0
    assert m.idempotents == (0,)


def test_generate_i2_matches_enumeration(i2):
    expected = {f.image for f in enumerate_partial_bijections(2)}
    assert {f.image for f in i2.elements} == expected
    assert i2.order == 7


def test_generate_from_swap_and_partial_identity():
    m = generate_monoid([swap, e0])
    assert m.order == 7


def test_generate_i3_matches_enumeration(i3):
    expected = {f.image for f in enumerate_partial_bijections(3)}
    assert {f.image for f in i3.elements} == expected
    assert i3.order == 34


def test_closure_is_closed(i2):
    n = i2.order
    for a in range(n):
        for b in range(n):
            assert 0 <= i2.mul(a, b) < n
        assert i2.mul(a, i2.inv(a)) == i2.ran(a)


def test_element_cap():
    gens = [
        PartialBijection.transposition(3, i, j)
        for i in range(3)
        for j in range(i + 1, 3)
    ] + [PartialBijection.partial_identity(3, [0, 1])]
    with pytest.raises(CapacityError, match="10"):
        generate_monoid(gens, element_cap=10)


def test_from_table_trivial():
    m = from_table([[0]], 0)
    assert m.order == 1 and m.identity == 0


def test_from_table_two_element_semilattice():
    m = from_table([[0, 1], [1, 1]], 0)
    assert m.idempotents == (0, 1)
    assert m.inv(1) == 1


def test_from_table_round_trip(i2):
    m = from_table([[int(v) for v in row] for row in i2.product], i2.identity)
    assert np.array_equal(m.product, i2.product)
    assert np.array_equal(m.inverse, i2.inverse)
    assert np.array_equal(m.idempotent_mask, i2.idempotent_mask)
    assert m.identity == i2.identity


def test_from_table_rejects_non_associative():
    table = [
        [0, 1, 2],
        [1, 2, 1],
        [2, 1, 1],
    ]
    with pytest.raises(ValidationError) as err:
        from_table(table, 0)
    assert err.value.witness is not None
    i, j, k = err.value.witness
    t = np.array(table)
    assert t[t[i, j], k] != t[i, t[j, k]]


def test_from_table_rejects_non_unique_inverse():
    # identity adjoined to the left-zero semigroup on {1, 2}
    table = [
        [0, 1, 2],
        [1, 1, 1],
        [2, 2, 2],
    ]
    with pytest.raises(ValidationError, match="inverse"):
        from_table(table, 0)


def test_from_table_rejects_bad_identity():
    with pytest.raises(ValidationError):
        from_table([[0, 0], [0, 0]], 1)


def test_dom_ran_examples(i2):
    a = elt(i2, 1, None)  # 0 |-> 1
    assert i2.dom(a) == elt(i2, 0, None)
    assert i2.ran(a) == elt(i2, None, 1)
    for e in i2.idempotents:
        assert i2.dom(e) == e and i2.ran(e) == e
    assert i2.dom(elt(i2, 1, 0)) == i2.identity


def test_natural_leq_examples(i2):
    a = elt(i2, 1, None)
    sw = elt(i2, 1, 0)
    for s in range(i2.order):
        assert i2.natural_leq(s, s)
    assert i2.natural_leq(a, sw)
    assert not i2.natural_leq(sw, i2.identity)


@pytest.mark.parametrize("fixture", ["i2", "i3"])
def test_natural_leq_closed_form(fixture, request):
    m = request.getfixturevalue(fixture)
    for s in range(m.order):
        for t in range(m.order):
            closed = m.mul(m.ran(s), t) == s
            assert m.natural_leq(s, t) == closed


def test_natural_leq_matrix_agrees(i2):
    leq = natural_leq_matrix(i2)
    for s in range(i2.order):
        for t in range(i2.order):
            assert leq[s, t] == i2.natural_leq(s, t)


def test_green_relations(i2):
    a = elt(i2, 1, None)
    e0i = elt(i2, 0, None)
    assert i2.green_L(a, a)
    assert i2.green_L(e0i, a)
    assert not i2.green_L(i2.identity, e0i)
    assert i2.green_R(a, elt(i2, None, 1))
    assert not i2.green_R(a, e0i)


@pytest.mark.parametrize("fixture", ["i2", "i3"])
def test_left_factor_lemma(fixture, request):
    # within an L-class, s = x t forces t = x^-1 s; idempotent x forces t = s
    m = request.getfixturevalue(fixture)
    for x in range(m.order):
        for t in range(m.order):
            s = m.mul(x, t)
            if m.dom(s) != m.dom(t):
                continue
            assert m.mul(m.inv(x), s) == t
            if m.is_idempotent(x):
                assert s == t


@pytest.mark.parametrize("fixture", ["i2", "i3"])
def test_dom_of_product_descends(fixture, request):
    m = request.getfixturevalue(fixture)
    for s in range(m.order):
        for t in range(m.order):
            assert m.natural_leq(m.dom(m.mul(s, t)), m.dom(t))


def test_idempotents_form_commuting_subsemigroup(i3):
    for e in i3.idempotents:
        for f in i3.idempotents:
            ef = i3.mul(e, f)
            assert i3.is_idempotent(ef)
            assert ef == i3.mul(f, e)


def test_unique_inverse_invariant(i3):
    for s in range(i3.order):
        candidates = [
            t
            for t in range(i3.order)
            if i3.mul(i3.mul(s, t), s) == s and i3.mul(i3.mul(t, s), t) == t
        ]
        assert candidates == [i3.inv(s)]


def test_lclasses_partition(i3):
    seen = sorted(s for cls in i3.lclasses for s in cls)
    assert seen == list(range(i3.order))
    for cls in i3.lclasses:
        doms = {i3.dom(s) for s in cls}
        assert len(doms) == 1


def test_mulclose():
    m = trivial_monoid()
    assert mulclose(m.product, {0}) == frozenset({0})
    assert mulclose(m.product, set()) == frozenset()


def test_sampled_associativity_path():
    from invgeom import SweepConfig

    cfg = SweepConfig(assoc_exhaustive_cap=2, assoc_samples=5000)
    m = generate_monoid([swap, e0], config=cfg)
    assert m.order == 7
    table = [
        [0, 1, 2],
        [1, 2, 1],
        [2, 1, 1],
    ]
    with pytest.raises(ValidationError):
        from_table(table, 0, config=cfg)


@st.composite
def generator_lists(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    count = draw(st.integers(min_value=1, max_value=2))
    gens = []
    for _ in range(count):
        k = draw(st.integers(min_value=0, max_value=n))
        dom = draw(st.permutations(range(n)))[:k]
        ran = draw(st.permutations(range(n)))[:k]
        gens.append(
            PartialBijection.from_pairs(n, list(zip(dom, ran)))
        )
    return gens


@given(generator_lists())
@settings(max_examples=40, deadline=None)
def test_generated_monoids_satisfy_the_axioms(gens):
    # the builder validates; these re-check a sample of laws independently
    m = generate_monoid(gens)
    assert m.order <= 34
    for s in range(m.order):
        assert m.mul(m.mul(s, m.inv(s)), s) == s
        for t in range(m.order):
            assert m.natural_leq(m.dom(m.mul(s, t)), m.dom(t))
