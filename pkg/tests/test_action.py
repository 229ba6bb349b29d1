import dataclasses
import math

import numpy as np
import pytest

from invgeom import (
    EtaleAction,
    MetricPresheaf,
    PreconditionError,
    Semilattice,
    cayley_self_action,
    check_theta_isometry,
    coboundedness_constant,
    from_table,
    properness_witness,
    trivial_monoid,
    validate_action,
)
from invgeom.action import _qualifying, coset_cover_holds
from invgeom.families import cyclic_group_table


def elt(monoid, *image):
    target = tuple(image)
    return next(i for i, f in enumerate(monoid.elements) if f.image == target)


@pytest.fixture(scope="module")
def trivial_action():
    m = trivial_monoid()
    return cayley_self_action(m, [])


def stranded_point_action():
    """I1 acting with an extra point no orbit reaches."""
    m = from_table([[0, 1], [1, 1]], 0)  # two-element semilattice {1, e}
    base = Semilattice(
        meet=np.array([[0, 1], [1, 1]], dtype=np.int32), labels=(0, 1)
    )
    # point 0 over the identity, points 1 and 2 over e
    proj = [0, 1, 1]
    restrict = [[0, 1], [1, 1], [2, 2]]
    p = MetricPresheaf.build(base, proj, restrict, edges=[(1, 2)])
    act = np.array(restrict, dtype=np.int32)
    return EtaleAction(monoid=m, presheaf=p, act=act)


def half_rotation_action():
    """Z/2 = {0, 2} inside Z/4 acting on the 4-cycle by rotation."""
    m = from_table([[0, 1], [1, 0]], 0)
    base = Semilattice(meet=np.array([[0]], dtype=np.int32), labels=(0,))
    proj = [0, 0, 0, 0]
    restrict = [[0], [1], [2], [3]]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
    p = MetricPresheaf.build(base, proj, restrict, edges)
    act = np.array([[x, (x + 2) % 4] for x in range(4)], dtype=np.int32)
    return EtaleAction(monoid=m, presheaf=p, act=act)


def test_self_action_valid(i2_action, i3_action):
    assert validate_action(i2_action) == []
    assert validate_action(i3_action) == []


def test_trivial_action_valid(trivial_action):
    assert validate_action(trivial_action) == []


def test_stranded_and_half_rotation_actions_valid():
    assert validate_action(stranded_point_action()) == []
    assert validate_action(half_rotation_action()) == []


def test_tampered_action_reports_lipschitz(i3, i3_transpositions, i3_action):
    p = i3_action.presheaf
    table = p.metric.table
    units = [s for s in range(i3.order) if i3.dom(s) == i3.identity]
    u, v = units[0], None
    for cand in units[1:]:
        if table[u, cand] == 1:
            v = cand
            break
    far = next(w for w in units if table[w, i3_action.apply(v, i3.identity)] == 2)
    bad = np.array(i3_action.act)
    bad[u, i3.identity] = far
    tampered = dataclasses.replace(i3_action, act=bad)
    report = validate_action(tampered)
    kinds = {viol.check for viol in report}
    assert "lipschitz" in kinds
    lip = next(viol for viol in report if viol.check == "lipschitz")
    assert len(lip.witness) == 3


def test_tampered_action_reports_fiber_preservation(i2, i2_action):
    bad = np.array(i2_action.act)
    # send a unit into the wrong fiber
    e0 = elt(i2, 0, None)
    bad[i2.identity, i2.identity] = e0
    tampered = dataclasses.replace(i2_action, act=bad)
    kinds = {viol.check for viol in validate_action(tampered)}
    assert "fiber-preservation" in kinds
    assert "extends-restriction" in kinds


def test_theta_isometry_identity_and_idempotents(i3, i3_action):
    ok, _ = check_theta_isometry(i3_action, i3.identity)
    assert ok
    for e in i3.idempotents:
        ok, witness = check_theta_isometry(i3_action, e)
        assert ok, witness


def test_theta_isometry_all_elements(i3, i3_action):
    for s in range(i3.order):
        ok, witness = check_theta_isometry(i3_action, s)
        assert ok, witness


def test_fiber_of_image_depends_only_on_fiber(i2, i2_action):
    p = i2_action.presheaf
    for s in range(i2.order):
        seen = {}
        for x in range(p.num_points):
            key = int(p.proj[x])
            img = int(p.proj[i2_action.apply(x, s)])
            assert seen.setdefault(key, img) == img


def test_coboundedness_of_self_action(i2_action, i3_action, trivial_action):
    assert coboundedness_constant(i2_action, i2_action.monoid.identity) == 0
    assert coboundedness_constant(i3_action, i3_action.monoid.identity) == 0
    assert coboundedness_constant(trivial_action, 0) == 0


def test_coboundedness_none_when_orbit_misses():
    act = stranded_point_action()
    assert coboundedness_constant(act, 0) is None


def test_coboundedness_half_rotation():
    act = half_rotation_action()
    assert coboundedness_constant(act, 0) == 1


def test_coboundedness_requires_identity_fiber(i2, i2_action):
    e0 = elt(i2, 0, None)
    with pytest.raises(PreconditionError):
        coboundedness_constant(i2_action, e0)


def test_displacement_always_finite(i3, i3_action):
    table = i3_action.presheaf.metric.table
    x1 = i3.identity
    for s in range(i3.order):
        a = i3_action.apply(x1, s)
        b = i3_action.apply(x1, i3.dom(s))
        assert math.isfinite(table[a, b])


def test_properness_witness_i2(i2, i2_swap, i2_action):
    x1 = i2.identity
    cover = properness_witness(i2_action, x1, 1)
    qualifying = _qualifying(i2_action, x1, 1)
    assert coset_cover_holds(i2, cover, qualifying)
    # the word-length cover {1} u M works too
    assert coset_cover_holds(i2, (i2.identity, i2_swap), qualifying)
    assert set(cover) <= {i2.identity, i2_swap}


def test_properness_witness_radius_zero_free_orbit():
    z3 = from_table(cyclic_group_table(3), 0)
    act = cayley_self_action(z3, [1, 2])
    assert properness_witness(act, 0, 0) == (0,)


def test_properness_witness_needs_identity_fiber(i2, i2_action):
    with pytest.raises(PreconditionError):
        properness_witness(i2_action, elt(i2, 0, None), 1)


def test_basepoint_shift(i3, i3_transpositions, i3_action):
    # a cover at radius R + 2D for one basepoint covers radius R for another
    p = i3_action.presheaf
    x1 = i3.identity
    for z1 in i3_action.identity_fiber():
        d = p.metric.dist(x1, z1)
        for radius in (0, 1, 2):
            cover = properness_witness(i3_action, x1, radius + 2 * d)
            qualifying = _qualifying(i3_action, z1, radius)
            assert coset_cover_holds(i3, cover, qualifying), (z1, radius)


def test_action_table_shape_checked(i2, i2_action):
    with pytest.raises(Exception):
        EtaleAction(
            monoid=i2,
            presheaf=i2_action.presheaf,
            act=np.zeros((2, 2), dtype=np.int32),
        )
