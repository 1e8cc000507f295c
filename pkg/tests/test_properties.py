import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinhaus import (
    GroupElement,
    ResidueTuple,
    apply,
    build_pascal,
    build_period_grid,
    build_steinhaus,
    compose,
    derive_tuple,
    embed_pascal_in_steinhaus,
    enumerate_periodic_tuples,
    extract_center_pascal,
    gf2_kernel_basis,
    is_balanced,
    multiplicity,
    orbit_cell,
    partition_classes,
    reflect_i,
    rotate_r,
    translate,
    wendt_matrix,
)
from steinhaus.orbits import _derive_bits, periodic_tuple_bits


def residue_tuples(max_len=12, min_len=0, moduli=(2, 3, 5, 7)):
    return st.integers(min_value=min(moduli), max_value=max(moduli)).filter(
        lambda m: m in moduli
    ).flatmap(
        lambda m: st.lists(
            st.integers(min_value=0, max_value=m - 1),
            min_size=min_len,
            max_size=max_len,
        ).map(lambda entries: ResidueTuple(m, tuple(entries)))
    )


@given(residue_tuples())
def test_steinhaus_local_rule_and_cell_count(x):
    tri = build_steinhaus(x)
    assert tri.obeys_local_rule()
    assert tri.cell_count == len(x) * (len(x) + 1) // 2
    assert multiplicity(tri).total == tri.cell_count


@given(residue_tuples(min_len=1), st.data())
def test_pascal_local_rule_and_cell_count(left, data):
    m = left.modulus
    rest = data.draw(
        st.lists(
            st.integers(min_value=0, max_value=m - 1),
            min_size=len(left) - 1,
            max_size=len(left) - 1,
        )
    )
    right = ResidueTuple(m, (left[0],) + tuple(rest))
    tri = build_pascal(left, right)
    assert tri.obeys_local_rule()
    assert tri.cell_count == len(left) * (len(left) + 1) // 2
    assert tuple(row[0] for row in tri.rows) == left.entries
    assert tuple(row[-1] for row in tri.rows) == right.entries


@given(residue_tuples(moduli=(2,), min_len=1, max_len=14))
def test_balanced_spread_forced_by_parity(x):
    tri = build_steinhaus(x)
    balanced, spread = is_balanced(tri)
    if balanced:
        expected = 0 if len(x) % 4 in (0, 3) else 1
        assert spread == expected


@given(residue_tuples(min_len=1, max_len=8), st.integers(0, 20), st.integers(-15, 15))
@settings(max_examples=60)
def test_orbit_cell_agrees_with_iterated_derivation(x, i, j):
    row = x
    for _ in range(i):
        row = derive_tuple(row)
    assert orbit_cell(x, i, j) == row[j % len(x)]


@given(residue_tuples(min_len=1))
def test_reflection_is_an_involution(x):
    assert reflect_i(reflect_i(x)) == x


@given(residue_tuples(min_len=1, moduli=(2,)))
def test_rotation_has_order_three(x):
    assert rotate_r(rotate_r(rotate_r(x))) == x


@given(residue_tuples(min_len=1, moduli=(2,)))
def test_rotation_reflection_braid(x):
    ir = rotate_r(reflect_i(x))
    assert rotate_r(reflect_i(ir)) == x


def test_rotation_requires_modulus_two():
    with pytest.raises(ValueError):
        rotate_r(ResidueTuple(3, (0, 1)))


def test_embed_round_trip_exhaustive_up_to_size_8():
    for n in range(1, 9):
        for left_bits in range(1 << n):
            left = ResidueTuple(2, tuple((left_bits >> k) & 1 for k in range(n)))
            for rest in range(1 << (n - 1)):
                right = ResidueTuple(
                    2, (left[0],) + tuple((rest >> k) & 1 for k in range(n - 1))
                )
                tri = build_pascal(left, right)
                host = embed_pascal_in_steinhaus(tri)
                assert host.size == 2 * n - 1
                assert extract_center_pascal(host) == tri


def test_kernel_membership_equals_vertical_periodicity_exhaustive():
    for p in range(1, 17):
        periodic = set(periodic_tuple_bits(p))
        assert len(periodic) == 1 << len(gf2_kernel_basis(wendt_matrix(p)))
        for bits in range(1 << p):
            row = bits
            for _ in range(p):
                row = _derive_bits(row, p)
            assert (row == bits) == (bits in periodic), (p, bits)


def test_kernel_basis_vectors_independent():
    for p in (6, 7, 12, 14, 15, 24):
        basis = gf2_kernel_basis(wendt_matrix(p))
        seen = {0}
        for combo in range(1, 1 << len(basis)):
            value = 0
            for k in range(len(basis)):
                if (combo >> k) & 1:
                    value ^= basis[k]
            assert value not in seen or combo == 0
            seen.add(value)
            if combo > 4096:
                break


def test_window_independence_random():
    rng = random.Random(5)
    for text in ("010100", "000000101000111110001101", "000101000101"):
        x = ResidueTuple.from_string(text)
        grid = build_period_grid(x)
        base = grid.multiplicity()
        for _ in range(20):
            i0, j0 = rng.randrange(100), rng.randrange(100)
            assert grid.window_multiplicity(i0, j0) == base


def test_group_relations_exhaustive_small_periods():
    for p in (6, 12):
        for x in enumerate_periodic_tuples(p):
            assert rotate_r(rotate_r(rotate_r(x))) == x
            assert reflect_i(reflect_i(x)) == x
            ir = rotate_r(reflect_i(x))
            assert rotate_r(reflect_i(ir)) == x


def test_rotation_reflection_preserve_periodic_sets():
    for p in (6, 12):
        po = set(enumerate_periodic_tuples(p))
        assert {rotate_r(x) for x in po} == po
        assert {reflect_i(x) for x in po} == po


def test_translation_morphism_random():
    rng = random.Random(11)
    po = enumerate_periodic_tuples(12)
    for _ in range(50):
        x = rng.choice(po)
        u, v, u2, v2 = (rng.randrange(12) for _ in range(4))
        assert translate(translate(x, u, v), u2, v2) == translate(x, u + u2, v + v2)


def test_action_preserves_grid_multiplicity():
    rng = random.Random(13)
    po = enumerate_periodic_tuples(12)
    for _ in range(50):
        x = rng.choice(po)
        g = GroupElement(12, rng.randrange(12), rng.randrange(12), rng.randrange(3), rng.randrange(2))
        assert build_period_grid(apply(g, x)).multiplicity() == build_period_grid(x).multiplicity()


def test_class_sizes_sum_and_divide():
    for p in (6, 7, 12, 14):
        classes = partition_classes(p)
        assert sum(c.size for c in classes) == len(enumerate_periodic_tuples(p))
        for c in classes:
            assert (6 * p * p) % c.size == 0


def test_compose_is_associative():
    p = 4
    rng = random.Random(3)
    elements = [
        GroupElement(p, rng.randrange(p), rng.randrange(p), rng.randrange(3), rng.randrange(2))
        for _ in range(30)
    ]
    for g, h, k in itertools.islice(itertools.product(elements, repeat=3), 4000):
        assert compose(compose(g, h), k) == compose(g, compose(h, k))
