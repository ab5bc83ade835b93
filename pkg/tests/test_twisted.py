import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathlab.automorphisms import LampAutSpec, NoBlocksError, block_positions, pair_index
from wreathlab.groups import (
    CapacityError,
    GroupAut,
    abelian_groups,
    automorphism_group,
    cyclic,
    dihedral,
    direct_sum,
    identity_aut,
    inner_aut,
    iter_automorphisms,
    multiplication_aut,
    parse_group_spec,
    quaternion8,
    symmetric,
)
from wreathlab.twisted import (
    DomainError,
    UnionFind,
    block_class_count,
    block_fixed_points,
    block_table,
    normalize_window,
    reidemeister_abelian,
    reidemeister_fh,
    reidemeister_wreath,
    twisted_classes,
    window_class_count,
    window_orbit_count,
)
from wreathlab.wreath import element


def naive_classes(G, phi):
    """Orbits of ``a -> s a phi(s)^-1`` by plain set search."""
    seen, count = set(), 0
    for a in G.elements:
        if a in seen:
            continue
        count += 1
        stack = [a]
        seen.add(a)
        while stack:
            x = stack.pop()
            for s in G.elements:
                y = G.mul(G.mul(s, x), G.inv(phi(s)))
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return count


def swap_aut(n):
    # (x, y) -> (y, x) on C(n) + C(n), packed as x*n + y
    return GroupAut(tuple(y * n + x for x in range(n) for y in range(n)))


def mirror(G, k=1, c=0):
    return LampAutSpec(G, multiplication_aut(G, k), c, -1)


# -- finite groups -------------------------------------------------------------


def test_twisted_class_examples():
    assert twisted_classes(cyclic(4), identity_aut(cyclic(4))).count == 4
    assert twisted_classes(cyclic(5), multiplication_aut(cyclic(5), 2)).count == 1
    G = direct_sum(cyclic(3), cyclic(3))
    assert twisted_classes(G, swap_aut(3)).count == 3


def test_representatives_are_least_members():
    rep = twisted_classes(symmetric(3), identity_aut(symmetric(3)))
    assert rep.count == 3 and rep.representatives[0] == 0
    assert rep.representatives == sorted(rep.representatives)


def test_abelian_examples():
    for n in (1, 2, 6, 9):
        assert reidemeister_abelian(cyclic(n), identity_aut(cyclic(n))) == n
    assert reidemeister_abelian(cyclic(5), multiplication_aut(cyclic(5), 2)) == 1
    assert reidemeister_abelian(direct_sum(cyclic(2), cyclic(2)), swap_aut(2)) == 2
    with pytest.raises(DomainError):
        reidemeister_abelian(symmetric(3), identity_aut(symmetric(3)))


def test_fixed_class_examples():
    assert reidemeister_fh(symmetric(3), identity_aut(symmetric(3))) == 3
    assert reidemeister_fh(cyclic(4), identity_aut(cyclic(4))) == 4
    Q = quaternion8()
    for g in Q.elements:
        assert reidemeister_fh(Q, inner_aut(Q, g)) == 5


@pytest.mark.parametrize("spec", ["C6", "C2xC4", "C3xC3", "S3", "D8", "Q8", "A4", "D10"])
def test_three_methods_agree_with_naive_search(spec):
    G = parse_group_spec(spec)
    for phi in automorphism_group(G, cap=72):
        expected = naive_classes(G, phi)
        assert twisted_classes(G, phi).count == expected
        assert twisted_classes(G, phi, G.generators).count == expected
        assert reidemeister_fh(G, phi) == expected
        if G.is_abelian:
            assert reidemeister_abelian(G, phi) == expected


def test_abelian_groups_up_to_twelve():
    for G in abelian_groups(12):
        for phi in iter_automorphisms(G, cap=48):
            assert reidemeister_abelian(G, phi) == naive_classes(G, phi)


def test_inner_post_composition_keeps_count():
    G = symmetric(4)
    for phi in automorphism_group(G)[:6]:
        base = twisted_classes(G, phi).count
        for g in (1, 5, 17):
            assert twisted_classes(G, inner_aut(G, g).compose(phi)).count == base


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 29), st.integers(0, 29)), max_size=40))
def test_union_find_roots_are_minimal(pairs):
    uf = UnionFind(30)
    for a, b in pairs:
        uf.union(a, b)
    for x in range(30):
        r = uf.find(x)
        assert r <= x
        assert uf.find(r) == r
    # same partition as a naive closure
    comp = {x: {x} for x in range(30)}
    for a, b in pairs:
        merged = comp[a] | comp[b]
        for x in merged:
            comp[x] = merged
    for x in range(30):
        assert uf.find(x) == min(comp[x])


# -- blocks --------------------------------------------------------------------


def test_block_count_examples():
    assert block_class_count(mirror(cyclic(2)), 1) == 2
    assert block_class_count(mirror(cyclic(5), 2), 1) == 1
    assert block_class_count(mirror(cyclic(3), 2), 1) == 3


def test_block_fixed_point_examples():
    assert block_fixed_points(mirror(cyclic(2)), 1) == [(0, 0), (1, 1)]
    assert block_fixed_points(mirror(cyclic(3), 2), 1) == [(0, 0), (1, 2), (2, 1)]
    assert block_fixed_points(mirror(cyclic(5), 2), 1) == [(0, 0)]
    assert block_fixed_points(mirror(cyclic(5), 2), 0) == [(0,)]


def test_blocks_need_a_mirror():
    s = LampAutSpec(cyclic(3), identity_aut(cyclic(3)), 0, 1)
    with pytest.raises(NoBlocksError):
        block_class_count(s, 1)
    with pytest.raises(NoBlocksError):
        block_table(s, [1])


@pytest.mark.parametrize("spec", ["C2", "C3", "C4", "C5", "C6", "C2xC2", "S3", "Q8", "D8"])
def test_block_methods_agree(spec):
    G = parse_group_spec(spec)
    for xi in automorphism_group(G, cap=24):
        for c in (0, 1):
            s = LampAutSpec(G, xi, c, -1)
            for i in (c // 2, pair_index(s)):
                assert block_class_count(s, i, "orbit") == block_class_count(s, i, "fh")


def test_pair_count_is_translation_invariant():
    G = dihedral(6)
    for xi in automorphism_group(G):
        for c in (-2, 0, 1, 3):
            s = LampAutSpec(G, xi, c, -1)
            counts = {block_class_count(s, i, "fh") for i in range(-5, 6) if 2 * i != c}
            assert len(counts) == 1


def test_nontrivial_fixed_point_gives_two_classes():
    for spec in ("C2", "C3", "C4", "C6", "C2xC2", "S3"):
        G = parse_group_spec(spec)
        for xi in automorphism_group(G, cap=24):
            s = LampAutSpec(G, xi, 0, -1)
            if len(block_fixed_points(s, 1)) >= 2:
                assert block_class_count(s, 1) >= 2


def test_window_examples():
    assert window_class_count(mirror(cyclic(2)), []) == 1
    assert window_class_count(mirror(cyclic(2)), [1, 2]) == 4
    assert window_orbit_count(mirror(cyclic(2)), [1, 2]) == 4
    assert window_class_count(mirror(cyclic(5), 2), [0, 1, 2]) == 1


def test_window_normalization_merges_partners():
    s = mirror(cyclic(3), 2, 1)
    assert normalize_window(s, [1, 0, 3, -2]) == [-2, 0]
    assert window_class_count(s, [1, 0]) == window_class_count(s, [0])


@pytest.mark.parametrize("spec", ["C2", "C3", "C4", "S3"])
def test_block_product_matches_direct_count(spec):
    G = parse_group_spec(spec)
    for xi in automorphism_group(G, cap=24):
        for c in (0, 1, -1):
            s = LampAutSpec(G, xi, c, -1)
            for size in (1, 2):
                for w in itertools.combinations(range(-1, 3), size):
                    positions = {p for i in w for p in block_positions(s, i)}
                    if G.order ** len(positions) > 2000:
                        continue
                    assert window_class_count(s, w) == window_orbit_count(s, w)


def test_window_carrier_cap():
    with pytest.raises(CapacityError) as exc:
        window_orbit_count(mirror(cyclic(5), 2), [1, 2, 3], cap=1000)
    assert "--carrier-cap" in str(exc.value)


def test_block_table_rows():
    rows = block_table(mirror(cyclic(3), 2), [0, 1, -1])
    assert [r["index"] for r in rows] == [-1, 0]
    assert rows[0]["kind"] == "pair" and rows[0]["classes"] == 3
    assert rows[1]["kind"] == "middle" and rows[1]["fixed_points"] == [[0]]


# -- the wreath product ----------------------------------------------------------


def test_reidemeister_wreath_examples():
    r = reidemeister_wreath(mirror(cyclic(2)))
    assert r.kind == "infinite" and r.rule == "pair-block"
    assert r.evidence["pair_block"]["classes"] == 2
    r = reidemeister_wreath(mirror(cyclic(5), 2))
    assert r.is_finite and r.value == 2
    assert str(r) == "Finite(2)"
    for k in (1, 2, 3, 4):
        for c in (-1, 0, 5):
            r = reidemeister_wreath(LampAutSpec(cyclic(5), multiplication_aut(cyclic(5), k), c, 1))
            assert r.kind == "infinite" and r.rule == "eps=+1"


def test_wreath_value_is_sum_of_middle_counts():
    # for c odd only the twisted term has a middle block
    G = cyclic(7)
    for k in (2, 3, 4, 5):
        s = mirror(G, k, 1)
        r = reidemeister_wreath(s)
        if r.is_finite:
            middle = twisted_classes(G, multiplication_aut(G, k)).count
            assert r.value == 1 + middle


def test_conjugation_is_ignored():
    G = cyclic(5)
    k = element(G, {1: 3}, 2)
    s = LampAutSpec(G, multiplication_aut(G, 2), 0, -1, k)
    assert reidemeister_wreath(s).value == reidemeister_wreath(mirror(G, 2)).value


@pytest.mark.parametrize("method", ["orbit", "fh", "auto"])
def test_methods_give_same_wreath_answer(method):
    for n in (5, 7, 11):
        G = cyclic(n)
        for xi in iter_automorphisms(G):
            for c in (0, 1):
                s = LampAutSpec(G, xi, c, -1)
                a, b = reidemeister_wreath(s, method), reidemeister_wreath(s, "orbit")
                assert (a.kind, a.value) == (b.kind, b.value)


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        block_class_count(mirror(cyclic(3)), 1, "magic")
