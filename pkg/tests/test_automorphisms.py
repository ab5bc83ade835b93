import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathlab.automorphisms import (
    BlockMap,
    CharSubgroupTag,
    LampAutSpec,
    NoBlocksError,
    all_specs,
    apply_aut,
    block_map,
    block_positions,
    char_tag,
    compose,
    format_autspec,
    identity_spec,
    inverse_spec,
    is_member,
    make_autospec,
    pair_index,
    parse_autspec,
    verify_characteristic,
    window_members,
)
from wreathlab.groups import (
    GroupAut,
    GroupError,
    automorphism_group,
    center,
    cyclic,
    dihedral,
    identity_aut,
    inner_aut,
    is_automorphism,
    multiplication_aut,
    parse_group_spec,
    quaternion8,
)
from wreathlab.wreath import AT, ball, element, identity, inverse, lamp, mul, t_power

C5 = cyclic(5)


def mirror(G, k=1, c=0):
    return LampAutSpec(G, multiplication_aut(G, k), c, -1)


def test_identity_spec_is_identity():
    G = cyclic(4)
    s = make_autospec(G, identity_aut(G), 0, 1)
    assert s == identity_spec(G)
    for g in ball(G, AT, 3):
        assert apply_aut(s, g) == g


def test_make_autospec_examples():
    s = make_autospec(C5, multiplication_aut(C5, 2), 0, -1)
    assert format_autspec(s) == "aut xi=*2 c=0 eps=-1"
    s = make_autospec(cyclic(2), identity_aut(cyclic(2)), 0, -1)
    assert s.epsilon == -1


def test_make_autospec_errors():
    with pytest.raises(GroupError):
        make_autospec(C5, identity_aut(C5), 0, 2)
    with pytest.raises(GroupError):
        make_autospec(C5, GroupAut((0, 2, 2, 3, 4)), 0, 1)
    with pytest.raises(GroupError):
        make_autospec(C5, identity_aut(C5), 0, 1, conj=identity(cyclic(3)))


def test_apply_examples():
    s = mirror(C5, 2)
    assert apply_aut(s, identity(C5)) == identity(C5)
    # the lamp g at i goes to xi(g) at c - i
    assert apply_aut(s, lamp(C5, 3, 1)) == lamp(C5, -3, 2)
    assert apply_aut(s, t_power(C5)) == t_power(C5, -1)
    s = LampAutSpec(C5, multiplication_aut(C5, 3), 2, -1)
    assert apply_aut(s, lamp(C5, 0, 1)) == lamp(C5, 2, 3)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("c", [-2, 0, 1])
def test_lamp_zero_goes_to_lamp_c(k, c):
    for eps in (1, -1):
        s = LampAutSpec(C5, multiplication_aut(C5, k), c, eps)
        assert apply_aut(s, lamp(C5, 0, 1)) == lamp(C5, c, k)


def _specs_for(G):
    return all_specs(G, offsets=(-2, 0, 1), signs=(1, -1), aut_cap=24)


@pytest.mark.parametrize("spec", ["C3", "C4", "C2xC2", "D6", "Q8"])
def test_homomorphism_and_bijection_on_ball(spec):
    G = parse_group_spec(spec)
    elems = list(ball(G, AT, 2))
    for s in _specs_for(G)[:12]:
        images = {apply_aut(s, g) for g in elems}
        assert len(images) == len(elems)
        inv = inverse_spec(s)
        for g in elems:
            assert apply_aut(inv, apply_aut(s, g)) == g
            for h in elems[:15]:
                assert apply_aut(s, mul(g, h)) == mul(apply_aut(s, g), apply_aut(s, h))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_composition_law(data):
    G = data.draw(st.sampled_from([cyclic(5), dihedral(6), quaternion8()]))
    auts = automorphism_group(G, cap=24)
    pick = lambda: LampAutSpec(G, data.draw(st.sampled_from(auts)), data.draw(st.integers(-3, 3)), data.draw(st.sampled_from([1, -1])))
    s1, s2 = pick(), pick()
    g = element(G, data.draw(st.dictionaries(st.integers(-3, 3), st.sampled_from(G.elements), max_size=3)), data.draw(st.integers(-3, 3)))
    assert apply_aut(compose(s2, s1), g) == apply_aut(s2, apply_aut(s1, g))
    assert apply_aut(compose(inverse_spec(s1), s1), g) == g


def test_composition_with_conjugation():
    G = dihedral(6)
    k1 = element(G, {0: 1}, 1)
    k2 = element(G, {2: 3}, -1)
    s1 = LampAutSpec(G, inner_aut(G, 1), 1, -1, k1)
    s2 = LampAutSpec(G, identity_aut(G), -1, 1, k2)
    for g in list(ball(G, AT, 2))[:40]:
        assert apply_aut(compose(s2, s1), g) == apply_aut(s2, apply_aut(s1, g))
        assert apply_aut(inverse_spec(s1), apply_aut(s1, g)) == g


def test_parse_autspec_forms():
    s = parse_autspec("aut xi=*2 c=0 eps=-1", C5)
    assert s == mirror(C5, 2)
    assert parse_autspec("xi=[0,3,1,4,2] c=1 eps=-1", C5).xi == multiplication_aut(C5, 3)
    assert parse_autspec("xi=0", C5) == identity_spec(C5)
    s = parse_autspec(format_autspec(mirror(C5, 4, 3)), C5)
    assert s == mirror(C5, 4, 3)


@pytest.mark.parametrize(
    "text",
    ["", "c=0", "xi=*2 c=x", "xi=*5", "xi=9", "xi=*2 eps=0", "xi=[0,1,1,2,3]", "xi=*2 foo=1"],
)
def test_parse_autspec_errors(text):
    with pytest.raises(GroupError):
        parse_autspec(text, C5)


def test_format_noncyclic_uses_image_list():
    G = dihedral(6)
    s = LampAutSpec(G, identity_aut(G), 1, 1)
    assert format_autspec(s) == "aut xi=[0,1,2,3,4,5] c=1 eps=+1"
    assert parse_autspec(format_autspec(s), G) == s


# -- blocks ---------------------------------------------------------------


def test_block_map_examples():
    b = block_map(mirror(cyclic(2)), 1)
    assert b.kind == "pair" and b.positions == (1, -1)
    # (x, y) packed as 2x + y; the swap sends (1, 0) to (0, 1)
    assert b.aut.image == (0, 2, 1, 3)
    b = block_map(mirror(C5, 2), 0)
    assert b.kind == "middle" and b.aut == multiplication_aut(C5, 2)
    b = block_map(mirror(C5, 2), 3)
    assert b.carrier.order == 25
    for x in range(5):
        for y in range(5):
            assert b.aut(x * 5 + y) == (2 * y % 5) * 5 + 2 * x % 5


def test_blocks_need_a_mirror():
    s = LampAutSpec(C5, identity_aut(C5), 0, 1)
    with pytest.raises(NoBlocksError):
        block_map(s, 1)
    with pytest.raises(NoBlocksError):
        block_positions(s, 1)


@pytest.mark.parametrize("c", [-3, 0, 1, 4])
def test_blocks_partition_positions(c):
    s = mirror(C5, 2, c)
    seen = {}
    for i in range(-20, 21):
        blk = block_positions(s, i)
        assert i in blk
        assert set(blk) == {i, c - i}
        seen.setdefault(blk, set()).add(i)
    for blk, members in seen.items():
        if all(-20 <= p <= 20 for p in blk):
            assert members == set(blk)
    # a middle block exists exactly when c is even
    assert any(len(b) == 1 for b in seen) == (c % 2 == 0)


@pytest.mark.parametrize("c", [-3, 0, 1, 4])
def test_block_maps_are_automorphisms_commuting_with_spec(c):
    G = dihedral(6)
    for xi in automorphism_group(G):
        s = LampAutSpec(G, xi, c, -1)
        for i in range(c // 2 - 2, c // 2 + 3):
            b = block_map(s, i)
            assert isinstance(b, BlockMap)
            assert is_automorphism(b.carrier, b.aut.image)
            if b.kind == "pair":
                p, q = b.positions
                n = G.order
                for x in G.elements:
                    for y in G.elements:
                        img = apply_aut(s, element(G, {p: x, q: y}, 0))
                        packed = img.lamp_dict.get(p, 0) * n + img.lamp_dict.get(q, 0)
                        assert b.aut(x * n + y) == packed


def test_pair_index_is_a_pair():
    for c in range(-4, 5):
        s = mirror(C5, 2, c)
        assert len(block_positions(s, pair_index(s))) == 2


# -- characteristic subgroups ------------------------------------------------


def test_is_member_examples():
    G = cyclic(4)
    H2 = char_tag("order_subgroup", G, 2)
    assert is_member(lamp(G, 0, 2), H2)
    assert not is_member(lamp(G, 0, 1), H2)
    assert is_member(t_power(G), H2)
    for kind, param in (("lamp_base", None), ("center_wreath", None), ("commutator_lamps", None), ("order_subgroup", 4), ("sylow_wreath", 2)):
        assert is_member(identity(G), char_tag(kind, G, param))
    assert not is_member(t_power(G), char_tag("lamp_base", G))


def test_invalid_tags():
    with pytest.raises(GroupError):
        char_tag("order_subgroup", cyclic(4), 3)
    with pytest.raises(GroupError):
        char_tag("order_subgroup", dihedral(6), 2)
    with pytest.raises(GroupError):
        char_tag("sylow_wreath", parse_group_spec("S4"), 2)
    with pytest.raises(GroupError):
        char_tag("nonsense", cyclic(4))


def test_verify_characteristic_examples():
    G = cyclic(4)
    rep = verify_characteristic(char_tag("lamp_base", G), all_specs(G), window=4)
    assert rep.passed and rep.checks == rep.specs * rep.members
    units = [LampAutSpec(G, multiplication_aut(G, k), c, e) for k in (1, 3) for c in (-1, 0, 1) for e in (1, -1)]
    assert verify_characteristic(char_tag("order_subgroup", G, 2), units, window=4).passed
    Q = quaternion8()
    specs = [LampAutSpec(Q, xi, 0, -1) for xi in automorphism_group(Q, cap=24)]
    assert all(set(xi(z) for z in center(Q)) == set(center(Q)) for xi in automorphism_group(Q, cap=24))
    assert verify_characteristic(char_tag("center_wreath", Q), specs, window=3).passed


def test_verify_characteristic_reports_violation():
    # the set of elements with lamps in {0, 1} is not a subgroup of C3, and
    # the mirror x -> 2x moves it
    G = cyclic(3)
    fake = CharSubgroupTag("fake", G, frozenset({0, 1}))
    rep = verify_characteristic(fake, [mirror(G, 2)], window=2)
    assert not rep.passed
    assert "outside fake" in rep.violation


def test_window_members_filter_the_ball():
    G = cyclic(2)
    tag = char_tag("lamp_base", G)
    members = window_members(tag, 4)
    assert all(g.shift == 0 for g in members)
    assert set(members) == {g for g in ball(G, AT, 4) if g.shift == 0}


def test_mirror_squared_has_no_offset():
    s = mirror(C5, 2, 3)
    sq = compose(s, s)
    assert sq.epsilon == 1 and sq.c == 0
    assert sq.xi == multiplication_aut(C5, 4)
    g = element(C5, {1: 2, -4: 1}, 2)
    assert apply_aut(sq, g) == apply_aut(s, apply_aut(s, g))
    assert apply_aut(s, inverse(g)) == inverse(apply_aut(s, g))
