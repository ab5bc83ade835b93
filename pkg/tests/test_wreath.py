import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from wreathlab.groups import cyclic, dihedral, quaternion8
from wreathlab.wreath import (
    AT,
    TA,
    UnsupportedGroupError,
    Word,
    WordSyntaxError,
    ball,
    element,
    eval_word,
    format_element,
    format_normal_form,
    format_word,
    identity,
    inverse,
    lamp,
    mul,
    normal_form,
    normal_form_element,
    parse_element,
    parse_word,
    product,
    sphere_sizes,
    t_power,
    ta,
    theta_shift,
    word_length_bfs,
    word_length_ct,
)


def lamps_strategy(n, max_pos=5):
    return st.dictionaries(st.integers(-max_pos, max_pos), st.integers(0, n - 1), max_size=5)


def elements(G, max_pos=5):
    return st.builds(lambda L, k: element(G, L, k), lamps_strategy(G.order, max_pos), st.integers(-6, 6))


# -- arithmetic ----------------------------------------------------------------


def test_shift_action_examples():
    G = cyclic(3)
    t, a = t_power(G), lamp(G, 0, 1)
    assert mul(t, a) == element(G, {1: 1}, 1)
    assert mul(inverse(t), ta(G, 1)) == a
    for j in (-2, 0, 4):
        aj = lamp(G, j, 1)
        assert mul(aj, lamp(G, j, 2)) == identity(G)


def test_inverse_examples():
    G = cyclic(3)
    assert inverse(t_power(G, 3)) == t_power(G, -3)
    assert inverse(lamp(G, 0, 1)) == lamp(G, 0, 2)
    x = element(G, {1: 1}, 2)
    assert inverse(x) == element(G, {-1: 2}, -2)


def test_theta_shift_examples():
    assert theta_shift(0, {3: 1}) == {3: 1}
    assert theta_shift(2, {0: 1}) == {2: 1}
    assert theta_shift(-1, {1: 1, 3: 2}) == {0: 1, 2: 2}


def test_identity_lamps_are_dropped():
    G = cyclic(4)
    assert element(G, {0: 0, 2: 3}, 1).lamps == ((2, 3),)


def test_mismatched_groups_rejected():
    with pytest.raises(TypeError):
        mul(identity(cyclic(2)), identity(cyclic(3)))


@pytest.mark.parametrize("n", [2, 3, 5])
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_group_axioms_random(n, data):
    G = cyclic(n)
    x, y, z = (data.draw(elements(G)) for _ in range(3))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert mul(x, inverse(x)) == identity(G) == mul(inverse(x), x)
    assert mul(x, identity(G)) == x


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_nonabelian_lamp_group_axioms(data):
    G = data.draw(st.sampled_from([dihedral(6), quaternion8()]))
    x, y, z = (data.draw(elements(G)) for _ in range(3))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert mul(x, inverse(x)) == identity(G)


def test_element_literal_roundtrip():
    G = cyclic(5)
    x = element(G, {-3: 4, 2: 1}, -7)
    assert format_element(x) == "[-3=4,2=1]@-7"
    assert parse_element(format_element(x), G) == x
    assert parse_element("[]@0", G) == identity(G)
    with pytest.raises(WordSyntaxError):
        parse_element("[1:2]@0", G)
    with pytest.raises(WordSyntaxError):
        parse_element("1=2", G)


# -- words ---------------------------------------------------------------------


def test_parse_word_examples():
    w = parse_word("t^-1 (ta) ", TA, 3)
    assert w.tokens == (("t", -1), ("ta", 1))
    assert parse_word("", AT, 2).tokens == ()
    w = parse_word("(ta^2)^-1 t", TA, 3)
    assert w.tokens == (("ta^2", -1), ("t", 1))


def test_parse_word_errors():
    with pytest.raises(WordSyntaxError):
        parse_word("a", TA, 3)
    with pytest.raises(WordSyntaxError):
        parse_word("(ta)", AT, 3)
    with pytest.raises(WordSyntaxError):
        parse_word("(ta^3)", TA, 3)
    with pytest.raises(WordSyntaxError):
        parse_word("t^2", AT, 3)
    with pytest.raises(WordSyntaxError):
        parse_word("b", AT, 3)


def test_eval_word_examples():
    G = cyclic(3)
    assert eval_word(Word((("t", 1), ("t", -1)), AT, 3)) == identity(G)
    assert eval_word(parse_word("t^-1 (ta)", TA, 3)) == lamp(G, 0, 1)
    assert eval_word(parse_word("t^-1 (ta^2)", TA, 3)) == lamp(G, 0, 2)


def _all_words(gens, n, max_len):
    names = ["t", "a"] if gens == AT else ["t"] + ["ta" if k == 1 else f"ta^{k}" for k in range(1, n)]
    letters = [(name, e) for name in names for e in (1, -1)]
    words = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [w + (x,) for w in frontier for x in letters]
        words.extend(frontier)
    return [Word(w, gens, n) for w in words]


@pytest.mark.parametrize("gens,n,max_len", [(AT, 2, 5), (TA, 3, 3)])
def test_word_print_parse_roundtrip(gens, n, max_len):
    for w in _all_words(gens, n, max_len):
        assert parse_word(format_word(w), gens, n) == w


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(["t", "t^-1", "a", "a^-1"]), max_size=8), st.lists(st.sampled_from(["t", "a", "a^-1"]), max_size=8))
def test_eval_is_a_homomorphism(u, v):
    wu, wv = parse_word(" ".join(u), AT, 3), parse_word(" ".join(v), AT, 3)
    assert eval_word(wu + wv) == mul(eval_word(wu), eval_word(wv))


# -- normal forms ------------------------------------------------------------------


def test_normal_form_examples():
    G = cyclic(3)
    nf = normal_form(identity(G))
    assert nf.nonneg == () and nf.neg == () and nf.shift == 0
    nf = normal_form(lamp(G, 0, 1))
    assert nf.nonneg == ((0, 1),) and nf.neg == ()
    g = element(G, {2: 2, -1: 1}, 1)
    nf = normal_form(g, "rf")
    assert nf.nonneg == ((2, -1),) and nf.neg == ((-1, 1),) and nf.shift == 1
    assert normal_form_element(nf) == g


def test_even_n_keeps_plus_h():
    G = cyclic(4)
    nf = normal_form(lamp(G, 0, 2))
    assert nf.nonneg == ((0, 2),)
    nf = normal_form(lamp(G, 0, 3))
    assert nf.nonneg == ((0, -1),)


def test_negative_block_in_increasing_distance():
    G = cyclic(2)
    nf = normal_form(element(G, {-3: 1, -1: 1, 0: 1}, 0))
    assert nf.neg == ((-1, 1), (-3, 1))
    assert format_normal_form(nf).startswith("a_{0}^{1} a_{-1}^{1} a_{-3}^{1}")


def test_normal_form_needs_cyclic():
    with pytest.raises(UnsupportedGroupError):
        normal_form(identity(dihedral(6)))
    with pytest.raises(UnsupportedGroupError):
        word_length_ct(identity(quaternion8()))


@pytest.mark.parametrize("n,radius", [(2, 7), (3, 7)])
def test_normal_form_soundness_and_uniqueness(n, radius):
    dist = ball(cyclic(n), AT, radius)
    seen = {}
    for g in dist:
        for side in ("rf", "lf"):
            nf = normal_form(g, side)
            assert normal_form_element(nf) == g
            assert seen.setdefault((side, nf), g) == g


# -- word length ---------------------------------------------------------------------


def test_word_length_examples():
    G = cyclic(2)
    assert word_length_ct(identity(G)) == 0
    assert word_length_ct(element(G, {0: 1}, 1)) == 2
    assert word_length_ct(element(G, {1: 1, -1: 1}, 0)) == 6
    assert word_length_bfs(element(G, {1: 1, -1: 1}, 0)) == 6


def test_bfs_examples():
    G = cyclic(2)
    a = lamp(G, 0, 1)
    assert word_length_bfs(identity(G), TA) == 0
    assert word_length_bfs(a, AT) == 1
    assert word_length_bfs(a, TA) == 2
    assert word_length_bfs(element(G, {0: 1, 9: 1}, 0), AT, cap=5) is None


@pytest.mark.parametrize("n,radius", [(2, 7), (3, 6)])
def test_formula_matches_bfs_on_ball(n, radius):
    dist = ball(cyclic(n), AT, radius)
    assert all(word_length_ct(g) == d for g, d in dist.items())


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_formula_matches_bfs_random(data):
    # elements the formula puts beyond 7 are skipped; the exhaustive ball
    # test above covers overestimates
    G = cyclic(data.draw(st.sampled_from([2, 3, 4, 5])))
    g = element(G, data.draw(lamps_strategy(G.order, 2)), data.draw(st.integers(-2, 2)))
    assume(word_length_ct(g) <= 7)
    assert word_length_bfs(g, AT, cap=8) == word_length_ct(g)


@pytest.mark.parametrize("gens,n,radius", [(AT, 2, 5), (AT, 3, 4), (TA, 3, 3)])
def test_sphere_sizes_match_word_enumeration(gens, n, radius):
    # brute force: shortest word evaluating to each element
    best = {}
    for w in _all_words(gens, n, radius):
        g = eval_word(w)
        best[g] = min(best.get(g, radius + 1), len(w.tokens))
    expected = [0] * (radius + 1)
    for d in best.values():
        expected[d] += 1
    assert sphere_sizes(ball(cyclic(n), gens, radius)) == expected


def test_sphere_sizes_of_l2():
    # t^2, t^-2, ta, t^-1a, at, at^-1 at length two
    assert sphere_sizes(ball(cyclic(2), AT, 2)) == [1, 3, 6]


def test_product_helper():
    G = cyclic(3)
    assert product(G, [t_power(G), lamp(G, 0, 1), t_power(G, -1)]) == lamp(G, 1, 1)
