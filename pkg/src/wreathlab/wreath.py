"""Elements of G ≀ Z: arithmetic, words, normal forms and word length.

An element is a finitely supported lamp configuration ``position -> g``
together with the cursor position (the exponent of ``t``).  The product is

    (L1, k1) (L2, k2) = (L1 · shift(k1, L2), k1 + k2)

so ``t`` moves the cursor right and a lamp generator changes the bulb under
the cursor.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .groups import FiniteGroup, GroupError, cyclic

AT = "AT"
TA = "TA"
DEFAULT_BALL_CAP = 10


class UnsupportedGroupError(GroupError):
    """Operation defined only for cyclic lamp groups."""


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class WreathElement:
    group: FiniteGroup = field(compare=False, repr=False)
    lamps: tuple[tuple[int, int], ...]
    shift: int

    @property
    def lamp_dict(self) -> dict[int, int]:
        return dict(self.lamps)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.lamps)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return mul(self, other)

    def __str__(self) -> str:
        return format_element(self)


def element(group: FiniteGroup, lamps: Mapping[int, int] | Iterable[tuple[int, int]] = (), shift: int = 0) -> WreathElement:
    """Canonical element; identity-valued lamps are dropped."""
    items = lamps.items() if isinstance(lamps, Mapping) else lamps
    clean = {}
    for p, v in items:
        if not 0 <= v < group.order:
            raise GroupError(f"lamp value {v} is not an element of {group.name}")
        clean[int(p)] = int(v)
    return WreathElement(group, tuple(sorted((p, v) for p, v in clean.items() if v != group.identity)), int(shift))


def _wrap(group: FiniteGroup, lamps: dict[int, int], shift: int) -> WreathElement:
    return WreathElement(group, tuple(sorted(lamps.items())), shift)


def identity(group: FiniteGroup) -> WreathElement:
    return WreathElement(group, (), 0)


def t_power(group: FiniteGroup, k: int = 1) -> WreathElement:
    return WreathElement(group, (), k)


def lamp(group: FiniteGroup, position: int, value: int) -> WreathElement:
    return element(group, {position: value}, 0)


def ta(group: FiniteGroup, g: int) -> WreathElement:
    """The generator ``t·g`` (``t`` when ``g`` is the identity)."""
    return element(group, {1: g}, 1)


def theta_shift(m: int, lamps: Mapping[int, int]) -> dict[int, int]:
    """Move every lamp from position ``i`` to ``i + m``."""
    return {p + m: v for p, v in lamps.items()}


def _check_same(x: WreathElement, y: WreathElement) -> None:
    if x.group is not y.group and x.group != y.group:
        raise TypeError(f"elements over different groups: {x.group.name} and {y.group.name}")


def mul(x: WreathElement, y: WreathElement) -> WreathElement:
    _check_same(x, y)
    G = x.group
    e = G.identity
    out = dict(x.lamps)
    k = x.shift
    for p, v in y.lamps:
        q = p + k
        w = G.mul(out.get(q, e), v)
        if w == e:
            out.pop(q, None)
        else:
            out[q] = w
    return _wrap(G, out, k + y.shift)


def inverse(x: WreathElement) -> WreathElement:
    G = x.group
    return _wrap(G, {p - x.shift: G.inv(v) for p, v in x.lamps}, -x.shift)


def product(group: FiniteGroup, factors: Iterable[WreathElement]) -> WreathElement:
    result = identity(group)
    for f in factors:
        result = mul(result, f)
    return result


def format_element(x: WreathElement) -> str:
    """``[p=v,...]@shift`` with ``v`` the lamp's element index."""
    body = ",".join(f"{p}={v}" for p, v in x.lamps)
    return f"[{body}]@{x.shift}"


_ELEMENT = re.compile(r"^\s*\[(.*)\]\s*@\s*(-?\d+)\s*$")


def parse_element(text: str, group: FiniteGroup) -> WreathElement:
    m = _ELEMENT.match(text)
    if not m:
        raise WordSyntaxError(f"bad element literal {text!r}; expected [p=v,...]@shift")
    lamps = {}
    body = m.group(1).strip()
    if body:
        for item in body.split(","):
            try:
                p, v = item.split("=")
                lamps[int(p)] = int(v)
            except ValueError as exc:
                raise WordSyntaxError(f"bad lamp entry {item!r}") from exc
    return element(group, lamps, int(m.group(2)))


# -- generating sets -----------------------------------------------------


def generating_set(group: FiniteGroup, gens: str) -> list[WreathElement]:
    """``AT``: ``t`` and the lamp generators at position 0 (``{a, t}`` for
    ``Z_n``).  ``TA``: ``t·g`` for every ``g`` in the lamp group."""
    if gens == AT:
        return [t_power(group)] + [lamp(group, 0, g) for g in group.generators]
    if gens == TA:
        return [ta(group, g) for g in group.elements]
    raise ValueError(f"unknown generating set {gens!r}")


def symmetric_generators(group: FiniteGroup, gens: str) -> list[WreathElement]:
    """Generators together with their inverses, duplicates removed."""
    out = []
    for s in generating_set(group, gens):
        for x in (s, inverse(s)):
            if x not in out:
                out.append(x)
    return out


# -- words -----------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """Tokens ``(name, ±1)`` over ``AT`` (names ``t``, ``a``) or ``TA``
    (names ``t``, ``ta``, ``ta^K``)."""

    tokens: tuple[tuple[str, int], ...]
    gens: str
    n: int

    def __len__(self) -> int:
        return len(self.tokens)

    def __add__(self, other: "Word") -> "Word":
        if (self.gens, self.n) != (other.gens, other.n):
            raise ValueError("words over different generating sets")
        return Word(self.tokens + other.tokens, self.gens, self.n)


def ta_name(k: int) -> str:
    return "t" if k == 0 else ("ta" if k == 1 else f"ta^{k}")


def _ta_power(name: str) -> int:
    if name == "t":
        return 0
    if name == "ta":
        return 1
    return int(name[3:])


_WORD_TOKEN = re.compile(r"\s*(?:(t|a)|\(\s*ta(?:\^(\d+))?\s*\))(\^-1)?")


def parse_word(text: str, gens: str, n: int) -> Word:
    """Tokenize ``t``, ``a``, ``(ta)``, ``(ta^K)``, each optionally followed
    by ``^-1``."""
    if gens not in (AT, TA):
        raise ValueError(f"unknown generating set {gens!r}")
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unknown token at {text[pos:].strip()!r}")
        letter, k = m.group(1), m.group(2)
        exp = -1 if m.group(3) else 1
        if letter == "t":
            name = "t"
        elif letter == "a":
            if gens != AT:
                raise WordSyntaxError("generator 'a' is not in the TA generating set")
            name = "a"
        else:
            if gens != TA:
                raise WordSyntaxError("generator '(ta^K)' is not in the AT generating set")
            kk = 1 if k is None else int(k)
            if not 1 <= kk < n:
                raise WordSyntaxError(f"(ta^{kk}) needs 1 <= K < {n}")
            name = ta_name(kk)
        tokens.append((name, exp))
        pos = m.end()
    return Word(tuple(tokens), gens, n)


def format_word(word: Word) -> str:
    parts = []
    for name, exp in word.tokens:
        tok = name if name in ("t", "a") else f"({name})"
        parts.append(tok + ("^-1" if exp < 0 else ""))
    return " ".join(parts)


def word_generator(name: str, group: FiniteGroup) -> WreathElement:
    if name == "t":
        return t_power(group)
    if name == "a":
        return lamp(group, 0, 1 % group.order)
    return ta(group, _ta_power(name) % group.order)


def eval_word(word: Word, group: FiniteGroup | None = None) -> WreathElement:
    """Left-to-right product of the word's letters (over ``Z_n`` unless a
    cyclic ``group`` of that order is supplied)."""
    G = group if group is not None else cyclic(word.n)
    result = identity(G)
    for name, exp in word.tokens:
        g = word_generator(name, G)
        result = mul(result, g if exp > 0 else inverse(g))
    return result


# -- normal forms ------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """``rf``: ``a_{i_1}^{e_1} ... a_{i_k}^{e_k} a_{-j_1}^{f_1} ... a_{-j_l}^{f_l} t^m``
    with ``0 <= i_1 < ... < i_k`` and ``0 < j_1 < ... < j_l``; ``lf`` lists
    the negative block first.  ``nonneg`` holds ``(i, e)``, ``neg`` holds
    ``(-j, f)`` in that order; exponents lie in ``-h..h`` with
    ``h = n // 2`` and ``-h`` excluded for even ``n``."""

    side: str
    nonneg: tuple[tuple[int, int], ...]
    neg: tuple[tuple[int, int], ...]
    shift: int
    n: int


def _require_cyclic(group: FiniteGroup) -> int:
    if group.family[0] != "cyclic":
        raise UnsupportedGroupError(f"normal forms need a cyclic lamp group, got {group.name}")
    return group.order


def reduce_exponent(v: int, n: int) -> int:
    r = v % n
    return r - n if r > n // 2 else r


def normal_form(g: WreathElement, side: str = "rf") -> NormalForm:
    n = _require_cyclic(g.group)
    if side not in ("rf", "lf"):
        raise ValueError("side must be 'rf' or 'lf'")
    nonneg = tuple((p, reduce_exponent(v, n)) for p, v in g.lamps if p >= 0)
    neg = tuple((p, reduce_exponent(v, n)) for p, v in reversed(g.lamps) if p < 0)
    return NormalForm(side, nonneg, neg, g.shift, n)


def normal_form_word(nf: NormalForm) -> Word:
    """The normal form spelled over ``{a, t}`` with ``a_i = t^i a t^-i``."""
    tokens: list[tuple[str, int]] = []

    def conj_lamp(i: int, e: int) -> None:
        tokens.extend([("t", 1 if i > 0 else -1)] * abs(i))
        tokens.extend([("a", 1 if e > 0 else -1)] * abs(e))
        tokens.extend([("t", -1 if i > 0 else 1)] * abs(i))

    blocks = [nf.nonneg, nf.neg] if nf.side == "rf" else [nf.neg, nf.nonneg]
    for block in blocks:
        for i, e in block:
            conj_lamp(i, e)
    tokens.extend([("t", 1 if nf.shift > 0 else -1)] * abs(nf.shift))
    return Word(tuple(tokens), AT, nf.n)


def normal_form_element(nf: NormalForm, group: FiniteGroup | None = None) -> WreathElement:
    return eval_word(normal_form_word(nf), group)


def format_normal_form(nf: NormalForm) -> str:
    def seg(items: tuple[tuple[int, int], ...]) -> list[str]:
        return [f"a_{{{i}}}^{{{e}}}" for i, e in items]

    parts = seg(nf.nonneg) + seg(nf.neg) if nf.side == "rf" else seg(nf.neg) + seg(nf.nonneg)
    parts.append(f"t^{{{nf.shift}}}")
    return " ".join(parts)


def word_length_ct(g: WreathElement) -> int:
    """Word length over ``{a, t}`` in ``Z_n ≀ Z`` from the normal form.

    Each lamp costs ``|e|`` letters; the cursor path costs
    ``min(2 j_l + i_k + |m - i_k|, 2 i_k + j_l + |m + j_l|)`` where ``i_k``
    (``j_l``) is the farthest non-negative (negative) lamp, 0 if none.
    """
    nf = normal_form(g)
    lamps = sum(abs(e) for _, e in nf.nonneg) + sum(abs(f) for _, f in nf.neg)
    ik = max((i for i, _ in nf.nonneg), default=0)
    jl = max((-p for p, _ in nf.neg), default=0)
    m = nf.shift
    return lamps + min(2 * jl + ik + abs(m - ik), 2 * ik + jl + abs(m + jl))


# -- Cayley graph BFS ------------------------------------------------------


def ball(group: FiniteGroup, gens: str, radius: int) -> dict[WreathElement, int]:
    """Graph distance from the identity for every element within
    ``radius``, in BFS discovery order."""
    steps = symmetric_generators(group, gens)
    start = identity(group)
    dist = {start: 0}
    frontier = [start]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for s in steps:
                y = mul(x, s)
                if y not in dist:
                    dist[y] = r
                    nxt.append(y)
        frontier = nxt
    return dist


def sphere_sizes(dist: Mapping[object, int]) -> list[int]:
    sizes = [0] * (max(dist.values(), default=-1) + 1)
    for d in dist.values():
        sizes[d] += 1
    return sizes


def word_length_bfs(g: WreathElement, gens: str = AT, cap: int = DEFAULT_BALL_CAP) -> int | None:
    """Exact Cayley-graph distance from the identity, or ``None`` when it
    exceeds ``cap``."""
    group = g.group
    start = identity(group)
    if g == start:
        return 0
    steps = symmetric_generators(group, gens)
    seen = {start}
    frontier = deque([start])
    for r in range(1, cap + 1):
        nxt: deque[WreathElement] = deque()
        for x in frontier:
            for s in steps:
                y = mul(x, s)
                if y == g:
                    return r
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return None
