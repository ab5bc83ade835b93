"""Automorphisms of G ≀ Z built from a lamp automorphism and a sign.

A spec ``(xi, c, eps)`` sends the lamp ``g`` at position ``i`` to ``xi(g)``
at position ``c + eps*i`` and the cursor generator ``t`` to ``t^eps``.
Such a pair is always compatible with the shift action, so it defines an
automorphism of the wreath product.  An optional conjugating element
post-composes with an inner automorphism.

For ``eps = -1`` the positions split into blocks ``{i, c - i}`` which the
lamp map preserves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .groups import (
    AUT_CAP,
    FiniteGroup,
    GroupAut,
    GroupError,
    automorphism_group,
    center,
    commutator_subgroup,
    direct_sum,
    identity_aut,
    is_automorphism,
    multiplication_aut,
    sylow,
)
from .wreath import AT, WreathElement, ball, element, format_element, inverse, mul, theta_shift

DEFAULT_WINDOW = 4


class NoBlocksError(GroupError):
    """Raised when block data is requested for a spec with ``eps = +1``."""


@dataclass(frozen=True)
class LampAutSpec:
    group: FiniteGroup = field(compare=False, repr=False)
    xi: GroupAut
    c: int = 0
    epsilon: int = 1
    conj: WreathElement | None = None

    def lamp_map(self, lamps: dict[int, int]) -> dict[int, int]:
        return {self.c + self.epsilon * p: self.xi(v) for p, v in lamps.items()}

    def twist(self) -> "LampAutSpec":
        """The spec of ``t·φ'``: same ``xi`` and sign, offset moved by one."""
        return LampAutSpec(self.group, self.xi, self.c + 1, self.epsilon)

    def __str__(self) -> str:
        return format_autspec(self)


def make_autospec(
    group: FiniteGroup,
    xi: GroupAut,
    c: int = 0,
    epsilon: int = 1,
    conj: WreathElement | None = None,
) -> LampAutSpec:
    if epsilon not in (1, -1):
        raise GroupError(f"epsilon must be +1 or -1, got {epsilon}")
    if not is_automorphism(group, xi.image):
        raise GroupError("xi is not an automorphism of the lamp group")
    if conj is not None and conj.group != group:
        raise GroupError("conjugating element lives over a different group")
    spec = LampAutSpec(group, xi, c, epsilon, conj)
    _check_compatibility(spec)
    return spec


def _sample_configs(group: FiniteGroup) -> list[dict[int, int]]:
    gens = list(group.generators) or [group.identity]
    g0 = gens[0]
    g1 = gens[-1]
    samples = [{}, {0: g0}, {1: g1}, {-2: g0, 3: g1}]
    if group.order > 2:
        samples.append({-1: group.mul(g0, g1), 0: g1, 2: group.inv(g0)})
    return [{p: v for p, v in s.items() if v != group.identity} for s in samples]


def _check_compatibility(s: LampAutSpec) -> None:
    """Spot-check ``φ'(θ_b(a)) = θ_{φ̄(b)}(φ'(a))`` on fixed samples."""
    for a in _sample_configs(s.group):
        for b in (-2, -1, 0, 1, 3):
            left = s.lamp_map(theta_shift(b, a))
            right = theta_shift(s.epsilon * b, s.lamp_map(a))
            if left != right:
                raise GroupError(f"compatibility fails for shift {b} on {a}")


def apply_lamps(s: LampAutSpec, lamps: dict[int, int]) -> dict[int, int]:
    return s.lamp_map(lamps)


def apply_aut(s: LampAutSpec, g: WreathElement) -> WreathElement:
    if g.group != s.group:
        raise TypeError("element and spec use different lamp groups")
    image = element(s.group, s.lamp_map(g.lamp_dict), s.epsilon * g.shift)
    if s.conj is not None:
        image = mul(mul(s.conj, image), inverse(s.conj))
    return image


def compose(s2: LampAutSpec, s1: LampAutSpec) -> LampAutSpec:
    """The spec of ``s2 ∘ s1``."""
    if s1.group != s2.group:
        raise GroupError("specs over different groups")
    conj = None
    if s1.conj is not None or s2.conj is not None:
        k1 = s1.conj if s1.conj is not None else element(s1.group)
        k2 = s2.conj if s2.conj is not None else element(s2.group)
        conj = mul(k2, apply_aut(LampAutSpec(s2.group, s2.xi, s2.c, s2.epsilon), k1))
    return LampAutSpec(
        s1.group, s2.xi.compose(s1.xi), s2.c + s2.epsilon * s1.c, s1.epsilon * s2.epsilon, conj
    )


def inverse_spec(s: LampAutSpec) -> LampAutSpec:
    base = LampAutSpec(s.group, s.xi.inverse(), -s.epsilon * s.c, s.epsilon)
    if s.conj is None:
        return base
    # (inn_k ∘ φ)^-1 = φ^-1 ∘ inn_k^-1 = inn_{φ^-1(k)^-1} ∘ φ^-1
    return LampAutSpec(s.group, base.xi, base.c, base.epsilon, inverse(apply_aut(base, s.conj)))


# -- text form -------------------------------------------------------------

_SPEC_FIELD = re.compile(r"(xi|c|eps)\s*=\s*(\[[^\]]*\]|\S+)")


def parse_autspec(text: str, group: FiniteGroup, aut_cap: int = AUT_CAP) -> LampAutSpec:
    """Parse ``[aut] xi=<index|*k|[images]> c=<int> eps=<+1|-1>``.

    ``xi`` is an index into the canonical automorphism list, ``*k`` for the
    map ``x -> kx`` on a cyclic group, or an explicit image list.
    """
    body = text.strip()
    if body.startswith("aut"):
        body = body[3:]
    fields = dict(_SPEC_FIELD.findall(body))
    leftover = _SPEC_FIELD.sub("", body).strip()
    if leftover or "xi" not in fields:
        raise GroupError(f"bad automorphism spec {text!r}; expected 'xi=<index|*k|[images]> c=<int> eps=<+1|-1>'")
    raw = fields["xi"]
    if raw.startswith("*"):
        xi = multiplication_aut(group, int(raw[1:]))
    elif raw.startswith("["):
        items = [x for x in raw[1:-1].replace(",", " ").split()]
        xi = GroupAut(tuple(int(x) for x in items))
    else:
        auts = automorphism_group(group, aut_cap)
        idx = int(raw)
        if not 0 <= idx < len(auts):
            raise GroupError(f"automorphism index {idx} out of range 0..{len(auts) - 1}")
        xi = auts[idx]
    try:
        c = int(fields.get("c", "0"))
        eps = int(fields.get("eps", "1"))
    except ValueError as exc:
        raise GroupError(f"bad automorphism spec {text!r}") from exc
    return make_autospec(group, xi, c, eps)


def format_autspec(s: LampAutSpec) -> str:
    G = s.group
    xi = None
    if G.family[0] == "cyclic" and G.order > 1:
        k = s.xi(1)
        xi = f"*{k}"
    if xi is None:
        xi = "[" + ",".join(map(str, s.xi.image)) + "]"
    eps = "+1" if s.epsilon == 1 else "-1"
    out = f"aut xi={xi} c={s.c} eps={eps}"
    if s.conj is not None:
        out += f" conj={format_element(s.conj)}"
    return out


# -- blocks ----------------------------------------------------------------


@dataclass(frozen=True)
class BlockMap:
    index: int
    kind: str  # "pair" or "middle"
    positions: tuple[int, ...]
    carrier: FiniteGroup = field(compare=False, repr=False)
    aut: GroupAut = field(repr=False)


def block_positions(s: LampAutSpec, i: int) -> tuple[int, ...]:
    if s.epsilon != -1:
        raise NoBlocksError("blocks exist only for eps = -1")
    j = s.c - i
    return (i,) if i == j else (min(i, j), max(i, j))


def block_map(s: LampAutSpec, i: int) -> BlockMap:
    """Restriction of the lamp map to ``G_i ⊕ G_{c-i}``.

    Pair blocks use coordinates ``(x at i, y at c-i)`` packed as
    ``x*|G| + y`` and carry ``(x, y) -> (xi(y), xi(x))``.
    """
    if s.epsilon != -1:
        raise NoBlocksError("blocks exist only for eps = -1")
    G, xi = s.group, s.xi
    if 2 * i == s.c:
        return BlockMap(i, "middle", (i,), G, xi)
    carrier = pair_carrier(G)
    n = G.order
    image = tuple(xi(y) * n + xi(x) for x in range(n) for y in range(n))
    return BlockMap(i, "pair", (i, s.c - i), carrier, GroupAut(image))


def pair_carrier(G: FiniteGroup) -> FiniteGroup:
    if "pair_carrier" not in G._cache:
        G._cache["pair_carrier"] = direct_sum(G, G)
    return G._cache["pair_carrier"]


def pair_index(s: LampAutSpec) -> int:
    """A canonical pair-block index: the first position past ``c/2``."""
    return s.c // 2 + 1


# -- characteristic subgroups -------------------------------------------------

CHAR_TAGS = ("lamp_base", "commutator_lamps", "center_wreath", "order_subgroup", "sylow_wreath")


@dataclass(frozen=True)
class CharSubgroupTag:
    kind: str
    group: FiniteGroup = field(compare=False, repr=False)
    allowed: frozenset[int] | None = None  # allowed lamp values; None = any
    shift_zero: bool = False
    param: int | None = None

    def __str__(self) -> str:
        if self.kind == "order_subgroup":
            return f"H_{self.param}"
        if self.kind == "sylow_wreath":
            return f"S_{self.param} wr Z"
        return self.kind


def char_tag(kind: str, group: FiniteGroup, param: int | None = None) -> CharSubgroupTag:
    if kind == "lamp_base":
        return CharSubgroupTag(kind, group, None, True)
    if kind == "commutator_lamps":
        return CharSubgroupTag(kind, group, frozenset(commutator_subgroup(group)), True)
    if kind == "center_wreath":
        return CharSubgroupTag(kind, group, frozenset(center(group)))
    if kind == "order_subgroup":
        n = group.order
        if group.family[0] != "cyclic":
            raise GroupError("H_d is defined for cyclic lamp groups")
        if param is None or param < 1 or n % param:
            raise GroupError(f"H_d needs d dividing {n}, got {param}")
        step = n // param
        return CharSubgroupTag(kind, group, frozenset(range(0, n, step)), param=param)
    if kind == "sylow_wreath":
        if param is None:
            raise GroupError("sylow_wreath needs a prime")
        elems, unique = sylow(group, param)
        if not unique:
            raise GroupError(f"the Sylow {param}-subgroup of {group.name} is not unique")
        return CharSubgroupTag(kind, group, frozenset(elems), param=param)
    raise GroupError(f"unknown subgroup tag {kind!r}; choose from {', '.join(CHAR_TAGS)}")


def is_member(g: WreathElement, tag: CharSubgroupTag) -> bool:
    if g.group != tag.group:
        raise TypeError("element and tag use different lamp groups")
    if tag.shift_zero and g.shift != 0:
        return False
    if tag.allowed is None:
        return True
    return all(v in tag.allowed for _, v in g.lamps)


@dataclass
class CharReport:
    tag: str
    specs: int
    members: int
    checks: int = 0
    passed: bool = True
    violation: str | None = None

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "specs": self.specs,
            "members": self.members,
            "checks": self.checks,
            "passed": self.passed,
            "violation": self.violation,
        }


def window_members(tag: CharSubgroupTag, window: int = DEFAULT_WINDOW) -> list[WreathElement]:
    """Members of the subgroup inside the radius-``window`` ball of the
    generating set ``t`` plus lamp generators at 0."""
    key = ("char_ball", window)
    G = tag.group
    if key not in G._cache:
        G._cache[key] = sorted(ball(G, AT, window), key=lambda x: (x.shift, x.lamps))
    return [g for g in G._cache[key] if is_member(g, tag)]


def verify_characteristic(tag: CharSubgroupTag, specs: Iterable[LampAutSpec], window: int = DEFAULT_WINDOW) -> CharReport:
    specs = list(specs)
    members = window_members(tag, window)
    report = CharReport(str(tag), len(specs), len(members))
    for s in specs:
        for g in members:
            report.checks += 1
            if not is_member(apply_aut(s, g), tag):
                report.passed = False
                report.violation = f"{format_autspec(s)} sends {format_element(g)} outside {tag}"
                return report
    return report


def all_specs(
    group: FiniteGroup,
    offsets: Iterable[int] = (-1, 0, 1),
    signs: Iterable[int] = (1, -1),
    aut_cap: int = AUT_CAP,
) -> list[LampAutSpec]:
    """Every spec with ``xi`` in ``Aut(G)`` over the given offsets and signs."""
    offsets, signs = list(offsets), list(signs)
    return [
        LampAutSpec(group, xi, c, eps)
        for xi in automorphism_group(group, aut_cap)
        for eps in signs
        for c in offsets
    ]


def identity_spec(group: FiniteGroup) -> LampAutSpec:
    return LampAutSpec(group, identity_aut(group), 0, 1)
