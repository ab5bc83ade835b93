"""Decide whether G ≀ Z has property R∞ for a finite group G.

``classify`` runs a fixed chain of sufficient criteria; every positive
answer carries a certificate whose data can be recomputed from ``G``.  If
no criterion fires it searches the mirrored compatible-pair automorphisms
for one with finite Reidemeister number.  Otherwise the verdict is
``Unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import isprime

from .automorphisms import LampAutSpec, format_autspec
from .groups import (
    AUT_CAP,
    AbelianDecomposition,
    CapacityError,
    FiniteGroup,
    GroupError,
    abelian_decomposition,
    abelianization,
    center,
    class_index,
    count_automorphisms,
    cyclic,
    is_simple,
    iter_automorphisms,
    subgroup,
    sylow,
)
from .twisted import reidemeister_wreath

RULES = (
    "cyclic",
    "abelian",
    "abelianization",
    "center",
    "sylow-2",
    "sylow-3",
    "simple-trivial-out",
    "alternating",
    "symmetric",
    "order-2p",
)

RINF, NOT_RINF, UNKNOWN = "RInf", "NotRInf", "Unknown"


class DomainError(GroupError):
    pass


def decomposition_in_family(d: AbelianDecomposition) -> tuple[int, int, int] | None:
    """The first primary factor ``(p, k, r)`` with ``p`` in ``{2, 3}`` and
    ``r = 1``, if any."""
    for p, k, r in d.factors:
        if p in (2, 3) and r == 1:
            return (p, k, r)
    return None


def in_frak_A(G: FiniteGroup) -> bool:
    """True iff the abelian group ``G`` has a primary factor ``Z_{p^k}``
    with ``p`` in ``{2, 3}`` occurring exactly once."""
    if not G.is_abelian:
        raise DomainError(f"{G.name} is not abelian")
    return decomposition_in_family(abelian_decomposition(G)) is not None


@dataclass
class Certificate:
    rule: str
    facts: dict

    def as_dict(self) -> dict:
        return {"rule": self.rule, "facts": self.facts}


@dataclass
class Witness:
    spec: LampAutSpec
    value: int

    def as_dict(self) -> dict:
        return {"spec": format_autspec(self.spec), "value": self.value}


@dataclass
class Verdict:
    group: str
    status: str
    certificate: Certificate | None = None
    also_applicable: list[Certificate] = field(default_factory=list)
    witness: Witness | None = None
    rules_tried: list[str] = field(default_factory=list)

    @property
    def rules(self) -> list[str]:
        """Every rule that fired, first the certificate's."""
        out = [self.certificate.rule] if self.certificate else []
        return out + [c.rule for c in self.also_applicable]

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "verdict": self.status,
            "certificate": self.certificate.as_dict() if self.certificate else None,
            "also_applicable": [c.as_dict() for c in self.also_applicable],
            "witness": self.witness.as_dict() if self.witness else None,
            "rules_tried": self.rules_tried,
        }


def _factor_text(f: tuple[int, int, int]) -> str:
    p, k, r = f
    return f"Z{p ** k}" + (f"^{r}" if r > 1 else "")


def _family_fact(d: AbelianDecomposition) -> dict | None:
    f = decomposition_in_family(d)
    if f is None:
        return None
    return {"decomposition": str(d), "factor": _factor_text(f)}


# -- individual rules ------------------------------------------------------------


def _rule_abelian(G: FiniteGroup) -> Certificate | None:
    d = abelian_decomposition(G)
    facts = _family_fact(d)
    if facts is None:
        return None
    return Certificate("cyclic" if G.is_cyclic else "abelian", facts)


def _rule_abelianization(G: FiniteGroup) -> Certificate | None:
    facts = _family_fact(abelianization(G))
    return Certificate("abelianization", facts) if facts else None


def _rule_center(G: FiniteGroup) -> Certificate | None:
    Z = center(G)
    facts = _family_fact(abelian_decomposition(subgroup(G, Z)))
    if facts is None:
        return None
    facts["center_order"] = len(Z)
    return Certificate("center", facts)


def _rule_sylow(G: FiniteGroup, p: int) -> Certificate | None:
    elems, unique = sylow(G, p)
    if len(elems) == 1 or not unique:
        return None
    S = subgroup(G, elems)
    facts = _family_fact(abelian_decomposition(subgroup(S, center(S))))
    if facts is None:
        return None
    facts["sylow_order"] = len(elems)
    return Certificate(f"sylow-{p}", facts)


def _rule_simple_outer(G: FiniteGroup, aut_cap: int) -> Certificate | None:
    if G.is_abelian or not is_simple(G):
        return None
    n_aut = count_automorphisms(G, aut_cap)
    if n_aut != G.order:  # Z(G) is trivial, so Inn(G) has order |G|
        return None
    return Certificate("simple-trivial-out", {"order": G.order, "automorphisms": n_aut})


def _rule_alternating(G: FiniteGroup) -> Certificate | None:
    if G.family[0] == "alternating" and G.family[1] >= 5 and G.family[1] != 6:
        return Certificate("alternating", {"degree": G.family[1]})
    return None


def _rule_symmetric(G: FiniteGroup) -> Certificate | None:
    if G.family[0] == "symmetric" and G.family[1] >= 5:
        return Certificate("symmetric", {"degree": G.family[1]})
    return None


def _rule_order_2p(G: FiniteGroup) -> Certificate | None:
    n = G.order
    if n % 2 or not isprime(n // 2) or n // 2 == 2:
        return None
    p = n // 2
    if G.is_cyclic:
        shape = "cyclic"
    else:
        # a non-cyclic group of order 2p: index-2 rotation subgroup and
        # every other element an involution
        rot = [x for x in G.elements if p % G.orders[x] == 0]
        if len(rot) != p or any(G.orders[x] != 2 for x in G.elements if x not in set(rot)):
            return None
        shape = "dihedral"
    return Certificate("order-2p", {"p": p, "shape": shape})


# -- witness search ---------------------------------------------------------------


def _squares_fix_a_class(G: FiniteGroup):
    """Pruning test for partial maps: some nontrivial ``x`` already has
    ``f(f(x))`` conjugate to ``x``.  Then ``xi^2`` fixes a nontrivial class,
    every pair block has two or more classes, and no extension of ``f`` can
    be a witness."""
    idx = class_index(G)
    e = G.identity

    def prune(f: dict[int, int]) -> bool:
        for x, y in f.items():
            if x != e and y in f and idx[f[y]] == idx[x]:
                return True
        return False

    return prune


def witness_search(G: FiniteGroup, aut_cap: int = AUT_CAP) -> Witness | None:
    """First mirrored spec ``(xi, c, -1)`` with finite Reidemeister number,
    scanning ``xi`` in canonical order and ``c`` in ``{0, 1}``."""
    for xi in iter_automorphisms(G, aut_cap, prune=_squares_fix_a_class(G)):
        for c in (0, 1):
            s = LampAutSpec(G, xi, c, -1)
            res = reidemeister_wreath(s)
            if res.is_finite:
                return Witness(s, res.value)
    return None


# -- driver ----------------------------------------------------------------------


def classify(G: FiniteGroup, *, aut_cap: int = AUT_CAP, exhaustive: bool = False) -> Verdict:
    """Apply the rules in order; with ``exhaustive`` every remaining rule is
    also evaluated and recorded in ``also_applicable``."""
    v = Verdict(G.name, UNKNOWN)

    def record(cert: Certificate | None) -> bool:
        if cert is None:
            return False
        if v.certificate is None:
            v.certificate = cert
            v.status = RINF
        else:
            v.also_applicable.append(cert)
        return not exhaustive

    if G.is_abelian:
        v.rules_tried.append("abelian")
        cert = _rule_abelian(G)
        if record(cert):
            return v
        if cert is None:
            v.rules_tried.append("witness-search")
            try:
                w = witness_search(G, aut_cap)
            except CapacityError as exc:
                v.rules_tried.append(f"note: {exc}")
                return v
            if w is not None:
                v.status, v.witness = NOT_RINF, w
            else:
                v.rules_tried.append("note: no mirrored witness found for an abelian group outside the family")
            return v
        if exhaustive:
            v.rules_tried.append("order-2p")
            record(_rule_order_2p(G))
        return v

    checks = [
        ("abelianization", lambda: _rule_abelianization(G)),
        ("center", lambda: _rule_center(G)),
        ("sylow-2", lambda: _rule_sylow(G, 2)),
        ("sylow-3", lambda: _rule_sylow(G, 3)),
        ("simple-trivial-out", lambda: _rule_simple_outer(G, aut_cap)),
        ("alternating", lambda: _rule_alternating(G)),
        ("symmetric", lambda: _rule_symmetric(G)),
        ("order-2p", lambda: _rule_order_2p(G)),
    ]
    for name, check in checks:
        v.rules_tried.append(name)
        try:
            cert = check()
        except CapacityError as exc:
            v.rules_tried.append(f"note: {name} skipped, {exc}")
            continue
        if record(cert):
            return v
    if v.certificate is not None:
        return v

    v.rules_tried.append("witness-search")
    try:
        w = witness_search(G, aut_cap)
    except CapacityError as exc:
        v.rules_tried.append(f"note: witness search skipped, {exc}")
        return v
    if w is not None:
        v.status, v.witness = NOT_RINF, w
    return v


def verify_witness(w: Witness) -> bool:
    res = reidemeister_wreath(w.spec)
    return res.is_finite and res.value == w.value


@dataclass
class CyclicRow:
    m: int
    expected: str
    status: str
    rule: str | None
    witness: str | None
    value: int | None
    ok: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class CyclicReport:
    limit: int
    rows: list[CyclicRow]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    def as_dict(self) -> dict:
        return {"limit": self.limit, "passed": self.passed, "rows": [r.as_dict() for r in self.rows]}


def cross_validate_cyclic(limit: int, aut_cap: int = AUT_CAP) -> CyclicReport:
    """Check ``classify(C(m))`` against divisibility by 2 or 3 for
    ``2 <= m <= limit``, re-verifying every witness."""
    if limit < 2:
        raise ValueError("limit must be at least 2")
    rows = []
    for m in range(2, limit + 1):
        v = classify(cyclic(m), aut_cap=aut_cap)
        expected = RINF if m % 2 == 0 or m % 3 == 0 else NOT_RINF
        ok = v.status == expected
        witness = value = None
        if v.witness is not None:
            witness, value = format_autspec(v.witness.spec), v.witness.value
            ok = ok and verify_witness(v.witness)
        rule = v.certificate.rule if v.certificate else None
        rows.append(CyclicRow(m, expected, v.status, rule, witness, value, ok))
    return CyclicReport(limit, rows)

