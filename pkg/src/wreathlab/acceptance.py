"""The eight end-to-end acceptance checks, each exact and exhaustive."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .automorphisms import LampAutSpec, all_specs, char_tag, pair_index, verify_characteristic
from .classify import NOT_RINF, RINF, UNKNOWN, classify, cross_validate_cyclic
from .dl import check_cayley_isomorphism
from .groups import (
    NONABELIAN_CATALOG,
    CapacityError,
    abelian_groups,
    automorphism_group,
    cyclic,
    iter_automorphisms,
    parse_group_spec,
)
from .twisted import (
    CARRIER_CAP,
    block_fixed_points,
    block_positions,
    reidemeister_abelian,
    reidemeister_fh,
    twisted_classes,
    window_class_count,
    window_orbit_count,
)
from .wreath import AT, ball, word_length_ct


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.number}] {self.title}: {self.detail} ({self.seconds:.1f}s)"

    def as_dict(self) -> dict:
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
        }


def _timed(number: int, title: str, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    start = time.perf_counter()
    passed, detail = body()
    return CriterionResult(number, title, passed, detail, time.perf_counter() - start)


# 1 ---------------------------------------------------------------------------


def _word_metric() -> tuple[bool, str]:
    parts = []
    ok = True
    for n, radius in ((2, 7), (3, 6)):
        dist = ball(cyclic(n), AT, radius)
        bad = [g for g, d in dist.items() if word_length_ct(g) != d]
        ok &= not bad
        parts.append(f"L{n} r={radius}: {len(dist)} elements, {len(bad)} mismatches")
    return ok, "; ".join(parts)


def criterion_word_metric() -> CriterionResult:
    return _timed(1, "word-metric agreement", _word_metric)


# 2 ---------------------------------------------------------------------------


def _cayley_dl() -> tuple[bool, str]:
    parts = []
    ok = True
    for m in (2, 3):
        rep = check_cayley_isomorphism(m, 4)
        ok &= rep.passed
        parts.append(f"m={m}: spheres {rep.cayley_spheres}" + ("" if rep.passed else f" [{rep.mismatch}]"))
    return ok, "; ".join(parts)


def criterion_cayley_dl() -> CriterionResult:
    return _timed(2, "Cayley graph = DL(m,m)", _cayley_dl)


# 3 ---------------------------------------------------------------------------


def _method_agreement() -> tuple[bool, str]:
    pairs = 0
    bad: list[str] = []
    for G in abelian_groups(16):
        for phi in iter_automorphisms(G, cap=16):
            orbit = twisted_classes(G, phi).count
            coker = reidemeister_abelian(G, phi)
            fh = reidemeister_fh(G, phi)
            pairs += 1
            if not orbit == coker == fh:
                bad.append(f"{G.name} {phi.image}: {orbit}/{coker}/{fh}")
    ab_pairs = pairs
    for spec in NONABELIAN_CATALOG:
        G = parse_group_spec(spec)
        for phi in automorphism_group(G, cap=24):
            orbit = twisted_classes(G, phi).count
            fh = reidemeister_fh(G, phi)
            pairs += 1
            if orbit != fh:
                bad.append(f"{G.name} {phi.image}: {orbit}/{fh}")
    detail = f"{ab_pairs} abelian and {pairs - ab_pairs} non-abelian (group, automorphism) pairs"
    if bad:
        detail += f"; first disagreement {bad[0]}"
    return not bad, detail


def criterion_method_agreement() -> CriterionResult:
    return _timed(3, "Reidemeister method agreement", _method_agreement)


# 4 ---------------------------------------------------------------------------


def _pair_window(s: LampAutSpec, blocks: int) -> list[int]:
    start = pair_index(s)
    return list(range(start, start + blocks))


def _cyclic_divisibility() -> tuple[bool, str]:
    report = cross_validate_cyclic(30)
    ok = report.passed
    problems = [f"m={r.m}" for r in report.rows if not r.ok]
    values = {r.value for r in report.rows if r.status == NOT_RINF}
    if values != {2}:
        ok = False
        problems.append(f"witness values {sorted(values)}")
    growth = []
    for m in (2, 3):
        G = cyclic(m)
        for xi in iter_automorphisms(G):
            for c in (0, 1):
                s = LampAutSpec(G, xi, c, -1)
                counts = [window_class_count(s, _pair_window(s, b)) for b in range(1, 5)]
                if any(a >= b for a, b in zip(counts, counts[1:])):
                    ok = False
                    problems.append(f"m={m} c={c}: counts {counts} not increasing")
                if m == 2 and counts != [2, 4, 8, 16]:
                    ok = False
                    problems.append(f"m=2 c={c}: counts {counts}")
                growth.append(counts)
    detail = (
        f"{len(report.rows)} cyclic groups, {sum(r.status == RINF for r in report.rows)} RInf, "
        f"witness values {sorted(values)}, window counts m=2 {growth[0]} m=3 {growth[-1]}"
    )
    if problems:
        detail += "; problems: " + ", ".join(problems)
    return ok, detail


def criterion_cyclic_divisibility() -> CriterionResult:
    return _timed(4, "cyclic lamp groups: RInf iff 2|m or 3|m", _cyclic_divisibility)


# 5 ---------------------------------------------------------------------------


def _fixed_points() -> tuple[bool, str]:
    checked = 0
    bad = []
    for n in (2, 3):
        G = cyclic(n)
        for xi in iter_automorphisms(G):
            for c in (0, 1):
                s = LampAutSpec(G, xi, c, -1)
                for i in range(-4, 6):
                    if 2 * i == c:
                        continue
                    checked += 1
                    fps = block_fixed_points(s, i)
                    if len(fps) < 2:
                        bad.append(f"n={n} xi=*{xi(1)} c={c} i={i}")
    detail = f"{checked} pair blocks, each with a nontrivial fixed point"
    if bad:
        detail = f"{len(bad)} of {checked} pair blocks without a nontrivial fixed point, first {bad[0]}"
    return not bad, detail


def criterion_fixed_points() -> CriterionResult:
    return _timed(5, "pair-block fixed points for n = 2, 3", _fixed_points)


# 6 ---------------------------------------------------------------------------


def catalog_expectations() -> list[tuple[str, str, tuple[str, ...]]]:
    """``(group spec, expected verdict, acceptable rules)``."""
    rows = [
        ("D6", RINF, ("abelianization",)),
        ("D8", RINF, ("center",)),
        ("D12", RINF, ("center",)),
        ("Q8", RINF, ("center",)),
        ("A5", RINF, ("simple-trivial-out", "alternating")),
        ("S5", RINF, ("symmetric",)),
        ("S6", RINF, ("symmetric",)),
        ("S7", RINF, ("symmetric",)),
    ]
    for p in (3, 5, 7, 11):
        rows.append((f"C{2 * p}", RINF, ("order-2p",)))
        rows.append((f"D{2 * p}", RINF, ("order-2p",)))
    rows.append(("A6", UNKNOWN, ()))
    return rows


def _catalog() -> tuple[bool, str]:
    bad = []
    summary = []
    for spec, expected, rules in catalog_expectations():
        v = classify(parse_group_spec(spec), exhaustive=True)
        fired = v.rules
        good = v.status == expected and (not rules or any(r in fired for r in rules))
        if expected == UNKNOWN:
            good = good and not fired
        if not good:
            bad.append(f"{spec}: {v.status} {fired}")
        summary.append(f"{spec}={v.status}")
    detail = ", ".join(summary)
    if bad:
        detail += "; wrong: " + "; ".join(bad)
    return not bad, detail


def criterion_catalog() -> CriterionResult:
    return _timed(6, "classifier verdicts on the non-abelian catalog", _catalog)


# 7 ---------------------------------------------------------------------------


def characteristic_cases() -> list[tuple[str, str, int | None]]:
    cases = [(g, "lamp_base", None) for g in ("C4", "C9", "Q8", "D6")]
    cases += [("C4", "order_subgroup", 2), ("C9", "order_subgroup", 3)]
    for g in ("Q8", "D6"):
        cases += [(g, "center_wreath", None), (g, "commutator_lamps", None)]
    return cases


def _characteristic() -> tuple[bool, str]:
    parts = []
    ok = True
    for spec, kind, param in characteristic_cases():
        G = parse_group_spec(spec)
        tag = char_tag(kind, G, param)
        rep = verify_characteristic(tag, all_specs(G), window=4)
        ok &= rep.passed
        parts.append(f"{tag} in {spec}: {rep.members} members x {rep.specs} specs" + ("" if rep.passed else f" [{rep.violation}]"))
    return ok, "; ".join(parts)


def criterion_characteristic() -> CriterionResult:
    return _timed(7, "characteristic subgroups", _characteristic)


# 8 ---------------------------------------------------------------------------


def block_windows(s: LampAutSpec) -> list[list[int]]:
    """Prefix windows of pair blocks, and of the middle block plus pair
    blocks when ``c`` is even."""
    start = pair_index(s)
    pairs = list(range(start, start + 6))
    windows = [pairs[:k] for k in range(1, 7)]
    if s.c % 2 == 0:
        windows += [[s.c // 2] + pairs[:k] for k in range(0, 6)]
    return windows


def _blockwise() -> tuple[bool, str]:
    compared = 0
    skipped = 0
    bad = []
    for n in (2, 3, 5):
        G = cyclic(n)
        for xi in iter_automorphisms(G):
            for c in (0, 1):
                s = LampAutSpec(G, xi, c, -1)
                for w in block_windows(s):
                    positions = sum(len(block_positions(s, i)) for i in w)
                    if n**positions > CARRIER_CAP:
                        skipped += 1
                        continue
                    product = window_class_count(s, w)
                    direct = window_orbit_count(s, w)
                    compared += 1
                    if product != direct:
                        bad.append(f"n={n} xi=*{xi(1)} c={c} window={w}: {product} vs {direct}")
    detail = f"{compared} windows compared ({skipped} above the carrier cap)"
    if bad:
        detail += "; first mismatch " + bad[0]
    return not bad, detail


def criterion_blockwise() -> CriterionResult:
    return _timed(8, "blockwise product law", _blockwise)


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_word_metric,
    2: criterion_cayley_dl,
    3: criterion_method_agreement,
    4: criterion_cyclic_divisibility,
    5: criterion_fixed_points,
    6: criterion_catalog,
    7: criterion_characteristic,
    8: criterion_blockwise,
}


def run_acceptance(numbers: list[int] | None = None) -> list[CriterionResult]:
    results = []
    for k in numbers or sorted(CRITERIA):
        try:
            results.append(CRITERIA[k]())
        except CapacityError as exc:
            results.append(CriterionResult(k, f"criterion {k}", False, f"capacity exceeded: {exc}"))
    return results
