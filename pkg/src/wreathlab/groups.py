"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..order-1``.  Every built-in family fixes its
element order once and for all so that reports are reproducible:

* ``C(n)``: residues ``0..n-1`` under addition.
* ``G x H``: index ``i * |H| + j`` for the pair ``(i, j)``.
* ``D(2n)``: rotations ``r^k`` at index ``k``, then reflections ``r^k s`` at
  index ``n + k``.
* ``Q8``: ``1, -1, i, -i, j, -j, k, -k``.
* ``S(n)``: permutations of ``0..n-1`` in lexicographic order; the product
  ``p * q`` applies ``q`` first, ``(p * q)[x] = p[q[x]]``.
* ``A(n)``: the even permutations, lexicographic.

Groups up to ``TABLE_CAP`` elements carry a materialized table; the two
permutation families above that size multiply permutation arrays on demand.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np
from sympy import factorint, isprime

TABLE_CAP = 1024
MAX_ORDER = 40320
PERM_DEGREE_CAP = 8
AUT_CAP = 24
ASSOC_EXHAUSTIVE_CAP = 256


class GroupError(ValueError):
    """The input does not describe a group."""


class CapacityError(RuntimeError):
    """A configured size cap was exceeded."""

    def __init__(self, what: str, cap: int, flag: str | None = None):
        msg = f"{what} exceeds cap {cap}"
        if flag:
            msg += f" (raise with {flag})"
        super().__init__(msg)
        self.what = what
        self.cap = cap
        self.flag = flag


class FiniteGroup:
    """A finite group on the elements ``0..order-1``.

    ``mul`` is the multiplication; ``table`` is materialized lazily for
    groups of at most ``TABLE_CAP`` elements.
    """

    def __init__(
        self,
        order: int,
        mul: Callable[[int, int], int] | None = None,
        *,
        table: np.ndarray | None = None,
        identity: int = 0,
        inverse: Sequence[int] | None = None,
        generators: Sequence[int] | None = None,
        family: tuple = ("custom",),
        labels: Sequence[str] | None = None,
    ):
        if order < 1:
            raise GroupError("order must be positive")
        if order > MAX_ORDER:
            raise CapacityError(f"group of order {order}", MAX_ORDER)
        self.order = order
        self.identity = identity
        self.family = family
        self.labels = tuple(labels) if labels is not None else None
        self._table = None
        self._rows = None
        if table is not None:
            self._set_table(np.asarray(table))
        elif mul is None:
            raise GroupError("need a table or a multiplication")
        self._mulfn = mul
        self._inverse = tuple(inverse) if inverse is not None else None
        self._generators = tuple(generators) if generators is not None else None
        self._cache: dict = {}

    def _set_table(self, table: np.ndarray) -> None:
        dtype = np.int16 if self.order <= 32767 else np.int32
        self._table = table.astype(dtype, copy=False)
        self._table.setflags(write=False)
        self._rows = self._table.tolist()

    # -- arithmetic -------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self._rows is not None:
            return self._rows[a][b]
        return self._mulfn(a, b)

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result, base = self.identity, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def commutator(self, a: int, b: int) -> int:
        """``a b a^-1 b^-1``."""
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.order > TABLE_CAP:
                raise CapacityError(f"multiplication table of order {self.order}", TABLE_CAP)
            n = self.order
            self._set_table(np.array([[self._mulfn(a, b) for b in range(n)] for a in range(n)]))
        return self._table

    @property
    def has_table(self) -> bool:
        return self._table is not None or self.order <= TABLE_CAP

    @property
    def inverse(self) -> tuple[int, ...]:
        if self._inverse is None:
            if self.has_table:
                rows, e = np.nonzero(self.table == self.identity)
                inv = [0] * self.order
                for a, b in zip(rows.tolist(), e.tolist()):
                    inv[a] = b
                self._inverse = tuple(inv)
            else:
                self._inverse = tuple(
                    next(b for b in self.elements if self.mul(a, b) == self.identity)
                    for a in self.elements
                )
        return self._inverse

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            self._generators = greedy_generators(self)
        return self._generators

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of every element."""
        if "orders" not in self._cache:
            if self.family[0] == "cyclic":
                n = self.order
                self._cache["orders"] = tuple(n // math.gcd(n, k) for k in range(n))
            else:
                out = []
                for a in self.elements:
                    k, x = 1, a
                    while x != self.identity:
                        x = self.mul(x, a)
                        k += 1
                    out.append(k)
                self._cache["orders"] = tuple(out)
        return self._cache["orders"]

    @property
    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            gens = self.generators
            self._cache["abelian"] = all(
                self.mul(a, b) == self.mul(b, a) for a, b in itertools.combinations(gens, 2)
            )
        return self._cache["abelian"]

    @property
    def is_cyclic(self) -> bool:
        return self.family[0] == "cyclic" or self.order in self.orders

    @property
    def name(self) -> str:
        return family_name(self.family, self.order)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    # -- subgroup helpers ------------------------------------------------

    def closure(self, gens: Iterable[int]) -> tuple[int, ...]:
        """Sorted elements of the subgroup generated by ``gens``."""
        gens = [g for g in dict.fromkeys(gens) if g != self.identity]
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def normal_closure(self, elems: Iterable[int]) -> tuple[int, ...]:
        """Smallest normal subgroup containing ``elems``."""
        sub_gens = [x for x in dict.fromkeys(elems) if x != self.identity]
        members = set(self.closure(sub_gens))
        changed = True
        while changed:
            changed = False
            for g in self.generators:
                for h in list(sub_gens):
                    c = self.conj(g, h)
                    if c not in members:
                        sub_gens.append(c)
                        members = set(self.closure(sub_gens))
                        changed = True
        return tuple(sorted(members))

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        return self.identity in s and all(self.mul(a, self.inv(b)) in s for a in s for b in s)

    # -- equality ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup) or other.order != self.order:
            return False
        if self.family[0] != "custom" or other.family[0] != "custom":
            return self.family == other.family
        return bool(np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        if self.family[0] == "custom":
            return hash(("custom", self.order))
        return hash(self.family)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def family_name(family: tuple, order: int) -> str:
    kind = family[0]
    if kind == "cyclic":
        return f"C{family[1]}"
    if kind == "dihedral":
        return f"D{family[1]}"
    if kind == "quaternion-8":
        return "Q8"
    if kind == "symmetric":
        return f"S{family[1]}"
    if kind == "alternating":
        return f"A{family[1]}"
    if kind == "direct-sum":
        return "x".join(family_name(f, 0) for f in family[1])
    return f"custom({order})"


def greedy_generators(G: FiniteGroup) -> tuple[int, ...]:
    """Small generating set: repeatedly add an element of largest order
    outside the current subgroup."""
    by_order = sorted(G.elements, key=lambda a: (-G.orders[a], a))
    gens: list[int] = []
    current = {G.identity}
    for a in by_order:
        if len(current) == G.order:
            break
        if a not in current:
            gens.append(a)
            current = set(G.closure(gens))
    return tuple(gens)


# -- constructors ------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("C(n) needs n >= 1")
    if n > MAX_ORDER:
        raise CapacityError(f"C({n})", MAX_ORDER)
    table = None
    if n <= TABLE_CAP:
        r = np.arange(n)
        table = (r[:, None] + r[None, :]) % n
    return FiniteGroup(
        n,
        (lambda a, b: (a + b) % n),
        table=table,
        inverse=[(-a) % n for a in range(n)],
        generators=[1] if n > 1 else [],
        family=("cyclic", n),
    )


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group with ``order`` elements (``D(2n)``, ``n >= 2``)."""
    if order % 2 or order < 4:
        raise GroupError(f"D({order}): order must be even and at least 4")
    n = order // 2
    idx = np.arange(order)
    rot, ref = idx % n, idx // n
    # (r^a s^e)(r^b s^f) = r^(a + (-1)^e b) s^(e + f)
    sign = np.where(ref == 0, 1, -1)
    a, e = rot[:, None], ref[:, None]
    b, f = rot[None, :], ref[None, :]
    new_rot = (a + sign[:, None] * b) % n
    new_ref = (e + f) % 2
    table = new_ref * n + new_rot
    labels = [f"r{k}" for k in range(n)] + [f"r{k}s" for k in range(n)]
    return FiniteGroup(order, table=table, generators=[1, n], family=("dihedral", order), labels=labels)


def quaternion8() -> FiniteGroup:
    # unit products among 1, i, j, k as (sign, unit)
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = np.zeros((8, 8), dtype=int)
    for x in range(8):
        for y in range(8):
            s, u = unit[(x // 2, y // 2)]
            if (x % 2) ^ (y % 2):
                s = -s
            table[x, y] = 2 * u + (s < 0)
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup(8, table=table, generators=[2, 4], family=("quaternion-8",), labels=labels)


def _permutation_group(perms: list[tuple[int, ...]], degree: int, gens: list[tuple[int, ...]], family: tuple) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    order = len(perms)

    def mul(a: int, b: int) -> int:
        p, q = perms[a], perms[b]
        return index[tuple([p[x] for x in q])]

    inverse = []
    for p in perms:
        inv = [0] * degree
        for x, y in enumerate(p):
            inv[y] = x
        inverse.append(index[tuple(inv)])

    table = None
    if order <= TABLE_CAP and degree > 0:
        P = np.array(perms, dtype=np.int64)
        weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
        keys = P @ weights
        table = np.empty((order, order), dtype=np.int64)
        for a in range(order):
            composed = P[a][P]
            table[a] = np.searchsorted(keys, composed @ weights)
    labels = ["(" + " ".join(map(str, p)) + ")" for p in perms]
    return FiniteGroup(
        order,
        mul,
        table=table,
        inverse=inverse,
        generators=[index[g] for g in gens if g != tuple(range(degree))],
        family=family,
        labels=labels,
    )


def _parity(p: Sequence[int]) -> int:
    seen, parity = set(), 0
    for start in range(len(p)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = p[x]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _cycle(degree: int, points: Sequence[int]) -> tuple[int, ...]:
    p = list(range(degree))
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        p[a] = b
    return tuple(p)


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= PERM_DEGREE_CAP:
        raise CapacityError(f"S({n})", PERM_DEGREE_CAP)
    perms = list(itertools.permutations(range(n)))
    gens = []
    if n >= 2:
        gens = [_cycle(n, [0, 1]), _cycle(n, list(range(n)))]
    return _permutation_group(perms, n, gens, ("symmetric", n))


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= PERM_DEGREE_CAP:
        raise CapacityError(f"A({n})", PERM_DEGREE_CAP)
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    gens = []
    if n >= 3:
        gens = [_cycle(n, [0, 1, 2])]
        if n >= 4:
            gens.append(_cycle(n, list(range(n)) if n % 2 else list(range(1, n))))
    return _permutation_group(perms, n, gens, ("alternating", n))


def direct_sum(*groups: FiniteGroup) -> FiniteGroup:
    """Direct sum with mixed-radix indexing (last factor varies fastest)."""
    if not groups:
        return cyclic(1)
    if len(groups) == 1:
        return groups[0]
    result = groups[0]
    for H in groups[1:]:
        result = _direct_sum2(result, H)
    return result


def _flat_family(G: FiniteGroup) -> tuple:
    return G.family[1] if G.family[0] == "direct-sum" else (G.family,)


def _direct_sum2(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    nA, nB = A.order, B.order
    order = nA * nB
    if order > MAX_ORDER:
        raise CapacityError(f"direct sum of order {order}", MAX_ORDER)
    custom = A.family[0] == "custom" or B.family[0] == "custom"
    family = ("custom",) if custom else ("direct-sum", _flat_family(A) + _flat_family(B))
    table = None
    if order <= TABLE_CAP:
        TA = A.table.astype(np.int64)
        TB = B.table.astype(np.int64)
        table = (TA[:, None, :, None] * nB + TB[None, :, None, :]).reshape(order, order)

    def mul(x: int, y: int) -> int:
        a, b = divmod(x, nB)
        c, d = divmod(y, nB)
        return A.mul(a, c) * nB + B.mul(b, d)

    inverse = [A.inv(a) * nB + B.inv(b) for a in range(nA) for b in range(nB)]
    gens = [g * nB + B.identity for g in A.generators] + [A.identity * nB + h for h in B.generators]
    labels = None
    if A.labels or B.labels:
        labels = [f"({A.label(a)},{B.label(b)})" for a in range(nA) for b in range(nB)]
    return FiniteGroup(
        order, mul, table=table, identity=A.identity * nB + B.identity,
        inverse=inverse, generators=gens, family=family, labels=labels,
    )


def from_table(rows: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> FiniteGroup:
    """Validate an explicit multiplication table and wrap it."""
    try:
        T = np.array(rows, dtype=np.int64)
    except ValueError as exc:
        raise GroupError("table rows have unequal lengths") from exc
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise GroupError("table must be a non-empty square array")
    n = T.shape[0]
    if n > TABLE_CAP:
        raise CapacityError(f"explicit table of order {n}", TABLE_CAP)
    if T.min() < 0 or T.max() >= n:
        raise GroupError("table entries out of range")
    expected = np.arange(n)
    if not all(np.array_equal(np.sort(T[i]), expected) for i in range(n)):
        raise GroupError("table is not a Latin square (rows)")
    if not all(np.array_equal(np.sort(T[:, j]), expected) for j in range(n)):
        raise GroupError("table is not a Latin square (columns)")
    ids = [e for e in range(n) if np.array_equal(T[e], expected) and np.array_equal(T[:, e], expected)]
    if not ids:
        raise GroupError("no identity element")
    G = FiniteGroup(n, table=T, identity=ids[0], labels=labels)
    if not check_associative(G):
        raise GroupError("operation is not associative")
    return G


def check_associative(G: FiniteGroup) -> bool:
    """Exhaustive triple check up to ``ASSOC_EXHAUSTIVE_CAP``; Light's test
    over a generating set beyond that."""
    T = G.table.astype(np.int64)
    n = G.order
    if n <= ASSOC_EXHAUSTIVE_CAP:
        left = T[T]  # [a, b, c] -> (a b) c
        right = T[np.arange(n)[:, None, None], T[None, :, :]]  # a (b c)
        return bool(np.array_equal(left, right))
    for g in greedy_generators(G):
        # (x g) y == x (g y) for all x, y
        if not np.array_equal(T[T[:, g]], T[:, T[g]]):
            return False
    return True


def check_group_axioms(G: FiniteGroup) -> bool:
    """Latin square, identity, inverses and associativity, exhaustively."""
    T = G.table
    n = G.order
    r = np.arange(n)
    if not (np.array_equal(T[G.identity], r) and np.array_equal(T[:, G.identity], r)):
        return False
    inv = np.array(G.inverse)
    if not np.all(T[r, inv] == G.identity):
        return False
    if not all(np.array_equal(np.sort(T[i]), r) and np.array_equal(np.sort(T[:, i]), r) for i in range(n)):
        return False
    return check_associative(G)


# -- group spec grammar -----------------------------------------------------

_TOKEN = re.compile(r"^(C|D|S|A|Q)(\d+)$")


def parse_group_spec(text: str) -> FiniteGroup:
    """``C5``, ``C2xC4``, ``D12``, ``Q8``, ``S5``, ``A6`` or ``@path`` to a
    table document."""
    text = text.strip()
    if text.startswith("@"):
        return read_table(Path(text[1:]).read_text())
    parts = [p.strip() for p in re.split(r"[x×]", text)]
    if not parts or any(not p for p in parts):
        raise GroupError(f"bad group spec {text!r}")
    factors = []
    for part in parts:
        m = _TOKEN.match(part)
        if not m:
            raise GroupError(f"bad group spec token {part!r}")
        kind, num = m.group(1), int(m.group(2))
        if kind == "C":
            factors.append(cyclic(num))
        elif kind == "D":
            factors.append(dihedral(num))
        elif kind == "Q":
            if num != 8:
                raise GroupError("only Q8 is supported")
            factors.append(quaternion8())
        elif kind == "S":
            factors.append(symmetric(num))
        else:
            factors.append(alternating(num))
    return direct_sum(*factors)


build_group = parse_group_spec


def read_table(text: str) -> FiniteGroup:
    """Parse the table document: the order, then one row of indices per
    line.  Blank lines and ``#`` comments are ignored."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GroupError("empty table document")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.replace(",", " ").split()] for ln in lines[1:]]
    except ValueError as exc:
        raise GroupError(f"table document: {exc}") from exc
    if len(rows) != n:
        raise GroupError(f"expected {n} rows, found {len(rows)}")
    return from_table(rows)


def format_table(G: FiniteGroup) -> str:
    rows = [" ".join(map(str, row)) for row in G.table.tolist()]
    return "\n".join([str(G.order)] + rows) + "\n"


# -- substructures ---------------------------------------------------------


def subgroup(G: FiniteGroup, elems: Iterable[int]) -> FiniteGroup:
    """The subgroup on ``elems`` as a standalone group (re-indexed in
    increasing order of the original indices)."""
    elems = sorted(set(elems))
    pos = {x: i for i, x in enumerate(elems)}
    if len(elems) > TABLE_CAP:
        raise CapacityError(f"subgroup of order {len(elems)}", TABLE_CAP)
    table = [[pos[G.mul(a, b)] for b in elems] for a in elems]
    labels = [G.label(x) for x in elems] if G.labels else None
    return FiniteGroup(len(elems), table=np.array(table), identity=pos[G.identity], labels=labels)


def quotient(G: FiniteGroup, normal: Iterable[int]) -> tuple[FiniteGroup, list[int]]:
    """``G / N`` and the coset index of each element of ``G``."""
    N = sorted(set(normal))
    coset = [-1] * G.order
    reps: list[int] = []
    for x in G.elements:
        if coset[x] < 0:
            for h in N:
                coset[G.mul(x, h)] = len(reps)
            reps.append(x)
    table = [[coset[G.mul(a, b)] for b in reps] for a in reps]
    return FiniteGroup(len(reps), table=np.array(table), identity=coset[G.identity]), coset


def center(G: FiniteGroup) -> tuple[int, ...]:
    if G.is_abelian:
        return tuple(G.elements)
    gens = G.generators
    return tuple(z for z in G.elements if all(G.mul(z, g) == G.mul(g, z) for g in gens))


def commutator_subgroup(G: FiniteGroup) -> tuple[int, ...]:
    if G.is_abelian:
        return (G.identity,)
    gens = G.generators
    comms = [G.commutator(a, b) for a in gens for b in gens]
    return G.normal_closure(comms)


@dataclass(frozen=True)
class AbelianDecomposition:
    """Primary decomposition: ``(p, k, r)`` means ``(Z_{p^k})^r``."""

    factors: tuple[tuple[int, int, int], ...]

    @property
    def order(self) -> int:
        return math.prod(p ** (k * r) for p, k, r in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "trivial"
        return " + ".join(f"Z{p ** k}" + (f"^{r}" if r > 1 else "") for p, k, r in self.factors)


def canonical_decomposition(factors: Iterable[tuple[int, int, int]]) -> AbelianDecomposition:
    merged: dict[tuple[int, int], int] = {}
    for p, k, r in factors:
        if r:
            merged[(p, k)] = merged.get((p, k), 0) + r
    return AbelianDecomposition(tuple((p, k, r) for (p, k), r in sorted(merged.items())))


def abelian_decomposition(G: FiniteGroup) -> AbelianDecomposition:
    """Elementary divisors of an abelian group, read off from how many
    elements have order dividing each prime power."""
    if not G.is_abelian:
        raise GroupError(f"{G.name} is not abelian")
    if G.family[0] == "cyclic":
        return canonical_decomposition((p, k, 1) for p, k in factorint(G.order).items())
    orders = G.orders
    factors = []
    for p, e in factorint(G.order).items():
        # c[k] = log_p #{x : x^(p^k) = 1}
        c = [0]
        for k in range(1, e + 1):
            count = sum(1 for o in orders if (p ** k) % o == 0)
            c.append(round(math.log(count, p)))
        at_least = [c[k] - c[k - 1] for k in range(1, e + 1)] + [0]
        for k in range(1, e + 1):
            r = at_least[k - 1] - at_least[k]
            if r:
                factors.append((p, k, r))
    return canonical_decomposition(factors)


def abelianization(G: FiniteGroup) -> AbelianDecomposition:
    N = commutator_subgroup(G)
    if len(N) == 1:
        return abelian_decomposition(G)
    Q, _ = quotient(G, N)
    return abelian_decomposition(Q)


def is_p_power(x: int, p: int) -> bool:
    while x % p == 0:
        x //= p
    return x == 1


def sylow(G: FiniteGroup, p: int) -> tuple[tuple[int, ...], bool]:
    """One Sylow ``p``-subgroup and whether it is the only one.

    Grows a ``p``-subgroup by adjoining ``p``-elements that normalize it;
    such an element exists until the subgroup reaches full ``p``-power
    order.
    """
    target = p ** factorint(G.order).get(p, 0)
    if target == 1:
        return (G.identity,), True
    p_elems = [x for x in G.elements if is_p_power(G.orders[x], p)]
    gens: list[int] = []
    P = {G.identity}
    while len(P) < target:
        for x in p_elems:
            if x not in P and all(G.conj(x, h) in P for h in gens):
                gens.append(x)
                P = set(G.closure(gens))
                break
        else:  # pragma: no cover - impossible for a genuine group
            raise GroupError("Sylow search stalled")
    return tuple(sorted(P)), len(p_elems) == target


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Classes ordered by least element, each sorted."""
    if "classes" not in G._cache:
        if G.is_abelian:
            classes = [(x,) for x in G.elements]
        else:
            gens = G.generators
            seen = [False] * G.order
            classes = []
            for x in G.elements:
                if seen[x]:
                    continue
                orbit = [x]
                seen[x] = True
                i = 0
                while i < len(orbit):
                    y = orbit[i]
                    i += 1
                    for g in gens:
                        z = G.conj(g, y)
                        if not seen[z]:
                            seen[z] = True
                            orbit.append(z)
                classes.append(tuple(sorted(orbit)))
        G._cache["classes"] = classes
    return G._cache["classes"]


def class_index(G: FiniteGroup) -> list[int]:
    """Index of the conjugacy class of every element."""
    if "class_index" not in G._cache:
        idx = [0] * G.order
        for i, cls in enumerate(conjugacy_classes(G)):
            for x in cls:
                idx[x] = i
        G._cache["class_index"] = idx
    return G._cache["class_index"]


def is_simple(G: FiniteGroup) -> bool:
    if G.order == 1:
        return False
    if G.is_abelian:
        return isprime(G.order)
    for cls in conjugacy_classes(G)[1:]:
        if len(G.normal_closure([cls[0]])) < G.order:
            return False
    return True


# -- automorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class GroupAut:
    """An automorphism given by the image of every element index."""

    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __len__(self) -> int:
        return len(self.image)

    def compose(self, other: "GroupAut") -> "GroupAut":
        """``self ∘ other``."""
        return GroupAut(tuple(self.image[y] for y in other.image))

    def inverse(self) -> "GroupAut":
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return GroupAut(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))


def identity_aut(G: FiniteGroup) -> GroupAut:
    return GroupAut(tuple(G.elements))


def multiplication_aut(G: FiniteGroup, k: int) -> GroupAut:
    """``x -> kx`` on a cyclic group."""
    if G.family[0] != "cyclic":
        raise GroupError("multiplication maps need a cyclic group")
    n = G.order
    if math.gcd(k, n) != 1:
        raise GroupError(f"{k} is not a unit mod {n}")
    return GroupAut(tuple((k * x) % n for x in range(n)))


def inner_aut(G: FiniteGroup, g: int) -> GroupAut:
    return GroupAut(tuple(G.conj(g, x) for x in G.elements))


def is_automorphism(G: FiniteGroup, image: Sequence[int]) -> bool:
    if len(image) != G.order or sorted(image) != list(G.elements):
        return False
    if image[G.identity] != G.identity:
        return False
    # consistency on every Cayley-graph edge implies a homomorphism
    return all(
        image[G.mul(x, s)] == G.mul(image[x], image[s]) for s in G.generators for x in G.elements
    )


def _aut_generators(G: FiniteGroup) -> tuple[int, ...]:
    if "aut_gens" not in G._cache:
        G._cache["aut_gens"] = greedy_generators(G)
    return G._cache["aut_gens"]


def iter_automorphisms(
    G: FiniteGroup,
    cap: int = AUT_CAP,
    prune: Callable[[dict[int, int]], bool] | None = None,
) -> Iterator[GroupAut]:
    """All automorphisms in a fixed order.

    Cyclic groups yield ``x -> kx`` for units ``k`` in increasing order at
    any size.  Other groups backtrack over images of a small generating
    set, extending a partial homomorphism one generator at a time and
    pruning on any inconsistent Cayley edge.

    ``prune`` receives each partial map (a dict on a subgroup) and returns
    True to skip every automorphism extending it.  Skipping never changes
    the relative order of the automorphisms that remain.
    """
    if G.family[0] == "cyclic":
        n = G.order
        for k in range(1, n + 1):
            if math.gcd(k, n) == 1:
                f = tuple((k * x) % n for x in range(n))
                if prune is None or not prune(dict(enumerate(f))):
                    yield GroupAut(f)
        return
    if G.order > cap:
        raise CapacityError(f"automorphism enumeration for order {G.order}", cap, "--aut-cap")
    gens = _aut_generators(G)
    if not gens:
        yield identity_aut(G)
        return
    orders = G.orders
    e = G.identity

    def extend(level: int, images: list[int]) -> Iterator[GroupAut]:
        if level == len(gens):
            f = _extend_map(G, gens, images)
            assert f is not None
            yield GroupAut(tuple(f[x] for x in G.elements))
            return
        base = _extend_map(G, gens[:level], images) if level else {e: e}
        used = set(base.values())
        for cand in G.elements:
            if orders[cand] != orders[gens[level]] or cand in used:
                continue
            f = _extend_map(G, gens[: level + 1], images + [cand])
            if f is None or len(set(f.values())) != len(f):
                continue
            if prune is not None and prune(f):
                continue
            yield from extend(level + 1, images + [cand])

    yield from extend(0, [])


def _extend_map(G: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> dict[int, int] | None:
    """Homomorphism on ``<gens>`` sending ``gens[i] -> images[i]``, or
    ``None`` if no such homomorphism exists."""
    e = G.identity
    f = {e: e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        fx = f[x]
        for g, h in zip(gens, images):
            y = G.mul(x, g)
            fy = G.mul(fx, h)
            if y in f:
                if f[y] != fy:
                    return None
            else:
                f[y] = fy
                queue.append(y)
    return f


def automorphism_group(G: FiniteGroup, cap: int = AUT_CAP) -> list[GroupAut]:
    key = ("auts", cap if G.family[0] != "cyclic" else None)
    if key not in G._cache:
        G._cache[key] = list(iter_automorphisms(G, cap))
    return G._cache[key]


def count_automorphisms(G: FiniteGroup, cap: int = AUT_CAP) -> int:
    if G.family[0] == "cyclic":
        n = G.order
        return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    return sum(1 for _ in iter_automorphisms(G, cap))


def outer_automorphisms_trivial(G: FiniteGroup, cap: int = AUT_CAP) -> bool:
    """True iff every automorphism is inner, i.e. ``|Aut G| = |G / Z(G)|``."""
    inner = G.order // len(center(G))
    return count_automorphisms(G, cap) == inner


# -- catalog ---------------------------------------------------------------


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def abelian_group_specs(order: int) -> list[str]:
    """Spec strings for every abelian group of the given order, one per
    isomorphism type (primary form)."""
    if order == 1:
        return ["C1"]
    per_prime = []
    for p, e in sorted(factorint(order).items()):
        per_prime.append([[p ** k for k in part] for part in _partitions(e)])
    specs = []
    for combo in itertools.product(*per_prime):
        cyc = sorted(q for part in combo for q in part)
        specs.append("x".join(f"C{q}" for q in cyc))
    return specs


def abelian_groups(max_order: int) -> list[FiniteGroup]:
    return [parse_group_spec(s) for n in range(1, max_order + 1) for s in abelian_group_specs(n)]


# non-abelian groups of order <= 24 built from the families
NONABELIAN_CATALOG = (
    "D6", "S3", "D8", "Q8", "D10", "D12", "A4", "D6xC2", "D14", "D16",
    "D8xC2", "Q8xC2", "D18", "D6xC3", "D20", "D10xC2", "D22", "D24",
    "S4", "A4xC2", "D8xC3", "Q8xC3", "D6xC4", "D12xC2", "D6xC2xC2",
)
