"""k-ideals, annihilators, prime tests and the ideal lattice.

A k-ideal here contains zero, is downward closed in the addition order,
absorbs the ternary product in every slot and is closed under addition.
Pass ``literal=True`` to drop the addition-closure clause.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import bounds as _bounds
from .algebra import Tgs, require_valid
from .errors import BoundExceeded, UsageError


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate with an optional counterexample.

    ``ok`` is ``None`` when the predicate does not apply.
    """

    ok: bool | None
    reason: str = ""
    witness: tuple = ()
    detail: str = ""

    def __bool__(self):
        return bool(self.ok)


@dataclass(frozen=True, order=False)
class KIdeal:
    members: frozenset
    tgs: Tgs = field(compare=False, repr=False)

    @property
    def key(self):
        return (len(self.members), tuple(sorted(self.members)))

    def __lt__(self, other):
        return self.key < other.key

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    @property
    def is_zero(self) -> bool:
        return self.members == {self.tgs.zero}

    @property
    def is_top(self) -> bool:
        return len(self.members) == self.tgs.m

    def labels(self) -> list:
        return self.tgs.labels(sorted(self.members))

    def render(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def as_set(t: Tgs, s) -> frozenset:
    """Accept labels or indices and return a frozenset of indices."""
    out = set()
    for x in s:
        out.add(x if isinstance(x, int) and not isinstance(x, bool) else t.index(x))
    for x in out:
        if not 0 <= x < t.m:
            raise UsageError(f"element index {x} out of range")
    return frozenset(out)


def is_k_ideal(t: Tgs, s, literal=False) -> Verdict:
    """Check every k-ideal clause and return the first violation found.

    Absorption is scanned with the free arguments in descending order: on a
    monotone structure a violation shows up first at the largest arguments.
    """
    s = as_set(t, s)
    L = t.label
    if t.zero not in s:
        return Verdict(False, "contains-zero", (t.zero,), f"zero {L(t.zero)} is missing")
    leq = t.order
    for a in sorted(s):
        for b in t.carrier:
            if b not in s and leq(b, a):
                return Verdict(False, "downward-closed", (b, a), f"{L(b)} <= {L(a)} but {L(b)} is missing")
    X = t.ternary
    desc = sorted(t.carrier, reverse=True)
    for a in sorted(s):
        for x in desc:
            for y in desc:
                for args in ((a, x, y), (x, a, y), (x, y, a)):
                    v = X[args[0]][args[1]][args[2]]
                    if v not in s:
                        text = "[" + ",".join(map(L, args)) + f"] = {L(v)} is outside the set"
                        return Verdict(False, "absorption", args + (v,), text)
    if not literal:
        for a, b in itertools.combinations_with_replacement(sorted(s), 2):
            v = t.plus[a][b]
            if v not in s:
                return Verdict(False, "plus-closed", (a, b, v), f"{L(a)}+{L(b)} = {L(v)} is outside the set")
    return Verdict(True)


def ideal_closure(t: Tgs, seed=(), literal=False) -> KIdeal:
    """Least k-ideal containing ``seed``."""
    members = set(as_set(t, seed)) | {t.zero}
    X, P, leq = t.ternary, t.plus, t.order
    r = t.carrier
    while True:
        new = set(members)
        for a in members:
            new.update(b for b in r if leq(b, a))
            for x, y in itertools.product(r, r):
                new.add(X[a][x][y])
                new.add(X[x][a][y])
                new.add(X[x][y][a])
        if not literal:
            new.update(P[a][b] for a in members for b in members)
        if new == members:
            return KIdeal(frozenset(members), t)
        members = new


def _downsets(t: Tgs):
    """All nonempty downsets of the addition order (requires a partial order)."""
    leq = t.order
    below = {x: [y for y in t.carrier if y != x and leq(y, x)] for x in t.carrier}
    # linear extension: fewer elements below first
    seq = sorted(t.carrier, key=lambda x: (len(below[x]), x))
    chosen = set()

    def walk(i):
        if i == len(seq):
            yield frozenset(chosen)
            return
        x = seq[i]
        yield from walk(i + 1)
        if all(y in chosen for y in below[x]):
            chosen.add(x)
            yield from walk(i + 1)
            chosen.discard(x)

    for d in walk(0):
        if d:
            yield d


def enumerate_k_ideals(t: Tgs, literal=False, force=False, bounds=None) -> list:
    """All k-ideals ordered by size, then by sorted member indices."""
    require_valid(t, force)
    bounds = bounds or _bounds.current()
    if t.m > bounds.max_carrier:
        raise BoundExceeded(
            f"ideal enumeration refused: carrier has {t.m} elements, bound is {bounds.max_carrier} "
            "(raise max_carrier to override)"
        )
    if t.order.is_partial_order():
        candidates = _downsets(t)
    else:
        others = [x for x in t.carrier if x != t.zero]
        candidates = (
            frozenset((t.zero,) + c) for k in range(len(others) + 1) for c in itertools.combinations(others, k)
        )
    found = [KIdeal(s, t) for s in candidates if is_k_ideal(t, s, literal)]
    return sorted(found)


def _same_parent(i: KIdeal, j: KIdeal):
    if i.tgs is not j.tgs and i.tgs != j.tgs:
        raise UsageError("ideals belong to different structures")


def meet(i: KIdeal, j: KIdeal) -> KIdeal:
    _same_parent(i, j)
    return KIdeal(i.members & j.members, i.tgs)


def join(i: KIdeal, j: KIdeal, literal=False) -> KIdeal:
    _same_parent(i, j)
    return ideal_closure(i.tgs, i.members | j.members, literal)


def minimal_nonzero_elements(ideal: KIdeal) -> frozenset:
    """Nonzero members with no nonzero member strictly below them (empty for the zero ideal)."""
    t = ideal.tgs
    nz = [x for x in ideal.members if x != t.zero]
    return frozenset(x for x in nz if not any(t.order.lt(y, x) for y in nz))


@dataclass(frozen=True)
class Annihilator:
    members: frozenset
    ideal_check: Verdict


def annihilator(t: Tgs, subset, literal=False) -> Annihilator:
    """Elements x with [x,a,y] = 0 for every a in the subset and every y."""
    a_set = as_set(t, subset)
    X, z = t.ternary, t.zero
    members = frozenset(x for x in t.carrier if all(X[x][a][y] == z for a in a_set for y in t.carrier))
    return Annihilator(members, is_k_ideal(t, members, literal))


def is_prime(p: KIdeal) -> Verdict:
    t = p.tgs
    if p.is_top:
        return Verdict(None, "not-applicable", detail="the whole carrier is not a proper ideal")
    X, L = t.ternary, t.label
    for x, y, z in itertools.product(t.carrier, repeat=3):
        if X[x][y][z] in p and x not in p and y not in p and z not in p:
            return Verdict(False, "prime", (x, y, z), f"[{L(x)},{L(y)},{L(z)}] lies in the ideal but no factor does")
    return Verdict(True)


def is_semiprime(p: KIdeal) -> Verdict:
    t = p.tgs
    if p.is_top:
        return Verdict(None, "not-applicable", detail="the whole carrier is not a proper ideal")
    for x in t.carrier:
        if t.ternary[x][x][x] in p and x not in p:
            return Verdict(False, "semiprime", (x,), f"[{t.label(x)}]^3 lies in the ideal but {t.label(x)} does not")
    return Verdict(True)


@dataclass(frozen=True)
class IdealLattice:
    tgs: Tgs
    nodes: tuple
    meet_table: tuple
    join_table: tuple
    covers: tuple
    literal: bool = False
    distributive: bool = True
    counterexample: tuple | None = None

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.nodes) - 1

    def index(self, ideal: KIdeal) -> int:
        for i, n in enumerate(self.nodes):
            if n.members == ideal.members:
                return i
        raise UsageError(f"{ideal.render()} is not a node of this lattice")

    def to_document(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ce = [self.nodes[i].labels() for i in self.counterexample]
        return {
            "structure": self.tgs.name,
            "mode": "literal" if self.literal else "plus-closed",
            "ideals": [n.labels() for n in self.nodes],
            "hasse_edges": [list(e) for e in self.covers],
            "meet": [list(r) for r in self.meet_table],
            "join": [list(r) for r in self.join_table],
            "distributive": self.distributive,
            "counterexample": ce,
        }

    def hasse_ascii(self) -> str:
        """Levels by ideal size, largest on top, followed by the cover edges."""
        lines = []
        sizes = sorted({len(n) for n in self.nodes}, reverse=True)
        for s in sizes:
            row = [f"[{i}]{n.render()}" for i, n in enumerate(self.nodes) if len(n) == s]
            lines.append(f"size {s:>3}:  " + "   ".join(row))
        lines.append("covers:")
        for lo, hi in self.covers:
            lines.append(f"  [{lo}] -< [{hi}]")
        return "\n".join(lines)


def check_distributive(nodes, meet_table, join_table):
    """Return the first (i, j, k) with i ^ (j v k) != (i ^ j) v (i ^ k), or None."""
    r = range(len(nodes))
    for i, j, k in itertools.product(r, r, r):
        if meet_table[i][join_table[j][k]] != join_table[meet_table[i][j]][meet_table[i][k]]:
            return (i, j, k)
    return None


def ideal_lattice(t: Tgs, literal=False, force=False, bounds=None) -> IdealLattice:
    nodes = enumerate_k_ideals(t, literal=literal, force=force, bounds=bounds)
    pos = {n.members: i for i, n in enumerate(nodes)}
    r = range(len(nodes))
    meet_t = tuple(tuple(pos[meet(nodes[i], nodes[j]).members] for j in r) for i in r)
    join_t = tuple(tuple(pos[join(nodes[i], nodes[j], literal).members] for j in r) for i in r)
    covers = []
    for i, j in itertools.product(r, r):
        if i != j and nodes[i].members < nodes[j].members:
            if not any(nodes[i].members < nodes[k].members < nodes[j].members for k in r):
                covers.append((i, j))
    ce = check_distributive(nodes, meet_t, join_t)
    return IdealLattice(t, tuple(nodes), meet_t, join_t, tuple(covers), literal, ce is None, ce)
