"""Finite commutative ternary Gamma-semirings given by explicit tables.

Elements are plain ``int`` indices into ``Tgs.elements``; the position of a
label in that tuple is the canonical order used for every tie-break in the
package.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from . import bounds as _bounds
from .errors import InvalidStructure, MalformedInput

AXIOMS = ("zero-identity", "A1", "A2", "A3", "A4", "A5")
AXIOM_NAMES = {
    "zero-identity": "zero is the additive identity",
    "A1": "idempotent commutative associative addition",
    "A2": "monotonicity of the ternary operation",
    "A3": "distributivity over addition",
    "A4": "Gamma-action compatibility",
    "A5": "balanced ternary associativity",
}


@dataclass(frozen=True)
class Tgs:
    elements: tuple
    zero: int
    plus: tuple
    ternary: tuple
    gamma: tuple = ()
    gamma_action: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        m = len(self.elements)
        if m == 0:
            raise MalformedInput("carrier must be nonempty")
        if len(set(self.elements)) != m:
            raise MalformedInput("element labels must be unique")
        if len(set(self.gamma)) != len(self.gamma):
            raise MalformedInput("gamma labels must be unique")
        if not 0 <= self.zero < m:
            raise MalformedInput(f"zero index {self.zero} out of range")
        ok = range(m)
        if len(self.plus) != m or any(len(row) != m or any(v not in ok for v in row) for row in self.plus):
            raise MalformedInput(f"plus table must be {m}x{m} over element indices")
        if len(self.ternary) != m or any(
            len(plane) != m or any(len(row) != m or any(v not in ok for v in row) for row in plane)
            for plane in self.ternary
        ):
            raise MalformedInput(f"ternary table must be {m}x{m}x{m} over element indices")
        if len(self.gamma_action) != len(self.gamma) or any(
            len(row) != m or any(v not in ok for v in row) for row in self.gamma_action
        ):
            raise MalformedInput("gamma_action must have one row of length m per gamma label")

    @property
    def m(self) -> int:
        return len(self.elements)

    @property
    def carrier(self) -> range:
        return range(len(self.elements))

    def index(self, label) -> int:
        try:
            return self.elements.index(str(label))
        except ValueError:
            raise MalformedInput(f"unknown element label {label!r}") from None

    def label(self, x: int) -> str:
        return self.elements[x]

    def labels(self, xs) -> list:
        return [self.elements[x] for x in xs]

    def word(self, labels) -> tuple:
        return tuple(self.index(s) for s in labels)

    def gamma_index(self, g) -> int:
        if isinstance(g, int) and not isinstance(g, bool):
            if 0 <= g < len(self.gamma):
                return g
            raise MalformedInput(f"gamma index {g} out of range")
        try:
            return self.gamma.index(str(g))
        except ValueError:
            raise MalformedInput(f"unknown gamma label {g!r}") from None

    @cached_property
    def order(self) -> OrderRelation:
        return order_relation(self)

    @cached_property
    def report(self) -> AxiomReport:
        return check_axioms(self)

    @property
    def is_valid(self) -> bool:
        return self.report.ok

    # -- construction -----------------------------------------------------

    @classmethod
    def from_functions(cls, labels, zero, plus, ternary, gamma=None, name=""):
        """Tabulate Python callables over the index set ``range(len(labels))``."""
        m = len(labels)
        gamma = gamma if gamma is not None else {"e": lambda x: x}
        r = range(m)
        return cls(
            elements=tuple(labels),
            zero=zero,
            plus=tuple(tuple(plus(x, y) for y in r) for x in r),
            ternary=tuple(tuple(tuple(ternary(x, y, z) for z in r) for y in r) for x in r),
            gamma=tuple(gamma),
            gamma_action=tuple(tuple(f(x) for x in r) for f in gamma.values()),
            name=name,
        )

    @classmethod
    def from_document(cls, doc, name="") -> Tgs:
        if not isinstance(doc, dict):
            raise MalformedInput("TGS document must be a JSON object")
        missing = [k for k in ("elements", "zero", "plus", "ternary") if k not in doc]
        if missing:
            raise MalformedInput(f"TGS document missing keys: {', '.join(missing)}")
        elements = tuple(str(s) for s in doc["elements"])
        pos = {s: i for i, s in enumerate(elements)}

        def idx(v):
            try:
                return pos[str(v)]
            except KeyError:
                raise MalformedInput(f"unknown element label {v!r}") from None

        def grid(rows, depth, what):
            if depth == 0:
                return idx(rows)
            if not isinstance(rows, list) or len(rows) != len(elements):
                raise MalformedInput(f"{what} table must have {len(elements)} entries per axis")
            return tuple(grid(r, depth - 1, what) for r in rows)

        gamma = tuple(str(g) for g in doc.get("gamma", []))
        action = doc.get("gamma_action", {})
        if not isinstance(action, dict) or set(action) != set(gamma):
            raise MalformedInput("gamma_action must map exactly the gamma labels to rows")
        return cls(
            elements=elements,
            zero=idx(doc["zero"]),
            plus=grid(doc["plus"], 2, "plus"),
            ternary=grid(doc["ternary"], 3, "ternary"),
            gamma=gamma,
            gamma_action=tuple(grid(action[g], 1, "gamma_action") for g in gamma),
            name=name or str(doc.get("name", "")),
        )

    def to_document(self) -> dict:
        lab = self.elements
        doc = {}
        if self.name:
            doc["name"] = self.name
        doc.update(
            elements=list(lab),
            zero=lab[self.zero],
            gamma=list(self.gamma),
            plus=[[lab[v] for v in row] for row in self.plus],
            ternary=[[[lab[v] for v in row] for row in plane] for plane in self.ternary],
            gamma_action={g: [lab[v] for v in row] for g, row in zip(self.gamma, self.gamma_action)},
        )
        return doc


def load_tgs(path) -> Tgs:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc})") from None
    return Tgs.from_document(doc, name=doc.get("name") or path.stem)


def dump_document(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def product(s: Tgs, t: Tgs, name="") -> Tgs:
    """Direct product with coordinatewise operations; Gamma is the product of the two label sets."""
    pairs = [(x, y) for x in s.carrier for y in t.carrier]
    pos = {p: i for i, p in enumerate(pairs)}
    labels = [f"({s.label(x)},{t.label(y)})" for x, y in pairs]

    def plus(i, j):
        (a, b), (c, d) = pairs[i], pairs[j]
        return pos[s.plus[a][c], t.plus[b][d]]

    def tern(i, j, k):
        (a, b), (c, d), (e, f) = pairs[i], pairs[j], pairs[k]
        return pos[s.ternary[a][c][e], t.ternary[b][d][f]]

    gamma = {}
    for gi, g in enumerate(s.gamma):
        for hi, h in enumerate(t.gamma):
            label = g if len(t.gamma) == 1 and g == h else f"({g},{h})"
            gamma[label] = (lambda gi, hi: lambda i: pos[s.gamma_action[gi][pairs[i][0]], t.gamma_action[hi][pairs[i][1]]])(gi, hi)
    return Tgs.from_functions(labels, pos[s.zero, t.zero], plus, tern, gamma, name=name)


def require_valid(t: Tgs, force=False) -> None:
    if not force and not t.is_valid:
        failed = ", ".join(t.report.failed)
        raise InvalidStructure(f"{t.name or 'structure'} fails axioms ({failed}); use --force for diagnostic runs")


# -- evaluators ------------------------------------------------------------

def _check(t, *xs):
    for x in xs:
        if not (isinstance(x, int) and 0 <= x < t.m):
            raise MalformedInput(f"element index {x!r} out of range for carrier of size {t.m}")


def eval_plus(t: Tgs, x: int, y: int) -> int:
    _check(t, x, y)
    return t.plus[x][y]


def eval_ternary(t: Tgs, x: int, y: int, z: int) -> int:
    _check(t, x, y, z)
    return t.ternary[x][y][z]


def eval_gamma(t: Tgs, g, x: int) -> int:
    _check(t, x)
    return t.gamma_action[t.gamma_index(g)][x]


def leq(t: Tgs, x: int, y: int) -> bool:
    _check(t, x, y)
    return t.plus[x][y] == y


@dataclass(frozen=True)
class OrderRelation:
    leq: tuple

    def __call__(self, x, y) -> bool:
        return self.leq[x][y]

    def lt(self, x, y) -> bool:
        return x != y and self.leq[x][y]

    def is_partial_order(self) -> bool:
        m = len(self.leq)
        r = range(m)
        if not all(self.leq[x][x] for x in r):
            return False
        for x, y in itertools.product(r, r):
            if x != y and self.leq[x][y] and self.leq[y][x]:
                return False
        return all(
            self.leq[x][z] for x, y, z in itertools.product(r, r, r) if self.leq[x][y] and self.leq[y][z]
        )

    def minimum(self):
        m = len(self.leq)
        lows = [x for x in range(m) if all(self.leq[x][y] for y in range(m))]
        return lows[0] if len(lows) == 1 else None

    def below(self, x) -> list:
        return [y for y in range(len(self.leq)) if self.leq[y][x]]


def order_relation(t: Tgs) -> OrderRelation:
    return OrderRelation(tuple(tuple(t.plus[x][y] == y for y in t.carrier) for x in t.carrier))


# -- axiom checking --------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    axiom: str
    law: str
    inputs: tuple
    lhs: int
    rhs: int

    def render(self, t: Tgs) -> str:
        return f"{self.axiom}/{self.law}: {format_law(t, self.law, self.inputs)}"

    def to_document(self, t: Tgs) -> dict:
        if self.law.startswith("gamma"):
            inputs = [t.gamma[self.inputs[0]]] + t.labels(self.inputs[1:])
        else:
            inputs = t.labels(self.inputs)
        return {
            "axiom": self.axiom,
            "law": self.law,
            "inputs": inputs,
            "lhs": t.label(self.lhs),
            "rhs": t.label(self.rhs),
            "text": format_law(t, self.law, self.inputs),
        }


def _tern_slot(t, slot, v, b, c):
    # place v at position `slot`, the other two arguments keep their order
    args = [b, c]
    args.insert(slot, v)
    return t.ternary[args[0]][args[1]][args[2]]


def evaluate_law(t: Tgs, law: str, inputs: tuple):
    """Return ``(lhs, rhs, holds)`` for one instance of a named law."""
    P, X = t.plus, t.ternary
    if law == "identity":
        (x,) = inputs
        lhs, rhs = P[x][t.zero], x
    elif law == "idempotent":
        (x,) = inputs
        lhs, rhs = P[x][x], x
    elif law == "commutative":
        x, y = inputs
        lhs, rhs = P[x][y], P[y][x]
    elif law == "associative":
        x, y, z = inputs
        lhs, rhs = P[P[x][y]][z], P[x][P[y][z]]
    elif law.startswith("monotone-slot"):
        x, y, z, x2, y2, z2 = inputs
        lhs, rhs = X[x][y][z], X[x2][y2][z2]
        return lhs, rhs, P[lhs][rhs] == rhs
    elif law.startswith("distributive-slot"):
        slot = int(law[-1]) - 1
        a, b, c, d = inputs
        lhs = _tern_slot(t, slot, P[a][b], c, d)
        rhs = P[_tern_slot(t, slot, a, c, d)][_tern_slot(t, slot, b, c, d)]
    elif law.startswith("gamma-slot"):
        slot = int(law[-1]) - 1
        g, a, b, c = inputs
        act = t.gamma_action[g]
        args = [a, b, c]
        args[slot] = act[args[slot]]
        lhs, rhs = X[args[0]][args[1]][args[2]], act[X[a][b][c]]
    elif law == "assoc-middle":
        a, b, c, d, e = inputs
        lhs, rhs = X[X[a][b][c]][d][e], X[a][X[b][c][d]][e]
    elif law == "assoc-right":
        a, b, c, d, e = inputs
        lhs, rhs = X[X[a][b][c]][d][e], X[a][b][X[c][d][e]]
    else:
        raise ValueError(f"unknown law {law!r}")
    return lhs, rhs, lhs == rhs


def format_law(t: Tgs, law: str, inputs: tuple) -> str:
    L = t.label
    lhs, rhs, _ = evaluate_law(t, law, inputs)

    def br(*xs):
        return "[" + ",".join(L(x) if isinstance(x, int) else x for x in xs) + "]"

    if law == "identity":
        return f"{L(inputs[0])}+{L(t.zero)} = {L(lhs)} but expected {L(rhs)}"
    if law in ("idempotent", "commutative", "associative"):
        return f"{law} fails on ({', '.join(map(L, inputs))}): {L(lhs)} != {L(rhs)}"
    if law.startswith("monotone"):
        x, y, z, x2, y2, z2 = inputs
        return f"{br(x, y, z)} = {L(lhs)} but {br(x2, y2, z2)} = {L(rhs)}, and {L(lhs)} is not below {L(rhs)}"
    if law.startswith("gamma"):
        g = t.gamma[inputs[0]]
        return f"{law} fails for {g} on {br(*inputs[1:])}: {L(lhs)} != {L(rhs)}"
    return f"{law} fails on ({', '.join(map(L, inputs))}): {L(lhs)} != {L(rhs)}"


def _laws(t: Tgs):
    """Yield ``(axiom, law, inputs)`` for every law instance in scan order."""
    r = t.carrier
    for x in r:
        yield "zero-identity", "identity", (x,)
    for x in r:
        yield "A1", "idempotent", (x,)
    for x, y in itertools.product(r, r):
        yield "A1", "commutative", (x, y)
    for xs in itertools.product(r, r, r):
        yield "A1", "associative", xs
    up = [[y for y in r if t.plus[x][y] == y and y != x] for x in r]
    for slot in range(3):
        for xs in itertools.product(r, r, r):
            for v in up[xs[slot]]:
                ys = list(xs)
                ys[slot] = v
                yield "A2", f"monotone-slot{slot + 1}", xs + tuple(ys)
    for slot in range(3):
        for xs in itertools.product(r, repeat=4):
            yield "A3", f"distributive-slot{slot + 1}", xs
    for g in range(len(t.gamma)):
        for slot in range(3):
            for xs in itertools.product(r, r, r):
                yield "A4", f"gamma-slot{slot + 1}", (g,) + xs
    for xs in itertools.product(r, repeat=5):
        yield "A5", "assoc-middle", xs
        yield "A5", "assoc-right", xs


@dataclass(frozen=True)
class AxiomReport:
    status: dict
    violations: dict
    witnesses: tuple
    properties: dict

    @property
    def ok(self) -> bool:
        return all(self.status.values())

    @property
    def failed(self) -> list:
        return [a for a in AXIOMS if not self.status[a]]

    def to_document(self, t: Tgs) -> dict:
        return {
            "structure": t.name,
            "valid": self.ok,
            "status": {a: "pass" if self.status[a] else "fail" for a in AXIOMS},
            "violations": {a: self.violations[a] for a in AXIOMS},
            "properties": self.properties,
            "witnesses": [w.to_document(t) for w in self.witnesses],
        }


def check_axioms(t: Tgs, witness_cap=None) -> AxiomReport:
    """Exhaustively scan every axiom instance; violations are returned as data."""
    cap = _bounds.current().witness_cap if witness_cap is None else witness_cap
    counts = dict.fromkeys(AXIOMS, 0)
    witnesses = []
    for axiom, law, inputs in _laws(t):
        lhs, rhs, holds = evaluate_law(t, law, inputs)
        if holds:
            continue
        counts[axiom] += 1
        if counts[axiom] <= cap:
            witnesses.append(Witness(axiom, law, inputs, lhs, rhs))
    return AxiomReport(
        status={a: counts[a] == 0 for a in AXIOMS},
        violations=counts,
        witnesses=tuple(witnesses),
        properties=informational_properties(t),
    )


def first_violation(t: Tgs):
    """First violated law instance in scan order, or None; stops at the first hit."""
    for axiom, law, inputs in _laws(t):
        lhs, rhs, holds = evaluate_law(t, law, inputs)
        if not holds:
            return Witness(axiom, law, inputs, lhs, rhs)
    return None


def replay_witness(t: Tgs, w: Witness) -> bool:
    """True when the witness still exhibits a violation with the recorded values."""
    lhs, rhs, holds = evaluate_law(t, w.law, w.inputs)
    return not holds and (lhs, rhs) == (w.lhs, w.rhs)


def informational_properties(t: Tgs) -> dict:
    """Facts worth reporting that are not part of the axiom set."""
    r = t.carrier
    X, z = t.ternary, t.zero
    absorbing = all(
        X[z][x][y] == z and X[x][z][y] == z and X[x][y][z] == z for x, y in itertools.product(r, r)
    )
    symmetric = all(
        X[a][b][c] == X[p[0]][p[1]][p[2]]
        for a, b, c in itertools.product(r, r, r)
        for p in itertools.permutations((a, b, c))
    )
    return {
        "ternary-zero-absorption": absorbing,
        "ternary-symmetric": symmetric,
        "order-is-partial-order": t.order.is_partial_order(),
        "zero-is-minimum": t.order.minimum() == t.zero,
    }
