"""Quotient of a TGS by a k-ideal via the Bourne congruence."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import Tgs, check_axioms, require_valid
from .errors import UsageError
from .ideals import KIdeal, as_set


def bourne_related(t: Tgs, ideal, x: int, y: int) -> bool:
    """x ~ y iff x + i = y + j for some i, j in the ideal."""
    P = t.plus
    return any(P[x][i] == P[y][j] for i in ideal for j in ideal)


def bourne_partition(t: Tgs, ideal, relation=bourne_related) -> list:
    """Classes of the transitive closure of ``relation``, each sorted, ordered by least member."""
    members = ideal.members if isinstance(ideal, KIdeal) else as_set(t, ideal)
    parent = list(t.carrier)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in itertools.combinations(t.carrier, 2):
        if relation(t, members, x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups = {}
    for x in t.carrier:
        groups.setdefault(find(x), []).append(x)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


@dataclass(frozen=True)
class QuotientTgs:
    source: Tgs
    ideal: frozenset
    classes: tuple
    class_of: tuple
    tgs: Tgs
    well_defined: bool
    witness: dict | None = None

    @property
    def zero_class(self) -> int:
        return self.class_of[self.source.zero]

    def project(self, x: int) -> int:
        return self.class_of[x]

    def class_label(self, c: int) -> str:
        return self.tgs.label(c)


def project(q: QuotientTgs, x: int) -> int:
    return q.class_of[x]


def build_quotient(t: Tgs, ideal, relation=bourne_related, force=False) -> QuotientTgs:
    """Induced tables use the least member of each class as representative.

    Every representative choice is then compared against the induced tables;
    the first disagreement is kept as ``witness`` and ``well_defined`` is False.
    """
    require_valid(t, force)
    members = ideal.members if isinstance(ideal, KIdeal) else as_set(t, ideal)
    if t.zero not in members:
        raise UsageError("ideal must contain zero")
    classes = bourne_partition(t, members, relation)
    class_of = [0] * t.m
    for c, g in enumerate(classes):
        for x in g:
            class_of[x] = c
    reps = [g[0] for g in classes]
    k = range(len(classes))
    P, X = t.plus, t.ternary
    plus = tuple(tuple(class_of[P[reps[a]][reps[b]]] for b in k) for a in k)
    tern = tuple(tuple(tuple(class_of[X[reps[a]][reps[b]][reps[c]]] for c in k) for b in k) for a in k)
    action = tuple(tuple(class_of[row[reps[a]]] for a in k) for row in t.gamma_action)
    labels = tuple(f"{t.label(r)}+I" for r in reps)
    qt = Tgs(labels, class_of[t.zero], plus, tern, t.gamma, action, name=f"{t.name}/I" if t.name else "")

    witness = None
    for x, y in itertools.product(t.carrier, t.carrier):
        got, want = class_of[P[x][y]], plus[class_of[x]][class_of[y]]
        if got != want:
            witness = {"op": "plus", "inputs": t.labels((x, y)), "class": labels[got], "induced": labels[want]}
            break
    if witness is None:
        for x, y, z in itertools.product(t.carrier, repeat=3):
            got, want = class_of[X[x][y][z]], tern[class_of[x]][class_of[y]][class_of[z]]
            if got != want:
                witness = {"op": "ternary", "inputs": t.labels((x, y, z)), "class": labels[got], "induced": labels[want]}
                break
    if witness is None:
        for g, row in enumerate(t.gamma_action):
            for x in t.carrier:
                got, want = class_of[row[x]], action[g][class_of[x]]
                if got != want:
                    witness = {"op": "gamma", "gamma": t.gamma[g], "inputs": [t.label(x)], "class": labels[got], "induced": labels[want]}
                    break
            if witness:
                break
    return QuotientTgs(t, frozenset(members), tuple(classes), tuple(class_of), qt, witness is None, witness)


def quotient_report(q: QuotientTgs) -> dict:
    t = q.source
    doc = {
        "structure": t.name,
        "ideal": t.labels(sorted(q.ideal)),
        "classes": [t.labels(g) for g in q.classes],
        "class_labels": list(q.tgs.elements),
        "zero_class": q.tgs.label(q.zero_class),
        "zero_class_equals_ideal": set(q.classes[q.zero_class]) == set(q.ideal),
        "well_defined": q.well_defined,
        "witness": q.witness,
    }
    if q.well_defined:
        doc["axioms_pass"] = check_axioms(q.tgs).ok
    return doc
