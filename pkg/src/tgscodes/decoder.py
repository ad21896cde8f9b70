"""Ternary syndromes, coset tables, syndrome decoding and channel simulation."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .algebra import Tgs
from .codes import (
    Code,
    Morphism,
    all_words,
    code_params,
    eval_phi,
    hamming,
    literal_mu,
    ominus,
    tgs_weight,
    word_plus,
)
from .errors import UsageError
from .quotient import QuotientTgs, build_quotient

CLEAN = "clean"
CORRECTED = "corrected"
AMBIGUOUS = "ambiguous-leader"
FAILED = "failed-not-codeword"


def syndrome(phi: Morphism, q: QuotientTgs, r) -> int:
    if q.source != phi.tgs:
        raise UsageError("morphism and quotient are over different structures")
    return q.class_of[eval_phi(phi, r)]


@dataclass(frozen=True)
class CosetTable:
    phi: Morphism
    quotient: QuotientTgs
    n: int
    classes: dict
    leaders: dict
    chosen: dict
    unique: dict

    @property
    def tgs(self) -> Tgs:
        return self.phi.tgs

    @property
    def zero_class(self) -> int:
        return self.quotient.zero_class

    @property
    def all_unique(self) -> bool:
        return all(self.unique.values())

    def syndrome(self, r) -> int:
        return syndrome(self.phi, self.quotient, r)

    def leader_weight(self, c: int) -> int:
        return tgs_weight(self.tgs, self.chosen[c])

    def to_document(self) -> dict:
        t, q = self.tgs, self.quotient
        return {
            "n": self.n,
            "zero_class": q.tgs.label(self.zero_class),
            "classes": [
                {
                    "syndrome": q.tgs.label(c),
                    "size": len(ws),
                    "leader_weight": self.leader_weight(c),
                    "leaders": [t.labels(w) for w in self.leaders[c]],
                    "chosen_leader": t.labels(self.chosen[c]),
                    "unique_leader": self.unique[c],
                }
                for c, ws in self.classes.items()
            ],
        }


def build_coset_table(phi: Morphism, q: QuotientTgs, bounds=None) -> CosetTable:
    """Partition T^n by syndrome; leaders are the minimal-weight members of each class."""
    t = phi.tgs
    groups = {}
    for w in all_words(t, phi.n, bounds):
        groups.setdefault(syndrome(phi, q, w), []).append(w)
    classes, leaders, chosen, unique = {}, {}, {}, {}
    for c in sorted(groups):
        ws = tuple(groups[c])
        least = min(tgs_weight(t, w) for w in ws)
        lead = tuple(w for w in ws if tgs_weight(t, w) == least)
        classes[c], leaders[c] = ws, lead
        chosen[c] = lead[0]
        unique[c] = len(lead) == 1
    return CosetTable(phi, q, phi.n, classes, leaders, chosen, unique)


def coset_table_for(code: Code, bounds=None) -> CosetTable:
    """Coset table from the code's own morphism, read modulo its ideal (zero ideal if none)."""
    phi = code.morphism
    if phi is None:
        raise UsageError(f"{code.provenance.kind} code carries no morphism; add A and B to use the syndrome decoder")
    ideal = code.provenance.ideal if code.provenance.ideal is not None else {code.tgs.zero}
    q = build_quotient(code.tgs, ideal, force=True)
    return build_coset_table(phi, q, bounds)


@dataclass(frozen=True)
class DecodeResult:
    output: tuple
    status: str
    syndrome: int
    leader: tuple | None = None
    ambiguous: bool = False

    @property
    def flags(self) -> list:
        return [AMBIGUOUS] if self.ambiguous else []

    def to_document(self, t: Tgs, q: QuotientTgs) -> dict:
        return {
            "output": t.labels(self.output),
            "status": self.status,
            "flags": self.flags,
            "syndrome": q.tgs.label(self.syndrome),
            "leader": t.labels(self.leader) if self.leader is not None else None,
        }


def decode(table: CosetTable, code: Code, r) -> DecodeResult:
    """Syndrome decoding: zero class returns r, otherwise r minus the chosen class leader.

    A non-unique leader never changes the status; it is reported through
    ``ambiguous`` so the arbitrary choice stays visible.
    """
    r = tuple(r)
    alpha = table.syndrome(r)
    if alpha == table.zero_class:
        return DecodeResult(r, CLEAN, alpha)
    leader = table.chosen[alpha]
    out = ominus(table.tgs, r, leader)
    status = CORRECTED if out in code else FAILED
    return DecodeResult(out, status, alpha, leader, not table.unique[alpha])


@dataclass(frozen=True)
class Radius:
    t: int | None
    d: int | None
    mu_literal: int | None
    t_literal: int | None

    @property
    def applicable(self) -> bool:
        return self.t is not None

    def to_document(self) -> dict:
        return {"t": self.t, "d": self.d, "mu_literal": self.mu_literal, "t_literal": self.t_literal}


def decoding_radius(code: Code) -> Radius:
    """floor((d-1)/2) from the code's minimum distance, next to the scalar-weight reading of mu(I)."""
    params = code_params(code)
    mu = literal_mu(code.tgs, code.provenance.ideal) if code.provenance.ideal is not None else None
    t_lit = (mu - 1) // 2 if mu is not None else None
    return Radius(params.t, params.d, mu, t_lit)


@dataclass(frozen=True)
class Nearest:
    word: tuple
    distance: int
    unique: bool


def nearest_codeword(code: Code, r) -> Nearest:
    """Brute-force Hamming nearest codeword; ties go to the lexicographically least member."""
    r = tuple(r)
    best, best_d, ties = None, None, 0
    for c in code.members:
        d = hamming(c, r)
        if best_d is None or d < best_d:
            best, best_d, ties = c, d, 1
        elif d == best_d:
            ties += 1
    if best is None:
        raise UsageError("code is empty")
    return Nearest(best, best_d, ties == 1)


# -- channel simulation -----------------------------------------------------

def error_patterns(t: Tgs, n: int, w_max: int):
    """All words of weight at most w_max, by weight, then support, then values."""
    nonzero = [x for x in t.carrier if x != t.zero]
    for k in range(min(w_max, n) + 1):
        for positions in itertools.combinations(range(n), k):
            for values in itertools.product(nonzero, repeat=k):
                e = [t.zero] * n
                for p, v in zip(positions, values):
                    e[p] = v
                yield tuple(e)


def _sample_error(rng: random.Random, t: Tgs, n: int, w_max: int) -> tuple:
    # uniform over the ball of weight <= w_max
    nonzero = [x for x in t.carrier if x != t.zero]
    top = min(w_max, n) if nonzero else 0
    weights = [math.comb(n, k) * len(nonzero) ** k for k in range(top + 1)]
    k = rng.choices(range(top + 1), weights=weights)[0]
    e = [t.zero] * n
    for p in rng.sample(range(n), k):
        e[p] = rng.choice(nonzero)
    return tuple(e)


@dataclass(frozen=True)
class SimReport:
    decoder: str
    w_max: int
    mode: str
    trials: int
    successes: int
    seed: int | None
    failures: tuple = field(default=(), compare=False)

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def to_document(self, t: Tgs) -> dict:
        return {
            "decoder": self.decoder,
            "w_max": self.w_max,
            "mode": self.mode,
            "trials": self.trials,
            "successes": self.successes,
            "rate": f"{self.rate:.12g}",
            "seed": self.seed,
            "failures": [{"codeword": t.labels(c), "error": t.labels(e), "output": t.labels(o)} for c, e, o in self.failures],
        }


def simulate_channel(
    code: Code,
    decoder: str = "syndrome",
    w_max: int = 1,
    mode: str = "exhaustive",
    trials: int = 1000,
    seed: int | None = None,
    keep_failures: int = 8,
    bounds=None,
) -> SimReport:
    """Send c + e through the chosen decoder and count exact recoveries of c."""
    t, n = code.tgs, code.n
    if decoder == "syndrome":
        table = coset_table_for(code, bounds)

        def run(r):
            return decode(table, code, r).output
    elif decoder == "nearest":
        def run(r):
            return nearest_codeword(code, r).word
    else:
        raise UsageError(f"decoder must be 'syndrome' or 'nearest', got {decoder!r}")
    if w_max < 0:
        raise UsageError("w_max must be non-negative")

    if mode == "exhaustive":
        pairs = ((c, e) for c in code.members for e in error_patterns(t, n, w_max))
    elif mode == "sampled":
        if seed is None:
            raise UsageError("sampled simulation requires a seed")
        rng = random.Random(seed)
        pairs = ((rng.choice(code.members), _sample_error(rng, t, n, w_max)) for _ in range(trials))
    else:
        raise UsageError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")

    count = ok = 0
    failures = []
    for c, e in pairs:
        count += 1
        out = run(word_plus(t, c, e))
        if out == c:
            ok += 1
        elif len(failures) < keep_failures:
            failures.append((c, e, out))
    return SimReport(decoder, w_max, mode, count, ok, seed, tuple(failures))


def stratification(table: CosetTable) -> list:
    """Syndrome classes ordered by the addition order of their least representatives.

    Height is the length of the longest strictly increasing chain below the
    class in the quotient order. Descriptive only.
    """
    q = table.quotient
    qt = q.tgs
    present = list(table.classes)
    height = {}

    def h(c):
        if c not in height:
            below = [b for b in qt.carrier if b != c and qt.order(b, c)]
            height[c] = 1 + max((h(b) for b in below), default=-1)
        return height[c]

    rows = sorted(present, key=lambda c: (h(c), c))
    return [
        {
            "syndrome": qt.label(c),
            "height": h(c),
            "size": len(table.classes[c]),
            "leader_weight": table.leader_weight(c),
            "leaders": len(table.leaders[c]),
        }
        for c in rows
    ]
