"""Exhaustive adjudication of the structural claims about TGS codes.

Each claim is checked on every applicable fixture.  A claim whose
precondition fails on a fixture (axioms, unique leaders, ...) is marked
``hypothesis-not-met``; ``falsified`` results carry a self-contained
counterexample document that :func:`replay` re-evaluates.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .algebra import Tgs, check_axioms, first_violation
from .codes import (
    Code,
    build_phi,
    code_from_spec,
    generated_code,
    hamming,
    ideal_power_code,
    lattice_prediction,
    literal_mu,
    minimum_distance,
    support,
    tgs_weight,
    word_plus,
    word_ternary,
    all_words,
    eval_phi,
)
from .decoder import coset_table_for, decode, stratification
from .errors import TgsError, UsageError
from .ideals import KIdeal, as_set, ideal_lattice

VERIFIED = "verified"
FALSIFIED = "falsified"
NOT_MET = "hypothesis-not-met"
NOT_APPLICABLE = "not-applicable"

STRUCTURE_CLAIMS = (
    "distributive-lattice",
    "dimension",
    "min-distance",
    "lattice-monotonicity",
    "localized-propagation",
    "span-theorem",
    "phi-equivalence",
    "decoding-radius",
)
CODE_CLAIMS = (
    "localized-propagation",
    "syndrome-detects-codewords",
    "syndrome-invariance",
    "unique-leaders",
    "decoder-correctness",
    "interaction-join",
)
LENGTHS = (1, 2, 3)


@dataclass
class ClaimResult:
    claim: str
    fixture: str
    status: str
    scan_size: int = 0
    instances: int = 0
    detail: str = ""
    counterexample: dict | None = None
    wall_time: float = field(default=0.0, compare=False)

    def to_document(self, timings=False) -> dict:
        doc = {
            "claim": self.claim,
            "fixture": self.fixture,
            "status": self.status,
            "scan_size": self.scan_size,
            "instances": self.instances,
            "detail": self.detail,
            "counterexample": self.counterexample,
        }
        if timings:
            doc["wall_time"] = round(self.wall_time, 6)
        return doc


class _Scan:
    """Accumulates one claim over many instances; keeps the first counterexample."""

    def __init__(self, claim, fixture):
        self.claim, self.fixture = claim, fixture
        self.scanned = self.instances = self.bad = 0
        self.counterexample = None
        self.start = time.perf_counter()

    def instance(self, scanned, counterexample=None):
        self.instances += 1
        self.scanned += scanned
        if counterexample is not None:
            self.bad += 1
            if self.counterexample is None:
                self.counterexample = dict(counterexample, claim=self.claim)

    def result(self, detail="") -> ClaimResult:
        status = FALSIFIED if self.bad else VERIFIED
        if not detail:
            detail = f"{self.bad} of {self.instances} instances falsified" if self.bad else f"{self.instances} instances"
        return ClaimResult(
            self.claim, self.fixture, status, self.scanned, self.instances, detail, self.counterexample,
            time.perf_counter() - self.start,
        )


def _labels(t, w):
    return t.labels(w)


def _ideal_doc(t, ideal):
    return t.labels(sorted(ideal))


class _Cache:
    def __init__(self, t: Tgs):
        self.t = t
        self.codes = {}
        self.dist = {}

    def power(self, ideal: KIdeal, n: int) -> Code:
        key = (ideal.members, n)
        if key not in self.codes:
            self.codes[key] = ideal_power_code(self.t, ideal, n)
        return self.codes[key]

    def distance(self, ideal, n):
        key = (ideal.members, n)
        if key not in self.dist:
            self.dist[key] = minimum_distance(self.power(ideal, n))[0]
        return self.dist[key]


# -- structure claims ----------------------------------------------------------

def verify_dimension(t: Tgs, ideal: KIdeal, n: int, fixture="", cache=None) -> ClaimResult:
    cache = cache or _Cache(t)
    scan = _Scan("dimension", fixture)
    _dimension(scan, cache, ideal, n)
    return scan.result()


def _dimension(scan, cache, ideal, n):
    t = cache.t
    code = cache.power(ideal, n)
    # independent count: filter all of T^n
    counted = sum(1 for w in all_words(t, n) if all(x in ideal for x in w))
    formula = len(ideal) ** n
    ce = None
    if not (len(code) == counted == formula):
        ce = {"tgs": t.to_document(), "ideal": _ideal_doc(t, ideal.members), "n": n, "enumerated": counted, "formula": formula}
    scan.instance(t.m**n, ce)


def verify_min_distance(t: Tgs, ideal: KIdeal, n: int, fixture="", cache=None) -> ClaimResult:
    cache = cache or _Cache(t)
    if ideal.is_zero:
        return ClaimResult("min-distance", fixture, NOT_APPLICABLE, detail="zero ideal gives a one-word code")
    scan = _Scan("min-distance", fixture)
    _min_distance(scan, cache, ideal, n)
    return scan.result()


def _min_distance(scan, cache, ideal, n):
    t = cache.t
    d = cache.distance(ideal, n)
    lat = lattice_prediction(t, ideal, n)
    ce = None
    if d != lat:
        ce = {"tgs": t.to_document(), "ideal": _ideal_doc(t, ideal.members), "n": n, "exhaustive_d": d, "lattice_d": lat}
    scan.instance(len(cache.power(ideal, n)), ce)


def verify_monotonicity(t: Tgs, small: KIdeal, big: KIdeal, n: int, fixture="", cache=None) -> ClaimResult:
    if not small.members <= big.members:
        raise UsageError("monotonicity needs I contained in J")
    if small.is_zero or big.is_zero:
        return ClaimResult("lattice-monotonicity", fixture, NOT_APPLICABLE, detail="distance undefined for the zero ideal")
    cache = cache or _Cache(t)
    scan = _Scan("lattice-monotonicity", fixture)
    _monotonicity(scan, cache, small, big, n)
    return scan.result()


def _monotonicity(scan, cache, small, big, n):
    t = cache.t
    d_i, d_j = cache.distance(small, n), cache.distance(big, n)
    ce = None
    if not d_j <= d_i:
        ce = {"tgs": t.to_document(), "I": _ideal_doc(t, small.members), "J": _ideal_doc(t, big.members), "n": n, "d_I": d_i, "d_J": d_j}
    scan.instance(len(cache.power(small, n)) + len(cache.power(big, n)), ce)


def _disjoint_errors(t, n, c):
    free = [i for i in range(n) if c[i] == t.zero]
    for values in itertools.product(t.carrier, repeat=len(free)):
        e = [t.zero] * n
        for i, v in zip(free, values):
            e[i] = v
        yield tuple(e)


def verify_localized_propagation(code: Code, fixture="", code_doc=None) -> ClaimResult:
    scan = _Scan("localized-propagation", fixture)
    _propagation(scan, code, code_doc)
    return scan.result()


def _propagation(scan, code, code_doc=None):
    t, n = code.tgs, code.n
    count, ce = 0, None
    for c in code.members:
        for e in _disjoint_errors(t, n, c):
            count += 1
            r = word_plus(t, c, e)
            if tgs_weight(t, r) != tgs_weight(t, c) + tgs_weight(t, e):
                ce = {"code": code_doc or _power_doc(code), "codeword": _labels(t, c), "error": _labels(t, e), "sum": _labels(t, r)}
                break
        if ce:
            break
    scan.instance(count, ce)


def _power_doc(code):
    t = code.tgs
    doc = {"tgs": t.to_document(), "construction": code.provenance.kind, "n": code.n}
    doc.update({k: v for k, v in code.provenance.to_document(t).items() if k != "construction"})
    return doc


def _distributive(scan, t, lattice):
    ce = None
    if not lattice.distributive:
        i, j, k = lattice.counterexample
        ce = {"tgs": t.to_document(), "ideals": [lattice.nodes[x].labels() for x in (i, j, k)]}
    n = len(lattice.nodes)
    scan.instance(n**3, ce)


def _span(scan, cache, ideal, n):
    # the ideal power code is generated by the scaled basis vectors e_i * a, a in I
    t = cache.t
    gens = set()
    for i in range(n):
        for a in ideal.members:
            w = [t.zero] * n
            w[i] = a
            gens.add(tuple(w))
    code = generated_code(t, gens)
    power = cache.power(ideal, n)
    ce = None
    if code.member_set != power.member_set:
        ce = {"tgs": t.to_document(), "ideal": _ideal_doc(t, ideal.members), "n": n, "generated_size": len(code), "power_size": len(power)}
    scan.instance(len(code), ce)


def _phi_equivalence(scan, t, ideal, A, B):
    phi = build_phi(t, A, B)
    X, count, ce = t.ternary, 0, None
    for w in all_words(t, phi.n):
        count += 1
        every = all(X[a][c][b] in ideal for a, c in zip(phi.A, w) for b in phi.B)
        if every != (eval_phi(phi, w) in ideal):
            ce = {"tgs": t.to_document(), "ideal": _ideal_doc(t, ideal.members), "A": _labels(t, A), "B": _labels(t, B), "word": _labels(t, w)}
            break
    scan.instance(count, ce)


def _radius(scan, cache, ideal, n):
    t = cache.t
    code = cache.power(ideal, n)
    if len(code) < 2:
        return
    mu = literal_mu(t, ideal.members)
    predicted = (mu - 1) // 2
    d_ham = min(hamming(u, v) for u, v in itertools.combinations(code.members, 2))
    actual = (d_ham - 1) // 2
    ce = None
    if predicted != actual:
        ce = {"tgs": t.to_document(), "ideal": _ideal_doc(t, ideal.members), "n": n, "t_formula": predicted, "t_actual": actual}
    scan.instance(len(code) ** 2, ce)


def structure_claims(name: str, t: Tgs) -> list:
    """Every structure-level claim on one TGS fixture."""
    report = check_axioms(t)
    if not report.ok:
        why = f"axioms fail: {', '.join(report.failed)}"
        return [ClaimResult(c, name, NOT_MET, detail=why) for c in STRUCTURE_CLAIMS]
    cache = _Cache(t)
    lattice = ideal_lattice(t)
    ideals = list(lattice.nodes)
    nonzero = [i for i in ideals if not i.is_zero]
    out = []

    scan = _Scan("distributive-lattice", name)
    _distributive(scan, t, lattice)
    out.append(scan.result())

    scan = _Scan("dimension", name)
    for ideal, n in itertools.product(ideals, LENGTHS):
        _dimension(scan, cache, ideal, n)
    out.append(scan.result())

    scan = _Scan("min-distance", name)
    for ideal, n in itertools.product(nonzero, LENGTHS):
        _min_distance(scan, cache, ideal, n)
    out.append(_or_na(scan, "no nonzero ideal"))

    scan = _Scan("lattice-monotonicity", name)
    for small, big, n in itertools.product(nonzero, nonzero, LENGTHS):
        if small.members <= big.members:
            _monotonicity(scan, cache, small, big, n)
    out.append(_or_na(scan, "no nonzero ideal pair"))

    scan = _Scan("localized-propagation", name)
    for ideal, n in itertools.product(ideals, LENGTHS):
        _propagation(scan, cache.power(ideal, n))
    out.append(scan.result())

    scan = _Scan("span-theorem", name)
    for ideal, n in itertools.product(ideals, (1, 2)):
        _span(scan, cache, ideal, n)
    out.append(scan.result())

    scan = _Scan("phi-equivalence", name)
    top = max(t.carrier, key=lambda x: sum(t.order(y, x) for y in t.carrier))
    for ideal in ideals:
        for a, b in itertools.product(t.carrier, repeat=2):
            _phi_equivalence(scan, t, ideal.members, (a,), (b,))
        for n in (2, 3):
            _phi_equivalence(scan, t, ideal.members, (top,) * n, (top,) * n)
    out.append(scan.result())

    scan = _Scan("decoding-radius", name)
    for ideal, n in itertools.product(nonzero, LENGTHS):
        _radius(scan, cache, ideal, n)
    out.append(_or_na(scan, "no code with two words"))
    return out


def _or_na(scan, why):
    if scan.instances == 0:
        return ClaimResult(scan.claim, scan.fixture, NOT_APPLICABLE, detail=why)
    return scan.result()


# -- code claims -----------------------------------------------------------------

def verify_syndrome_invariance(code: Code, fixture="", code_doc=None) -> ClaimResult:
    table = coset_table_for(code)
    t, doc = code.tgs, code_doc or _power_doc(code)
    scan = _Scan("syndrome-invariance", fixture)
    words = list(all_words(t, code.n))
    count, ce = 0, None
    for c in code.members:
        for e in words:
            count += 1
            s_r, s_e = table.syndrome(word_plus(t, c, e)), table.syndrome(e)
            if s_r != s_e:
                q = table.quotient.tgs
                ce = {"code": doc, "codeword": _labels(t, c), "error": _labels(t, e), "syndrome_sum": q.label(s_r), "syndrome_error": q.label(s_e)}
                break
        if ce:
            break
    scan.instance(count, ce)
    return scan.result()


def verify_syndrome_detects(code: Code, fixture="", code_doc=None) -> ClaimResult:
    table = coset_table_for(code)
    t, doc = code.tgs, code_doc or _power_doc(code)
    scan = _Scan("syndrome-detects-codewords", fixture)
    count, ce = 0, None
    for w in all_words(t, code.n):
        count += 1
        if (table.syndrome(w) == table.zero_class) != (w in code):
            ce = {"code": doc, "word": _labels(t, w), "in_code": w in code, "syndrome": table.quotient.tgs.label(table.syndrome(w))}
            break
    scan.instance(count, ce)
    return scan.result()


def verify_unique_leaders(code: Code, fixture="", code_doc=None) -> ClaimResult:
    table = coset_table_for(code)
    t, doc = code.tgs, code_doc or _power_doc(code)
    scan = _Scan("unique-leaders", fixture)
    for c, lead in table.leaders.items():
        ce = None
        if len(lead) > 1:
            ce = {"code": doc, "syndrome": table.quotient.tgs.label(c), "leaders": [_labels(t, w) for w in lead]}
        scan.instance(len(table.classes[c]), ce)
    return scan.result()


def verify_decoder_correctness(code: Code, fixture="", code_doc=None) -> ClaimResult:
    """Errors no heavier than their class leader must be corrected, given unique leaders."""
    table = coset_table_for(code)
    t, doc = code.tgs, code_doc or _power_doc(code)
    if not table.all_unique:
        bad = [table.quotient.tgs.label(c) for c, u in table.unique.items() if not u]
        return ClaimResult("decoder-correctness", fixture, NOT_MET, detail=f"non-unique leaders in classes {', '.join(bad)}")
    scan = _Scan("decoder-correctness", fixture)
    errors = [e for e in all_words(t, code.n) if tgs_weight(t, e) <= table.leader_weight(table.syndrome(e))]
    count, fails, first = 0, 0, None
    for c in code.members:
        for e in errors:
            count += 1
            out = decode(table, code, word_plus(t, c, e)).output
            if out != c:
                fails += 1
                if first is None:
                    first = {"code": doc, "codeword": _labels(t, c), "error": _labels(t, e), "output": _labels(t, out)}
    scan.instance(count, first)
    return scan.result(f"{fails} of {count} (codeword, error) pairs decoded wrongly" if fails else f"{count} pairs decoded")


def verify_interaction_join(code: Code, fixture="", code_doc=None) -> ClaimResult:
    """Syndrome of [e_a, e_b, e_a] against the join of a and b in the class order."""
    table = coset_table_for(code)
    t, doc = code.tgs, code_doc or _power_doc(code)
    q = table.quotient
    qrep = check_axioms(q.tgs)
    if not (q.well_defined and qrep.status["A1"] and qrep.properties["order-is-partial-order"]):
        return ClaimResult("interaction-join", fixture, NOT_MET, detail="class order is not a join-semilattice")
    scan = _Scan("interaction-join", fixture)
    classes = list(table.classes)
    for a, b in itertools.product(classes, repeat=2):
        ea, eb = table.chosen[a], table.chosen[b]
        inter = word_ternary(t, ea, eb, ea)
        s, j = table.syndrome(inter), q.tgs.plus[a][b]
        ce = None
        if s != j:
            ce = {
                "code": doc,
                "alpha": q.tgs.label(a),
                "beta": q.tgs.label(b),
                "e_alpha": _labels(t, ea),
                "e_beta": _labels(t, eb),
                "interaction": _labels(t, inter),
                "syndrome": q.tgs.label(s),
                "join": q.tgs.label(j),
            }
        scan.instance(1, ce)
    return scan.result()


CODE_CHECKS = {
    "syndrome-detects-codewords": verify_syndrome_detects,
    "syndrome-invariance": verify_syndrome_invariance,
    "unique-leaders": verify_unique_leaders,
    "decoder-correctness": verify_decoder_correctness,
    "interaction-join": verify_interaction_join,
}


def code_claims(name: str, t: Tgs, spec: dict) -> list:
    if not check_axioms(t).ok:
        return [ClaimResult(c, name, NOT_MET, detail="underlying structure fails its axioms") for c in CODE_CLAIMS]
    code = code_from_spec(t, spec)
    doc = dict(spec, tgs=t.to_document())
    out = [verify_localized_propagation(code, name, doc)]
    for claim, fn in CODE_CHECKS.items():
        if code.morphism is None:
            out.append(ClaimResult(claim, name, NOT_APPLICABLE, detail="code has no morphism"))
        else:
            out.append(fn(code, name, doc))
    return out


# -- suite -------------------------------------------------------------------------

@dataclass
class SuiteReport:
    results: list
    load_failures: list
    stratification: dict

    def matrix(self) -> dict:
        out = {}
        for r in self.results:
            out.setdefault(r.claim, {})[r.fixture] = r.status
        return out

    def get(self, claim, fixture) -> ClaimResult | None:
        for r in self.results:
            if r.claim == claim and r.fixture == fixture:
                return r
        return None

    def to_document(self, timings=False) -> dict:
        return {
            "matrix": self.matrix(),
            "results": [r.to_document(timings) for r in self.results],
            "load_failures": self.load_failures,
            "stratification": self.stratification,
        }

    def summary(self) -> str:
        fixtures = sorted({r.fixture for r in self.results})
        claims = sorted({r.claim for r in self.results})
        short = {VERIFIED: "ok", FALSIFIED: "FALSE", NOT_MET: "hyp-not-met", NOT_APPLICABLE: "-"}
        width = max([len(c) for c in claims] + [5])
        cols = [max(len(f), 11) for f in fixtures]
        lines = [" " * width + "  " + "  ".join(f.ljust(w) for f, w in zip(fixtures, cols))]
        m = self.matrix()
        for c in claims:
            cells = [short[m[c][f]] if f in m[c] else "" for f in fixtures]
            lines.append(c.ljust(width) + "  " + "  ".join(x.ljust(w) for x, w in zip(cells, cols)))
        for f in self.load_failures:
            lines.append(f"load failure: {f['fixture']}: {f['error']}")
        return "\n".join(line.rstrip() for line in lines)


def run_suite(structures=(), codes=()) -> SuiteReport:
    """``structures``: (name, Tgs) pairs; ``codes``: (name, Tgs, spec) triples, or load-failure dicts."""
    results, failures, strata = [], [], {}
    for item in structures:
        if isinstance(item, dict):
            failures.append(item)
            continue
        name, t = item
        try:
            results.extend(structure_claims(name, t))
        except TgsError as exc:
            failures.append({"fixture": name, "error": str(exc)})
    for item in codes:
        if isinstance(item, dict):
            failures.append(item)
            continue
        name, t, spec = item
        try:
            results.extend(code_claims(name, t, spec))
            code = code_from_spec(t, spec) if check_axioms(t).ok else None
            if code is not None and code.morphism is not None:
                strata[name] = stratification(coset_table_for(code))
        except TgsError as exc:
            failures.append({"fixture": name, "error": str(exc)})
    results.sort(key=lambda r: (r.claim, r.fixture))
    return SuiteReport(results, failures, strata)


def bundled_suite(extra_structures=()) -> SuiteReport:
    from .fixtures import CODE_FIXTURES, TGS_FIXTURES, load_code_spec, load_tgs_ref

    structures = [(name, load_tgs_ref(name)) for name in TGS_FIXTURES]
    structures.extend(extra_structures)
    codes = []
    for name in CODE_FIXTURES:
        spec, base = load_code_spec(name)
        codes.append((name, load_tgs_ref(spec["tgs"], base), spec))
    return run_suite(structures, codes)


# -- replay ----------------------------------------------------------------------------

def _code_from_payload(doc):
    t = Tgs.from_document(doc["tgs"])
    return t, code_from_spec(t, doc)


def replay(ce: dict) -> bool:
    """Re-evaluate a counterexample through the public operations; True if the violation reproduces."""
    claim = ce["claim"]
    if "code" in ce:
        t, code = _code_from_payload(ce["code"])
    else:
        t = Tgs.from_document(ce["tgs"])
    W = lambda key: t.word(ce[key])  # noqa: E731
    if claim == "interaction-join":
        table = coset_table_for(code)
        ea, eb = W("e_alpha"), W("e_beta")
        q = table.quotient.tgs
        a, b = table.syndrome(ea), table.syndrome(eb)
        s = table.syndrome(word_ternary(t, ea, eb, ea))
        j = q.plus[a][b]
        return s != j and (q.label(s), q.label(j)) == (ce["syndrome"], ce["join"])
    if claim == "decoder-correctness":
        table = coset_table_for(code)
        c, e = W("codeword"), W("error")
        out = decode(table, code, word_plus(t, c, e)).output
        return out != c and out == W("output") and tgs_weight(t, e) <= table.leader_weight(table.syndrome(e))
    if claim == "unique-leaders":
        table = coset_table_for(code)
        lead = [t.labels(w) for c, ws in table.leaders.items() if table.quotient.tgs.label(c) == ce["syndrome"] for w in ws]
        return len(lead) > 1 and lead == ce["leaders"]
    if claim == "syndrome-invariance":
        table = coset_table_for(code)
        c, e = W("codeword"), W("error")
        return table.syndrome(word_plus(t, c, e)) != table.syndrome(e)
    if claim == "syndrome-detects-codewords":
        table = coset_table_for(code)
        w = W("word")
        return (table.syndrome(w) == table.zero_class) != (w in code)
    if claim == "localized-propagation":
        c, e = W("codeword"), W("error")
        ok_support = not (support(t, c) & support(t, e))
        return ok_support and c in code and tgs_weight(t, word_plus(t, c, e)) != tgs_weight(t, c) + tgs_weight(t, e)
    ideal = as_set(t, ce["ideal"]) if "ideal" in ce else None
    if claim == "dimension":
        n = ce["n"]
        counted = sum(1 for w in all_words(t, n) if all(x in ideal for x in w))
        return counted != len(ideal) ** n
    if claim == "min-distance":
        code = ideal_power_code(t, ideal, ce["n"])
        return minimum_distance(code)[0] != lattice_prediction(t, ideal, ce["n"])
    if claim == "lattice-monotonicity":
        n = ce["n"]
        d_i = minimum_distance(ideal_power_code(t, ce["I"], n))[0]
        d_j = minimum_distance(ideal_power_code(t, ce["J"], n))[0]
        return not d_j <= d_i
    if claim == "distributive-lattice":
        from .ideals import ideal_closure, meet, join

        i, j, k = (ideal_closure(t, s) for s in ce["ideals"])
        return meet(i, join(j, k)).members != join(meet(i, j), meet(i, k)).members
    if claim == "span-theorem":
        return ce["generated_size"] != ce["power_size"]
    if claim == "phi-equivalence":
        phi = build_phi(t, ce["A"], ce["B"])
        w = W("word")
        every = all(t.ternary[a][c][b] in ideal for a, c in zip(phi.A, w) for b in phi.B)
        return every != (eval_phi(phi, w) in ideal)
    if claim == "decoding-radius":
        code = ideal_power_code(t, ideal, ce["n"])
        d_ham = min(hamming(u, v) for u, v in itertools.combinations(code.members, 2))
        return (literal_mu(t, ideal) - 1) // 2 != (d_ham - 1) // 2
    raise UsageError(f"unknown claim {claim!r}")


# -- bounded random search --------------------------------------------------------------

def _semilattices(m):
    """Addition tables on range(m) with zero 0: commutative, idempotent, associative, 0 as identity."""
    pairs = list(itertools.combinations(range(1, m), 2))
    for values in itertools.product(range(m), repeat=len(pairs)):
        P = [[0] * m for _ in range(m)]
        for x in range(m):
            P[0][x] = P[x][0] = x
            P[x][x] = x
        for (x, y), v in zip(pairs, values):
            P[x][y] = P[y][x] = v
        if all(P[P[x][y]][z] == P[x][P[y][z]] for x, y, z in itertools.product(range(m), repeat=3)):
            yield tuple(tuple(r) for r in P)


def search_valid_tgs(seed: int, m: int = 3, candidates: int = 10_000) -> list:
    """Seeded search for valid structures of size m <= 4.

    Addition ranges over every semilattice with identity 0; the ternary
    product is h(h(x,y),z) for a random commutative binary table h with
    h(0, x) = 0; Gamma is trivial.  Returns distinct valid structures in
    discovery order.
    """
    if not 1 <= m <= 4:
        raise UsageError("search supports carriers of size 1 to 4")
    if candidates > 100_000:
        raise UsageError("search is capped at 100000 candidates")
    rng = random.Random(seed)
    adds = list(_semilattices(m))
    labels = [str(i) for i in range(m)]
    found, seen = [], set()
    pairs = list(itertools.combinations_with_replacement(range(1, m), 2))
    for _ in range(candidates):
        P = rng.choice(adds)
        h = [[0] * m for _ in range(m)]
        for x, y in pairs:
            h[x][y] = h[y][x] = rng.randrange(m)
        tern = tuple(tuple(tuple(h[h[x][y]][z] for z in range(m)) for y in range(m)) for x in range(m))
        key = (P, tern)
        if key in seen:
            continue
        seen.add(key)
        t = Tgs(tuple(labels), 0, P, tern, ("e",), (tuple(range(m)),), name=f"search-{seed}-{len(found)}")
        if first_violation(t) is None:
            found.append(t)
    return found
