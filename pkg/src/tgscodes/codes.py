"""Code constructions over T^n, weights and code parameters.

Words are tuples of element indices.  Codes are stored by explicit
enumeration in lexicographic order of the canonical element order, so
every routine here is bounded by ``Bounds.max_words``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce

from . import bounds as _bounds
from .algebra import Tgs, require_valid
from .errors import BoundExceeded, UsageError
from .ideals import KIdeal, as_set, minimal_nonzero_elements

CONSTRUCTIONS = ("ideal-power", "constraint", "kernel", "generated")


def _limit(count, what, bounds=None):
    bounds = bounds or _bounds.current()
    if count > bounds.max_words:
        raise BoundExceeded(f"{what} needs {count} words, bound is {bounds.max_words} (raise max_words)")


def all_words(t: Tgs, n: int, bounds=None):
    if n < 1:
        raise UsageError("word length must be at least 1")
    _limit(t.m**n, f"enumerating T^{n}", bounds)
    return itertools.product(t.carrier, repeat=n)


def zero_word(t: Tgs, n: int) -> tuple:
    return (t.zero,) * n


def tgs_weight(t: Tgs, w) -> int:
    return sum(1 for x in w if x != t.zero)


def support(t: Tgs, w) -> frozenset:
    return frozenset(i for i, x in enumerate(w) if x != t.zero)


def ominus(t: Tgs, u, v) -> tuple:
    """Coordinatewise absorption: u_i becomes zero when u_i <= v_i, otherwise it is kept."""
    if len(u) != len(v):
        raise UsageError("words must have equal length")
    leq = t.order
    return tuple(t.zero if leq(a, b) else a for a, b in zip(u, v))


def discrepancy(t: Tgs, u, v) -> int:
    """wt(u - v) with the absorption difference; asymmetric and not a metric."""
    return tgs_weight(t, ominus(t, u, v))


def hamming(u, v) -> int:
    if len(u) != len(v):
        raise UsageError("words must have equal length")
    return sum(1 for a, b in zip(u, v) if a != b)


def word_plus(t: Tgs, u, v) -> tuple:
    return tuple(t.plus[a][b] for a, b in zip(u, v))


def word_ternary(t: Tgs, u, v, w) -> tuple:
    X = t.ternary
    return tuple(X[a][b][c] for a, b, c in zip(u, v, w))


def word_gamma(t: Tgs, g: int, u) -> tuple:
    row = t.gamma_action[g]
    return tuple(row[a] for a in u)


# -- morphism ------------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    tgs: Tgs
    A: tuple
    B: tuple

    @property
    def n(self) -> int:
        return len(self.A)

    def __call__(self, w) -> int:
        return eval_phi(self, w)


def build_phi(t: Tgs, A, B) -> Morphism:
    A, B = tuple(as_word(t, A)), tuple(as_word(t, B))
    if len(A) != len(B) or not A:
        raise UsageError(f"parameter families must be nonempty and of equal length (got {len(A)} and {len(B)})")
    return Morphism(t, A, B)


def eval_phi(phi: Morphism, w) -> int:
    """Fold of [a_i, c_i, b_j] under addition over the full (i, j) grid."""
    if len(w) != phi.n:
        raise UsageError(f"word length {len(w)} does not match morphism length {phi.n}")
    t = phi.tgs
    X, P = t.ternary, t.plus
    terms = (X[a][c][b] for a, c in zip(phi.A, w) for b in phi.B)
    return reduce(lambda x, y: P[x][y], terms)


def as_word(t: Tgs, w) -> tuple:
    """Labels, indices or a comma-separated string to a word of indices."""
    if isinstance(w, str):
        w = [s.strip() for s in w.split(",")]
    out = []
    for x in w:
        if isinstance(x, int) and not isinstance(x, bool):
            if not 0 <= x < t.m:
                raise UsageError(f"element index {x} out of range")
            out.append(x)
        else:
            out.append(t.index(x))
    return tuple(out)


# -- codes -----------------------------------------------------------------

@dataclass(frozen=True)
class Provenance:
    kind: str
    ideal: frozenset | None = None
    A: tuple | None = None
    B: tuple | None = None
    generators: tuple | None = None

    def to_document(self, t: Tgs) -> dict:
        doc = {"construction": self.kind}
        if self.ideal is not None:
            doc["ideal"] = t.labels(sorted(self.ideal))
        if self.A is not None:
            doc["A"] = t.labels(self.A)
            doc["B"] = t.labels(self.B)
        if self.generators is not None:
            doc["generators"] = [t.labels(g) for g in self.generators]
        return doc


@dataclass(frozen=True)
class Code:
    tgs: Tgs
    n: int
    members: tuple
    provenance: Provenance
    notes: dict = field(default_factory=dict, compare=False)

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.member_set

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def morphism(self) -> Morphism | None:
        p = self.provenance
        return Morphism(self.tgs, p.A, p.B) if p.A is not None else None

    @property
    def ideal(self) -> KIdeal | None:
        p = self.provenance
        return KIdeal(p.ideal, self.tgs) if p.ideal is not None else None


def _ideal_members(t, ideal):
    return ideal.members if isinstance(ideal, KIdeal) else as_set(t, ideal)


def ideal_power_code(t: Tgs, ideal, n: int, morphism=None, force=False, bounds=None) -> Code:
    require_valid(t, force)
    members = _ideal_members(t, ideal)
    _limit(len(members) ** n, f"ideal power code of length {n}", bounds)
    words = tuple(itertools.product(sorted(members), repeat=n))
    A = B = None
    if morphism is not None:
        if morphism.n != n:
            raise UsageError("morphism length must equal n")
        A, B = morphism.A, morphism.B
    return Code(t, n, words, Provenance("ideal-power", members, A, B))


def constraint_code(phi: Morphism, ideal, force=False, bounds=None) -> Code:
    """Words with every [a_i, c_i, b_j] in the ideal.

    ``notes['phi_equivalence']`` records whether this equals {w : phi(w) in I}.
    """
    t = phi.tgs
    require_valid(t, force)
    members = _ideal_members(t, ideal)
    X = t.ternary
    words, same = [], True
    for w in all_words(t, phi.n, bounds):
        ok = all(X[a][c][b] in members for a, c in zip(phi.A, w) for b in phi.B)
        if ok:
            words.append(w)
        if ok != (eval_phi(phi, w) in members):
            same = False
    return Code(t, phi.n, tuple(words), Provenance("constraint", members, phi.A, phi.B), {"phi_equivalence": same})


def kernel_code(phi: Morphism, force=False, bounds=None) -> Code:
    t = phi.tgs
    require_valid(t, force)
    words = tuple(w for w in all_words(t, phi.n, bounds) if eval_phi(phi, w) == t.zero)
    return Code(t, phi.n, words, Provenance("kernel", None, phi.A, phi.B))


def closure_step(t: Tgs, known: set, frontier: set) -> set:
    """Words obtained by one operation with at least one argument from ``frontier``."""
    out = set()
    pool = list(known)
    for u in frontier:
        for v in pool:
            out.add(word_plus(t, u, v))
        for g in range(len(t.gamma)):
            out.add(word_gamma(t, g, u))
    for u, v, w in itertools.product(pool, repeat=3):
        if u in frontier or v in frontier or w in frontier:
            out.add(word_ternary(t, u, v, w))
    return out - known


def generated_code(t: Tgs, generators, force=False, bounds=None) -> Code:
    """Least set containing the generators closed under +, the ternary product and Gamma.

    No downward closure is applied.
    """
    require_valid(t, force)
    gens = tuple(sorted({as_word(t, g) for g in generators}))
    if not gens:
        raise UsageError("at least one generator is required")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise UsageError("generators must share one length")
    known, frontier = set(gens), set(gens)
    while frontier:
        new = closure_step(t, known, frontier)
        known |= new
        _limit(len(known), "generated code", bounds)
        frontier = new
    return Code(t, n, tuple(sorted(known)), Provenance("generated", generators=gens))


def closure_violation(code: Code):
    """First operation result that leaves the code, as ``(op, inputs, result)``, or None."""
    t, S = code.tgs, code.member_set
    for u, v in itertools.product(code.members, repeat=2):
        w = word_plus(t, u, v)
        if w not in S:
            return ("plus", (u, v), w)
    for g in range(len(t.gamma)):
        for u in code.members:
            w = word_gamma(t, g, u)
            if w not in S:
                return ("gamma", (t.gamma[g], u), w)
    for u, v, x in itertools.product(code.members, repeat=3):
        w = word_ternary(t, u, v, x)
        if w not in S:
            return ("ternary", (u, v, x), w)
    return None


@dataclass(frozen=True)
class SpanReport:
    applicable: bool
    inclusion: bool | None
    equality: bool | None
    generated_size: int | None
    power_size: int
    detail: str = ""


def check_span_theorem(t: Tgs, generators, ideal, n: int, force=False, bounds=None) -> SpanReport:
    members = _ideal_members(t, ideal)
    gens = [as_word(t, g) for g in generators]
    power = len(members) ** n
    outside = [g for g in gens if len(g) != n or any(x not in members for x in g)]
    if outside:
        return SpanReport(False, None, None, None, power, f"generator {t.labels(outside[0])} is not in I^{n}")
    code = generated_code(t, gens, force=force, bounds=bounds)
    inside = all(all(x in members for x in w) for w in code.members)
    return SpanReport(True, inside, inside and len(code) == power, len(code), power)


# -- parameters ------------------------------------------------------------

def lattice_prediction(t: Tgs, ideal, n: int) -> int | None:
    """Least weight of a nonzero word whose nonzero coordinates are minimal nonzero elements of I."""
    members = _ideal_members(t, ideal)
    atoms = sorted(minimal_nonzero_elements(KIdeal(members, t)))
    if not atoms:
        return None
    best = None
    for w in itertools.product([t.zero] + atoms, repeat=n):
        wt = tgs_weight(t, w)
        if wt and (best is None or wt < best):
            best = wt
    return best


def literal_mu(t: Tgs, ideal) -> int | None:
    """Least TGS-weight of a nonzero element of I, each element read as a length-1 word."""
    members = _ideal_members(t, ideal)
    weights = [tgs_weight(t, (x,)) for x in members if x != t.zero]
    return min(weights) if weights else None


def minimum_distance(code: Code):
    """Return ``(d, how)``; d is None when the code has fewer than two words."""
    t = code.tgs
    if len(code) < 2:
        return None, "undefined"
    if zero_word(t, code.n) in code:
        return min(tgs_weight(t, w) for w in code.members if any(x != t.zero for x in w)), "min-weight"
    d = min(hamming(u, v) for u, v in itertools.combinations(code.members, 2))
    return d, "pairwise-hamming"


@dataclass(frozen=True)
class CodeParams:
    construction: str
    n: int
    m: int
    ideal_size: int | None
    size: int
    k: float
    d: int | None
    d_method: str
    t: int | None
    mu: int | None
    dimension_formula: int | None
    dimension_ok: bool | None
    lattice_d: int | None
    lattice_ok: bool | None
    quotient_size: int | None = None

    def to_document(self) -> dict:
        return {
            "construction": self.construction,
            "n": self.n,
            "|T|": self.m,
            "|I|": self.ideal_size,
            "|T/I|": self.quotient_size,
            "|C|": self.size,
            "k": format_real(self.k),
            "d": self.d,
            "d_method": self.d_method,
            "t": self.t,
            "mu_literal": self.mu,
            "dimension_formula": self.dimension_formula,
            "dimension_ok": self.dimension_ok,
            "lattice_d": self.lattice_d,
            "lattice_ok": self.lattice_ok,
        }


def format_real(x: float) -> str:
    return f"{x:.12g}"


def dimension(m: int, size: int) -> float:
    if size < 1:
        return float("-inf")
    if m < 2:
        return 0.0
    return math.log(size) / math.log(m)


def code_params(code: Code) -> CodeParams:
    from .quotient import bourne_partition

    t, prov = code.tgs, code.provenance
    d, how = minimum_distance(code)
    ideal = prov.ideal
    ideal_size = len(ideal) if ideal is not None else None
    formula = dim_ok = lat = lat_ok = qsize = mu = None
    if ideal is not None:
        mu = literal_mu(t, ideal)
        qsize = len(bourne_partition(t, ideal))
    if prov.kind == "ideal-power":
        formula = ideal_size**code.n
        dim_ok = formula == len(code)
        lat = lattice_prediction(t, ideal, code.n)
        lat_ok = lat == d
    return CodeParams(
        construction=prov.kind,
        n=code.n,
        m=t.m,
        ideal_size=ideal_size,
        size=len(code),
        k=dimension(t.m, len(code)),
        d=d,
        d_method=how,
        t=(d - 1) // 2 if d is not None else None,
        mu=mu,
        dimension_formula=formula,
        dimension_ok=dim_ok,
        lattice_d=lat,
        lattice_ok=lat_ok,
        quotient_size=qsize,
    )


# -- documents ---------------------------------------------------------------

def code_from_spec(t: Tgs, spec: dict, force=False, bounds=None) -> Code:
    """Build a code from a code-spec document whose ``tgs`` entry is already resolved to ``t``."""
    kind = spec.get("construction")
    if kind not in CONSTRUCTIONS:
        raise UsageError(f"construction must be one of {', '.join(CONSTRUCTIONS)}, got {kind!r}")
    n = spec.get("n")
    phi = None
    if "A" in spec or "B" in spec:
        phi = build_phi(t, spec.get("A", []), spec.get("B", []))
        if n is None:
            n = phi.n
    if kind == "generated":
        gens = spec.get("generators") or []
        code = generated_code(t, gens, force=force, bounds=bounds)
        if n is not None and code.n != n:
            raise UsageError("generator length does not match n")
        return code
    if not isinstance(n, int):
        raise UsageError("code spec needs an integer n")
    if kind == "ideal-power":
        return ideal_power_code(t, spec.get("ideal", []), n, morphism=phi, force=force, bounds=bounds)
    if phi is None:
        raise UsageError(f"{kind} construction needs A and B")
    if phi.n != n:
        raise UsageError("A and B must have length n")
    if kind == "constraint":
        return constraint_code(phi, spec.get("ideal", []), force=force, bounds=bounds)
    code = kernel_code(phi, force=force, bounds=bounds)
    if "ideal" in spec:
        # the syndrome of a kernel code may still be read modulo a larger ideal
        prov = Provenance("kernel", as_set(t, spec["ideal"]), phi.A, phi.B)
        code = Code(t, code.n, code.members, prov)
    return code


def code_document(code: Code) -> dict:
    t = code.tgs
    doc = {"tgs": t.to_document(), "n": code.n}
    doc.update(code.provenance.to_document(t))
    doc["members"] = [t.labels(w) for w in code.members]
    doc["params"] = code_params(code).to_document()
    return doc


def code_from_document(doc: dict) -> Code:
    """Reload a document written by :func:`code_document` without re-running the construction."""
    t = Tgs.from_document(doc["tgs"])
    ideal = as_set(t, doc["ideal"]) if "ideal" in doc else None
    A = B = gens = None
    if "A" in doc:
        A, B = as_word(t, doc["A"]), as_word(t, doc["B"])
    if "generators" in doc:
        gens = tuple(as_word(t, g) for g in doc["generators"])
    members = tuple(sorted(as_word(t, w) for w in doc["members"]))
    return Code(t, doc["n"], members, Provenance(doc["construction"], ideal, A, B, gens))
