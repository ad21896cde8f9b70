"""Bundled structures and code specs.

The JSON files under ``fixtures/`` are generated by :func:`write_bundle`
from the builders below; ``MANIFEST.json`` records a version and the
SHA-256 of every file.
"""
from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .algebra import Tgs, dump_document, load_tgs, product
from .errors import MalformedInput

BUNDLE_VERSION = "1"

DESCRIPTIONS = {
    "M3": "3-chain 0<a<1 with max as addition, min as ternary product, trivial Gamma",
    "P3": "0<a<1 with max as addition; ternary 0 if any argument is 0, a if exactly one is a, else 1; fails monotonicity",
    "M3xM3": "direct product of M3 with itself",
    "chain2": "2-chain 0<1 with max and min",
    "mid-power": "ideal power code {0,a}^3 over M3 with A=B=(1,1,1)",
    "mid-power-n1": "ideal power code {0,a}^1 over M3 with A=B=(1)",
    "mid-power-n2": "ideal power code {0,a}^2 over M3 with A=B=(1,1)",
    "repetition": "code generated by (0,0,0) and (a,a,a) over M3",
    "chain2-kernel": "kernel code of A=B=(1,1) over the 2-chain",
}

TGS_FIXTURES = ("M3", "P3", "M3xM3", "chain2")
CODE_FIXTURES = ("mid-power", "mid-power-n1", "mid-power-n2", "repetition", "chain2-kernel")


def build_m3() -> Tgs:
    return Tgs.from_functions(["0", "a", "1"], 0, max, lambda x, y, z: min(x, y, z), name="M3")


def build_p3() -> Tgs:
    def tern(x, y, z):
        if 0 in (x, y, z):
            return 0
        return 1 if (x, y, z).count(1) == 1 else 2

    return Tgs.from_functions(["0", "a", "1"], 0, max, tern, name="P3")


def build_chain2() -> Tgs:
    return Tgs.from_functions(["0", "1"], 0, max, lambda x, y, z: min(x, y, z), name="chain2")


def build_m3xm3() -> Tgs:
    m3 = build_m3()
    return product(m3, m3, name="M3xM3")


def code_specs() -> dict:
    top = ["1", "1", "1"]
    return {
        "mid-power": {"tgs": "M3.json", "construction": "ideal-power", "n": 3, "ideal": ["0", "a"], "A": top, "B": top},
        "mid-power-n1": {"tgs": "M3.json", "construction": "ideal-power", "n": 1, "ideal": ["0", "a"], "A": ["1"], "B": ["1"]},
        "mid-power-n2": {"tgs": "M3.json", "construction": "ideal-power", "n": 2, "ideal": ["0", "a"], "A": ["1", "1"], "B": ["1", "1"]},
        "repetition": {"tgs": "M3.json", "construction": "generated", "n": 3, "generators": [["0", "0", "0"], ["a", "a", "a"]]},
        "chain2-kernel": {"tgs": "chain2.json", "construction": "kernel", "n": 2, "A": ["1", "1"], "B": ["1", "1"]},
    }


def bundle_documents() -> dict:
    """File name -> text for every bundled file except the manifest."""
    out = {}
    for t in (build_m3(), build_p3(), build_m3xm3(), build_chain2()):
        out[f"{t.name}.json"] = dump_document(t.to_document())
    for name, spec in code_specs().items():
        out[f"{name}.json"] = dump_document(spec)
    return out


def manifest(docs: dict) -> dict:
    return {
        "version": BUNDLE_VERSION,
        "descriptions": DESCRIPTIONS,
        "sha256": {name: hashlib.sha256(text.encode("utf-8")).hexdigest() for name, text in sorted(docs.items())},
    }


def write_bundle(directory) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    docs = bundle_documents()
    docs["MANIFEST.json"] = dump_document(manifest(docs))
    for name, text in sorted(docs.items()):
        (directory / name).write_text(text, encoding="utf-8")
    return sorted(docs)


def bundle_dir():
    return resources.files(__package__) / "fixtures"


def bundled_text(filename: str) -> str:
    path = bundle_dir() / filename
    if not path.is_file():
        raise MalformedInput(f"no bundled fixture named {filename!r}")
    return path.read_text(encoding="utf-8")


def verify_bundle() -> dict:
    """Compare the installed files against the manifest; returns name -> ok."""
    man = json.loads(bundled_text("MANIFEST.json"))
    result = {}
    for name, digest in man["sha256"].items():
        text = bundled_text(name)
        result[name] = hashlib.sha256(text.encode("utf-8")).hexdigest() == digest
    return result


def _bundled_name(ref: str) -> str:
    name = Path(ref).name
    return name if name.endswith(".json") else name + ".json"


def load_tgs_ref(ref, base=None) -> Tgs:
    """Load a TGS from a path, a path relative to ``base``, or a bundled fixture name."""
    for cand in _candidates(ref, base):
        if cand.is_file():
            return load_tgs(cand)
    name = _bundled_name(str(ref))
    doc = json.loads(bundled_text(name))
    return Tgs.from_document(doc, name=Path(name).stem)


def load_code_spec(ref, base=None):
    """Return ``(spec_document, directory_for_relative_tgs_paths)``; bundled specs resolve to the bundle."""
    for cand in _candidates(ref, base):
        if cand.is_file():
            try:
                return json.loads(cand.read_text(encoding="utf-8")), cand.parent
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"{cand}: invalid JSON ({exc})") from None
    return json.loads(bundled_text(_bundled_name(str(ref)))), None


def _candidates(ref, base):
    p = Path(ref)
    yield p
    if base is not None and not p.is_absolute():
        yield Path(base) / p


def load_tgs_fixture(name: str) -> Tgs:
    return load_tgs_ref(name)


def load_code_fixture(name: str, force=False, bounds=None):
    from .codes import code_from_spec

    spec, base = load_code_spec(name)
    t = load_tgs_ref(spec["tgs"], base)
    return code_from_spec(t, spec, force=force, bounds=bounds)
