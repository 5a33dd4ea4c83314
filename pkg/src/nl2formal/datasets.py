"""Dataset records, splits, noun perturbation and file formats."""
from __future__ import annotations

import hashlib
import json
import math
import random
import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import AlignmentError, SchemaError

DOMAINS = ("regex", "fol", "ltl")


def record_id(domain: str, nl: str, target: str) -> str:
    h = hashlib.sha1("\x1f".join((domain, nl, target)).encode("utf-8"))
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    domain: str
    nl: str
    target: str
    meta: dict = field(default_factory=dict, compare=True, hash=False)

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        if not self.nl:
            raise ValueError("nl must be non-empty")

    @classmethod
    def make(cls, domain, nl, target, meta=None):
        """Record whose id is the content hash of ``(domain, nl, target)``."""
        return cls(record_id(domain, nl, target), domain, nl, target, dict(meta or {}))

    def to_json(self) -> dict:
        return {"id": self.id, "domain": self.domain, "nl": self.nl, "target": self.target, "meta": self.meta}

    def replace(self, nl=None, target=None, meta=None):
        nl = self.nl if nl is None else nl
        target = self.target if target is None else target
        meta = self.meta if meta is None else meta
        return DatasetRecord.make(self.domain, nl, target, meta)


def parse_target(domain: str, target: str):
    """Parse a target with its domain parser; raises ``FormulaSyntaxError``."""
    if domain == "regex":
        from .regex import parse_regex

        return parse_regex(target)
    if domain == "ltl":
        from .ltl import parse_ltl

        return parse_ltl(target)
    if domain == "fol":
        from .fol import parse_fol

        return parse_fol(target)
    raise ValueError(f"unknown domain {domain!r}")


def dedupe(records):
    """Drop records whose ``(nl, target)`` pair was seen before; keeps order."""
    seen = set()
    out = []
    for r in records:
        key = (r.nl, r.target)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


# --------------------------------------------------------------------------
# splits

@dataclass(frozen=True)
class SplitSpec:
    ratios: tuple = (0.9, 0.05, 0.05)
    seed: int = 0

    def __post_init__(self):
        if len(self.ratios) != 3 or any(r < 0 for r in self.ratios):
            raise ValueError("ratios must be three non-negative fractions")
        if not math.isclose(sum(self.ratios), 1.0, abs_tol=1e-9):
            raise ValueError(f"ratios must sum to 1, got {sum(self.ratios)}")


def split_sizes(n: int, ratios) -> tuple:
    """Floor-based validation/test sizes; the remainder goes to training."""
    n_val = math.floor(n * ratios[1] + 1e-9)
    n_test = math.floor(n * ratios[2] + 1e-9)
    return n - n_val - n_test, n_val, n_test


def make_split(records, spec: SplitSpec = SplitSpec()):
    """Seeded shuffle, then contiguous train/val/test cuts."""
    records = list(records)
    if not records:
        raise ValueError("cannot split an empty dataset")
    order = list(range(len(records)))
    random.Random(spec.seed).shuffle(order)
    n_train, n_val, _ = split_sizes(len(records), spec.ratios)
    shuffled = [records[i] for i in order]
    return (shuffled[:n_train], shuffled[n_train : n_train + n_val], shuffled[n_train + n_val :])


# --------------------------------------------------------------------------
# nouns

def noun_pool() -> list:
    """The pinned list of 25 common nouns, dataset nouns first."""
    text = resources.files("nl2formal").joinpath("data/nouns.txt").read_text(encoding="utf-8")
    return [w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#")]


_QUOTED = re.compile(r"([`'])([A-Za-z]+)'")


def substitute_nouns(record: DatasetRecord, mapping) -> DatasetRecord:
    """Swap nouns consistently in a regex record's sentence and target.

    Nouns are replaced where they appear as single-quoted words in the
    sentence and as whole literal leaves in the parsed target.  Every quoted
    noun of the sentence that the mapping touches must have a matching
    literal in the target.
    """
    from .regex import ast as R
    from .regex import parse_regex, print_regex

    if record.domain != "regex":
        raise ValueError("noun substitution applies to regex records only")
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return record
    if len(set(mapping.values())) != len(mapping):
        raise AlignmentError("noun mapping must be injective")
    tree = parse_regex(record.target)
    literals = {n.text for n in R.walk(tree) if isinstance(n, R.Literal)}
    quoted = {m.group(2) for m in _QUOTED.finditer(record.nl)}
    for noun in quoted & set(mapping):
        if noun not in literals:
            raise AlignmentError(f"quoted noun {noun!r} has no literal in the target")
    for noun in literals & set(mapping):
        if noun not in quoted:
            raise AlignmentError(f"literal {noun!r} is not quoted in the sentence")
    untouched = (literals | quoted) - set(mapping)
    clash = untouched & set(mapping.values())
    if clash:
        raise AlignmentError(f"replacement nouns already present: {sorted(clash)}")

    nl = _QUOTED.sub(lambda m: m.group(1) + mapping.get(m.group(2), m.group(2)) + "'", record.nl)
    target = record.target
    if literals & set(mapping):
        target = _swap_literal_text(record.target, mapping)
        want = _swap_literals(tree, mapping)
        if parse_regex(target) != want:
            target = print_regex(want)
    meta = dict(record.meta)
    meta["noun_map"] = {**meta.get("noun_map", {}), **mapping}
    return record.replace(nl=nl, target=target, meta=meta)


def _swap_literal_text(text, mapping):
    """Replace whole literal tokens in regex text, keeping its layout."""
    from .regex.parser import _tokenize

    out, last = [], 0
    for kind, val, pos in _tokenize(text):
        if kind == "lit" and val in mapping:
            out.append(text[last:pos])
            out.append(mapping[val])
            last = pos + len(val)
    out.append(text[last:])
    return "".join(out)


def _swap_literals(node, mapping):
    from dataclasses import fields, replace

    from .regex import ast as R

    if isinstance(node, R.Literal):
        return R.Literal(mapping.get(node.text, node.text))
    changes = {}
    for f in fields(node):
        v = getattr(node, f.name)
        if isinstance(v, R.Regex):
            changes[f.name] = _swap_literals(v, mapping)
        elif isinstance(v, tuple) and v and isinstance(v[0], R.Regex):
            changes[f.name] = tuple(_swap_literals(c, mapping) for c in v)
    return replace(node, **changes) if changes else node


# --------------------------------------------------------------------------
# files

_FIELDS = ("id", "domain", "nl", "target", "meta")


def write_jsonl(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r.to_json(), ensure_ascii=False, sort_keys=False) + "\n")


def read_jsonl(path) -> list:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise SchemaError(f"invalid JSON: {e.msg}", lineno) from None
            if not isinstance(obj, dict):
                raise SchemaError("expected a JSON object", lineno)
            missing = [k for k in _FIELDS if k not in obj]
            if missing:
                raise SchemaError(f"missing field(s) {', '.join(missing)}", lineno)
            if not all(isinstance(obj[k], str) for k in _FIELDS[:4]) or not isinstance(obj["meta"], dict):
                raise SchemaError("wrong field types", lineno)
            try:
                out.append(DatasetRecord(obj["id"], obj["domain"], obj["nl"], obj["target"], obj["meta"]))
            except ValueError as e:
                raise SchemaError(str(e), lineno) from None
    return out


def read_tsv_pairs(path, domain: str) -> list:
    """Read ``<nl>\\t<target>`` lines into records with content-hash ids."""
    if domain not in DOMAINS:
        raise ValueError(f"unknown domain {domain!r}")
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise SchemaError(f"expected 2 tab-separated columns, found {len(cols)}", lineno)
            nl, target = cols[0].strip(), cols[1].strip()
            try:
                out.append(DatasetRecord.make(domain, nl, target, {"source": str(path), "line": lineno}))
            except ValueError as e:
                raise SchemaError(str(e), lineno) from None
    return out
