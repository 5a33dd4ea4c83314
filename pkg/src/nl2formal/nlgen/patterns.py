"""Specification patterns and the LTL dataset constructions built on them."""
from __future__ import annotations

import random
import re
import string
from dataclasses import dataclass, field

from ..datasets import DatasetRecord
from ..errors import CollisionError
from ..ltl.ast import RESERVED as LTL_RESERVED
from ..ltl.ast import Implies, aps, conjoin, rename
from ..ltl.parser import parse_ltl, to_compact
from .grammar import get_variant, ltl_to_nl, nl_to_ltl

PLACEHOLDERS = ("a", "b", "c", "d", "e")

# Classic property patterns under global scope.  The first two, an
# invariant implication and a recurring proposition, anchor the set.
_BUILTIN = (
    ("invariant_implication", "G (a -> b)"),
    ("recurrence", "G F a"),
    ("absence", "G !a"),
    ("existence", "F a"),
    ("universality", "G a"),
    ("response", "G (a -> F b)"),
    ("precedence", "(!b U a) | G !b"),
    ("persistence", "F G a"),
    ("immediate_response", "G (a -> X b)"),
    ("until", "a U b"),
    ("response_chain", "G (a -> F (b & X F c))"),
    ("constrained_response", "G (a -> (b U c))"),
    ("stabilising_response", "G (a -> F G b)"),
    ("fair_response", "G F a -> G F b"),
)


@dataclass(frozen=True)
class Pattern:
    name: str
    formula: object

    @property
    def text(self):
        return to_compact(self.formula)


class PatternCatalog:
    """An ordered list of pattern templates over the placeholders ``a..e``."""

    def __init__(self, entries):
        patterns = []
        seen = set()
        for name, f in entries:
            if isinstance(f, str):
                f = parse_ltl(f)
            extra = aps(f) - set(PLACEHOLDERS)
            if extra:
                raise ValueError(f"pattern {name} uses non-placeholder aps {sorted(extra)}")
            if f in seen:
                raise ValueError(f"duplicate pattern {to_compact(f)}")
            seen.add(f)
            patterns.append(Pattern(name, f))
        if not patterns:
            raise ValueError("empty pattern catalog")
        self.patterns = tuple(patterns)

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def formulas(self):
        return [p.formula for p in self.patterns]

    def __contains__(self, f):
        if isinstance(f, str):
            f = parse_ltl(f)
        return any(p.formula == f for p in self.patterns)

    @classmethod
    def from_file(cls, path):
        """One pattern per line; blank lines and ``#`` comments are skipped."""
        entries = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if line:
                    entries.append((f"line{lineno}", line))
        return cls(entries)


def pattern_catalog() -> PatternCatalog:
    return PatternCatalog(_BUILTIN)


def _pattern_record(formulas, variant, seed, meta):
    f = conjoin(formulas)
    nl = ltl_to_nl(f, variant, seed)
    return DatasetRecord.make("ltl", nl, to_compact(f), meta)


def pattern_record(formulas, variant="base", seed=0) -> DatasetRecord:
    """Record for an explicit list of (already instantiated) conjuncts."""
    g = get_variant(variant)
    meta = {"generator": "ltl-pattern", "grammar": g.name, "seed": seed}
    return _pattern_record(list(formulas), g, seed, meta)


def gen_pattern_record(k: int, variant="base", seed: int = 0, catalog=None,
                       ap_pool=PLACEHOLDERS, share_aps=False) -> DatasetRecord:
    """Conjoin ``k`` randomly instantiated catalog patterns.

    Without ``share_aps`` every conjunct gets its own aps from ``ap_pool``,
    so only patterns that still fit the remaining pool are drawn.
    """
    if not 1 <= k <= 4:
        raise ValueError("k must be between 1 and 4")
    catalog = catalog or _default_catalog()
    g = get_variant(variant)
    rng = random.Random(seed)
    pool = list(ap_pool)
    conjuncts, names, used = [], [], []
    for j in range(k):
        later = k - j - 1
        room = len(pool) if share_aps else len(pool) - later
        fits = [p for p in catalog.patterns if len(aps(p.formula)) <= room]
        if not fits:
            raise ValueError(f"ap pool of {len(ap_pool)} is too small for {k} disjoint patterns")
        p = rng.choice(fits)
        holes = sorted(aps(p.formula))
        chosen = rng.sample(pool, len(holes))
        if not share_aps:
            pool = [a for a in pool if a not in chosen]
        conjuncts.append(rename(p.formula, dict(zip(holes, chosen))))
        names.append(p.name)
        used.append(dict(zip(holes, chosen)))
    meta = {"generator": "ltl-pattern", "grammar": g.name, "seed": seed, "k": k,
            "patterns": names, "instantiation": used}
    return _pattern_record(conjuncts, g, seed, meta)


_CATALOG = None


def _default_catalog():
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = pattern_catalog()
    return _CATALOG


def gen_pattern_dataset(n: int, variant="base", seed: int = 0, catalog=None,
                        ap_pool=PLACEHOLDERS, share_aps=False, max_k=4):
    """``n`` distinct records; record ``i`` uses a seed derived from ``seed``."""
    out = []
    seen = set()
    rng = random.Random(seed)
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 50 * n + 1000:
            raise RuntimeError(f"could not find {n} distinct records")
        s = rng.getrandbits(63)
        k = 1 + s % max_k
        r = gen_pattern_record(k, variant, s, catalog, ap_pool, share_aps)
        key = (r.nl, r.target)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


@dataclass(frozen=True)
class SynthesisSpec:
    assumptions: tuple = ()
    guarantees: tuple = ()
    inputs: tuple = ()
    outputs: tuple = field(default=())

    def __post_init__(self):
        declared = set(self.inputs) | set(self.outputs)
        if declared:
            used = set()
            for f in self.assumptions + self.guarantees:
                used |= aps(f)
            if used - declared:
                raise ValueError(f"undeclared aps {sorted(used - declared)}")

    @classmethod
    def from_json(cls, obj):
        def forms(key):
            return tuple(parse_ltl(s) for s in obj.get(key, ()))

        return cls(forms("assumptions"), forms("guarantees"),
                   tuple(obj.get("inputs", ())), tuple(obj.get("outputs", ())))


def combine_synthesis_spec(spec: SynthesisSpec):
    """``(and of assumptions) -> (and of guarantees)``; guarantees alone if no assumptions."""
    guarantees = conjoin(spec.guarantees)
    if not spec.assumptions:
        return guarantees
    return Implies(conjoin(spec.assumptions), guarantees)


def synthesis_record(spec: SynthesisSpec, variant="base", seed=0) -> DatasetRecord:
    g = get_variant(variant)
    f = combine_synthesis_spec(spec)
    meta = {"generator": "ltl-synthesis", "grammar": g.name, "seed": seed,
            "inputs": list(spec.inputs), "outputs": list(spec.outputs)}
    return DatasetRecord.make("ltl", ltl_to_nl(f, g, seed), to_compact(f), meta)


def regenerate_sentence(record: DatasetRecord, variant="enriched", seed=0) -> DatasetRecord:
    """Re-verbalise an LTL record's target under another grammar variant."""
    g = get_variant(variant)
    f = parse_ltl(record.target)
    meta = {**record.meta, "grammar": g.name, "seed": seed}
    return record.replace(nl=ltl_to_nl(f, g, seed), meta=meta)


def check_record(record: DatasetRecord, variant=None) -> bool:
    """Whether the sentence parses back to exactly the target formula."""
    variant = variant or record.meta.get("grammar", "enriched")
    return nl_to_ltl(record.nl, variant) == parse_ltl(record.target)


_WORD = re.compile(r"[A-Za-z][A-Za-z0-9]*")


def rename_aps(record: DatasetRecord, mapping=None, seed: int = 0) -> DatasetRecord:
    """Rename atomic propositions in both the sentence and the target.

    Renaming is by whole word, so the texts keep their layout.  Without a
    mapping every ap gets a distinct random lower-case letter drawn with
    ``seed``.
    """
    f = parse_ltl(record.target)
    names = aps(f)
    if mapping is None:
        rng = random.Random(seed)
        letters = sorted(set(string.ascii_lowercase) - names)
        if len(letters) < len(names):
            letters = sorted(set(string.ascii_lowercase))
        mapping = dict(zip(sorted(names), rng.sample(letters, len(names))))
    mapping = {k: v for k, v in mapping.items() if k in names}
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        raise CollisionError("mapping is not injective")
    kept = names - set(mapping)
    clash = kept & set(targets)
    if clash:
        raise CollisionError(f"new names collide with untouched aps {sorted(clash)}")
    grammar = get_variant(record.meta.get("grammar", "enriched"))
    for v in targets:
        if not _WORD.fullmatch(v) or v in LTL_RESERVED or v.lower() in grammar.reserved:
            raise CollisionError(f"new name {v!r} clashes with a keyword")

    def sub(text):
        return _WORD.sub(lambda m: mapping.get(m.group(0), m.group(0)), text)

    nl = sub(record.nl)
    target = sub(record.target)
    if parse_ltl(target) != rename(f, mapping):
        raise CollisionError("renaming changed the formula structure")
    meta = {**record.meta, "ap_map": {**record.meta.get("ap_map", {}), **mapping}}
    return record.replace(nl=nl, target=target, meta=meta)
