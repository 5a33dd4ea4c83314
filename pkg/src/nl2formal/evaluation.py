"""Scoring model predictions: syntactic and semantic accuracy.

A prediction is *syntactically* correct when it equals the target after
whitespace canonicalisation (FOL: after :func:`normalize_fol`).  For regex
and LTL it is *semantically* correct when it parses and denotes the same
language as the target.  Equivalence checks run under a time and state
budget; when the budget runs out the syntactic verdict stands and the
example is flagged ``EquivTimeout``.
"""
from __future__ import annotations

import json
import queue
import shlex
import subprocess
import threading
import time
from dataclasses import asdict, dataclass, field

from .errors import (
    CapacityError,
    EquivalenceTimeout,
    FormulaSyntaxError,
    LineCountMismatchError,
    MissingPredictionError,
    ProcessError,
    SchemaError,
)
from .fol import normalize_fol, parse_fol

SYN_OK = "SynOK"
SEM_OK = "SemOK"
WRONG = "Wrong"
PARSE_FAIL = "ParseFail"
EQUIV_TIMEOUT = "EquivTimeout"
VERDICTS = (SYN_OK, SEM_OK, WRONG, PARSE_FAIL, EQUIV_TIMEOUT)

_PROMPT_NAMES = {"fol": "FOL", "ltl": "LTL", "regex": "a regular expression"}
DEFAULT_TIMEOUT = 5.0


def format_prompt(domain: str, nl: str) -> str:
    return f"translate natural language to {_PROMPT_NAMES[domain]}: {nl}"


def prompt_payload(prompt: str) -> str:
    """Inverse of :func:`format_prompt`: the sentence after the prefix."""
    _, _, rest = prompt.partition(": ")
    return rest


def canonical(text: str) -> str:
    """Collapse whitespace runs to one space and trim the ends."""
    return " ".join(text.split())


def _as_mapping(predictions):
    if isinstance(predictions, dict):
        return predictions
    out = {}
    for p in predictions:
        if isinstance(p, Prediction):
            out[p.id] = p.prediction
        else:
            out[p["id"]] = p["prediction"]
    return out


def _lookup(preds, record):
    try:
        return preds[record.id]
    except KeyError:
        raise MissingPredictionError(f"no prediction for record {record.id}") from None


@dataclass(frozen=True)
class Prediction:
    id: str
    prediction: str


def read_predictions(path) -> dict:
    """Load a ``{"id", "prediction"}`` JSONL file into an id -> text map."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise SchemaError(f"invalid JSON: {e.msg}", lineno) from None
            if not isinstance(obj, dict) or not isinstance(obj.get("id"), str) \
                    or not isinstance(obj.get("prediction"), str):
                raise SchemaError("expected {\"id\": str, \"prediction\": str}", lineno)
            out[obj["id"]] = obj["prediction"]
    return out


def write_predictions(predictions, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for k, v in _as_mapping(predictions).items():
            fh.write(json.dumps({"id": k, "prediction": v}, ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class EvalOptions:
    domain: str | None = None
    fol_mode: str = "exact"
    timeout: float = DEFAULT_TIMEOUT
    max_states: int | None = None
    tag: str | None = None


def syntactic_match(domain, prediction, target, fol_mode="exact") -> bool:
    if domain == "fol":
        return normalize_fol(prediction, fol_mode) == normalize_fol(target, fol_mode)
    return canonical(prediction) == canonical(target)


def _equivalent(domain, prediction, target, opts):
    """True/False, or raises ``FormulaSyntaxError`` for a bad prediction."""
    if domain == "regex":
        from .regex import parse_regex, regex_equivalent
        from .regex.automata import DEFAULT_MAX_STATES

        p = parse_regex(prediction)
        t = parse_regex(target)
        return regex_equivalent(p, t, max_states=opts.max_states or DEFAULT_MAX_STATES, timeout=opts.timeout)
    if domain == "ltl":
        from .ltl import ltl_equivalent, parse_ltl
        from .ltl.tableau import DEFAULT_MAX_STATES

        p = parse_ltl(prediction)
        t = parse_ltl(target)
        return ltl_equivalent(p, t, max_states=opts.max_states or DEFAULT_MAX_STATES, timeout=opts.timeout).equivalent
    raise ValueError(f"no equivalence engine for domain {domain!r}")


def score_one(domain, prediction, target, opts=EvalOptions()) -> str:
    """Verdict for a single prediction."""
    if syntactic_match(domain, prediction, target, opts.fol_mode):
        return SYN_OK
    if domain == "fol":
        try:
            parse_fol(prediction)
        except FormulaSyntaxError:
            return PARSE_FAIL
        return WRONG
    try:
        same = _equivalent(domain, prediction, target, opts)
    except FormulaSyntaxError:
        return PARSE_FAIL
    except (EquivalenceTimeout, CapacityError):
        return EQUIV_TIMEOUT
    return SEM_OK if same else WRONG


@dataclass
class EvalReport:
    domain: str
    n: int
    syntactic_correct: int
    semantic_correct: int | None
    verdicts: list  # [(record id, verdict)], dataset order
    tag: str | None = None
    runtime: dict = field(default_factory=dict, compare=False)

    @property
    def syntactic_accuracy(self) -> float:
        return self.syntactic_correct / self.n if self.n else 0.0

    @property
    def semantic_accuracy(self) -> float | None:
        if self.semantic_correct is None:
            return None
        return self.semantic_correct / self.n if self.n else 0.0

    def counts(self) -> dict:
        c = {v: 0 for v in VERDICTS}
        for _, v in self.verdicts:
            c[v] += 1
        return c

    def to_json(self) -> dict:
        d = asdict(self)
        d["verdicts"] = [list(v) for v in self.verdicts]
        d["syntactic_accuracy"] = self.syntactic_accuracy
        d["semantic_accuracy"] = self.semantic_accuracy
        return d

    @classmethod
    def from_json(cls, d) -> "EvalReport":
        return cls(d["domain"], d["n"], d["syntactic_correct"], d["semantic_correct"],
                   [tuple(v) for v in d["verdicts"]], d.get("tag"), d.get("runtime", {}))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "EvalReport":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def table(self) -> str:
        rows = [("domain", self.domain), ("examples", str(self.n))]
        if self.tag:
            rows.append(("tag", self.tag))
        rows.append(("syntactic accuracy", f"{100 * self.syntactic_accuracy:.2f}%"))
        if self.semantic_correct is not None:
            rows.append(("semantic accuracy", f"{100 * self.semantic_accuracy:.2f}%"))
        for v, c in self.counts().items():
            rows.append((v, str(c)))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _infer_domain(records, domain):
    if domain is not None:
        return domain
    domains = {r.domain for r in records}
    if len(domains) != 1:
        raise ValueError(f"records span several domains: {sorted(domains)}")
    return domains.pop()


def evaluate(dataset, predictions, options: EvalOptions = EvalOptions()) -> EvalReport:
    """Score every record; verdicts follow dataset order."""
    records = list(dataset)
    preds = _as_mapping(predictions)
    domain = _infer_domain(records, options.domain) if records else (options.domain or "regex")
    verdicts = []
    slowest = 0.0
    t0 = time.perf_counter()
    for r in records:
        t = time.perf_counter()
        verdicts.append((r.id, score_one(domain, _lookup(preds, r), r.target, options)))
        slowest = max(slowest, time.perf_counter() - t)
    syn = sum(v == SYN_OK for _, v in verdicts)
    sem = None if domain == "fol" else sum(v in (SYN_OK, SEM_OK) for _, v in verdicts)
    runtime = {"seconds": time.perf_counter() - t0, "slowest_example": slowest}
    return EvalReport(domain, len(records), syn, sem, verdicts, options.tag, runtime)


def syntactic_accuracy(records, predictions, domain=None, fol_mode="exact") -> float:
    records = list(records)
    preds = _as_mapping(predictions)
    domain = _infer_domain(records, domain) if records else domain
    if not records:
        return 0.0
    hits = sum(syntactic_match(domain, _lookup(preds, r), r.target, fol_mode) for r in records)
    return hits / len(records)


def semantic_accuracy(records, predictions, domain=None, timeout=DEFAULT_TIMEOUT) -> float:
    records = list(records)
    domain = _infer_domain(records, domain) if records else domain
    if domain not in ("regex", "ltl"):
        raise ValueError("semantic accuracy needs the regex or ltl domain")
    report = evaluate(records, predictions, EvalOptions(domain=domain, timeout=timeout))
    return report.semantic_accuracy


# --------------------------------------------------------------------------
# external models

def run_external_model(command, records, domain=None, timeout: float = 30.0) -> dict:
    """Translate records with an external program, one line per prompt.

    The program reads prompts from stdin and must answer each with exactly
    one line on stdout, in order.  ``timeout`` bounds the wait for each
    answer.  Returns a record id -> prediction map.
    """
    records = list(records)
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    prompts = []
    for r in records:
        text = format_prompt(domain or r.domain, r.nl)
        prompts.append(text.replace("\r", " ").replace("\n", " "))
    try:
        proc = subprocess.Popen(argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                                stderr=subprocess.PIPE, text=True, encoding="utf-8", bufsize=1)
    except OSError as e:
        raise ProcessError(f"cannot start {argv[0]!r}: {e}") from e

    lines: queue.Queue = queue.Queue()
    err_chunks = []

    def writer():
        try:
            for p in prompts:
                proc.stdin.write(p + "\n")
                proc.stdin.flush()
        except (BrokenPipeError, OSError):
            pass
        finally:
            try:
                proc.stdin.close()
            except OSError:
                pass

    def reader():
        for line in proc.stdout:
            lines.put(line.rstrip("\n").rstrip("\r"))
        lines.put(None)

    def drain_err():
        err_chunks.append(proc.stderr.read())

    threads = [threading.Thread(target=f, daemon=True) for f in (writer, reader, drain_err)]
    for t in threads:
        t.start()
    out = []
    try:
        while len(out) < len(records):
            try:
                line = lines.get(timeout=timeout)
            except queue.Empty:
                raise TimeoutError(f"no answer for prompt {len(out) + 1} within {timeout}s") from None
            if line is None:
                break
            out.append(line)
        if len(out) == len(records):
            try:
                extra = lines.get(timeout=timeout)
            except queue.Empty:
                raise TimeoutError("program did not exit after the last answer") from None
            if extra is not None:
                raise LineCountMismatchError(f"expected {len(records)} lines, got more")
        try:
            code = proc.wait(timeout=timeout)
        except subprocess.TimeoutExpired:
            raise TimeoutError("program did not exit after closing its input") from None
    finally:
        if proc.poll() is None:
            proc.kill()
            proc.wait()
    for t in threads[1:]:
        t.join(timeout=1.0)
    if code != 0:
        tail = "".join(err_chunks)[-500:]
        raise ProcessError(f"{argv[0]!r} exited with status {code}: {tail}")
    if len(out) != len(records):
        raise LineCountMismatchError(f"expected {len(records)} lines, got {len(out)}")
    return {r.id: p for r, p in zip(records, out)}
