"""Command-line entry point: ``nl2formal <command> ...``.

Exit codes: 0 success (or equivalent), 1 a negative domain result
(inequivalent, failed alignment), 2 usage or runtime error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import __version__
from .errors import AlignmentError, CapacityError, EquivalenceTimeout, FormulaSyntaxError

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

DEFAULTS = {
    "seed": 0,
    "grammar": "base",
    "ratios": "0.9,0.05,0.05",
    "timeout_ms": 5000,
    "max_states": None,
    "n": 100,
    "max_k": 4,
    "share_aps": False,
    "fol_mode": "exact",
    "check": True,
}


class CliError(Exception):
    pass


def _opt(args, name):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return args.config.get(name, DEFAULTS.get(name))


def _seed(args):
    s = int(_opt(args, "seed"))
    if not 0 <= s < 2**64:
        raise CliError("seed must be an unsigned 64-bit value")
    return s


def _ratios(args):
    text = _opt(args, "ratios")
    parts = text if isinstance(text, (list, tuple)) else str(text).split(",")
    try:
        ratios = tuple(float(p) for p in parts)
    except ValueError:
        raise CliError(f"bad --ratios {text!r}") from None
    from .datasets import SplitSpec

    try:
        SplitSpec(ratios)
    except ValueError as e:
        raise CliError(str(e)) from None
    return ratios


def _timeout(args):
    return float(_opt(args, "timeout_ms")) / 1000.0


def _open_out(args):
    path = _opt(args, "out")
    if path in (None, "-"):
        return sys.stdout, False
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    return open(path, "w", encoding="utf-8"), True


def _write_records(args, records):
    fh, close = _open_out(args)
    try:
        for r in records:
            fh.write(json.dumps(r.to_json(), ensure_ascii=False) + "\n")
    finally:
        if close:
            fh.close()


def _load_records(path):
    from .datasets import read_jsonl

    if path is None:
        raise CliError("--input is required")
    return read_jsonl(path)


# --------------------------------------------------------------------------
# commands

def cmd_gen(args):
    from .nlgen import PatternCatalog, SynthesisSpec, check_record, gen_pattern_dataset, synthesis_record

    seed = _seed(args)
    grammar = _opt(args, "grammar")
    n = int(_opt(args, "n"))
    if n < 0:
        raise CliError("--n must be non-negative")
    if args.kind == "ltl-pattern":
        catalog_path = _opt(args, "catalog")
        catalog = PatternCatalog.from_file(catalog_path) if catalog_path else None
        records = gen_pattern_dataset(n, grammar, seed, catalog=catalog,
                                      share_aps=bool(_opt(args, "share_aps")), max_k=int(_opt(args, "max_k")))
    else:
        path = _opt(args, "input")
        if path is None:
            raise CliError("ltl-synthesis needs --input with one specification per line")
        records, seen = [], set()
        rng = random.Random(seed)
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if len(records) >= n:
                    break
                if not line.strip():
                    continue
                try:
                    spec = SynthesisSpec.from_json(json.loads(line))
                    r = synthesis_record(spec, grammar, rng.getrandbits(63))
                except (ValueError, FormulaSyntaxError) as e:
                    print(f"{path}:{lineno}: skipped: {e}", file=sys.stderr)
                    continue
                if (r.nl, r.target) not in seen:
                    seen.add((r.nl, r.target))
                    records.append(r)
        if len(records) < n:
            print(f"only {len(records)} distinct records available", file=sys.stderr)
    if _opt(args, "check"):
        bad = [r.id for r in records if not check_record(r)]
        if bad:
            raise CliError(f"{len(bad)} generated records failed the round-trip check")
    _write_records(args, records)
    return EXIT_OK


def cmd_perturb(args):
    from .datasets import noun_pool, substitute_nouns
    from .nlgen import regenerate_sentence, rename_aps

    seed = _seed(args)
    records = _load_records(_opt(args, "input"))
    mapping = _parse_map(_opt(args, "map"))
    rng = random.Random(seed)
    out, failures = [], 0
    for i, r in enumerate(records):
        s = rng.getrandbits(63)
        try:
            if args.kind == "nouns":
                m = mapping if mapping is not None else _random_noun_map(r, noun_pool(), _opt(args, "pool_size"), s)
                out.append(substitute_nouns(r, m))
            elif args.kind == "variables":
                out.append(rename_aps(r, mapping, s))
            else:
                out.append(regenerate_sentence(r, _opt(args, "grammar") if args.grammar else "enriched", s))
        except (AlignmentError, ValueError, FormulaSyntaxError) as e:
            failures += 1
            print(f"record {i + 1} ({r.id}): {type(e).__name__}: {e}", file=sys.stderr)
    _write_records(args, out)
    return EXIT_NEGATIVE if failures else EXIT_OK


def _random_noun_map(record, pool, pool_size, seed):
    """Send each pool noun quoted in the sentence to an unused pool noun."""
    from .datasets import _QUOTED

    if pool_size:
        pool = pool[: int(pool_size)]
    quoted = {m.group(2) for m in _QUOTED.finditer(record.nl)}
    present = sorted(quoted & set(pool))
    free = [w for w in pool if w not in quoted]
    if len(free) < len(present):
        raise AlignmentError("noun pool too small for this record")
    return dict(zip(present, random.Random(seed).sample(free, len(present))))


def _parse_map(text):
    if text is None:
        return None
    if isinstance(text, dict):
        return dict(text)
    out = {}
    for part in str(text).split(","):
        if "=" not in part:
            raise CliError(f"bad mapping entry {part!r}; expected old=new")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_split(args):
    from .datasets import SplitSpec, make_split, write_jsonl

    records = _load_records(_opt(args, "input"))
    if not records:
        raise CliError("cannot split an empty dataset")
    parts = make_split(records, SplitSpec(_ratios(args), _seed(args)))
    out = _opt(args, "out")
    if out is None:
        raise CliError("--out must name a directory for train/val/test files")
    os.makedirs(out, exist_ok=True)
    for name, part in zip(("train", "val", "test"), parts):
        write_jsonl(part, os.path.join(out, f"{name}.jsonl"))
    print(f"train {len(parts[0])}  val {len(parts[1])}  test {len(parts[2])}")
    return EXIT_OK


def cmd_eval(args):
    from .evaluation import EvalOptions, evaluate, read_predictions

    records = _load_records(_opt(args, "input"))
    preds_path = _opt(args, "predictions")
    if preds_path is None:
        raise CliError("--predictions is required")
    opts = EvalOptions(domain=_opt(args, "domain"), fol_mode=_opt(args, "fol_mode"),
                       timeout=_timeout(args), max_states=_opt(args, "max_states"), tag=_opt(args, "tag"))
    report = evaluate(records, read_predictions(preds_path), opts)
    out = _opt(args, "out")
    if out:
        report.save(out)
    print(report.table())
    return EXIT_OK


def cmd_equiv(args):
    domain = _opt(args, "domain")
    timeout = _timeout(args)
    if domain == "regex":
        from .regex import find_counterexample, parse_regex
        from .regex.automata import DEFAULT_MAX_STATES

        a, b = parse_regex(args.left), parse_regex(args.right)
        cex = find_counterexample(a, b, _opt(args, "max_states") or DEFAULT_MAX_STATES, timeout)
        if cex is None:
            print("Equivalent")
            return EXIT_OK
        print("Inequivalent")
        print(f"counterexample: {cex!r}")
        return EXIT_NEGATIVE
    if domain == "ltl":
        from .ltl import eval_trace, ltl_equivalent, parse_ltl
        from .ltl.tableau import DEFAULT_MAX_STATES

        a, b = parse_ltl(args.left), parse_ltl(args.right)
        r = ltl_equivalent(a, b, _opt(args, "max_states") or DEFAULT_MAX_STATES, timeout)
        if r.equivalent:
            print("Equivalent")
            return EXIT_OK
        print("Inequivalent")
        print(f"witness: {r.witness}")
        print(f"left: {eval_trace(a, r.witness)}  right: {eval_trace(b, r.witness)}")
        return EXIT_NEGATIVE
    raise CliError("equiv supports --domain regex or ltl")


def cmd_parse(args):
    domain = _opt(args, "domain")
    if domain == "regex":
        from .regex import parse_regex, print_regex

        tree = parse_regex(args.text)
        print(repr(tree))
        print(print_regex(tree))
    elif domain == "ltl":
        from .ltl import parse_ltl, print_ltl

        f = parse_ltl(args.text)
        print(repr(f))
        print(print_ltl(f))
    elif domain == "fol":
        from .fol import parse_fol, print_fol

        doc = parse_fol(args.text)
        print(repr(doc))
        print(print_fol(doc))
    elif domain == "nl":
        from .ltl import print_ltl, to_compact
        from .nlgen import nl_to_ltl

        f = nl_to_ltl(args.text, _opt(args, "grammar"))
        print(to_compact(f))
        print(print_ltl(f))
    else:
        raise CliError("parse supports --domain regex, ltl, fol or nl")
    return EXIT_OK


def cmd_run_model(args):
    from .evaluation import run_external_model, write_predictions

    records = _load_records(_opt(args, "input"))
    command = _opt(args, "command")
    if not command:
        raise CliError("--command is required")
    preds = run_external_model(command, records, _opt(args, "domain"), _timeout(args))
    out = _opt(args, "out")
    if out is None:
        for k, v in preds.items():
            print(json.dumps({"id": k, "prediction": v}, ensure_ascii=False))
    else:
        write_predictions(preds, out)
    return EXIT_OK


# --------------------------------------------------------------------------
# wiring

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option defaults; flags win")
    common.add_argument("--seed", type=int, help="global seed (unsigned 64-bit)")
    common.add_argument("--domain", choices=["regex", "ltl", "fol", "nl"])
    common.add_argument("--grammar", choices=["base", "enriched"])
    common.add_argument("--ratios", help="train,val,test fractions (default 0.9,0.05,0.05)")
    common.add_argument("--timeout-ms", dest="timeout_ms", type=int, help="per-check or per-line budget")
    common.add_argument("--max-states", dest="max_states", type=int, help="automaton/tableau state cap")
    common.add_argument("--out", help="output file (or directory for split)")
    common.add_argument("--input", help="input JSONL dataset (or specification file)")

    p = argparse.ArgumentParser(prog="nl2formal", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command_name", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate an LTL dataset")
    g.add_argument("kind", choices=["ltl-pattern", "ltl-synthesis"])
    g.add_argument("--n", type=int, help="number of records")
    g.add_argument("--max-k", dest="max_k", type=int, help="most patterns per record (1-4)")
    g.add_argument("--share-aps", dest="share_aps", action="store_true", default=None,
                   help="let conjoined patterns share propositions")
    g.add_argument("--catalog", help="pattern file, one LTL formula per line")
    g.add_argument("--no-check", dest="check", action="store_false", default=None,
                   help="skip the sentence/formula round-trip check")
    g.set_defaults(func=cmd_gen)

    pt = sub.add_parser("perturb", parents=[common], help="out-of-distribution perturbations")
    pt.add_argument("kind", choices=["nouns", "variables", "operators"])
    pt.add_argument("--map", help="explicit renaming, e.g. dog=time,truck=eye")
    pt.add_argument("--pool-size", dest="pool_size", type=int, help="draw nouns from the first N of the pool")
    pt.set_defaults(func=cmd_perturb)

    s = sub.add_parser("split", parents=[common], help="train/val/test split")
    s.set_defaults(func=cmd_split)

    e = sub.add_parser("eval", parents=[common], help="score a predictions file")
    e.add_argument("--predictions", help="JSONL of {id, prediction}")
    e.add_argument("--fol-mode", dest="fol_mode", choices=["exact", "alpha"])
    e.add_argument("--tag", help="label stored in the report, e.g. ood")
    e.set_defaults(func=cmd_eval)

    q = sub.add_parser("equiv", parents=[common], help="decide equivalence of two formulas")
    q.add_argument("left")
    q.add_argument("right")
    q.set_defaults(func=cmd_equiv)

    pa = sub.add_parser("parse", parents=[common], help="parse and pretty-print")
    pa.add_argument("text")
    pa.set_defaults(func=cmd_parse)

    r = sub.add_parser("run-model", parents=[common], help="translate with an external program")
    r.add_argument("--command", help="program reading prompts on stdin, one answer per line")
    r.set_defaults(func=cmd_run_model)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code not in (0, None) else EXIT_OK
    try:
        cfg_path, args.config = args.config, {}
        if cfg_path:
            with open(cfg_path, encoding="utf-8") as fh:
                cfg = json.load(fh)
            if not isinstance(cfg, dict):
                raise CliError("config file must hold a JSON object")
            args.config = {k.replace("-", "_"): v for k, v in cfg.items()}
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
    except FormulaSyntaxError as e:
        print(f"syntax error: {e}", file=sys.stderr)
    except (EquivalenceTimeout, CapacityError) as e:
        print(f"undecided: {e}", file=sys.stderr)
    except (OSError, ValueError, TimeoutError, RuntimeError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
