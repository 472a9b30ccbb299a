"""Command-line entry point: ``godelbench <subcommand> ...``.

Exit status: 0 on success, 1 on a domain error (malformed input, a rejected proof, or a
falsified verdict under ``--expect-consistent``), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import arith, eqlogic, hilbert, kripke, lattice, textio
from .codec import (decode_equation, decode_formula, decode_frame, decode_term, encode_equation,
                    encode_formula, encode_frame, encode_term)
from .errors import GodelBenchError, MalformedProof
from .parsing import (format_equation, format_formula, format_frame, format_term,
                      infer_signature, parse_equation, parse_formula, parse_frame, parse_term)
from .terms import Signature


class _Out:
    """Collects text lines or a JSON record and prints once."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.record: dict = {}

    def text(self, line: str) -> None:
        self.lines.append(line)

    def flush(self) -> None:
        if self.fmt == "json":
            print(json.dumps(self.record, sort_keys=True, indent=2, ensure_ascii=False))
        else:
            for line in self.lines:
                print(line)


def _sig(args, terms=()) -> Signature:
    if args.sig is not None:
        return textio.parse_signature(args.sig)
    return infer_signature(terms)


def _steps(n: int) -> str:
    return f"{n} step" if n == 1 else f"{n} steps"


def _frame_record(fr) -> dict:
    return {"code": encode_frame(fr), **fr.as_record()}


# -- codec ----------------------------------------------------------------------------------

def cmd_encode(args, out: _Out) -> int:
    if args.term is not None:
        t = parse_term(args.term)
        code = encode_term(t, _sig(args, [t]))
    elif args.equation is not None:
        e = parse_equation(args.equation)
        code = encode_equation(e, _sig(args, [e.left, e.right]))
    elif args.formula is not None:
        code = encode_formula(parse_formula(args.formula))
    else:
        code = encode_frame(parse_frame(args.frame))
    out.record = {"code": code}
    out.text(str(code))
    return 0


def cmd_decode(args, out: _Out) -> int:
    sig = textio.parse_signature(args.sig if args.sig is not None else "2")
    if args.kind == "term":
        text = format_term(decode_term(args.code, sig))
    elif args.kind == "equation":
        text = format_equation(decode_equation(args.code, sig))
    elif args.kind == "formula":
        text = format_formula(decode_formula(args.code, True))
    else:
        text = format_frame(decode_frame(args.code))
    out.record = {"kind": args.kind, "code": args.code, "value": text}
    out.text(text)
    return 0


# -- equational logic -----------------------------------------------------------------------

def _budget(args) -> eqlogic.SaturationBudget:
    return eqlogic.SaturationBudget(args.max_term_size, args.max_vars, args.max_iterations)


def cmd_saturate(args, out: _Out) -> int:
    ax = textio.load_axioms(args.axioms, textio.parse_signature(args.sig) if args.sig else None)
    result = eqlogic.saturate(ax, _budget(args))
    rows = sorted((encode_equation(e), e) for e in result.derived)
    out.record = {"exhausted": result.exhausted, "count": len(rows),
                  "equations": [{"code": c, "equation": format_equation(e)} for c, e in rows]}
    out.text(f"derived: {len(rows)}  exhausted: {'yes' if result.exhausted else 'no'}")
    for c, e in rows:
        out.text(f"{c}\t{format_equation(e)}")
    if args.trace:
        out.record["traces"] = {}
        for c, e in rows:
            st = result.traces[e]
            out.text(f"  {format_equation(e)} <- {st.rule}"
                     + "".join(f" [{format_equation(p)}]" for p in st.premises))
            out.record["traces"][str(c)] = st.rule
    return 0


def _trace_lines(trace) -> list[str]:
    out = []
    for e, st in trace:
        extra = ""
        if st.context is not None:
            extra += f" context {format_term(st.context)}"
        if st.subst:
            extra += " subst " + ", ".join(f"x{i}:={format_term(t)}" for i, t in enumerate(st.subst))
        prem = "".join(f" [{format_equation(p)}]" for p in st.premises)
        out.append(f"{format_equation(e)}  by {st.rule}{prem}{extra}")
    return out


def cmd_derive(args, out: _Out) -> int:
    e = parse_equation(args.equation)
    ax = textio.load_axioms(args.axioms, textio.parse_signature(args.sig) if args.sig else None,
                            (e,))
    r = eqlogic.derives(ax, e, _budget(args))
    if isinstance(r, eqlogic.Derived):
        lines = _trace_lines(r.trace)
        out.record = {"verdict": "derived", "trace": lines}
        out.text("derived")
        for line in lines:
            out.text("  " + line)
    else:
        out.record = {"verdict": "unknown", "reason": r.reason}
        out.text(f"unknown ({r.reason})")
    return 0


def cmd_refute(args, out: _Out) -> int:
    e = parse_equation(args.equation)
    ax = textio.load_axioms(args.axioms, textio.parse_signature(args.sig) if args.sig else None,
                            (e,))
    r = eqlogic.refutes(ax, e, args.max_algebra_size)
    if isinstance(r, eqlogic.CounterModel):
        alg = r.algebra
        out.record = {"verdict": "counter-model", "size": alg.size,
                      "tables": [list(t) for t in alg.tables],
                      "assignment": {f"x{k}": v for k, v in sorted(r.assignment.items())}}
        out.text(f"counter-model of size {alg.size}")
        for k, tab in enumerate(alg.tables):
            out.text(f"  f{k}: {' '.join(map(str, tab))}")
        out.text("  assignment: " + ", ".join(f"x{k}={v}" for k, v in sorted(r.assignment.items())))
    else:
        out.record = {"verdict": "unknown", "reason": r.reason}
        out.text(f"unknown ({r.reason})")
    return 0


# -- Kripke semantics -----------------------------------------------------------------------

def cmd_validate(args, out: _Out) -> int:
    text = args.frame.strip()
    fr = decode_frame(int(text), args.tense) if text.isdigit() else parse_frame(text, args.tense)
    f = parse_formula(args.formula)
    ok = kripke.validates(fr, f)
    out.record = {"valid": ok}
    out.text("valid" if ok else "not valid")
    return 0


def _frames_out(out: _Out, frames, label: str) -> None:
    out.record = {"count": len(frames), "frames": [_frame_record(fr) for fr in frames]}
    for fr in frames:
        out.text(f"{encode_frame(fr)}\t{format_frame(fr)}")
    out.text(f"{label}: {len(frames)}")


def cmd_frames(args, out: _Out) -> int:
    frames = list(kripke.enumerate_frames(args.max_size, args.tense))
    _frames_out(out, frames, "frames")
    return 0


def cmd_ffr(args, out: _Out) -> int:
    logic = textio.load_logic(args.logic, args.tense)
    frames = kripke.finite_frames_of(logic, args.max_size, threads=args.threads)
    _frames_out(out, frames, "frames validating the logic")
    return 0


def cmd_fmp_equal(args, out: _Out) -> int:
    left = textio.load_logic(args.left, args.tense)
    right = textio.load_logic(args.right, args.tense)
    v = kripke.fmp_equal_bounded(left, right, args.max_size, threads=args.threads)
    if isinstance(v, kripke.EqualUpTo):
        out.record = {"verdict": "equal-up-to", "max_size": v.max_size}
        out.text(f"equal up to size {v.max_size}")
    else:
        out.record = {"verdict": "distinguished", "validated_by": v.validated_by,
                      "frame": _frame_record(v.frame)}
        out.text(f"distinguished by {format_frame(v.frame)} (code {encode_frame(v.frame)}), "
                 f"validated by {v.validated_by} only")
    return 0


# -- proofs ---------------------------------------------------------------------------------

def _logic_or_empty(path: Optional[str], tense: bool) -> kripke.LogicPresentation:
    return textio.load_logic(path, tense) if path else kripke.LogicPresentation((), tense)


def cmd_check_proof(args, out: _Out) -> int:
    with open(args.proof, encoding="utf-8") as fh:
        proof = textio.parse_proof(fh.read())
    base = _logic_or_empty(args.logic, args.tense)
    extra = encode_formula(parse_formula(args.extra)) if args.extra else None
    goal = encode_formula(parse_formula(args.goal))
    try:
        ok = hilbert.check_proof(base, extra, proof, goal)
        reason = "" if ok else "a step is unjustified or the goal differs"
    except MalformedProof as exc:
        ok, reason = False, f"malformed: {exc}"
    out.record = {"accepted": ok, "steps": len(proof), "reason": reason}
    out.text("accepted" if ok else f"rejected ({reason})")
    return 0 if ok else 1


def cmd_search_proof(args, out: _Out) -> int:
    base = _logic_or_empty(args.logic, args.tense)
    extra = encode_formula(parse_formula(args.extra)) if args.extra else None
    goal = encode_formula(parse_formula(args.goal))
    r = hilbert.search_proof(base, extra, goal, args.proof_bound, args.size_bound)
    if isinstance(r, hilbert.Found):
        text = textio.format_proof(r.proof)
        out.record = {"verdict": "found", "proof": text.splitlines(),
                      "code": hilbert.encode_proof(r.proof)}
        out.text(f"# found ({_steps(len(r.proof))})")
        for line in text.splitlines():
            out.text(line)
    else:
        out.record = {"verdict": "unknown", "reason": r.reason}
        out.text(f"unknown ({r.reason})")
    return 0


def _discharge_text(d: hilbert.Discharge) -> str:
    return d.disjunct + (f" {d.tab_index}" if d.tab_index is not None else "") \
        + f" ({_steps(len(d.proof))})"


def cmd_pretab(args, out: _Out) -> int:
    logic = _logic_or_empty(args.logic, True)
    tabs = hilbert.TabTable.load(args.tabs)
    r = hilbert.pretabular_bounded(logic, tabs, args.code_bound, args.proof_bound, args.size_bound)
    ledger = {str(i): [_discharge_text(d) for d in ds] for i, ds in r.ledger.items()}
    for i, ds in r.ledger.items():
        shown = ", ".join(_discharge_text(d) for d in ds) or "none"
        out.text(f"{i}\t{format_formula(decode_formula(i, True))}\t{shown}")
    if isinstance(r, hilbert.PretabFalsified):
        out.record = {"verdict": "falsified", "code": r.code, "ledger": ledger}
        out.text(f"falsified at code {r.code} (no disjunct witnessed within bounds)")
        return 1 if args.expect_consistent else 0
    out.record = {"verdict": "consistent", "code_bound": r.code_bound, "ledger": ledger}
    out.text(f"consistent up to code {r.code_bound}")
    return 0


# -- arithmetic -----------------------------------------------------------------------------

_PARAMS = {"interval": ("phi0", "phi1", "phi"), "fmp": ("l0", "l", "lp"), "pretab": ("l", "lp")}


def cmd_eval(args, out: _Out) -> int:
    given = {}
    for item in args.param:
        key, sep, path = item.partition("=")
        if not sep:
            raise textio.ParseError(f"--param expects KEY=FILE, got {item!r}")
        given[key] = textio.load_real(path)
    need = _PARAMS[args.formula]
    missing = [k for k in need if k not in given]
    if missing:
        raise textio.ParseError(f"--formula {args.formula} needs --param for {', '.join(missing)}")
    if args.formula == "interval":
        f = arith.build_interval_formula(given["phi0"], given["phi1"],
                                         textio.parse_signature(args.sig or "2"))
        assignment = {"Phi": given["phi"]}
    elif args.formula == "fmp":
        f = arith.build_fmp_formula(given["l0"], given["l"], args.tense)
        assignment = {"Lp": given["lp"]}
    else:
        if not args.tabs:
            raise textio.ParseError("--formula pretab needs --tabs")
        f = arith.build_pretab_formula(given["l"], hilbert.TabTable.load(args.tabs))
        assignment = {"Lp": given["lp"]}
    sort_bounds = {}
    for item in args.sort_bound:
        sort, sep, value = item.partition("=")
        if not sep or not value.isdigit():
            raise textio.ParseError(f"--sort-bound expects SORT=N, got {item!r}")
        sort_bounds[sort] = int(value)
    kind, level = arith.classify(f)
    v = arith.eval_bounded(f, assignment, args.bound, sort_bounds, threads=args.threads)
    rec: dict = {"class": f"{kind}{level}", "bound": args.bound, "caveat": v.caveat}
    out.text(f"class: {kind}^0_{level}")
    if args.dump:
        rec["dump"] = arith.dump(f)
        out.text(arith.dump(f))
    if isinstance(v, arith.Falsified):
        rec.update(verdict="falsified", conjunct=v.conjunct, witness=dict(v.witness),
                   definitive=v.definitive)
        nonzero = {k: x for k, x in v.witness.items() if x} or dict(v.witness)
        shown = ", ".join(f"{k}={x}" for k, x in nonzero.items())
        out.text(f"falsified in conjunct {v.conjunct} at {shown or '(empty prefix)'}"
                 f"{' (definitive)' if v.definitive else ''}")
    elif isinstance(v, arith.WitnessedUpTo):
        rec.update(verdict="witnessed", witness=dict(v.witness))
        out.text(f"witnessed up to {v.bound}")
    else:
        rec.update(verdict="consistent")
        out.text(f"consistent up to {v.bound}")
    if v.caveat:
        out.text("caveat: an approximate parameter answered uncertainly")
    out.record = rec
    return 1 if (args.expect_consistent and isinstance(v, arith.Falsified)) else 0


# -- lattice --------------------------------------------------------------------------------

def cmd_lattice_demo(args, out: _Out) -> int:
    r = lattice.principal_downset_compactness_demo(lattice.FiniteChain(args.n))
    out.record = {"size": r.size, "elements": r.elements, "chain": r.is_chain,
                  "distributive": r.distributive, "covers_checked": r.covers_checked,
                  "all_ok": r.all_ok}
    for line in r.lines():
        out.text(line)
    return 0


# -- parser ---------------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--sig", help='arities of f0, f1, ..., e.g. "2,1"')
    common.add_argument("--tense", action="store_true", help="bimodal (tense) mode")

    p = argparse.ArgumentParser(prog="godelbench",
                                description="Gödel-coded syntax, equational and modal logic, "
                                            "and bounded arithmetical definability checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("encode", parents=[common], help="print the code of an object")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--term")
    g.add_argument("--equation")
    g.add_argument("--formula")
    g.add_argument("--frame", help='JSON record {"size": n, "edges": [[i, j], ...]}')
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", parents=[common], help="decode a code")
    s.add_argument("--kind", choices=("term", "equation", "formula", "frame"), required=True)
    s.add_argument("code", type=_natural)
    s.set_defaults(func=cmd_decode)

    def budget_flags(s):
        s.add_argument("--max-term-size", type=_positive, default=5)
        s.add_argument("--max-vars", type=_positive, default=2)
        s.add_argument("--max-iterations", type=_positive, default=200_000)

    s = sub.add_parser("saturate", parents=[common], help="bounded equational closure")
    s.add_argument("axioms")
    budget_flags(s)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_saturate)

    s = sub.add_parser("derive", parents=[common], help="derive an equation")
    s.add_argument("axioms")
    s.add_argument("--equation", required=True)
    budget_flags(s)
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("refute", parents=[common], help="search a finite counter-model")
    s.add_argument("axioms")
    s.add_argument("--equation", required=True)
    s.add_argument("--max-algebra-size", type=_positive, default=2)
    s.set_defaults(func=cmd_refute)

    s = sub.add_parser("validate", parents=[common], help="frame validity of a formula")
    s.add_argument("--frame", required=True, help="frame code or JSON record")
    s.add_argument("--formula", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("frames", parents=[common], help="frames up to isomorphism")
    s.add_argument("--max-size", type=_positive, required=True)
    s.set_defaults(func=cmd_frames)

    s = sub.add_parser("ffr", parents=[common], help="finite frames of a logic")
    s.add_argument("logic")
    s.add_argument("--max-size", type=_positive, required=True)
    s.set_defaults(func=cmd_ffr)

    s = sub.add_parser("fmp-equal", parents=[common], help="compare finite frames of two logics")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--max-size", type=_positive, required=True)
    s.set_defaults(func=cmd_fmp_equal)

    s = sub.add_parser("check-proof", parents=[common], help="check a proof listing")
    s.add_argument("proof")
    s.add_argument("--logic", help="file of base axioms (default: none)")
    s.add_argument("--extra")
    s.add_argument("--goal", required=True)
    s.set_defaults(func=cmd_check_proof)

    s = sub.add_parser("search-proof", parents=[common], help="bounded proof search")
    s.add_argument("--logic")
    s.add_argument("--extra")
    s.add_argument("--goal", required=True)
    s.add_argument("--proof-bound", type=_positive, default=4)
    s.add_argument("--size-bound", type=_positive, default=5)
    s.set_defaults(func=cmd_search_proof)

    s = sub.add_parser("pretab", parents=[common], help="bounded pretabularity evidence")
    s.add_argument("--logic")
    s.add_argument("--tabs", required=True)
    s.add_argument("--code-bound", type=_natural, required=True)
    s.add_argument("--proof-bound", type=_positive, default=3)
    s.add_argument("--size-bound", type=_positive, default=5)
    s.add_argument("--expect-consistent", action="store_true")
    s.set_defaults(func=cmd_pretab)

    s = sub.add_parser("eval", parents=[common], help="bounded evaluation of a formula")
    s.add_argument("--formula", choices=tuple(_PARAMS), required=True)
    s.add_argument("--bound", type=_natural, required=True)
    s.add_argument("--param", action="append", default=[], metavar="KEY=FILE",
                   help="interval: phi0, phi1, phi; fmp: l0, l, lp; pretab: l, lp")
    s.add_argument("--tabs")
    s.add_argument("--sort-bound", action="append", default=[], metavar="SORT=N")
    s.add_argument("--dump", action="store_true", help="print the prenex form")
    s.add_argument("--expect-consistent", action="store_true")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("lattice-demo", parents=[common], help="downset lattice of a chain")
    s.add_argument("--n", type=_positive, required=True)
    s.set_defaults(func=cmd_lattice_demo)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.format)
    try:
        code = args.func(args, out)
    except (GodelBenchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out.flush()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
