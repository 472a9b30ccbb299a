"""Golden CLI invocations. Paths are relative to the tests directory.

Regenerate the golden files with ``python tests/cli_cases.py`` after an intended change.
"""

from __future__ import annotations

import contextlib
import io
import os
from pathlib import Path

from godelbench.cli import main

HERE = Path(__file__).resolve().parent
GOLDEN = HERE / "golden"

CASES: dict[str, list[str]] = {
    "encode_term": ["encode", "--term", "f0(x0)"],
    "encode_equation": ["encode", "--equation", "x0*x1 = x1*x0"],
    "encode_formula": ["encode", "--formula", "box0 p0 -> p0"],
    "decode_formula": ["decode", "--kind", "formula", "1766"],
    "decode_equation": ["decode", "--kind", "equation", "65069", "--sig", "2"],
    "saturate_comm": ["saturate", "data/comm.eq", "--max-term-size", "3", "--max-vars", "2"],
    "saturate_comm_json": ["saturate", "data/comm.eq", "--max-term-size", "3", "--max-vars", "2",
                           "--format", "json"],
    "derive_assoc": ["derive", "data/assoc.eq", "--equation",
                     "x0*(x1*(x2*x0)) = ((x0*x1)*x2)*x0", "--max-term-size", "7"],
    "refute_assoc_comm": ["refute", "data/assoc.eq", "--equation", "x0*x1 = x1*x0",
                          "--max-algebra-size", "2"],
    "validate_code": ["validate", "--frame", "2", "--formula", "box0 p0 -> p0"],
    "validate_record": ["validate", "--frame", '{"size": 1, "edges": []}', "--formula",
                        "box0 p0 -> p0"],
    "frames_3": ["frames", "--max-size", "3"],
    "ffr_t": ["ffr", "data/t.lg", "--max-size", "3"],
    "ffr_four_json": ["ffr", "data/four.lg", "--max-size", "2", "--format", "json"],
    "fmp_k_t": ["fmp-equal", "data/k.lg", "data/t.lg", "--max-size", "1"],
    "fmp_t_t": ["fmp-equal", "data/t.lg", "data/t.lg", "--max-size", "3"],
    "check_proof": ["check-proof", "data/nec.prf", "--goal", "box0 (p0 -> p0)"],
    "search_proof": ["search-proof", "--goal", "box0 (p0 -> p0)", "--proof-bound", "3"],
    "pretab_kt": ["pretab", "--logic", "data/t.lg", "--tabs", "data/tabs.txt",
                  "--code-bound", "9", "--proof-bound", "3"],
    "eval_interval_empty": ["eval", "--formula", "interval", "--bound", "6",
                            "--param", "phi=data/empty.json", "--param", "phi0=data/empty.json",
                            "--param", "phi1=data/empty.json"],
    "eval_fmp_json": ["eval", "--formula", "fmp", "--bound", "1", "--format", "json",
                      "--param", "l0=data/k_logic.json", "--param", "l=data/k_logic.json",
                      "--param", "lp=data/t_logic.json"],
    "lattice_demo": ["lattice-demo", "--n", "4"],
}


def run(argv: list[str], threads: int | None = None) -> tuple[int, str]:
    """Run the CLI in-process from the tests directory; return (exit code, stdout)."""
    if threads is not None:
        argv = [*argv, "--threads", str(threads)]
    buf = io.StringIO()
    old = os.getcwd()
    os.chdir(HERE)
    try:
        with contextlib.redirect_stdout(buf):
            code = main(argv)
    finally:
        os.chdir(old)
    return code, buf.getvalue()


def golden_text(name: str) -> str:
    return (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def regenerate() -> None:
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, text = run(argv, threads=1)
        assert code == 0, name
        (GOLDEN / f"{name}.txt").write_text(text, encoding="utf-8")


if __name__ == "__main__":
    regenerate()
