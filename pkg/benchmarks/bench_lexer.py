#!/usr/bin/env python3
"""Benchmark the scanner kernels: compiled extension vs pure Python.

The scanner runs once per byte of every analyzed file, so it dominates
phase-1 CPU time.  This script tokenizes the bundled mini-corpus repeated
to a configurable size and reports throughput for each available kernel.

Usage:
    python3 benchmarks/bench_lexer.py [--mib 4] [--repeats 5]
"""

import argparse
import time
from pathlib import Path

from gitrank.lexer import available_scanners

CORPUS = Path(__file__).resolve().parent.parent / "tests" / "corpus"


def build_input(target_mib: float) -> str:
    sources = [p.read_text() for p in sorted(CORPUS.glob("*.c"))]
    sources += [p.read_text() for p in sorted(CORPUS.glob("*.cpp"))]
    blob = "\n".join(sources)
    copies = max(1, int(target_mib * 1024 * 1024 / len(blob.encode())))
    return blob * copies


def bench(scan, text: str, repeats: int) -> tuple[float, int]:
    best = float("inf")
    tokens = 0
    for _ in range(repeats):
        started = time.perf_counter()
        result = scan(text)
        elapsed = time.perf_counter() - started
        best = min(best, elapsed)
        tokens = len(result)
    return best, tokens


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mib", type=float, default=4.0, help="input size to scan")
    parser.add_argument("--repeats", type=int, default=5, help="best-of repetitions")
    args = parser.parse_args()

    text = build_input(args.mib)
    size_mib = len(text.encode()) / (1024 * 1024)
    print(f"input: {size_mib:.1f} MiB of C/C++ source, best of {args.repeats}")

    lanes = available_scanners()
    times = {}
    token_counts = set()
    for name, scan in lanes:
        elapsed, tokens = bench(scan, text, args.repeats)
        times[name] = elapsed
        token_counts.add(tokens)
        print(f"{name:>9}: {elapsed:8.3f} s   {size_mib / elapsed:8.1f} MiB/s   {tokens} tokens")
    assert len(token_counts) == 1, "kernels disagree on token count"

    if "compiled" in times and "python" in times:
        print(f" speedup: {times['python'] / times['compiled']:.1f}x (compiled over pure Python)")
    elif "compiled" not in times:
        print("compiled kernel not available; showing pure Python only")


if __name__ == "__main__":
    main()
