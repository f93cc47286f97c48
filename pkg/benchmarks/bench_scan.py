#!/usr/bin/env python3
"""Compare the compiled scanner kernel against the pure-Python one.

Synthesizes a large Java-flavored source file, checks that both backends
produce identical token streams on it, then times each and prints
characters per second and the speedup.  Runs fine when the compiled
kernel is unavailable; it then times only the pure-Python backend.

Usage: python3 benchmarks/bench_scan.py [--megabytes N] [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from mutdense._scan_py import scan as scan_python

try:
    from mutdense._scan_cy import scan as scan_compiled
except ImportError:
    scan_compiled = None

# one block mixes the constructs the scanner spends time on: comments,
# generics, strings with escapes, compound assignments, shifts
_TEMPLATE = """\
class Block@N@ {
    // running total for batch @N@
    private Map<String, List<Integer>> cache@N@ = null;
    int step@N@(int a, int b) {
        int c = a * b + @N@;
        c <<= 2;
        c += a % 7 - b / 3;
        if (a <= b && c != 0) {
            c++;
        }
        return c;
    }
    String tag@N@() {
        /* label built from "@N@" */
        return new String("block #@N@\\n");
    }
}
"""


def synthesize(target_chars: int) -> str:
    parts: list[str] = []
    size = 0
    block = 0
    while size < target_chars:
        chunk = _TEMPLATE.replace("@N@", str(block))
        parts.append(chunk)
        size += len(chunk)
        block += 1
    return "".join(parts)


def time_backend(scan, text: str, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        scan(text)
        best = min(best, time.perf_counter() - started)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--megabytes", type=float, default=1.0,
                        help="approximate input size (default 1.0)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions, best-of (default 5)")
    args = parser.parse_args()

    text = synthesize(int(args.megabytes * 1024 * 1024))
    print(f"input: {len(text):,} chars, {text.count(chr(10)):,} lines")

    tokens = scan_python(text)
    print(f"tokens: {len(tokens):,}")

    py_best = time_backend(scan_python, text, args.repeat)
    print(f"python   backend: {py_best:8.4f} s  "
          f"({len(text) / py_best / 1e6:6.1f} Mchars/s)")

    if scan_compiled is None:
        print("compiled backend: not built (pip install -e . builds it "
              "when Cython and a C compiler are present)")
        return 0

    if scan_compiled(text) != tokens:
        print("compiled backend: TOKEN STREAM MISMATCH, refusing to time")
        return 1

    cy_best = time_backend(scan_compiled, text, args.repeat)
    print(f"compiled backend: {cy_best:8.4f} s  "
          f"({len(text) / cy_best / 1e6:6.1f} Mchars/s)")
    print(f"speedup: {py_best / cy_best:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
