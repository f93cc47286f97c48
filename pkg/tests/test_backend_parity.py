"""The compiled scanner must be behaviorally identical to the pure one."""

from __future__ import annotations

import random

import pytest

from mutdense import errors, scanner
from mutdense import _scan_py
from conftest import (
    ALPHA_SRC,
    BETA_SRC,
    FACTORIAL_SRC,
    GAMMA_SRC,
    GENERICS_ZOO_SRC,
    INTERFACE_SRC,
    SHAPE_SRC,
)

compiled = pytest.importorskip(
    "mutdense._scan_cy", reason="compiled kernel not built; fallback covers behavior"
)

CORPUS = [
    "",
    " ",
    "\n\n\n",
    FACTORIAL_SRC,
    ALPHA_SRC,
    BETA_SRC,
    GAMMA_SRC,
    SHAPE_SRC,
    GENERICS_ZOO_SRC,
    INTERFACE_SRC,
    'x = """\nblock "quoted"\n""" + \'c\';',
    "a>>>=b >>> c >>= d >> e >= f > g",
    "0x1.8p-3 1e+5 .5 3_000 0b11 'x' '\\n'",
    "weird £ § chars # ` \\ stay single",
    "// only a comment",
    "/* only a block */",
    "int i = 0; /* gap */ i++;",
]


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_corpus_parity(idx):
    src = CORPUS[idx]
    assert compiled.scan(src) == _scan_py.scan(src)


@pytest.mark.parametrize(
    "src",
    [
        'x = "open',
        "'a",
        "/* never",
        's = """\nstill open',
        'trail = "x\\',
    ],
)
def test_error_parity(src):
    with pytest.raises(errors.MutdenseError) as py_err:
        _scan_py.scan(src)
    with pytest.raises(errors.MutdenseError) as cy_err:
        compiled.scan(src)
    assert type(py_err.value) is type(cy_err.value)
    assert (py_err.value.line, py_err.value.column) == (
        cy_err.value.line,
        cy_err.value.column,
    )


def test_fuzz_parity():
    rng = random.Random(2718)
    alphabet = (
        'abcXYZ_$019 \t\n+-*/%<>=!&|^~?:;.,(){}[]@"\'\\é世#'
    )
    for _ in range(300):
        soup = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 120)))
        try:
            expected = _scan_py.scan(soup)
        except errors.MutdenseError as exc:
            with pytest.raises(type(exc)) as cy_err:
                compiled.scan(soup)
            assert (cy_err.value.line, cy_err.value.column) == (exc.line, exc.column)
            continue
        assert compiled.scan(soup) == expected


def test_selected_backend_reports_itself(monkeypatch):
    assert scanner.BACKEND in ("compiled", "python")
    # the override variable forces the fallback at import time
    import importlib
    import os

    monkeypatch.setitem(os.environ, "MUTDENSE_PURE_PYTHON", "1")
    fresh = importlib.reload(scanner)
    try:
        assert fresh.BACKEND == "python"
        assert fresh.scan is _scan_py.scan
    finally:
        monkeypatch.delitem(os.environ, "MUTDENSE_PURE_PYTHON")
        importlib.reload(scanner)
