"""Scanner backend selection.

Prefers the compiled kernel when it was built; otherwise (or when
``MUTDENSE_PURE_PYTHON`` is set) falls back to the pure-Python kernel.
Both expose the same ``scan(text)`` contract.
"""

from __future__ import annotations

import os

from mutdense._scan_py import scan as scan_python

try:
    from mutdense._scan_cy import scan as scan_compiled  # type: ignore[import-not-found]
except ImportError:
    scan_compiled = None

if scan_compiled is not None and not os.environ.get("MUTDENSE_PURE_PYTHON"):
    scan = scan_compiled
    BACKEND = "compiled"
else:
    scan = scan_python
    BACKEND = "python"
