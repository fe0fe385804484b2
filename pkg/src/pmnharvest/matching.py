"""Approximate matching primitives: part multisets and edit distance.

The edit-distance inner loop dominates runtime on full-corpus runs, so it
lives in a compiled extension when available; a pure-Python kernel with
identical behavior is selected at import time otherwise.
"""

from __future__ import annotations

import re
from collections import Counter

try:
    from pmnharvest._editdist import levenshtein as _kernel

    KERNEL = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    from pmnharvest._editdist_py import levenshtein as _kernel

    KERNEL = "python"

# Alphanumeric runs; underscores count as separators like any other
# non-alphanumeric character.
_PART_RE = re.compile(r"[^\W_]+", re.UNICODE)


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance on the case-folded inputs."""
    return _kernel(a.casefold(), b.casefold())


def normalize_part(part: str) -> str:
    """Case-fold a part and strip one trailing "s" from long alphabetic parts.

    The plural strip (alphabetic, length > 3) is what lets e.g.
    "Receptors" and "receptor" count as the same part; digits and short
    tokens are left alone.
    """
    part = part.casefold()
    if len(part) > 3 and part.isalpha() and part.endswith("s"):
        return part[:-1]
    return part


def tokenize_parts(text: str) -> Counter[str]:
    """Multiset of normalized parts, split on non-alphanumeric runs."""
    return Counter(normalize_part(p) for p in _PART_RE.findall(text))
