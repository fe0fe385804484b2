"""Pure-Python edit-distance kernel, used when the compiled one is absent."""

from __future__ import annotations


def levenshtein(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute distance; inputs are used as-is."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        append = current.append
        for j, cb in enumerate(b, 1):
            append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]
