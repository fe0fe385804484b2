from __future__ import annotations

from collections import Counter
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from pmnharvest import matching
from pmnharvest._editdist_py import levenshtein as python_kernel
from pmnharvest.matching import levenshtein, normalize_part, tokenize_parts


def naive_levenshtein(a: str, b: str) -> int:
    """Independent oracle: plain exponential recursion."""

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        if a[i] == b[j]:
            return rec(i + 1, j + 1)
        return 1 + min(rec(i + 1, j), rec(i, j + 1), rec(i + 1, j + 1))

    return rec(0, 0)


class TestNormalizePart:
    def test_plural_strip(self):
        assert normalize_part("Receptors") == "receptor"

    def test_digits_untouched(self):
        assert normalize_part("3") == "3"

    def test_short_words_untouched(self):
        assert normalize_part("has") == "has"

    def test_mixed_alnum_untouched(self):
        assert normalize_part("ATXN3s") == "atxn3s"


class TestTokenizeParts:
    def test_ataxin(self):
        assert tokenize_parts("Ataxin-3") == Counter({"ataxin": 1, "3": 1})

    def test_atxn3_protein_human(self):
        assert tokenize_parts("ATXN3 protein, human") == Counter(
            {"atxn3": 1, "protein": 1, "human": 1}
        )

    def test_empty(self):
        assert tokenize_parts("") == Counter()

    def test_adrenomedullin_equality(self):
        assert tokenize_parts("Receptors, Adrenomedullin") == tokenize_parts(
            "adrenomedullin receptor"
        )


class TestLevenshtein:
    def test_cryptochrome(self):
        assert levenshtein("cryptochromes", "cryptochrome") == 1

    def test_identity(self):
        assert levenshtein("abc", "abc") == 0
        assert levenshtein("", "") == 0

    def test_against_empty(self):
        assert levenshtein("", "abc") == 3
        assert levenshtein("abc", "") == 3

    def test_case_folded(self):
        assert levenshtein("Cryptochromes", "CRYPTOCHROME") == 1

    def test_kernels_agree_with_oracle(self):
        pairs = [("abc", "abd"), ("kitten", "sitting"), ("", "x"), ("aaaa", "aa")]
        for a, b in pairs:
            expected = naive_levenshtein(a, b)
            assert python_kernel(a, b) == expected
            assert matching._kernel(a, b) == expected


@given(st.text(max_size=8, alphabet="abcd"), st.text(max_size=8, alphabet="abcd"))
def test_matches_naive_oracle(a, b):
    assert levenshtein(a, b) == naive_levenshtein(a, b)


@given(
    st.text(max_size=12, alphabet="abcxyz"),
    st.text(max_size=12, alphabet="abcxyz"),
    st.text(max_size=12, alphabet="abcxyz"),
)
def test_metric_properties(a, b, c):
    assert levenshtein(a, b) == levenshtein(b, a)
    assert (levenshtein(a, b) == 0) == (a == b)
    assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


@given(st.text(max_size=30))
def test_tokenize_parts_normalized(text):
    parts = tokenize_parts(text)
    for part, count in parts.items():
        assert count >= 1
        assert part == part.casefold()
        assert not any(ch for ch in part if not ch.isalnum())
