"""Parser for the Public MeSH Note (PMN) field.

A PMN is a string of semicolon-separated sentences. The sentences of
interest read "X was indexed under Y PERIOD [, Y PERIOD ...]". The field
is written for humans and full of irregularities (empty X, missing hosts,
typos), so the parser never fails: every tolerated irregularity is
reported as a warning code instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

# The keyword is matched case-insensitively with one-or-more whitespace
# between words; the same predicate backs matches_indexed_pattern so the
# two stay coherent on every input.
KEYWORD_RE = re.compile(r"was\s+indexed\s+under", re.IGNORECASE)

# A year token is YYYY or YYYY-YYYY; a dash hanging off either side
# ("1987-", "-1987") disqualifies the token rather than inventing a range.
YEAR_TOKEN_RE = re.compile(r"(?<![\d-])(\d{4})(?:-(\d{4}))?(?![\d-])")

PERIOD_YEAR_MIN = 1900
PERIOD_YEAR_MAX = 2100


class ParseWarning(str, Enum):
    EMPTY_X = "EmptyX"
    MISSING_HOSTS = "MissingHosts"
    EMPTY_HOST_NAME = "EmptyHostName"
    NO_INTRO_YEAR = "NoIntroYear"
    UNPARSED_SENTENCE = "UnparsedSentence"


@dataclass(frozen=True)
class YearRange:
    start: int
    end: int | None = None


@dataclass(frozen=True)
class HostMention:
    name: str
    period: YearRange | None = None


@dataclass(frozen=True)
class IndexedClause:
    x_text: str
    hosts: tuple[HostMention, ...]


@dataclass(frozen=True)
class PmnParse:
    intro_year: int | None
    clauses: tuple[IndexedClause, ...]
    warnings: tuple[ParseWarning, ...]


def matches_indexed_pattern(pmn: str | None) -> bool:
    """True iff the "was indexed under" keyword occurs anywhere in the PMN.

    Only a substring check, no structural validation; absent PMN is False.
    """
    return bool(pmn) and KEYWORD_RE.search(pmn) is not None


def split_sentences(pmn: str) -> list[str]:
    """Split on ";", trim each piece, drop empties."""
    return [piece.strip() for piece in pmn.split(";") if piece.strip()]


def _strip_separators(text: str) -> str:
    """Remove leading list separators ("," and "and") and trailing commas."""
    text = text.strip()
    while True:
        if text.startswith(","):
            text = text[1:].lstrip()
            continue
        m = re.match(r"and\s+", text, re.IGNORECASE)
        if m:
            text = text[m.end():]
            continue
        break
    return text.rstrip(",").rstrip()


def _valid_period(start: int, end: int | None) -> bool:
    if not PERIOD_YEAR_MIN <= start <= PERIOD_YEAR_MAX:
        return False
    if end is not None and not (PERIOD_YEAR_MIN <= end <= PERIOD_YEAR_MAX and start <= end):
        return False
    return True


def _parse_hosts(remainder: str) -> tuple[tuple[HostMention, ...], list[ParseWarning]]:
    text = remainder.strip()
    if not text:
        return (), [ParseWarning.MISSING_HOSTS]

    hosts: list[HostMention] = []
    warnings: list[ParseWarning] = []
    pos = 0
    for m in YEAR_TOKEN_RE.finditer(text):
        start = int(m.group(1))
        end = int(m.group(2)) if m.group(2) else None
        if not _valid_period(start, end):
            # Implausible years stay inside the surrounding name text.
            continue
        name = _strip_separators(text[pos:m.start()])
        if not name:
            warnings.append(ParseWarning.EMPTY_HOST_NAME)
        hosts.append(HostMention(name=name, period=YearRange(start, end)))
        pos = m.end()
    trailing = _strip_separators(text[pos:])
    if trailing:
        hosts.append(HostMention(name=trailing, period=None))
    if not hosts:
        # Year-less, name-less leftovers (e.g. bare punctuation).
        warnings.append(ParseWarning.MISSING_HOSTS)
    return tuple(hosts), warnings


def parse_pmn(pmn: str | None) -> PmnParse:
    """Parse one PMN string into structured indexed-under clauses.

    Never raises; all irregularities surface as warning codes. Sentences
    without the keyword are ignored. Host names may contain commas, so
    host segmentation is driven by year tokens, not by commas.
    """
    warnings: list[ParseWarning] = []
    clauses: list[IndexedClause] = []
    sentences = split_sentences(pmn or "")

    intro_year: int | None = None
    if sentences and re.fullmatch(r"\d{4}", sentences[0]):
        intro_year = int(sentences[0])
    else:
        warnings.append(ParseWarning.NO_INTRO_YEAR)

    for sentence in sentences:
        m = KEYWORD_RE.search(sentence)
        if m is None:
            continue
        x_text = sentence[: m.start()].strip()
        remainder = sentence[m.end():]
        if KEYWORD_RE.search(remainder):
            # The grammar has no nested clauses; parse at the first
            # keyword and flag the leftover occurrence.
            warnings.append(ParseWarning.UNPARSED_SENTENCE)
        if not x_text:
            warnings.append(ParseWarning.EMPTY_X)
        hosts, host_warnings = _parse_hosts(remainder)
        warnings.extend(host_warnings)
        clauses.append(IndexedClause(x_text=x_text, hosts=hosts))

    return PmnParse(intro_year=intro_year, clauses=tuple(clauses), warnings=tuple(warnings))
