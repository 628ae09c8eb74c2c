"""Horizontal chord words on braid strands and truncated series over them.

A word is a height-ordered tuple of strand pairs (lowest chord first); the
stacking product concatenates words, left factor on top.  Series are finite
complex combinations truncated above a fixed degree, with an ultrametric
measuring the first degree at which two series differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

ZERO_THRESHOLD = 1e-12


@dataclass(frozen=True, order=True)
class ChordPair:
    """Unordered chord between two distinct strands, normalized to i < j."""

    i: int
    j: int

    def __post_init__(self):
        i, j = self.i, self.j
        if i > j:
            object.__setattr__(self, "i", j)
            object.__setattr__(self, "j", i)
        if self.i < 1 or self.i == self.j:
            raise ValueError(f"invalid chord pair ({i}, {j})")

    def as_tuple(self):
        return (self.i, self.j)


def _as_pair(value):
    if isinstance(value, ChordPair):
        return value
    return ChordPair(*value)


@dataclass(frozen=True)
class HorizontalWord:
    """Chords on n_strands vertical strands, ordered bottom to top."""

    n_strands: int
    chords: tuple

    def __post_init__(self):
        if self.n_strands < 2:
            raise ValueError("need at least 2 strands")
        chords = tuple(_as_pair(c) for c in self.chords)
        for c in chords:
            if c.j > self.n_strands:
                raise ValueError(f"chord {c.as_tuple()} exceeds {self.n_strands} strands")
        object.__setattr__(self, "chords", chords)

    @property
    def degree(self):
        return len(self.chords)

    def sort_key(self):
        """Graded order, then lexicographic on the chord tuples."""
        return (len(self.chords), tuple(c.as_tuple() for c in self.chords))

    def __repr__(self):
        body = "".join(f"({c.i},{c.j})" for c in self.chords) or "1"
        return f"<{body} on {self.n_strands}>"


def ess_product(a: HorizontalWord, b: HorizontalWord) -> HorizontalWord:
    """Stack a's chords above b's; the empty word is the identity."""
    if a.n_strands != b.n_strands:
        raise ValueError("strand-count mismatch")
    return HorizontalWord(a.n_strands, b.chords + a.chords)


def enumerate_words(n_strands: int, degree: int):
    """All degree-m words on N strands in graded-lexicographic order.

    There are (N(N-1)/2)**m of them.
    """
    if n_strands < 2 or degree < 0:
        raise ValueError("need n_strands >= 2 and degree >= 0")
    pairs = all_pairs(n_strands)
    return tuple(HorizontalWord(n_strands, combo) for combo in product(pairs, repeat=degree))


def all_pairs(n_strands: int):
    return tuple(
        ChordPair(i, j) for i in range(1, n_strands) for j in range(i + 1, n_strands + 1)
    )


class HorizontalSeries:
    """Complex combination of words, truncated above max_degree.

    Coefficients with modulus below zero_threshold are not stored.  Instances
    are immutable in use: every operation returns a new series.
    """

    def __init__(self, n_strands, max_degree, terms=None, zero_threshold=ZERO_THRESHOLD):
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        self.n_strands = n_strands
        self.max_degree = max_degree
        self.zero_threshold = zero_threshold
        acc = {}
        for word, coeff in (terms or {}).items():
            if not isinstance(word, HorizontalWord):
                word = HorizontalWord(n_strands, tuple(word))
            if word.n_strands != n_strands:
                raise ValueError("strand-count mismatch")
            if word.degree > max_degree:
                continue
            acc[word] = acc.get(word, 0j) + complex(coeff)
        self._terms = {w: c for w, c in acc.items() if abs(c) >= zero_threshold}

    @classmethod
    def identity(cls, n_strands, max_degree, zero_threshold=ZERO_THRESHOLD):
        one = HorizontalWord(n_strands, ())
        return cls(n_strands, max_degree, {one: 1.0}, zero_threshold)

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, word):
        if not isinstance(word, HorizontalWord):
            word = HorizontalWord(self.n_strands, tuple(word))
        return self._terms.get(word, 0j)

    def _check_compatible(self, other):
        if self.n_strands != other.n_strands or self.max_degree != other.max_degree:
            raise ValueError("series mismatch (strands or truncation degree)")

    def __add__(self, other):
        self._check_compatible(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0j) + c
        return HorizontalSeries(self.n_strands, self.max_degree, acc, self.zero_threshold)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        return HorizontalSeries(
            self.n_strands,
            self.max_degree,
            {w: scalar * c for w, c in self._terms.items()},
            self.zero_threshold,
        )

    __rmul__ = __mul__

    def sup_diff(self, other):
        """Max coefficient modulus of self - other over all words."""
        self._check_compatible(other)
        keys = set(self._terms) | set(other._terms)
        return max(
            (abs(self._terms.get(w, 0j) - other._terms.get(w, 0j)) for w in keys),
            default=0.0,
        )

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def __repr__(self):
        return f"HorizontalSeries(n={self.n_strands}, M={self.max_degree}, {len(self._terms)} terms)"


def series_product(a: HorizontalSeries, b: HorizontalSeries) -> HorizontalSeries:
    """Bilinear extension of the stacking product, truncated above max_degree."""
    a._check_compatible(b)
    acc = {}
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            if wa.degree + wb.degree > a.max_degree:
                continue
            word = HorizontalWord(a.n_strands, wb.chords + wa.chords)
            acc[word] = acc.get(word, 0j) + ca * cb
    return HorizontalSeries(a.n_strands, a.max_degree, acc, a.zero_threshold)


def series_distance(a: HorizontalSeries, b: HorizontalSeries) -> float:
    """2**(-k) with k the lowest degree holding a differing coefficient.

    Differences below the zero threshold of either series do not count; the
    distance is 0.0 when the series agree through their truncation degrees.
    """
    if a.n_strands != b.n_strands:
        raise ValueError("strand-count mismatch")
    tol = max(a.zero_threshold, b.zero_threshold)
    top = max(a.max_degree, b.max_degree)
    by_degree = {}
    for src_sign, series in ((1.0, a), (-1.0, b)):
        for w, c in series._terms.items():
            key = (w.degree, w)
            by_degree[key] = by_degree.get(key, 0j) + src_sign * c
    diffs = sorted(deg for (deg, _w), c in by_degree.items() if abs(c) > tol)
    if not diffs:
        return 0.0
    k = diffs[0]
    if k > top:
        return 0.0
    return 2.0 ** (-k)


def relabel_strands(series: HorizontalSeries, mapping) -> HorizontalSeries:
    """Rename the strand labels of every chord; mapping is callable or dict.

    Stacking one braid's transport on top of another's requires reading the
    upper factor's labels through the lower braid's permutation, since a
    strand keeps its bottom label across the whole composed loop.
    """
    rename = mapping if callable(mapping) else mapping.__getitem__
    out = {}
    for word, coeff in series._terms.items():
        chords = tuple((rename(c.i), rename(c.j)) for c in word.chords)
        new_word = HorizontalWord(series.n_strands, chords)
        out[new_word] = out.get(new_word, 0j) + coeff
    return HorizontalSeries(series.n_strands, series.max_degree, out, series.zero_threshold)


def series_to_json_dict(series: HorizontalSeries) -> dict:
    terms = [
        {"word": [list(c.as_tuple()) for c in w.chords], "re": c.real, "im": c.imag}
        for w, c in series.sorted_terms()
    ]
    return {"n_strands": series.n_strands, "max_degree": series.max_degree, "terms": terms}


def series_from_json_dict(data: dict, zero_threshold=ZERO_THRESHOLD) -> HorizontalSeries:
    terms = {}
    for entry in data["terms"]:
        word = HorizontalWord(data["n_strands"], tuple(tuple(p) for p in entry["word"]))
        terms[word] = complex(entry["re"], entry["im"])
    return HorizontalSeries(data["n_strands"], data["max_degree"], terms, zero_threshold)
