"""Chord diagrams on disjoint oriented circles.

Endpoint slots on each circle are taken up to cyclic rotation (orientation
preserving only, no reflections); diagrams are stored in a canonical form so
structural equality is diagram equality.  Circles are numbered, so they are
never permuted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .words import ZERO_THRESHOLD


@dataclass(frozen=True)
class CircleSkeleton:
    """Numbered circles with a fixed count of endpoint slots on each."""

    slots: tuple

    def __post_init__(self):
        slots = tuple(int(s) for s in self.slots)
        if not slots or any(s < 0 for s in slots):
            raise ValueError("slot counts must be non-negative, one per circle")
        object.__setattr__(self, "slots", slots)

    @property
    def n_circles(self):
        return len(self.slots)


@dataclass(frozen=True)
class CircleDiagram:
    """Perfect matching on the endpoint slots of a CircleSkeleton.

    chords is a tuple of ((circle, slot), (circle, slot)) pairs.  The stored
    representative is minimal under independent rotations of each circle.
    """

    slots: tuple
    chords: tuple

    def __post_init__(self):
        slots = tuple(int(s) for s in self.slots)
        chords = tuple(
            tuple(sorted(((int(c1), int(s1)), (int(c2), int(s2)))))
            for (c1, s1), (c2, s2) in self.chords
        )
        seen = set()
        for foot in [f for ch in chords for f in ch]:
            c, s = foot
            if not (0 <= c < len(slots)) or not (0 <= s < slots[c]):
                raise ValueError(f"endpoint {foot} outside the skeleton")
            if foot in seen:
                raise ValueError(f"endpoint {foot} used twice")
            seen.add(foot)
        if len(seen) != sum(slots):
            raise ValueError("chords must cover every slot exactly once")
        slots, chords = _canonical(slots, chords)
        object.__setattr__(self, "slots", slots)
        object.__setattr__(self, "chords", chords)

    @classmethod
    def from_layout(cls, layout):
        """Build from per-circle lists of chord labels, each label twice."""
        positions = {}
        for c, circle in enumerate(layout):
            for s, label in enumerate(circle):
                positions.setdefault(label, []).append((c, s))
        chords = []
        for label, feet in positions.items():
            if len(feet) != 2:
                raise ValueError(f"label {label!r} appears {len(feet)} times")
            chords.append(tuple(feet))
        return cls(tuple(len(circle) for circle in layout), tuple(chords))

    @property
    def degree(self):
        return len(self.chords)

    @property
    def n_circles(self):
        return len(self.slots)

    @property
    def skeleton(self):
        return CircleSkeleton(self.slots)

    def sort_key(self):
        return (self.degree, self.slots, self.chords)

    def to_layout(self):
        """Per-circle slot lists holding the index of the owning chord."""
        layout = [[None] * n for n in self.slots]
        for idx, ((c1, s1), (c2, s2)) in enumerate(self.chords):
            layout[c1][s1] = idx
            layout[c2][s2] = idx
        return layout

    def has_isolated_chord(self):
        """True when some chord's feet are cyclically adjacent on one circle."""
        for (c1, s1), (c2, s2) in self.chords:
            if c1 != c2:
                continue
            n = self.slots[c1]
            if (s1 + 1) % n == s2 or (s2 + 1) % n == s1:
                return True
        return False

    def __repr__(self):
        return f"<circles {self.slots} chords {self.chords}>"


def _canonical(slots, chords):
    """Minimal chord tuple over independent rotations of every circle."""
    best = None
    ranges = [range(n) if n else range(1) for n in slots]
    for shifts in product(*ranges):
        rotated = tuple(
            sorted(
                tuple(
                    sorted(((c, (s - shifts[c]) % slots[c]) for c, s in chord))
                )
                for chord in chords
            )
        )
        if best is None or rotated < best:
            best = rotated
    return slots, tuple(tuple(ch) for ch in (best or ()))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _matchings(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, second in enumerate(rest):
        for sub in _matchings(rest[:k] + rest[k + 1:]):
            yield ((first, second),) + sub


@lru_cache(maxsize=None)
def enumerate_circle_diagrams(n_circles: int, degree: int):
    """All degree-m diagrams on q numbered circles, canonical and sorted."""
    if n_circles < 1 or degree < 0:
        raise ValueError("need n_circles >= 1 and degree >= 0")
    found = set()
    for slots in _compositions(2 * degree, n_circles):
        feet = []
        for c, n in enumerate(slots):
            feet.extend((c, s) for s in range(n))
        for matching in _matchings(tuple(feet)):
            found.add(CircleDiagram(slots, matching))
    return tuple(sorted(found, key=CircleDiagram.sort_key))


class CircleSeries:
    """Complex combination of circle diagrams, truncated above max_degree."""

    def __init__(self, n_circles, max_degree, terms=None, zero_threshold=ZERO_THRESHOLD):
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        self.n_circles = n_circles
        self.max_degree = max_degree
        self.zero_threshold = zero_threshold
        acc = {}
        for diagram, coeff in (terms or {}).items():
            if diagram.n_circles != n_circles:
                raise ValueError("circle-count mismatch")
            if diagram.degree > max_degree:
                continue
            acc[diagram] = acc.get(diagram, 0j) + complex(coeff)
        self._terms = {d: c for d, c in acc.items() if abs(c) >= zero_threshold}

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, diagram):
        return self._terms.get(diagram, 0j)

    def __add__(self, other):
        if self.n_circles != other.n_circles or self.max_degree != other.max_degree:
            raise ValueError("series mismatch")
        acc = dict(self._terms)
        for d, c in other._terms.items():
            acc[d] = acc.get(d, 0j) + c
        return CircleSeries(self.n_circles, self.max_degree, acc, self.zero_threshold)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        return CircleSeries(
            self.n_circles,
            self.max_degree,
            {d: scalar * c for d, c in self._terms.items()},
            self.zero_threshold,
        )

    __rmul__ = __mul__

    def sup_diff(self, other):
        keys = set(self._terms) | set(other._terms)
        return max(
            (abs(self._terms.get(d, 0j) - other._terms.get(d, 0j)) for d in keys),
            default=0.0,
        )

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def __repr__(self):
        return f"CircleSeries(q={self.n_circles}, M={self.max_degree}, {len(self._terms)} terms)"


def circle_series_to_json_dict(series: CircleSeries) -> dict:
    terms = []
    for diagram, coeff in series.sorted_terms():
        terms.append(
            {
                "slots": list(diagram.slots),
                "word": [[list(f1), list(f2)] for f1, f2 in diagram.chords],
                "re": coeff.real,
                "im": coeff.imag,
            }
        )
    return {
        "circles": series.n_circles,
        "max_degree": series.max_degree,
        "terms": terms,
    }


def circle_series_from_json_dict(data: dict, zero_threshold=ZERO_THRESHOLD) -> CircleSeries:
    terms = {}
    for entry in data["terms"]:
        diagram = CircleDiagram(
            tuple(entry["slots"]),
            tuple((tuple(f1), tuple(f2)) for f1, f2 in entry["word"]),
        )
        terms[diagram] = complex(entry["re"], entry["im"])
    return CircleSeries(data["circles"], data["max_degree"], terms, zero_threshold)
