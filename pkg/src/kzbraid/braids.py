"""Artin braid words and their realization as loops of plane configurations.

A word realizes as a piecewise-analytic loop in the space of N distinct
points: strand k starts at k-1 on the real axis, each letter swaps the two
points at adjacent positions along half circles of radius 1/2, everything
else stands still.  The swapping pair keeps constant unit distance and no
other point comes closer than about 1/2, so the loop stays clear of the
diagonal.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BraidWord:
    """Signed generator letters (k, sign) on n_strands strands."""

    n_strands: int
    letters: tuple

    def __post_init__(self):
        if self.n_strands < 2:
            raise ValueError("need at least 2 strands")
        letters = tuple((int(k), int(sign)) for k, sign in self.letters)
        for k, sign in letters:
            if not 1 <= k <= self.n_strands - 1:
                raise ValueError(f"generator index {k} out of range")
            if sign not in (-1, 1):
                raise ValueError(f"sign must be +1 or -1, got {sign}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        body = " ".join(str(k * sign) for k, sign in self.letters) or "e"
        return f"BraidWord({self.n_strands}; {body})"


class BraidParseError(ValueError):
    pass


def parse_braid_word(text: str, n_strands: int) -> BraidWord:
    """Whitespace-separated signed integers; k means the k-th generator."""
    letters = []
    for token in text.split():
        try:
            value = int(token)
        except ValueError:
            raise BraidParseError(f"non-integer token {token!r}") from None
        if value == 0:
            raise BraidParseError("zero token is not a generator")
        if abs(value) > n_strands - 1:
            raise BraidParseError(
                f"generator index out of range: {token!r} on {n_strands} strands"
            )
        letters.append((abs(value), 1 if value > 0 else -1))
    return BraidWord(n_strands, tuple(letters))


@dataclass(frozen=True)
class Permutation:
    """Images of 1..N, images[k-1] = pi(k)."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a bijection on 1..N")
        object.__setattr__(self, "images", images)

    def __call__(self, k):
        return self.images[k - 1]

    def inverse(self):
        images = [0] * len(self.images)
        for k, v in enumerate(self.images, start=1):
            images[v - 1] = k
        return Permutation(tuple(images))

    def cycles(self):
        """Cycles sorted by smallest element, each starting at it."""
        seen = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cycle))
        return tuple(out)


def permutation_of(word: BraidWord) -> Permutation:
    """Strand -> final position, composing the adjacent transpositions."""
    strand_at = list(range(1, word.n_strands + 1))  # position -> strand, 1-based
    for k, _sign in word.letters:
        strand_at[k - 1], strand_at[k] = strand_at[k], strand_at[k - 1]
    images = [0] * word.n_strands
    for position, strand in enumerate(strand_at, start=1):
        images[strand - 1] = position
    return Permutation(tuple(images))


@dataclass(frozen=True)
class _Arc:
    """One analytic time segment; local parameter s runs over [0, 1]."""

    start: tuple  # complex start position per strand
    moving: tuple | None  # (strand at left slot, strand at right slot) or None
    center: float
    sign: int

    def positions(self, s):
        z = np.array(self.start, dtype=complex)
        if self.moving is not None:
            a, b = self.moving
            phase = 0.5 * np.exp(1j * self.sign * math.pi * s)
            z[a - 1] = self.center - phase
            z[b - 1] = self.center + phase
        return z

    def velocities(self, s):
        v = np.zeros(len(self.start), dtype=complex)
        if self.moving is not None:
            a, b = self.moving
            dphase = 0.5j * self.sign * math.pi * np.exp(1j * self.sign * math.pi * s)
            v[a - 1] = -dphase
            v[b - 1] = dphase
        return v


@dataclass(frozen=True)
class ConfigLoop:
    """Piecewise-analytic loop of N distinct points over [0, 1]."""

    n_strands: int
    segments: tuple
    breaks: tuple  # cumulative segment end times, last equals 1.0
    letters: tuple
    end_positions: tuple  # exact integer slot of each strand at t = 1

    def segment_at(self, t):
        """(segment, local s, duration) covering global time t."""
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"time {t} outside [0, 1]")
        idx = min(bisect_right(self.breaks, t), len(self.segments) - 1)
        left = self.breaks[idx - 1] if idx else 0.0
        duration = self.breaks[idx] - left
        return self.segments[idx], (t - left) / duration, duration

    def to_json_dict(self):
        return {
            "n_strands": self.n_strands,
            "segments": [{"letter": k, "sign": sign} for k, sign in self.letters],
        }


def realize(word: BraidWord, durations=None) -> ConfigLoop:
    """Geometric realization of a braid word, base points at 0..N-1.

    durations, when given, weights the time sub-interval of each letter; the
    default splits [0, 1] equally.  Transport coefficients do not depend on
    this choice.
    """
    n = word.n_strands
    if not word.letters:
        start = tuple(complex(k) for k in range(n))
        arc = _Arc(start, None, 0.0, 1)
        return ConfigLoop(n, (arc,), (1.0,), (), tuple(range(1, n + 1)))
    if durations is None:
        durations = [1.0] * len(word.letters)
    durations = [float(d) for d in durations]
    if len(durations) != len(word.letters) or min(durations) <= 0:
        raise ValueError("need one positive duration per letter")
    total = sum(durations)
    strand_at = list(range(1, n + 1))  # position (0-based slot) -> strand
    slot_of = {strand: slot for slot, strand in enumerate(strand_at)}
    segments = []
    breaks = []
    acc = 0.0
    for (k, sign), dur in zip(word.letters, durations):
        start = [0j] * n
        for strand, slot in slot_of.items():
            start[strand - 1] = complex(slot)
        a = strand_at[k - 1]
        b = strand_at[k]
        center = (2 * k - 1) / 2.0  # midpoint of slots k-1 and k
        segments.append(_Arc(tuple(start), (a, b), center, sign))
        strand_at[k - 1], strand_at[k] = b, a
        slot_of[a], slot_of[b] = slot_of[b], slot_of[a]
        acc += dur / total
        breaks.append(acc)
    breaks[-1] = 1.0
    end_positions = tuple(slot_of[strand] + 1 for strand in range(1, n + 1))
    return ConfigLoop(n, tuple(segments), tuple(breaks), word.letters, end_positions)


def sample(loop: ConfigLoop, t: float):
    """Positions and global-time velocities at t, exact per segment."""
    segment, s, duration = loop.segment_at(t)
    return segment.positions(s), segment.velocities(s) / duration


def min_separation(loop: ConfigLoop, n_samples: int) -> float:
    """Smallest pairwise point distance over an n_samples time grid."""
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    best = math.inf
    for t in np.linspace(0.0, 1.0, n_samples):
        z, _ = sample(loop, float(t))
        diff = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(diff, math.inf)
        best = min(best, float(diff.min()))
    return best
