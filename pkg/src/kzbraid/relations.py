"""Exact rational relation sets and quotient reduction.

Relations are integral, so rows are kept as sparse Fraction vectors and the
row echelon form is exact; complex series coefficients are pushed through the
reduced rows afterwards.  Echelon forms are cached per (skeleton, degree) and
are safe for concurrent reads once built.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .circles import CircleDiagram, CircleSeries, enumerate_circle_diagrams
from .words import (
    ZERO_THRESHOLD,
    HorizontalSeries,
    HorizontalWord,
    all_pairs,
    enumerate_words,
)


class RelationSet:
    """Sparse rational relations over a fixed basis of one degree."""

    def __init__(self, degree, basis, rows):
        self.degree = degree
        self.basis = tuple(basis)
        self.rows = tuple(tuple(sorted(row.items())) for row in rows)
        self._echelon = None

    def echelon(self):
        """Full reduced row echelon form: pivot column -> sparse unit row.

        Each pivot row has coefficient 1 on its pivot and support only on
        free columns otherwise.  Built once, cached on the instance.
        """
        if self._echelon is None:
            pivots = {}
            for raw in self.rows:
                row = {c: Fraction(v) for c, v in raw}
                while row:
                    lead = min(row)
                    if lead in pivots:
                        factor = row.pop(lead)
                        for c, v in pivots[lead].items():
                            if c == lead:
                                continue
                            nv = row.get(c, Fraction(0)) - factor * v
                            if nv:
                                row[c] = nv
                            else:
                                row.pop(c, None)
                        continue
                    inv = Fraction(1) / row[lead]
                    row = {c: v * inv for c, v in row.items()}
                    for prow in pivots.values():
                        if lead in prow:
                            f = prow.pop(lead)
                            for c, v in row.items():
                                if c == lead:
                                    continue
                                nv = prow.get(c, Fraction(0)) - f * v
                                if nv:
                                    prow[c] = nv
                                else:
                                    prow.pop(c, None)
                    pivots[lead] = row
                    break
            self._echelon = pivots
        return self._echelon

    @property
    def rank(self):
        return len(self.echelon())

    def free_indices(self):
        pivots = self.echelon()
        return tuple(k for k in range(len(self.basis)) if k not in pivots)

    def __repr__(self):
        return f"RelationSet(degree={self.degree}, basis={len(self.basis)}, rows={len(self.rows)})"


def _dedupe(rows):
    seen = set()
    out = []
    for row in rows:
        items = tuple(sorted(row.items()))
        neg = tuple(sorted((c, -v) for c, v in row.items()))
        sig = min(items, neg)
        if sig not in seen:
            seen.add(sig)
            out.append(row)
    return out


@lru_cache(maxsize=None)
def horizontal_relations(n_strands: int, degree: int) -> RelationSet:
    """4T and disjoint-commutation rows among degree-m braid words.

    Base relations act on an adjacent height pair and are embedded below and
    above by every word context.  The disjoint family [t_ij, t_kl] = 0 is
    included alongside 4T: the connection's curvature only vanishes modulo
    both, and far-apart generators must commute in the quotient.
    """
    basis = enumerate_words(n_strands, degree)
    if degree < 2 or n_strands == 2:
        return RelationSet(degree, basis, ())
    index = {w: k for k, w in enumerate(basis)}
    base_rows = []
    strands = range(1, n_strands + 1)
    for i in strands:
        for j in strands:
            for k in strands:
                if not (i < j < k):
                    continue
                triple = [(i, j), (i, k), (j, k)]
                for slide in triple:
                    others = [p for p in triple if p != slide]
                    row = {}
                    for other in others:
                        row[(slide, other)] = row.get((slide, other), 0) + 1
                        row[(other, slide)] = row.get((other, slide), 0) - 1
                    base_rows.append(row)
    pairs = [p.as_tuple() for p in all_pairs(n_strands)]
    for a_idx, p in enumerate(pairs):
        for q in pairs[a_idx + 1:]:
            if set(p) & set(q):
                continue
            base_rows.append({(p, q): 1, (q, p): -1})
    rows = []
    for pos in range(degree - 1):
        for prefix in enumerate_words(n_strands, pos):
            for suffix in enumerate_words(n_strands, degree - 2 - pos):
                for base in base_rows:
                    row = {}
                    for (low, high), coeff in base.items():
                        word = HorizontalWord(
                            n_strands, prefix.chords + (low, high) + suffix.chords
                        )
                        col = index[word]
                        row[col] = row.get(col, 0) + coeff
                    row = {c: Fraction(v) for c, v in row.items() if v}
                    if row:
                        rows.append(row)
    return RelationSet(degree, basis, _dedupe(rows))


def _circle_four_term_rows(diagram):
    """4T rows seeded at every adjacent pair of feet of distinct chords.

    With chord a = (x, y) fixed and the sliding foot u of another chord, the
    relation reads D(u after x) - D(u before x) + D(u after y) - D(u before y),
    'after' meaning forward along the circle orientation.
    """
    layout = diagram.to_layout()
    rows = []
    for c, circle in enumerate(layout):
        n = len(circle)
        if n < 2:
            continue
        for s in range(n):
            b = circle[s]
            a = circle[(s + 1) % n]
            if a == b:
                continue
            removed = [list(cir) for cir in layout]
            removed[c].pop(s)
            # a's foot that was adjacent, repositioned after dropping slot s
            x = (c, s) if s + 1 < n else (c, 0)
            feet_a = [
                (cc, ss)
                for cc, cir in enumerate(removed)
                for ss, label in enumerate(cir)
                if label == a
            ]
            y = next(f for f in feet_a if f != x)
            row = {}
            for target, offset, sign in (
                (x, 1, 1),
                (x, 0, -1),
                (y, 1, 1),
                (y, 0, -1),
            ):
                lay = [list(cir) for cir in removed]
                tc, ts = target
                lay[tc].insert(ts + offset, b)
                term = CircleDiagram.from_layout(lay)
                row[term] = row.get(term, 0) + sign
            row = {d: v for d, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


@lru_cache(maxsize=None)
def circle_relations(n_circles: int, degree: int) -> RelationSet:
    """4T plus framing-independence rows among degree-m circle diagrams.

    Every diagram with an isolated chord (feet adjacent on its circle, no
    other foot between them) is set to zero.
    """
    basis = enumerate_circle_diagrams(n_circles, degree)
    index = {d: k for k, d in enumerate(basis)}
    rows = []
    for diagram in basis:
        if diagram.has_isolated_chord():
            rows.append({index[diagram]: Fraction(1)})
    if degree >= 2:
        for diagram in basis:
            for row in _circle_four_term_rows(diagram):
                rows.append({index[d]: Fraction(v) for d, v in row.items()})
    return RelationSet(degree, basis, _dedupe(rows))


class NormalFormSeries:
    """Coordinates of a series on the free words of the quotient basis."""

    def __init__(self, skeleton, max_degree, bases, terms, zero_threshold=ZERO_THRESHOLD):
        self.skeleton = skeleton  # ("strands", N) or ("circles", q)
        self.max_degree = max_degree
        self.bases = dict(bases)
        self.zero_threshold = zero_threshold
        self._terms = {k: complex(v) for k, v in terms.items() if abs(v) >= zero_threshold}

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, element):
        return self._terms.get(element, 0j)

    def sup_diff(self, other):
        if self.skeleton != other.skeleton:
            raise ValueError("skeleton mismatch")
        keys = set(self._terms) | set(other._terms)
        return max(
            (abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) for k in keys),
            default=0.0,
        )

    def sup_norm(self):
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def to_series(self):
        """Re-expand on the ambient space (representatives are elements)."""
        kind, size = self.skeleton
        if kind == "strands":
            return HorizontalSeries(size, self.max_degree, self._terms, self.zero_threshold)
        return CircleSeries(size, self.max_degree, self._terms, self.zero_threshold)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def __repr__(self):
        kind, size = self.skeleton
        return f"NormalFormSeries({kind}={size}, M={self.max_degree}, {len(self._terms)} terms)"


def _relation_for(series, degree, supplied):
    if supplied is not None and degree in supplied:
        return supplied[degree]
    if isinstance(series, HorizontalSeries):
        if degree < 2:
            return None
        return horizontal_relations(series.n_strands, degree)
    return circle_relations(series.n_circles, degree)


def reduce(series, relations=None) -> NormalFormSeries:
    """Quotient a series by its relation sets, degree by degree.

    relations may be None (built and cached automatically), a RelationSet, or
    an iterable of them; missing degrees fall back to the automatic family.
    """
    if isinstance(relations, RelationSet):
        supplied = {relations.degree: relations}
    elif relations is not None:
        supplied = {r.degree: r for r in relations}
    else:
        supplied = None
    horizontal = isinstance(series, HorizontalSeries)
    skeleton = ("strands", series.n_strands) if horizontal else ("circles", series.n_circles)
    by_degree = {}
    for element, coeff in series.terms.items():
        by_degree.setdefault(element.degree, {})[element] = coeff
    bases = {}
    out = {}
    for m in range(series.max_degree + 1):
        rs = _relation_for(series, m, supplied)
        if rs is None:
            basis = enumerate_words(series.n_strands, m)
            pivots = {}
        else:
            basis = rs.basis
            pivots = rs.echelon()
        index = {e: k for k, e in enumerate(basis)}
        vec = {}
        for element, coeff in by_degree.get(m, {}).items():
            if element not in index:
                raise ValueError(f"element {element!r} missing from the degree-{m} basis")
            vec[index[element]] = vec.get(index[element], 0j) + coeff
        for p in sorted(pivots):
            if p not in vec:
                continue
            amount = vec.pop(p)
            for col, q in pivots[p].items():
                if col == p:
                    continue
                vec[col] = vec.get(col, 0j) - amount * float(q)
        free = [k for k in range(len(basis)) if k not in pivots]
        bases[m] = tuple(basis[k] for k in free)
        for k in free:
            c = vec.get(k, 0j)
            if abs(c) >= series.zero_threshold:
                out[basis[k]] = c
    return NormalFormSeries(skeleton, series.max_degree, bases, out, series.zero_threshold)


def quotient_dimension(degree: int, *, strands: int | None = None, circles: int | None = None) -> int:
    """Diagram count minus exact rank of the relation set at one degree."""
    if (strands is None) == (circles is None):
        raise ValueError("give exactly one of strands= or circles=")
    if strands is not None:
        if degree < 2 or strands == 2:
            return len(enumerate_words(strands, degree))
        rs = horizontal_relations(strands, degree)
        return len(rs.basis) - rs.rank
    rs = circle_relations(circles, degree)
    return len(rs.basis) - rs.rank
