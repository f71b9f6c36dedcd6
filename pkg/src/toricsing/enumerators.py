"""Exhaustive searches over weight vectors with prescribed chart behavior.

Four searches: smooth-point blow-ups with canonical charts, ordinary-double-
point blow-ups with canonical charts, terminal blow-ups over a cyclic base,
and the parameter families of the plt surface triples.  Candidate lists are
generated in lexicographic order and filtered by the chart or ampleness
oracles, so reports are deterministic and shrinking the bound can only
shrink the hit list.  Workers are module-level functions, which keeps the
optional process pool reproducible: a pool map preserves candidate order, so
the output is byte-for-byte independent of the job count.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import gcd
from multiprocessing import Pool

from .blowup import (
    BaseSingularity,
    WeightedBlowup,
    is_canonical_blowup,
    is_terminal_blowup,
)
from .surfaces import WPSPair, triple_ample_and_adjunction

#: the nine canonical smooth-point weight vectors outside the two families
SPORADIC_SMOOTH = (
    (5, 3, 2),
    (6, 4, 3),
    (7, 5, 3),
    (8, 5, 3),
    (9, 5, 2),
    (9, 6, 4),
    (10, 7, 4),
    (12, 8, 5),
    (15, 10, 6),
)

_SPORADIC_SET = frozenset(SPORADIC_SMOOTH)


def smooth_family_tag(w):
    """Family of a canonical smooth-point hit, sporadics checked first.

    (2,2,1) is tagged "w1,w2,1" even though it also heads the second family;
    (3,2,2) is the first genuine "l,l-1,2" member.  Returns None when the
    vector fits no family — enumerate_canonical_smooth records those as
    errors.
    """
    w = tuple(w)
    if w in _SPORADIC_SET:
        return "sporadic"
    if w[2] == 1:
        return "w1,w2,1"
    if w[2] == 2 and w[0] == w[1] + 1:
        return "l,l-1,2"
    return None


@dataclass(frozen=True)
class EnumerationReport:
    """Hit list of one bounded search.

    hits are lexicographically sorted, duplicate-free weight tuples; every
    hit satisfies the search predicate when re-checked.  family_tags maps
    each hit to its family label (None when untagged); untagged hits are
    additionally listed in errors.
    """

    bound: int
    hits: tuple
    family_tags: dict
    errors: tuple = ()

    def as_dict(self):
        return {
            "bound": self.bound,
            "hits": [list(h) for h in self.hits],
            "family_tags": {
                ",".join(str(x) for x in h): self.family_tags.get(h)
                for h in self.hits
            },
            "errors": list(self.errors),
        }


def resolve_jobs(jobs=None):
    """Worker count: the explicit argument, else TORICSING_JOBS, else 1."""
    if jobs is None:
        env = os.environ.get("TORICSING_JOBS", "").strip()
        jobs = int(env) if env else 1
    jobs = int(jobs)
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    return jobs


def _filter(pred, items, jobs):
    if jobs <= 1 or len(items) < 4:
        flags = [pred(x) for x in items]
    else:
        chunk = max(1, len(items) // (jobs * 8))
        with Pool(processes=jobs) as pool:
            flags = pool.map(pred, items, chunksize=chunk)
    return [x for x, ok in zip(items, flags) if ok]


# --- module-level predicates (picklable workers) ---------------------------


def _canonical_smooth(w):
    return is_canonical_blowup(WeightedBlowup(BaseSingularity.smooth(), w))


def _terminal_smooth(w):
    return is_terminal_blowup(WeightedBlowup(BaseSingularity.smooth(), w))


def _canonical_odp(w):
    return is_canonical_blowup(WeightedBlowup(BaseSingularity.odp(), w))


def _terminal_cyclic(r, q, w):
    return is_terminal_blowup(WeightedBlowup(BaseSingularity.cyclic(r, q), w))


# --- candidate generators ---------------------------------------------------


def _smooth_candidates(bound):
    out = []
    for w1 in range(1, bound + 1):
        for w2 in range(1, w1 + 1):
            for w3 in range(1, w2 + 1):
                if gcd(gcd(w1, w2), w3) == 1:
                    out.append((w1, w2, w3))
    return out


def odp_orbit_min(w):
    """Least representative under the symmetries of the quadric cone:
    swapping within either weight pair and swapping the two pairs."""
    w1, w2, w3, w4 = w
    images = []
    for a, b in ((w1, w2), (w2, w1)):
        for c, d in ((w3, w4), (w4, w3)):
            images.append((a, b, c, d))
            images.append((c, d, a, b))
    return min(images)


def _odp_candidates(bound):
    out = []
    for w1 in range(1, bound + 1):
        for w2 in range(1, bound + 1):
            for w3 in range(1, bound + 1):
                w4 = w1 + w2 - w3
                if not 1 <= w4 <= bound:
                    continue
                w = (w1, w2, w3, w4)
                if gcd(gcd(w1, w2), gcd(w3, w4)) != 1:
                    continue
                if odp_orbit_min(w) != w:
                    continue
                out.append(w)
    return out


def _cyclic_candidates(base, bound):
    r, q = base.r, base.q
    out = []
    for w1 in range(1, bound + 1):
        for w2 in range(1, bound + 1):
            for w3 in range(1, bound + 1):
                if gcd(gcd(w1, w2), w3) != 1:
                    continue
                if r * w1 - w3 < 1 or r * w2 - q * w3 < 1:
                    continue
                out.append((w1, w2, w3))
    return out


# --- the searches ------------------------------------------------------------


def enumerate_canonical_smooth(max_weight, jobs=None):
    """All weight vectors w1 >= w2 >= w3 >= 1, w1 <= max_weight, primitive,
    whose smooth-point blow-up has canonical charts and a(S,0) > 0."""
    bound = int(max_weight)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    jobs = resolve_jobs(jobs)
    hits = _filter(_canonical_smooth, _smooth_candidates(bound), jobs)
    tags = {h: smooth_family_tag(h) for h in hits}
    errors = tuple(
        "untagged hit (%s)" % ",".join(str(x) for x in h)
        for h in hits
        if tags[h] is None
    )
    return EnumerationReport(bound, tuple(hits), tags, errors)


def enumerate_canonical_odp(max_weight, jobs=None):
    """Balanced primitive quadruples (least in their symmetry orbit) whose
    odp blow-up has canonical charts.

    The hit set is asserted to coincide with the candidates carrying a unit
    weight — the closed-form description of the canonical odp blow-ups.
    """
    bound = int(max_weight)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    jobs = resolve_jobs(jobs)
    candidates = _odp_candidates(bound)
    hits = _filter(_canonical_odp, candidates, jobs)
    assert hits == [w for w in candidates if min(w) == 1]
    tags = {h: "unit-weight" for h in hits}
    return EnumerationReport(bound, tuple(hits), tags)


def _plt_case_shape(case_id, params):
    """Surface weights, per-line boundary indices, and curve class of one
    parameter tuple in the given plt-triple case."""
    if case_id == 1:
        (d1,) = params
        return (1, 1, 1), (d1, 1, 1), 2
    if case_id == 2:
        d1, d2, d3 = params
        return (1, 1, 1), (d1, d2, d3), 1
    if case_id == 3:
        a1, d1, d2 = params
        return (a1, 1, 1), (d1, d2, 1), a1
    if case_id == 4:
        a1, d1 = params
        return (a1, 1, 1), (1, d1, 1), a1 + 1
    if case_id == 5:
        a2, d1, d2 = params
        return (a2 + 1, a2, 1), (d1, d2, 1), a2 + 1
    if case_id == 6:
        (a2,) = params
        return (2 * a2 + 1, a2, 1), (2, 1, 1), 2 * a2 + 1
    if case_id == 7:
        a2, l, d1, d2 = params
        return (l * a2 - 1, a2, 1), (d1, d2, 1), l * a2
    if case_id == 8:
        a1, a2, d1 = params
        return (a1, a2, 1), (1, 1, d1), a1 + a2
    raise ValueError("case_id must be 1..8")


def _plt_ample(case_id, params):
    weights, indices, gamma = _plt_case_shape(case_id, params)
    boundary = [
        (line, Fraction(m - 1, m)) for line, m in zip((1, 2, 3), indices) if m > 1
    ]
    ample, _ = triple_ample_and_adjunction(WPSPair(weights, boundary), gamma)
    return ample


def _plt_candidates(case_id, bound):
    rng = range(1, bound + 1)
    two_up = range(2, bound + 1)
    if case_id == 1:
        return [(d1,) for d1 in rng]
    if case_id == 2:
        return [
            (d1, d2, d3)
            for d1 in two_up
            for d2 in range(d1, bound + 1)
            for d3 in range(d2, bound + 1)
        ]
    if case_id == 3:
        return [(a1, d1, d2) for a1 in two_up for d1 in two_up for d2 in rng]
    if case_id == 4:
        return [(a1, d1) for a1 in two_up for d1 in rng]
    if case_id == 5:
        return [(a2, d1, d2) for a2 in two_up for d1 in two_up for d2 in rng]
    if case_id == 6:
        return [(a2,) for a2 in two_up]
    if case_id == 7:
        return [
            (a2, l, d1, d2)
            for a2 in two_up
            for l in two_up
            for d1 in rng
            for d2 in rng
        ]
    if case_id == 8:
        return [
            (a1, a2, d1)
            for a1 in range(3, bound + 1)
            for a2 in range(2, a1)
            if gcd(a1, a2) == 1
            for d1 in rng
        ]
    raise ValueError("case_id must be 1..8")


def plt_family_tag(case_id, params):
    """Constraint family of one plt-case hit, None when it fits no family."""
    if case_id == 1:
        return "d1>=1"
    if case_id == 2:
        d = tuple(sorted(params))
        if d[:2] == (2, 2):
            return "2,2,k"
        if d[:2] == (2, 3) and d[2] in (3, 4, 5):
            return "2,3,%d" % d[2]
        return None
    if case_id == 3:
        a1, d1, d2 = params
        if (a1, d1) == (2, 2) and d2 >= 1:
            return "2,2,k"
        if (a1, d1) == (2, 3) and d2 <= 2:
            return "2,3,k<=2"
        if a1 == 2 and d1 >= 4 and d2 == 1:
            return "2,k>=4,1"
        if (a1, d1, d2) == (3, 2, 1):
            return "3,2,1"
        return None
    if case_id == 4:
        return "a1>=2,d1>=1"
    if case_id == 5:
        a2, d1, d2 = params
        if a2 == 2 and d1 == 2 and d2 <= 3:
            return "2,2,k<=3"
        if a2 >= 3 and d1 == 2 and d2 <= 2:
            return "k>=3,2,k<=2"
        if d1 >= 3 and d2 == 1:
            return "k>=2,k>=3,1"
        return None
    if case_id == 6:
        return "a2>=2"
    if case_id == 7:
        a2, l, d1, d2 = params
        if (l, d1, d2) == (2, 2, 1):
            return "2,2,1"
        if d1 == 1:
            return "l,1,k"
        return None
    if case_id == 8:
        return "a1>a2>=2,d1>=1"
    raise ValueError("case_id must be 1..8")


def enumerate_plt_triples_case(case_id, bound, jobs=None):
    """Parameter tuples of one plt-triple case, within bound, whose log pair
    has -(K + D + Gamma) ample.

    The scan runs over the case's own shape: boundary indices start at 2 on
    lines every listed constraint family keeps (all three lines of case 2,
    the first line of cases 3 and 5) and at 1 on lines a family may drop.
    Case 2 tuples are sorted, matching the symmetry of the full boundary.
    Ampleness is evaluated on the actual pair via triple_ample_and_adjunction;
    hits are tagged by constraint family, untagged hits are recorded as
    errors.
    """
    bound = int(bound)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    case_id = int(case_id)
    if not 1 <= case_id <= 8:
        raise ValueError("case_id must be 1..8")
    jobs = resolve_jobs(jobs)
    pred = partial(_plt_ample, case_id)
    hits = _filter(pred, _plt_candidates(case_id, bound), jobs)
    tags = {h: plt_family_tag(case_id, h) for h in hits}
    errors = tuple(
        "untagged hit (%s)" % ",".join(str(x) for x in h)
        for h in hits
        if tags[h] is None
    )
    return EnumerationReport(bound, tuple(hits), tags, errors)


def enumerate_terminal_cyclic(r, q, max_weight, jobs=None):
    """Valid weight vectors over the 1/r(-1,-q,1) base with all charts
    terminal and a(S,0) > 0.  r = 1 is the smooth point: the search runs
    over descending primitive triples with the terminal filter."""
    bound = int(max_weight)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    r = int(r)
    if r < 1:
        raise ValueError("r must be >= 1")
    jobs = resolve_jobs(jobs)
    if r == 1:
        hits = _filter(_terminal_smooth, _smooth_candidates(bound), jobs)
        tags = {h: smooth_family_tag(h) for h in hits}
        return EnumerationReport(bound, tuple(hits), tags)
    base = BaseSingularity.cyclic(r, q)
    pred = partial(_terminal_cyclic, base.r, base.q)
    hits = _filter(pred, _cyclic_candidates(base, bound), jobs)
    return EnumerationReport(bound, tuple(hits), {})
