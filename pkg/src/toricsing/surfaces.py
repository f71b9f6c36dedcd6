"""Log pairs on the exceptional surfaces of weighted blow-ups.

The surfaces are weighted projective planes P(a1,a2,a3) with standard
toric boundary, and the quadric x1x2 + x3x4 in a weighted P^3.  A "triple"
is such a pair together with a curve class Gamma; this module computes
degrees, ampleness, adjunction, and the closed-form triple classifications,
each of type A, D_l, E6, E7 or E8 according to the multiplicity structure of
the boundary restricted to Gamma.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd


def _is_standard_coeff(c):
    # standard coefficients are (m-1)/m
    return 0 <= c < 1 and (1 - c).numerator == 1


@dataclass(frozen=True)
class WPSPair:
    """A well-formed weighted projective plane with standard toric boundary.

    boundary is a tuple of (line index 1..3, coefficient) with positive
    standard coefficients (m-1)/m; the line {x_i = 0} has class O(a_i).
    """

    weights: tuple
    boundary: tuple = ()

    def __init__(self, weights, boundary=()):
        weights = tuple(int(a) for a in weights)
        if len(weights) != 3 or any(a < 1 for a in weights):
            raise ValueError("need three positive weights")
        if any(
            gcd(weights[i], weights[j]) != 1 for i in range(3) for j in range(i + 1, 3)
        ):
            raise ValueError("weights must be pairwise coprime (well-formed)")
        entries = []
        for line, c in boundary:
            c = Fraction(c)
            if line not in (1, 2, 3):
                raise ValueError("boundary lines are indexed 1..3")
            if not _is_standard_coeff(c):
                raise ValueError("boundary coefficients must be standard, (m-1)/m")
            if c > 0:
                entries.append((line, c))
        entries.sort()
        if len({line for line, _ in entries}) != len(entries):
            raise ValueError("at most one coefficient per line")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "boundary", tuple(entries))

    def boundary_index(self, line):
        """The integer m with coefficient (m-1)/m on the given line (1 if none)."""
        for l, c in self.boundary:
            if l == line:
                return (1 - c).denominator
        return 1

    def as_dict(self):
        return {
            "weights": list(self.weights),
            "boundary": [[l, str(c)] for l, c in self.boundary],
        }


def exceptional_surface(w):
    """The exceptional pair of the smooth-point blow-up with weights w.

    With q_i = gcd(w_k, w_l) the weights factor as w_i = a_i q_j q_k and the
    surface is (P(a1,a2,a3), sum (q_i-1)/q_i {x_i = 0}).
    """
    w = tuple(int(x) for x in w)
    if len(w) != 3 or any(x < 1 for x in w):
        raise ValueError("need three positive weights")
    g = gcd(gcd(w[0], w[1]), w[2])
    if g != 1:
        raise ValueError("weights must be primitive")
    q = (gcd(w[1], w[2]), gcd(w[0], w[2]), gcd(w[0], w[1]))
    a = tuple(w[i] * q[i] // (q[0] * q[1] * q[2]) for i in range(3))
    assert all(a[i] * q[(i + 1) % 3] * q[(i + 2) % 3] == w[i] for i in range(3))
    boundary = [(i + 1, Fraction(q[i] - 1, q[i])) for i in range(3) if q[i] > 1]
    return WPSPair(a, boundary)


@dataclass(frozen=True)
class QuadricPair:
    """The quadric x1x2 + x3x4 in P(w) with its toric different.

    d_ij = gcd(w_k, w_l) over the complementary index pair; the weights
    factor as (a1 d23 d24, a2 d13 d14, a3 d14 d24, a4 d13 d23), and the
    boundary carries (d_ij - 1)/d_ij on the curve C_ij = {x_i = x_j = 0}.
    """

    weights: tuple
    d: dict
    a: tuple

    def boundary_coeffs(self):
        return {
            pair: Fraction(self.d[pair] - 1, self.d[pair])
            for pair in ((1, 3), (1, 4), (2, 3), (2, 4))
            if self.d[pair] > 1
        }

    def as_dict(self):
        return {
            "weights": list(self.weights),
            "d": {"%d%d" % p: v for p, v in sorted(self.d.items())},
            "a": list(self.a),
        }


def quadric_surface_pair(w):
    w = tuple(int(x) for x in w)
    if len(w) != 4 or any(x < 1 for x in w):
        raise ValueError("need four positive weights")
    if w[0] + w[1] != w[2] + w[3]:
        raise ValueError("weights must balance: w1+w2 = w3+w4")
    if gcd(gcd(w[0], w[1]), gcd(w[2], w[3])) != 1:
        raise ValueError("weights must be primitive")
    d = {}
    for pair in ((1, 3), (1, 4), (2, 3), (2, 4)):
        k, l = [i for i in (1, 2, 3, 4) if i not in pair]
        d[pair] = gcd(w[k - 1], w[l - 1])
    a = (
        w[0] // (d[(2, 3)] * d[(2, 4)]),
        w[1] // (d[(1, 3)] * d[(1, 4)]),
        w[2] // (d[(1, 4)] * d[(2, 4)]),
        w[3] // (d[(1, 3)] * d[(2, 3)]),
    )
    if (
        a[0] * d[(2, 3)] * d[(2, 4)],
        a[1] * d[(1, 3)] * d[(1, 4)],
        a[2] * d[(1, 4)] * d[(2, 4)],
        a[3] * d[(1, 3)] * d[(2, 3)],
    ) != w:
        raise ValueError("weights not decomposable")
    return QuadricPair(weights=w, d=d, a=a)


def wps_degree(s, d1, d2):
    """O(d1) · O(d2) = d1 d2 / (a1 a2 a3) on a well-formed P(a1,a2,a3)."""
    a1, a2, a3 = s.weights
    return Fraction(d1 * d2, a1 * a2 * a3)


def triple_ample_and_adjunction(s, gamma_degree):
    """Ampleness of -(K_S + D + Gamma) and the log degree of Gamma.

    Returns (ample, deg(K_Gamma + Diff_Gamma(D))).  The anticanonical degree
    is sum(a_i); boundary lines contribute their coefficient times a_i; the
    log degree comes from adjunction, (K_S + D + Gamma)·Gamma.
    """
    a = s.weights
    neg_deg = Fraction(sum(a)) - gamma_degree
    for line, c in s.boundary:
        neg_deg -= c * a[line - 1]
    ample = neg_deg > 0
    log_degree = -neg_deg * Fraction(gamma_degree, a[0] * a[1] * a[2])
    return ample, log_degree


def ade_type(multiplicities):
    """A/D/E label of (P^1, sum (m_i-1)/m_i P_i), or None when not anti-ample.

    Entries equal to 1 are dropped; at most three genuine multiplicities.
    """
    ms = sorted(int(m) for m in multiplicities if int(m) >= 2)
    if any(int(m) < 1 for m in multiplicities):
        raise ValueError("multiplicities must be positive")
    if len(ms) > 3:
        raise ValueError("at most three multiplicities")
    if len(ms) <= 2:
        return "A"
    if ms[0] == 2 and ms[1] == 2:
        return "D%d" % (ms[2] + 2)
    if ms[:2] == [2, 3] and ms[2] in (3, 4, 5):
        return {3: "E6", 4: "E7", 5: "E8"}[ms[2]]
    return None


@dataclass(frozen=True)
class TripleRecord:
    """One classified triple: the case it falls in, its parameters, its type.

    split_gamma1 flags the two canonical rows where the anticanonical member
    restricts to Gamma plus an extra curve of the recorded degree.
    """

    case: str
    params: tuple
    ade: str
    split_gamma1: int | None = None

    def as_dict(self):
        out = {"case": self.case, "params": list(self.params), "type": self.ade}
        if self.split_gamma1 is not None:
            out["split_gamma1"] = self.split_gamma1
        return out


# ---------------------------------------------------------------------------
# plt triples (cases 1-8 queryable; 9-10 are data records)


def _case3_type(a1, d1, d2):
    if (a1, d1) == (2, 2) and d2 >= 1:
        return "D%d" % (d2 + 2) if d2 >= 2 else "A"
    if (a1, d1) == (2, 3) and 1 <= d2 <= 2:
        return "E6" if d2 == 2 else "A"
    if a1 == 2 and d1 >= 4 and d2 == 1:
        return "A"
    if (a1, d1, d2) == (3, 2, 1):
        return "A"
    return None


def _case5_type(a2, d1, d2):
    if a2 == 2 and d1 == 2 and d2 <= 3:
        return {1: "A", 2: "D6", 3: "E7"}[d2]
    if a2 >= 3 and d1 == 2 and d2 <= 2:
        return "D%d" % (2 * a2 + 2) if d2 == 2 else "A"
    if a2 >= 2 and d1 >= 3 and d2 == 1:
        return "A"
    return None


def classify_plt_triple(surface_weights, boundary, gamma_degree):
    """Match a (surface, boundary, curve class) query against cases 1-8.

    surface_weights: the three weights of the surface; boundary: the integer
    indices (d1,d2,d3) aligned with the coordinate lines, d_i = 1 meaning no
    boundary on that line; gamma_degree: the class of the marked curve.
    Matching is up to simultaneous permutation of coordinates.  Returns a
    TripleRecord or None.
    """
    s0 = tuple(int(x) for x in surface_weights)
    d0 = tuple(int(x) for x in boundary)
    gamma = int(gamma_degree)
    if len(s0) != 3 or len(d0) != 3:
        raise ValueError("need three surface weights and three boundary indices")
    if any(x < 1 for x in s0) or any(x < 1 for x in d0) or gamma < 1:
        raise ValueError("weights, indices and the curve class must be positive")

    for p in permutations(range(3)):
        s = tuple(s0[i] for i in p)
        d = tuple(d0[i] for i in p)
        if s == (1, 1, 1):
            # case 1: boundary on one line, Gamma a conic
            if d[1] == d[2] == 1 and gamma == 2:
                return TripleRecord("plt-1", (d[0],), "A")
            # case 2: full boundary, Gamma a line
            if gamma == 1 and all(x >= 2 for x in d):
                t = ade_type(d)
                if t is not None and t != "A":
                    return TripleRecord("plt-2", tuple(sorted(d)), t)
        if s[1] == 1 and s[2] == 1 and s[0] >= 2:
            a1 = s[0]
            if d[2] == 1 and gamma == a1:
                t = _case3_type(a1, d[0], d[1])
                if t is not None:
                    return TripleRecord("plt-3", (a1, d[0], d[1]), t)
            if d[0] == 1 and d[2] == 1 and gamma == a1 + 1:
                return TripleRecord("plt-4", (a1, d[1]), "A")
        if s[2] == 1 and s[0] == s[1] + 1 and s[1] >= 2:
            a2 = s[1]
            if d[2] == 1 and gamma == a2 + 1:
                t = _case5_type(a2, d[0], d[1])
                if t is not None:
                    return TripleRecord("plt-5", (a2, d[0], d[1]), t)
        if s[2] == 1 and s[1] >= 2 and s[0] == 2 * s[1] + 1:
            a2 = s[1]
            if d == (2, 1, 1) and gamma == 2 * a2 + 1:
                return TripleRecord("plt-6", (a2,), "D%d" % (2 * a2 + 2))
        if s[2] == 1 and s[1] >= 2 and (s[0] + 1) % s[1] == 0:
            a2 = s[1]
            l = (s[0] + 1) // a2
            if l >= 2 and d[2] == 1 and gamma == l * a2:
                if (l, d[0], d[1]) == (2, 2, 1):
                    return TripleRecord("plt-7", (a2, l, 2, 1), "D%d" % (2 * a2 + 1))
                if d[0] == 1 and d[1] >= 1:
                    return TripleRecord("plt-7", (a2, l, 1, d[1]), "A")
        if s[2] == 1 and s[0] > s[1] >= 2:
            a1, a2 = s[0], s[1]
            if d[0] == 1 and d[1] == 1 and gamma == a1 + a2:
                return TripleRecord("plt-8", (a1, a2, d[2]), "A")
    return None


def plt_chain_surface_record(case_id, r1, r2, d1, l=None):
    """Data records for the two chain-surface cases (three singular points).

    Case 9: S(1/r1(1,1) + 1/r2(1,1) + A_{r1+r2-1}) with boundary index d1 >= 2
    on the orbit closure through the first two singular points.  Case 10:
    S(1/r1(l,1) + 1/r2(l,1) + A_{(r1+r2)/l - 1}) with l >= 2 dividing r1+r2,
    d1 >= 1.  Both are of type A; no fan is reconstructed.
    """
    if case_id == 9:
        if r1 < 2 or r2 < 2 or d1 < 2:
            raise ValueError("case 9 needs r1, r2 >= 2 and d1 >= 2")
        sing = ("1/%d(1,1)" % r1, "1/%d(1,1)" % r2, "A%d" % (r1 + r2 - 1))
        return TripleRecord("plt-9", (r1, r2, d1) + sing, "A")
    if case_id == 10:
        if l is None or l < 2 or (r1 + r2) % l != 0 or r1 < 2 or r2 < 2 or d1 < 1:
            raise ValueError("case 10 needs l >= 2 dividing r1+r2, r1, r2 >= 2, d1 >= 1")
        sing = ("1/%d(%d,1)" % (r1, l), "1/%d(%d,1)" % (r2, l), "A%d" % ((r1 + r2) // l - 1))
        return TripleRecord("plt-10", (r1, r2, l, d1) + sing, "A")
    raise ValueError("chain-surface records exist for cases 9 and 10 only")


# ---------------------------------------------------------------------------
# canonical triples (the weight/degree table)


def _canonical_rows():
    # (type label, weights sorted descending, gamma degree, split degree)
    rows = []
    for t, w, g, split in (
        ("E6", (3, 2, 2), 3, None),
        ("E6", (6, 4, 3), 2, None),
        ("E6", (5, 3, 2), 9, None),
        ("E6", (4, 2, 1), 3, None),
        ("E7", (3, 2, 2), 3, None),
        ("E7", (6, 4, 3), 2, None),
        ("E7", (9, 6, 4), 3, None),
        ("E7", (3, 3, 1), 2, None),
        ("E7", (5, 4, 2), 5, None),
        ("E7", (7, 5, 3), 14, None),
        ("E7", (5, 3, 2), 6, 3),
        ("E8", (3, 2, 2), 3, None),
        ("E8", (6, 4, 3), 2, None),
        ("E8", (9, 6, 4), 3, None),
        ("E8", (12, 8, 5), 6, None),
        ("E8", (15, 10, 6), 1, None),
        ("E8", (5, 4, 2), 5, None),
        ("E8", (10, 7, 4), 10, None),
        ("E8", (8, 5, 3), 15, None),
    ):
        rows.append((t, w, g, split))
    return rows


def classify_canonical_triple(w, gamma_degree):
    """All rows of the canonical weight/degree table matching (w, Gamma degree).

    Matching is up to permutation of the weights.  A single pair may lie in
    several type lists (e.g. (3,2,2) with a cubic matches the D family at
    l = 3 and the E6/E7/E8 lists), so the result is a tuple of records.
    """
    w = tuple(sorted((int(x) for x in w), reverse=True))
    gamma = int(gamma_degree)
    if any(x < 1 for x in w) or gamma < 1:
        raise ValueError("weights and the curve class must be positive")
    if gcd(gcd(w[0], w[1]), w[2]) != 1:
        raise ValueError("weights must be primitive")
    out = []
    # family A: (a1 q3, a2 q3, 1) with Gamma ~ O(a1 + a2)
    if w[2] == 1:
        q3 = gcd(w[0], w[1])
        a1, a2 = w[0] // q3, w[1] // q3
        if gamma == a1 + a2:
            out.append(TripleRecord("canonical-A", (a1, a2, q3), "A"))
    # family D, three rows for each l >= 2
    for l in range(2, max(w) + 2):
        if sorted((l, l - 1, 2), reverse=True) == list(w) and gamma == l:
            out.append(TripleRecord("canonical-D", (l, "l,l-1,2"), "D"))
        if sorted((l + 1, l, 1), reverse=True) == list(w) and gamma == 2 * l:
            out.append(TripleRecord("canonical-D", (l, "l+1,l,1"), "D", split_gamma1=1))
        if sorted((l, l, 1), reverse=True) == list(w) and gamma == 2:
            out.append(TripleRecord("canonical-D", (l, "l,l,1"), "D"))
    for t, weights, g, split in _canonical_rows():
        if weights == w and g == gamma:
            out.append(
                TripleRecord("canonical-%s" % t, weights, t, split_gamma1=split)
            )
    return tuple(out)


def canonical_triple_table(bound):
    """The full canonical table with all parameters up to the bound.

    Yields (record, weights, gamma) for the A family (a1 >= a2, a1 q3 <= bound),
    the three D rows (largest weight <= bound) and the sporadic E rows.
    """
    rows = []
    for q3 in range(1, bound + 1):
        for a1 in range(1, bound // q3 + 1):
            for a2 in range(1, a1 + 1):
                if gcd(a1, a2) != 1 or a2 * q3 > bound:
                    continue
                w = tuple(sorted((a1 * q3, a2 * q3, 1), reverse=True))
                rows.append(
                    (TripleRecord("canonical-A", (a1, a2, q3), "A"), w, a1 + a2)
                )
    for l in range(2, bound + 1):
        if l <= bound:
            rows.append(
                (
                    TripleRecord("canonical-D", (l, "l,l-1,2"), "D"),
                    tuple(sorted((l, l - 1, 2), reverse=True)),
                    l,
                )
            )
        if l + 1 <= bound:
            rows.append(
                (
                    TripleRecord("canonical-D", (l, "l+1,l,1"), "D", split_gamma1=1),
                    (l + 1, l, 1),
                    2 * l,
                )
            )
        rows.append(
            (TripleRecord("canonical-D", (l, "l,l,1"), "D"), (l, l, 1), 2)
        )
    for t, weights, g, split in _canonical_rows():
        if max(weights) <= bound:
            rows.append(
                (TripleRecord("canonical-%s" % t, weights, t, split_gamma1=split), weights, g)
            )
    rows.sort(key=lambda row: (row[1], row[2], row[0].case, row[0].params))
    return [row for row in rows if max(row[1]) <= bound]


# ---------------------------------------------------------------------------
# the quadric triple conditions


_QUADRIC_SYMMETRY = (
    (0, 1, 2, 3),
    (1, 0, 2, 3),
    (0, 1, 3, 2),
    (1, 0, 3, 2),
    (2, 3, 0, 1),
    (3, 2, 0, 1),
    (2, 3, 1, 0),
    (3, 2, 1, 0),
)


def quadric_triple_condition(w, gamma_class=None, mode="plt"):
    """The quadric triple criteria, up to the quadric's coordinate symmetry.

    plt mode: some symmetric rearrangement has d23 = d24 = 1 and a1 | a2 (and
    Gamma ~ O(w2) restricted, when a class is supplied).  canonical mode: some
    rearrangement has w1 = 1 (and Gamma ~ O(w2), when supplied).
    """
    if mode not in ("plt", "canonical"):
        raise ValueError("mode is 'plt' or 'canonical'")
    base = quadric_surface_pair(w).weights
    for p in _QUADRIC_SYMMETRY:
        v = tuple(base[i] for i in p)
        if gamma_class is not None and gamma_class != v[1]:
            continue
        if mode == "canonical":
            if v[0] == 1:
                return True
            continue
        q = quadric_surface_pair(v)
        if q.d[(2, 3)] == 1 and q.d[(2, 4)] == 1 and q.a[1] % q.a[0] == 0:
            return True
    return False


def is_in_Pn(a, n):
    """Membership of the coefficient a in P_n: floor((n+1)a) >= n·a."""
    a = Fraction(a)
    n = int(n)
    if not (0 <= a <= 1):
        raise ValueError("coefficient must lie in [0, 1]")
    if n < 1:
        raise ValueError("n must be positive")
    lhs = ((n + 1) * a).numerator // ((n + 1) * a).denominator
    return lhs >= n * a
