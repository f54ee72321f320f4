"""Structure sums over the ct tables: brute-force evaluation, the
proven closed forms, and the conjecture harness.

The six sums U1..U3, V1..V3 are finite double sums of products of two
ct entries.  Some have proven formulas (acceptance-gated: they must
hold exactly), the rest only conjectured ones (report-only: a mismatch
is recorded verbatim, never asserted).  The u1 formula at level beta=2
involves a symbol h_j(d) with no definition anywhere; it is evaluated
only against a user-supplied interpretation table and skipped otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .geometry import MultiDegree
from .series import Rat
from .tables import CoeffTables, InsufficientBounds


@dataclass(frozen=True)
class SumValues:
    md: MultiDegree
    beta: int
    u1: Rat
    u2: Rat
    u3: Rat
    v1: Rat
    v2: Rat
    v3: Rat


def tables_for_sums(md: MultiDegree, beta_max: int) -> CoeffTables:
    """ct entries with first index up to n-1 drive every sum."""
    return CoeffTables(md, p_max=md.n - 1, beta_max=beta_max)


def _ct(tables: CoeffTables, p: int, l: int, beta: int) -> Rat:
    if p < 0 or l < 0:
        return Fraction(0)
    top = p - tables.md.nu * beta
    if top < 0 or l > top:
        return Fraction(0)
    return tables.ctilde(p, l, beta)


def _u_sum(tables: CoeffTables, beta: int, second_drop: int, weight) -> Rat:
    md = tables.md
    total = Fraction(0)
    for p in range(md.n - md.r):
        pp = md.n - 1 - md.r - p
        for b1 in range(beta + 1):
            b2 = beta - b1
            left = _ct(tables, pp, pp - md.nu * b1, b1)
            if left == 0:
                continue
            right = _ct(tables, p, p - md.nu * b2 - second_drop, b2)
            if right == 0:
                continue
            total += left * right * weight(p, b1, b2)
    return total


def _v_sum(tables: CoeffTables, beta: int, second_drop: int, weight) -> Rat:
    md = tables.md
    total = Fraction(0)
    for p in range(1, md.r + 1):
        left_p = md.n - 1 - md.r + p
        right_p = md.n - p
        for b1 in range(beta + 1):
            b2 = beta - b1
            left = _ct(tables, left_p, left_p - md.nu * b1, b1)
            if left == 0:
                continue
            right = _ct(tables, right_p, right_p - md.nu * b2 - second_drop, b2)
            if right == 0:
                continue
            total += left * right * weight(p, b1, b2)
    return total


def compute_sums(tables: CoeffTables, beta: int) -> SumValues:
    """All six sums at one degree, by brute force over the ct tables."""
    md = tables.md
    if beta > tables.beta_max or tables.p_max < md.n - 1:
        raise InsufficientBounds(
            f"sums at beta={beta} need p_max>={md.n - 1}, "
            f"beta_max>={beta}; built (p<={tables.p_max}, "
            f"beta<={tables.beta_max})")
    one = lambda p, b1, b2: 1
    u3w = lambda p, b1, b2: (p - md.nu * b2) * (md.n - 1 - md.r - p - md.nu * b1)
    v3w = lambda p, b1, b2: (md.n - 1 - md.r + p - md.nu * b1) * (md.n - p - md.nu * b2)
    return SumValues(
        md=md, beta=beta,
        u1=_u_sum(tables, beta, 1, one),
        u2=_u_sum(tables, beta, 0, one),
        u3=_u_sum(tables, beta, 0, u3w),
        v1=_v_sum(tables, beta, 1, one),
        v2=_v_sum(tables, beta, 0, one),
        v3=_v_sum(tables, beta, 0, v3w),
    )


def weighted_u_sums(tables: CoeffTables, beta: int) -> tuple[Rat, Rat]:
    """The (p - nu*b2)-weighted and binomial-weighted mixed U sums."""
    md = tables.md
    lin = _u_sum(tables, beta, 0, lambda p, b1, b2: p - md.nu * b2)
    binw = _u_sum(tables, beta, 0,
                  lambda p, b1, b2: comb(p - md.nu * b2, 2)
                  if p - md.nu * b2 >= 2 else 0)
    return lin, binw


def weighted_v_sums(tables: CoeffTables, beta: int) -> tuple[Rat, Rat]:
    md = tables.md
    lin = _v_sum(tables, beta, 0, lambda p, b1, b2: md.n - p - md.nu * b2)
    binw = _v_sum(tables, beta, 0,
                  lambda p, b1, b2: comb(md.n - p - md.nu * b2, 2)
                  if md.n - p - md.nu * b2 >= 2 else 0)
    return lin, binw


# ---------------------------------------------------------------------------
# proven formulas (acceptance-gated)


def u2_lemma(md: MultiDegree, beta: int) -> Rat:
    if beta == 0:
        return Fraction(md.n - md.r)
    if beta == 1:
        return Fraction(-(md.n - md.r - md.nu) * md.dd)
    return Fraction(0)


def u1_degree1_lemma(md: MultiDegree) -> Rat:
    """Closed form of U1 at beta = 1."""
    half = sum(Fraction(d - 1, 2) for d in md.degrees)
    sq = sum(Fraction((d - 1) * (2 * d - 1), 6 * d) for d in md.degrees)
    return -Fraction(md.dd, 2) * (half * half - sq)


def u1_degree1_hypersurface(d: int) -> Rat:
    """The r = 1 specialization of the beta = 1 closed form."""
    return -Fraction((d - 1) * (d - 2) * (3 * d - 1) * d ** (d - 1), 24)


def u1_vanishing_hypothesis(md: MultiDegree, beta: int) -> bool:
    """n >= |d|+1 and (beta-1) n >= beta |d| - r - 1 force U1 = 0."""
    return (md.n >= md.total + 1
            and (beta - 1) * md.n >= beta * md.total - md.r - 1)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    md: MultiDegree
    beta: int
    computed: Rat
    expected: Rat

    @property
    def ok(self) -> bool:
        return self.computed == self.expected


def check_proven_identities(md: MultiDegree, beta_max: int,
                            tables: CoeffTables | None = None) -> list[IdentityCheck]:
    """Every structure-sum identity with a proof, evaluated exactly:
    the U2 closed form, the beta=1 U1 closed form, the U1 vanishing
    criterion and the four weighted identities tying the mixed sums
    back to U2/U3 and V2/V3."""
    if tables is None:
        tables = tables_for_sums(md, beta_max)
    out = []
    for beta in range(beta_max + 1):
        sv = compute_sums(tables, beta)
        out.append(IdentityCheck("u2-closed-form", md, beta, sv.u2,
                                 u2_lemma(md, beta)))
        if beta == 1:
            out.append(IdentityCheck("u1-degree1", md, beta, sv.u1,
                                     u1_degree1_lemma(md)))
        if u1_vanishing_hypothesis(md, beta):
            out.append(IdentityCheck("u1-vanishing", md, beta, sv.u1,
                                     Fraction(0)))
        e = md.n - 1 - md.r - md.nu * beta
        lin_u, bin_u = weighted_u_sums(tables, beta)
        out.append(IdentityCheck("u-weighted-linear", md, beta, lin_u,
                                 Fraction(e, 2) * sv.u2))
        out.append(IdentityCheck(
            "u-weighted-binomial", md, beta, bin_u,
            Fraction(e * (e - 1), 4) * sv.u2 - Fraction(1, 2) * sv.u3))
        f = 2 * md.n - 1 - md.r - md.nu * beta
        lin_v, bin_v = weighted_v_sums(tables, beta)
        out.append(IdentityCheck("v-weighted-linear", md, beta, lin_v,
                                 Fraction(f, 2) * sv.v2))
        out.append(IdentityCheck(
            "v-weighted-binomial", md, beta, bin_v,
            Fraction(f * (f - 1), 4) * sv.v2 - Fraction(1, 2) * sv.v3))
    return out


# ---------------------------------------------------------------------------
# conjectured formulas (report-only)


def u3_conjectured(md: MultiDegree, beta: int) -> Rat:
    if beta == 0:
        return Fraction(comb(md.n - md.r, 3))
    if beta == 1:
        return -Fraction(comb(md.total - md.r, 3) * md.dd)
    return Fraction(0)


def v1_conjectured(md: MultiDegree, beta: int) -> Rat:
    if beta == 1:
        return -Fraction(md.r * (md.total - 1) * md.dd, 2)
    if beta == 2:
        return Fraction(md.r * (md.total - 1) * md.dd**2, 2)
    return Fraction(0)


def v2_conjectured(md: MultiDegree, beta: int) -> Rat:
    if beta == 0:
        return Fraction(md.r)
    if beta == 1:
        return Fraction(-2 * md.r * md.dd)
    if beta == 2:
        return Fraction(md.r * md.dd**2)
    return Fraction(0)


def v3_conjectured(md: MultiDegree, beta: int) -> Rat:
    n, r, t = md.n, md.r, md.total
    ends = Fraction(6 * n**2 * r - 6 * n * (r**2 + r) + r * (r + 1) * (r + 2), 6)
    if beta == 0:
        return ends
    if beta == 1:
        inner = Fraction((2 * r * t - r**2 - r) * n) \
            - Fraction(3 * (r**2 + r) * t - r * (r + 1) * (r + 2), 3)
        return -inner * md.dd
    if beta == 2:
        return ends * md.dd**2
    return Fraction(0)


def u1_strict_vanishing_conjectured(md: MultiDegree, beta: int) -> bool | None:
    """The conjectured exact criterion for U1 = 0; None when the
    hypothesis n >= |d| does not apply or beta = 0 (where U1 vanishes
    for trivial Kronecker reasons outside the conjecture's content)."""
    if md.n < md.total or beta == 0:
        return None
    return (beta - 1) * md.n >= beta * md.total - md.r - 1


def u1_beta2_conjectured(md: MultiDegree, hj) -> Rat | None:
    """The conjectured beta = 2 closed form.  `hj` maps (j, d) to a
    rational; the symbol h_j(d) has no standard definition, so None
    (skip) is returned when no interpretation is supplied."""
    if hj is None:
        return None
    m = 2 * md.total - md.n - md.r - 2
    if m < 0:
        return Fraction(0)
    inner = [Fraction(-2, j) * sum(Fraction(d**j) * Fraction(hj(j, d))
                                   for d in md.degrees)
             for j in range(1, m + 1)]
    total = Fraction(0)

    def rec(j: int, used: int, term: Rat):
        nonlocal total
        if j > m:
            total += term * comb(2 * md.total - 2 * md.r - 3 - used, m - used)
            return
        k = 0
        while used + j * k <= m:
            rec(j + 1, used + j * k,
                term * inner[j - 1] ** k / factorial(k))
            k += 1

    rec(1, 0, Fraction(1))
    lead = Fraction(md.dfact**2 * (-1) ** (md.n + md.r), 2)
    return lead * total


@dataclass(frozen=True)
class ConjectureCase:
    md: MultiDegree
    beta: int
    expected: Rat | None  # None = skipped (undefined symbol)
    computed: Rat
    expect_nonzero: bool = False  # "iff"-style case: predicted != 0

    @property
    def verdict(self) -> str:
        if self.expect_nonzero:
            return "agree" if self.computed != 0 else "disagree"
        if self.expected is None:
            return "skipped: undefined symbol"
        return "agree" if self.expected == self.computed else "disagree"


@dataclass(frozen=True)
class ConjectureReport:
    conjecture: str
    cases: list[ConjectureCase] = field(default_factory=list)


def evaluate_conjectures(grid, hj=None) -> list[ConjectureReport]:
    """Per-case comparison of brute force against the conjectured
    formulas on a list of (MultiDegree, beta_max) pairs.  Disagreements
    become report rows, never errors."""
    u3 = ConjectureReport("U3")
    u1v = ConjectureReport("U1_vanishing")
    u1b2 = ConjectureReport("U1_beta2")
    v1 = ConjectureReport("V1")
    v2 = ConjectureReport("V2")
    v3 = ConjectureReport("V3")
    for md, beta_max in grid:
        tables = tables_for_sums(md, beta_max)
        for beta in range(beta_max + 1):
            sv = compute_sums(tables, beta)
            u3.cases.append(ConjectureCase(md, beta, u3_conjectured(md, beta), sv.u3))
            v1.cases.append(ConjectureCase(md, beta, v1_conjectured(md, beta), sv.v1))
            v2.cases.append(ConjectureCase(md, beta, v2_conjectured(md, beta), sv.v2))
            v3.cases.append(ConjectureCase(md, beta, v3_conjectured(md, beta), sv.v3))
            strict = u1_strict_vanishing_conjectured(md, beta)
            if strict is True:
                u1v.cases.append(ConjectureCase(md, beta, Fraction(0), sv.u1))
            elif strict is False:
                u1v.cases.append(ConjectureCase(md, beta, None, sv.u1,
                                                expect_nonzero=True))
            if beta == 2:
                expected = u1_beta2_conjectured(md, hj)
                u1b2.cases.append(ConjectureCase(md, beta, expected, sv.u1))
    return [u3, u1v, u1b2, v1, v2, v3]
