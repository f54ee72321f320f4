"""The identity suite: every cross-verification the package promises,
as named exact checks over one geometry.

Shared by the `check` CLI verb and the acceptance tests, with the
q-orders pinned:

* the algebraic L identity to q-order 12;
* dual-route equality (mu, Phi0, Phi1, Theta) to q-order 8;
* regularizability and w-regularity to q-order 8;
* the degree-0 Chern value, three-path consistency, SvR vanishing;
* the double-residue oracle for A(q) to q-order 6;
* the proven structure-sum lemmas for beta <= 3;
* truncation stability and the ct*c convolution identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import MultiDegree
from .hyper import FanoContext
from .invariants import (a_series, chern_degree0_oracle, context_for,
                         invariant_table, svr_difference, type_b)
from .series import QSeries
from .sums import check_proven_identities
from .tables import CoeffTables

#: the standard verification grid (the last geometry has index 1)
GRID: tuple = ((5, (3,)), (6, (3,)), (7, (3,)), (7, (2, 2)), (9, (2, 2)),
               (6, (2, 3)))


def default_grid() -> list[MultiDegree]:
    return [MultiDegree(n, ds) for n, ds in GRID]


@dataclass(frozen=True)
class CheckResult:
    name: str
    geometry: str
    ok: bool
    detail: str = ""


def check_l_identity(md: MultiDegree, order: int = 12) -> bool:
    ctx = FanoContext(md, order)
    L = ctx.L()
    lhs = L.pow(md.n) - QSeries.q(order) * md.dd * L.pow(md.total)
    return (lhs - 1).is_zero()


def check_mu_routes(md: MultiDegree, order: int = 8) -> bool:
    ctx = FanoContext(md, order)
    return ctx.mu("closed").matches(ctx.mu("residue"))


def check_phi_routes(md: MultiDegree, order: int = 8) -> bool:
    ctx = FanoContext(md, order)
    return (ctx.phi0("closed").matches(ctx.phi0("series"))
            and ctx.phi1("closed").matches(ctx.phi1("series")))


def check_theta_routes(md: MultiDegree, order: int = 8) -> bool:
    ctx = FanoContext(md, order)
    return all(ctx.theta(p, lvl, "lemma").matches(ctx.theta(p, lvl, "residue"))
               for p in range(md.n) for lvl in (0, 1))


def check_regularizable(md: MultiDegree, order: int = 8) -> bool:
    """exp(-mu/h) Ft(1/h, q) has no negative h powers."""
    ctx = FanoContext(md, order)
    e = ctx.regularized_fp(0, order + 2)
    return all(exp >= 0
               for b in range(e.order + 1) for exp, _ in e.slice(b).items())


def check_w_regular(md: MultiDegree, order: int = 8) -> bool:
    """F_p has no negative w powers for p <= n-1."""
    ctx = FanoContext(md, order)
    for p in range(md.n):
        fp = ctx.fp_w(p, order)
        if any(exp < 0 for b in range(fp.order + 1)
               for exp, _ in fp.slice(b).items()):
            return False
    return True


def check_degree0(md: MultiDegree) -> bool:
    row = invariant_table(md, max_b=0)[0]
    return row.standard == chern_degree0_oracle(md)


def check_three_path(md: MultiDegree, pad: int = 0) -> bool:
    return all(r.consistent for r in invariant_table(md, pad=pad))


def check_svr_vanishing(md: MultiDegree) -> bool:
    ctx = context_for(md, md.bmax)
    return all(svr_difference(ctx, b) == 0
               for b in range(md.svr_threshold + 1, md.bmax + 1))


def check_a_double_residue(md: MultiDegree, order: int = 6) -> bool:
    ctx = FanoContext(md, order)
    return a_series(ctx, "theta").matches(a_series(ctx, "double_residue"))


def check_type_b_residue_oracle(md: MultiDegree) -> bool:
    """rows route vs honest residues at h = 0 and infinity (nu >= 2)."""
    if md.nu < 2:
        return True
    ctx = context_for(md, md.bmax)
    return all(type_b(ctx, b, "rows") == type_b(ctx, b, "residues")
               for b in range(1, md.bmax + 1))


def check_sum_lemmas(md: MultiDegree, beta_max: int = 3) -> bool:
    return all(c.ok for c in check_proven_identities(md, beta_max))


def check_truncation_stability(md: MultiDegree, extra: int = 2) -> bool:
    return invariant_table(md) == invariant_table(md, pad=extra)


def check_convolution(tables: CoeffTables, stride: int = 1) -> bool:
    md = tables.md
    for p in range(0, tables.p_max + 1, stride):
        for beta in range(tables.beta_max + 1):
            top = p - md.nu * beta
            for l in range(0, top + 1, stride):
                if tables.convolution_defect(p, l, beta) != 0:
                    return False
    return True


def run_geometry_suite(md: MultiDegree, pad: int = 0,
                       tables: CoeffTables | None = None) -> list[CheckResult]:
    """Every check on one geometry.  `tables` overrides the convolution
    check's input (the corruption hook enters through here)."""
    label = md.label()
    if tables is None:
        tables = CoeffTables(md, p_max=md.n, beta_max=3)
    checks = [
        ("l-identity", lambda: check_l_identity(md, 12 + pad)),
        ("mu-dual-route", lambda: check_mu_routes(md, 8 + pad)),
        ("phi-dual-route", lambda: check_phi_routes(md, 8 + pad)),
        ("theta-dual-route", lambda: check_theta_routes(md, 8 + pad)),
        ("regularizability", lambda: check_regularizable(md, 8 + pad)),
        ("w-regularity", lambda: check_w_regular(md, 8 + pad)),
        ("degree0-chern", lambda: check_degree0(md)),
        ("three-path-consistency", lambda: check_three_path(md, pad)),
        ("svr-vanishing", lambda: check_svr_vanishing(md)),
        ("a-double-residue", lambda: check_a_double_residue(md, 6 + pad)),
        ("type-b-residue-oracle", lambda: check_type_b_residue_oracle(md)),
        ("structure-sum-lemmas", lambda: check_sum_lemmas(md, 3)),
        ("truncation-stability", lambda: check_truncation_stability(md)),
        ("convolution-identity", lambda: check_convolution(tables)),
    ]
    return [CheckResult(name, label, bool(fn())) for name, fn in checks]
