"""Rational coefficient tables c_{p,l}^{(beta)} and ct_{p,l}^{(beta)}.

The c numbers are read off a generating function: for each beta expand

    (w + beta)^p * prod_k prod_{i=1..d_k*beta} (d_k w + i)
    -----------------------------------------------------
                prod_{j=1..beta} (w + j)^n

as a power series in w.  The ct numbers invert them through the
convolution

    sum_{b1+b2=beta} sum_{k=0}^{p - nu*b1} ct[p,k,b1] c[k,l,b2]
        = delta(beta,0) delta(p,l),   for l <= p - nu*beta,

which pins every entry recursively in beta.  Entries with l < 0 or
p < 0 count as zero; at beta = 0 both tables are Kronecker deltas.
"""

from __future__ import annotations

from fractions import Fraction
from .geometry import MultiDegree
from .series import Rat


class InsufficientCBounds(Exception):
    """A ct recursion step needed a c entry beyond the built bounds."""


class InsufficientBounds(Exception):
    """A consumer asked for table entries beyond the built bounds."""


def _poly_mul(a: list, b: list, cap: int) -> list:
    out = [Fraction(0)] * min(len(a) + len(b) - 1, cap + 1)
    for i, x in enumerate(a):
        if x == 0 or i > cap:
            continue
        for j in range(min(len(b), cap + 1 - i)):
            y = b[j]
            if y != 0:
                out[i + j] += x * y
    return out

def _unit_inverse(a: list, cap: int) -> list:
    b = [Fraction(1) / a[0]]
    for m in range(1, cap + 1):
        s = sum(a[k] * b[m - k] for k in range(1, min(m, len(a) - 1) + 1)
                if a[k] != 0)
        b.append(-s / a[0])
    return b


def _c_base_slice(md: MultiDegree, beta: int, cap: int) -> list:
    """prod_k prod_i (d_k w + i) / prod_j (w + j)^n as a w-series."""
    num = [Fraction(1)]
    for d in md.degrees:
        for i in range(1, d * beta + 1):
            num = _poly_mul(num, [Fraction(i), Fraction(d)], cap)
    den = [Fraction(1)]
    for j in range(1, beta + 1):
        for _ in range(md.n):
            den = _poly_mul(den, [Fraction(j), Fraction(1)], cap)
    return _poly_mul(num, _unit_inverse(den, cap), cap)


class CoeffTables:
    """Both tables for one geometry, built once and shared read-only."""

    __slots__ = ("md", "p_max", "beta_max", "l_max", "_c", "_ct")

    def __init__(self, md: MultiDegree, p_max: int, beta_max: int,
                 l_max: int | None = None):
        if p_max < 0 or beta_max < 0:
            raise ValueError("table bounds must be >= 0")
        self.md = md
        self.p_max = p_max
        self.beta_max = beta_max
        self.l_max = p_max if l_max is None else max(l_max, p_max)
        self._c = {}
        self._ct = {}
        self._build_c()
        self._build_ct()

    def _build_c(self):
        cap = self.l_max
        for beta in range(self.beta_max + 1):
            base = _c_base_slice(self.md, beta, cap)
            row = base
            for p in range(self.p_max + 1):
                self._c[(p, beta)] = tuple(row) + (Fraction(0),) * (cap + 1 - len(row))
                row = _poly_mul(row, [Fraction(beta), Fraction(1)], cap)

    def _build_ct(self):
        nu = self.md.nu
        for beta in range(self.beta_max + 1):
            for p in range(self.p_max + 1):
                top = p - nu * beta
                if top < 0:
                    continue
                vals = []
                for l in range(top + 1):
                    v = Fraction(1) if (beta == 0 and p == l) else Fraction(0)
                    for b1 in range(beta):
                        ct_row = self._ct.get((p, b1))
                        if ct_row is None:
                            continue
                        b2 = beta - b1
                        for k, ck in enumerate(ct_row):
                            if ck != 0:
                                v -= ck * self.c(k, l, b2)
                    vals.append(v)
                self._ct[(p, beta)] = tuple(vals)

    # -- accessors (out-of-range index conventions live here)

    def c(self, p: int, l: int, beta: int) -> Rat:
        if p < 0 or l < 0:
            return Fraction(0)
        if p > self.p_max or beta > self.beta_max or l > self.l_max:
            raise InsufficientCBounds(
                f"c({p},{l},{beta}) beyond built bounds "
                f"(p<={self.p_max}, l<={self.l_max}, beta<={self.beta_max})")
        return self._c[(p, beta)][l]

    def ctilde(self, p: int, l: int, beta: int) -> Rat:
        if p < 0 or l < 0:
            return Fraction(0)
        if p > self.p_max or beta > self.beta_max:
            raise InsufficientBounds(
                f"ct({p},{l},{beta}) beyond built bounds "
                f"(p<={self.p_max}, beta<={self.beta_max})")
        top = p - self.md.nu * beta
        if top < 0:
            return Fraction(0)
        if l > top:
            raise ValueError(
                f"ct({p},{l},{beta}) with l > p - nu*beta is never defined")
        return self._ct[(p, beta)][l]

    def convolution_defect(self, p: int, l: int, beta: int) -> Rat:
        """LHS of the defining convolution minus its Kronecker RHS;
        exactly zero whenever the tables are consistent."""
        nu = self.md.nu
        if l > p - nu * beta:
            raise ValueError("convolution identity needs l <= p - nu*beta")
        s = Fraction(0)
        for b1 in range(beta + 1):
            top = p - nu * b1
            if top < 0:
                continue
            for k in range(top + 1):
                ck = self.ctilde(p, k, b1)
                if ck != 0:
                    s += ck * self.c(k, l, beta - b1)
        want = Fraction(1) if (beta == 0 and p == l) else Fraction(0)
        return s - want

    def with_corrupted_ctilde(self, p: int, l: int, beta: int) -> "CoeffTables":
        """Copy with one ct entry bumped by 1.  Test-harness hook only:
        used to prove the consistency checks actually bite."""
        other = object.__new__(CoeffTables)
        other.md = self.md
        other.p_max = self.p_max
        other.beta_max = self.beta_max
        other.l_max = self.l_max
        other._c = self._c
        ct = dict(self._ct)
        row = list(ct[(p, beta)])
        row[l] += 1
        ct[(p, beta)] = tuple(row)
        other._ct = ct
        return other

