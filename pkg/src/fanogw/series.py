"""Exact truncated power series and windowed Laurent series over Q.

All coefficients are `fractions.Fraction`; there are no floats and no
rounding anywhere.  Truncation orders and exponent windows are explicit
constructor data, never global state.  A coefficient is only reported
when it is provably exact: reading past a window raises WindowUnderflow
instead of returning a silent zero.

Two series types:

* QSeries -- univariate power series in q, truncated at an explicit
  order B (coefficients of q^{B+1} and beyond are unknown).
* BiSeries -- series in q whose q^beta coefficients are Laurent
  polynomials in one auxiliary variable (w or hbar).  Each slice carries
  the largest auxiliary exponent that is exactly known; multiplication
  narrows these bounds conservatively.

Everything is immutable; operations are pure functions, safe to share
across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Rat = Fraction

#: sentinel: "this slice is known exactly at every exponent"
INF_EXP = 10**9


class ZeroConstantTerm(ArithmeticError):
    """Inversion of a power series with vanishing constant term."""


class BadConstantTerm(ArithmeticError):
    """log/pow need constant term 1; exp needs constant term 0."""


class NotInvertible(ArithmeticError):
    """BiSeries whose q^0 slice is not a unit (times a monomial)."""


class WindowUnderflow(ArithmeticError):
    """A coefficient outside the exact window was requested."""


def _rat(x) -> Rat:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# univariate power series


class QSeries:
    """Power series in q with exact rational coefficients, truncated at
    an explicit order.  Binary operations truncate at the smaller order
    of the two operands."""

    __slots__ = ("coeffs",)

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = [_rat(c) for c in coeffs][: order + 1]
        cs.extend(Fraction(0) for _ in range(order + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("QSeries is immutable")

    # -- construction helpers

    @staticmethod
    def zero(order: int) -> "QSeries":
        return QSeries(order)

    @staticmethod
    def one(order: int) -> "QSeries":
        return QSeries(order, (1,))

    @staticmethod
    def q(order: int) -> "QSeries":
        return QSeries(order, (0, 1))

    # -- basic queries

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Rat:
        """Coefficient of q^k; k beyond the truncation order is unknown."""
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise WindowUnderflow(
                f"coefficient of q^{k} unknown at truncation order {self.order}")
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def matches(self, other: "QSeries") -> bool:
        """Exact equality on the common truncation order."""
        b = min(self.order, other.order)
        return self.coeffs[: b + 1] == other.coeffs[: b + 1]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise WindowUnderflow(
                f"cannot extend truncation order {self.order} to {order}")
        return QSeries(order, self.coeffs)

    # -- ring operations

    def __add__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return QSeries(self.order,
                           (self.coeffs[0] + _rat(other),) + self.coeffs[1:])
        b = min(self.order, other.order)
        return QSeries(b, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.order, [-x for x in self.coeffs])

    def __sub__(self, other) -> "QSeries":
        return self + (-other if isinstance(other, QSeries) else -_rat(other))

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            c = _rat(other)
            return QSeries(self.order, [c * x for x in self.coeffs])
        b = min(self.order, other.order)
        out = [Fraction(0)] * (b + 1)
        for i, x in enumerate(self.coeffs[: b + 1]):
            if x == 0:
                continue
            for j in range(b + 1 - i):
                y = other.coeffs[j]
                if y != 0:
                    out[i + j] += x * y
        return QSeries(b, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QSeries({self.order}, {list(self.coeffs)!r})"

    # -- series-specific operations

    def inv(self) -> "QSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroConstantTerm("cannot invert a series with a(0) = 0")
        b = [Fraction(1) / a0]
        for m in range(1, self.order + 1):
            s = sum(self.coeffs[k] * b[m - k]
                    for k in range(1, m + 1) if self.coeffs[k] != 0)
            b.append(-s / a0)
        return QSeries(self.order, b)

    def deriv(self) -> "QSeries":
        """d/dq; the truncation order drops by one (floored at 0)."""
        if self.order == 0:
            return QSeries(0)
        return QSeries(self.order - 1,
                       [(k + 1) * c for k, c in enumerate(self.coeffs[1:])])

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (k >= 0); known order grows by k."""
        if k < 0:
            raise ValueError("shift exponent must be >= 0")
        return QSeries(self.order + k, (0,) * k + self.coeffs)

    def log(self) -> "QSeries":
        if self.coeffs[0] != 1:
            raise BadConstantTerm("log needs constant term 1")
        t = self - 1  # valuation >= 1, so powers terminate
        out = QSeries.zero(self.order)
        tk = QSeries.one(self.order)
        for k in range(1, self.order + 1):
            tk = tk * t
            out = out + tk * Fraction((-1) ** (k + 1), k)
        return out

    def exp(self) -> "QSeries":
        if self.coeffs[0] != 0:
            raise BadConstantTerm("exp needs constant term 0")
        out = QSeries.one(self.order)
        tk = QSeries.one(self.order)
        fact = 1
        for k in range(1, self.order + 1):
            tk = tk * self
            fact *= k
            out = out + tk * Fraction(1, fact)
        return out

    def pow(self, alpha) -> "QSeries":
        """self**alpha.  Integer alpha needs only an invertible constant
        term (for alpha < 0); fractional alpha needs constant term 1 and
        goes through exp(alpha*log)."""
        a = _rat(alpha)
        if a.denominator == 1:
            return self._int_pow(a.numerator)
        if self.coeffs[0] != 1:
            raise BadConstantTerm("fractional power needs constant term 1")
        return (self.log() * a).exp()

    def __pow__(self, alpha) -> "QSeries":
        return self.pow(alpha)

    def _int_pow(self, e: int) -> "QSeries":
        base = self.inv() if e < 0 else self
        e = abs(e)
        out = QSeries.one(self.order)
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out


# ---------------------------------------------------------------------------
# Laurent polynomials (single q-degree slices)


class LaurentPoly:
    """Laurent polynomial in one variable: exponents below `lo` are
    exactly zero.  Standalone instances are complete objects; inside a
    BiSeries the enclosing window says how far up the slice is exact."""

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int, coeffs: Iterable = ()):
        cs = [_rat(c) for c in coeffs]
        # trim zero margins so `lo` doubles as a tight support bound
        while cs and cs[0] == 0:
            cs.pop(0)
            lo += 1
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "lo", lo if cs else 0)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(0, ())

    @property
    def hi(self) -> int:
        """Largest exponent with a stored coefficient (lo-1 when zero)."""
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def support_lo(self) -> int | None:
        return self.lo if self.coeffs else None

    def coeff(self, e: int) -> Rat:
        if self.lo <= e <= self.hi:
            return self.coeffs[e - self.lo]
        return Fraction(0)

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.lo + i, c

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return LaurentPoly(lo, [self.coeff(e) + other.coeff(e)
                                for e in range(lo, hi + 1)])

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = _rat(other)
            if c == 0:
                return LaurentPoly.zero()
            return LaurentPoly(self.lo, [c * x for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                if y != 0:
                    out[i + j] += x * y
        return LaurentPoly(self.lo + other.lo, out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by aux^k (any sign)."""
        return LaurentPoly(self.lo + k, self.coeffs)

    def cut_above(self, hi: int) -> "LaurentPoly":
        """Drop all exponents above hi."""
        if self.hi <= hi:
            return self
        n = hi - self.lo + 1
        return LaurentPoly(self.lo, self.coeffs[:n]) if n > 0 else LaurentPoly.zero()

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly)
                and self.lo == other.lo and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.lo, self.coeffs))

    def __repr__(self) -> str:
        terms = ", ".join(f"{e}: {c}" for e, c in self.items()) or "0"
        return f"LaurentPoly{{{terms}}}"


# ---------------------------------------------------------------------------
# bivariate series: q-power series of Laurent slices


def _slice_support_lo(poly: LaurentPoly, hi: int) -> int:
    # certified lower bound on the true support: everything <= hi is known
    s = poly.support_lo()
    return s if s is not None else (hi + 1 if hi < INF_EXP else INF_EXP)


class BiSeries:
    """Truncated series in q whose q^beta coefficient is a Laurent
    polynomial in the auxiliary variable.  `his[beta]` is the largest
    auxiliary exponent at which slice beta is exactly known (INF_EXP for
    completely known slices); reads above it raise WindowUnderflow."""

    __slots__ = ("slices", "his")

    def __init__(self, slices: Iterable[LaurentPoly], his: Iterable[int] | None = None):
        sl = tuple(slices)
        if not sl:
            raise ValueError("need at least the q^0 slice")
        if his is None:
            hs = tuple(INF_EXP for _ in sl)
        else:
            hs = tuple(his)
        if len(hs) != len(sl):
            raise ValueError("slice/window length mismatch")
        cut = []
        for p, h in zip(sl, hs):
            cut.append(p if h >= p.hi else p.cut_above(h))
        object.__setattr__(self, "slices", tuple(cut))
        object.__setattr__(self, "his", hs)

    def __setattr__(self, name, value):
        raise AttributeError("BiSeries is immutable")

    @staticmethod
    def one(order: int) -> "BiSeries":
        return BiSeries([LaurentPoly(0, (1,))] + [LaurentPoly.zero()] * order)

    @staticmethod
    def zero(order: int) -> "BiSeries":
        return BiSeries([LaurentPoly.zero()] * (order + 1))

    @property
    def order(self) -> int:
        return len(self.slices) - 1

    @property
    def window_lo(self) -> int:
        """Global lower exponent bound (guarantee, not truncation)."""
        los = [s.lo for s in self.slices if not s.is_zero()]
        return min(los) if los else 0

    @property
    def window_hi(self) -> int:
        """Largest exponent exact in every slice."""
        return min(self.his)

    def slice(self, beta: int) -> LaurentPoly:
        if not 0 <= beta <= self.order:
            raise WindowUnderflow(f"q^{beta} slice beyond truncation order {self.order}")
        return self.slices[beta]

    def slice_hi(self, beta: int) -> int:
        return self.his[beta]

    def coeff(self, beta: int, e: int) -> Rat:
        """Exact coefficient of q^beta aux^e."""
        if e > self.his[beta]:
            raise WindowUnderflow(
                f"aux^{e} of q^{beta} slice outside exact window (hi={self.his[beta]})")
        return self.slice(beta).coeff(e)

    def coeff_of_aux(self, e: int) -> QSeries:
        """The QSeries of aux^e coefficients across q-degrees."""
        return QSeries(self.order, [self.coeff(b, e) for b in range(self.order + 1)])

    def residue(self) -> QSeries:
        """Coefficient of aux^{-1} across q-degrees."""
        return self.coeff_of_aux(-1)

    def truncate(self, order: int) -> "BiSeries":
        if order > self.order:
            raise WindowUnderflow(
                f"cannot extend q-order {self.order} to {order}")
        return BiSeries(self.slices[: order + 1], self.his[: order + 1])

    def require_window(self, hi: int) -> "BiSeries":
        """Assert every slice is exact up to aux^hi, then cut to that
        uniform window; fails hard rather than padding with zeros."""
        for b, h in enumerate(self.his):
            if h < hi:
                raise WindowUnderflow(
                    f"slice q^{b} exact only to aux^{h}, needed aux^{hi}")
        return BiSeries([s.cut_above(hi) for s in self.slices],
                        [hi] * (self.order + 1))

    # -- arithmetic

    def __add__(self, other) -> "BiSeries":
        if not isinstance(other, BiSeries):
            other = BiSeries.one(self.order) * _rat(other)
        n = min(self.order, other.order)
        sl = [self.slices[b] + other.slices[b] for b in range(n + 1)]
        hs = [min(self.his[b], other.his[b]) for b in range(n + 1)]
        return BiSeries(sl, hs)

    __radd__ = __add__

    def __neg__(self) -> "BiSeries":
        return BiSeries([-s for s in self.slices], self.his)

    def __sub__(self, other) -> "BiSeries":
        return self + (-other if isinstance(other, BiSeries) else -_rat(other))

    def __rsub__(self, other) -> "BiSeries":
        return (-self) + other

    def scale(self, c) -> "BiSeries":
        return BiSeries([s * c for s in self.slices], self.his)

    def shift_aux(self, k: int) -> "BiSeries":
        his = [h if h >= INF_EXP else h + k for h in self.his]
        return BiSeries([s.shift(k) for s in self.slices], his)

    def shift_q(self, k: int) -> "BiSeries":
        """Multiply by q^k; the new low slices are exactly zero."""
        if k < 0:
            raise ValueError("shift exponent must be >= 0")
        sl = [LaurentPoly.zero()] * k + list(self.slices)
        hs = [INF_EXP] * k + list(self.his)
        return BiSeries(sl, hs)

    def __mul__(self, other) -> "BiSeries":
        if not isinstance(other, BiSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        sl, hs = [], []
        for b in range(n + 1):
            acc = LaurentPoly.zero()
            h = INF_EXP
            for b1 in range(b + 1):
                a_p, a_h = self.slices[b1], self.his[b1]
                b_p, b_h = other.slices[b - b1], other.his[b - b1]
                acc = acc + a_p * b_p
                pair = min(a_h + _slice_support_lo(b_p, b_h),
                           b_h + _slice_support_lo(a_p, a_h))
                h = min(h, min(pair, INF_EXP))
            sl.append(acc)
            hs.append(h)
        return BiSeries(sl, hs)

    __rmul__ = __mul__

    def inv(self, hi: int | None = None) -> "BiSeries":
        """Inverse of a series whose q^0 slice is a monomial times a
        unit; the monomial is factored out, per the exact-window rules.

        `hi` requests the exact window of the result; it is mandatory
        when the input is fully known (the inverse expansion is infinite
        and must be bounded somewhere)."""
        s0 = self.slices[0]
        m = s0.support_lo()
        if m is None:
            raise NotInvertible("q^0 slice is zero within its window")
        a = self.shift_aux(-m) if m else self  # unit at exponent 0
        cap = None if hi is None else hi + m
        top0 = a.his[0] if cap is None else min(a.his[0], cap)
        if top0 >= INF_EXP:
            raise WindowUnderflow(
                "inverting a fully-known series needs an explicit window")
        inv0 = _invert_unit_slice(a.slices[0], top0)
        out_sl = [inv0]
        out_hs = [top0]
        for b in range(1, self.order + 1):
            acc = LaurentPoly.zero()
            h = INF_EXP
            for j in range(1, b + 1):
                u_p, u_h = a.slices[j], a.his[j]
                v_p, v_h = out_sl[b - j], out_hs[b - j]
                acc = acc + u_p * v_p
                pair = min(u_h + _slice_support_lo(v_p, v_h),
                           v_h + _slice_support_lo(u_p, u_h))
                h = min(h, pair, INF_EXP)
            pair = min(h + _slice_support_lo(inv0, top0),
                       top0 + _slice_support_lo(acc, h))
            h = min(h, pair, INF_EXP)
            if cap is not None:
                h = min(h, cap)
            out_sl.append((-acc) * inv0)
            out_hs.append(h)
        res = BiSeries(out_sl, out_hs)
        return res.shift_aux(-m) if m else res

    def apply_D(self, shift: int) -> "BiSeries":
        """The operator 1 + aux^shift * q d/dq (shift = -1 in the w
        presentation, +1 in the hbar presentation)."""
        sl, hs = [self.slices[0]], [self.his[0]]
        for b in range(1, self.order + 1):
            extra = self.slices[b].shift(shift) * b
            sl.append(self.slices[b] + extra)
            h = self.his[b]
            if h < INF_EXP:
                h = min(h, h + shift)
            hs.append(h)
        return BiSeries(sl, hs)

    def log(self) -> "BiSeries":
        """log of a series with q^0 slice exactly 1."""
        s0 = self.slices[0]
        if not (s0.coeffs == (Fraction(1),) and s0.lo == 0):
            raise BadConstantTerm("BiSeries log needs q^0 slice 1")
        t = self - BiSeries.one(self.order)
        out = BiSeries.zero(self.order)
        tk = BiSeries.one(self.order)
        for k in range(1, self.order + 1):
            tk = tk * t
            out = out + tk.scale(Fraction((-1) ** (k + 1), k))
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, BiSeries)
                and self.slices == other.slices and self.his == other.his)

    def __hash__(self):
        return hash((self.slices, self.his))

    def __repr__(self) -> str:
        rows = "; ".join(f"q^{b}: {s!r}" for b, s in enumerate(self.slices))
        return f"BiSeries[{rows}]"


def _invert_unit_slice(poly: LaurentPoly, top: int) -> LaurentPoly:
    """Inverse of a Laurent slice with unit lowest coefficient at
    exponent 0, expanded up to exponent `top` (a finite bound)."""
    if poly.lo != 0 or not poly.coeffs or poly.coeffs[0] == 0:
        raise NotInvertible("slice is not a unit at exponent 0")
    if top < 0:
        return LaurentPoly.zero()
    a = [poly.coeff(e) for e in range(top + 1)]
    b = [Fraction(1) / a[0]]
    for m in range(1, top + 1):
        s = sum(a[k] * b[m - k] for k in range(1, m + 1) if a[k] != 0)
        b.append(-s / a[0])
    return LaurentPoly(0, b)
