"""
Exact univariate algebra over Q: dense polynomials, reduced rational
functions, quadratic extensions Q(x)[w]/(w^2 - Delta), and truncated power
series.  All coefficients are fractions.Fraction; nothing here ever touches
floating point.

Polynomial gcds go through the subresultant PRS over the integers (clear
denominators, run the fraction-free scheme, take the primitive part), which
keeps intermediate coefficient growth tame at the degrees this package
meets (a few hundred at worst).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence


def _lcm(a: int, b: int) -> int:
    return a // int_gcd(a, b) * b


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, coefficients ascending, no trailing zeros."""
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(*ints) -> "Poly":
        """Build from ascending coefficients: Poly.of(1, -2, -3) = 1-2x-3x^2."""
        return Poly.from_coeffs(Fraction(c) for c in ints)

    @staticmethod
    def from_coeffs(coeffs: Iterable) -> "Poly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.from_coeffs(self[k] + other[k] for k in range(n))

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.from_coeffs(self[k] - other[k] for k in range(n))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return P_ZERO
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(tuple(out))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = P_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return P_ZERO
        return Poly(tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        quo = [Fraction(0)] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lead
            quo[k - d] = q
            for j in range(d + 1):
                rem[k - d + j] -= q * other.coeffs[j]
        return Poly.from_coeffs(quo), Poly.from_coeffs(rem)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ArithmeticError(f"{self} not divisible by {other}")
        return q

    def valuation(self) -> int:
        """Order of vanishing at 0 (0 for the zero polynomial, by fiat)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return 0

    def eval(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(1 / self.coeffs[-1])

    def int_clear(self) -> tuple[int, list[int]]:
        """(t, ints) with t > 0 minimal such that t * self has the given
        integer coefficients."""
        t = 1
        for c in self.coeffs:
            t = _lcm(t, c.denominator)
        return t, [int(c * t) for c in self.coeffs]

    def __str__(self) -> str:
        return poly_text(self)

    def __repr__(self) -> str:
        return f"Poly({poly_text(self)})"


P_ZERO = Poly(())
P_ONE = Poly((Fraction(1),))
P_X = Poly((Fraction(0), Fraction(1)))


def poly_text(p: Poly, var: str = "x") -> str:
    if p.is_zero:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            term = str(mag)
        else:
            xs = var if k == 1 else f"{var}^{k}"
            term = xs if mag == 1 else f"{mag}*{xs}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)


def _int_primitive(cs: list[int]) -> list[int]:
    g = 0
    for c in cs:
        g = int_gcd(g, abs(c))
        if g == 1:
            break
    if g > 1:
        cs = [c // g for c in cs]
    if cs and cs[-1] < 0:
        cs = [-c for c in cs]
    return cs


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials: lc(b)^(da-db+1) * a mod b."""
    db = len(b) - 1
    lead = b[-1]
    rem = list(a)
    e = len(a) - len(b) + 1
    while rem and len(rem) - 1 >= db:
        top = rem[-1]
        off = len(rem) - 1 - db
        rem = [lead * r for r in rem]
        for j in range(db + 1):
            rem[off + j] -= top * b[j]
        while rem and rem[-1] == 0:
            rem.pop()
        e -= 1
    if e > 0 and rem:
        f = lead ** e
        rem = [f * r for r in rem]
    return rem


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q, via the subresultant scheme over Z."""
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    a = _int_primitive(f.int_clear()[1])
    b = _int_primitive(g.int_clear()[1])
    if len(a) < len(b):
        a, b = b, a
    gg, h = 1, 1
    while True:
        delta = len(a) - len(b)
        r = _int_pseudo_rem(a, b)
        if not r:
            return Poly.from_coeffs(_int_primitive(b)).monic()
        if len(r) == 1:
            return P_ONE
        divisor = gg * h ** delta
        a, b = b, [c // divisor for c in r]
        gg = a[-1]
        h = gg ** delta // h ** (delta - 1) if delta > 0 else h


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function: gcd(num, den) = 1, den monic and nonzero.

    Equality of reduced forms is structural, so canonical forms double as
    the equality test for closed-form results.
    """
    num: Poly
    den: Poly

    @staticmethod
    def make(num: Poly, den: Poly = P_ONE) -> "RatFunc":
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            return RF_ZERO
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.coeffs[-1]
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        return RatFunc(num, den)

    @staticmethod
    def of(*ints) -> "RatFunc":
        return RatFunc.make(Poly.of(*ints))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        g = poly_gcd(self.den, other.den)
        da = self.den.exact_div(g) if g.degree > 0 else self.den
        db = other.den.exact_div(g) if g.degree > 0 else other.den
        return RatFunc.make(self.num * db + other.num * da, da * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero or other.is_zero:
            return RF_ZERO
        # cross-cancel first: keeps the final gcd small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num.exact_div(g1) if g1.degree > 0 else self.num
        d2 = other.den.exact_div(g1) if g1.degree > 0 else other.den
        n2 = other.num.exact_div(g2) if g2.degree > 0 else other.num
        d1 = self.den.exact_div(g2) if g2.degree > 0 else self.den
        return RatFunc.make(n1 * n2, d1 * d2)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inv()

    def inv(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverting the zero rational function")
        return RatFunc.make(self.den, self.num)

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inv() ** (-k)
        result = RF_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "RatFunc":
        return RatFunc.make(self.num.scale(c), self.den)

    def valuation(self) -> int:
        """Order at x = 0; negative for a pole."""
        if self.is_zero:
            return 0
        return self.num.valuation() - self.den.valuation()

    def __str__(self) -> str:
        return ratfunc_text(self)

    def __repr__(self) -> str:
        return f"RatFunc({ratfunc_text(self)})"


RF_ZERO = RatFunc(P_ZERO, P_ONE)
RF_ONE = RatFunc(P_ONE, P_ONE)
RF_X = RatFunc(P_X, P_ONE)


def ratfunc_int_pair(f: RatFunc) -> tuple[list[int], list[int]]:
    """Integer numerator/denominator coefficient lists, shared content
    stripped, sign fixed so the denominator's lowest coefficient is
    positive."""
    tn, nums = f.num.int_clear()
    td, dens = f.den.int_clear()
    # (nums/tn)/(dens/td) = (td*nums)/(tn*dens); strip shared content
    nn = [td * c for c in nums]
    dd = [tn * c for c in dens]
    g = 0
    for c in nn + dd:
        g = int_gcd(g, abs(c))
    if g > 1:
        nn = [c // g for c in nn]
        dd = [c // g for c in dd]
    low = next((c for c in dd if c != 0), 1)
    if low < 0:
        nn, dd = [-c for c in nn], [-c for c in dd]
    return nn, dd


def ratfunc_text(f: RatFunc, var: str = "x") -> str:
    """Render with integer coefficients, denominators cleared."""
    nn, dd = ratfunc_int_pair(f)
    ns = poly_text(Poly.of(*nn), var)
    if dd == [1]:
        return ns
    return f"({ns})/({poly_text(Poly.of(*dd), var)})"


@dataclass(frozen=True)
class QuadExt:
    """Element a + b*w of Q(x)[w]/(w^2 - disc) for a fixed square-free disc.

    The representation is canonical (disc square-free), so equality is
    componentwise.
    """
    a: RatFunc
    b: RatFunc
    disc: Poly

    @staticmethod
    def rational(a: RatFunc, disc: Poly) -> "QuadExt":
        return QuadExt(a, RF_ZERO, disc)

    @staticmethod
    def root(disc: Poly) -> "QuadExt":
        """The generator w with w^2 = disc."""
        return QuadExt(RF_ZERO, RF_ONE, disc)

    def _check(self, other: "QuadExt") -> None:
        if self.disc != other.disc:
            raise ValueError(
                f"mixing extensions: w^2 = {self.disc} vs {other.disc}")

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    def __add__(self, other: "QuadExt") -> "QuadExt":
        self._check(other)
        return QuadExt(self.a + other.a, self.b + other.b, self.disc)

    def __sub__(self, other: "QuadExt") -> "QuadExt":
        self._check(other)
        return QuadExt(self.a - other.a, self.b - other.b, self.disc)

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b, self.disc)

    def __mul__(self, other: "QuadExt") -> "QuadExt":
        self._check(other)
        delta = RatFunc.make(self.disc)
        return QuadExt(self.a * other.a + self.b * other.b * delta,
                       self.a * other.b + self.b * other.a, self.disc)

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.disc)

    def norm(self) -> RatFunc:
        """a^2 - b^2 * disc, the product with the conjugate."""
        return self.a * self.a - self.b * self.b * RatFunc.make(self.disc)

    def inv(self) -> "QuadExt":
        if self.is_zero:
            raise ZeroDivisionError("inverting zero in the extension field")
        n = self.norm().inv()
        return QuadExt(self.a * n, -self.b * n, self.disc)

    def __truediv__(self, other: "QuadExt") -> "QuadExt":
        return self * other.inv()

    def __pow__(self, k: int) -> "QuadExt":
        if k < 0:
            return self.inv() ** (-k)
        result = QuadExt(RF_ONE, RF_ZERO, self.disc)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_rf(self, f: RatFunc) -> "QuadExt":
        return QuadExt(self.a * f, self.b * f, self.disc)

    def div_root(self) -> "QuadExt":
        """Exact division by w, using 1/w = w/disc."""
        delta = RatFunc.make(self.disc)
        return QuadExt(self.b, self.a / delta, self.disc)

    def __str__(self) -> str:
        return quadext_text(self)

    def __repr__(self) -> str:
        return f"QuadExt({quadext_text(self)})"


def quadext_text(u: QuadExt, var: str = "x") -> str:
    root = f"sqrt({poly_text(u.disc, var)})"
    if u.b.is_zero:
        return ratfunc_text(u.a, var)
    bt = ratfunc_text(u.b, var)
    if "/" not in bt:
        bt = f"({bt})"
    bs = f"{bt}*{root}"
    if u.a.is_zero:
        return bs
    return f"{ratfunc_text(u.a, var)} + {bs}"


@dataclass(frozen=True)
class SeriesQ:
    """Power series truncated at x^order, exact rational coefficients."""
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs: Sequence, order: int) -> "SeriesQ":
        cs = [Fraction(c) for c in coeffs[:order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return SeriesQ(tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def truncate(self, order: int) -> "SeriesQ":
        return SeriesQ.make(self.coeffs, order)

    def __add__(self, other: "SeriesQ") -> "SeriesQ":
        order = min(self.order, other.order)
        return SeriesQ(tuple(self[k] + other[k] for k in range(order + 1)))

    def __sub__(self, other: "SeriesQ") -> "SeriesQ":
        order = min(self.order, other.order)
        return SeriesQ(tuple(self[k] - other[k] for k in range(order + 1)))

    def __mul__(self, other: "SeriesQ") -> "SeriesQ":
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            ci = self[i]
            if ci:
                for j in range(order + 1 - i):
                    out[i + j] += ci * other[j]
        return SeriesQ(tuple(out))

    def scale(self, c) -> "SeriesQ":
        c = Fraction(c)
        return SeriesQ(tuple(c * a for a in self.coeffs))


def poly_series(p: Poly, order: int) -> SeriesQ:
    return SeriesQ.make(p.coeffs, order)


def _series_inverse(den: Poly, order: int) -> list[Fraction]:
    """1/den as a power series; den(0) must be nonzero."""
    d0 = den[0]
    if d0 == 0:
        raise ArithmeticError("series inverse of a polynomial vanishing at 0")
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / d0
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, min(n, den.degree) + 1):
            acc += den[k] * out[n - k]
        out[n] = -acc / d0
    return out


def ratfunc_series(f: RatFunc, order: int) -> SeriesQ:
    """Taylor expansion at 0 of a rational function regular at 0."""
    coeffs, _ = _laurent_parts(f, order, max_pole=0)
    return SeriesQ.make(coeffs, order)


def _laurent_parts(f: RatFunc, order: int, max_pole: int) -> tuple[list[Fraction], int]:
    """Coefficients of x^{-pole} .. x^{order} of f, as (list, pole).

    The pole order is bounded by max_pole; anything deeper raises, because
    the generating functions this package manipulates never carry more than
    an x^-2 prefactor per factor (bound 4 leaves margin for products).
    """
    if f.is_zero:
        return [Fraction(0)] * (order + 1), 0
    vd = f.den.valuation()
    vn = f.num.valuation()
    pole = max(vd - vn, 0)
    if pole > max_pole:
        raise ArithmeticError(
            f"pole of order {pole} at 0 exceeds the supported bound {max_pole}")
    num = Poly(f.num.coeffs[vn:])
    den = Poly(f.den.coeffs[vd:])
    # f = x^{vn-vd} * num/den with den(0) != 0
    offset = vn - vd          # >= -pole
    inv = _series_inverse(den, order + pole)
    n_terms = order + pole + 1
    prod = [Fraction(0)] * n_terms
    for i, c in enumerate(num.coeffs):
        if c and i < n_terms:
            for j in range(n_terms - i):
                prod[i + j] += c * inv[j]
    # shift so index 0 is x^{-pole}
    shift = offset + pole     # >= 0
    out = [Fraction(0)] * n_terms
    for k, c in enumerate(prod):
        if k + shift < n_terms:
            out[k + shift] = c
    return out, pole


def sqrt_series(delta: Poly, order: int) -> SeriesQ:
    """The power series S with S^2 = delta and S(0) = 1.

    >>> sqrt_series(Poly.of(1, -2, -3), 4).coeffs
    (Fraction(1, 1), Fraction(-1, 1), Fraction(-2, 1), Fraction(-2, 1), Fraction(-4, 1))
    """
    if delta[0] != 1:
        raise ValueError("sqrt series needs constant term 1")
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for n in range(1, order + 1):
        acc = delta[n] if n <= delta.degree else Fraction(0)
        for i in range(1, n):
            acc -= out[i] * out[n - i]
        out[n] = acc / 2
    return SeriesQ(tuple(out))


def quadext_series(u: QuadExt, order: int, max_pole: int = 4) -> SeriesQ:
    """Taylor coefficients of a + b*sqrt(disc) at 0 up to the order.

    Each component may have a bounded pole at 0 (the closed forms carry
    1/(2x^2)-style prefactors); the combination must be regular, and a
    surviving negative-power term raises ArithmeticError.
    """
    pa, pole_a = _laurent_parts(u.a, order, max_pole)
    pb, pole_b = _laurent_parts(u.b, order, max_pole)
    pole = max(pole_a, pole_b)
    # align both parts at x^{-pole}
    la = [Fraction(0)] * (pole - pole_a) + pa
    lb = [Fraction(0)] * (pole - pole_b) + pb
    n_terms = order + pole + 1
    la = la[:n_terms] + [Fraction(0)] * (n_terms - len(la))
    lb = lb[:n_terms] + [Fraction(0)] * (n_terms - len(lb))
    root = sqrt_series(u.disc, order + pole)
    comb = list(la)
    for i, c in enumerate(lb):
        if c:
            for j in range(n_terms - i):
                comb[i + j] += c * root[j]
    for k in range(pole):
        if comb[k] != 0:
            raise ArithmeticError(
                f"genuine pole at 0: coefficient {comb[k]} at x^{k - pole}")
    return SeriesQ(tuple(comb[pole:]))
