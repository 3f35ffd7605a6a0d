"""
Generating functions for involutions counted by 3412 occurrences.

Let I_r(x) collect the involutions with exactly r occurrences of 3412 and
N_r(x) the same count signed by inversion parity (even minus odd).  Both
satisfy the same kind of recursion: an involution decomposes into a kernel
shape rho plus cell contents, the shape contributing a monomial and the
cells contributing either forced decreasing runs or fresh involutions, so

    I_r = x*I_r + x^2 * sum_{a+b=r} I_a I_b
          + sum_shapes  x^s / ((1-x^2)^d (1-x)^dd) * [compositions of r-c]

and the signed variant swaps in (+x, -x^2) base terms and per-shape weights
(-1)^par * x^s (1+x)^dd / (1+x^2)^(d+dd).  The r = 0 seeds solve quadratics
whose roots live in Q(x)[w], w^2 = 1-2x-3x^2 (resp. u^2 = 1-2x+5x^2), and
peeling the base terms off the higher recursions leaves exact division by w
(resp. u), because 1 - x - 2x^2 I_0 = w and 1 - x + 2x^2 N_0 = u.  Every
step stays in the extension field, so the results are closed forms first
and series second.

E_r and O_r (even / odd counts) are the half-sum and half-difference of
I_r and N_r; they are kept as the pair of closed forms plus the combined
series rather than as elements of a biquadratic field.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    P_ONE,
    Poly,
    QuadExt,
    RatFunc,
    RF_ONE,
    RF_ZERO,
    SeriesQ,
    poly_gcd,
    poly_text,
    quadext_series,
    quadext_text,
    ratfunc_int_pair,
    ratfunc_text,
)
from .kernels import ShapeRecord, shape_catalog

#: w^2 for the plain counts.
DISC_I = Poly.of(1, -2, -3)
#: u^2 for the signed counts.
DISC_N = Poly.of(1, -2, 5)

DEFAULT_ORDER = 40


def _qe_zero(disc: Poly) -> QuadExt:
    return QuadExt(RF_ZERO, RF_ZERO, disc)


def _qe_one(disc: Poly) -> QuadExt:
    return QuadExt(RF_ONE, RF_ZERO, disc)


def I0_closed() -> QuadExt:
    """(1 - x - w)/(2x^2): the avoidance count, regular branch at 0."""
    half_x2 = RatFunc.make(Poly.of(0, 0, 2)).inv()
    return (QuadExt.rational(RatFunc.of(1, -1), DISC_I)
            - QuadExt.root(DISC_I)).scale_rf(half_x2)


def N0_closed() -> QuadExt:
    """(x - 1 + u)/(2x^2): the signed avoidance count, N_0(0) = 1."""
    half_x2 = RatFunc.make(Poly.of(0, 0, 2)).inv()
    return (QuadExt.rational(RatFunc.of(-1, 1), DISC_N)
            + QuadExt.root(DISC_N)).scale_rf(half_x2)


def composition_sum(table: list[QuadExt], f: int, k: int, disc: Poly) -> QuadExt:
    """Sum over ordered compositions k = r_1 + ... + r_f of prod table[r_j].

    Equivalently [y^k] (sum_j table[j] y^j)^f, computed by f-fold truncated
    convolution; the cells are linearly ordered and distinguishable, which
    is why compositions rather than partitions."""
    row = [_qe_one(disc)] + [_qe_zero(disc)] * k
    for _ in range(f):
        new = []
        for m in range(k + 1):
            acc = _qe_zero(disc)
            for j in range(min(m, len(table) - 1) + 1):
                acc = acc + row[m - j] * table[j]
            new.append(acc)
        row = new
    return row[k]


def plain_prefactor(rec: ShapeRecord) -> RatFunc:
    """x^s / ((1-x^2)^d (1-x)^dd): kernel entries, mirrored decreasing
    pairs, and decreasing diagonal runs."""
    return RatFunc.make(
        P_ONE.shift(rec.s),
        Poly.of(1, 0, -1) ** rec.d * Poly.of(1, -1) ** rec.dd)


def signed_prefactor(rec: ShapeRecord) -> RatFunc:
    """(-1)^par21 x^s (1+x)^dd / (1+x^2)^(d+dd): a decreasing run of length
    k carries sign (-1)^(k(k-1)/2), whose generating function is
    (1+x)/(1+x^2), and a mirrored pair of runs carries (-1)^k."""
    sign = -1 if rec.parity21 else 1
    return RatFunc.make(
        (P_ONE.shift(rec.s) * Poly.of(1, 1) ** rec.dd).scale(sign),
        Poly.of(1, 0, 1) ** (rec.d + rec.dd))


def shape_contribution(rec: ShapeRecord, r: int, table: list[QuadExt]) -> QuadExt:
    """One shape's term of the plain recursion at level r.

    table holds I_0 .. I_{r-c} as extension-field elements.
    """
    if not 1 <= rec.c <= r:
        raise ValueError(f"shape {rec.shape} has capacity {rec.c}, not in 1..{r}")
    return composition_sum(table, rec.f, r - rec.c,
                           DISC_I).scale_rf(plain_prefactor(rec))


def signed_shape_contribution(rec: ShapeRecord, r: int,
                              table: list[QuadExt]) -> QuadExt:
    """One shape's term of the signed recursion at level r."""
    if not 1 <= rec.c <= r:
        raise ValueError(f"shape {rec.shape} has capacity {rec.c}, not in 1..{r}")
    return composition_sum(table, rec.f, r - rec.c,
                           DISC_N).scale_rf(signed_prefactor(rec))


@dataclass(frozen=True)
class GFResult:
    r: int
    kind: str                  # one of I, N, E, O
    closed: QuadExt | tuple[QuadExt, QuadExt]  # E/O keep the (I, N) pair
    series: SeriesQ

    def coefficient(self, n: int) -> Fraction:
        return self.series[n]

    def to_dict(self, style_paper: str | None = None) -> dict:
        if isinstance(self.closed, QuadExt):
            canonical = quadext_text(self.closed)
        else:
            canonical = (f"(1/2)*[{quadext_text(self.closed[0])}] "
                         f"+ (1/2 if E else -1/2)*[{quadext_text(self.closed[1])}]")
        return {
            "r": self.r,
            "kind": self.kind,
            "closed_canonical": canonical,
            "closed_paper": style_paper,
            "series": [str(c) for c in self.series.coeffs],
            "order": self.series.order,
        }


class GenfunEngine:
    """Computes I_r, N_r, E_r, O_r exactly for r up to a chosen bound.

    The shape catalog is built once (or injected, e.g. for fault-injection
    tests) and the per-level recursions are solved bottom-up; ordered
    composition sums are shared across shapes through a memoized table of
    truncated powers.
    """

    def __init__(self, r_max: int, order: int = DEFAULT_ORDER,
                 catalog: list[ShapeRecord] | None = None, threads: int = 1):
        if r_max < 0:
            raise ValueError("r_max must be nonnegative")
        self.r_max = r_max
        self.order = order
        if catalog is None:
            catalog = shape_catalog(r_max, threads=threads) if r_max >= 1 else []
        self.catalog = catalog
        self._I: list[QuadExt] = [I0_closed()]
        self._N: list[QuadExt] = [N0_closed()]
        # _pow[side][f] = truncated coefficient list of (sum_j table_j y^j)^f
        self._pow: dict[tuple[str, int], list[QuadExt]] = {}

    # -- closed forms ------------------------------------------------------

    def I_closed(self, r: int) -> QuadExt:
        self._require(r)
        while len(self._I) <= r:
            self._I.append(self._compute_Ir(len(self._I)))
        return self._I[r]

    def N_closed(self, r: int) -> QuadExt:
        self._require(r)
        while len(self._N) <= r:
            self._N.append(self._compute_Nr(len(self._N)))
        return self._N[r]

    def _require(self, r: int) -> None:
        if r > self.r_max:
            raise ValueError(f"engine was built for r <= {self.r_max}")

    def _comp(self, side: str, f: int, k: int) -> QuadExt:
        """[y^k] of the f-th power of the generating table, memoized."""
        disc = DISC_I if side == "I" else DISC_N
        table = self._I if side == "I" else self._N
        row = self._pow.setdefault((side, f), [])
        while len(row) <= k:
            m = len(row)
            if f == 0:
                row.append(_qe_one(disc) if m == 0 else _qe_zero(disc))
            elif f == 1:
                row.append(table[m])
            else:
                acc = _qe_zero(disc)
                for j in range(m + 1):
                    acc = acc + self._comp(side, f - 1, m - j) * table[j]
                row.append(acc)
        return row[k]

    def _kernel_terms(self, side: str, r: int) -> QuadExt:
        disc = DISC_I if side == "I" else DISC_N
        prefactor = plain_prefactor if side == "I" else signed_prefactor
        total = _qe_zero(disc)
        for rec in self.catalog:
            if rec.c > r:
                continue
            comp = self._comp(side, rec.f, r - rec.c)
            total = total + comp.scale_rf(prefactor(rec))
        return total

    def _compute_Ir(self, r: int) -> QuadExt:
        """Solve level r of the plain recursion by exact division by w."""
        x2 = RatFunc.of(0, 0, 1)
        cross = _qe_zero(DISC_I)
        for a in range(1, r):
            cross = cross + self._I[a] * self._I[r - a]
        rhs = cross.scale_rf(x2) + self._kernel_terms("I", r)
        return rhs.div_root()

    def _compute_Nr(self, r: int) -> QuadExt:
        """Signed variant: the 21-shape base term flips the sign of x^2."""
        x2 = RatFunc.of(0, 0, 1)
        cross = _qe_zero(DISC_N)
        for a in range(1, r):
            cross = cross + self._N[a] * self._N[r - a]
        rhs = cross.scale_rf(-x2) + self._kernel_terms("N", r)
        return rhs.div_root()

    # -- results -----------------------------------------------------------

    def result(self, kind: str, r: int) -> GFResult:
        if kind == "I":
            closed = self.I_closed(r)
            return GFResult(r, "I", closed, quadext_series(closed, self.order))
        if kind == "N":
            closed = self.N_closed(r)
            return GFResult(r, "N", closed, quadext_series(closed, self.order))
        if kind in ("E", "O"):
            ci, cn = self.I_closed(r), self.N_closed(r)
            si = quadext_series(ci, self.order)
            sn = quadext_series(cn, self.order)
            comb = (si + sn) if kind == "E" else (si - sn)
            return GFResult(r, kind, (ci, cn), comb.scale(Fraction(1, 2)))
        raise ValueError(f"unknown kind {kind!r}")

    def all_results(self, kinds: str = "INEO") -> list[GFResult]:
        return [self.result(kind, r)
                for r in range(self.r_max + 1) for kind in kinds]


# -- rendering ---------------------------------------------------------------

_CLEARING = {"I": (Poly.of(1, 0, -1), Poly.of(1, -1)),   # for F and G
             "N": (Poly.of(1, 0, 1), Poly.of(1, 0, 1))}  # for P and Q


def _cleared_text(f: RatFunc, family: Poly, name: str) -> str | None:
    """Render f as '(den)*name = num' with the minimal clearing denominator.

    Returns None if the reduced denominator is not a product of factors of
    the expected family, which would mean the closed form left the shape
    the corollaries promise."""
    probe = f.den
    while probe.degree > 0:
        g = poly_gcd(probe, family)
        if g.degree == 0:
            return None
        probe = probe.exact_div(g)
    nn, dd = ratfunc_int_pair(f)
    num_text = poly_text(Poly.of(*nn))
    if dd == [1]:
        return f"{name}(x) = {num_text}"
    return f"({poly_text(Poly.of(*dd))})*{name}(x) = {num_text}"


def paper_style_pair(closed: QuadExt, r: int, kind: str) -> tuple[RatFunc, RatFunc]:
    """Split a closed form into the printed (F, G) or (P, Q) pair:
    value = F/(2x^2) + G/(2x^2) * sqrt(disc)^(1-2r)."""
    two_x2 = RatFunc.make(Poly.of(0, 0, 2))
    delta = RatFunc.make(closed.disc)
    return closed.a * two_x2, closed.b * two_x2 * delta ** r


def emit_closed_form(g: GFResult, style: str = "canonical") -> str:
    """Text rendering of a result's closed form.

    The paper style factors out 1/(2x^2) and the root power and prints the
    polynomial pair with its clearing factors; when the factoring does not
    terminate it falls back to canonical with a warning line.
    """
    if style not in ("canonical", "paper"):
        raise ValueError(f"unknown style {style!r}")
    if isinstance(g.closed, tuple):
        ci, cn = g.closed
        sign = "+" if g.kind == "E" else "-"
        return (f"{g.kind}_{g.r} = 1/2*[ {quadext_text(ci)} ] "
                f"{sign} 1/2*[ {quadext_text(cn)} ]")
    if style == "canonical":
        return f"{g.kind}_{g.r} = {quadext_text(g.closed)}"
    first, second = paper_style_pair(g.closed, g.r, g.kind)
    names = ("F", "G") if g.kind == "I" else ("P", "Q")
    fam_first, fam_second = _CLEARING[g.kind]
    root = poly_text(g.closed.disc)
    exp = 1 - 2 * g.r
    power = f"^({exp})" if exp != 1 else ""
    lines = [f"{g.kind}_{g.r} = ({names[0]}(x) + {names[1]}(x)"
             f"*sqrt({root}){power})/(2*x^2)"]
    t1 = _cleared_text(first, fam_first, names[0])
    t2 = _cleared_text(second, fam_second, names[1])
    if t1 is None or t2 is None:
        return (f"{g.kind}_{g.r}: no finite clearing factor; canonical form: "
                f"{quadext_text(g.closed)}")
    lines.append(t1)
    lines.append(t2)
    return "\n".join(lines)


def results_to_json(results: list[GFResult], config: dict) -> str:
    """Serialize results with the config and a payload hash embedded."""
    payload = []
    for g in results:
        paper = None
        if isinstance(g.closed, QuadExt):
            paper = emit_closed_form(g, "paper")
        payload.append(g.to_dict(style_paper=paper))
    body = json.dumps(payload, separators=(",", ":"), sort_keys=True)
    digest = hashlib.sha256(body.encode()).hexdigest()
    doc = {"config": config, "content_hash": f"sha256:{digest}",
           "results": payload}
    return json.dumps(doc, indent=2, sort_keys=True)
