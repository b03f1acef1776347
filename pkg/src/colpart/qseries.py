"""Truncated power series in a, b, c, d, q with exact integer coefficients.

Monomials are keyed by exponent tuples ``(u, v, w, t, n)`` for
``a^u b^v c^w d^t q^n``; terms with ``n > qmax`` are dropped.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping

Key = tuple[int, int, int, int, int]
_VARS = "abcd"


class SeriesError(ValueError):
    pass


class TruncatedSeries:
    __slots__ = ("qmax", "coeffs")

    def __init__(self, qmax: int, coeffs: Mapping[Key, int] | None = None):
        if qmax < 0:
            raise SeriesError("qmax must be non-negative")
        self.qmax = qmax
        self.coeffs: dict[Key, int] = {}
        for key, c in (coeffs or {}).items():
            if len(key) != 5 or min(key) < 0:
                raise SeriesError(f"bad exponent tuple {key}")
            if c and key[4] <= qmax:
                self.coeffs[tuple(key)] = c

    @classmethod
    def one(cls, qmax: int) -> TruncatedSeries:
        return cls(qmax, {(0, 0, 0, 0, 0): 1})

    @classmethod
    def monomial(cls, qmax: int, n: int = 0, coef: int = 1, *, a=0, b=0, c=0, d=0) -> TruncatedSeries:
        return cls(qmax, {(a, b, c, d, n): coef})

    @classmethod
    def from_q(cls, qmax: int, coeffs: Iterable[int]) -> TruncatedSeries:
        """Series in q alone from a dense coefficient list."""
        return cls(qmax, {(0, 0, 0, 0, n): c for n, c in enumerate(coeffs)})

    def _check(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"cannot combine series with {type(other).__name__}")
        if other.qmax != self.qmax:
            raise SeriesError(f"qmax mismatch: {self.qmax} vs {other.qmax}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return TruncatedSeries(self.qmax, out)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.qmax, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other: TruncatedSeries | int) -> TruncatedSeries:
        if isinstance(other, int):
            return TruncatedSeries(self.qmax, {k: c * other for k, c in self.coeffs.items()})
        self._check(other)
        qmax = self.qmax
        out: dict[Key, int] = {}
        for (u1, v1, w1, t1, n1), c1 in self.coeffs.items():
            for (u2, v2, w2, t2, n2), c2 in other.coeffs.items():
                n = n1 + n2
                if n > qmax:
                    continue
                key = (u1 + u2, v1 + v2, w1 + w2, t1 + t2, n)
                out[key] = out.get(key, 0) + c1 * c2
        return TruncatedSeries(qmax, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.qmax == other.qmax and self.coeffs == other.coeffs

    def __getitem__(self, key: Key) -> int:
        return self.coeffs.get(tuple(key), 0)

    def q_coefficients(self) -> list[int]:
        """Coefficients of q^0..q^qmax after setting a = b = c = d = 1."""
        out = [0] * (self.qmax + 1)
        for k, c in self.coeffs.items():
            out[k[4]] += c
        return out

    def restrict(self, max_exp: int) -> TruncatedSeries:
        """Drop monomials with any of u, v, w, t above ``max_exp``."""
        return TruncatedSeries(self.qmax, {k: c for k, c in self.coeffs.items() if max(k[:4]) <= max_exp})

    def terms(self) -> Iterator[tuple[Key, int]]:
        return iter(sorted(self.coeffs.items(), key=lambda kc: (kc[0][4], kc[0][:4])))

    def __repr__(self) -> str:
        return f"TruncatedSeries(qmax={self.qmax}, {self.format() or '0'})"

    def format(self) -> str:
        """Sorted monomial list ``coef·a^u b^v c^w d^t q^n`` joined by ' + '."""
        out = []
        for (u, v, w, t, n), c in self.terms():
            mono = " ".join(f"{x}^{e}" for x, e in zip(_VARS + "q", (u, v, w, t, n)) if e)
            out.append(f"{c}·{mono}" if mono else str(c))
        return " + ".join(out)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "w", "t", "n", "coef"])
        for key, c in self.terms():
            w.writerow([*key, c])
        return buf.getvalue()


def product_side(qmax: int, colors: str = "abcd") -> TruncatedSeries:
    """Prod over x in colors of (-x q; q)_inf, truncated at q^qmax."""
    series = TruncatedSeries.one(qmax)
    for i, x in enumerate(_VARS):
        if x not in colors:
            continue
        exps = [0, 0, 0, 0]
        exps[i] = 1
        for m in range(1, qmax + 1):
            factor = TruncatedSeries(qmax, {(0, 0, 0, 0, 0): 1, (*exps, m): 1})
            series = series * factor
    return series


# --- q-only helpers -------------------------------------------------------------
# identity checks only involve q, so they run on dense lists and wrap at the end.


def _qmul(x: list[int], y: list[int], qmax: int) -> list[int]:
    out = [0] * (qmax + 1)
    for i, a in enumerate(x):
        if a:
            for j in range(qmax + 1 - i):
                out[i + j] += a * y[j]
    return out


@lru_cache(maxsize=None)
def _pochhammer_inv_dense(m: int, qmax: int) -> tuple[int, ...]:
    series = [1] + [0] * qmax
    for r in range(1, m + 1):
        # multiply by sum_s q^(r s)
        for n in range(r, qmax + 1):
            series[n] += series[n - r]
    return tuple(series)


def pochhammer_inv(m: int, qmax: int) -> TruncatedSeries:
    """1/(q;q)_m truncated at q^qmax."""
    if m < 0:
        raise SeriesError("m must be non-negative")
    return TruncatedSeries.from_q(qmax, _pochhammer_inv_dense(m, qmax))


def tri(n: int) -> int:
    """Triangular number n(n+1)/2; equals 0 at n = -1."""
    return n * (n + 1) // 2


@dataclass(frozen=True)
class ConstraintSolution:
    A: int
    B: int
    C: int
    D: int
    AB: int
    AC: int
    AD: int
    BC: int
    BD: int
    CD: int
    Q: int

    @property
    def tau(self) -> int:
        return self.A + self.B + self.C + self.D + self.AB + self.AC + self.AD + self.BC + self.BD + self.CD

    def ijkl(self) -> tuple[int, int, int, int]:
        return (
            self.A + self.AB + self.AC + self.AD + self.Q,
            self.B + self.AB + self.BC + self.BD + self.Q,
            self.C + self.AC + self.BC + self.CD + self.Q,
            self.D + self.AD + self.BD + self.CD + self.Q,
        )


def constraint_solutions(i: int, j: int, k: int, l: int) -> Iterator[ConstraintSolution]:
    """Non-negative solutions of the four counting constraints.

    Q is chosen first, then the six pair counts; the single-color counts are
    then forced and must be non-negative.
    """
    for Q in range(min(i, j, k, l) + 1):
        ri, rj, rk, rl = i - Q, j - Q, k - Q, l - Q
        for AB, AC, AD in product(range(min(ri, rj) + 1), range(min(ri, rk) + 1), range(min(ri, rl) + 1)):
            A = ri - AB - AC - AD
            if A < 0:
                continue
            for BC, BD in product(range(min(rj, rk) + 1), range(min(rj, rl) + 1)):
                B = rj - AB - BC - BD
                if B < 0:
                    continue
                for CD in range(min(rk, rl) + 1):
                    C = rk - AC - BC - CD
                    D = rl - AD - BD - CD
                    if C < 0 or D < 0:
                        continue
                    yield ConstraintSolution(A, B, C, D, AB, AC, AD, BC, BD, CD, Q)


@lru_cache(maxsize=None)
def _denominator(counts: tuple[int, ...], qmax: int) -> tuple[int, ...]:
    out = [1] + [0] * qmax
    for m in counts:
        if m:
            out = _qmul(out, list(_pochhammer_inv_dense(m, qmax)), qmax)
    return tuple(out)


def _summand(s: ConstraintSolution, qmax: int) -> list[int]:
    tau = s.tau
    expo = (tri(tau) + tri(s.AB) + tri(s.AC) + tri(s.AD) + tri(s.BC) + tri(s.BD) + tri(s.CD)
            - s.BC - s.BD - s.CD + 4 * tri(s.Q - 1) + 3 * s.Q + 2 * s.Q * tau)
    bracket = [0] * (qmax + 1)

    def add(n, c):
        if n <= qmax:
            bracket[n] += c

    # (1 - q^A) + q^(A+BC+BD+Q) (1 - q^B) + q^(A+BC+BD+Q+B+CD)
    add(0, 1)
    add(s.A, -1)
    e = s.A + s.BC + s.BD + s.Q
    add(e, 1)
    add(e + s.B, -1)
    add(e + s.B + s.CD, 1)
    if expo > qmax:
        return [0] * (qmax + 1)
    shifted = [0] * expo + bracket[: qmax + 1 - expo]
    counts = tuple(sorted((s.A, s.B, s.C, s.D, s.AB, s.AC, s.AD, s.BC, s.BD, s.CD, s.Q)))
    return _qmul(shifted, list(_denominator(counts, qmax)), qmax)


def identity_lhs(i: int, j: int, k: int, l: int, qmax: int) -> TruncatedSeries:
    total = [0] * (qmax + 1)
    for s in constraint_solutions(i, j, k, l):
        for n, c in enumerate(_summand(s, qmax)):
            total[n] += c
    return TruncatedSeries.from_q(qmax, total)


def identity_rhs(i: int, j: int, k: int, l: int, qmax: int) -> TruncatedSeries:
    expo = tri(i) + tri(j) + tri(k) + tri(l)
    if expo > qmax:
        return TruncatedSeries(qmax)
    den = _denominator(tuple(sorted((i, j, k, l))), qmax)
    return TruncatedSeries.from_q(qmax, [0] * expo + list(den[: qmax + 1 - expo]))


@dataclass
class IdentityReport:
    max_ijkl: int
    qmax: int
    checked: int = 0
    failure: tuple | None = None
    product_failure: tuple | None = None
    lhs_sum: TruncatedSeries | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.failure is None and self.product_failure is None

    def summary(self) -> str:
        head = f"identity i,j,k,l<={self.max_ijkl} qmax={self.qmax}: {self.checked} tuples, "
        if self.passed:
            return head + "pass"
        lines = [head + "FAIL"]
        if self.failure:
            lines.append("  first failure (i,j,k,l,n,lhs,rhs) = %s" % (self.failure,))
        if self.product_failure:
            lines.append("  product mismatch (key, summed, product) = %s" % (self.product_failure,))
        return "\n".join(lines)


def verify_identity(max_ijkl: int, qmax: int) -> IdentityReport:
    """Check the four-parameter identity coefficientwise, then its weighted sum.

    Summing ``a^i b^j c^k d^l`` times either side over ``i, j, k, l <= max_ijkl``
    must agree with :func:`product_side` on monomials with all four exponents
    at most ``max_ijkl``.
    """
    report = IdentityReport(max_ijkl, qmax)
    summed: dict[Key, int] = {}
    for i, j, k, l in product(range(max_ijkl + 1), repeat=4):
        lhs = identity_lhs(i, j, k, l, qmax)
        rhs = identity_rhs(i, j, k, l, qmax)
        report.checked += 1
        if lhs != rhs and report.failure is None:
            lq, rq = lhs.q_coefficients(), rhs.q_coefficients()
            n = next(n for n in range(qmax + 1) if lq[n] != rq[n])
            report.failure = (i, j, k, l, n, lq[n], rq[n])
        for n, c in enumerate(lhs.q_coefficients()):
            if c:
                summed[(i, j, k, l, n)] = c
    report.lhs_sum = TruncatedSeries(qmax, summed)
    prod = product_side(qmax).restrict(max_ijkl)
    if report.lhs_sum != prod:
        key = next(key for key in sorted(set(summed) | set(prod.coeffs)) if report.lhs_sum[key] != prod[key])
        report.product_failure = (key, report.lhs_sum[key], prod[key])
    return report


def series_from_counts(counts: Mapping[Key, int], qmax: int) -> TruncatedSeries:
    """Generating series sum of count * a^u b^v c^w d^t q^n."""
    return TruncatedSeries(qmax, dict(counts))
