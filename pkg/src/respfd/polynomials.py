"""Dense univariate polynomial arithmetic over exact scalars.

A Poly stores coefficients in ascending degree with the trailing zeros
stripped, so the zero polynomial has an empty coefficient tuple.  Coefficients
may be Fractions or GaussianRationals (or anything else implementing exact
field arithmetic); mixed arithmetic works through the scalar operator
protocol.

Also home to the characteristic-polynomial factorizer, which covers exactly
the factor shapes this package supports: linear factors with roots in Q
(both modes) or Q(i) (complex mode), plus simple irreducible quadratic
factors (s+a)^2 + d over Q (real mode).  Anything else raises
IrrationalSpectrum rather than approximating.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import HintMismatch, IrrationalSpectrum, RepeatedQuadraticFactor, SingularSeriesDivision
from .scalars import (
    GaussianRational,
    Scalar,
    as_fraction,
    is_rational,
    rational_sqrt,
    scalar_key,
)


def _strip(coeffs: Sequence[Scalar]) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial, coefficients ascending in degree."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(tuple(self.coeffs)))

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def constant(c: Scalar) -> "Poly":
        return Poly((c,))

    @staticmethod
    def variable() -> "Poly":
        """The polynomial s."""
        return Poly((Fraction(0), Fraction(1)))

    @staticmethod
    def linear(root: Scalar) -> "Poly":
        """The monic linear factor s - root."""
        return Poly((-root, Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree, with the convention degree(0) = -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Scalar:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_monic(self) -> bool:
        return not self.is_zero and self.leading() == 1

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Poly(out)
        return Poly(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.constant(Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact Euclidean division; requires a nonzero divisor."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), self
        inv_lead = Fraction(1) / other.leading() if other.leading() != 1 else None
        quot = [Fraction(0)] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if not top:
                continue
            q = top if inv_lead is None else top * inv_lead
            quot[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * b
        return Poly(quot), Poly(rem[: other.degree if other.degree > 0 else 0])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def eval(self, x: Scalar) -> Scalar:
        """Horner evaluation."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c: Scalar) -> "Poly":
        """Taylor shift: returns q with q(s) = p(s + c), exactly.

        Repeated synthetic division by (s - (-c)) accumulates the Taylor
        coefficients of p around -c, which are exactly the coefficients of
        p(s + c).
        """
        if not c or self.is_zero:
            return self
        work = list(self.coeffs)
        n = len(work)
        out = []
        for k in range(n):
            # one synthetic-division pass by (x - c), high to low
            for j in range(n - 2, k - 1, -1):
                work[j] = work[j] + work[j + 1] * c
            out.append(work[k])
        return Poly(out)

    def __str__(self) -> str:
        from .io import format_poly

        return format_poly(self)


def series_div(num: Poly, den: Poly, order: int) -> Poly:
    """Truncated power-series quotient num/den with `order` coefficients.

    Requires den(0) != 0.  The result q satisfies: the lowest `order`
    coefficients of num - den*q vanish.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if den.is_zero or not den.coeff(0):
        raise SingularSeriesDivision("series division needs den(0) != 0")
    inv0 = Fraction(1) / den.coeff(0)
    out = []
    for k in range(order):
        acc = num.coeff(k)
        for t in range(1, k + 1):
            dc = den.coeff(t)
            if dc:
                acc = acc - dc * out[k - t]
        out.append(acc * inv0)
    return Poly(out)


@dataclass(frozen=True)
class FactoredCharPoly:
    """Factorization of a monic rational polynomial into supported shapes.

    mode "complex": linear factors only, roots in Q or Q(i).
    mode "real": rational linear factors plus simple irreducible quadratics,
    each stored as (a, d) meaning (s+a)^2 + d with d > 0.

    Linear factors are sorted by (re, im) of the root; quadratics by (a, d).
    """

    mode: str
    linear: tuple = ()  # ((root, multiplicity), ...)
    quadratic: tuple = ()  # ((a, d), ...), real mode only
    degree: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(self.linear))
        object.__setattr__(self, "quadratic", tuple(self.quadratic))
        total = sum(m for _, m in self.linear) + 2 * len(self.quadratic)
        object.__setattr__(self, "degree", total)

    def expand(self) -> Poly:
        """Multiply all factors back out; the round-trip oracle for tests."""
        out = Poly.constant(Fraction(1))
        for root, mult in self.linear:
            out = out * (Poly.linear(root) ** mult)
        for a, d in self.quadratic:
            out = out * Poly((a * a + d, 2 * a, Fraction(1)))
        return out

    def eigenvalues(self) -> tuple:
        return tuple(root for root, _ in self.linear)


def _primitive_integer_coeffs(p: Poly) -> list[int]:
    """Scale rational coefficients to integers and divide out the content."""
    common = 1
    for c in p.coeffs:
        d = as_fraction(c).denominator
        common = common * d // math.gcd(common, d)
    ints = [int(as_fraction(c) * common) for c in p.coeffs]
    content = 0
    for v in ints:
        content = math.gcd(content, abs(v))
    return [v // content for v in ints]


def _divisors(n: int) -> Iterable[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def _rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities, by the rational-root theorem.

    Deflates p as roots are found, so multiplicities are exact.  Returns the
    (possibly trivial) list; the deflated quotient is recomputed by callers
    via exact division.
    """
    roots: list[tuple[Fraction, int]] = []
    work = p
    # strip roots at zero first
    mult0 = 0
    while not work.is_zero and not work.coeff(0):
        work = work // Poly.variable()
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    if work.degree < 1:
        return roots
    ints = _primitive_integer_coeffs(work)
    lead, const = ints[-1], ints[0]
    candidates = set()
    for num in _divisors(const):
        for den in _divisors(lead):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    for cand in sorted(candidates):
        if work.degree < 1:
            break
        if work.eval(cand):
            continue
        mult = 0
        factor = Poly.linear(cand)
        while True:
            quot, rem = divmod(work, factor)
            if not rem.is_zero:
                break
            work = quot
            mult += 1
        roots.append((cand, mult))
    return roots


def _deflate(p: Poly, root: Scalar, multiplicity: int) -> Poly:
    """Divide p by (s - root)^multiplicity, verifying exactness."""
    factor = Poly.linear(root)
    for _ in range(multiplicity):
        quot, rem = divmod(p, factor)
        if not rem.is_zero:
            raise HintMismatch(f"{root} does not divide the polynomial as claimed")
        p = quot
    return p


def _quadratic_shape(q: Poly) -> tuple[Fraction, Fraction] | None:
    """Write a monic rational quadratic as (s+a)^2 + d; None unless d > 0."""
    a = as_fraction(q.coeff(1)) / 2
    d = as_fraction(q.coeff(0)) - a * a
    return (a, d) if d > 0 else None


def _gaussian_roots_of_quadratic(q: Poly) -> tuple[GaussianRational, GaussianRational] | None:
    """Roots of a monic rational quadratic inside Q(i), if they exist there."""
    b = as_fraction(q.coeff(1))
    c = as_fraction(q.coeff(0))
    disc = b * b - 4 * c
    if disc >= 0:
        # a rational square root would have been found as rational roots
        return None
    root = rational_sqrt(-disc)
    if root is None:
        return None
    re = -b / 2
    im = root / 2
    return GaussianRational(re, im), GaussianRational(re, -im)


def _split_quartic(p: Poly) -> tuple[Poly, Poly] | None:
    """Split a monic rational quartic into two monic rational quadratics.

    Uses the resolvent cubic of the depressed quartic; returns None when no
    rational split exists.
    """
    b = as_fraction(p.coeff(3))
    shift = -b / 4
    h = p.shift(shift)  # depressed: s^4 + P s^2 + Q s + R
    P = as_fraction(h.coeff(2))
    Q = as_fraction(h.coeff(1))
    R = as_fraction(h.coeff(0))

    def unshift(f: Poly) -> Poly:
        return f.shift(-shift)

    if Q == 0:
        disc = P * P - 4 * R
        root = rational_sqrt(disc)
        if root is not None:
            z = (P + root) / 2
            w = (P - root) / 2
            return unshift(Poly((z, Fraction(0), Fraction(1)))), unshift(
                Poly((w, Fraction(0), Fraction(1)))
            )
    cubic = Poly((-Q * Q, P * P - 4 * R, 2 * P, Fraction(1)))
    for u, _ in _rational_roots(cubic):
        if u <= 0:
            continue
        y = rational_sqrt(u)
        if y is None:
            continue
        w = (P + u + Q / y) / 2
        z = (P + u - Q / y) / 2
        if z * w != R:
            continue
        return unshift(Poly((z, y, Fraction(1)))), unshift(Poly((w, -y, Fraction(1))))
    return None


def _verify_hints(p: Poly, mode: str, hints) -> tuple[Poly, list]:
    """Deflate verified hinted roots out of p; returns (residual, linear factors)."""
    found: dict = {}
    work = p
    for root, mult in hints:
        if mult < 1:
            raise HintMismatch(f"hint multiplicity must be positive, got {mult}")
        if isinstance(root, GaussianRational) and root.im != 0:
            if mode == "real":
                raise HintMismatch("real mode accepts rational root hints only")
            conj = root.conjugate()
            prior = found.get(root)
            if prior is not None:
                if prior != mult:
                    raise HintMismatch(
                        f"conflicting multiplicities for hinted root {root}"
                    )
                continue  # conjugate partner already processed
            if work.eval(root):
                raise HintMismatch(f"hinted root {root} does not annihilate the polynomial")
            # deflate by the real quadratic (s-root)(s-conj) to stay rational
            quad = Poly.linear(root) * Poly.linear(conj)
            quad = Poly(tuple(as_fraction(c) for c in quad.coeffs))
            work = _deflate_poly_by(work, quad, mult)
            if not work.eval(root) or not work.eval(conj):
                raise HintMismatch(f"hinted multiplicity {mult} for {root} is not exact")
            found[root] = mult
            found[conj] = mult
        else:
            root = as_fraction(root)
            if work.eval(root):
                raise HintMismatch(f"hinted root {root} does not annihilate the polynomial")
            work = _deflate(work, root, mult)
            if not work.eval(root):
                raise HintMismatch(f"hinted multiplicity {mult} for {root} is not exact")
            found[root] = mult
    return work, sorted(found.items(), key=lambda item: scalar_key(item[0]))


def _deflate_poly_by(p: Poly, factor: Poly, times: int) -> Poly:
    for _ in range(times):
        quot, rem = divmod(p, factor)
        if not rem.is_zero:
            raise HintMismatch("hinted factor does not divide the polynomial as claimed")
        p = quot
    return p


def factor_charpoly(p: Poly, mode: str, hints=None) -> FactoredCharPoly:
    """Factor a monic rational polynomial into the supported shapes.

    Rational roots are found by the rational-root theorem with exact
    deflation.  The residual is then handled per mode: complex mode resolves
    degree-2 (and split degree-4) residuals into Gaussian-rational conjugate
    pairs; real mode turns them into irreducible quadratics (s+a)^2 + d.
    Hints are verified exactly, never trusted.
    """
    if mode not in ("complex", "real"):
        raise ValueError(f"unknown factorization mode: {mode!r}")
    if p.is_zero or not p.is_monic():
        raise ValueError("characteristic polynomials are monic and nonzero")
    for c in p.coeffs:
        if not is_rational(c):
            raise ValueError("factor_charpoly requires rational coefficients")
    p = Poly(tuple(as_fraction(c) for c in p.coeffs))
    degree = p.degree

    residual, hinted = _verify_hints(p, mode, hints or [])
    gaussian_hints = [(r, m) for r, m in hinted if isinstance(r, GaussianRational) and r.im != 0]
    rational_hints = [(r, m) for r, m in hinted if not (isinstance(r, GaussianRational) and r.im != 0)]

    rational_found = _rational_roots(residual)
    for root, mult in rational_found:
        residual = _deflate(residual, root, mult)

    linear: dict = {}
    for root, mult in itertools.chain(rational_hints, rational_found):
        linear[root] = linear.get(root, 0) + mult
    for root, mult in gaussian_hints:
        linear[root] = linear.get(root, 0) + mult

    quadratics: list[tuple[Fraction, Fraction]] = []

    def reject(msg: str):
        raise IrrationalSpectrum(
            f"cannot factor residual {residual} over the supported field ({mode} mode): {msg}",
            residual=residual,
        )

    if residual.degree > 0:
        if residual.degree % 2 == 1:
            reject("odd-degree residual has an irrational real root")
        if residual.degree == 2:
            candidates = [residual]
        elif residual.degree == 4:
            split = _split_quartic(residual)
            if split is None:
                reject("no rational quadratic split exists")
            candidates = list(split)
        else:
            reject("residual degree exceeds the supported quadratic search")

        if mode == "real":
            shapes = []
            for q in candidates:
                shape = _quadratic_shape(q)
                if shape is None:
                    reject(f"quadratic factor {q} has real irrational roots")
                shapes.append(shape)
            if len(shapes) == 2 and shapes[0] == shapes[1]:
                a0, d0 = shapes[0]
                shape_text = f"s^2 + {d0}" if a0 == 0 else f"(s + {a0})^2 + {d0}"
                raise RepeatedQuadraticFactor(
                    f"quadratic factor {shape_text} is repeated",
                    quadratic=shapes[0],
                )
            quadratics = sorted(shapes)
        else:
            # complex mode: each quadratic must resolve inside Q(i)
            work = residual
            for q in candidates:
                roots = _gaussian_roots_of_quadratic(q)
                if roots is None:
                    reject(f"quadratic factor {q} has no Gaussian-rational roots")
                for root in roots:
                    if root in linear:
                        continue
                    mult = 0
                    factor = Poly.linear(root)
                    while True:
                        quot, rem = divmod(work, factor)
                        if not rem.is_zero:
                            break
                        work = quot
                        mult += 1
                    if mult == 0:
                        reject(f"Gaussian root {root} does not divide the residual")
                    linear[root] = linear.get(root, 0) + mult
            if work.degree != 0:
                reject("Gaussian roots do not exhaust the residual")

    result = FactoredCharPoly(
        mode=mode,
        linear=tuple(sorted(linear.items(), key=lambda item: scalar_key(item[0]))),
        quadratic=tuple(quadratics),
    )
    if result.degree != degree:
        raise IrrationalSpectrum(
            f"factorization covers degree {result.degree} of {degree}: residual {residual}",
            residual=residual,
        )
    if result.expand() != p:
        raise AssertionError("internal error: factorization failed round-trip check")
    return result
