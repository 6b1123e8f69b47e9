"""Exact real arithmetic on rational intervals queried by precision.

A real is a function from a positive rational precision to an open
rational interval of width at most that precision; all answers of one real
pairwise overlap, and the number denoted sits strictly inside every
answer.  Endpoints are exact fractions throughout; no floating point
enters this module.  Cut locators, interval arithmetic with explicit
moduli, limits of sequences with convergence witnesses, series summation,
a uniform-convergence refuter, rational nets, and the greedy finite
subcover for closed intervals all live here.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Rat = Fraction


class InvariantError(RuntimeError):
    """An answer violated the width or overlap contract."""


class ApartnessError(ValueError):
    """The apartness witness failed; carries the offending interval."""

    def __init__(self, interval: "RInterval", delta: Fraction):
        super().__init__(
            f"interval {interval} is not outside (-{delta}, {delta})"
        )
        self.interval = interval
        self.delta = delta


class TailBoundError(ValueError):
    """The series tail bound did not drop below the requested precision."""


class UncoveredPointError(ValueError):
    """Greedy subcover found a point no cover member contains."""

    def __init__(self, point: Fraction):
        super().__init__(f"point {point} is not covered")
        self.point = point


def rat(x) -> Fraction:
    """Coerce to an exact fraction; floats are rejected on purpose."""
    if isinstance(x, float):
        raise TypeError("floats carry rounding; pass a Fraction, int, or string")
    return Fraction(x)


@dataclass(frozen=True)
class RInterval:
    """An open interval with rational endpoints, lo < hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (isinstance(self.lo, Fraction) and isinstance(self.hi, Fraction)):
            raise TypeError("endpoints must be exact fractions")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got {self.lo} >= {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q: Fraction) -> bool:
        return self.lo < q < self.hi

    def overlaps(self, other: "RInterval") -> bool:
        return max(self.lo, other.lo) < min(self.hi, other.hi)

    def hull(self, other: "RInterval") -> "RInterval":
        return RInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def widen(self, per_side: Fraction) -> "RInterval":
        return RInterval(self.lo - per_side, self.hi + per_side)

    def gap(self, other: "RInterval") -> Fraction:
        """Separation between the intervals; nonpositive when they meet."""
        return max(self.lo, other.lo) - min(self.hi, other.hi)

    def __repr__(self) -> str:
        return f"({self.lo}, {self.hi})"


class Real:
    """A number presented by its precision-indexed interval answers.

    Answers are cached; the cache is guarded by a lock so concurrent
    queries stay invisible.  Each new answer is checked for width and for
    overlap with the narrowest answer seen so far.
    """

    __slots__ = ("_fn", "_cache", "_lock", "_narrowest", "name")

    def __init__(self, fn: Callable[[Fraction], RInterval], name: str = "real"):
        self._fn = fn
        self._cache: dict[Fraction, RInterval] = {}
        self._lock = threading.Lock()
        self._narrowest: RInterval | None = None
        self.name = name

    def approx(self, eps) -> RInterval:
        eps = rat(eps)
        if eps <= 0:
            raise ValueError("precision must be positive")
        with self._lock:
            got = self._cache.get(eps)
        if got is not None:
            return got
        ans = self._fn(eps)
        if ans.width > eps:
            raise InvariantError(
                f"{self.name}: answer {ans} wider than requested {eps}"
            )
        with self._lock:
            if self._narrowest is not None and not ans.overlaps(self._narrowest):
                raise InvariantError(
                    f"{self.name}: answer {ans} disjoint from {self._narrowest}"
                )
            if self._narrowest is None or ans.width < self._narrowest.width:
                self._narrowest = ans
            self._cache[eps] = ans
        return ans

    def __repr__(self) -> str:
        return f"<Real {self.name}>"


def real_of_rat(q) -> Real:
    q = rat(q)
    return Real(lambda eps: RInterval(q - eps / 3, q + eps / 3), name=f"rat({q})")


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class CutLocator:
    """Decision oracle for a two-sided cut: given a < b, LEFT asserts a is
    below the cut, RIGHT asserts b is above it."""

    def __init__(self, fn: Callable[[Fraction, Fraction], Side], name: str = "cut"):
        self._fn = fn
        self.name = name
        self.calls = 0

    def loc(self, a, b) -> Side:
        a, b = rat(a), rat(b)
        if not a < b:
            raise ValueError("locator queries need a < b")
        self.calls += 1
        side = self._fn(a, b)
        if side not in (Side.LEFT, Side.RIGHT):
            raise ValueError("locator must answer a Side")
        return side


def rational_cut(q) -> CutLocator:
    """The cut sitting at a rational number (the number itself on neither side)."""
    q = rat(q)

    def fn(a: Fraction, b: Fraction) -> Side:
        if b <= q:
            return Side.LEFT
        if a >= q:
            return Side.RIGHT
        return Side.LEFT if q - a >= b - q else Side.RIGHT

    return CutLocator(fn, name=f"cut@{q}")


def sqrt_cut(k: int) -> CutLocator:
    """The cut under the square root of a positive non-square integer."""

    def fn(a: Fraction, b: Fraction) -> Side:
        if a <= 0 or a * a < k:
            return Side.LEFT
        return Side.RIGHT

    return CutLocator(fn, name=f"cut@sqrt({k})")


def trisection_steps(width: Fraction, eps: Fraction) -> int:
    """Smallest k with width * (2/3)^k <= eps: the exact ceiling of the
    base-3/2 logarithm of width/eps."""
    k = 0
    grow = Fraction(1)
    target = Fraction(width, 1) / eps
    while grow < target:
        grow *= Fraction(3, 2)
        k += 1
    return k


def real_of_cut(locator: CutLocator, seed: RInterval) -> Real:
    """The real determined by a cut locator, shrunk from a straddling seed.

    Each round queries the two inner trisection points and keeps the two
    thirds the locator certifies, shrinking the width by a factor of 3/2.
    An inconsistent seed is undetectable from the answers alone; it
    surfaces later as an overlap violation.
    """
    chain = [seed]
    lock = threading.Lock()

    def fn(eps: Fraction) -> RInterval:
        steps = trisection_steps(seed.width, eps)
        with lock:
            while len(chain) <= steps:
                cur = chain[-1]
                third = cur.width / 3
                if locator.loc(cur.lo + third, cur.hi - third) is Side.LEFT:
                    chain.append(RInterval(cur.lo + third, cur.hi))
                else:
                    chain.append(RInterval(cur.lo, cur.hi - third))
            return chain[steps]

    return Real(fn, name=f"of_cut({locator.name})")


def cut_of_real(x: Real) -> CutLocator:
    """The cut locator of a real: query at a third of the gap; if the
    answer clears the left endpoint, the left endpoint is below the cut,
    otherwise the right endpoint is forced above it."""

    def fn(a: Fraction, b: Fraction) -> Side:
        c, _d = astuple(x.approx((b - a) / 3))
        return Side.LEFT if c > a else Side.RIGHT

    return CutLocator(fn, name=f"cut_of({x.name})")


def astuple(iv: RInterval) -> tuple[Fraction, Fraction]:
    return iv.lo, iv.hi


def add(x: Real, y: Real) -> Real:
    def fn(eps: Fraction) -> RInterval:
        a = x.approx(eps / 2)
        b = y.approx(eps / 2)
        return RInterval(a.lo + b.lo, a.hi + b.hi)

    return Real(fn, name=f"({x.name}+{y.name})")


def neg(x: Real) -> Real:
    def fn(eps: Fraction) -> RInterval:
        a = x.approx(eps)
        return RInterval(-a.hi, -a.lo)

    return Real(fn, name=f"(-{x.name})")


def sub(x: Real, y: Real) -> Real:
    return add(x, neg(y))


def scale(x: Real, c) -> Real:
    """Multiplication by an exact rational constant."""
    c = rat(c)
    if c == 0:
        return real_of_rat(0)

    def fn(eps: Fraction) -> RInterval:
        a = x.approx(eps / abs(c))
        lo, hi = sorted((a.lo * c, a.hi * c))
        return RInterval(lo, hi)

    return Real(fn, name=f"({c}*{x.name})")


def mul(x: Real, y: Real) -> Real:
    """Product via magnitude bounds: a unit-precision answer bounds each
    factor, and the precision split charges each factor with the other's
    bound plus one."""

    def fn(eps: Fraction) -> RInterval:
        bx = _magnitude_bound(x)
        by = _magnitude_bound(y)
        ex = min(Fraction(1), eps / (2 * (by + 1)))
        ey = min(Fraction(1), eps / (2 * (bx + 1)))
        a = x.approx(ex)
        b = y.approx(ey)
        products = [a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi]
        return RInterval(min(products), max(products))

    return Real(fn, name=f"({x.name}*{y.name})")


def _magnitude_bound(x: Real) -> Fraction:
    a = x.approx(Fraction(1))
    return max(abs(a.lo), abs(a.hi))


def inv(x: Real, delta) -> Real:
    """Reciprocal of a real witnessed apart from zero.

    The witness query at the apartness radius must land entirely outside
    the symmetric interval; each answer then queries at eps*delta^2 /
    (1 + eps*delta), clips to the witnessed side, and inverts endpoints.
    The clipped endpoints stay at least delta from zero, which bounds the
    inverted width by eps.
    """
    delta = rat(delta)
    if delta <= 0:
        raise ValueError("apartness radius must be positive")
    witness = x.approx(delta)
    if not (witness.lo >= delta or witness.hi <= -delta):
        raise ApartnessError(witness, delta)

    def fn(eps: Fraction) -> RInterval:
        gamma = eps * delta * delta / (1 + eps * delta)
        got = x.approx(gamma)
        lo = max(got.lo, witness.lo)
        hi = min(got.hi, witness.hi)
        return RInterval(1 / hi, 1 / lo)

    return Real(fn, name=f"inv({x.name};{delta})")


def find_apartness(x: Real, eps_floor) -> Fraction | None:
    """Search delta = 1, 1/2, 1/4, ... down to the floor for a witness
    that x is outside (-delta, delta).  None proves nothing about x."""
    eps_floor = rat(eps_floor)
    delta = Fraction(1)
    while delta >= eps_floor:
        got = x.approx(delta)
        if got.lo >= delta or got.hi <= -delta:
            return delta
        delta /= 2
    return None


@dataclass(frozen=True)
class ConvergentSeq:
    """A sequence of reals with an explicit convergence witness.

    Contract: for all n, m >= modulus(eps), the values of terms(n) and
    terms(m) differ by at most eps/2.  Operationally: their answers at
    precision eps/4 have a hull of width at most eps.
    """

    terms: Callable[[int], Real]
    modulus: Callable[[Fraction], int]


def check_cauchy_witness(seq: ConvergentSeq, eps, n: int) -> bool:
    """The testable form of the sequence contract at one index."""
    eps = rat(eps)
    base_index = seq.modulus(eps)
    if n < base_index:
        return True
    a = seq.terms(n).approx(eps / 4)
    b = seq.terms(base_index).approx(eps / 4)
    return a.hull(b).width <= eps


def limit(seq: ConvergentSeq) -> Real:
    """The limit: query the term at the modulus index and pad by the
    convergence slack."""

    def fn(eps: Fraction) -> RInterval:
        n = seq.modulus(eps / 2)
        inner = seq.terms(n).approx(eps / 2)
        return inner.widen(eps / 4)

    return Real(fn, name="limit")


def sum_series(
    terms: Callable[[int], Real],
    tail_bound: Callable[[int], Fraction],
    tail_index: Callable[[Fraction], int],
) -> Real:
    """Sum a series whose tails are explicitly bounded.

    tail_bound(N) must bound the absolute value of the sum beyond N and
    decrease in N; tail_index(eps) must return an N whose bound is at most
    eps (checked at each use; failure raises).  Partial-sum differences
    are bounded by two tails, hence the quarter precision below.
    """

    def partial(n: int) -> Real:
        def fn(eps: Fraction) -> RInterval:
            per = eps / (n + 1)
            lo = Fraction(0)
            hi = Fraction(0)
            for k in range(n + 1):
                got = terms(k).approx(per)
                lo += got.lo
                hi += got.hi
            return RInterval(lo, hi)

        return Real(fn, name=f"partial_sum({n})")

    def modulus(eps: Fraction) -> int:
        n = tail_index(eps / 4)
        bound = tail_bound(n)
        if bound > eps / 4:
            raise TailBoundError(
                f"tail_bound({n}) = {bound} exceeds requested {eps / 4}"
            )
        return n

    return limit(ConvergentSeq(partial, modulus))


def exp_rational(q) -> Real:
    """The exponential of an exact rational via its power series."""
    q = rat(q)
    b = abs(q).numerator // abs(q).denominator + 1  # integer bound > |q|

    def term(k: int) -> Real:
        return real_of_rat(q**k / math.factorial(k))

    out = sum_series(term, _factorial_tail(b), _factorial_tail_index(b))
    out.name = f"exp({q})"
    return out


def exp_real(x: Real) -> Real:
    """The exponential of an arbitrary real via term-wise interval products."""
    m = _magnitude_bound(x) + 1
    b = m.numerator // m.denominator + 1

    powers: list[Real] = [real_of_rat(1)]
    powers_lock = threading.Lock()

    def term(k: int) -> Real:
        with powers_lock:
            while len(powers) <= k:
                powers.append(mul(powers[-1], x))
            p = powers[k]
        return scale(p, Fraction(1, math.factorial(k)))

    out = sum_series(term, _factorial_tail(b), _factorial_tail_index(b))
    out.name = f"exp({x.name})"
    return out


def _factorial_tail(b: int) -> Callable[[int], Fraction]:
    # valid bound for the tail of sum b^k/k! once n+1 >= 2b
    return lambda n: 2 * Fraction(b) ** (n + 1) / math.factorial(n + 1)


def _factorial_tail_index(b: int) -> Callable[[Fraction], int]:
    bound = _factorial_tail(b)

    def index(eps: Fraction) -> int:
        n = 2 * b
        while bound(n) > eps:
            n += 1
        return n

    return index


@dataclass(frozen=True)
class Verified:
    """Grid-limited positive verdict: no violation at the sampled points."""

    grid: tuple[Fraction, ...]
    eps_values: tuple[Fraction, ...]
    probes: tuple[int, ...]


@dataclass(frozen=True)
class Refuted:
    """Certified violation: at the witness point and index, the interval
    answers are separated by at least eps."""

    eps: Fraction
    x: Fraction
    n: int
    base_index: int
    base: RInterval
    probe: RInterval

    @property
    def separation(self) -> Fraction:
        return self.base.gap(self.probe)


def uniform_convergence_check(
    family: Callable[[int, Fraction], Real],
    domain: RInterval,
    candidate_modulus: Callable[[Fraction], int],
    grid_eps,
    probe_indices: Sequence[int],
    eps_values: Iterable,
) -> Verified | Refuted:
    """Sound refuter and grid-sampled verifier of the uniform-convergence
    criterion: past the modulus index, values at each point must stay
    within eps of the value at the modulus index.

    Refutation is certified by interval separation; verification only
    covers the sampled grid, precisions, and indices.
    """
    grid = tuple(epsilon_net(domain, grid_eps))
    eps_values = tuple(rat(e) for e in eps_values)
    probes = tuple(probe_indices)
    for eps in eps_values:
        base_index = candidate_modulus(eps)
        for xq in grid:
            base = family(base_index, xq).approx(eps / 8)
            for n in probes:
                if n < base_index:
                    continue
                probe = family(n, xq).approx(eps / 8)
                if base.gap(probe) >= eps:
                    return Refuted(eps, xq, n, base_index, base, probe)
    return Verified(grid, eps_values, probes)


def epsilon_net(domain: RInterval, eps) -> list[Fraction]:
    """Evenly spaced rationals covering the closed domain within eps."""
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("net radius must be positive")
    k = math.ceil(domain.width / eps)
    return [domain.lo + domain.width * i / k for i in range(k + 1)]


def finite_subcover(
    domain: RInterval, cover: Sequence[RInterval]
) -> list[RInterval]:
    """Greedy left-to-right selection covering the closed domain.

    At each step the frontier point must lie strictly inside some member;
    the member reaching furthest right is chosen.  If no member contains
    the frontier, that rational point is an uncovered-point certificate.
    """
    chosen: list[RInterval] = []
    pos = domain.lo
    while pos <= domain.hi:
        best = None
        for iv in cover:
            if iv.contains(pos) and (best is None or iv.hi > best.hi):
                best = iv
        if best is None:
            raise UncoveredPointError(pos)
        chosen.append(best)
        pos = best.hi
    return chosen


def limit_at_zero(
    f: Callable[[Fraction, Fraction], Real],
    limit_modulus: Callable[[Fraction], Fraction],
) -> Real:
    """The value a function on the punctured line approaches at zero.

    f(x, apart) evaluates at a nonzero rational x with apartness witness;
    limit_modulus(eps) must return delta > 0 with |f(x) - y| < eps
    whenever 0 < |x| < delta, y being the limit.  Each answer samples at
    half the modulus for a quarter of the precision and pads by the
    remaining slack.
    """

    def fn(eps: Fraction) -> RInterval:
        delta = rat(limit_modulus(eps / 4))
        if delta <= 0:
            raise ValueError("limit modulus must be positive")
        q = delta / 2
        inner = f(q, q / 2).approx(eps / 2)
        return inner.widen(eps / 4)

    return Real(fn, name="limit_at_zero")
