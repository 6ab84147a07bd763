"""The chain of sequence spaces: descriptors, order, and metric bounds.

The ten-member chain (for parameters 0 < a < b) is

    ainf < cap-lp:0 < lp:a < cap-lp:a < lp:b < cap-lp:b < c0 < linf < hd < cn0

ordered by strict inclusion.  Each member carries a translation-invariant
metric computable from coefficient data with certified tails:

* ``lp:p``     p >= 1: the p-norm of the difference; 0 < p < 1: the p-th
  power sum (both complete metrics on the space).
* ``c0``/``linf``: the sup metric.
* ``cap-lp:a``: a Frechet combination sum_n 2**-n q_n/(1+q_n) over the
  exponent schedule p_n = a + 1/n.
* ``hd``: sum_k 2**-k min(1, M_k) with M_k = sum_n |d_n| r_k**n and
  r_k = 1 - 1/(k+1).  M_k majorises the sup of the difference on the disc
  of radius r_k, so this metric dominates the compact-convergence metric;
  density statements made for it are the stronger ones.
* ``cn0``: sum_n 2**-n |d_n|/(1+|d_n|) (pointwise convergence).
* ``ainf``: diagnostic only; derivative sups are replaced by the
  coefficient majorant sum_n n!/(n-i)! |a_n|.

``metric_bound`` returns certified two-sided bounds.  Upper bounds are
minimised over a power-of-two ladder of effective budgets, which keeps
them monotone in the budget despite interval rounding in the heads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, MissingTailOracle, UnknownSpace
from .intervals import Q0, Q1, format_rational, parse_rational, pow_bounds
from .sequences import Sequence, combine, support_indices_upto, zero

_PARAM_TAGS = {"lp", "cap-lp"}
_PLAIN_TAGS = {"ainf", "c0", "linf", "hd", "cn0"}


@dataclass(frozen=True, order=False)
class SpaceId:
    tag: str
    param: Fraction | None = None

    def __post_init__(self):
        if self.tag in _PLAIN_TAGS:
            if self.param is not None:
                raise UnknownSpace(f"{self.tag} takes no parameter")
        elif self.tag == "lp":
            if self.param is None or self.param <= 0:
                raise UnknownSpace("lp requires a parameter > 0")
        elif self.tag == "cap-lp":
            if self.param is None or self.param < 0:
                raise UnknownSpace("cap-lp requires a parameter >= 0")
        else:
            raise UnknownSpace(f"unknown space tag {self.tag!r}")

    def __str__(self):
        if self.param is None:
            return self.tag
        return f"{self.tag}:{format_rational(self.param)}"

    def chain_key(self):
        if self.tag == "ainf":
            return (0, Q0, 0)
        if self.tag == "lp":
            return (1, self.param, 0)
        if self.tag == "cap-lp":
            return (1, self.param, 1)
        return (2 + ("c0", "linf", "hd", "cn0").index(self.tag), Q0, 0)


AINF = SpaceId("ainf")
C0 = SpaceId("c0")
LINF = SpaceId("linf")
HD = SpaceId("hd")
CN0 = SpaceId("cn0")


def lp(p) -> SpaceId:
    return SpaceId("lp", Fraction(p))


def cap_lp(a) -> SpaceId:
    return SpaceId("cap-lp", Fraction(a))


def parse_space(text: str) -> SpaceId:
    text = text.strip()
    if ":" in text:
        tag, _, raw = text.partition(":")
        if tag not in _PARAM_TAGS:
            raise UnknownSpace(f"space {tag!r} takes no parameter")
        return SpaceId(tag, parse_rational(raw))
    if text in _PLAIN_TAGS:
        return SpaceId(text)
    if text in _PARAM_TAGS:
        raise UnknownSpace(f"space {text!r} needs a parameter")
    raise UnknownSpace(f"unknown space {text!r}")


def strictly_included(x: SpaceId, y: SpaceId) -> bool:
    """True iff x precedes y in the chain order."""
    return x.chain_key() < y.chain_key()


def standard_chain(a=Fraction(1), b=Fraction(2)) -> list[SpaceId]:
    a, b = Fraction(a), Fraction(b)
    if not 0 < a < b:
        raise UnknownSpace("chain parameters must satisfy 0 < a < b")
    return [AINF, cap_lp(0), lp(a), cap_lp(a), lp(b), cap_lp(b), C0, LINF, HD, CN0]


def adjacent_pairs(a=Fraction(1), b=Fraction(2)) -> list[tuple[SpaceId, SpaceId]]:
    chain = standard_chain(a, b)
    return list(zip(chain, chain[1:]))


@dataclass(frozen=True)
class MetricBound:
    lower: Fraction
    upper: Fraction | None  # None = no finite bound at this budget

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError("bound endpoints out of order")


# -- metric computation -----------------------------------------------------

_MIN_BUDGET = 16
_HEAD_GUARD = 16  # extra head precision, keeps head slack below tail slack


def _floor_grid(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def _ceil_grid(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def _budget_ladder(budget: int) -> list[int]:
    top = max(_MIN_BUDGET, budget)
    rungs = []
    n = _MIN_BUDGET
    while n <= top:
        rungs.append(n)
        n *= 2
    return rungs


def _abs_term_bounds(diff: Sequence, n: int, prec: int):
    return diff.term(n, prec).abs_bounds(prec)


def _lp_power_sum(diff: Sequence, p: Fraction, N: int, prec: int):
    """Bounds on sum_{n<=N} |d_n|**p plus certified tail for the upper."""
    lo_sum = Q0
    hi_sum = Q0
    hp = prec + _HEAD_GUARD
    for n in support_indices_upto(diff, N):
        iv = diff.term(n, hp)
        if iv.is_exact_zero:
            continue
        sq_lo, sq_hi = iv.abs_sq_bounds()
        lo_sum += pow_bounds(sq_lo, p / 2, hp)[0]
        hi_sum += pow_bounds(sq_hi, p / 2, hp)[1]
    tail = diff.tail_majorant(N, p, prec)
    if tail is None:
        raise MissingTailOracle(f"no l^{p} tail bound available")
    return lo_sum, hi_sum + tail


def _metric_once_lp(diff, p: Fraction, N: int, prec: int):
    lo, hi = _lp_power_sum(diff, p, N, prec)
    if p >= 1:
        return pow_bounds(lo, 1 / p, prec)[0], pow_bounds(hi, 1 / p, prec)[1]
    return lo, hi


def _metric_once_sup(diff, N: int, prec: int):
    hp = prec + _HEAD_GUARD
    lo = Q0
    hi = Q0
    for n in support_indices_upto(diff, N):
        if diff.term(n, hp).is_exact_zero:
            continue
        a_lo, a_hi = _abs_term_bounds(diff, n, hp)
        lo = max(lo, a_lo)
        hi = max(hi, a_hi)
    tail = diff.sup_tail(N, prec)
    if tail is None:
        raise MissingTailOracle("no sup tail bound available")
    return lo, max(hi, tail)


def _bounded_ratio(x: Fraction) -> Fraction:
    return x / (1 + x)


def _metric_once_cn0(diff, N: int, prec: int):
    # summands are rounded outward onto a dyadic grid so the exact
    # rationals cannot balloon across the accumulation
    grid = prec + _HEAD_GUARD
    head = min(N, prec + 4)
    lo = Q0
    hi = Q0
    hp = prec + _HEAD_GUARD
    for n in range(head + 1):
        a_lo, a_hi = _abs_term_bounds(diff, n, hp)
        weight = Fraction(1, 1 << n)
        lo += _floor_grid(weight * _bounded_ratio(a_lo), grid)
        hi += _ceil_grid(weight * _bounded_ratio(a_hi), grid)
    return lo, hi + Fraction(1, 1 << head)


def _metric_once_cap(diff, a0: Fraction, N: int, prec: int):
    grid = prec + _HEAD_GUARD
    K = min(N, max(_MIN_BUDGET, prec + 8))
    lo = Q0
    hi = Q0
    for n in range(1, K + 1):
        p_n = a0 + Fraction(1, n)
        inner_budget = max(_MIN_BUDGET, min(N, 4096 // n))
        q_lo, q_hi = _lp_power_sum(diff, p_n, inner_budget, prec)
        if p_n >= 1:
            q_lo = pow_bounds(q_lo, 1 / p_n, prec)[0]
            q_hi = pow_bounds(q_hi, 1 / p_n, prec)[1]
        weight = Fraction(1, 1 << n)
        lo += _floor_grid(weight * _bounded_ratio(q_lo), grid)
        hi += _ceil_grid(weight * _bounded_ratio(q_hi), grid)
    return lo, hi + Fraction(1, 1 << K)


def _metric_once_hd(diff, N: int, prec: int):
    grid = prec + _HEAD_GUARD
    K = min(N, max(_MIN_BUDGET, prec + 8))
    hp = prec + _HEAD_GUARD
    lo = Q0
    hi = Q0
    for k in range(1, K + 1):
        r_k = Fraction(k, k + 1)
        inner_budget = max(_MIN_BUDGET, min(N, 4096 // k))
        m_lo = Q0
        m_hi = Q0
        for n in support_indices_upto(diff, inner_budget):
            a_lo, a_hi = _abs_term_bounds(diff, n, hp)
            m_lo += a_lo * r_k ** n
            m_hi += a_hi * r_k ** n
        tail = diff.disc_tail(inner_budget, r_k, prec)
        if tail is None:
            raise MissingTailOracle("no disc tail bound available")
        weight = Fraction(1, 1 << k)
        lo += _floor_grid(weight * min(Q1, m_lo), grid)
        hi += _ceil_grid(weight * min(Q1, m_hi + tail), grid)
    return lo, hi + Fraction(1, 1 << K)


def _falling(n: int, i: int) -> int:
    out = 1
    for t in range(i):
        out *= n - t
    return out


def _metric_once_ainf(diff, N: int, prec: int):
    K = min(N, max(8, prec + 4))
    hp = prec + _HEAD_GUARD
    lo = Q0
    hi = Q0
    for i in range(K + 1):
        w_lo = Q0
        w_hi = Q0
        for n in support_indices_upto(diff, N):
            if n < i:
                continue
            a_lo, a_hi = _abs_term_bounds(diff, n, hp)
            f = _falling(n, i)
            w_lo += f * a_lo
            w_hi += f * a_hi
        poly = diff.poly_sup_tail(N, i + 2, prec)
        if poly is None:
            raise MissingTailOracle("no polynomial tail bound available")
        tail = poly * Fraction(1, max(1, N))  # sum_{n>N} n**-2 <= 1/N
        weight = Fraction(1, 1 << i)
        lo += _floor_grid(weight * _bounded_ratio(w_lo), prec + _HEAD_GUARD)
        hi += _ceil_grid(weight * _bounded_ratio(w_hi + tail), prec + _HEAD_GUARD)
    return lo, hi + Fraction(1, 1 << K)


def _metric_once(y: SpaceId, diff: Sequence, N: int, prec: int):
    if y.tag == "lp":
        return _metric_once_lp(diff, y.param, N, prec)
    if y.tag in ("c0", "linf"):
        return _metric_once_sup(diff, N, prec)
    if y.tag == "cn0":
        return _metric_once_cn0(diff, N, prec)
    if y.tag == "cap-lp":
        return _metric_once_cap(diff, y.param, N, prec)
    if y.tag == "hd":
        return _metric_once_hd(diff, N, prec)
    if y.tag == "ainf":
        return _metric_once_ainf(diff, N, prec)
    raise UnknownSpace(y.tag)


def metric_bound(y: SpaceId, a: Sequence, b: Sequence, budget: int, prec: int) -> MetricBound:
    """Certified bounds on the distance between a and b in y's metric."""
    if a is b or a.spec_key() == b.spec_key():
        return MetricBound(Q0, Q0)
    diff = combine([1, -1], [a, b])
    best_lo = Q0
    best_hi = None
    for rung in _budget_ladder(budget):
        lo, hi = _metric_once(y, diff, rung, prec)
        best_lo = max(best_lo, lo)
        best_hi = hi if best_hi is None else min(best_hi, hi)
    best_lo = _floor_grid(best_lo, prec + 8)
    if best_hi is not None:
        best_hi = _ceil_grid(best_hi, prec + 8)
        if best_hi < best_lo:
            # can only happen through independent roundings; widen to stay sound
            best_hi = best_lo
    return MetricBound(best_lo, best_hi)


_BALL_MEMO: dict = {}


def _radius_bits(radius: Fraction) -> int:
    """Roughly -log2(radius), floored at zero."""
    return max(0, radius.denominator.bit_length() - radius.numerator.bit_length())


def ball_scale(y: SpaceId, seq: Sequence, radius: Fraction, budget: int, prec: int,
               max_halvings: int = 96) -> Fraction:
    """Smallest tried dyadic scalar c = 2**-m with certified d(c*seq, 0) < radius.

    Pure in its inputs; memoized on the sequence's serialized spec."""
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    # candidates are evaluated at a capped internal budget and precision:
    # a certified bound at any budget/precision is sound, the returned
    # scale re-verifies at the caller's settings, and the candidate scan
    # stays deterministic
    eval_budget = min(budget, 128)
    eval_prec = min(prec, max(32, 12 + _radius_bits(radius)))
    key = (str(y), seq.spec_key(), radius, eval_budget, eval_prec, max_halvings)
    if key in _BALL_MEMO:
        return _BALL_MEMO[key]
    origin = zero()
    for m in range(max_halvings + 1):
        c = Fraction(1, 1 << m)
        bound = metric_bound(y, combine([c], [seq]), origin, eval_budget, eval_prec)
        if bound.upper is not None and bound.upper < radius:
            _BALL_MEMO[key] = c
            return c
    raise BudgetExceeded(f"no dyadic scale reached radius {radius} in {max_halvings} halvings")
