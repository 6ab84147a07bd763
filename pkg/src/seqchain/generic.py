"""Dense-family construction with certified escape from the inner space.

The construction pairs the j-th finitely supported Gaussian-rational
sequence x_j with a witness y_j supported in the j-th row of a dyadic
partition of the naturals, scaled by a dyadic c_j so that f_j = x_j +
c_j y_j sits within 1/j of x_j in the outer metric.  A nonzero finite
combination of the f_j, restricted to one witness row past the joint
support of the x parts, reduces to a scalar multiple of that row's
witness; the escape certificate packages that restriction identity
together with the witness's own out-certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .diagnose import CertifiedOut, OutCert, check_certificate
from .errors import (
    AllZeroCoefficients,
    BudgetExceeded,
    SeqchainError,
    UnsupportedOuter,
)
from .intervals import ComplexInterval, Q0
from .sequences import (
    FiniteRational,
    Sequence,
    combine,
    support_indices_upto,
    zero,
)
from .spaces import SpaceId, ball_scale, metric_bound, strictly_included
from .supports import DyadicRow, SupportSet, TailFrom
from .witness import Witness, make_witness


def disjoint_support(j: int) -> DyadicRow:
    """Row j of the dyadic partition: n with v2(n+1) = j-1.  The rows are
    infinite, pairwise disjoint, and cover the naturals."""
    return DyadicRow(j)


# -- enumeration of finitely supported Gaussian-rational sequences ------------


def _cw_rational(n: int) -> Fraction:
    """n-th positive rational (n >= 1) along the Calkin-Wilf tree."""
    num, den = 1, 1
    for bit in bin(n)[3:]:
        if bit == "1":
            num += den
        else:
            den += num
    return Fraction(num, den)


def _cw_index(q: Fraction) -> int:
    num, den = q.numerator, q.denominator
    bits = []
    while (num, den) != (1, 1):
        if num > den:
            bits.append("1")
            num -= den
        else:
            bits.append("0")
            den -= num
    return int("1" + "".join(reversed(bits)), 2)


def _decode_rational(code: int) -> Fraction:
    if code == 0:
        return Q0
    if code % 2 == 1:
        return _cw_rational((code + 1) // 2)
    return -_cw_rational(code // 2)


def _encode_rational(q: Fraction) -> int:
    if q == 0:
        return 0
    if q > 0:
        return 2 * _cw_index(q) - 1
    return 2 * _cw_index(-q)


def _pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def _unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def _decode_value(code: int) -> tuple[Fraction, Fraction]:
    re_code, im_code = _unpair(code)
    return _decode_rational(re_code), _decode_rational(im_code)


def _encode_value(re: Fraction, im: Fraction) -> int:
    return _pair(_encode_rational(re), _encode_rational(im))


def _decode_list(code: int) -> list[int]:
    out = []
    while code:
        head, code = _unpair(code - 1)
        out.append(head)
    return out


def _encode_list(items: list[int]) -> int:
    code = 0
    for head in reversed(items):
        code = _pair(head, code) + 1
    return code


def enumerate_rational_c00(j: int) -> FiniteRational:
    """The j-th finitely supported Gaussian-rational sequence (j >= 1).

    A bijection: j = 1 is the zero sequence, and encode_rational_c00
    inverts the map (the final entry of the dense value list is forced
    nonzero, which makes the trimmed representation canonical)."""
    if j < 1:
        raise ValueError("enumeration is 1-based")
    if j == 1:
        return zero()
    prefix_code, last_code = _unpair(j - 2)
    values = [_decode_value(c) for c in _decode_list(prefix_code)]
    values.append(_decode_value(last_code + 1))
    return FiniteRational({n: v for n, v in enumerate(values)})


def encode_rational_c00(seq: FiniteRational) -> int:
    """Inverse of enumerate_rational_c00."""
    if not seq.entries:
        return 1
    top = seq.max_index
    dense = [seq.entries.get(n, (Q0, Q0)) for n in range(top + 1)]
    last = _encode_value(*dense[-1])
    prefix = _encode_list([_encode_value(re, im) for re, im in dense[:-1]])
    return _pair(prefix, last - 1) + 2


# -- dense family elements ----------------------------------------------------


@dataclass(frozen=True)
class DenseFamilyElement:
    j: int
    x: FiniteRational
    witness: Witness  # supported in disjoint_support(j)
    scale: Fraction  # dyadic c_j with d_Y(c_j y_j, 0) < 1/j
    f: Sequence  # x + scale * witness.seq

    def describe(self):
        from .intervals import format_rational

        return {
            "j": self.j,
            "x": self.x.spec(),
            "witness": self.witness.describe(),
            "scale": format_rational(self.scale),
            "f": self.f.spec(),
        }


def _require_outer(outer: SpaceId):
    if outer.tag == "linf":
        raise UnsupportedOuter(
            "the bounded-sequence space is excluded from the dense-family construction"
        )


def dense_family_element(
    j: int, outer: SpaceId, inner: SpaceId, budget: int, prec: int
) -> DenseFamilyElement:
    """The j-th element f_j = x_j + c_j y_j of the dense family."""
    if j < 1:
        raise ValueError("element index is 1-based")
    _require_outer(outer)
    if not strictly_included(inner, outer):
        from .errors import NotStrictPair

        raise NotStrictPair(f"{inner} is not strictly below {outer}")
    x = enumerate_rational_c00(j)
    w = make_witness(inner, outer, disjoint_support(j), budget, prec)
    c = ball_scale(outer, w.seq, Fraction(1, j), budget, prec)
    f = combine([1, c], [x, w.seq])
    return DenseFamilyElement(j=j, x=x, witness=w, scale=c, f=f)


# -- escape certificates -------------------------------------------------------


@dataclass(frozen=True)
class OutsideXCertificate:
    """Certificate that a finite combination escapes the inner space.

    The combination, masked to the chosen witness row from the cutoff on,
    agrees pointwise with scale * witness; were the combination inside the
    inner space, masking would keep it there and the witness (a scalar
    multiple away, modulo a finitely supported correction) would be pulled
    in too, contradicting its out-certificate."""

    inner: SpaceId
    j0: int
    scale: ComplexInterval  # exact for exact-coefficient combinations
    cutoff: int
    row_support: SupportSet
    witness_seq: Sequence
    inner_out: OutCert
    checked_points: tuple[int, ...]

    def describe(self):
        from .intervals import format_rational

        scale = {
            "re": [format_rational(self.scale.re_lo), format_rational(self.scale.re_hi)],
            "im": [format_rational(self.scale.im_lo), format_rational(self.scale.im_hi)],
        }
        return {
            "inner": str(self.inner),
            "j0": self.j0,
            "scale": scale,
            "cutoff": self.cutoff,
            "checked_points": list(self.checked_points),
            "witness_out_certificate": self.inner_out.describe(),
        }


def _terms_agree(f: Sequence, g: Sequence, n: int, prec: int) -> bool:
    """Consistency of two term intervals (containment or zero difference),
    re-checked at doubled precision."""
    for work in (prec, 2 * prec):
        a, b = f.term(n, work), g.term(n, work)
        if a.subset_of(b) or b.subset_of(a):
            continue
        if not (a - b).contains(0, 0):
            return False
    return True


def _identity_points(support: SupportSet, cutoff: int, count: int) -> list[int]:
    tail = TailFrom(support, cutoff)
    return [tail.nth(k) for k in range(1, count + 1)]


def _masked(seq: Sequence, support: SupportSet, cutoff: int) -> Sequence:
    from .sequences import restrict

    return restrict(seq, TailFrom(support, cutoff))


def certify_outside(
    coeffs, elements: list[DenseFamilyElement], budget: int, prec: int
) -> OutsideXCertificate:
    """Escape certificate for sum_j t_j f_j over dense-family elements."""
    coeffs = [c if isinstance(c, tuple) else (Fraction(c), Q0) for c in coeffs]
    if len(coeffs) != len(elements):
        from .errors import LengthMismatch

        raise LengthMismatch("one coefficient per element")
    pick = None
    for (re, im), element in zip(coeffs, elements):
        if re != 0 or im != 0:
            pick = ((Fraction(re), Fraction(im)), element)
            break
    if pick is None:
        raise AllZeroCoefficients("the combination is identically zero")
    (t_re, t_im), chosen = pick

    cutoff = 1 + max((e.x.max_index for e in elements), default=-1)
    cutoff = max(cutoff, 0)
    g = combine(coeffs, [e.f for e in elements])

    c = chosen.scale
    scale = ComplexInterval.exact(t_re * c, t_im * c)
    rhs = combine([(t_re * c, t_im * c)], [chosen.witness.seq])
    row = chosen.witness.support

    points = _identity_points(row, cutoff, min(max(budget, 1), 50))
    masked = _masked(g, row, cutoff)
    for n in points:
        if not _terms_agree(masked, rhs, n, prec):
            raise SeqchainError(f"restriction identity failed at index {n}")

    return OutsideXCertificate(
        inner=chosen.witness.inner,
        j0=chosen.j,
        scale=scale,
        cutoff=cutoff,
        row_support=row,
        witness_seq=chosen.witness.seq,
        inner_out=chosen.witness.out_cert,
        checked_points=tuple(points),
    )


def check_outside_certificate(
    f: Sequence, cert: OutsideXCertificate, samples: int, prec: int
) -> bool:
    """Re-verify an escape certificate against the combination f."""
    if not cert.scale.excludes_zero():
        return False
    if cert.inner_out.space != cert.inner:
        return False
    rhs = _ScaledByInterval(cert.scale, cert.witness_seq)
    masked = _masked(f, cert.row_support, cert.cutoff)
    points = cert.checked_points[: max(1, samples)]
    if not points:
        return False
    for n in points:
        if not cert.row_support.member(n) or n < cert.cutoff:
            return False
        if not _terms_agree(masked, rhs, n, prec):
            return False
    return check_certificate(cert.witness_seq, CertifiedOut(cert.inner_out), samples, prec)


class _ScaledByInterval(Sequence):
    """Witness scaled by a (possibly non-exact) interval coefficient."""

    kind = "scaled"

    def __init__(self, scale: ComplexInterval, base: Sequence):
        super().__init__()
        self.scale_iv = scale
        self.base = base
        self.support_hint = base.support_hint

    def _term(self, n, prec):
        mag = 1 + int(max(abs(self.scale_iv.re_hi), abs(self.scale_iv.im_hi)))
        return self.scale_iv.mul(self.base.term(n, prec + mag.bit_length() + 2))

    def spec(self):
        return {"kind": "scaled", "base": self.base.spec()}


# -- approximation with certified avoidance ------------------------------------


@dataclass(frozen=True)
class ApproxResult:
    f: Sequence
    certificate: OutsideXCertificate
    distance_upper: Fraction

    def describe(self):
        from .intervals import format_rational

        return {
            "f": self.f.spec(),
            "certificate": self.certificate.describe(),
            "distance_upper": format_rational(self.distance_upper),
        }


def _round_to_grid(value: Fraction, grid_bits: int) -> Fraction:
    scale = 1 << grid_bits
    return Fraction(round(value * scale), scale)


def _rational_truncation(
    target: Sequence, outer: SpaceId, half_eps: Fraction, budget: int, prec: int
) -> FiniteRational:
    """A Gaussian-rational c00 sequence within half_eps of the target."""
    if isinstance(target, FiniteRational):
        return target
    for head in (64, 256, min(1024, budget), budget):
        for grid_bits in (prec, 2 * prec):
            entries = {}
            for n in support_indices_upto(target, head):
                iv = target.term(n, grid_bits + 4)
                re = _round_to_grid((iv.re_lo + iv.re_hi) / 2, grid_bits)
                im = _round_to_grid((iv.im_lo + iv.im_hi) / 2, grid_bits)
                entries[n] = (re, im)
            x = FiniteRational(entries)
            bound = metric_bound(outer, target, x, budget, prec)
            if bound.upper is not None and bound.upper < half_eps:
                return x
    raise BudgetExceeded("no rational truncation reached the target distance")


def approximate_with_avoider(
    target: Sequence,
    epsilon: Fraction,
    outer: SpaceId,
    inner: SpaceId,
    budget: int,
    prec: int,
) -> ApproxResult:
    """f = x + c y within epsilon of the target in the outer metric, with a
    certificate that f escapes the inner space."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    _require_outer(outer)
    if not strictly_included(inner, outer):
        from .errors import NotStrictPair

        raise NotStrictPair(f"{inner} is not strictly below {outer}")

    x = _rational_truncation(target, outer, epsilon / 2, budget, prec)
    row = disjoint_support(1)
    w = make_witness(inner, outer, row, budget, prec)
    c = ball_scale(outer, w.seq, epsilon / 2, budget, prec)

    element = DenseFamilyElement(
        j=1, x=x, witness=w, scale=c, f=combine([1, c], [x, w.seq])
    )
    cert = certify_outside([1], [element], budget, prec)

    for b in sorted({min(64, budget), min(256, budget), budget}):
        dist = metric_bound(outer, element.f, target, b, prec)
        if dist.upper is not None and dist.upper < epsilon:
            return ApproxResult(f=element.f, certificate=cert, distance_upper=dist.upper)
    raise BudgetExceeded("certified distance bound did not reach epsilon")
