"""Three-valued membership verdicts with machine-checkable certificates.

``classify`` returns ``CertifiedOut`` or ``CertifiedIn`` only with a
certificate that re-verifies independently via ``check_certificate``;
otherwise ``Undecided``.  Out-certificates are grounded in the growth
tags and block-divergence data carried by the sequence (numeric
estimation alone never certifies divergence or a root-test failure);
in-certificates are grounded in the tail oracles.  Membership claims
whose quantifiers are infinite (every exponent k, every radius r, every
epsilon) are certified through a recorded finite schedule backed by the
totality of the corresponding oracle.

``closed_family_check`` decides the defining inequality of the closed
families used in the decomposition of each space:

* ``FMk:<M>:<k>``   n**k |a_n| <= M for all n          (ainf)
* ``psum:<p>:<M>``  partial sums of |a_n|**p <= M      (lp)
* ``Fnk:<n>:<k>``   |a_s| <= 1/k for all s >= n        (c0)
* ``FM:<M>``        |a_n| <= M for all n               (linf)
* ``Fkj:<k>:<j>``   |a_n|**(1/n) <= 1+1/j for n >= k   (hd)

"Provably fails" means the certified lower bound of the quantity
strictly exceeds the threshold; overlapping comparisons refine the
precision a bounded number of times and then count as non-violations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedSpace
from .intervals import Q0, Q1, format_rational, parse_rational, pow_bounds
from .sequences import Sequence, support_indices_upto
from .spaces import AINF, C0, HD, LINF, SpaceId
from .supports import AllNaturals
from .tags import COMPARATORS, BlockDivergence, RootLowerBound, SubseqLowerBound

_SCHEDULE_K = 8          # exponents / radii sampled by in-certificates
_THRESHOLDS = tuple(1 << t for t in range(8))  # unboundedness spot-check ladder
_SCAN_CAP = 512          # tag index scan bound
_DOUBLING_CAP = 220      # cutoff search: N up to ~2**220
_REFINE_STEPS = 4


# -- interval comparisons ----------------------------------------------------


def _abs_vs_threshold(seq: Sequence, n: int, threshold: Fraction, prec: int):
    """Return +1 if |a_n| > threshold provably, -1 if < provably, 0 unknown."""
    t2 = threshold * threshold
    work = prec
    for _ in range(_REFINE_STEPS):
        sq_lo, sq_hi = seq.term(n, work).abs_sq_bounds()
        if sq_lo > t2:
            return 1
        if sq_hi < t2:
            return -1
        if sq_lo == t2 == sq_hi:
            return 0
        work *= 2
    return 0


def _abs_at_least(seq: Sequence, n: int, bound: Fraction, prec: int) -> bool:
    """Confirm |a_n| >= bound (with refinement; equality counts)."""
    if bound <= 0:
        return True
    b2 = bound * bound
    work = prec
    for _ in range(_REFINE_STEPS):
        sq_lo, sq_hi = seq.term(n, work).abs_sq_bounds()
        if sq_lo >= b2:
            return True
        if sq_hi < b2:
            return False
        work *= 2
    return False


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class DivergentPartialSums:
    """sum |a_n|**exponent diverges, witnessed by disjoint support-position
    blocks with masses >= a named divergent comparator."""

    exponent: Fraction
    blocks: BlockDivergence
    checked_blocks: tuple[int, ...]

    def describe(self):
        return {
            "shape": "divergent-partial-sums",
            "exponent": format_rational(self.exponent),
            "blocks": self.blocks.describe(),
            "checked_blocks": list(self.checked_blocks),
        }


@dataclass(frozen=True)
class UnboundedWeighted:
    """n**k |a_n| exceeds every threshold along the tagged subsequence."""

    k: int
    tag: SubseqLowerBound
    table: tuple[tuple[int, int, Fraction], ...]  # (threshold, m, g(m))

    def describe(self):
        return {
            "shape": "unbounded-weighted",
            "k": self.k,
            "tag": self.tag.label,
            "table": [
                [t, self.tag.s(m), format_rational(g)] for t, m, g in self.table
            ],
        }


@dataclass(frozen=True)
class NotVanishing:
    delta: Fraction
    tag: SubseqLowerBound

    def describe(self):
        return {
            "shape": "not-vanishing",
            "delta": format_rational(self.delta),
            "tag": self.tag.label,
        }


@dataclass(frozen=True)
class Unbounded:
    tag: SubseqLowerBound
    table: tuple[tuple[int, int, Fraction], ...]  # (threshold, m, g(m))

    def describe(self):
        return {
            "shape": "unbounded",
            "tag": self.tag.label,
            "table": [
                [t, self.tag.s(m), format_rational(g)] for t, m, g in self.table
            ],
        }


@dataclass(frozen=True)
class RootLimsupExceeds:
    rho: Fraction
    m_start: int
    tag: RootLowerBound

    def describe(self):
        return {
            "shape": "root-limsup-exceeds",
            "rho": format_rational(self.rho),
            "from_sample": self.m_start,
            "tag": self.tag.label,
        }


OutShape = (DivergentPartialSums, UnboundedWeighted, NotVanishing, Unbounded, RootLimsupExceeds)


@dataclass(frozen=True)
class OutCert:
    space: SpaceId
    shape: object

    def describe(self):
        return {"space": str(self.space), **self.shape.describe()}


@dataclass(frozen=True)
class InCert:
    """Tail-bound witness: a finite head plus oracle-backed tail bounds,
    recorded together with the budgets/precision used so the numbers
    re-verify by exact recomputation."""

    space: SpaceId
    shape: str
    data: tuple
    prec: int

    def describe(self):
        def render(x):
            if isinstance(x, Fraction):
                return format_rational(x)
            if isinstance(x, tuple):
                return [render(y) for y in x]
            return x

        return {
            "space": str(self.space),
            "shape": self.shape,
            "data": render(self.data),
            "prec": self.prec,
        }


@dataclass(frozen=True)
class CertifiedIn:
    cert: InCert


@dataclass(frozen=True)
class CertifiedOut:
    cert: OutCert


@dataclass(frozen=True)
class Undecided:
    budget: int


def verdict_to_json(v) -> dict:
    if isinstance(v, CertifiedIn):
        return {"verdict": "in", "certificate": v.cert.describe()}
    if isinstance(v, CertifiedOut):
        return {"verdict": "out", "certificate": v.cert.describe()}
    return {"verdict": "undecided", "budget": v.budget}


# -- out-certificate construction --------------------------------------------


def _subseq_tags(seq):
    return [t for t in seq.growth_tags if isinstance(t, SubseqLowerBound)]


def _verify_blocks(seq: Sequence, bd: BlockDivergence, js, prec: int) -> bool:
    if bd.comparator not in COMPARATORS:
        return False
    hint = seq.support_hint or AllNaturals()
    for j in js:
        k_lo, k_hi = bd.block(j)
        if k_lo < 1 or k_hi < k_lo:
            return False
        total = Q0
        for k in range(k_lo, k_hi + 1):
            n = hint.nth(k)
            sq_lo = seq.term(n, prec).abs_sq_bounds()[0]
            total += pow_bounds(sq_lo, bd.p / 2, prec)[0]
        if total < bd.beta(j):
            return False
    return True


def _blocks_to_check(bd: BlockDivergence, count: int = 3):
    return tuple(range(bd.j_start, bd.j_start + count))


def _threshold_table(tag: SubseqLowerBound, weight_k: int):
    """(threshold, m, g(m)) rows with s(m)**weight_k * g(m) >= threshold."""
    rows = []
    for threshold in _THRESHOLDS:
        hit = None
        for m in range(1, _SCAN_CAP + 1):
            g = tag.g(m)
            if g <= 0:
                continue
            if Fraction(tag.s(m)) ** weight_k * g >= threshold:
                hit = (threshold, m, g)
                break
        if hit is None:
            return None
        rows.append(hit)
    return tuple(rows)


def _check_table(seq, tag, rows, prec) -> bool:
    return all(_abs_at_least(seq, tag.s(m), g, prec) for _, m, g in rows)


def try_out_certificate(seq: Sequence, space: SpaceId, budget: int, prec: int):
    """Build a re-verified OutCert, or None."""
    if space.tag == "cn0":
        return None  # every coefficient sequence belongs to the product space

    if space.tag == "hd":
        for tag in seq.growth_tags:
            if not isinstance(tag, RootLowerBound):
                continue
            rho = Fraction(2)
            m_start = None
            for m in range(1, _SCAN_CAP + 1):
                if tag.rho(m) >= rho:
                    m_start = m
                    break
            if m_start is None:
                continue
            cert = RootLimsupExceeds(rho=rho, m_start=m_start, tag=tag)
            if _verify_root_cert(seq, cert, samples=3, prec=prec):
                return OutCert(space, cert)
        return None

    if space.tag == "linf":
        for tag in _subseq_tags(seq):
            rows = _threshold_table(tag, weight_k=0)
            if rows and _check_table(seq, tag, rows, prec):
                return OutCert(space, Unbounded(tag=tag, table=rows))
        return None

    if space.tag == "c0":
        for tag in _subseq_tags(seq):
            if tag.g_inf is not None and tag.g_inf > 0:
                cert = NotVanishing(delta=tag.g_inf, tag=tag)
                if _verify_not_vanishing(seq, cert, samples=5, prec=prec):
                    return OutCert(space, cert)
        return None

    if space.tag == "lp":
        bd = seq.lp_divergence(space.param)
        if bd is None or bd.p != space.param:
            return None
        js = _blocks_to_check(bd)
        if _verify_blocks(seq, bd, js, prec):
            return OutCert(
                space, DivergentPartialSums(exponent=bd.p, blocks=bd, checked_blocks=js)
            )
        return None

    if space.tag == "cap-lp":
        got = seq.cap_divergence(space.param)
        if got is None:
            return None
        q, bd = got
        if bd is None or q <= space.param or bd.p != q:
            return None
        js = _blocks_to_check(bd)
        if _verify_blocks(seq, bd, js, prec):
            return OutCert(
                space, DivergentPartialSums(exponent=q, blocks=bd, checked_blocks=js)
            )
        return None

    if space.tag == "ainf":
        for k in range(1, 5):
            for tag in _subseq_tags(seq):
                rows = _threshold_table(tag, weight_k=k)
                if rows and _check_table(seq, tag, rows, prec):
                    return OutCert(space, UnboundedWeighted(k=k, tag=tag, table=rows))
        return None

    raise UnsupportedSpace(space.tag)


def _verify_root_cert(seq, cert: RootLimsupExceeds, samples: int, prec: int) -> bool:
    if cert.rho <= 1:
        return False
    tag = cert.tag
    prev_s = -1
    for m in range(cert.m_start, cert.m_start + max(1, samples)):
        s = tag.s(m)
        if s <= prev_s or s < 1:
            return False
        prev_s = s
        if tag.rho(m) < cert.rho:
            return False
        if not _abs_at_least(seq, s, cert.rho ** s, prec):
            return False
    return True


def _verify_not_vanishing(seq, cert: NotVanishing, samples: int, prec: int) -> bool:
    if cert.delta <= 0 or cert.tag.g_inf is None or cert.tag.g_inf < cert.delta:
        return False
    prev_s = -1
    for m in range(1, max(1, samples) + 1):
        s = cert.tag.s(m)
        if s <= prev_s:
            return False
        prev_s = s
        if not _abs_at_least(seq, s, cert.delta, prec):
            return False
    return True


# -- in-certificate construction ---------------------------------------------


def _lp_head_upper(seq: Sequence, p: Fraction, N: int, prec: int) -> Fraction:
    total = Q0
    for n in support_indices_upto(seq, N):
        sq_hi = seq.term(n, prec).abs_sq_bounds()[1]
        total += pow_bounds(sq_hi, p / 2, prec)[1]
    return total


def _sup_head_upper(seq: Sequence, N: int, prec: int) -> Fraction:
    best = Q0
    for n in support_indices_upto(seq, N):
        best = max(best, seq.term(n, prec).abs_bounds(prec)[1])
    return best


def _disc_head_upper(seq: Sequence, r: Fraction, N: int, prec: int) -> Fraction:
    total = Q0
    for n in support_indices_upto(seq, N):
        total += seq.term(n, prec).abs_bounds(prec)[1] * r ** n
    return total


def _find_cutoff(probe, target: Fraction):
    """Smallest doubling N = 16 * 2**i with probe(N) <= target, or None."""
    N = 16
    for _ in range(_DOUBLING_CAP):
        value = probe(N)
        if value is None:
            return None
        if value <= target:
            return N, value
        N *= 2
    return None


def try_in_certificate(seq: Sequence, space: SpaceId, budget: int, prec: int):
    """Build a re-verified InCert, or None."""
    if space.tag == "cn0":
        return InCert(space, "total", (), prec)

    if space.tag == "lp":
        N = min(budget, 256)
        tail = seq.tail_majorant(N, space.param, prec)
        if tail is None:
            return None
        head = _lp_head_upper(seq, space.param, N, prec)
        return InCert(space, "lp-tail", (space.param, N, head, tail), prec)

    if space.tag == "cap-lp":
        rows = []
        for n in range(1, _SCHEDULE_K + 1):
            p_n = space.param + Fraction(1, n)
            N = min(budget, 256)
            tail = seq.tail_majorant(N, p_n, prec)
            if tail is None:
                return None
            head = _lp_head_upper(seq, p_n, N, prec)
            rows.append((p_n, N, head, tail))
        return InCert(space, "lp-schedule", tuple(rows), prec)

    if space.tag == "c0":
        # the schedule cuts at support positions: beyond the K-th support
        # point every term modulus is <= eps (off-support terms are zero),
        # which keeps the cutoffs representable on sparse supports
        rows = []
        for i in range(_SCHEDULE_K):
            eps = Fraction(1, 1 << i)
            found = _find_cutoff(lambda K: seq.pos_sup_tail(K, prec), eps)
            if found is None:
                return None
            rows.append((eps, found[0], found[1]))
        return InCert(space, "vanishing-schedule", tuple(rows), prec)

    if space.tag == "linf":
        N = min(budget, 256)
        tail = seq.sup_tail(N, prec)
        if tail is None:
            return None
        bound = max(_sup_head_upper(seq, N, prec), tail)
        return InCert(space, "sup-bound", (N, bound), prec)

    if space.tag == "hd":
        rows = []
        for k in range(1, _SCHEDULE_K + 1):
            r_k = Fraction(k, k + 1)
            N = min(budget, 64)
            tail = seq.disc_tail(N, r_k, prec)
            if tail is None:
                return None
            bound = _disc_head_upper(seq, r_k, N, prec) + tail
            rows.append((r_k, N, bound))
        return InCert(space, "disc-schedule", tuple(rows), prec)

    if space.tag == "ainf":
        rows = []
        for k in range(_SCHEDULE_K + 1):
            eps = Fraction(1, 64)
            found = _find_cutoff(lambda N: seq.poly_sup_tail(N, k, prec), eps)
            if found is None:
                return None
            rows.append((k, eps, found[0], found[1]))
        return InCert(space, "poly-schedule", tuple(rows), prec)

    raise UnsupportedSpace(space.tag)


def classify(seq: Sequence, space: SpaceId, budget: int, prec: int):
    """Certified membership verdict for the sequence in the space."""
    out = try_out_certificate(seq, space, budget, prec)
    if out is not None:
        return CertifiedOut(out)
    inc = try_in_certificate(seq, space, budget, prec)
    if inc is not None:
        return CertifiedIn(inc)
    return Undecided(budget)


# -- certificate re-verification ---------------------------------------------


def check_certificate(seq: Sequence, verdict, samples: int, prec: int) -> bool:
    """Independently re-verify a CertifiedIn/CertifiedOut verdict."""
    if isinstance(verdict, CertifiedOut):
        return _check_out(seq, verdict.cert, samples, prec)
    if isinstance(verdict, CertifiedIn):
        return _check_in(seq, verdict.cert)
    raise ValueError("only certified verdicts carry certificates")


def _check_out(seq, cert: OutCert, samples: int, prec: int) -> bool:
    shape = cert.shape
    space = cert.space
    if isinstance(shape, DivergentPartialSums):
        if space.tag == "lp" and shape.exponent != space.param:
            return False
        if space.tag == "cap-lp" and shape.exponent <= space.param:
            return False
        if space.tag not in ("lp", "cap-lp"):
            return False
        if shape.blocks.p != shape.exponent:
            return False
        js = shape.checked_blocks[: max(1, samples)]
        return _verify_blocks(seq, shape.blocks, js, prec)
    if isinstance(shape, UnboundedWeighted):
        if space != AINF or shape.k < 1:
            return False
        for threshold, m, g in shape.table:
            if Fraction(shape.tag.s(m)) ** shape.k * g < threshold:
                return False
        return _check_table(seq, shape.tag, shape.table[: max(1, samples)], prec)
    if isinstance(shape, Unbounded):
        if space != LINF:
            return False
        for threshold, m, g in shape.table:
            if g < threshold:
                return False
        return _check_table(seq, shape.tag, shape.table[: max(1, samples)], prec)
    if isinstance(shape, NotVanishing):
        return space == C0 and _verify_not_vanishing(seq, shape, samples, prec)
    if isinstance(shape, RootLimsupExceeds):
        return space == HD and _verify_root_cert(seq, shape, samples, prec)
    return False


def _check_in(seq, cert: InCert) -> bool:
    space, prec = cert.space, cert.prec
    if cert.shape == "total":
        return space.tag == "cn0"
    if cert.shape == "lp-tail" and space.tag == "lp":
        p, N, head, tail = cert.data
        if p != space.param:
            return False
        return (
            seq.tail_majorant(N, p, prec) == tail
            and _lp_head_upper(seq, p, N, prec) == head
        )
    if cert.shape == "lp-schedule" and space.tag == "cap-lp":
        for p_n, N, head, tail in cert.data:
            if p_n <= space.param:
                return False
            if seq.tail_majorant(N, p_n, prec) != tail:
                return False
            if _lp_head_upper(seq, p_n, N, prec) != head:
                return False
        return len(cert.data) > 0
    if cert.shape == "vanishing-schedule" and space.tag == "c0":
        for eps, K, bound in cert.data:
            got = seq.pos_sup_tail(K, prec)
            if got is None or got != bound or got > eps:
                return False
        return len(cert.data) > 0
    if cert.shape == "sup-bound" and space.tag == "linf":
        N, bound = cert.data
        tail = seq.sup_tail(N, prec)
        if tail is None or tail > bound:
            return False
        return _sup_head_upper(seq, N, prec) <= bound
    if cert.shape == "disc-schedule" and space.tag == "hd":
        for r_k, N, bound in cert.data:
            tail = seq.disc_tail(N, r_k, prec)
            if tail is None:
                return False
            if _disc_head_upper(seq, r_k, N, prec) + tail != bound:
                return False
        return len(cert.data) > 0
    if cert.shape == "poly-schedule" and space.tag == "ainf":
        for k, eps, N, bound in cert.data:
            got = seq.poly_sup_tail(N, k, prec)
            if got is None or got != bound or got > eps:
                return False
        return len(cert.data) > 0
    return False


# -- closed families ----------------------------------------------------------


@dataclass(frozen=True)
class FMk:
    M: Fraction
    k: int


@dataclass(frozen=True)
class PartialSum:
    p: Fraction
    M: Fraction


@dataclass(frozen=True)
class Fnk:
    n: int
    k: int


@dataclass(frozen=True)
class FM:
    M: Fraction


@dataclass(frozen=True)
class Fkj:
    k: int
    j: int


def format_family(fam) -> str:
    if isinstance(fam, FMk):
        return f"FMk:{format_rational(fam.M)}:{fam.k}"
    if isinstance(fam, PartialSum):
        return f"psum:{format_rational(fam.p)}:{format_rational(fam.M)}"
    if isinstance(fam, Fnk):
        return f"Fnk:{fam.n}:{fam.k}"
    if isinstance(fam, FM):
        return f"FM:{format_rational(fam.M)}"
    if isinstance(fam, Fkj):
        return f"Fkj:{fam.k}:{fam.j}"
    raise TypeError(f"not a family ref: {fam!r}")


def parse_family(text: str):
    from .errors import ParseError

    head, *rest = text.strip().split(":")
    try:
        if head == "FMk" and len(rest) == 2:
            return FMk(M=parse_rational(rest[0]), k=int(rest[1]))
        if head == "psum" and len(rest) == 2:
            return PartialSum(p=parse_rational(rest[0]), M=parse_rational(rest[1]))
        if head == "Fnk" and len(rest) == 2:
            return Fnk(n=int(rest[0]), k=int(rest[1]))
        if head == "FM" and len(rest) == 1:
            return FM(M=parse_rational(rest[0]))
        if head == "Fkj" and len(rest) == 2:
            return Fkj(k=int(rest[0]), j=int(rest[1]))
    except ValueError as exc:
        raise ParseError(f"bad family ref {text!r}: {exc}") from None
    raise ParseError(f"bad family ref {text!r}")


@dataclass(frozen=True)
class ViolatedAt:
    """First index where the family inequality provably fails; lower/upper
    bound the violating quantity (the weighted term, the term modulus, or
    the partial sum, depending on the family)."""

    n: int
    lower: Fraction
    upper: Fraction


@dataclass(frozen=True)
class ConsistentUpTo:
    N: int


def _report_abs(seq, n, prec, weight=Q1):
    lo, hi = seq.term(n, prec).abs_bounds(prec)
    return weight * lo, weight * hi


def closed_family_check(seq: Sequence, fam, budget: int, prec: int):
    """Scan indices <= budget for a provable violation of the family's
    defining inequality."""
    if isinstance(fam, FMk):
        if fam.M < 0 or fam.k < 0:
            raise ValueError("family parameters out of range")
        for n in support_indices_upto(seq, budget):
            weight = Fraction(n) ** fam.k
            if weight == 0:
                if fam.k > 0:
                    continue
                weight = Q1
            if _abs_vs_threshold(seq, n, fam.M / weight, prec) > 0:
                lo, hi = _report_abs(seq, n, prec * 2, weight)
                return ViolatedAt(n, lo, hi)
        return ConsistentUpTo(budget)

    if isinstance(fam, PartialSum):
        if fam.p <= 0:
            raise ValueError("exponent must be positive")
        hp = prec + 32
        cum_lo, cum_hi = Q0, Q0
        for n in support_indices_upto(seq, budget):
            sq_lo, sq_hi = seq.term(n, hp).abs_sq_bounds()
            cum_lo += pow_bounds(sq_lo, fam.p / 2, hp)[0]
            cum_hi += pow_bounds(sq_hi, fam.p / 2, hp)[1]
            if cum_lo > fam.M:
                return ViolatedAt(n, cum_lo, cum_hi)
        return ConsistentUpTo(budget)

    if isinstance(fam, Fnk):
        if fam.k < 1:
            raise ValueError("need k >= 1")
        threshold = Fraction(1, fam.k)
        for s in support_indices_upto(seq, budget):
            if s < fam.n:
                continue
            if _abs_vs_threshold(seq, s, threshold, prec) > 0:
                lo, hi = _report_abs(seq, s, prec * 2)
                return ViolatedAt(s, lo, hi)
        return ConsistentUpTo(budget)

    if isinstance(fam, FM):
        if fam.M < 0:
            raise ValueError("bound must be >= 0")
        for n in support_indices_upto(seq, budget):
            if _abs_vs_threshold(seq, n, fam.M, prec) > 0:
                lo, hi = _report_abs(seq, n, prec * 2)
                return ViolatedAt(n, lo, hi)
        return ConsistentUpTo(budget)

    if isinstance(fam, Fkj):
        if fam.k < 1 or fam.j < 1:
            raise ValueError("need k, j >= 1")
        base = 1 + Fraction(1, fam.j)
        for n in support_indices_upto(seq, budget):
            if n < max(fam.k, 1):
                continue
            if _abs_vs_threshold(seq, n, base ** n, prec) > 0:
                lo, hi = _report_abs(seq, n, prec * 2)
                return ViolatedAt(n, lo, hi)
        return ConsistentUpTo(budget)

    raise TypeError(f"not a family ref: {fam!r}")


def decompose_report(seq: Sequence, space: SpaceId, outer, inner, budget: int, prec: int):
    """closed_family_check over a parameter grid; rows keyed by family ref."""
    outer, inner = list(outer), list(inner)
    rows = []

    def run(fam):
        rows.append((fam, closed_family_check(seq, fam, budget, prec)))

    if space.tag == "ainf":
        for k in outer:
            for M in inner:
                run(FMk(M=Fraction(M), k=int(k)))
    elif space.tag == "lp":
        for M in inner:
            run(PartialSum(p=space.param, M=Fraction(M)))
    elif space.tag == "cap-lp":
        for n in outer:
            p_n = space.param + Fraction(1, int(n))
            for M in inner:
                run(PartialSum(p=p_n, M=Fraction(M)))
    elif space.tag == "c0":
        for k in outer:
            for n in inner:
                run(Fnk(n=int(n), k=int(k)))
    elif space.tag == "linf":
        for M in inner:
            run(FM(M=Fraction(M)))
    elif space.tag == "hd":
        for j in outer:
            for k in inner:
                run(Fkj(k=int(k), j=int(j)))
    else:
        raise UnsupportedSpace(f"no decomposition for {space}")
    return rows
