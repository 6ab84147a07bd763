"""Disjointly supported witness bases with exact coefficient recovery.

Basis element j lives on row j of the dyadic partition, so distinct
elements never share a support point.  Coefficients of a finite
combination are recovered by evaluating at a support point where the
basis element is provably nonzero; for combinations built over the basis
the cross terms vanish exactly and the recovered interval is zero-width,
even when the witness values themselves are irrational.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AllCoefficientsPossiblyZero,
    NoNonzeroSupportPoint,
    NotStrictPair,
    SeqchainError,
)
from .generic import OutsideXCertificate, _terms_agree, disjoint_support
from .intervals import ComplexInterval, Q0
from .sequences import Combine, Sequence, restrict
from .spaces import SpaceId, strictly_included
from .witness import Witness, make_witness


def basis_element(
    inner: SpaceId, outer: SpaceId, j: int, budget: int, prec: int = 64
) -> Witness:
    """The j-th basis witness, supported in disjoint_support(j)."""
    if j < 1:
        raise ValueError("basis index is 1-based")
    if not strictly_included(inner, outer):
        raise NotStrictPair(f"{inner} is not strictly below {outer}")
    return make_witness(inner, outer, disjoint_support(j), budget, prec)


@dataclass(frozen=True)
class SpaceableBasis:
    inner: SpaceId
    outer: SpaceId
    elements: dict[int, Witness]

    def describe(self):
        return {
            "inner": str(self.inner),
            "outer": str(self.outer),
            "elements": {str(j): w.describe() for j, w in sorted(self.elements.items())},
        }


def build_basis(
    inner: SpaceId, outer: SpaceId, count: int, budget: int, prec: int = 64
) -> SpaceableBasis:
    elements = {
        j: basis_element(inner, outer, j, budget, prec) for j in range(1, count + 1)
    }
    return SpaceableBasis(inner=inner, outer=outer, elements=elements)


def _first_nonzero_point(w: Witness, budget: int, prec: int) -> int:
    """First support point of the witness row whose value interval excludes
    zero, with precision escalation per point."""
    support = w.support
    for k in range(1, max(1, budget) + 1):
        n = support.nth(k)
        iv = w.seq.term(n, prec)
        if iv.is_exact_zero:
            continue
        work = prec
        for _ in range(4):
            if iv.excludes_zero():
                return n
            work *= 2
            iv = w.seq.term(n, work)
    raise NoNonzeroSupportPoint(
        f"no provably nonzero value among the first {budget} support points"
    )


def recover_coefficient(
    f: Sequence, basis: SpaceableBasis, j: int, prec: int, budget: int = 256
) -> ComplexInterval:
    """Interval for the coefficient of basis element j in f.

    When f is a combination whose parts are the basis elements themselves
    (recognized by spec identity), the cross terms at the evaluation point
    are exact zeros and the quotient y/y is resolved exactly, so the
    result is zero-width for exact combinations."""
    if j not in basis.elements:
        raise KeyError(f"basis has no element {j}")
    w = basis.elements[j]
    i0 = _first_nonzero_point(w, budget, prec)
    y_iv = w.seq.term(i0, prec)
    while not y_iv.excludes_zero():
        prec *= 2
        y_iv = w.seq.term(i0, prec)

    if isinstance(f, Combine):
        y_key = w.seq.spec_key()
        exact_re, exact_im = Q0, Q0
        residual = None
        for (re, im), base in zip(f.coeffs, f.bases):
            if base.spec_key() == y_key:
                exact_re += re
                exact_im += im
                continue
            v = base.term(i0, prec)
            if v.is_exact_zero:
                continue
            part = v.scale(re, im)
            residual = part if residual is None else residual + part
        out = ComplexInterval.exact(exact_re, exact_im)
        if residual is not None:
            out = out + residual.div(y_iv)
        return out
    return f.term(i0, prec).div(y_iv)


def certify_combination_outside(
    f: Sequence,
    basis: SpaceableBasis,
    active: list[int],
    budget: int,
    prec: int,
) -> OutsideXCertificate:
    """Escape certificate for a finite combination over the basis: pick the
    smallest active index whose recovered coefficient excludes zero, check
    that f masked to that row is the recovered multiple of the row witness,
    and attach the witness's own out-certificate."""
    recovered = {j: recover_coefficient(f, basis, j, prec, budget) for j in sorted(active)}
    j0 = next((j for j, iv in recovered.items() if iv.excludes_zero()), None)
    if j0 is None:
        raise AllCoefficientsPossiblyZero(
            "no recovered coefficient interval excludes zero at this precision"
        )
    w = basis.elements[j0]
    scale = recovered[j0]

    from .generic import _ScaledByInterval

    rhs = _ScaledByInterval(scale, w.seq)
    masked = restrict(f, w.support)
    points = [w.support.nth(k) for k in range(1, min(max(budget, 1), 50) + 1)]
    for n in points:
        if not _terms_agree(masked, rhs, n, prec):
            raise SeqchainError(f"row identity failed at index {n}")

    return OutsideXCertificate(
        inner=basis.inner,
        j0=j0,
        scale=scale,
        cutoff=0,
        row_support=w.support,
        witness_seq=w.seq,
        inner_out=w.out_cert,
        checked_points=tuple(points),
    )
