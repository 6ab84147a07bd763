import random
from fractions import Fraction

import pytest

from conftest import BUDGET, PREC
from seqchain.errors import (
    AllZeroCoefficients,
    LengthMismatch,
    NotStrictPair,
    UnsupportedOuter,
)
from seqchain.families import gap_lp_cap
from seqchain.generic import (
    approximate_with_avoider,
    certify_outside,
    check_outside_certificate,
    dense_family_element,
    disjoint_support,
    encode_rational_c00,
    enumerate_rational_c00,
)
from seqchain.sequences import FiniteRational, combine, term_at, zero
from seqchain.spaces import C0, CN0, HD, LINF, AINF, lp, metric_bound

F = Fraction


# -- pairwise disjoint supports ----------------------------------------------


def test_disjoint_support_first_rows():
    assert [disjoint_support(1).nth(k) for k in range(1, 5)] == [0, 2, 4, 6]
    assert [disjoint_support(2).nth(k) for k in range(1, 5)] == [1, 5, 9, 13]


def test_disjoint_rows_cover_and_never_overlap():
    owner = {}
    for j in range(1, 4):
        row = disjoint_support(j)
        for n in range(1001):
            if row.member(n):
                assert n not in owner
                owner[n] = j
    missing = set(range(1001)) - set(owner)
    # whatever rows 1..3 miss belongs to deeper rows
    assert all(disjoint_support(4).member(n) or (n + 1) % 8 == 0 for n in missing)


# -- enumeration ----------------------------------------------------------------


def test_enumeration_starts_with_zero_sequence():
    assert enumerate_rational_c00(1).entries == {}


def test_enumeration_roundtrip_10k():
    for j in range(1, 10_001):
        assert encode_rational_c00(enumerate_rational_c00(j)) == j


def test_enumeration_structural_properties():
    rng = random.Random(99)
    for _ in range(1000):
        j = rng.randint(1, 10**9)
        x = enumerate_rational_c00(j)
        assert isinstance(x, FiniteRational)
        for n, (re, im) in x.entries.items():
            assert n >= 0 and isinstance(re, Fraction) and isinstance(im, Fraction)


def test_enumeration_hits_chosen_points():
    targets = [
        FiniteRational({}),
        FiniteRational({0: F(1)}),
        FiniteRational({0: (F(-2, 3), F(1, 7)), 4: F(5)}),
        FiniteRational({11: (F(0), F(-9, 2))}),
    ]
    for t in targets:
        j = encode_rational_c00(t)
        assert enumerate_rational_c00(j).entries == t.entries


# -- dense family elements --------------------------------------------------------


def test_first_element_is_scaled_witness():
    el = dense_family_element(1, C0, lp(1), BUDGET, PREC)
    assert el.x.entries == {}
    mb = metric_bound(C0, el.f, el.x, BUDGET, PREC)
    assert mb.upper < 1


@pytest.mark.parametrize("pair", [(lp(1), C0), (AINF, lp(1)), (HD, CN0), (C0, CN0)],
                         ids=lambda p: f"{p[0]}<{p[1]}")
def test_elements_stay_close_to_their_rational_anchor(pair):
    inner, outer = pair
    for j in range(1, 9):
        el = dense_family_element(j, outer, inner, BUDGET, PREC)
        mb = metric_bound(outer, el.f, el.x, BUDGET, PREC)
        assert mb.upper < F(1, j), (str(outer), j, mb)


def test_element_witness_lives_on_its_row():
    el = dense_family_element(3, CN0, HD, BUDGET, PREC)
    row = disjoint_support(3)
    for n in range(100):
        if not row.member(n):
            assert el.witness.seq.term(n, 8).is_exact_zero


def test_linf_outer_excluded():
    with pytest.raises(UnsupportedOuter):
        dense_family_element(1, LINF, C0, BUDGET, PREC)
    with pytest.raises(UnsupportedOuter):
        approximate_with_avoider(zero(), F(1), LINF, C0, BUDGET, PREC)


def test_non_strict_pair_rejected():
    with pytest.raises(NotStrictPair):
        dense_family_element(1, lp(1), C0, BUDGET, PREC)


# -- escape certificates -----------------------------------------------------------


def _elements(pair, count):
    inner, outer = pair
    return [dense_family_element(j, outer, inner, BUDGET, PREC) for j in range(1, count + 1)]


def test_single_element_certificate():
    els = _elements((lp(1), C0), 1)
    cert = certify_outside([1], els, BUDGET, PREC)
    assert cert.j0 == 1 and cert.scale.is_exact
    f = combine([1], [els[0].f])
    assert check_outside_certificate(f, cert, samples=3, prec=PREC)


def test_certificate_skips_zero_coefficients():
    els = _elements((lp(1), C0), 2)
    t = [0, (F(2), F(1))]
    cert = certify_outside(t, els, BUDGET, PREC)
    assert cert.j0 == 2
    assert cert.scale.re_lo == 2 * els[1].scale and cert.scale.im_lo == els[1].scale
    g = combine(t, [e.f for e in els])
    assert check_outside_certificate(g, cert, samples=3, prec=PREC)


def test_all_zero_coefficients_rejected():
    els = _elements((lp(1), C0), 2)
    with pytest.raises(AllZeroCoefficients):
        certify_outside([0, 0], els, BUDGET, PREC)


def test_coefficient_arity_checked():
    els = _elements((lp(1), C0), 2)
    with pytest.raises(LengthMismatch):
        certify_outside([1], els, BUDGET, PREC)


def test_cutoff_clears_every_anchor():
    els = _elements((lp(1), C0), 3)
    cert = certify_outside([1, 1, 1], els, BUDGET, PREC)
    assert cert.cutoff == 1 + max(e.x.max_index for e in els)
    assert all(n >= cert.cutoff for n in cert.checked_points)


def test_random_rational_combinations_certify():
    rng = random.Random(42)
    els = _elements((lp(1), C0), 5)
    for _ in range(50):
        t = [
            (F(rng.randint(-3, 3)), F(rng.randint(-3, 3)))
            for _ in range(5)
        ]
        if all(re == 0 and im == 0 for re, im in t):
            t[rng.randrange(5)] = (F(1), F(0))
        cert = certify_outside(t, els, BUDGET, PREC)
        g = combine(t, [e.f for e in els])
        assert check_outside_certificate(g, cert, samples=2, prec=PREC)


def test_check_rejects_mismatched_combination():
    els = _elements((lp(1), C0), 2)
    cert = certify_outside([1, 0], els, BUDGET, PREC)
    other = combine([0, 1], [e.f for e in els])  # lives on row 2, cert checks row 1
    assert not check_outside_certificate(other, cert, samples=3, prec=PREC)


# -- approximation -----------------------------------------------------------------


def test_approximate_zero_target():
    res = approximate_with_avoider(zero(), F(1), C0, lp(1), BUDGET, PREC)
    assert res.distance_upper < 1
    assert check_outside_certificate(res.f, res.certificate, 3, PREC)


def test_approximate_exact_rational_target():
    target = FiniteRational({0: F(1)})
    res = approximate_with_avoider(target, F(1, 4), C0, lp(1), BUDGET, PREC)
    assert res.distance_upper < F(1, 4)
    # the anchor is the target itself; f differs only by the scaled witness,
    # so the distance is realized by the witness part alone
    iv = term_at(res.f, 0, 30)
    assert iv.re_lo >= 1 and iv.re_hi <= 1 + F(1, 4)


def test_approximate_harmonic_type_target_via_truncation():
    target = gap_lp_cap(F(1))  # ~ 1/(n log n) decay: vanishing, not summable
    res = approximate_with_avoider(target, F(1, 32), C0, lp(1), BUDGET, PREC)
    assert res.distance_upper < F(1, 32)
    assert check_outside_certificate(res.f, res.certificate, 3, PREC)


def test_approximate_requires_positive_epsilon():
    with pytest.raises(ValueError):
        approximate_with_avoider(zero(), F(0), C0, lp(1), BUDGET, PREC)
