import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nagata.errors import NagataError, ValidationError
from nagata.goodrays import (
    ANTICANONICAL,
    Axiom,
    Expansion,
    anticanonical_ray,
    base_ray,
    bqp_ray,
    certificate_from_json,
    certificate_to_json,
    expand_ray,
    good_ray_for_n,
    nagata_direction_distance,
    sqrt10_pairs,
    square_ray,
    surd_convergents,
    validate_certificate,
    waldschmidt_bounds,
)
from nagata.lattice import ClassVector, Ray, SurdSum, intersect, k_pairing, surd_compare, virtual_dimension

C = ClassVector.of


def family(base, h):
    """Closed forms of the three expansion families, in emitted point order."""
    if base == 10:
        runs = [(5, 4)] + [(5 * 2 ** i, 3) for i in range(1, h)] + [(4 * 2 ** h, 9)]
        return C(13 * 2 ** h, *runs)
    if base == 11:
        runs = [(3, 4)] + [(3 * 2 ** i, 3) for i in range(1, h)] + [(2 * 2 ** h, 10)]
        return C(7 * 2 ** h, *runs)
    runs = [(1, 4)] + [(2 ** i, 3) for i in range(1, h)] + [(2 ** h, 7), (2 ** (h - 1), 4)]
    return C(6 * 2 ** (h - 1), *runs)


def chain(base, h):
    cert = base_ray(base)
    for _ in range(h):
        cert = expand_ray(cert, 0, 4)
    return cert


def test_base_rays():
    assert base_ray(10).ray.rep == C(13, 5, (4, 9))
    assert base_ray(11).ray.rep == C(7, 3, (2, 10))
    assert base_ray(12).ray.rep == C(6, (2, 8), (1, 4))
    for n in (10, 11, 12):
        c = base_ray(n).ray.rep
        assert 3 * c.d < sum(c.m)
    with pytest.raises(NagataError):
        base_ray(13)


def test_expand_examples():
    e = expand_ray(base_ray(10), 0, 4)
    assert e.ray.rep == C(26, (5, 4), (8, 9)) and e.ray.rep.n == 13
    assert expand_ray(e, 0, 4).ray.rep == C(52, (5, 4), (10, 3), (16, 9))
    assert expand_ray(base_ray(12), 0, 4).ray.rep.canonical() == C(6, (2, 7), (1, 8))


def test_expand_rejections():
    with pytest.raises(ValidationError):
        expand_ray(base_ray(10), 0, 16)
    with pytest.raises(ValidationError):
        expand_ray(base_ray(10), 10, 4)
    neg = Axiom("sns-10", Ray(C(13, 0, (4, 9))))
    with pytest.raises(ValidationError):
        expand_ray(neg, 0, 4)


@pytest.mark.parametrize("base", [10, 11, 12])
@pytest.mark.parametrize("h", range(1, 6))
def test_family_closed_forms(base, h):
    cert = chain(base, h)
    assert cert.ray.rep == family(base, h)
    n = base + 3 * h
    if not (n ** 0.5).is_integer():
        assert good_ray_for_n(n).ray.rep == family(base, h)


def test_good_ray_examples():
    assert good_ray_for_n(16).ray.rep == C(4, (1, 16))
    assert good_ray_for_n(13).ray.rep == C(26, (5, 4), (8, 9))
    assert good_ray_for_n(14).ray.rep == C(14, (3, 4), (4, 10))
    assert good_ray_for_n(15).ray.rep.canonical() == C(6, (2, 7), (1, 8))
    assert good_ray_for_n(25).ray.rep == C(5, (1, 25))
    with pytest.raises(NagataError):
        good_ray_for_n(9)
    with pytest.raises(NagataError):
        square_ray(3)


@pytest.mark.parametrize("n", [10, 11, 12, 19, 31, 47])
def test_emitted_certificates_validate(n):
    cert = good_ray_for_n(n)
    report = validate_certificate(cert)
    assert report.valid, report.failures
    r = report.ray
    assert intersect(r, r) == 0 and k_pairing(r) >= 0 and r.d > 0
    assert report.nef_scan.obstructions == []


def test_chain_depth_for_19():
    report = validate_certificate(good_ray_for_n(19))
    assert report.valid and report.depth == 3


def test_axiom_k_pairing():
    report = validate_certificate(base_ray(10))
    assert report.valid and report.k_pairing == 2


def test_tampered_ray_fails():
    good = good_ray_for_n(13)
    bad = Expansion(good.parent, good.index, good.s, Ray(C(26, (5, 4), (8, 8), 7)))
    report = validate_certificate(bad)
    assert not report.valid
    assert ("root", "self-intersection != 0") in report.failures


def test_tampered_parent_fails():
    good = expand_ray(good_ray_for_n(13), 0, 4)
    parent = good.parent
    bad_parent = Expansion(parent.parent, parent.index, parent.s, Ray(C(26, (5, 4), (8, 9)).scale(1)))
    bad = Expansion(Axiom("sns-10", Ray(C(13, 6, (4, 9)))), 0, 4, parent.ray)
    report = validate_certificate(Expansion(bad, good.index, good.s, good.ray), scan=False)
    assert not report.valid
    assert any(path == "root.parent.parent" for path, _ in report.failures)
    assert validate_certificate(Expansion(bad_parent, good.index, good.s, good.ray), scan=False).valid


def test_unknown_axiom_and_anticanonical_root_fail():
    assert not validate_certificate(Axiom("made-up", Ray(C(13, 5, (4, 9)))), scan=False).valid
    report = validate_certificate(anticanonical_ray(), scan=False)
    assert not report.valid
    assert any("effective" in msg for _, msg in report.failures)


def test_s9_expansion_validates():
    cert = expand_ray(base_ray(10), 0, 9)
    assert cert.ray.rep == C(39, (5, 9), (12, 9))
    assert validate_certificate(cert).valid
    assert ANTICANONICAL not in json.dumps(certificate_to_json(cert))


def test_expansion_at_other_index():
    cert = expand_ray(base_ray(10), 4, 4)
    assert validate_certificate(cert).valid
    assert cert.ray.rep == C(13, 5, (4, 3), (2, 4), (4, 5))


def test_certificate_json_round_trip():
    for n in (10, 16, 22, 35):
        cert = good_ray_for_n(n)
        text = json.dumps(certificate_to_json(cert))
        back = certificate_from_json(json.loads(text))
        assert back == cert
        assert validate_certificate(back, scan=False).valid
    with pytest.raises(ValidationError):
        certificate_from_json({"kind": "axiom"})
    with pytest.raises(ValidationError):
        certificate_from_json({"kind": "weird", "ray": {"d": 1, "m": []}})


def test_bqp_examples():
    assert bqp_ray(1, 2).rep == C(13, 5, (4, 9))
    assert bqp_ray(6, 13).rep == C(493, 155, (156, 9))
    r = bqp_ray(1, 1)
    assert r.rep == C(5, 4, (1, 9)) and r.rep.scale(r.scale) == C(10, 8, (2, 9))
    with pytest.raises(NagataError):
        bqp_ray(3, 2)


@given(st.integers(1, 300), st.integers(0, 300))
def test_bqp_square_zero(q, extra):
    c = bqp_ray(q, q + extra).rep
    assert intersect(c, c) == 0


def test_convergent_examples():
    cf = surd_convergents(10, 3)
    assert cf.values == [3, Fraction(19, 6), Fraction(117, 37)] and cf.period == [6]
    assert surd_convergents(13, 5).values == [3, 4, Fraction(7, 2), Fraction(11, 3), Fraction(18, 5)]
    assert surd_convergents(2, 4).values == [1, Fraction(3, 2), Fraction(7, 5), Fraction(17, 12)]
    with pytest.raises(NagataError):
        surd_convergents(16, 3)


def test_convergents_are_best_approximations():
    for n in (2, 3, 7, 10, 13, 19):
        vals = surd_convergents(n, 8).values
        for v in vals:
            assert abs(v * v - n) * v.denominator ** 2 <= 2 * n + 1
        errs = [abs(SurdSum.rational(v) - SurdSum.sqrt(n)) for v in vals]
        assert all(surd_compare(a, b) > 0 for a, b in zip(errs, errs[1:]))


def test_sqrt10_pairs_and_distance():
    pairs = sqrt10_pairs(6)
    assert pairs[:3] == [(1, 2), (6, 13), (37, 80)]
    dists = [nagata_direction_distance(bqp_ray(q, p).rep) for q, p in pairs]
    assert all(surd_compare(a, b) > 0 for a, b in zip(dists, dists[1:]))


def least_degree_scan(m, k):
    d = 0
    while virtual_dimension(ClassVector(d, tuple(k * x for x in m))) < 0:
        d += 1
    return d


def test_waldschmidt_examples():
    b = waldschmidt_bounds((1,) * 16, 4, 40)
    assert b.lower == SurdSum.rational(4)
    for k, u in enumerate(b.upper, start=1):
        assert 0 <= u - 4 <= Fraction(2, k)
    b = waldschmidt_bounds((5,) + (4,) * 9, 13, 20)
    assert b.lower == SurdSum.rational(13) and b.upper[0] == 14
    b = waldschmidt_bounds((1,) * 9, 3, 20)
    assert b.lower == SurdSum.rational(3) and all(u == 3 for u in b.upper[2:])
    b = waldschmidt_bounds((1,) * 10, SurdSum.sqrt(10), 5)
    assert b.lower is None
    with pytest.raises(NagataError):
        waldschmidt_bounds((1,) * 16, 5, 3)


def test_waldschmidt_with_certificate():
    cert = good_ray_for_n(13)
    b = waldschmidt_bounds((5,) * 4 + (8,) * 9, 26, 4, certificate=cert)
    assert b.certified_by == "certificate"
    with pytest.raises(ValidationError):
        waldschmidt_bounds((1,) * 16, 4, 3, certificate=cert)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=10), st.integers(1, 12))
def test_least_degree_matches_scan(m, k):
    total = sum(x * x for x in m)
    if total == 0:
        return
    delta = SurdSum.sqrt(total)
    b = waldschmidt_bounds(m, delta, k)
    assert b.upper[-1] == Fraction(least_degree_scan(m, k), k)
    if b.lower is not None:
        assert all(surd_compare(SurdSum.rational(u), b.lower) >= 0 for u in b.upper)
