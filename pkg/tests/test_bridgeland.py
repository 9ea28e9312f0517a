import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fmlat.bridgeland import (FM2, GenBiratClass, RankFdeg, canonical_ab,
                              gen_birat_classify, mat2_mul, phi_family,
                              random_admissible, transform2, wit1_forced)
from fmlat.errors import AdmissibilityError, CoprimalityError, InputError

NEG_ID = ((-1, 0), (0, -1))


# FM2 admissibility

def test_fm2_accepts_admissible():
    phi = FM2(3, 1, -7, -2)
    assert phi.matrix == ((3, 1), (-7, -2))
    assert phi.entries() == (3, 1, -7, -2)


def test_fm2_rejects_bad_determinant():
    with pytest.raises(AdmissibilityError, match="determinant"):
        FM2(1, 1, 1, 1)


def test_fm2_rejects_nonpositive_a():
    with pytest.raises(AdmissibilityError, match="positive"):
        FM2(1, -1, 0, 1)


def test_fm2_lambda_divisibility():
    FM2(1, 1, 0, 1, lam=2)      # e = 0 is divisible by anything
    with pytest.raises(AdmissibilityError, match="lambda"):
        FM2(0, 1, -1, 1, lam=2)  # det = 0*1 - 1*(-1) = 1 but e odd


# canonical (a, b)

def test_canonical_ab_worked_pairs():
    assert canonical_ab(2, 1) == (1, 1)
    assert canonical_ab(5, 3) == (3, 2)


def test_canonical_ab_coprimality_error():
    with pytest.raises(CoprimalityError):
        canonical_ab(4, 2)


def test_canonical_ab_requires_r_above_one():
    with pytest.raises(InputError):
        canonical_ab(1, 0)


def test_canonical_ab_brute_force_oracle():
    for r in range(2, 51):
        for d in range(-50, 51):
            if math.gcd(r, d) != 1:
                continue
            solutions = [(a, (1 + a * d) // r) for a in range(1, r)
                         if (1 + a * d) % r == 0]
            assert len(solutions) == 1
            assert canonical_ab(r, d) == solutions[0]
            a, b = solutions[0]
            assert b * r - a * d == 1 and 0 < a < r


# families and relations

def test_phi_family_worked_example():
    fam = phi_family(3, 1, -7, -2)
    assert fam.relations_verified
    assert mat2_mul(fam.phi.matrix, fam.psi) == NEG_ID
    assert fam.psi == ((2, 1), (-7, -3))
    assert fam.omega == ((-2, 1), (-7, 3))
    assert fam.xi == ((-3, 1), (-7, 2))


def test_phi_family_admissibility_errors():
    fam = phi_family(1, 1, 0, 1)     # det = 1, passes
    assert fam.relations_verified
    with pytest.raises(AdmissibilityError, match="lambda"):
        phi_family(0, 1, -1, 1, lam=2)


def test_family_relations_random_admissible():
    rng = random.Random(31337)
    for _ in range(100):
        phi = random_admissible(rng)
        fam = phi_family(*phi.entries(), phi.lam)
        assert fam.relations_verified
        m = phi.matrix
        assert mat2_mul(m, fam.psi) == mat2_mul(fam.psi, m) == NEG_ID
        assert mat2_mul(fam.xi, fam.omega) == mat2_mul(fam.omega, fam.xi) == NEG_ID
        assert max(abs(x) for x in phi.entries()) <= 50


def test_vb_slope_inequality_reduces_to_determinant():
    rng = random.Random(424242)
    checked = 0
    for _ in range(300):
        phi = random_admissible(rng)
        c, a, e, b = phi.entries()
        r = rng.randint(1, 12)
        d = rng.randint(-12, 12)
        if b * r - a * d > 0 and c > 0:
            checked += 1
            assert a * (e * r - c * d) < c * (b * r - a * d)
    assert checked > 20


# transform2

def test_transform2_fiber_sheaf_image():
    phi = FM2(3, 1, -7, -2)
    assert transform2(phi.matrix, RankFdeg(0, 1)) == RankFdeg(1, -2)


def test_transform2_negated_psi_column():
    # -psi = [[b, -a], [-e, c]] sends (r, d) to (br - ad, cd - er)
    for (c, a, e, b) in ((3, 1, -7, -2), (5, 2, -8, -3)):
        FM2(c, a, e, b)
        neg_psi = ((b, -a), (-e, c))
        for (r, d) in ((5, 3), (2, 1), (7, -4)):
            assert transform2(neg_psi, (r, d)) == (b * r - a * d, c * d - e * r)


def test_transform2_identity():
    assert transform2(((1, 0), (0, 1)), RankFdeg(4, -9)) == RankFdeg(4, -9)


# forced degree-one transforms

def test_wit1_forced_examples():
    assert wit1_forced(RankFdeg(5, 3), 3, 2)      # 2/3 > 3/5
    assert not wit1_forced(RankFdeg(2, 1), 1, 0)  # 0 > 1/2 fails
    assert not wit1_forced(RankFdeg(2, 1), 2, 1)  # equality is not enough


def test_wit1_forced_rejects_nonpositive_rank():
    with pytest.raises(InputError):
        wit1_forced(RankFdeg(0, 1), 1, 1)
    with pytest.raises(InputError):
        wit1_forced(RankFdeg(1, 1), 0, 1)


@settings(max_examples=60)
@given(st.integers(1, 20), st.integers(-20, 20), st.integers(1, 8),
       st.integers(-20, 20))
def test_wit1_forced_monotone_in_b(r, d, a, b):
    v = RankFdeg(r, d)
    if wit1_forced(v, a, b):
        assert wit1_forced(v, a, b + 1)


@settings(max_examples=60)
@given(st.integers(1, 20), st.integers(-20, 20), st.integers(1, 8),
       st.integers(-20, 20))
def test_wit1_forced_antitone_in_d(r, d, a, b):
    if wit1_forced(RankFdeg(r, d), a, b):
        assert wit1_forced(RankFdeg(r, d - 1), a, b)


# birationality classification

def _phi_ab(a, b):
    # an admissible matrix with the prescribed lower row built from
    # canonical data: need cb - ae = 1
    for c in range(-30, 31):
        for e in range(-30, 31):
            if c * b - a * e == 1:
                return FM2(c, a, e, b)
    raise AssertionError("no admissible matrix found")


def test_classify_rank_one_birational():
    phi = _phi_ab(3, 2)
    assert 2 * 5 - 3 * 3 == 1
    assert gen_birat_classify(RankFdeg(5, 3), phi) is GenBiratClass.BIRATIONAL_RANK_ONE


def test_classify_regular_isomorphism_with_dimension():
    phi = _phi_ab(3, 2)
    assert gen_birat_classify(RankFdeg(5, 3), phi, t=1) is \
        GenBiratClass.REGULAR_ISOMORPHISM


def test_classify_codim_two_on_k3():
    # rk w = b*r - a*d = 3 with (a, b) = (1, 1), (r, d) = (5, 2)
    phi = _phi_ab(1, 1)
    assert gen_birat_classify(RankFdeg(5, 2), phi, k3=True) is \
        GenBiratClass.BIRATIONAL_CODIM_TWO
    assert gen_birat_classify(RankFdeg(5, 2), phi, k3=False) is \
        GenBiratClass.BIRATIONAL_HIGH_RANK


def test_classify_rank_two_stays_high_rank_on_k3():
    phi = _phi_ab(1, 1)   # rk w = r - d
    assert gen_birat_classify(RankFdeg(5, 3), phi, k3=True) is \
        GenBiratClass.BIRATIONAL_HIGH_RANK


def test_classify_not_covered():
    phi = _phi_ab(3, 2)
    # rk w = 2*2 - 3*1 = 1 but r = 2 is not above a = 3
    assert gen_birat_classify(RankFdeg(2, 1), phi) is GenBiratClass.NOT_COVERED


def test_classify_requires_coprime_input():
    phi = _phi_ab(1, 1)
    with pytest.raises(CoprimalityError):
        gen_birat_classify(RankFdeg(4, 2), phi)


def test_classify_regular_implies_rank_one_inequality():
    rng = random.Random(2718)
    for _ in range(200):
        phi = random_admissible(rng)
        r = rng.randint(1, 15)
        d = rng.randint(-15, 15)
        if math.gcd(r, d) != 1:
            continue
        t = rng.randint(1, 5)
        got = gen_birat_classify(RankFdeg(r, d), phi, t=t)
        if got is GenBiratClass.REGULAR_ISOMORPHISM:
            assert r > phi.a   # t >= 1 makes the rank-one bound automatic


def test_fm2_rejects_nonpositive_lambda_and_nonints():
    with pytest.raises(InputError, match="lambda"):
        FM2(1, 1, 0, 1, lam=0)
    with pytest.raises(InputError, match="integer"):
        FM2(1, 1, 0, "1")


def test_random_admissible_respects_lambda():
    rng = random.Random(8)
    for _ in range(30):
        phi = random_admissible(rng, lam=2, bound=60)
        assert phi.e % 2 == 0 and phi.lam == 2
