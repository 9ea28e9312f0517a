from fractions import Fraction

import pytest
from hypothesis import given, settings

from fmlat.chow import (STANDARD_K3, UNIT_CLASS, ch_line_bundle,
                        from_coords, mult, pairing_gram)
from fmlat.errors import InputError, ReductionError, SingularMatrixError
from fmlat.linalg import Mat
from fmlat.operators import (GoldenName, IDENTITY, Operator, apply, build,
                             combine, golden, op_pi_tensor, op_tensor,
                             pairing_preserved, pd_line_class,
                             pd_pushforward_twist_class, pi_pushpull,
                             restrict2)

from helpers import coh_k3, small_q

S = STANDARD_K3
SIGMA_CH = ch_line_bundle(S, (1, 0))
D_RANGE = list(range(1, 13))


# elementary generators against the pinned tables

def test_op_tensor_sigma():
    assert op_tensor(SIGMA_CH).matrix == Mat([[1, 0, 0, 0],
                                              [1, 1, 0, 0],
                                              [0, 0, 1, 0],
                                              [-1, -2, 1, 1]])


@pytest.mark.parametrize("d", D_RANGE)
def test_op_tensor_kernel_line(d):
    m = d + 1
    assert op_tensor(pd_line_class(d)).matrix == Mat([[1, 0, 0, 0],
                                                      [m, 1, 0, 0],
                                                      [2 * m, 0, 1, 0],
                                                      [m * m, 0, m, 1]])


@pytest.mark.parametrize("d", D_RANGE)
def test_op_tensor_pushforward_twist(d):
    expected = Mat([[d, 0, 0, 0],
                    [-1, d, 0, 0],
                    [d * d + d, 0, d, 0],
                    [-2 * d - 1, d * d + d + 2, -1, d]])
    assert op_tensor(pd_pushforward_twist_class(d)).matrix == expected


def test_op_pi_tensor_unit():
    assert op_pi_tensor(UNIT_CLASS).matrix == Mat([[0, 1, 0, 0],
                                                   [0, 0, 0, 0],
                                                   [2, -1, 0, 1],
                                                   [0, 0, 0, 0]])


def test_op_pi_tensor_sigma():
    assert op_pi_tensor(SIGMA_CH).matrix == Mat([[1, 1, 0, 0],
                                                 [0, 0, 0, 0],
                                                 [0, -3, 1, 1],
                                                 [0, 0, 0, 0]])


def test_op_pi_tensor_is_composition():
    lhs = op_pi_tensor(SIGMA_CH)
    rhs = combine("compose", [op_pi_tensor(UNIT_CLASS), op_tensor(SIGMA_CH)])
    assert lhs.matrix == rhs.matrix


@settings(max_examples=40)
@given(coh_k3(), coh_k3(), small_q())
def test_op_tensor_application_is_multiplication(c, v, k):
    op = op_tensor(c)
    assert op.apply(v) == mult(S, c, v)
    assert op.apply(k * v) == k * op.apply(v)


@settings(max_examples=40)
@given(coh_k3(), coh_k3(), small_q(), small_q())
def test_apply_is_linear(v, w, a, b):
    op = build(GoldenName.FM_Pd, d=2)
    assert op.apply(a * v + b * w) == a * op.apply(v) + b * op.apply(w)


def test_composition_and_sum_are_matrix_operations():
    x = build(GoldenName.FM_Pd, d=1)
    y = golden_op(GoldenName.A_S)
    assert (x @ y).matrix == x.matrix * y.matrix
    assert (x + y).matrix == x.matrix + y.matrix


# built against golden, all names

@pytest.mark.parametrize("d", D_RANGE)
@pytest.mark.parametrize("name", [GoldenName.TensorL1, GoldenName.Tw_d,
                                  GoldenName.FM_Pd, GoldenName.FM_Fd])
def test_build_matches_golden_d_family(name, d):
    assert build(name, d=d).matrix == golden(name, d=d)


@pytest.mark.parametrize("name", [GoldenName.TensorSigma, GoldenName.PiPushPull,
                                  GoldenName.PiPushPullSigma, GoldenName.A_S,
                                  GoldenName.A_Sprime])
def test_build_matches_golden_fixed(name):
    assert build(name).matrix == golden(name)


@pytest.mark.parametrize("divisor", [(1, 0), (0, 1), (2, -3), (1, 3)])
def test_build_matches_golden_twist(divisor):
    assert build(GoldenName.A_TL, divisor=divisor).matrix == \
        golden(GoldenName.A_TL, divisor=divisor)


def test_build_b_s_is_2x2():
    assert build(GoldenName.B_S) == golden(GoldenName.B_S) == Mat([[-1, 1],
                                                                   [0, -1]])


def test_build_needs_d_where_parameterized():
    with pytest.raises(InputError):
        build(GoldenName.FM_Pd)
    with pytest.raises(InputError):
        golden(GoldenName.TensorL1, d=0)
    with pytest.raises(InputError):
        build(GoldenName.A_TL)


def test_golden_literal_spot_checks():
    assert golden(GoldenName.A_S) == Mat([[-1, 1, 0, 0],
                                          [0, -1, 0, 0],
                                          [2, -1, -1, 1],
                                          [0, 0, 0, -1]])
    assert golden(GoldenName.A_Sprime) == Mat([[1, 1, 0, 0],
                                               [0, 1, 0, 0],
                                               [2, 1, 1, 1],
                                               [0, 0, 0, 1]])


def test_a_s_applied_to_structure_sheaf():
    # oracle: pi^* pi_* O = O + O(-2f) in class terms, so [SO] = 2f - 1
    assert pi_pushpull(UNIT_CLASS) == from_coords((0, 0, 2, 0))
    got = build(GoldenName.A_S).apply(from_coords((1, 0, 0, 0)))
    assert got == from_coords((-1, 0, 2, 0))


# combine

def test_combine_compose_matches_pinned_composition():
    got = combine("compose", [golden_op(GoldenName.PiPushPull),
                              golden_op(GoldenName.TensorSigma)])
    assert got.matrix == golden(GoldenName.PiPushPullSigma)


def golden_op(name, **kw):
    return Operator(golden(name, **kw), name.value)


@pytest.mark.parametrize("d", D_RANGE)
def test_fm_pd_invertible_det_one(d):
    op = build(GoldenName.FM_Pd, d=d)
    assert op.matrix.det() == 1
    inv = combine("invert", [op])
    assert inv.matrix * op.matrix == Mat.identity(4)


def test_negated_inverse_of_a_s():
    got = combine("negate", [combine("invert", [golden_op(GoldenName.A_S)])])
    assert got.matrix == golden(GoldenName.A_Sprime)


def test_combine_invert_singular():
    with pytest.raises(SingularMatrixError):
        combine("invert", [op_tensor(from_coords((0, 1, 0, 0)))])


def test_combine_validates_arity_and_kind():
    with pytest.raises(InputError):
        combine("negate", [IDENTITY, IDENTITY])
    with pytest.raises(InputError):
        combine("compose", [])
    with pytest.raises(InputError):
        combine("frobnicate", [IDENTITY])


# apply

def test_apply_fm_pd_to_structure_sheaf():
    got = apply(build(GoldenName.FM_Pd, d=1), from_coords((1, 0, 0, 0)))
    assert got == from_coords((0, -1, 0, 1))


def test_apply_identity():
    v = from_coords((2, Fraction(1, 2), -3, 5))
    assert apply(IDENTITY, v) == v


@pytest.mark.parametrize("d", D_RANGE)
def test_apply_fm_fd_to_structure_sheaf(d):
    got = apply(build(GoldenName.FM_Fd, d=d), from_coords((1, 0, 0, 0)))
    assert got == from_coords((-1, -1, 0, 1))


# restrict2

@pytest.mark.parametrize("d", D_RANGE)
def test_restrict2_fm_pd(d):
    reduced = restrict2(build(GoldenName.FM_Pd, d=d))
    assert reduced == Mat([[0, 1], [-1, d]])
    assert reduced.det() == 1


def test_restrict2_a_s_is_b_s():
    assert restrict2(golden_op(GoldenName.A_S)) == golden(GoldenName.B_S)


@pytest.mark.parametrize("divisor", [(1, 0), (0, 1), (3, -2)])
def test_restrict2_twist_records_fiber_degree(divisor):
    got = restrict2(build(GoldenName.A_TL, divisor=divisor))
    assert got == Mat([[1, 0], [divisor[0], 1]])
    assert got.det() == 1


@pytest.mark.parametrize("d", D_RANGE)
def test_restrict2_fm_fd_unimodular(d):
    got = restrict2(build(GoldenName.FM_Fd, d=d))
    assert got == Mat([[-1, d + 1], [-1, d]])
    assert got.det() == 1


def test_restrict2_well_defined_for_every_pinned_4x4():
    for name in GoldenName:
        if name is GoldenName.B_S:
            continue
        kw = {}
        if name in (GoldenName.TensorL1, GoldenName.Tw_d, GoldenName.FM_Pd,
                    GoldenName.FM_Fd):
            kw["d"] = 2
        if name is GoldenName.A_TL:
            kw["divisor"] = (1, 1)
        restrict2(golden_op(name, **kw))


def test_restrict2_rejects_leaky_operator():
    leaky = Operator(Mat([[1, 0, 1, 0],
                          [0, 1, 0, 0],
                          [0, 0, 1, 0],
                          [0, 0, 0, 1]]), "leaky")
    with pytest.raises(ReductionError):
        restrict2(leaky)


# pairing preservation

@pytest.mark.parametrize("d", D_RANGE)
def test_fm_pd_preserves_pairing(d):
    assert pairing_preserved(build(GoldenName.FM_Pd, d=d))


@pytest.mark.parametrize("d", D_RANGE)
def test_fm_fd_pairing_recorded_fixture(d):
    # computed once and frozen: the rank-(d+1) kernel transform preserves the
    # pairing as well
    assert pairing_preserved(build(GoldenName.FM_Fd, d=d)) is True


def test_identity_preserves_pairing():
    assert pairing_preserved(IDENTITY)


def test_scaling_breaks_pairing():
    assert not pairing_preserved(op_tensor(from_coords((2, 0, 0, 0))))


def test_pairing_gram_conjugation_is_exact():
    g = pairing_gram()
    m = golden(GoldenName.FM_Pd, d=4)
    assert m.transpose() * g * m == g


# decomposition identity

@pytest.mark.parametrize("d", D_RANGE)
def test_fm_fd_minus_fm_pd_is_pi_tensor_twist(d):
    diff = build(GoldenName.FM_Fd, d=d).matrix - build(GoldenName.FM_Pd, d=d).matrix
    assert diff == op_pi_tensor(pd_pushforward_twist_class(d)).matrix


def test_operator_labels_carry_provenance():
    op = build(GoldenName.FM_Pd, d=3)
    assert "FM_Pd" in op.label
    assert "tensor" in op.label


def test_operator_requires_4x4():
    with pytest.raises(InputError):
        Operator(Mat([[1, 0], [0, 1]]), "too-small")


def test_golden_twist_needs_divisor():
    with pytest.raises(InputError):
        golden(GoldenName.A_TL)


# every entry of the d-parameterized tables is a polynomial in d of degree
# at most two, so agreement at three points pins the whole family; fitting
# through d = 1, 2, 3 must then reproduce every other degree exactly

def _quadratic_through(y1, y2, y3, d):
    # Lagrange interpolation at nodes 1, 2, 3
    return (y1 * (d - 2) * (d - 3) * Fraction(1, 2)
            - y2 * (d - 1) * (d - 3)
            + y3 * (d - 1) * (d - 2) * Fraction(1, 2))


@pytest.mark.parametrize("name", [GoldenName.TensorL1, GoldenName.Tw_d,
                                  GoldenName.FM_Pd, GoldenName.FM_Fd])
def test_d_families_are_quadratic_in_d(name):
    samples = {d: golden(name, d=d) for d in range(1, 13)}
    for i in range(4):
        for j in range(4):
            y1, y2, y3 = (samples[d].rows[i][j] for d in (1, 2, 3))
            for d in range(4, 13):
                assert samples[d].rows[i][j] == _quadratic_through(y1, y2, y3, d)
