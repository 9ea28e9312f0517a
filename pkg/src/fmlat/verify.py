"""The self-contained verification suite behind `fmlat verify`.

Every reference matrix and identity is recomputed along at least two
independent paths: hard-coded tables against compositions of elementary
operators, Riemann-Roch transforms of explicit kernel classes on the
product against the same tables, product-ring fixtures, the SL2(Z) family
relations, and the Euler-pairing conservation law. A case fails exactly
when the two sides differ in a single exact entry.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import bridgeland, chow, operators, product, sd
from .bridgeland import canonical_ab, phi_family, random_admissible
from .chow import STANDARD_K3, from_coords, mult, render_class
from .errors import InputError
from .linalg import Mat
from .operators import GoldenName, build, op_pi_tensor, op_tensor, restrict2
from .product import (FMOrientation, Side, kernel_class, prod_mult, pull,
                      push, render_product_class)
from .sd import Theorem, sd_check

_SEED = 74207281


@dataclass(frozen=True)
class VerifyCase:
    id: str
    description: str
    passed: bool
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"id": self.id, "description": self.description,
                "pass": self.passed, "lhs": self.lhs, "rhs": self.rhs}

    @classmethod
    def from_json(cls, data: dict) -> "VerifyCase":
        return cls(data["id"], data["description"], data["pass"],
                   data["lhs"], data["rhs"])


@dataclass(frozen=True)
class VerifyOutcome:
    suite: str
    d_lo: int
    d_hi: int
    cases: tuple[VerifyCase, ...]

    @property
    def n_passed(self) -> int:
        return sum(case.passed for case in self.cases)

    @property
    def n_failed(self) -> int:
        return len(self.cases) - self.n_passed

    @property
    def ok(self) -> bool:
        return self.n_failed == 0

    def to_json(self) -> dict:
        return {"schema": 1, "suite": self.suite,
                "d_range": [self.d_lo, self.d_hi],
                "cases": [case.to_json() for case in self.cases],
                "passed": self.n_passed, "failed": self.n_failed}

    @classmethod
    def from_json(cls, data: dict) -> "VerifyOutcome":
        if data.get("schema") != 1:
            raise InputError("unknown verify schema")
        return cls(data["suite"], data["d_range"][0], data["d_range"][1],
                   tuple(VerifyCase.from_json(c) for c in data["cases"]))


def _first_diff(a: Mat, b: Mat) -> str:
    if a.n_rows != b.n_rows or a.n_cols != b.n_cols:
        return f"shape {a.n_rows}x{a.n_cols} vs {b.n_rows}x{b.n_cols}"
    for i in range(a.n_rows):
        for j in range(a.n_cols):
            if a.rows[i][j] != b.rows[i][j]:
                return f"first difference at [{i}][{j}]: {a.rows[i][j]} vs {b.rows[i][j]}"
    return ""


def _mat_str(m: Mat) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m.rows) + "]"


def _mat_case(case_id: str, description: str, lhs: Mat, rhs: Mat) -> VerifyCase:
    passed = lhs == rhs
    if not passed:
        description = f"{description} ({_first_diff(lhs, rhs)})"
    return VerifyCase(case_id, description, passed, _mat_str(lhs), _mat_str(rhs))


def _bool_case(case_id: str, description: str, passed: bool,
               lhs: str = "", rhs: str = "") -> VerifyCase:
    return VerifyCase(case_id, description, passed, lhs or str(passed), rhs or "True")


def _class_case(case_id: str, description: str, lhs, rhs) -> VerifyCase:
    return VerifyCase(case_id, description, lhs == rhs, str(lhs), str(rhs))


def _op_matrix(name: GoldenName, d=None, divisor=None) -> Mat:
    built = build(name, d=d, divisor=divisor)
    return built if isinstance(built, Mat) else built.matrix


def run_verify(d_lo: int = 1, d_hi: int = 12, golden_fn=None) -> VerifyOutcome:
    """Run the whole suite for kernel degrees d_lo..d_hi inclusive.

    golden_fn defaults to the pinned reference tables; tests substitute a
    corrupted table to exercise the failure path.
    """
    if not (1 <= d_lo <= d_hi <= 64):
        raise InputError(f"d range must satisfy 1 <= lo <= hi <= 64, "
                         f"got {d_lo}..{d_hi}")
    golden = golden_fn if golden_fn is not None else operators.golden
    cases: list[VerifyCase] = []
    d_range = range(d_lo, d_hi + 1)

    # reference tables against operator compositions
    for d in d_range:
        for name in (GoldenName.TensorL1, GoldenName.Tw_d, GoldenName.FM_Pd,
                     GoldenName.FM_Fd):
            cases.append(_mat_case(
                f"golden_vs_built:{name.value}:d={d}",
                f"{name.value} built from elementary operators matches the "
                f"pinned table at d={d}",
                _op_matrix(name, d=d), golden(name, d=d)))
    for name in (GoldenName.TensorSigma, GoldenName.PiPushPull,
                 GoldenName.PiPushPullSigma, GoldenName.A_S,
                 GoldenName.A_Sprime, GoldenName.B_S):
        cases.append(_mat_case(
            f"golden_vs_built:{name.value}",
            f"{name.value} built from elementary operators matches the pinned table",
            _op_matrix(name), golden(name)))
    for divisor in ((1, 0), (0, 1), (1, 3)):
        cases.append(_mat_case(
            f"golden_vs_built:A_TL:D={divisor[0]},{divisor[1]}",
            f"twist operator for divisor {divisor} matches the pinned table",
            _op_matrix(GoldenName.A_TL, divisor=divisor),
            golden(GoldenName.A_TL, divisor=divisor)))
    sigma_ch = chow.ch_line_bundle(STANDARD_K3, (1, 0))
    cases.append(_mat_case(
        "composition:PiPushPullSigma",
        "composing the bare pushforward-pullback with the sigma twist "
        "reproduces the pinned twisted table",
        (op_pi_tensor(chow.UNIT_CLASS) @ op_tensor(sigma_ch)).matrix,
        golden(GoldenName.PiPushPullSigma)))
    cases.append(_mat_case(
        "inverse:A_Sprime",
        "the negative inverse of A_S equals the pinned A_Sprime",
        -(golden(GoldenName.A_S).inverse()), golden(GoldenName.A_Sprime)))

    # Riemann-Roch on the product against the same tables
    for d in d_range:
        cases.append(_mat_case(
            f"grr_vs_golden:FM_Pd:d={d}",
            f"transform of the degree-{d} kernel class equals the pinned "
            f"FM_Pd at d={d}",
            product.fm_matrix(kernel_class("Pd", d),
                              FMOrientation.PUSH_FIRST_PULL_SECOND).matrix,
            golden(GoldenName.FM_Pd, d=d)))
    cases.append(_mat_case(
        "grr_vs_golden:A_S",
        "transform of the diagonal-ideal kernel class equals the pinned A_S",
        product.fm_matrix(kernel_class("IDelta"),
                          FMOrientation.PUSH_SECOND_PULL_FIRST).matrix,
        golden(GoldenName.A_S)))

    # product-ring fixtures
    td_expected = (product.UNIT + 2 * pull(Side.SECOND, chow.POINT_CLASS)
                   + 2 * pull(Side.FIRST, chow.POINT_CLASS) + 4 * product.POINT)
    cases.append(_class_case(
        "product:todd", "Todd class of the product is 1 + 2[X x *] + 2[* x X] + 4[*]",
        render_product_class(product.product_todd()),
        render_product_class(td_expected)))
    cases.append(_class_case(
        "product:diag_unit",
        "diagonal pushforward of the unit class is Delta - 2[*]",
        render_product_class(product.diag_push_grr(chow.UNIT_CLASS)),
        render_product_class(product.DELTA - 2 * product.POINT)))
    idelta_expected = (product.PI - product.F_CROSS_F - product.DELTA
                       + 2 * product.POINT)
    cases.append(_class_case(
        "product:idelta",
        "diagonal-ideal kernel class is Pi - [f x f] - Delta + 2[*]",
        render_product_class(kernel_class("IDelta")),
        render_product_class(idelta_expected)))
    for d in d_range:
        pushed = push(Side.SECOND, prod_mult(
            kernel_class("Pd", d), pull(Side.FIRST, chow.todd(STANDARD_K3))))
        expected = from_coords((d, -1, d * d - d, 1 - 2 * d))
        cases.append(_class_case(
            f"product:pd_pushforward:d={d}",
            f"pushforward of the degree-{d} kernel has class "
            f"(d, -sigma+(d^2-d)f, 1-2d)",
            render_class(pushed), render_class(expected)))
        twisted = mult(STANDARD_K3, pushed,
                       chow.ch_line_bundle(STANDARD_K3, (0, 2)))
        cases.append(_class_case(
            f"product:pd_pushforward_twist:d={d}",
            f"its relative-dualizing twist equals the pinned twist class at d={d}",
            render_class(twisted),
            render_class(operators.pd_pushforward_twist_class(d))))

    # pairing conservation
    gram = chow.pairing_gram()
    for d in d_range:
        m = golden(GoldenName.FM_Pd, d=d)
        cases.append(_mat_case(
            f"pairing:FM_Pd:d={d}",
            f"FM_Pd preserves the Euler pairing at d={d}",
            m.transpose() * gram * m, gram))
        m = golden(GoldenName.FM_Fd, d=d)
        # recorded fixture: the rank-(d+1) kernel transform preserves it too
        cases.append(_mat_case(
            f"pairing:FM_Fd:d={d}",
            f"FM_Fd preserves the Euler pairing at d={d} (recorded fixture)",
            m.transpose() * gram * m, gram))

    # two-by-two reductions
    for d in d_range:
        reduced = restrict2(build(GoldenName.FM_Pd, d=d))
        cases.append(_mat_case(
            f"restrict2:FM_Pd:d={d}",
            f"FM_Pd reduces to [[0,1],[-1,d]] at d={d}",
            reduced, Mat([[0, 1], [-1, d]])))
        cases.append(_bool_case(
            f"restrict2_det:FM_Pd:d={d}",
            f"the reduction of FM_Pd is unimodular at d={d}",
            reduced.det() == 1, lhs=str(reduced.det()), rhs="1"))
    cases.append(_mat_case(
        "restrict2:A_S", "A_S reduces to the pinned B_S",
        restrict2(build(GoldenName.A_S)), golden(GoldenName.B_S)))
    cases.append(_mat_case(
        "restrict2:A_TL:D=1,3",
        "the twist by a divisor of fiber degree one reduces to [[1,0],[1,1]]",
        restrict2(build(GoldenName.A_TL, divisor=(1, 3))), Mat([[1, 0], [1, 1]])))

    # SL2(Z) family relations on pseudo-random admissible matrices
    rng = random.Random(_SEED)
    relations_ok = True
    slope_ok = True
    slope_checked = 0
    for _ in range(100):
        phi = random_admissible(rng)
        family = phi_family(*phi.entries(), phi.lam)
        relations_ok = relations_ok and family.relations_verified
        r = rng.randint(1, 12)
        d = rng.randint(-12, 12)
        c, a, e, b = phi.entries()
        if b * r - a * d > 0 and c > 0:
            slope_checked += 1
            slope_ok = slope_ok and (a * (e * r - c * d) < c * (b * r - a * d))
    cases.append(_bool_case(
        "bridgeland:family_relations",
        "100 pseudo-random admissible families satisfy phi.psi = psi.phi = "
        "xi.omega = omega.xi = -1",
        relations_ok))
    cases.append(_bool_case(
        "bridgeland:vb_slope",
        f"the slope inequality a(er-cd) < c(br-ad) held in all "
        f"{slope_checked} applicable samples",
        slope_ok and slope_checked > 0))

    brute_ok = True
    for r in range(2, 51):
        for d in range(-50, 51):
            if math.gcd(r, d) != 1:
                continue
            found = [(a, (1 + a * d) // r) for a in range(1, r)
                     if (1 + a * d) % r == 0]
            if len(found) != 1 or canonical_ab(r, d) != found[0]:
                brute_ok = False
    cases.append(_bool_case(
        "bridgeland:canonical_ab",
        "canonical (a, b) agrees with brute force for every coprime pair "
        "with 2 <= r <= 50, |d| <= 50",
        brute_ok))

    # worked Strange Duality example
    worked = bridgeland.FM2(3, 1, -7, -2, 1)
    res = sd_check(Theorem.K3, worked, 6, 0)
    cases.append(_bool_case(
        "sd:worked_pass",
        "phi = [[3,1],[-7,-2]] with fiber degrees (6, 0) passes with margins "
        "(1, 1) and ranks (3, 3)",
        res.passed and res.threshold_margins == (1, 1)
        and (res.rk_xi_v, res.rk_phi_w) == (3, 3),
        lhs=f"margins={res.threshold_margins} ranks=({res.rk_xi_v},{res.rk_phi_w})",
        rhs="margins=(1, 1) ranks=(3,3)"))
    res_fail = sd_check(Theorem.K3, worked, 5, 0)
    cases.append(_bool_case(
        "sd:worked_boundary",
        "the boundary case d_v = 5 fails the strict inequality",
        not res_fail.passed,
        lhs=f"passed={res_fail.passed}", rhs="passed=False"))

    return VerifyOutcome("fmlat-verify", d_lo, d_hi, tuple(cases))
