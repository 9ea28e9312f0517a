"""Endomorphisms of the even Chow ring of the standard K3 model.

Operators are exact 4x4 rational matrices acting on column vectors in the
coordinate order (r, s, t, p), i.e. rank, sigma and fiber coefficients of
ch1, and the point coefficient of ch2. Two elementary families generate
everything used here:

* op_tensor(c): multiplication by a fixed class c;
* op_pi_tensor(c): v -> pullback-of-pushforward along the elliptic
  fibration of v.c, via the base-curve formula
  (r, s.sigma + t.f, p) -> (s, (2r - s + p).f, 0).

Every named matrix (the "golden" grid) exists twice: once as a
hard-coded literal table, once rebuilt from the elementary generators. The
verification suite insists the two agree entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from . import chow
from .chow import (CohClass, STANDARD_K3, ch_line_bundle, from_coords, mult,
                   render_class, to_coords)
from .errors import InputError, ReductionError
from .linalg import Mat, q


@dataclass(frozen=True)
class Operator:
    """A 4x4 exact matrix plus a human-readable construction label."""

    matrix: Mat
    label: str = ""

    def __post_init__(self):
        if self.matrix.n_rows != 4 or self.matrix.n_cols != 4:
            raise InputError("operators in the standard model are 4x4")

    def apply(self, v: CohClass) -> CohClass:
        return from_coords(self.matrix.apply(to_coords(v)))

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix + other.matrix,
                        f"({self.label} + {other.label})")

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix - other.matrix,
                        f"({self.label} - {other.label})")

    def __neg__(self) -> "Operator":
        return Operator(-self.matrix, f"-({self.label})")

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix * other.matrix,
                        f"({self.label} . {other.label})")


IDENTITY = Operator(Mat.identity(4), "id")


def apply(op: Operator, v: CohClass) -> CohClass:
    """Matrix-vector application of an operator to a class."""
    return op.apply(v)


def op_tensor(c: CohClass) -> Operator:
    """Multiplication by the class c, as a matrix."""
    cols = [to_coords(mult(STANDARD_K3, c, basis)) for basis in _COORD_BASIS]
    return Operator(_from_columns(cols), f"tensor{render_class(c)}")


def pi_pushpull(v: CohClass) -> CohClass:
    """Pullback of the pushforward along the fibration to the base curve.

    The base curve is P^1, so the result has no point part; the fiber
    coefficient picks up the Todd correction 2r of the K3.
    """
    r, s, t, p = to_coords(v)
    return from_coords((s, 0, 2 * r - s + p, 0))


def op_pi_tensor(c: CohClass) -> Operator:
    """The family v -> pi^* pi_* (v.c), as a matrix."""
    cols = [to_coords(pi_pushpull(mult(STANDARD_K3, basis, c)))
            for basis in _COORD_BASIS]
    return Operator(_from_columns(cols), f"pi_pushpull{render_class(c)}")


_COORD_BASIS = (chow.UNIT_CLASS, chow.SIGMA_CLASS, chow.FIBER_CLASS,
                chow.POINT_CLASS)


def _from_columns(cols: Sequence[Sequence[Fraction]]) -> Mat:
    return Mat(cols).transpose()


# Distinguished classes of the degree-d kernel construction.

def pd_line_class(d: int) -> CohClass:
    """ch of the line bundle O((d+1) sigma + 2(d+1) f) twisting the kernel."""
    _check_d(d)
    return ch_line_bundle(STANDARD_K3, ((d + 1), 2 * (d + 1)))


def pd_pushforward_twist_class(d: int) -> CohClass:
    """ch of the rank-d pushforward of the degree-d kernel, twisted by the
    relative dualizing sheaf: (d, -sigma + (d^2+d) f, -2d-1)."""
    _check_d(d)
    return from_coords((d, -1, d * d + d, -2 * d - 1))


def _check_d(d) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InputError(f"kernel degree d must be an integer >= 1, got {d!r}")


class GoldenName(Enum):
    """Names of the pinned reference matrices; CLI identifiers match."""

    TensorL1 = "TensorL1"
    TensorSigma = "TensorSigma"
    PiPushPull = "PiPushPull"
    PiPushPullSigma = "PiPushPullSigma"
    FM_Pd = "FM_Pd"
    Tw_d = "Tw_d"
    FM_Fd = "FM_Fd"
    A_S = "A_S"
    A_Sprime = "A_Sprime"
    A_TL = "A_TL"
    B_S = "B_S"


_NEEDS_D = {GoldenName.TensorL1, GoldenName.Tw_d, GoldenName.FM_Pd,
            GoldenName.FM_Fd}


def _sigma_ch() -> CohClass:
    return ch_line_bundle(STANDARD_K3, (1, 0))


def build(name: GoldenName, d: int | None = None,
          divisor: Iterable | None = None) -> Operator | Mat:
    """Construct a named operator purely from the elementary generators.

    Returns an Operator except for B_S, which is the 2x2 (rank, fiber
    degree) reduction of A_S.
    """
    name = GoldenName(name)
    if name in _NEEDS_D:
        _check_d(d)
    if name is GoldenName.TensorL1:
        op = op_tensor(pd_line_class(d))
    elif name is GoldenName.TensorSigma:
        op = op_tensor(_sigma_ch())
    elif name is GoldenName.PiPushPull:
        op = op_pi_tensor(chow.UNIT_CLASS)
    elif name is GoldenName.PiPushPullSigma:
        op = op_pi_tensor(_sigma_ch())
    elif name is GoldenName.FM_Pd:
        inner = op_pi_tensor(_sigma_ch()) - op_tensor(_sigma_ch())
        op = op_tensor(pd_line_class(d)) @ inner
    elif name is GoldenName.Tw_d:
        op = op_tensor(pd_pushforward_twist_class(d))
    elif name is GoldenName.FM_Fd:
        op = build(GoldenName.FM_Pd, d) + op_pi_tensor(pd_pushforward_twist_class(d))
    elif name is GoldenName.A_S:
        op = op_pi_tensor(chow.UNIT_CLASS) - IDENTITY
    elif name is GoldenName.A_Sprime:
        op = -combine("invert", [build(GoldenName.A_S)])
    elif name is GoldenName.A_TL:
        if divisor is None:
            raise InputError("A_TL needs a divisor")
        op = op_tensor(ch_line_bundle(STANDARD_K3, divisor))
    elif name is GoldenName.B_S:
        return restrict2(build(GoldenName.A_S))
    else:  # pragma: no cover - enum is exhaustive
        raise InputError(f"unknown operator name {name!r}")
    return Operator(op.matrix, f"{name.value}={op.label}")


def golden(name: GoldenName, d: int | None = None,
           divisor: Iterable | None = None) -> Mat:
    """The pinned reference matrix, as a literal table."""
    name = GoldenName(name)
    if name in _NEEDS_D:
        _check_d(d)
    if name is GoldenName.TensorL1:
        m = d + 1
        return Mat([[1, 0, 0, 0],
                    [m, 1, 0, 0],
                    [2 * m, 0, 1, 0],
                    [m * m, 0, m, 1]])
    if name is GoldenName.TensorSigma:
        return Mat([[1, 0, 0, 0],
                    [1, 1, 0, 0],
                    [0, 0, 1, 0],
                    [-1, -2, 1, 1]])
    if name is GoldenName.PiPushPull:
        return Mat([[0, 1, 0, 0],
                    [0, 0, 0, 0],
                    [2, -1, 0, 1],
                    [0, 0, 0, 0]])
    if name is GoldenName.PiPushPullSigma:
        return Mat([[1, 1, 0, 0],
                    [0, 0, 0, 0],
                    [0, -3, 1, 1],
                    [0, 0, 0, 0]])
    if name is GoldenName.FM_Pd:
        return Mat([[0, 1, 0, 0],
                    [-1, d, 0, 0],
                    [0, 2 * d - 1, 0, 1],
                    [1, d * d - d, -1, d]])
    if name is GoldenName.Tw_d:
        return Mat([[d, 0, 0, 0],
                    [-1, d, 0, 0],
                    [d * d + d, 0, d, 0],
                    [-2 * d - 1, d * d + d + 2, -1, d]])
    if name is GoldenName.FM_Fd:
        return Mat([[-1, d + 1, 0, 0],
                    [-1, d, 0, 0],
                    [0, (d + 1) ** 2, -1, d + 1],
                    [1, d * d - d, -1, d]])
    if name is GoldenName.A_S:
        return Mat([[-1, 1, 0, 0],
                    [0, -1, 0, 0],
                    [2, -1, -1, 1],
                    [0, 0, 0, -1]])
    if name is GoldenName.A_Sprime:
        return Mat([[1, 1, 0, 0],
                    [0, 1, 0, 0],
                    [2, 1, 1, 1],
                    [0, 0, 0, 1]])
    if name is GoldenName.A_TL:
        if divisor is None:
            raise InputError("A_TL needs a divisor")
        s, t = (q(x) for x in divisor)
        half_sq = (-2 * s * s + 2 * s * t) / 2
        return Mat([[1, 0, 0, 0],
                    [s, 1, 0, 0],
                    [t, 0, 1, 0],
                    [half_sq, t - 2 * s, s, 1]])
    if name is GoldenName.B_S:
        return Mat([[-1, 1],
                    [0, -1]])
    raise InputError(f"unknown golden name {name!r}")  # pragma: no cover


def combine(kind: str, operands: Sequence[Operator]) -> Operator:
    """Exact operator algebra: compose, add, negate or invert."""
    ops = list(operands)
    if kind in ("negate", "invert"):
        if len(ops) != 1:
            raise InputError(f"{kind} takes exactly one operand")
        if kind == "negate":
            return -ops[0]
        return Operator(ops[0].matrix.inverse(), f"({ops[0].label})^-1")
    if kind in ("compose", "add"):
        if not ops:
            raise InputError(f"{kind} needs at least one operand")
        out = ops[0]
        for op in ops[1:]:
            out = (out @ op) if kind == "compose" else (out + op)
        return out
    raise InputError(f"unknown combine kind {kind!r}")


def restrict2(op: Operator) -> Mat:
    """Top-left 2x2 block in (rank, fiber degree) coordinates.

    Well-defined only when the (r, s) output rows ignore the (t, p) inputs;
    anything else cannot act on the rank/fiber-degree plane alone.
    """
    m = op.matrix.rows
    leak = [(i, j) for i in (0, 1) for j in (2, 3) if m[i][j] != 0]
    if leak:
        raise ReductionError(
            f"operator {op.label or '<anonymous>'} does not reduce: "
            f"nonzero entries at {leak}")
    return Mat([[m[0][0], m[0][1]], [m[1][0], m[1][1]]])


def pairing_preserved(op: Operator) -> bool:
    """Whether the operator preserves the Euler pairing: A^T G A = G."""
    g = chow.pairing_gram()
    a = op.matrix
    return a.transpose() * g * a == g
