"""The modeled Chow ring of X x X for the standard K3 model.

A class is a decomposable part plus a diagonal part. The decomposable part
is a 4x4 grid of coefficients of q1^* e_i . q2^* e_j over the coordinate
basis e = (1, sigma, f, pt); the diagonal part holds coefficients of
delta_*(1), delta_*(sigma), delta_*(f). The pushforward of a point along
the diagonal is the same cycle as q1^* pt . q2^* pt, so it is always
normalized into the decomposable grid as the class [*].

Multiplication encodes the diagonal self-intersection through the excess
formula delta_*(g1) . delta_*(g2) = delta_*(g1.g2.c2(T_X)) with
c2(T_X) = 24 pt on a K3; only delta_*(1).delta_*(1) = 24[*] survives the
degree truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .chow import (CohClass, STANDARD_K3, ch_line_bundle, from_coords, mult,
                   to_coords, todd)
from .errors import InputError, UnsupportedModelError
from .linalg import Mat, q, qvec
from .operators import Operator


class Side(Enum):
    FIRST = "first"
    SECOND = "second"


class FMOrientation(Enum):
    """Which projection is pushed along and which is pulled back."""

    PUSH_FIRST_PULL_SECOND = "PushFirstPullSecond"
    PUSH_SECOND_PULL_FIRST = "PushSecondPullFirst"


@dataclass(frozen=True)
class ProductClass:
    """Decomposable grid plus diagonal coefficients; immutable and exact."""

    decomp: tuple[tuple[Fraction, ...], ...]
    diag: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        dec = tuple(qvec(row) for row in self.decomp)
        if len(dec) != 4 or any(len(r) != 4 for r in dec):
            raise InputError("decomposable part must be a 4x4 grid")
        dg = qvec(self.diag)
        if len(dg) != 3:
            raise InputError("diagonal part has three slots: 1, sigma, f")
        object.__setattr__(self, "decomp", dec)
        object.__setattr__(self, "diag", dg)

    @classmethod
    def zero(cls) -> "ProductClass":
        return cls(((0,) * 4,) * 4, (0, 0, 0))

    def __add__(self, other: "ProductClass") -> "ProductClass":
        return ProductClass(
            tuple(tuple(a + b for a, b in zip(ra, rb))
                  for ra, rb in zip(self.decomp, other.decomp)),
            tuple(a + b for a, b in zip(self.diag, other.diag)))

    def __sub__(self, other: "ProductClass") -> "ProductClass":
        return self + (-1) * other

    def __neg__(self) -> "ProductClass":
        return (-1) * self

    def __rmul__(self, k) -> "ProductClass":
        k = q(k)
        return ProductClass(
            tuple(tuple(k * a for a in row) for row in self.decomp),
            tuple(k * a for a in self.diag))


def _single(i: int, j: int, value=1) -> ProductClass:
    dec = [[Fraction(0)] * 4 for _ in range(4)]
    dec[i][j] = q(value)
    return ProductClass(tuple(tuple(row) for row in dec), (0, 0, 0))


UNIT = _single(0, 0)
SIGMA_FIRST = _single(1, 0)    # [sigma x X]
SIGMA_SECOND = _single(0, 1)   # [X x sigma]
F_CROSS_F = _single(2, 2)      # [f x f]
POINT = _single(3, 3)          # [*]
PI = _single(2, 0) + _single(0, 2)    # q1^* f + q2^* f
DELTA = ProductClass(((0,) * 4,) * 4, (1, 0, 0))

_BASIS_COORDS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
_BASIS_LABELS = ("1", "sigma", "f", "*")


def _mult4(x, y) -> tuple[Fraction, ...]:
    return to_coords(mult(STANDARD_K3, from_coords(x), from_coords(y)))


# products of coordinate basis classes are constants; precompute them so
# prod_mult is pure table-driven Fraction arithmetic
_PAIR_TABLE = tuple(
    tuple(_mult4(_BASIS_COORDS[i], _BASIS_COORDS[k]) for k in range(4))
    for i in range(4))
_TRIPLE_TABLE = tuple(
    tuple(tuple(_mult4(_PAIR_TABLE[u][i], _BASIS_COORDS[j]) for j in range(4))
          for i in range(4))
    for u in range(3))


def _require_standard_class(v: CohClass) -> None:
    if len(v.div) != 2:
        raise UnsupportedModelError(
            "product classes live over the standard K3 model; "
            f"got a class with lattice rank {len(v.div)}")


def pull(side: Side, v: CohClass) -> ProductClass:
    """Pullback along one projection: coefficients go against the unit of
    the other factor."""
    _require_standard_class(v)
    c = to_coords(v)
    dec = [[Fraction(0)] * 4 for _ in range(4)]
    for i, coeff in enumerate(c):
        if side is Side.FIRST:
            dec[i][0] = coeff
        else:
            dec[0][i] = coeff
    return ProductClass(tuple(tuple(row) for row in dec), (0, 0, 0))


def push(side: Side, a: ProductClass) -> CohClass:
    """Pushforward along one projection.

    Integrating a factor keeps only its point coefficient; the diagonal is a
    section of either projection, so delta_*(g) pushes to g.
    """
    if side is Side.FIRST:
        coords = [a.decomp[i][3] for i in range(4)]
    else:
        coords = [a.decomp[3][j] for j in range(4)]
    for u in range(3):
        coords[u] += a.diag[u]
    return from_coords(coords)


def prod_mult(a: ProductClass, b: ProductClass) -> ProductClass:
    """Bilinear product; total codimension above four is discarded."""
    dec = [[Fraction(0)] * 4 for _ in range(4)]
    diag = [Fraction(0)] * 3

    def add_outer(coeff, first, second):
        for u, fu in enumerate(first):
            if fu:
                for w, sw in enumerate(second):
                    if sw:
                        dec[u][w] += coeff * fu * sw

    # decomposable x decomposable: factorwise surface products
    for i in range(4):
        for j in range(4):
            ca = a.decomp[i][j]
            if not ca:
                continue
            for k in range(4):
                for l in range(4):
                    cb = b.decomp[k][l]
                    if not cb:
                        continue
                    add_outer(ca * cb, _PAIR_TABLE[i][k], _PAIR_TABLE[j][l])

    # diagonal x decomposable: delta_*(g) . q1^*al . q2^*be = delta_*(g.al.be)
    for dg, dc in ((a.diag, b.decomp), (b.diag, a.decomp)):
        for u in range(3):
            cu = dg[u]
            if not cu:
                continue
            for i in range(4):
                for j in range(4):
                    cij = dc[i][j]
                    if not cij:
                        continue
                    g = _TRIPLE_TABLE[u][i][j]
                    coeff = cu * cij
                    for slot in range(3):
                        diag[slot] += coeff * g[slot]
                    dec[3][3] += coeff * g[3]   # delta_*(pt) is [*]

    # diagonal self-intersection: only delta_*(1).delta_*(1) = 24[*] survives
    dec[3][3] += 24 * a.diag[0] * b.diag[0]

    return ProductClass(tuple(tuple(row) for row in dec), tuple(diag))


def _geometric_inverse(t: ProductClass) -> ProductClass:
    # inverse of 1 + n with n nilpotent: alternating powers of n
    n = t - UNIT
    out = UNIT
    power = UNIT
    for k in range(1, 5):
        power = prod_mult(power, n)
        out = out + ((-1) ** k) * power
    return out


def product_todd() -> ProductClass:
    """Todd class of X x X: the product of the factor Todd classes."""
    t = todd(STANDARD_K3)
    return prod_mult(pull(Side.FIRST, t), pull(Side.SECOND, t))


def diag_push_grr(v: CohClass) -> ProductClass:
    """Pushforward of a class along the diagonal, with Todd correction.

    delta_*(v . td_X) . td_{XxX}^{-1}, so that e.g. the structure sheaf of
    the diagonal has class Delta - 2[*].
    """
    _require_standard_class(v)
    c = to_coords(mult(STANDARD_K3, v, todd(STANDARD_K3)))
    naive = ProductClass(
        ((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, c[3])),
        (c[0], c[1], c[2]))
    return prod_mult(naive, _geometric_inverse(product_todd()))


_KERNEL_KINDS = ("Pd", "IDelta")


def kernel_class(kind: str, d: int | None = None) -> ProductClass:
    """Chern character of a universal Fourier-Mukai kernel on X x X.

    "IDelta" is the pushforward from the fiber square of the ideal sheaf of
    the diagonal. "Pd" (d >= 1) is the pushforward of the degree-d
    universal line bundle: the same base class twisted by line-bundle pulls
    from both factors.
    """
    if kind not in _KERNEL_KINDS:
        raise InputError(f"unknown kernel kind {kind!r}; expected one of {_KERNEL_KINDS}")
    if kind == "IDelta":
        pi_sq = prod_mult(PI, PI)
        return PI - Fraction(1, 2) * pi_sq - DELTA + 2 * POINT
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InputError(f"kernel degree d must be an integer >= 1, got {d!r}")
    base = PI - F_CROSS_F - DELTA + 2 * POINT
    out = prod_mult(base, pull(Side.FIRST, ch_line_bundle(STANDARD_K3, (d + 1, 0))))
    out = prod_mult(out, pull(Side.SECOND, ch_line_bundle(STANDARD_K3, (1, 0))))
    out = prod_mult(out, pull(Side.FIRST, ch_line_bundle(STANDARD_K3, (0, 2 * (d + 1)))))
    return out


def fm_matrix(kernel: ProductClass, orientation: FMOrientation) -> Operator:
    """Action on the Chow ring of the transform with the given kernel.

    Riemann-Roch for the projections: the source class is multiplied by the
    surface Todd class, pulled up, multiplied with the kernel and pushed
    down; the target-side Todd correction cancels and is omitted.
    """
    if orientation is FMOrientation.PUSH_FIRST_PULL_SECOND:
        src, tgt = Side.SECOND, Side.FIRST
    else:
        src, tgt = Side.FIRST, Side.SECOND
    t = todd(STANDARD_K3)
    cols = []
    for coords in _BASIS_COORDS:
        y = mult(STANDARD_K3, from_coords(coords), t)
        image = push(tgt, prod_mult(kernel, pull(src, y)))
        cols.append(to_coords(image))
    matrix = Mat(cols).transpose()
    return Operator(matrix, f"fm[{orientation.value}]")


def render_product_class(a: ProductClass) -> str:
    """Basis-labeled sum, e.g. "[f x X] + [X x f] - [f x f] - Delta + 2[*]"."""
    terms: list[tuple[Fraction, str]] = []
    for i in range(4):
        for j in range(4):
            coeff = a.decomp[i][j]
            if not coeff:
                continue
            if i == 0 and j == 0:
                label = "1"
            elif i == 3 and j == 3:
                label = "[*]"
            else:
                left = "X" if i == 0 else _BASIS_LABELS[i]
                right = "X" if j == 0 else _BASIS_LABELS[j]
                label = f"[{left} x {right}]"
            terms.append((coeff, label))
    diag_labels = ("Delta", "delta(sigma)", "delta(f)")
    for u in range(3):
        if a.diag[u]:
            terms.append((a.diag[u], diag_labels[u]))
    if not terms:
        return "0"
    parts = []
    for idx, (coeff, label) in enumerate(terms):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = label if (mag == 1 and label != "1") else (
            str(mag) if label == "1" else f"{mag}{label}")
        if idx == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
