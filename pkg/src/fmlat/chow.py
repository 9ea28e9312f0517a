"""Exact arithmetic in the even Chow ring of an elliptic surface.

A surface is described by its divisor lattice (a Gram matrix over a chosen
basis), the fiber and section classes, the canonical class and chi(O).
Classes live in degrees 0, 1, 2 only; products in higher degree vanish on a
surface, so the ring multiplication truncates.

The distinguished "standard K3 model" has basis (sigma, f) with
sigma^2 = -2, sigma.f = 1, f^2 = 0, trivial canonical class and chi(O) = 2.
Several higher modules (operators, the product ring of X x X) are pinned to
this model and refuse anything else.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .errors import InputError, UnsupportedModelError
from .linalg import Mat, q, qvec


class KVectorKind(Enum):
    """Optional label for a class viewed in K-theory.

    Purely bookkeeping: arithmetic is identical for both kinds.
    """

    TOPOLOGICAL = "Topological"
    ORIENTED = "Oriented"


@dataclass(frozen=True)
class SurfaceDescriptor:
    """Numerical model of an elliptic surface.

    gram is the intersection form on the declared divisor sublattice; the
    fiber, section and canonical classes are integer vectors over the basis.
    lam is the smallest positive fiber degree; when omitted it defaults to
    the gcd of fiber degrees of the basis vectors, which is only correct for
    the modeled sublattice (override it if the surface has smaller
    multisection degree).
    """

    name: str
    chi_O: int
    basis_names: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    fiber: tuple[int, ...]
    canonical: tuple[int, ...]
    section: tuple[int, ...] | None = None
    lam: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "basis_names", tuple(str(b) for b in self.basis_names))
        n = len(self.basis_names)
        if n == 0:
            raise InputError("basis: divisor basis must be nonempty")
        object.__setattr__(self, "gram",
                           tuple(tuple(_as_int("gram", x) for x in row) for row in self.gram))
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise InputError(f"gram: must be a {n}x{n} matrix (one row per basis name)")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            raise InputError("gram: must be symmetric")
        object.__setattr__(self, "fiber", _int_vec("fiber", self.fiber, n))
        object.__setattr__(self, "canonical", _int_vec("canonical", self.canonical, n))
        object.__setattr__(self, "chi_O", _as_int("chi_O", self.chi_O))
        if self._dot_int(self.fiber, self.fiber) != 0:
            raise InputError("fiber: fiber.fiber must vanish")
        if self.section is not None:
            object.__setattr__(self, "section", _int_vec("section", self.section, n))
            if self._dot_int(self.section, self.fiber) != 1:
                raise InputError("section: section.fiber must equal 1")
        degs = [self._dot_int(self.fiber, basis) for basis in _unit_vectors(n)]
        if self.lam is None:
            g = 0
            for d in degs:
                g = math.gcd(g, abs(d))
            if g == 0:
                raise InputError("lambda: fiber pairs to zero with the whole lattice, "
                                 "smallest fiber degree is undefined")
            object.__setattr__(self, "lam", g)
        else:
            object.__setattr__(self, "lam", _as_int("lambda", self.lam))
            if self.lam <= 0:
                raise InputError("lambda: must be positive")
            if any(d % self.lam for d in degs):
                raise InputError("lambda: must divide the fiber degree of every basis vector")

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    def _dot_int(self, x, y) -> int:
        return sum(x[i] * self.gram[i][j] * y[j]
                   for i in range(self.rank) for j in range(self.rank))


def _as_int(key: str, x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{key}: expected an integer, got {x!r}")
    return x


def _int_vec(key: str, xs, n: int) -> tuple[int, ...]:
    vec = tuple(_as_int(key, x) for x in xs)
    if len(vec) != n:
        raise InputError(f"{key}: expected {n} entries, got {len(vec)}")
    return vec


def _unit_vectors(n: int):
    for i in range(n):
        yield tuple(1 if j == i else 0 for j in range(n))


STANDARD_K3 = SurfaceDescriptor(
    name="standard-k3",
    chi_O=2,
    basis_names=("sigma", "f"),
    gram=((-2, 1), (1, 0)),
    fiber=(0, 1),
    section=(1, 0),
    canonical=(0, 0),
    lam=1,
)


def is_standard_k3(surface: SurfaceDescriptor) -> bool:
    """True when the descriptor is numerically the standard K3 model."""
    return (surface.chi_O == 2
            and surface.rank == 2
            and surface.gram == ((-2, 1), (1, 0))
            and surface.fiber == (0, 1)
            and surface.section == (1, 0)
            and surface.canonical == (0, 0)
            and surface.lam == 1)


def _require_standard(surface: SurfaceDescriptor) -> None:
    if not is_standard_k3(surface):
        raise UnsupportedModelError(
            f"surface {surface.name!r} is not the standard K3 model")


@dataclass(frozen=True)
class CohClass:
    """An even Chow class (rank, divisor part, point part).

    r is ch0, div holds the ch1 coefficients over the surface basis, and p
    is the coefficient of the point class in ch2. Chern characters of actual
    sheaves have integral r and div and p in (1/2)Z; fractional entries are
    legal (K-theory classes with rational normalizations occur), so
    integrality is reported by integrality_warnings rather than enforced.
    """

    r: Fraction
    div: tuple[Fraction, ...]
    p: Fraction
    kind: KVectorKind | None = None

    def __post_init__(self):
        object.__setattr__(self, "r", q(self.r))
        object.__setattr__(self, "div", qvec(self.div))
        object.__setattr__(self, "p", q(self.p))

    def __add__(self, other: "CohClass") -> "CohClass":
        if len(self.div) != len(other.div):
            raise InputError("cannot add classes over different lattices")
        return CohClass(self.r + other.r,
                        tuple(a + b for a, b in zip(self.div, other.div)),
                        self.p + other.p)

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-1) * other

    def __neg__(self) -> "CohClass":
        return (-1) * self

    def __rmul__(self, k) -> "CohClass":
        k = q(k)
        return CohClass(k * self.r, tuple(k * d for d in self.div), k * self.p)

    def coords(self) -> tuple[Fraction, ...]:
        return (self.r, *self.div, self.p)


def render_class(v: CohClass) -> str:
    return "(" + ", ".join(str(x) for x in v.coords()) + ")"


def integrality_warnings(v: CohClass) -> list[str]:
    """Advisory notes when a class cannot be ch of a sheaf complex."""
    notes = []
    if v.r.denominator != 1:
        notes.append(f"rank {v.r} is not an integer")
    for i, d in enumerate(v.div):
        if d.denominator != 1:
            notes.append(f"divisor coefficient {i} = {d} is not an integer")
    if (2 * v.p).denominator != 1:
        notes.append(f"point part {v.p} is not a half-integer")
    return notes


def _check_class(surface: SurfaceDescriptor, v: CohClass) -> None:
    if len(v.div) != surface.rank:
        raise InputError(
            f"class has {len(v.div)} divisor coordinates, surface "
            f"{surface.name!r} has lattice rank {surface.rank}")


def dot(surface: SurfaceDescriptor, x: Iterable, y: Iterable) -> Fraction:
    """Intersection pairing of two divisor vectors under the Gram form."""
    xv, yv = qvec(x), qvec(y)
    n = surface.rank
    if len(xv) != n or len(yv) != n:
        raise InputError(f"divisor vectors must have length {n}")
    return sum((xv[i] * surface.gram[i][j] * yv[j]
                for i in range(n) for j in range(n)), Fraction(0))


def ch_line_bundle(surface: SurfaceDescriptor, divisor: Iterable) -> CohClass:
    """Chern character (1, D, D^2/2) of the line bundle O(D)."""
    d = qvec(divisor)
    if len(d) != surface.rank:
        raise InputError(
            f"divisor has {len(d)} entries, surface {surface.name!r} "
            f"has lattice rank {surface.rank}")
    return CohClass(1, d, dot(surface, d, d) / 2)


def mult(surface: SurfaceDescriptor, v: CohClass, w: CohClass) -> CohClass:
    """Truncated ring product; everything of degree > 2 dies on a surface."""
    _check_class(surface, v)
    _check_class(surface, w)
    div = tuple(v.r * wd + w.r * vd for vd, wd in zip(v.div, w.div))
    p = v.r * w.p + w.r * v.p + dot(surface, v.div, w.div)
    return CohClass(v.r * w.r, div, p)


def dual(v: CohClass) -> CohClass:
    """Chern character of the derived dual: odd degree flips sign."""
    return CohClass(v.r, tuple(-d for d in v.div), v.p)


def todd(surface: SurfaceDescriptor) -> CohClass:
    """Todd class (1, -K/2, chi(O))."""
    return CohClass(1, tuple(Fraction(-k, 2) for k in surface.canonical),
                    surface.chi_O)


def chi_tensor(surface: SurfaceDescriptor, v: CohClass, w: CohClass) -> Fraction:
    """Euler characteristic of the derived tensor product, by Riemann-Roch.

    Integrates v.w.td over the surface; the integral extracts the point
    coefficient.
    """
    return mult(surface, mult(surface, v, w), todd(surface)).p


def fdeg(surface: SurfaceDescriptor, v: CohClass) -> Fraction:
    """Fiber degree: intersection of the divisor part with the fiber class."""
    _check_class(surface, v)
    return dot(surface, v.div, surface.fiber)


def moduli_dim_k3(surface: SurfaceDescriptor, v: CohClass) -> int:
    """Expected dimension 2 - chi(v, v) of the moduli space on a K3.

    Standard Mukai dimension formula, valid only for the standard K3 model;
    for other surfaces the caller must supply dimensions explicitly.
    """
    _require_standard(surface)
    _check_class(surface, v)
    dim = 2 - chi_tensor(surface, dual(v), v)
    if dim.denominator != 1:
        raise InputError(f"moduli dimension {dim} is not an integer; "
                         "class is not a sheaf class")
    return int(dim)


# Standard-model coordinates: (r, s, t, p) for r + s.sigma + t.f + p.[pt].

def to_coords(v: CohClass) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    if len(v.div) != 2:
        raise InputError("standard-model coordinates need a rank-2 lattice class")
    return (v.r, v.div[0], v.div[1], v.p)


def from_coords(c: Iterable) -> CohClass:
    r, s, t, p = qvec(c)
    return CohClass(r, (s, t), p)


UNIT_CLASS = from_coords((1, 0, 0, 0))
SIGMA_CLASS = from_coords((0, 1, 0, 0))
FIBER_CLASS = from_coords((0, 0, 1, 0))
POINT_CLASS = from_coords((0, 0, 0, 1))
_COORD_BASIS = (UNIT_CLASS, SIGMA_CLASS, FIBER_CLASS, POINT_CLASS)


@functools.cache
def pairing_gram() -> Mat:
    """Gram matrix of (v, w) -> chi(v^dual . w) in (r, s, t, p) coordinates.

    Computed by expanding the Riemann-Roch pairing on the coordinate basis;
    it is symmetric and unimodular up to sign.
    """
    return Mat([[chi_tensor(STANDARD_K3, dual(ei), ej) for ej in _COORD_BASIS]
                for ei in _COORD_BASIS])


# Surface description files: plain "key = value" lines, '#' comments.
# gram rows are separated by ';'. Vector entries split on commas or spaces.

_SURFACE_KEYS = ("name", "chi_O", "basis", "gram", "fiber", "section",
                 "canonical", "lambda")
_REQUIRED_KEYS = ("name", "chi_O", "basis", "gram", "fiber", "canonical")


def parse_surface(text: str, filename: str = "<surface>") -> SurfaceDescriptor:
    entries: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq or not key:
            raise InputError(f"{filename}:{lineno}: expected 'key = value'")
        if key not in _SURFACE_KEYS:
            raise InputError(f"{filename}:{lineno}: unknown key {key!r}")
        if key in entries:
            raise InputError(f"{filename}:{lineno}: duplicate key {key!r}")
        if not value:
            raise InputError(f"{filename}:{lineno}: key {key!r} has no value")
        entries[key] = (lineno, value)
    for req in _REQUIRED_KEYS:
        if req not in entries:
            raise InputError(f"{filename}: missing required key {req!r}")

    def split_items(value: str) -> list[str]:
        return value.replace(",", " ").split()

    def int_list(key: str) -> list[int]:
        lineno, value = entries[key]
        out = []
        for tok in split_items(value):
            try:
                out.append(int(tok))
            except ValueError:
                raise InputError(
                    f"{filename}:{lineno}: key {key!r}: not an integer: {tok!r}")
        return out

    def int_scalar(key: str) -> int:
        vals = int_list(key)
        lineno = entries[key][0]
        if len(vals) != 1:
            raise InputError(f"{filename}:{lineno}: key {key!r}: expected one integer")
        return vals[0]

    gram_lineno, gram_value = entries["gram"]
    gram_rows = []
    for chunk in gram_value.split(";"):
        row = []
        for tok in split_items(chunk):
            try:
                row.append(int(tok))
            except ValueError:
                raise InputError(
                    f"{filename}:{gram_lineno}: key 'gram': not an integer: {tok!r}")
        if row:
            gram_rows.append(tuple(row))

    try:
        return SurfaceDescriptor(
            name=entries["name"][1],
            chi_O=int_scalar("chi_O"),
            basis_names=tuple(split_items(entries["basis"][1])),
            gram=tuple(gram_rows),
            fiber=tuple(int_list("fiber")),
            canonical=tuple(int_list("canonical")),
            section=tuple(int_list("section")) if "section" in entries else None,
            lam=int_scalar("lambda") if "lambda" in entries else None,
        )
    except InputError as exc:
        raise InputError(f"{filename}: {exc}") from exc


def load_surface(path) -> SurfaceDescriptor:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read surface file {path}: {exc}") from exc
    return parse_surface(text, filename=str(path))
