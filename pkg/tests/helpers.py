"""Shared strategies and generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from fmlat.chow import CohClass, SurfaceDescriptor
from fmlat.product import ProductClass


def small_q():
    return st.fractions(min_value=-6, max_value=6, max_denominator=4)


def coh_k3():
    """Random classes over the standard K3 model, small exact entries."""
    return st.builds(lambda r, s, t, p: CohClass(r, (s, t), p),
                     small_q(), small_q(), small_q(), small_q())


def random_coh(rng: random.Random) -> CohClass:
    def pick():
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return CohClass(pick(), (pick(), pick()), pick())


def random_product_class(rng: random.Random) -> ProductClass:
    def pick():
        return Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    decomp = tuple(tuple(pick() for _ in range(4)) for _ in range(4))
    diag = (pick(), pick(), pick())
    return ProductClass(decomp, diag)


# A non-K3 elliptic surface for contrast: rational elliptic surface with a
# section (sigma^2 = -1, K = -f, chi(O) = 1).
RATIONAL_ELLIPTIC = SurfaceDescriptor(
    name="rational-elliptic",
    chi_O=1,
    basis_names=("sigma", "f"),
    gram=((-1, 1), (1, 0)),
    fiber=(0, 1),
    section=(1, 0),
    canonical=(0, -1),
    lam=1,
)
