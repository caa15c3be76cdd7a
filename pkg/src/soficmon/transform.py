"""Transformations of a finite set {0, ..., n-1} and the Hamming metric on them.

Distances are exact :class:`fractions.Fraction` values.  Products and diagonal
amplification index tuples in lexicographic mixed-radix order: the tuple
``(x_1, ..., x_p)`` over radices ``(n_1, ..., n_p)`` has index
``sum(x_i * prod(n_{i+1}, ..., n_p))``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Sequence

from .errors import BudgetError, DomainError, ValidationError

STANDARD = "standard"
DIAGRAMMATIC = "diagrammatic"
CONVENTIONS = (STANDARD, DIAGRAMMATIC)

#: default cap on the number of points a derived transformation may act on
SIZE_BUDGET = 10**6


def check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown composition convention {convention!r}")
    return convention


@dataclass(frozen=True)
class Transformation:
    """A total self-map of ``{0, ..., n-1}`` given by its image list."""

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n == 0:
            raise ValidationError("a transformation needs a non-empty domain")
        for x, y in enumerate(images):
            if not 0 <= y < n:
                raise ValidationError(f"image {y} of point {x} outside [0, {n - 1}]")
        object.__setattr__(self, "images", images)

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    def __repr__(self) -> str:
        return f"Transformation({list(self.images)})"

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls(range(n))

    @classmethod
    def constant(cls, n: int, value: int) -> "Transformation":
        return cls([value] * n)

    @classmethod
    def cycle(cls, n: int) -> "Transformation":
        """x -> x+1 mod n."""
        return cls([(x + 1) % n for x in range(n)])

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, data) -> "Transformation":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list) or not all(isinstance(i, int) for i in data):
            raise ValidationError("a transformation is a JSON array of integers")
        return cls(data)


def _same_size(f: Transformation, g: Transformation) -> int:
    if f.domain_size != g.domain_size:
        raise DomainError(f"domain sizes differ: {f.domain_size} != {g.domain_size}")
    return f.domain_size


def compose(f: Transformation, g: Transformation, convention: str = STANDARD) -> Transformation:
    """Product ``fg`` of two transformations.

    ``standard`` applies the right factor first (x -> f(g(x))); ``diagrammatic``
    applies the left factor first (x -> g(f(x))).
    """
    _same_size(f, g)
    check_convention(convention)
    fi, gi = f.images, g.images
    if convention == STANDARD:
        return Transformation(fi[y] for y in gi)
    return Transformation(gi[y] for y in fi)


def disagreement_count(f: Transformation, g: Transformation) -> int:
    _same_size(f, g)
    return sum(1 for a, b in zip(f.images, g.images) if a != b)


def hamming(f: Transformation, g: Transformation) -> Fraction:
    """Normalized Hamming distance: the fraction of points where f and g differ."""
    n = _same_size(f, g)
    return Fraction(disagreement_count(f, g), n)


def fixed_point_count(f: Transformation) -> int:
    return sum(1 for x, y in enumerate(f.images) if x == y)


def _check_budget(size: int, budget: int) -> None:
    if size > budget:
        raise BudgetError(f"derived domain of size {size} exceeds budget {budget}")


def product_combine(fs: Sequence[Transformation], budget: int = SIZE_BUDGET) -> Transformation:
    """Coordinate-wise action of ``fs`` on the Cartesian product of their domains."""
    fs = list(fs)
    if not fs:
        raise ValueError("product_combine needs at least one transformation")
    radices = [f.domain_size for f in fs]
    _check_budget(math.prod(radices), budget)
    # weights[i] = prod(radices[i+1:])
    weights = [1] * len(radices)
    for i in range(len(radices) - 2, -1, -1):
        weights[i] = weights[i + 1] * radices[i + 1]
    images = []
    for xs in iproduct(*(range(n) for n in radices)):
        images.append(sum(f.images[x] * w for f, x, w in zip(fs, xs, weights)))
    return Transformation(images)


def diagonal_amplify(f: Transformation, power: int, budget: int = SIZE_BUDGET) -> Transformation:
    """The diagonal copy of ``f`` acting on ``X**power``."""
    if power < 1:
        raise ValueError("power must be a positive integer")
    _check_budget(f.domain_size**power, budget)
    return product_combine([f] * power, budget=budget)


def all_transformations(n: int) -> list[Transformation]:
    """Every self-map of {0..n-1}, in lexicographic order of image lists."""
    return [Transformation(t) for t in iproduct(range(n), repeat=n)]


def transformation_index(f: Transformation) -> int:
    """Position of ``f`` in :func:`all_transformations` order."""
    n = f.domain_size
    idx = 0
    for y in f.images:
        idx = idx * n + y
    return idx


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
