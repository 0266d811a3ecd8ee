"""E-system solutions parametrized by non-empty subsets of Z/dZ.

The constraints on the framing trace parameters x_1..x_{d-1} (with x_0 = 1)
are E^{(m)} = x_m E, where E^{(m)} = (1/d) sum_s x_{m+s} x_{d-s} and
E = E^{(0)}.  Every solution is the average of a character set,
x_m = (1/|D|) sum_{k in D} zeta_d^{km}, and conversely.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .scalars import Cyclotomic, RatFunc


def _lift(values: Sequence) -> list:
    """Coerce a mixed vector into a single arithmetic domain.

    Any RatFunc entry promotes the whole vector to RatFunc; otherwise
    entries live in the cyclotomic field.
    """
    if any(isinstance(v, RatFunc) for v in values):
        return [v if isinstance(v, RatFunc) else RatFunc.const(v) for v in values]
    return [v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(v)
            for v in values]


def _root_factor(val, d: int, k: int):
    """val * zeta_d^k in val's domain."""
    z = Cyclotomic.root_of_unity(d, k)
    if isinstance(val, RatFunc):
        return val * RatFunc.const(z)
    return val * z


@dataclass(frozen=True)
class ESolution:
    """One subset-parametrized solution: x_m = (1/|D|) sum_{k in D} zeta_d^{km}."""

    d: int
    D: tuple[int, ...]
    x: tuple[Cyclotomic, ...]

    def size(self) -> int:
        return len(self.D)


@dataclass(frozen=True)
class FourierData:
    y: tuple
    support: tuple[int, ...]


def build_solution(d: int, D) -> ESolution:
    subset = tuple(sorted(k % d for k in D))
    if not subset:
        raise ValueError("subset must be non-empty")
    if len(set(subset)) != len(subset):
        raise ValueError("subset has repeated residues")
    inv = Fraction(1, len(subset))
    x = []
    for m in range(d):
        acc = Cyclotomic.from_rational(0)
        for k in subset:
            acc = acc + Cyclotomic.root_of_unity(d, (k * m) % d)
        x.append(acc * inv)
    sol = ESolution(d, subset, tuple(x))
    bad = [r for r in esystem_residual(sol.x) if not r.is_zero()]
    if bad:
        raise AssertionError(f"subset average failed the E-system: {bad}")
    return sol


def esystem_residual(x: Sequence):
    """The vector E^{(m)} - x_m E for m = 1..d-1; identically zero on solutions."""
    d = len(x)
    vals = _lift(x)
    inv_d = Fraction(1, d)

    def e_m(m: int):
        acc = vals[(m % d)] * 0
        for s in range(d):
            acc = acc + vals[(m + s) % d] * vals[(d - s) % d]
        return acc * inv_d

    e0 = e_m(0)
    return tuple(e_m(m) - vals[m] * e0 for m in range(1, d))


def enumerate_solutions(d: int) -> list[ESolution]:
    """All 2^d - 1 subset solutions, deduplicated by x-vector."""
    out: list[ESolution] = []
    for size in range(1, d + 1):
        for subset in combinations(range(d), size):
            sol = build_solution(d, subset)
            if not any(prev.x == sol.x for prev in out):
                out.append(sol)
    return out


def fourier_transform(x: Sequence) -> FourierData:
    """y_k = sum_m x_m zeta_d^{-km}; support is where y is nonzero."""
    d = len(x)
    vals = _lift(x)
    y = []
    for k in range(d):
        acc = vals[0] * 0
        for m in range(d):
            acc = acc + _root_factor(vals[m], d, (-k * m) % d)
        y.append(acc)
    support = tuple(k for k in range(d) if not y[k].is_zero())
    return FourierData(tuple(y), support)


def inverse_fourier(y: Sequence) -> tuple:
    """x_m = (1/d) sum_k y_k zeta_d^{km}; inverts fourier_transform."""
    d = len(y)
    vals = _lift(y)
    inv_d = Fraction(1, d)
    out = []
    for m in range(d):
        acc = vals[0] * 0
        for k in range(d):
            acc = acc + _root_factor(vals[k], d, (k * m) % d)
        out.append(acc * inv_d)
    return tuple(out)


def e_d_value(sol: ESolution) -> Fraction:
    """tr_D(e_i) = 1/|D|."""
    return Fraction(1, sol.size())
