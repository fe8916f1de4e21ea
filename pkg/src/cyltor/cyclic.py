"""Cyclic words (necklaces), the reversal involution, and eigenprojections.

Degree-d cyclic words are tensor monomials modulo rotation, stored as the
lexicographically minimal rotation.  A :class:`CyclicSeries` collects them in
degrees 1..cap and is the value space of the log-determinant.  The involution
``rho`` reverses with sign (-1)^d; its (+1)-eigenspace is the concrete model
used for the degree-d one-loop diagram space, an element of which is wrapped
as :class:`LoopDiagramElement`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    NonzeroConstantTerm,
    NotHomogeneous,
    ParseError,
    TruncationMismatch,
)
from .series import TensorSeries

__all__ = [
    "CyclicWord",
    "CyclicSeries",
    "LoopDiagramElement",
    "project_cyclic",
    "rho",
    "p_minus",
    "p_plus",
    "act_auto",
    "necklace_count",
]

_ZERO = Fraction(0)


def canonical_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically minimal rotation of a nonempty index tuple."""
    return min(letters[i:] + letters[:i] for i in range(len(letters)))


class CyclicWord:
    """A necklace: a nonempty index tuple stored in canonical rotation."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int]):
        t = tuple(letters)
        if not t:
            raise ValueError("cyclic words have degree >= 1")
        self.letters = canonical_rotation(t)

    @property
    def degree(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"cyc({','.join(map(str, self.letters))})"


class CyclicSeries:
    """Rational combination of necklaces in degrees 1..cap."""

    __slots__ = ("rank", "cap", "terms")

    def __init__(self, rank: int, cap: int,
                 terms: Mapping[tuple, Fraction] | Iterable[tuple] | None = None):
        self.rank = rank
        self.cap = cap
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for mono, c in items:
                if not c:
                    continue
                key = canonical_rotation(tuple(mono))
                if not key or len(key) > cap:
                    raise ValueError(f"cyclic word {key} outside degrees 1..{cap}")
                s = self.terms.get(key, _ZERO) + c
                if s:
                    self.terms[key] = s
                else:
                    self.terms.pop(key, None)

    @classmethod
    def zero(cls, rank: int, cap: int) -> "CyclicSeries":
        return cls(rank, cap)

    def _compat(self, other: "CyclicSeries") -> None:
        if self.rank != other.rank or self.cap != other.cap:
            raise TruncationMismatch(
                f"rank/cap ({self.rank},{self.cap}) vs ({other.rank},{other.cap})"
            )

    def __add__(self, other: "CyclicSeries") -> "CyclicSeries":
        self._compat(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, _ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        r = CyclicSeries(self.rank, self.cap)
        r.terms = out
        return r

    def __neg__(self) -> "CyclicSeries":
        r = CyclicSeries(self.rank, self.cap)
        r.terms = {k: -c for k, c in self.terms.items()}
        return r

    def __sub__(self, other: "CyclicSeries") -> "CyclicSeries":
        return self + (-other)

    def __mul__(self, scalar) -> "CyclicSeries":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = Fraction(scalar)
        r = CyclicSeries(self.rank, self.cap)
        if scalar:
            r.terms = {k: c * scalar for k, c in self.terms.items()}
        return r

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Iterable[int]) -> Fraction:
        return self.terms.get(canonical_rotation(tuple(mono)), _ZERO)

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def slice_degree(self, d: int) -> "CyclicSeries":
        r = CyclicSeries(self.rank, self.cap)
        r.terms = {k: c for k, c in self.terms.items() if len(k) == d}
        return r

    def max_slice(self, cap: int) -> "CyclicSeries":
        """Re-truncate to a (possibly lower) cap."""
        if cap > self.cap:
            raise TruncationMismatch(f"cannot extend cap {self.cap} to {cap}")
        r = CyclicSeries(self.rank, cap)
        r.terms = {k: c for k, c in self.terms.items() if len(k) <= cap}
        return r

    def degree_one_vector(self) -> list[Fraction]:
        """Degree-1 slice read as a vector in the x-basis."""
        return [self.terms.get((i,), _ZERO) for i in range(1, self.rank + 1)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicSeries):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.cap == other.cap
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        parts = [
            f"{self.terms[k]}*cyc({','.join(map(str, k))})"
            for k in sorted(self.terms, key=lambda k: (len(k), k))
        ]
        return f"CyclicSeries(rank={self.rank}, cap={self.cap}, {' + '.join(parts) or '0'})"

    def to_json(self) -> list[dict]:
        return [
            {"degree": len(k), "word": list(k), "coeff": str(self.terms[k])}
            for k in sorted(self.terms, key=lambda k: (len(k), k))
        ]

    @classmethod
    def from_json(cls, data: list, rank: int, cap: int) -> "CyclicSeries":
        try:
            terms = [
                (tuple(int(i) for i in e["word"]), Fraction(e["coeff"])) for e in data
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad cyclic-series JSON: {exc}") from exc
        return cls(rank, cap, terms)


@dataclass(frozen=True)
class LoopDiagramElement:
    """Degree-d element of the (+1)-eigenspace model of one-loop diagrams.

    The wheel-like diagram with spokes labeled x_1..x_d is identified with
    the class of (w + rho(w))/2; no independent diagram structure is kept.
    """

    degree: int
    value: CyclicSeries

    def __post_init__(self):
        if rho(self.value) != self.value:
            raise ValueError("loop-diagram value must be fixed by the involution")
        degs = self.value.degrees()
        if degs and degs != {self.degree}:
            raise NotHomogeneous(f"value spreads over degrees {sorted(degs)}")


def project_cyclic(s: TensorSeries) -> CyclicSeries:
    """Degreewise rotation-canonicalization; kills commutators.

    The constant term must vanish (the target only has degrees >= 1).
    """
    if s.augmentation():
        raise NonzeroConstantTerm("cyclic projection needs augmentation 0")
    out = CyclicSeries(s.rank, s.cap)
    terms = out.terms
    for stratum in s.strata[1:]:
        for mono, c in stratum.items():
            key = canonical_rotation(mono)
            tot = terms.get(key, _ZERO) + c
            if tot:
                terms[key] = tot
            else:
                terms.pop(key, None)
    return out


def rho(c: CyclicSeries) -> CyclicSeries:
    """The involution: reverse each degree-d word with sign (-1)^d."""
    out = CyclicSeries(c.rank, c.cap)
    terms = out.terms
    for k, v in c.terms.items():
        key = canonical_rotation(tuple(reversed(k)))
        v = v if len(k) % 2 == 0 else -v
        tot = terms.get(key, _ZERO) + v
        if tot:
            terms[key] = tot
        else:
            terms.pop(key, None)
    return out


def p_minus(c: CyclicSeries) -> CyclicSeries:
    """Projection onto the (-1)-eigenspace: (c - rho(c)) / 2."""
    return (c - rho(c)) * Fraction(1, 2)


def p_plus(c: CyclicSeries) -> LoopDiagramElement:
    """Projection onto the (+1)-eigenspace, wrapped as a loop diagram.

    Requires the input concentrated in a single degree (or zero), matching
    the degree-graded diagram space it models.
    """
    degs = c.degrees()
    if len(degs) > 1:
        raise NotHomogeneous(f"p_plus needs a homogeneous input, got degrees {sorted(degs)}")
    value = (c + rho(c)) * Fraction(1, 2)
    degree = next(iter(degs)) if degs else 0
    return LoopDiagramElement(degree=degree, value=value)


def act_auto(auto, c: CyclicSeries) -> CyclicSeries:
    """Push a cyclic series through an expansion automorphism.

    Lifts each necklace to any tensor representative, applies the algebra
    substitution x_i -> image_i - 1, and re-projects; automorphisms preserve
    the commutator closure so the result is representative independent.
    """
    if auto.cap < c.cap:
        raise TruncationMismatch(f"automorphism cap {auto.cap} below series cap {c.cap}")
    if auto.rank != c.rank:
        raise TruncationMismatch("rank mismatch between automorphism and series")
    total = TensorSeries.zero(auto.rank, auto.cap)
    for mono, coeff in c.terms.items():
        lifted = TensorSeries(auto.rank, auto.cap, {mono: Fraction(1)})
        total = total + auto.apply(lifted) * coeff
    return project_cyclic(total).max_slice(c.cap)


def necklace_count(n: int, d: int) -> int:
    """Number of degree-d necklaces on n letters: (1/d) sum phi(e) n^(d/e)."""

    def phi(m: int) -> int:
        return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)

    total = sum(phi(e) * n ** (d // e) for e in range(1, d + 1) if d % e == 0)
    assert total % d == 0
    return total // d
