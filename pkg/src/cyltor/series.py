"""Truncated tensor-algebra series and Magnus expansions.

A :class:`TensorSeries` is an element of the tensor algebra on generators
x_1..x_rank over the rationals, truncated above a fixed degree ``cap``.
Storage is degree-stratified so truncating products never materializes
over-degree terms.  All coefficients are exact :class:`fractions.Fraction`.

The default Magnus expansion sends the i-th free-group generator to
``1 + x_i``; any assignment ``1 + x_i + (higher)`` may be plugged in via
:class:`MagnusExpansion`.  Graded invariants downstream are expansion
independent, full (non-graded) outputs are reported relative to the
standard expansion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ._backend import add_into, mul_strata
from .errors import BadAugmentation, NotAUnit, ParseError, TruncationMismatch
from .words import GroupWord, RingElement

__all__ = [
    "TensorSeries",
    "MagnusExpansion",
    "series_invert",
    "series_log",
    "series_exp",
    "magnus_expand",
    "word_degree_bound",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


class TensorSeries:
    """Truncated element of the completed tensor algebra.

    ``strata[d]`` maps degree-d monomials (tuples of 1-based generator
    indices) to nonzero rational coefficients; ``strata[0]`` holds the
    constant term under the key ``()``.
    """

    __slots__ = ("rank", "cap", "strata")

    def __init__(self, rank: int, cap: int, terms=None):
        if rank < 1 or cap < 0:
            raise ValueError("rank must be >= 1 and cap >= 0")
        self.rank = rank
        self.cap = cap
        self.strata: list[dict] = [{} for _ in range(cap + 1)]
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for mono, c in items:
                mono = tuple(mono)
                c = _as_fraction(c)
                if not c or len(mono) > cap:
                    continue
                if any(not (1 <= i <= rank) for i in mono):
                    raise ValueError(f"monomial {mono} out of rank {rank}")
                d = self.strata[len(mono)]
                s = d.get(mono, _ZERO) + c
                if s:
                    d[mono] = s
                else:
                    d.pop(mono, None)

    @classmethod
    def _wrap(cls, rank: int, cap: int, strata: list[dict]) -> "TensorSeries":
        s = cls.__new__(cls)
        s.rank, s.cap, s.strata = rank, cap, strata
        return s

    @classmethod
    def zero(cls, rank: int, cap: int) -> "TensorSeries":
        return cls(rank, cap)

    @classmethod
    def const(cls, rank: int, cap: int, c) -> "TensorSeries":
        return cls(rank, cap, {(): _as_fraction(c)})

    @classmethod
    def one(cls, rank: int, cap: int) -> "TensorSeries":
        return cls.const(rank, cap, 1)

    @classmethod
    def gen(cls, rank: int, cap: int, i: int) -> "TensorSeries":
        return cls(rank, cap, {(i,): _ONE})

    # -- basic queries ----------------------------------------------------

    def _compat(self, other: "TensorSeries") -> None:
        if self.rank != other.rank or self.cap != other.cap:
            raise TruncationMismatch(
                f"rank/cap ({self.rank},{self.cap}) vs ({other.rank},{other.cap})"
            )

    def augmentation(self) -> Fraction:
        return self.strata[0].get((), _ZERO)

    def is_zero(self) -> bool:
        return all(not d for d in self.strata)

    def low_degree(self) -> int | None:
        """Least degree with a nonzero term, or None for the zero series."""
        for d, stratum in enumerate(self.strata):
            if stratum:
                return d
        return None

    def coeff(self, mono: Sequence[int]) -> Fraction:
        mono = tuple(mono)
        if len(mono) > self.cap:
            return _ZERO
        return self.strata[len(mono)].get(mono, _ZERO)

    def terms(self) -> Iterable[tuple[tuple, Fraction]]:
        for stratum in self.strata:
            yield from stratum.items()

    def slice_degree(self, d: int) -> "TensorSeries":
        """Homogeneous degree-d part (same cap)."""
        strata = [{} for _ in range(self.cap + 1)]
        if 0 <= d <= self.cap:
            strata[d] = dict(self.strata[d])
        return TensorSeries._wrap(self.rank, self.cap, strata)

    def truncated(self, cap: int) -> "TensorSeries":
        if cap > self.cap:
            raise TruncationMismatch(f"cannot extend cap {self.cap} to {cap}")
        return TensorSeries._wrap(
            self.rank, cap, [dict(s) for s in self.strata[: cap + 1]]
        )

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TensorSeries.const(self.rank, self.cap, other)
        if not isinstance(other, TensorSeries):
            return NotImplemented
        self._compat(other)
        strata = [dict(s) for s in self.strata]
        add_into(strata, other.strata, _ONE)
        return TensorSeries._wrap(self.rank, self.cap, strata)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TensorSeries.const(self.rank, self.cap, other)
        if not isinstance(other, TensorSeries):
            return NotImplemented
        self._compat(other)
        strata = [dict(s) for s in self.strata]
        add_into(strata, other.strata, -_ONE)
        return TensorSeries._wrap(self.rank, self.cap, strata)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TensorSeries._wrap(
            self.rank, self.cap, [{m: -c for m, c in s.items()} for s in self.strata]
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return TensorSeries.zero(self.rank, self.cap)
            return TensorSeries._wrap(
                self.rank,
                self.cap,
                [{m: v * c for m, v in s.items()} for s in self.strata],
            )
        if not isinstance(other, TensorSeries):
            return NotImplemented
        self._compat(other)
        return TensorSeries._wrap(
            self.rank, self.cap, mul_strata(self.strata, other.strata, self.cap)
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "TensorSeries":
        if n < 0:
            return series_invert(self) ** (-n)
        out = TensorSeries.one(self.rank, self.cap)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorSeries):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.cap == other.cap
            and self.strata == other.strata
        )

    def __repr__(self) -> str:
        parts = []
        for stratum in self.strata:
            for m in sorted(stratum):
                c = stratum[m]
                mono = "".join(f"x{i}" for i in m) or "1"
                parts.append(f"{c}*{mono}")
            if len(parts) > 8:
                parts.append("...")
                break
        return f"TensorSeries(rank={self.rank}, cap={self.cap}, {' + '.join(parts) or '0'})"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        entries = []
        for stratum in self.strata:
            for m in sorted(stratum):
                entries.append({"mono": list(m), "coeff": str(stratum[m])})
        return {"cap": self.cap, "terms": entries}

    @classmethod
    def from_json(cls, data: dict, rank: int) -> "TensorSeries":
        try:
            cap = int(data["cap"])
            terms = [
                (tuple(int(i) for i in e["mono"]), Fraction(e["coeff"]))
                for e in data["terms"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad series JSON: {exc}") from exc
        return cls(rank, cap, terms)


def series_invert(u: TensorSeries) -> TensorSeries:
    """Multiplicative inverse, exact up to the cap.

    Requires a unit, i.e. nonzero constant term; computed as a geometric
    series on the augmentation-normalized part (Horner form).
    """
    c = u.augmentation()
    if not c:
        raise NotAUnit("series with augmentation 0 has no inverse")
    n = u * (1 / c) - 1
    acc = TensorSeries.one(u.rank, u.cap)
    for _ in range(u.cap):
        acc = TensorSeries.one(u.rank, u.cap) - n * acc
    return acc * (1 / c)


def series_log(u: TensorSeries) -> TensorSeries:
    """log(u) for a series with constant term exactly 1."""
    if u.augmentation() != 1:
        raise BadAugmentation("log requires augmentation 1")
    x = u - 1
    out = TensorSeries.zero(u.rank, u.cap)
    power = TensorSeries.one(u.rank, u.cap)
    for n in range(1, u.cap + 1):
        power = power * x
        if power.is_zero():
            break
        out = out + power * Fraction((-1) ** (n - 1), n)
    return out


def series_exp(v: TensorSeries) -> TensorSeries:
    """exp(v) for a series with constant term exactly 0."""
    if v.augmentation() != 0:
        raise BadAugmentation("exp requires augmentation 0")
    out = TensorSeries.one(v.rank, v.cap)
    power = TensorSeries.one(v.rank, v.cap)
    fact = 1
    for n in range(1, v.cap + 1):
        power = power * v
        if power.is_zero():
            break
        fact *= n
        out = out + power * Fraction(1, fact)
    return out


class MagnusExpansion:
    """A choice of expansion: generator i maps to ``1 + x_i + (higher)``."""

    __slots__ = ("rank", "cap", "images", "_inverses", "_key")

    def __init__(self, images: Sequence[TensorSeries]):
        if not images:
            raise ValueError("at least one generator image required")
        rank, cap = images[0].rank, images[0].cap
        for i, u in enumerate(images, start=1):
            if u.rank != rank or u.cap != cap:
                raise TruncationMismatch("expansion images must share rank and cap")
            if u.augmentation() != 1:
                raise BadAugmentation(f"image of generator {i} must have constant term 1")
            if cap >= 1:
                lin = u.strata[1]
                if lin != {(i,): _ONE}:
                    raise ValueError(
                        f"image of generator {i} must be 1 + x_{i} + higher-order terms"
                    )
        self.rank, self.cap = rank, cap
        self.images = tuple(images)
        self._inverses: dict[int, TensorSeries] = {}
        self._key = None

    @classmethod
    def standard(cls, rank: int, cap: int) -> "MagnusExpansion":
        return cls([
            TensorSeries(rank, cap, {(): _ONE, (i,): _ONE}) for i in range(1, rank + 1)
        ])

    def is_standard(self) -> bool:
        return all(
            u == TensorSeries(self.rank, self.cap, {(): _ONE, (i,): _ONE})
            for i, u in enumerate(self.images, start=1)
        )

    def cache_key(self) -> tuple:
        """Hashable content key (used to memoize label solves)."""
        if self._key is None:
            self._key = tuple(
                tuple(sorted((m, c) for s in u.strata for m, c in s.items()))
                for u in self.images
            )
        return self._key

    def image(self, i: int, sign: int = 1) -> TensorSeries:
        if sign > 0:
            return self.images[i - 1]
        inv = self._inverses.get(i)
        if inv is None:
            inv = series_invert(self.images[i - 1])
            self._inverses[i] = inv
        return inv

    def word(self, w: GroupWord) -> TensorSeries:
        out = TensorSeries.one(self.rank, self.cap)
        for i, s in w.letters:
            if i > self.rank:
                raise ValueError(f"word uses generator {i} beyond rank {self.rank}")
            out = out * self.image(i, s)
        return out

    def ring(self, v: RingElement) -> TensorSeries:
        out = TensorSeries.zero(self.rank, self.cap)
        for w, c in v.terms.items():
            out = out + self.word(w) * c
        return out


def magnus_expand(w, rank: int, cap: int, expansion: MagnusExpansion | None = None) -> TensorSeries:
    """Magnus expansion of a word or ring element.

    Multiplicative on words, linear on ring elements; the default expansion
    is the standard one with image ``1 + x_i``.
    """
    if expansion is None:
        expansion = MagnusExpansion.standard(rank, cap)
    elif expansion.rank != rank or expansion.cap != cap:
        raise TruncationMismatch("expansion rank/cap does not match request")
    if isinstance(w, GroupWord):
        return expansion.word(w)
    if isinstance(w, RingElement):
        return expansion.ring(w)
    raise TypeError("magnus_expand expects a GroupWord or RingElement")


def word_degree_bound(w: GroupWord, rank: int, cap: int,
                      expansion: MagnusExpansion | None = None) -> int | None:
    """Least k with a nonzero degree-k term of theta(w) - 1.

    Returns None when theta(w) = 1 up to the cap, certifying only that the
    degree exceeds the cap.
    """
    diff = magnus_expand(w, rank, cap, expansion) - 1
    return diff.low_degree()
