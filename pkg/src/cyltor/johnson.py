"""Expansion automorphisms, the Johnson filtration, and the trace map.

An :class:`ExpansionAuto` records where each free generator's expansion goes
under a filtration-preserving algebra automorphism of the truncated tensor
algebra.  From it we read off the filtration degree, the leading deviation
(the Johnson value), and the degree-d trace obtained by contracting with the
intersection form and projecting to necklaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .cyclic import CyclicSeries
from .errors import (
    DegreeOnePartSingular,
    FiltrationTooShallow,
    NotHomogeneous,
    ParseError,
    TruncationMismatch,
)
from .series import MagnusExpansion, TensorSeries, series_invert

__all__ = [
    "SymplecticForm",
    "ExpansionAuto",
    "HomDerivation",
    "ia_degree",
    "tau",
    "dynkin_is_lie",
    "es_trace",
    "contract_C1",
    "auto_compose",
    "auto_invert",
    "magnus_matrix",
    "log_derivation",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SymplecticForm:
    """Standard intersection pairing on the rank-2g degree-one basis.

    Convention: basis vector i pairs with i+g to +1 for 1 <= i <= g, the
    pairing is antisymmetric, and all other basis pairings vanish.  The
    sharp map realizes duality: sharp(i) pairs to 1 with i and to 0 with
    every other basis vector.
    """

    __slots__ = ("genus",)

    def __init__(self, genus: int):
        if genus < 1:
            raise ValueError("genus must be >= 1")
        self.genus = genus

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def pair(self, i: int, j: int) -> int:
        g = self.genus
        if j == i + g:
            return 1
        if i == j + g:
            return -1
        return 0

    def sharp(self, i: int) -> tuple[int, int]:
        """Dual basis vector as (sign, index): sharp(i) = sign * x_index."""
        g = self.genus
        if i <= g:
            return (-1, i + g)
        return (1, i - g)


class ExpansionAuto:
    """Filtration-preserving automorphism given by its generator images.

    ``images[i-1]`` is the value on the i-th generator's expansion: a unit
    series with invertible degree-one part.  ``expansion`` records the
    reference expansion the images are measured against (standard unless a
    plugged-in expansion was used to produce them).
    """

    __slots__ = ("rank", "cap", "images", "expansion", "_cache")

    def __init__(self, images: Sequence[TensorSeries],
                 expansion: MagnusExpansion | None = None):
        if not images:
            raise ValueError("at least one image required")
        rank, cap = images[0].rank, images[0].cap
        if len(images) != rank:
            raise ValueError(f"expected {rank} images, got {len(images)}")
        for u in images:
            if u.rank != rank or u.cap != cap:
                raise TruncationMismatch("images must share rank and cap")
            if u.augmentation() != 1:
                raise ValueError("automorphism images must be units with constant term 1")
        self.rank, self.cap = rank, cap
        self.images = tuple(images)
        self.expansion = expansion if expansion is not None else MagnusExpansion.standard(rank, cap)
        self._cache: dict[tuple, TensorSeries] = {}

    @classmethod
    def identity(cls, rank: int, cap: int,
                 expansion: MagnusExpansion | None = None) -> "ExpansionAuto":
        exp = expansion if expansion is not None else MagnusExpansion.standard(rank, cap)
        return cls(list(exp.images), expansion=exp)

    @classmethod
    def from_words(cls, words, rank: int, cap: int,
                   expansion: MagnusExpansion | None = None) -> "ExpansionAuto":
        """Automorphism sending generator i to the i-th word."""
        exp = expansion if expansion is not None else MagnusExpansion.standard(rank, cap)
        return cls([exp.word(w) for w in words], expansion=exp)

    def linear_part(self) -> list[list[Fraction]]:
        """Matrix of the induced map on degree one: column j = image of x_j."""
        m = [[_ZERO] * self.rank for _ in range(self.rank)]
        for j, u in enumerate(self.images):
            for mono, c in u.strata[1].items():
                m[mono[0] - 1][j] = c
        return m

    def is_torelli(self) -> bool:
        ident = [[_ONE if i == j else _ZERO for j in range(self.rank)] for i in range(self.rank)]
        return self.linear_part() == ident

    def apply(self, s: TensorSeries) -> TensorSeries:
        """Substitution x_i -> image_i - 1, extended as an algebra map."""
        if s.rank != self.rank or s.cap != self.cap:
            raise TruncationMismatch("series rank/cap does not match automorphism")
        diffs = [u - 1 for u in self.images]
        out = TensorSeries.const(self.rank, self.cap, s.augmentation())
        cache = self._cache
        for stratum in s.strata[1:]:
            for mono, c in stratum.items():
                val = cache.get(mono)
                if val is None:
                    # build up prefix products so shared prefixes are reused
                    val = cache.get(mono[:-1])
                    if val is None:
                        val = diffs[mono[0] - 1]
                        for i in mono[1:]:
                            val = val * diffs[i - 1]
                    else:
                        val = val * diffs[mono[-1] - 1]
                    cache[mono] = val
                out = out + val * c
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpansionAuto):
            return NotImplemented
        return self.images == other.images

    def to_json(self) -> dict:
        return {
            "genus": self.rank // 2,
            "cap": self.cap,
            "images": {f"g{i}": u.to_json() for i, u in enumerate(self.images, start=1)},
        }


def auto_compose(a: ExpansionAuto, b: ExpansionAuto) -> ExpansionAuto:
    """Composite sending generator i to a.apply(b(generator i))."""
    if a.rank != b.rank or a.cap != b.cap:
        raise TruncationMismatch("automorphism rank/cap mismatch")
    return ExpansionAuto([a.apply(u) for u in b.images], expansion=a.expansion)


def auto_invert(a: ExpansionAuto) -> ExpansionAuto:
    """Inverse automorphism, solved degree by degree."""
    lin = a.linear_part()
    linv = _linalg.mat_inv(lin)
    if linv is None:
        raise DegreeOnePartSingular("degree-one part is not invertible")

    def back_substitute(s: TensorSeries) -> TensorSeries:
        # degree-preserving substitution x_j -> sum_m linv[m][j] x_m
        out = TensorSeries.zero(a.rank, a.cap)
        for mono, c in s.terms():
            if not mono:
                out = out + c
                continue
            term = TensorSeries.const(a.rank, a.cap, c)
            for j in mono:
                lin_img = TensorSeries(
                    a.rank, a.cap,
                    {(m + 1,): linv[m][j - 1] for m in range(a.rank) if linv[m][j - 1]},
                )
                term = term * lin_img
            out = out + term
        return out

    ref = a.expansion.images
    vs = [TensorSeries.one(a.rank, a.cap) + back_substitute(u - 1).slice_degree(1)
          for u in ref]
    for k in range(2, a.cap + 1):
        vs_new = []
        for i, v in enumerate(vs):
            residual = (a.apply(v) - ref[i]).slice_degree(k)
            vs_new.append(v - back_substitute(residual))
        vs = vs_new
    return ExpansionAuto(vs, expansion=a.expansion)


def ia_degree(a: ExpansionAuto) -> int | None:
    """Johnson filtration degree: largest d with all deviations above d.

    Returns None when every image equals the reference up to the cap (the
    degree then exceeds the cap without further certification).
    """
    low = None
    for u, ref in zip(a.images, a.expansion.images):
        d = (u - ref).low_degree()
        if d is not None:
            low = d if low is None else min(low, d)
    return None if low is None else low - 1


@dataclass(frozen=True)
class HomDerivation:
    """Degree-d Johnson value: one homogeneous degree-(d+1) series per generator."""

    degree: int
    values: tuple[TensorSeries, ...]

    def __post_init__(self):
        for w in self.values:
            low = w.low_degree()
            if low is not None and {d for d, s in enumerate(w.strata) if s} != {self.degree + 1}:
                raise NotHomogeneous("values must be homogeneous of degree d+1")

    @property
    def rank(self) -> int:
        return self.values[0].rank

    @property
    def cap(self) -> int:
        return self.values[0].cap

    def is_zero(self) -> bool:
        return all(w.is_zero() for w in self.values)

    def __add__(self, other: "HomDerivation") -> "HomDerivation":
        if self.degree != other.degree:
            raise ValueError("cannot add values of different degrees")
        return HomDerivation(self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "values": {f"g{i}": w.to_json() for i, w in enumerate(self.values, start=1)},
        }


def tau(a: ExpansionAuto, d: int) -> HomDerivation:
    """Degree-d Johnson value: the degree-(d+1) deviation on each generator."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d + 1 > a.cap:
        raise TruncationMismatch(f"cap {a.cap} too small to read degree {d + 1}")
    ia = ia_degree(a)
    if ia is not None and ia < d:
        raise FiltrationTooShallow(f"automorphism has filtration degree {ia} < {d}")
    return HomDerivation(
        d, tuple((u - ref).slice_degree(d + 1) for u, ref in zip(a.images, a.expansion.images))
    )


def dynkin_is_lie(w: TensorSeries) -> bool:
    """Dynkin criterion: homogeneous w of degree n is a Lie element iff
    left-bracketing it returns n*w."""
    degs = {d for d, s in enumerate(w.strata) if s}
    if len(degs) != 1:
        raise NotHomogeneous(f"expected a homogeneous series, got degrees {sorted(degs)}")
    n = next(iter(degs))
    if n == 0:
        raise NotHomogeneous("degree-0 series are not Lie elements")
    bracketed = TensorSeries.zero(w.rank, w.cap)
    for mono, c in w.strata[n].items():
        acc = TensorSeries.gen(w.rank, w.cap, mono[0])
        for i in mono[1:]:
            x = TensorSeries.gen(w.rank, w.cap, i)
            acc = acc * x - x * acc
        bracketed = bracketed + acc * c
    return bracketed == w * Fraction(n)


def es_trace(f: HomDerivation) -> CyclicSeries:
    """Contract each value's first slot with the dual generator, project.

    Identifies the derivation with sum_i sharp(i) (x) value_i and applies the
    intersection-form contraction followed by the necklace projection; the
    result is concentrated in degree d.
    """
    if f.rank % 2:
        raise ValueError("trace needs an even rank (a genus-g surface basis)")
    form = SymplecticForm(f.rank // 2)
    out = CyclicSeries.zero(f.rank, f.cap)
    for i, w in enumerate(f.values, start=1):
        sign, dual = form.sharp(i)
        for mono, c in w.strata[f.degree + 1].items():
            p = form.pair(dual, mono[0])
            if p:
                out = out + CyclicSeries(f.rank, f.cap, [(mono[1:], c * sign * p)])
    return out


def contract_C1(f: HomDerivation) -> list[Fraction]:
    """Degree-1 contraction read as a vector in the degree-one basis."""
    if f.degree != 1:
        raise ValueError("contract_C1 is defined for degree-1 values")
    return es_trace(f).degree_one_vector()


def _strip_leading(v: TensorSeries, i: int) -> TensorSeries:
    """The i-th component of the unique decomposition v = sum_i x_i w_i."""
    terms = {}
    for stratum in v.strata[1:]:
        for mono, c in stratum.items():
            if mono[0] == i:
                terms[mono[1:]] = c
    return TensorSeries(v.rank, v.cap, terms)


def magnus_matrix(a: ExpansionAuto) -> "SeriesMatrix":
    """Magnus matrix of the automorphism via the boundary identification.

    Entry (i, j) is -(1 + x_i) times the x_i-leading component of
    (image_j)^-1 - 1; for the identity this returns the identity matrix.
    Extracting the leading-letter component consumes one degree of
    precision, so the result lives at cap - 1.  Standard-expansion
    coordinates only.
    """
    from .k1 import SeriesMatrix

    if not a.expansion.is_standard():
        raise ValueError("magnus_matrix is implemented in standard-expansion coordinates")
    if a.cap < 1:
        raise TruncationMismatch("magnus_matrix needs cap >= 1")
    out_cap = a.cap - 1
    rows = []
    invs = [(series_invert(u) - 1) for u in a.images]
    for i in range(1, a.rank + 1):
        g_i = TensorSeries(a.rank, out_cap, {(): _ONE, (i,): _ONE})
        rows.append([
            -(g_i * _strip_leading(invs[j], i).truncated(out_cap))
            for j in range(a.rank)
        ])
    return SeriesMatrix(rows)


def log_derivation(a: ExpansionAuto) -> list[TensorSeries]:
    """Logarithm of the automorphism as a derivation, valued on generators.

    Returns, for each generator, sum_k (-1)^(k-1)/k (a - id)^k applied to
    x_i, where (a - id) is iterated as an operator.
    """
    out = []
    for i in range(1, a.rank + 1):
        term = TensorSeries.gen(a.rank, a.cap, i)
        acc = TensorSeries.zero(a.rank, a.cap)
        k = 0
        while True:
            term = a.apply(term) - term
            k += 1
            if term.is_zero():
                break
            acc = acc + term * Fraction((-1) ** (k - 1), k)
        out.append(acc)
    return out


def auto_from_json(data: dict) -> ExpansionAuto:
    """Automorphism JSON: word-valued images are Magnus-expanded on load."""
    from .words import parse_word

    try:
        genus = int(data["genus"])
        cap = int(data["cap"])
        images_raw = data["images"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad automorphism JSON: {exc}") from exc
    rank = 2 * genus
    exp = MagnusExpansion.standard(rank, cap)
    images = []
    for i in range(1, rank + 1):
        raw = images_raw.get(f"g{i}")
        if raw is None:
            raise ParseError(f"missing image for g{i}")
        if isinstance(raw, str):
            images.append(exp.word(parse_word(raw)))
        else:
            images.append(TensorSeries.from_json(raw, rank))
    return ExpansionAuto(images, expansion=exp)
