"""Matrices over the truncated algebra, the log-determinant, and oracles.

``ldet`` sends an augmentation-invertible matrix A to the pair
(det eps(A), cyclic projection of tr log(A eps(A)^-1)), which is a complete
K1 invariant over the completed local ring.  ``delta_alt`` is the
alternating-sum functional whose low-degree vanishing expresses the
finite-type property at the matrix level.  The commutative reduction
(``abelianize`` / ``comm_det``) provides an independent determinant oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg
from .cyclic import CyclicSeries, project_cyclic
from .errors import (
    AugmentationNotZero,
    NotAUnit,
    ParseError,
    PreconditionViolated,
    SingularAugmentation,
    TruncationMismatch,
)
from .series import TensorSeries

__all__ = [
    "SeriesMatrix",
    "K1Value",
    "eps_matrix",
    "matrix_invert",
    "ldet",
    "ldet_graded",
    "delta_alt",
    "CommSeries",
    "abelianize",
    "comm_det",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SeriesMatrix:
    """Square matrix of tensor series with a common rank and cap."""

    __slots__ = ("n", "rank", "cap", "rows")

    def __init__(self, rows: Sequence[Sequence[TensorSeries]]):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        first = rows[0][0]
        for r in rows:
            for e in r:
                if e.rank != first.rank or e.cap != first.cap:
                    raise TruncationMismatch("matrix entries must share rank and cap")
        self.n = n
        self.rank = first.rank
        self.cap = first.cap
        self.rows = [list(r) for r in rows]

    @classmethod
    def identity(cls, n: int, rank: int, cap: int) -> "SeriesMatrix":
        one = TensorSeries.one(rank, cap)
        zero = TensorSeries.zero(rank, cap)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int, rank: int, cap: int) -> "SeriesMatrix":
        z = TensorSeries.zero(rank, cap)
        return cls([[z for _ in range(n)] for _ in range(n)])

    def _compat(self, other: "SeriesMatrix") -> None:
        if self.n != other.n or self.rank != other.rank or self.cap != other.cap:
            raise TruncationMismatch("matrix size/rank/cap mismatch")

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._compat(other)
        return SeriesMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._compat(other)
        return SeriesMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "SeriesMatrix":
        return SeriesMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other) -> "SeriesMatrix":
        if isinstance(other, (int, Fraction)):
            return SeriesMatrix([[a * other for a in r] for r in self.rows])
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        self._compat(other)
        zero = TensorSeries.zero(self.rank, self.cap)
        out = [[zero for _ in range(self.n)] for _ in range(self.n)]
        # zero entries are skipped; the torsion matrices are very sparse
        for i in range(self.n):
            for k in range(self.n):
                a = self.rows[i][k]
                if a.is_zero():
                    continue
                row_b = other.rows[k]
                for j in range(self.n):
                    b = row_b[j]
                    if b.is_zero():
                        continue
                    out[i][j] = out[i][j] + a * b
        return SeriesMatrix(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def scale_rational(self, m: list[list[Fraction]], side: str) -> "SeriesMatrix":
        """Product with a rational matrix on the given side."""
        zero = TensorSeries.zero(self.rank, self.cap)
        out = [[zero for _ in range(self.n)] for _ in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                acc = zero
                for k in range(self.n):
                    c = m[i][k] if side == "left" else m[k][j]
                    e = self.rows[k][j] if side == "left" else self.rows[i][k]
                    if c and not e.is_zero():
                        acc = acc + e * c
                out[i][j] = acc
        return SeriesMatrix(out)

    def transpose(self) -> "SeriesMatrix":
        return SeriesMatrix([list(r) for r in zip(*self.rows)])

    def trace(self) -> TensorSeries:
        acc = TensorSeries.zero(self.rank, self.cap)
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def apply_auto(self, auto) -> "SeriesMatrix":
        """Entrywise push-forward through an expansion automorphism."""
        return SeriesMatrix([[auto.apply(e) for e in r] for r in self.rows])

    def swap_columns(self, j1: int, j2: int) -> "SeriesMatrix":
        rows = [list(r) for r in self.rows]
        for r in rows:
            r[j1], r[j2] = r[j2], r[j1]
        return SeriesMatrix(rows)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows


def eps_matrix(a: SeriesMatrix) -> list[list[Fraction]]:
    """Apply the augmentation to every entry."""
    return [[e.augmentation() for e in r] for r in a.rows]


def matrix_invert(a: SeriesMatrix) -> SeriesMatrix:
    """Exact inverse at the cap: eps(A)^-1 times a Neumann series.

    Writes A = (I + N) eps(A) with N = A eps(A)^-1 - I of augmentation 0, so
    the series terminates after cap steps.
    """
    e = eps_matrix(a)
    einv = _linalg.mat_inv(e)
    if einv is None:
        raise SingularAugmentation("matrix augmentation is singular")
    n = a.scale_rational(einv, side="right") - SeriesMatrix.identity(a.n, a.rank, a.cap)
    ident = SeriesMatrix.identity(a.n, a.rank, a.cap)
    acc = ident
    for _ in range(a.cap):
        acc = ident - n * acc
        if n.is_zero():
            break
    return acc.scale_rational(einv, side="left")


@dataclass(frozen=True)
class K1Value:
    """K1 class of the truncated completion: a unit rational and a cyclic log.

    The group law is (q1, l1) * (q2, l2) = (q1 q2, l1 + l2).
    """

    det_eps: Fraction
    log: CyclicSeries

    def __post_init__(self):
        if self.det_eps == 0:
            raise ValueError("det_eps must be a nonzero rational")

    def __mul__(self, other: "K1Value") -> "K1Value":
        return K1Value(self.det_eps * other.det_eps, self.log + other.log)

    def inverse(self) -> "K1Value":
        return K1Value(1 / self.det_eps, -self.log)

    def to_json(self) -> dict:
        return {"det_eps": str(self.det_eps), "log": self.log.to_json()}

    @classmethod
    def from_json(cls, data: dict, rank: int, cap: int) -> "K1Value":
        try:
            det = Fraction(data["det_eps"])
            log = CyclicSeries.from_json(data["log"], rank, cap)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad K1 JSON: {exc}") from exc
        return cls(det, log)


def _matrix_log_trace(a: SeriesMatrix) -> TensorSeries:
    """tr log(A eps(A)^-1), raising if the augmentation is singular."""
    e = eps_matrix(a)
    einv = _linalg.mat_inv(e)
    if einv is None:
        raise SingularAugmentation("matrix augmentation is singular")
    m = a.scale_rational(einv, side="right") - SeriesMatrix.identity(a.n, a.rank, a.cap)
    acc = TensorSeries.zero(a.rank, a.cap)
    power = None
    for k in range(1, a.cap + 1):
        power = m if power is None else power * m
        if power.is_zero():
            break
        acc = acc + power.trace() * Fraction((-1) ** (k - 1), k)
    return acc


def ldet(a: SeriesMatrix) -> K1Value:
    """The log-determinant pair (det eps(A), projected tr log(A eps(A)^-1))."""
    det = _linalg.mat_det(eps_matrix(a))
    if det == 0:
        raise SingularAugmentation("matrix augmentation is singular")
    return K1Value(det, project_cyclic(_matrix_log_trace(a)))


def ldet_graded(a: SeriesMatrix, n: int) -> CyclicSeries:
    """Degree-n slice of the log for a matrix trivial below degree n.

    Requires A eps(A)^-1 = I modulo degree n; on that input class the log
    reduces to A eps(A)^-1 - I in degree n.
    """
    if not (1 <= n <= a.cap):
        raise ValueError(f"degree {n} outside 1..{a.cap}")
    e = eps_matrix(a)
    einv = _linalg.mat_inv(e)
    if einv is None:
        raise SingularAugmentation("matrix augmentation is singular")
    m = a.scale_rational(einv, side="right") - SeriesMatrix.identity(a.n, a.rank, a.cap)
    for r in m.rows:
        for entry in r:
            low = entry.low_degree()
            if low is not None and low < n:
                raise PreconditionViolated(
                    f"matrix is nontrivial in degree {low} < {n}"
                )
    return ldet(a).log.slice_degree(n)


def delta_alt(mats: Sequence[SeriesMatrix]) -> CyclicSeries:
    """Alternating sum of ldet logs over all subsets of perturbations.

    Inputs must have augmentation-zero entries; the result vanishes exactly
    in degrees below the number of inputs.
    """
    if not mats:
        raise ValueError("at least one perturbation matrix required")
    first = mats[0]
    for a in mats:
        first._compat(a)
        for r in a.rows:
            for entry in r:
                if entry.augmentation():
                    raise AugmentationNotZero("perturbations must lie in the ideal")
    d = len(mats)
    ident = SeriesMatrix.identity(first.n, first.rank, first.cap)
    out = CyclicSeries.zero(first.rank, first.cap)
    for mask in range(1 << d):
        total = ident
        for j in range(d):
            if mask >> j & 1:
                total = total + mats[j]
        sign = -1 if bin(mask).count("1") % 2 else 1
        out = out + ldet(total).log * sign
    return out


# -- commutative reduction ----------------------------------------------


class CommSeries:
    """Truncated commutative power series: exponent vectors over t_1..t_rank."""

    __slots__ = ("rank", "cap", "terms")

    def __init__(self, rank: int, cap: int,
                 terms: Iterable[tuple[tuple[int, ...], Fraction]] | None = None):
        self.rank = rank
        self.cap = cap
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for expo, c in items:
                expo = tuple(expo)
                if len(expo) != rank:
                    raise ValueError("exponent vector length must equal rank")
                if sum(expo) > cap or not c:
                    continue
                s = self.terms.get(expo, _ZERO) + c
                if s:
                    self.terms[expo] = s
                else:
                    self.terms.pop(expo, None)

    @classmethod
    def const(cls, rank: int, cap: int, c) -> "CommSeries":
        return cls(rank, cap, [((0,) * rank, Fraction(c))])

    @classmethod
    def one(cls, rank: int, cap: int) -> "CommSeries":
        return cls.const(rank, cap, 1)

    @classmethod
    def zero(cls, rank: int, cap: int) -> "CommSeries":
        return cls(rank, cap)

    def _compat(self, other: "CommSeries") -> None:
        if self.rank != other.rank or self.cap != other.cap:
            raise TruncationMismatch("commutative series rank/cap mismatch")

    def augmentation(self) -> Fraction:
        return self.terms.get((0,) * self.rank, _ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CommSeries.const(self.rank, self.cap, other)
        self._compat(other)
        out = CommSeries(self.rank, self.cap)
        out.terms = dict(self.terms)
        for k, c in other.terms.items():
            s = out.terms.get(k, _ZERO) + c
            if s:
                out.terms[k] = s
            else:
                out.terms.pop(k, None)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = CommSeries(self.rank, self.cap)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CommSeries.const(self.rank, self.cap, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            out = CommSeries(self.rank, self.cap)
            if c:
                out.terms = {k: v * c for k, v in self.terms.items()}
            return out
        self._compat(other)
        out = CommSeries(self.rank, self.cap)
        terms = out.terms
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > self.cap:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(key, _ZERO) + c1 * c2
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return out

    __rmul__ = __mul__

    def invert(self) -> "CommSeries":
        c = self.augmentation()
        if not c:
            raise NotAUnit("commutative series with augmentation 0 has no inverse")
        n = self * (1 / c) - 1
        acc = CommSeries.one(self.rank, self.cap)
        for _ in range(self.cap):
            acc = CommSeries.one(self.rank, self.cap) - n * acc
        return acc * (1 / c)

    def exp(self) -> "CommSeries":
        if self.augmentation():
            raise ValueError("exp requires augmentation 0")
        out = CommSeries.one(self.rank, self.cap)
        power = CommSeries.one(self.rank, self.cap)
        fact = 1
        for k in range(1, self.cap + 1):
            power = power * self
            if power.is_zero():
                break
            fact *= k
            out = out + power * Fraction(1, fact)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommSeries):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.cap == other.cap
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        parts = []
        for k in sorted(self.terms, key=lambda k: (sum(k), k)):
            mono = "".join(f"t{i + 1}^{e}" for i, e in enumerate(k) if e) or "1"
            parts.append(f"{self.terms[k]}*{mono}")
        return f"CommSeries({' + '.join(parts) or '0'})"


def _abelian_exponent(mono: tuple[int, ...], rank: int) -> tuple[int, ...]:
    out = [0] * rank
    for i in mono:
        out[i - 1] += 1
    return tuple(out)


def abelianize(x):
    """Map to the commutative reduction.

    Tensor and cyclic series map monomials to exponent vectors; matrices map
    entrywise (returning a list of lists of :class:`CommSeries`).
    """
    if isinstance(x, TensorSeries):
        out = CommSeries(x.rank, x.cap)
        terms = out.terms
        for mono, c in x.terms():
            key = _abelian_exponent(mono, x.rank)
            s = terms.get(key, _ZERO) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return out
    if isinstance(x, CyclicSeries):
        out = CommSeries(x.rank, x.cap)
        terms = out.terms
        for mono, c in x.terms.items():
            key = _abelian_exponent(mono, x.rank)
            s = terms.get(key, _ZERO) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return out
    if isinstance(x, SeriesMatrix):
        return [[abelianize(e) for e in r] for r in x.rows]
    raise TypeError(f"cannot abelianize {type(x).__name__}")


def comm_det(m: list[list[CommSeries]]) -> CommSeries:
    """Determinant over the commutative truncated ring.

    Gaussian elimination with unit pivots (nonzero augmentation); valid
    whenever the rational reduction is invertible.
    """
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise ValueError("matrix must be square and nonempty")
    a = [list(r) for r in m]
    det = CommSeries.one(a[0][0].rank, a[0][0].cap)
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col].augmentation()), None)
        if piv is None:
            raise SingularAugmentation("commutative reduction is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        pivot = a[col][col]
        det = det * pivot
        pinv = pivot.invert()
        for r in range(col + 1, n):
            if not a[r][col].is_zero():
                f = a[r][col] * pinv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det * sign
