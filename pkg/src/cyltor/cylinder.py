"""Labeled balanced presentations and the normalized torsion invariant.

A presentation carries three generator blocks: the top copy of the surface
basis (``plus``), auxiliary generators (``extra``), and the bottom copy
(``minus``), which is the reference basis.  Solving labels expresses every
generator as a series over the bottom copy, degree by degree; the torsion is
the log-determinant of the evaluated barred Fox matrix, normalized so that
its degree-one slice equals -1/2 times the contracted first Johnson value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .cyclic import CyclicSeries, p_plus, project_cyclic
from .errors import (
    InconsistentRelators,
    LowerDegreeNonzero,
    NonIntegralEulerShift,
    NotAHomologyCylinder,
    NotTorelli,
    ParseError,
    TruncationMismatch,
)
from .johnson import ExpansionAuto, HomDerivation, contract_C1, tau
from .k1 import K1Value, SeriesMatrix, eps_matrix, ldet, matrix_invert
from .series import MagnusExpansion, TensorSeries, series_invert, series_log
from .words import GroupWord, fox_derivative, format_word, parse_word

__all__ = [
    "LabeledPresentation",
    "CylinderInvariant",
    "trivial_cylinder",
    "mapping_cylinder",
    "solve_labels",
    "sigma_of",
    "torsion",
    "alpha_d",
    "compose",
    "mirror",
    "magnus_rep",
    "one_loop_leading",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LabeledPresentation:
    """Balanced presentation with distinguished bottom/top surface bases.

    The generator namespace is positional: plus block first, then extras,
    then the minus block; relators are words over that indexing.
    """

    genus: int
    plus: list[str]
    extra: list[str]
    minus: list[str]
    relators: list[GroupWord]
    _solved: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        g2 = 2 * self.genus
        if len(self.plus) != g2 or len(self.minus) != g2:
            raise ValueError(f"plus/minus blocks must have 2g = {g2} names")
        names = self.names
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for n in names:
            if not n or n != n.lower():
                raise ValueError(f"generator names must be nonempty lowercase, got {n!r}")
        if len(self.relators) != g2 + len(self.extra):
            raise ValueError(
                f"balanced presentation needs {g2 + len(self.extra)} relators, "
                f"got {len(self.relators)}"
            )
        top = len(names)
        for r in self.relators:
            if r.max_index() > top:
                raise ValueError("relator uses a generator outside the namespace")

    @property
    def names(self) -> list[str]:
        return self.plus + self.extra + self.minus

    @property
    def n_unknowns(self) -> int:
        return 2 * self.genus + len(self.extra)

    def minus_index(self, k: int) -> int:
        """Namespace index of the k-th (1-based) bottom generator."""
        return self.n_unknowns + k

    def surface_of(self, idx: int) -> int | None:
        """Surface basis position of a minus generator index, else None."""
        k = idx - self.n_unknowns
        return k if 1 <= k <= 2 * self.genus else None

    def to_json(self) -> dict:
        names = self.names
        return {
            "genus": self.genus,
            "minus": list(self.minus),
            "plus": list(self.plus),
            "extra": list(self.extra),
            "relators": [format_word(r, names) for r in self.relators],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LabeledPresentation":
        try:
            genus = int(data["genus"])
            minus = [str(x) for x in data["minus"]]
            plus = [str(x) for x in data["plus"]]
            extra = [str(x) for x in data.get("extra", [])]
            raw = data["relators"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad presentation JSON: {exc}") from exc
        names = plus + extra + minus
        try:
            relators = [parse_word(r, names) for r in raw]
            return cls(genus, plus, extra, minus, relators)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def trivial_cylinder(genus: int) -> LabeledPresentation:
    """The product cylinder: top generator = bottom generator."""
    g2 = 2 * genus
    plus = [f"p{i}" for i in range(1, g2 + 1)]
    minus = [f"m{i}" for i in range(1, g2 + 1)]
    relators = [
        GroupWord([(i, 1), (g2 + i, -1)]) for i in range(1, g2 + 1)
    ]
    return LabeledPresentation(genus, plus, [], minus, relators)


def mapping_cylinder(images: Sequence[GroupWord], genus: int) -> LabeledPresentation:
    """Mapping cylinder of a free-group endomorphism given on the basis.

    Relator j identifies the j-th top generator with the image word written
    over the bottom basis; the Fox block over the top generators is the
    identity by construction.
    """
    g2 = 2 * genus
    if len(images) != g2:
        raise ValueError(f"need {g2} image words")
    plus = [f"p{i}" for i in range(1, g2 + 1)]
    minus = [f"m{i}" for i in range(1, g2 + 1)]
    relators = []
    for j, w in enumerate(images, start=1):
        if w.max_index() > g2:
            raise ValueError("image word outside the surface basis")
        shifted = GroupWord([(g2 + i, s) for i, s in w.letters])
        relators.append(GroupWord([(j, 1)]) * shifted.inverse())
    return LabeledPresentation(genus, plus, [], minus, relators)


# -- label solving ------------------------------------------------------


def _evaluate_word(w: GroupWord, labels: dict[int, TensorSeries],
                   inverses: dict[int, TensorSeries]) -> TensorSeries:
    first = next(iter(labels.values()))
    out = TensorSeries.one(first.rank, first.cap)
    for i, s in w.letters:
        if s > 0:
            out = out * labels[i]
        else:
            inv = inverses.get(i)
            if inv is None:
                inv = series_invert(labels[i])
                inverses[i] = inv
            out = out * inv
    return out


def _exponent_data(pres: LabeledPresentation):
    """Relator exponent sums split into unknown and bottom-basis parts."""
    n_unk = pres.n_unknowns
    g2 = 2 * pres.genus
    e_rows, b_rows = [], []
    for r in pres.relators:
        e = [_ZERO] * n_unk
        b = [_ZERO] * g2
        for i, s in r.letters:
            if i <= n_unk:
                e[i - 1] += s
            else:
                b[i - n_unk - 1] += s
        e_rows.append(e)
        b_rows.append(b)
    return e_rows, b_rows


def solve_labels(pres: LabeledPresentation, cap: int,
                 expansion: MagnusExpansion | None = None) -> dict[int, TensorSeries]:
    """Unique generator labels over the bottom basis, solved degree by degree.

    The bottom generators are fixed at the expansion images; degree-one
    parts come from the integral abelianized system, and each higher degree
    is the solution of the same rational linear system applied to the
    relator residuals (the Fox linearization of a degree-k perturbation is
    exactly the exponent-sum matrix).
    """
    g2 = 2 * pres.genus
    exp = expansion if expansion is not None else MagnusExpansion.standard(g2, cap)
    if exp.rank != g2 or exp.cap != cap:
        raise TruncationMismatch("expansion rank/cap does not match presentation/cap")
    key = (cap, None if expansion is None else expansion.cache_key())
    cached = pres._solved.get(key)
    if cached is not None:
        return cached

    n_unk = pres.n_unknowns
    e_rows, b_rows = _exponent_data(pres)
    einv = _linalg.mat_inv(e_rows)
    if einv is None:
        raise NotAHomologyCylinder("abelianized system is singular over the unknowns")
    # class of unknown u = -(E^-1 b) row u; must be integral
    classes = [[-x for x in row] for row in _linalg.mat_mul(einv, b_rows)]
    for row in classes:
        for x in row:
            if x.denominator != 1:
                raise NotAHomologyCylinder("abelianized solution is not integral")

    labels: dict[int, TensorSeries] = {}
    for u in range(1, n_unk + 1):
        labels[u] = TensorSeries(
            g2, cap,
            [((), _ONE)] + [((j,), classes[u - 1][j - 1]) for j in range(1, g2 + 1)],
        )
    for k in range(1, g2 + 1):
        labels[n_unk + k] = exp.images[k - 1]

    for k in range(2, cap + 1):
        trunc = {i: s.truncated(k) for i, s in labels.items()}
        inverses: dict[int, TensorSeries] = {}
        residuals = [
            (_evaluate_word(r, trunc, inverses) - 1).slice_degree(k)
            for r in pres.relators
        ]
        monos = sorted({m for res in residuals for m, _ in res.strata[k].items()})
        for mono in monos:
            vec = [res.strata[k].get(mono, _ZERO) for res in residuals]
            corr = _linalg.mat_vec(einv, vec)
            for u in range(1, n_unk + 1):
                if corr[u - 1]:
                    stratum = labels[u].strata[k]
                    s = stratum.get(mono, _ZERO) - corr[u - 1]
                    if s:
                        stratum[mono] = s
                    else:
                        stratum.pop(mono, None)

    inverses = {}
    for r in pres.relators:
        if not (_evaluate_word(r, labels, inverses) - 1).is_zero():
            raise InconsistentRelators(f"relator {format_word(r, pres.names)} does not close")
    pres._solved[key] = labels
    return labels


def _evaluate_ring(v, labels: dict[int, TensorSeries], inverses: dict[int, TensorSeries],
                   rank: int, cap: int) -> TensorSeries:
    out = TensorSeries.zero(rank, cap)
    for w, c in v.terms.items():
        out = out + _evaluate_word(w, labels, inverses) * c
    return out


def sigma_of(pres: LabeledPresentation, cap: int,
             expansion: MagnusExpansion | None = None) -> ExpansionAuto:
    """Boundary automorphism: images are the solved labels of the top basis."""
    labels = solve_labels(pres, cap, expansion)
    g2 = 2 * pres.genus
    exp = expansion if expansion is not None else MagnusExpansion.standard(g2, cap)
    return ExpansionAuto([labels[i] for i in range(1, g2 + 1)], expansion=exp)


def _evaluated_fox_matrix(pres: LabeledPresentation, cap: int,
                          expansion: MagnusExpansion | None,
                          gen_indices: Sequence[int]) -> list[list[TensorSeries]]:
    labels = solve_labels(pres, cap, expansion)
    g2 = 2 * pres.genus
    inverses: dict[int, TensorSeries] = {}
    rows = []
    for i in gen_indices:
        row = []
        for r in pres.relators:
            entry = fox_derivative(r, i).bar()
            row.append(_evaluate_ring(entry, labels, inverses, g2, cap))
        rows.append(row)
    return rows


def presentation_matrix(pres: LabeledPresentation, cap: int,
                        expansion: MagnusExpansion | None = None) -> SeriesMatrix:
    """The evaluated barred Fox matrix over the unknown generators."""
    return SeriesMatrix(
        _evaluated_fox_matrix(pres, cap, expansion, range(1, pres.n_unknowns + 1))
    )


@dataclass(frozen=True)
class CylinderInvariant:
    """Normalized torsion with the boundary action and first Johnson value.

    ``mod_h`` marks values computed for a non-Torelli boundary action, where
    the class is only defined modulo degree-one units.
    """

    torsion: K1Value
    sigma: ExpansionAuto
    tau1: HomDerivation | None
    mod_h: bool = False


def torsion(pres: LabeledPresentation, cap: int,
            expansion: MagnusExpansion | None = None,
            allow_mod_h: bool = False) -> CylinderInvariant:
    """Euler-normalized torsion of a labeled presentation.

    The raw log-determinant is shifted by a degree-one unit so that its
    degree-one slice equals -1/2 times the contracted first Johnson value;
    the shift must land on an integral class.  The rational part is fixed
    to 1 by a relator swap when the augmented determinant is -1.
    """
    if cap < 2:
        raise TruncationMismatch("torsion needs cap >= 2 to fix the normalization")
    g2 = 2 * pres.genus
    exp = expansion if expansion is not None else MagnusExpansion.standard(g2, cap)
    a = presentation_matrix(pres, cap, expansion)
    det = _linalg.mat_det(eps_matrix(a))
    if det not in (1, -1):
        raise NotAHomologyCylinder(f"augmented determinant {det} is not a unit over Z")
    if det == -1:
        a = a.swap_columns(0, 1)
    lam = ldet(a)
    sigma = sigma_of(pres, cap, expansion)
    if not sigma.is_torelli():
        if not allow_mod_h:
            raise NotTorelli("boundary action is not Torelli; pass allow_mod_h=True "
                             "for the class defined modulo degree-one units")
        return CylinderInvariant(K1Value(_ONE, lam.log), sigma, None, mod_h=True)
    tau1 = tau(sigma, 1)
    target = [Fraction(-1, 2) * x for x in contract_C1(tau1)]
    raw1 = lam.log.degree_one_vector()
    shift = [t - r for t, r in zip(target, raw1)]
    if any(x.denominator != 1 for x in shift):
        raise NonIntegralEulerShift(f"normalization shift {shift} is not integral")
    # shift by the product of expansion images in basis order; the cyclic
    # log only sees the homology class, so the order is immaterial
    unit = TensorSeries.one(g2, cap)
    for i, h in enumerate(shift, start=1):
        hi = int(h)
        if hi > 0:
            unit = unit * exp.image(i, 1) ** hi
        elif hi < 0:
            unit = unit * exp.image(i, -1) ** (-hi)
    log = lam.log + project_cyclic(series_log(unit))
    return CylinderInvariant(K1Value(_ONE, log), sigma, tau1)


def alpha_d(pres: LabeledPresentation, d: int, cap: int | None = None,
            expansion: MagnusExpansion | None = None) -> CyclicSeries:
    """Degree-d slice of the torsion log, defined when lower slices vanish."""
    work_cap = max(cap if cap is not None else d, d, 2)
    inv = torsion(pres, work_cap, expansion)
    for k in range(1, d):
        if not inv.torsion.log.slice_degree(k).is_zero():
            raise LowerDegreeNonzero(f"torsion log is nonzero in degree {k} < {d}")
    return inv.torsion.log.slice_degree(d)


# -- monoid structure ---------------------------------------------------


def _remap(word: GroupWord, translation: dict[int, int]) -> GroupWord:
    return GroupWord([(translation[i], s) for i, s in word.letters])


def compose(p: LabeledPresentation, q: LabeledPresentation) -> LabeledPresentation:
    """Stack ``p`` (bottom) with ``q`` (top).

    Generators are suffixed ``_a`` / ``_b`` to stay disjoint; the composite
    keeps p's bottom basis as reference, q's top basis on top, and adds
    identification relators between p's top and q's bottom copies.
    """
    if p.genus != q.genus:
        raise ValueError("presentations must share the genus")
    g2 = 2 * p.genus
    pa = [f"{n}_a" for n in p.plus]
    ea = [f"{n}_a" for n in p.extra]
    ma = [f"{n}_a" for n in p.minus]
    pb = [f"{n}_b" for n in q.plus]
    eb = [f"{n}_b" for n in q.extra]
    mb = [f"{n}_b" for n in q.minus]

    plus = pb
    extra = pa + ea + eb + mb
    minus = ma
    names = plus + extra + minus
    pos = {n: i + 1 for i, n in enumerate(names)}

    trans_p = {i + 1: pos[f"{n}_a"] for i, n in enumerate(p.names)}
    trans_q = {i + 1: pos[f"{n}_b"] for i, n in enumerate(q.names)}

    relators = [_remap(r, trans_p) for r in p.relators]
    relators += [_remap(r, trans_q) for r in q.relators]
    for j in range(g2):
        relators.append(
            GroupWord([(pos[pa[j]], 1), (pos[mb[j]], -1)])
        )
    return LabeledPresentation(p.genus, plus, extra, minus, relators)


def mirror(p: LabeledPresentation) -> LabeledPresentation:
    """Swap the roles of the two surface copies; labels re-solve on demand."""
    names_old = p.names
    plus, minus = list(p.minus), list(p.plus)
    names_new = plus + list(p.extra) + minus
    pos = {n: i + 1 for i, n in enumerate(names_new)}
    trans = {i + 1: pos[n] for i, n in enumerate(names_old)}
    return LabeledPresentation(
        p.genus, plus, list(p.extra), minus, [_remap(r, trans) for r in p.relators]
    )


def magnus_rep(pres: LabeledPresentation, cap: int,
               expansion: MagnusExpansion | None = None) -> SeriesMatrix:
    """Magnus representation from the presentation.

    Minus the evaluated barred Fox block over the bottom basis, times the
    inverse presentation matrix, restricted to the top-basis columns.
    """
    g2 = 2 * pres.genus
    a = presentation_matrix(pres, cap, expansion)
    ainv = matrix_invert(a)
    c_rows = _evaluated_fox_matrix(
        pres, cap, expansion,
        [pres.minus_index(k) for k in range(1, g2 + 1)],
    )
    n = pres.n_unknowns
    zero = TensorSeries.zero(g2, cap)
    out = [[zero for _ in range(g2)] for _ in range(g2)]
    for i in range(g2):
        for k in range(n):
            e = c_rows[i][k]
            if e.is_zero():
                continue
            for j in range(g2):
                b = ainv.rows[k][j]
                if not b.is_zero():
                    out[i][j] = out[i][j] - e * b
    return SeriesMatrix(out)


def one_loop_leading(pres: LabeledPresentation, d: int, cap: int | None = None):
    """Leading one-loop report field: -1/2 p_plus of the degree-d slice of
    the composite with its mirror (no independent diagram-valued check)."""
    comp = compose(pres, mirror(pres))
    value = alpha_d(comp, d, cap)
    return p_plus(value * Fraction(-1, 2))
