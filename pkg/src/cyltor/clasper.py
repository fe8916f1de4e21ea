"""Surgery front end: one-loop clasper data, tree brackets, and templates.

A one-loop clasper of degree d is given algebraically: d leaf words and one
path word over the surface basis, plus a half-twist bit per edge.  The
closed surgery factor multiplies the torsion by two explicit units; the
compiled presentation realizes the same surgery through relators and serves
as the independent oracle.  Basepoint and figure conventions are absorbed
into the input words; flipping the global half-twist convention flips all
twist bits at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclic import CyclicSeries, project_cyclic
from .cylinder import LabeledPresentation, trivial_cylinder
from .errors import NotAUnit, ParseError
from .k1 import K1Value
from .series import MagnusExpansion, TensorSeries, series_invert, series_log
from .words import GroupWord, format_word, parse_word

__all__ = [
    "OneLoopClasper",
    "TreeClasper",
    "tree_bracket",
    "surgery_factor",
    "one_loop_presentation",
    "y_presentation",
    "theta_presentation",
    "psi_leading",
    "clasper_mirror",
]

_ONE = Fraction(1)


@dataclass(frozen=True)
class OneLoopClasper:
    """Algebraic one-loop surgery datum: leaves, path, and twist bits."""

    degree: int
    leaves: tuple[GroupWord, ...]
    delta: GroupWord
    twists: tuple[int, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if len(self.leaves) != self.degree or len(self.twists) != self.degree:
            raise ValueError("need one leaf word and one twist bit per edge")
        if any(t not in (0, 1) for t in self.twists):
            raise ValueError("twists are bits")

    @property
    def twist_parity(self) -> int:
        return sum(self.twists) % 2

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "leaves": [format_word(w) for w in self.leaves],
            "delta": format_word(self.delta),
            "twists": list(self.twists),
        }

    @classmethod
    def from_json(cls, data: dict) -> "OneLoopClasper":
        try:
            return cls(
                int(data["degree"]),
                tuple(parse_word(w) for w in data["leaves"]),
                parse_word(data.get("delta", "1")),
                tuple(int(t) for t in data["twists"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad clasper JSON: {exc}") from exc


class TreeClasper:
    """Rooted binary tree with leaves labeled by degree-one vectors.

    ``shape`` is a nested pair structure whose leaves are coefficient
    sequences over the surface basis; ``twists`` counts half-twisted edges.
    """

    def __init__(self, shape, twists: int = 0):
        if twists < 0:
            raise ValueError("twist count must be >= 0")
        self.shape = shape
        self.twists = twists
        if self._count_leaves(shape) < 2:
            raise ValueError("tree claspers need at least 2 leaves")

    @staticmethod
    def _count_leaves(node) -> int:
        if isinstance(node, tuple) and len(node) == 2:
            return TreeClasper._count_leaves(node[0]) + TreeClasper._count_leaves(node[1])
        return 1


def _vector_series(vec: Sequence, rank: int, cap: int) -> TensorSeries:
    return TensorSeries(rank, cap, {(i,): Fraction(c) for i, c in enumerate(vec, start=1) if c})


def tree_bracket(t: TreeClasper, rank: int, cap: int) -> TensorSeries:
    """(-1)^twists times the iterated bracket encoded by the tree."""

    def bracket(node) -> TensorSeries:
        if isinstance(node, tuple) and len(node) == 2:
            left, right = bracket(node[0]), bracket(node[1])
            return left * right - right * left
        return _vector_series(node, rank, cap)

    return bracket(t.shape) * Fraction((-1) ** t.twists)


def surgery_factor(c: OneLoopClasper, genus: int, cap: int,
                   expansion: MagnusExpansion | None = None) -> K1Value:
    """Closed-form torsion change of the one-loop surgery.

    The two factors are theta(delta) +- the ordered products of
    (1 - theta(leaf)) and the reversed products of inverses; both are units
    because the products lie in the augmentation ideal.
    """
    rank = 2 * genus
    exp = expansion if expansion is not None else MagnusExpansion.standard(rank, cap)
    sign = Fraction((-1) ** (c.twist_parity + 1))
    leaves = [exp.word(w) for w in c.leaves]
    delta = exp.word(c.delta)

    prod_rev = TensorSeries.one(rank, cap)
    for u in reversed(leaves):
        prod_rev = prod_rev * (TensorSeries.one(rank, cap) - u)
    prod_inv = TensorSeries.one(rank, cap)
    for u in leaves:
        prod_inv = prod_inv * (TensorSeries.one(rank, cap) - series_invert(u))

    f1 = delta + prod_rev * sign
    f2 = series_invert(delta) + prod_inv * sign
    if f1.augmentation() != 1 or f2.augmentation() != 1:
        raise NotAUnit("surgery factors must be units with constant term 1")
    log = project_cyclic(series_log(f1)) + project_cyclic(series_log(f2))
    return K1Value(_ONE, log)


def _shift_word(w: GroupWord, offset: int) -> GroupWord:
    return GroupWord([(i + offset, s) for i, s in w.letters])


def one_loop_presentation(c: OneLoopClasper,
                          base: LabeledPresentation | None = None,
                          genus: int | None = None) -> LabeledPresentation:
    """Compile the surgery into a balanced presentation over the base.

    Appends, per edge i, meridian generators a_{i,1..3} and longitude
    generators b_{i,2..3} with the five surgery relators; the leaf and path
    longitudes are substituted textually as words over the base's bottom
    basis.  The solver then derives that every appended label is 1, which is
    what makes this the oracle for :func:`surgery_factor`.
    """
    if base is None:
        if genus is None:
            raise ValueError("need a base presentation or a genus")
        base = trivial_cylinder(genus)
    g2 = 2 * base.genus
    d = c.degree
    n_unk = base.n_unknowns

    # pick a tag not colliding with the base (surgeries can be stacked)
    tag = "y"
    while any(n.startswith(tag) for n in base.names):
        tag += "y"
    new_names = []
    for i in range(1, d + 1):
        new_names += [f"{tag}{i}a1", f"{tag}{i}a2", f"{tag}{i}a3",
                      f"{tag}{i}b2", f"{tag}{i}b3"]

    plus = list(base.plus)
    extra = list(base.extra) + new_names
    minus = list(base.minus)
    names = plus + extra + minus
    pos = {n: k + 1 for k, n in enumerate(names)}
    trans_base = {k + 1: pos[n] for k, n in enumerate(base.names)}
    relators = [GroupWord([(trans_base[i], s) for i, s in r.letters]) for r in base.relators]

    def minus_word(w: GroupWord) -> GroupWord:
        if w.max_index() > g2:
            raise ValueError("leaf/path words live over the surface basis")
        shifted = GroupWord([(i + n_unk, s) for i, s in w.letters])
        return GroupWord([(trans_base[i], s) for i, s in shifted.letters])

    leaf = [minus_word(w) for w in c.leaves]
    path = minus_word(c.delta)

    def gen(name: str, s: int = 1) -> GroupWord:
        return GroupWord([(pos[name], s)])

    for i in range(1, d + 1):
        a1, a2, a3 = gen(f"{tag}{i}a1"), gen(f"{tag}{i}a2"), gen(f"{tag}{i}a3")
        b2, b3 = gen(f"{tag}{i}b2"), gen(f"{tag}{i}b3")
        b1 = leaf[i - 1]
        nxt = i + 1 if i < d else 1
        a3n = gen(f"{tag}{nxt}a3")
        b3n = gen(f"{tag}{nxt}b3")
        relators.append(a1 * b3 * a2 * b2.inverse() * a2.inverse() * b3.inverse() * b2)
        relators.append(a2 * b1 * a3 * b3.inverse() * a3.inverse() * b1.inverse() * b3)
        relators.append(a3 * b2 * a1 * b1.inverse() * a1.inverse() * b2.inverse() * b1)
        if i < d:
            if c.twists[i - 1] == 0:
                r4 = a2 * b3n
                r5 = b2 * a3n
            else:
                r4 = b2.inverse() * a2 * b2 * b3n.inverse()
                r5 = b2.inverse() * a2 * b2 * a2.inverse() * b2 * a3n.inverse()
        else:
            # closing the loop conjugates by the path word
            if c.twists[d - 1] == 0:
                r4 = a2 * path * b3n * path.inverse()
                r5 = b2 * path * a3n * path.inverse()
            else:
                r4 = b2.inverse() * a2 * b2 * path * b3n.inverse() * path.inverse()
                r5 = (b2.inverse() * a2 * b2 * a2.inverse() * b2
                      * path * a3n.inverse() * path.inverse())
        relators.append(r4)
        relators.append(r5)
    return LabeledPresentation(base.genus, plus, extra, minus, relators)


def y_presentation() -> tuple[list[str], list[GroupWord]]:
    """The degree-one neighborhood fragment: 6 generators, 3 relators.

    Not balanced on its own; used to check the Fox matrix against the
    genus-three handlebody form and for embedding into a base cylinder.
    """
    names = ["a1", "a2", "a3", "b1", "b2", "b3"]

    def w(text: str) -> GroupWord:
        return parse_word(text, names)

    relators = [
        w("a1 b3 a2 B2 A2 B3 b2"),
        w("a2 b1 a3 B3 A3 B1 b3"),
        w("a3 b2 a1 B1 A1 B2 b1"),
    ]
    return names, relators


def theta_presentation(base: LabeledPresentation | None = None,
                       genus: int | None = None) -> LabeledPresentation:
    """Two degree-one pieces with all three edge pairs glued: a two-loop
    surgery template whose torsion must be trivial."""
    if base is None:
        if genus is None:
            raise ValueError("need a base presentation or a genus")
        base = trivial_cylinder(genus)
    tag = "v"
    while any(n.startswith(tag) for n in base.names):
        tag += "v"
    new_names = []
    for i in (1, 2):
        new_names += [f"{tag}{i}a{j}" for j in (1, 2, 3)]
        new_names += [f"{tag}{i}b{j}" for j in (1, 2, 3)]
    plus = list(base.plus)
    extra = list(base.extra) + new_names
    minus = list(base.minus)
    names = plus + extra + minus
    pos = {n: k + 1 for k, n in enumerate(names)}
    trans_base = {k + 1: pos[n] for k, n in enumerate(base.names)}
    relators = [GroupWord([(trans_base[i], s) for i, s in r.letters]) for r in base.relators]

    def gen(name: str) -> GroupWord:
        return GroupWord([(pos[name], 1)])

    for i in (1, 2):
        a = {j: gen(f"{tag}{i}a{j}") for j in (1, 2, 3)}
        b = {j: gen(f"{tag}{i}b{j}") for j in (1, 2, 3)}
        relators.append(a[1] * b[3] * a[2] * b[2].inverse() * a[2].inverse() * b[3].inverse() * b[2])
        relators.append(a[2] * b[1] * a[3] * b[3].inverse() * a[3].inverse() * b[1].inverse() * b[3])
        relators.append(a[3] * b[2] * a[1] * b[1].inverse() * a[1].inverse() * b[2].inverse() * b[1])
    # edges: (1,port2)-(2,port3), (2,port2)-(1,port3), (1,port1)-(2,port1)
    for (i, p), (j, q) in (((1, 2), (2, 3)), ((2, 2), (1, 3)), ((1, 1), (2, 1))):
        relators.append(gen(f"{tag}{i}a{p}") * gen(f"{tag}{j}b{q}"))
        relators.append(gen(f"{tag}{i}b{p}") * gen(f"{tag}{j}a{q}"))
    return LabeledPresentation(base.genus, plus, extra, minus, relators)


def psi_leading(labels: Sequence[Sequence], rank: int) -> CyclicSeries:
    """Leading necklace value of the degree-d one-loop generator.

    Minus the ordered tensor of the labels, minus (-1)^d times the reversed
    tensor, as a canonical cyclic series of cap d.
    """
    d = len(labels)
    if d < 1:
        raise ValueError("need at least one label")
    fwd = TensorSeries.one(rank, d)
    rev = TensorSeries.one(rank, d)
    for v in labels:
        fwd = fwd * _vector_series(v, rank, d)
    for v in reversed(labels):
        rev = rev * _vector_series(v, rank, d)
    return project_cyclic(-fwd - rev * Fraction((-1) ** d))


def clasper_mirror(c: OneLoopClasper) -> OneLoopClasper:
    """Mirror of the surgery datum: reversed leaves and twists, inverted path.

    One-loop graphs have first Betti number 1, so the diagram involution
    carries no extra sign here.
    """
    return OneLoopClasper(
        c.degree,
        tuple(reversed(c.leaves)),
        c.delta.inverse(),
        tuple(reversed(c.twists)),
    )
