"""Property suites behind the ``verify`` command.

Each suite bundles the machine-checkable identities of one part of the
library; every check runs on seeded pseudo-random inputs and reports
PASS/FAIL together with the first counterexample found.  All comparisons
are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclic import (
    CyclicSeries,
    necklace_count,
    p_minus,
    p_plus,
    project_cyclic,
    rho,
)
from .cylinder import (
    LabeledPresentation,
    compose,
    magnus_rep,
    mapping_cylinder,
    mirror,
    presentation_matrix,
    sigma_of,
    solve_labels,
    torsion,
    trivial_cylinder,
)
from .clasper import (
    OneLoopClasper,
    one_loop_presentation,
    psi_leading,
    surgery_factor,
    theta_presentation,
    tree_bracket,
    TreeClasper,
    y_presentation,
    clasper_mirror,
)
from .errors import PreconditionViolated
from .johnson import (
    ExpansionAuto,
    auto_compose,
    auto_invert,
    contract_C1,
    dynkin_is_lie,
    es_trace,
    ia_degree,
    log_derivation,
    magnus_matrix,
    tau,
)
from .k1 import (
    SeriesMatrix,
    abelianize,
    comm_det,
    delta_alt,
    ldet,
    ldet_graded,
    matrix_invert,
)
from .series import (
    MagnusExpansion,
    TensorSeries,
    magnus_expand,
    series_exp,
    series_invert,
    series_log,
    word_degree_bound,
)
from .words import GroupWord, RingElement, fox_derivative
from . import _linalg

__all__ = ["SUITES", "run_suite", "random_word", "random_torelli_words",
           "random_clasper", "random_ideal_matrix", "random_unit_matrix",
           "apply_words", "random_commutator_word"]

_ONE = Fraction(1)


# -- randomized generators ----------------------------------------------


def random_word(rng: random.Random, rank: int, maxlen: int,
                nonempty: bool = False) -> GroupWord:
    n = rng.randint(1 if nonempty else 0, maxlen)
    letters = [(rng.randint(1, rank), rng.choice((1, -1))) for _ in range(n)]
    w = GroupWord(letters)
    if nonempty and w.is_identity():
        return random_word(rng, rank, maxlen, nonempty=True)
    return w


def random_commutator_word(rng: random.Random, rank: int, maxlen: int = 2) -> GroupWord:
    u = random_word(rng, rank, maxlen, nonempty=True)
    v = random_word(rng, rank, maxlen, nonempty=True)
    return u.commutator(v)


def apply_words(images: list[GroupWord], w: GroupWord) -> GroupWord:
    """Substitution endomorphism on words: letter i maps to images[i-1]."""
    out = GroupWord.identity()
    for i, s in w.letters:
        out = out * (images[i - 1] if s > 0 else images[i - 1].inverse())
    return out


def random_torelli_words(rng: random.Random, genus: int, moves: int = 2,
                         even_contraction: bool = True) -> list[GroupWord]:
    """Images of a composition of elementary Torelli moves g_a -> g_a [u, v].

    With ``even_contraction`` the composition is corrected so that the
    contracted first Johnson value is even, which makes the degree-one
    torsion normalization land on an integral class.
    """
    rank = 2 * genus
    images = [GroupWord.generator(i) for i in range(1, rank + 1)]

    def elementary(a: int, c: GroupWord) -> list[GroupWord]:
        out = [GroupWord.generator(i) for i in range(1, rank + 1)]
        out[a - 1] = GroupWord.generator(a) * c
        return out

    for _ in range(moves):
        a = rng.randint(1, rank)
        images = [apply_words(elementary(a, random_commutator_word(rng, rank)), w)
                  for w in images]
    if even_contraction:
        cap = 2
        auto = ExpansionAuto.from_words(images, rank, cap)
        t = contract_C1(tau(auto, 1))
        for b in range(1, rank + 1):
            if t[b - 1].numerator % 2:
                a = 1 if b != 1 else 2
                corr = elementary(a, GroupWord.generator(a).commutator(GroupWord.generator(b)))
                images = [apply_words(corr, w) for w in images]
    return images


def random_clasper(rng: random.Random, degree: int, rank: int,
                   maxlen: int = 3) -> OneLoopClasper:
    return OneLoopClasper(
        degree,
        tuple(random_word(rng, rank, maxlen) for _ in range(degree)),
        random_word(rng, rank, maxlen),
        tuple(rng.randint(0, 1) for _ in range(degree)),
    )


def random_series(rng: random.Random, rank: int, cap: int, nterms: int = 4,
                  unit: bool = False, min_degree: int = 1) -> TensorSeries:
    terms = {}
    for _ in range(nterms):
        d = rng.randint(min_degree, cap)
        mono = tuple(rng.randint(1, rank) for _ in range(d))
        terms[mono] = Fraction(rng.randint(-3, 3))
    s = TensorSeries(rank, cap, terms)
    return s + 1 if unit else s


def random_ideal_matrix(rng: random.Random, n: int, rank: int, cap: int,
                        nterms: int = 2) -> SeriesMatrix:
    return SeriesMatrix([
        [random_series(rng, rank, cap, nterms=nterms) for _ in range(n)]
        for _ in range(n)
    ])


def random_unit_matrix(rng: random.Random, n: int, rank: int, cap: int) -> SeriesMatrix:
    while True:
        eps = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if _linalg.mat_det(eps):
            break
    const = SeriesMatrix([
        [TensorSeries.const(rank, cap, eps[i][j]) for j in range(n)] for i in range(n)
    ])
    return const + random_ideal_matrix(rng, n, rank, cap)


def random_torelli_auto(rng: random.Random, genus: int, cap: int,
                        moves: int = 2) -> ExpansionAuto:
    return ExpansionAuto.from_words(
        random_torelli_words(rng, genus, moves), 2 * genus, cap
    )


def random_separating_twist_auto(rng: random.Random, genus: int, cap: int) -> ExpansionAuto:
    """Product of twists along handle-bounding separating curves.

    Twisting along the curve bounding handle k conjugates that handle's pair
    by its commutator; such products are realizable by surface mapping
    classes and lie in the second Johnson subgroup.
    """
    rank = 2 * genus

    def twist_words(k: int, power: int) -> list[GroupWord]:
        z = GroupWord.generator(k).commutator(GroupWord.generator(k + genus)) ** power
        out = []
        for i in range(1, rank + 1):
            if i in (k, k + genus):
                out.append(z * GroupWord.generator(i) * z.inverse())
            else:
                out.append(GroupWord.generator(i))
        return out

    words = [GroupWord.generator(i) for i in range(1, rank + 1)]
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(1, genus)
        p = rng.choice((-2, -1, 1, 2))
        words = [apply_words(twist_words(k, p), w) for w in words]
    return ExpansionAuto.from_words(words, rank, cap)


def random_deep_auto(rng: random.Random, genus: int, cap: int, depth: int) -> ExpansionAuto:
    """Automorphism with filtration degree >= depth: g_a -> g_a * c with c a
    weight-(depth+1) iterated commutator."""
    rank = 2 * genus
    images = [GroupWord.generator(i) for i in range(1, rank + 1)]
    for _ in range(2):
        a = rng.randint(1, rank)
        c = random_word(rng, rank, 1, nonempty=True)
        for _ in range(depth):
            c = c.commutator(random_word(rng, rank, 1, nonempty=True))
            if c.is_identity():
                c = GroupWord.generator(1).commutator(GroupWord.generator(2))
        images[a - 1] = images[a - 1] * c
    return ExpansionAuto.from_words(images, rank, cap)


# -- check plumbing ------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    counterexample: str | None = None
    details: str | None = None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }
        if self.details is not None:
            out["details"] = self.details
        return out


def _check(name: str, failures: list[str], details: str | None = None) -> Check:
    return Check(name, not failures, failures[0] if failures else None, details)


# -- suite: fox ----------------------------------------------------------


def suite_fox(rng, trials, genus, cap) -> list[Check]:
    rank = 2 * genus
    checks = []

    fails = []
    for _ in range(trials):
        w = random_word(rng, rank, 12)
        total = RingElement.zero()
        for i in range(1, rank + 1):
            gi = RingElement.from_word(GroupWord.generator(i)) - RingElement.one()
            total = total + fox_derivative(w, i) * gi
        expected = RingElement.from_word(w) - RingElement.one()
        if total != expected:
            fails.append(f"w={w!r}")
    checks.append(_check("fundamental_formula", fails))

    fails = []
    for _ in range(trials):
        u, v = random_word(rng, rank, 6), random_word(rng, rank, 6)
        lhs = (RingElement.from_word(u) * RingElement.from_word(v)).bar()
        rhs = RingElement.from_word(v).bar() * RingElement.from_word(u).bar()
        if lhs != rhs or RingElement.from_word(u).bar().bar() != RingElement.from_word(u):
            fails.append(f"u={u!r} v={v!r}")
    checks.append(_check("bar_anti_automorphism", fails))

    fails = []
    for _ in range(trials):
        w = random_word(rng, rank, 8)
        letters = list(w.letters)
        # pepper with cancelling pairs, then reduce pairs in random order
        for _ in range(4):
            pos = rng.randint(0, len(letters))
            i = rng.randint(1, rank)
            letters[pos:pos] = [(i, 1), (i, -1)]
        work = list(letters)
        while True:
            spots = [k for k in range(len(work) - 1)
                     if work[k][0] == work[k + 1][0] and work[k][1] == -work[k + 1][1]]
            if not spots:
                break
            k = rng.choice(spots)
            del work[k:k + 2]
        if tuple(work) != w.letters:
            fails.append(f"letters={letters}")
    checks.append(_check("free_reduction_confluence", fails))

    fails = []
    for _ in range(trials):
        u, v = random_word(rng, rank, 6), random_word(rng, rank, 6)
        i = rng.randint(1, rank)
        lhs = fox_derivative(u * v, i)
        rhs = fox_derivative(u, i) + RingElement.from_word(u) * fox_derivative(v, i)
        if lhs != rhs:
            fails.append(f"u={u!r} v={v!r} i={i}")
    checks.append(_check("product_rule", fails))
    return checks


# -- suite: logexp -------------------------------------------------------


def suite_logexp(rng, trials, genus, cap) -> list[Check]:
    rank = 2 * genus
    cap = min(cap, 5)
    checks = []

    fails = []
    for _ in range(min(trials, 16)):
        a = random_series(rng, rank, cap)
        b = random_series(rng, rank, cap)
        c = random_series(rng, rank, cap)
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            fails.append("random triple")
    checks.append(_check("product_associative_distributive", fails))

    fails = []
    for _ in range(trials):
        u, v = random_word(rng, rank, 6), random_word(rng, rank, 6)
        if magnus_expand(u * v, rank, cap) != magnus_expand(u, rank, cap) * magnus_expand(v, rank, cap):
            fails.append(f"u={u!r} v={v!r}")
    checks.append(_check("magnus_homomorphism", fails))

    fails = []
    for _ in range(min(trials, 16)):
        u = random_series(rng, rank, cap, unit=True)
        v = random_series(rng, rank, cap)
        if series_exp(series_log(u)) != u or series_log(series_exp(v)) != v:
            fails.append("random unit/ideal series")
        if series_invert(u) * u != TensorSeries.one(rank, cap):
            fails.append("inverse roundtrip")
    checks.append(_check("log_exp_invert_roundtrips", fails))

    fails = []
    w = GroupWord.generator(1)
    for depth in range(2, cap + 1):
        w = w.commutator(GroupWord.generator(2 if depth % 2 == 0 else 1))
        deg = word_degree_bound(w, rank, cap)
        if deg != depth:
            fails.append(f"depth={depth} got {deg}")
    if word_degree_bound(GroupWord.identity(), rank, cap) is not None:
        fails.append("identity word")
    checks.append(_check("degree_bound_lower_central", fails))

    fails = []
    for _ in range(trials):
        u = random_word(rng, rank, 5)
        v = random_word(rng, rank, 5)
        lu = project_cyclic(series_log(magnus_expand(u, rank, cap)))
        lv = project_cyclic(series_log(magnus_expand(v, rank, cap)))
        luv = project_cyclic(series_log(magnus_expand(u * v, rank, cap)))
        if luv != lu + lv:
            fails.append(f"u={u!r} v={v!r}")
        a = random_word(rng, rank, 3, nonempty=True)
        b = random_word(rng, rank, 3, nonempty=True)
        lw = project_cyclic(series_log(magnus_expand(u * a.commutator(b), rank, cap)))
        if lw != lu:
            fails.append(f"homology-class: u={u!r} [a,b]=[{a!r},{b!r}]")
    checks.append(_check("cyclic_log_additivity", fails))
    return checks


# -- suite: necklace -----------------------------------------------------


def suite_necklace(rng, trials, genus, cap) -> list[Check]:
    rank = 2 * genus
    cap = min(cap, 5)
    checks = []

    fails = []
    for g in (1, 2):
        for d in range(1, 6):
            seen = set()
            n = 2 * g

            def enumerate_words(prefix):
                if len(prefix) == d:
                    seen.add(min(tuple(prefix[i:] + prefix[:i]) for i in range(d)))
                    return
                for i in range(1, n + 1):
                    enumerate_words(prefix + [i])

            enumerate_words([])
            if len(seen) != necklace_count(n, d):
                fails.append(f"g={g} d={d}")
    checks.append(_check("necklace_dimension", fails))

    fails = []
    for _ in range(trials):
        da = rng.randint(1, cap - 1)
        s = random_series(rng, rank, cap, min_degree=da).slice_degree(da)
        t = random_series(rng, rank, cap, min_degree=1).slice_degree(rng.randint(1, cap - da))
        if project_cyclic(s * t) != project_cyclic(t * s):
            fails.append("homogeneous pair")
    checks.append(_check("trace_property", fails))

    fails = []
    for _ in range(trials):
        c = project_cyclic(random_series(rng, rank, cap))
        if rho(rho(c)) != c:
            fails.append("rho involution")
        d = rng.randint(1, cap)
        h = project_cyclic(random_series(rng, rank, cap, min_degree=d).slice_degree(d))
        plus = p_plus(h)
        if plus.value + p_minus(h) != h:
            fails.append("p_plus + p_minus != id")
        if not p_minus(plus.value).is_zero():
            fails.append("p_minus o p_plus != 0")
        if rho(plus.value) != plus.value:
            fails.append("p_plus image not fixed")
    checks.append(_check("eigenprojections", fails))

    fails = []
    for _ in range(min(trials, 12)):
        auto = random_torelli_auto(rng, genus, cap)
        d = rng.randint(2, cap)
        mono = tuple(rng.randint(1, rank) for _ in range(d))
        lifts = [mono, mono[1:] + mono[:1]]
        outs = []
        for lift in lifts:
            s = TensorSeries(rank, cap, {lift: _ONE})
            outs.append(project_cyclic(auto.apply(s)))
        if outs[0] != outs[1]:
            fails.append(f"mono={mono}")
    checks.append(_check("act_representative_independence", fails))
    return checks


# -- suite: ldet ---------------------------------------------------------


def suite_ldet(rng, trials, genus, cap) -> list[Check]:
    rank = 2 * genus
    cap = min(cap, 4)
    checks = []

    fails = []
    for _ in range(min(trials, 10)):
        n = rng.randint(1, 3)
        a = random_unit_matrix(rng, n, rank, cap)
        b = random_unit_matrix(rng, n, rank, cap)
        prod = ldet(a * b)
        parts = ldet(a) * ldet(b)
        if prod.det_eps != parts.det_eps or prod.log != parts.log:
            fails.append(f"n={n}")
    checks.append(_check("ldet_homomorphism", fails))

    fails = []
    for _ in range(min(trials, 10)):
        n = rng.randint(2, 3)
        a = random_unit_matrix(rng, n, rank, cap)
        e = SeriesMatrix.identity(n, rank, cap)
        i, j = rng.sample(range(n), 2)
        e.rows[i][j] = random_series(rng, rank, cap)
        if ldet(e * a).log != ldet(a).log or ldet(e * a).det_eps != ldet(a).det_eps:
            fails.append(f"n={n}")
        perm = list(range(n))
        rng.shuffle(perm)
        p = SeriesMatrix([
            [TensorSeries.const(rank, cap, 1 if perm[r] == c else 0) for c in range(n)]
            for r in range(n)
        ])
        pinv = SeriesMatrix([
            [TensorSeries.const(rank, cap, 1 if perm[c] == r else 0) for c in range(n)]
            for r in range(n)
        ])
        if ldet(p * a * pinv).log != ldet(a).log:
            fails.append("conjugation")
    checks.append(_check("elementary_and_conjugation_invariance", fails))

    fails = []
    for _ in range(min(trials, 10)):
        n = rng.randint(1, 3)
        a = random_unit_matrix(rng, n, rank, cap)
        if a * matrix_invert(a) != SeriesMatrix.identity(n, rank, cap):
            fails.append(f"n={n}")
    checks.append(_check("matrix_invert_roundtrip", fails))

    # pinned by search: the log-determinant does not factor through
    # transposition; needs three distinct letters since binary necklaces of
    # length <= 5 are all reversal-symmetric
    r3 = max(rank, 3)
    x1 = TensorSeries.gen(r3, 3, 1)
    x2 = TensorSeries.gen(r3, 3, 2)
    x3 = TensorSeries.gen(r3, 3, 3)
    one3 = TensorSeries.one(r3, 3)
    a = SeriesMatrix([[one3, x1], [x2, one3 + x3]])
    fails = [] if ldet(a).log != ldet(a.transpose()).log else ["pinned matrix"]
    checks.append(_check("transpose_changes_ldet", fails))

    fails = []
    n = 2
    m = SeriesMatrix.identity(n, rank, cap)
    m.rows[0][0] = m.rows[0][0] + random_series(rng, rank, cap, min_degree=2).slice_degree(2)
    got = ldet_graded(m, 2)
    if got != ldet(m).log.slice_degree(2):
        fails.append("graded slice mismatch")
    bad = SeriesMatrix.identity(n, rank, cap)
    bad.rows[0][0] = bad.rows[0][0] + TensorSeries.gen(rank, cap, 1)
    try:
        ldet_graded(bad, 2)
        fails.append("precondition not enforced")
    except PreconditionViolated:
        pass
    checks.append(_check("graded_ldet", fails))
    return checks


# -- suite: altprod ------------------------------------------------------


def suite_altprod(rng, trials, genus, cap) -> list[Check]:
    rank = 2 * genus
    checks = []

    fails = []
    zero_slices = 0
    for d in range(1, 5):
        dcap = d + 1
        for _ in range(min(trials, 3)):
            n = rng.randint(1, 3)
            mats = [random_ideal_matrix(rng, n, rank, dcap) for _ in range(d)]
            delta = delta_alt(mats)
            for k in range(1, d):
                if delta.slice_degree(k).is_zero():
                    zero_slices += 1
                else:
                    fails.append(f"d={d} degree={k}")
    checks.append(_check("alternating_vanishing", fails,
                         details=f"{zero_slices} vanishing degree slices"))

    fails = []
    pres = trivial_cylinder(genus)
    dcap = 4
    base = presentation_matrix(pres, dcap)
    for d in (2, 3):
        perturbed = [random_ideal_matrix(rng, base.n, rank, dcap, nterms=1) for _ in range(d)]
        total = CyclicSeries.zero(rank, dcap)
        for mask in range(1 << d):
            m = base
            for j in range(d):
                if mask >> j & 1:
                    m = m + perturbed[j]
            sign = -1 if bin(mask).count("1") % 2 else 1
            total = total + ldet(m).log * sign
        for k in range(1, d):
            if not total.slice_degree(k).is_zero():
                fails.append(f"presentation family d={d} degree={k}")
    checks.append(_check("label_perturbation_family", fails))
    return checks


# -- suite: surgery-oracle -----------------------------------------------


def suite_surgery_oracle(rng, trials, genus, cap) -> list[Check]:
    checks = []

    fails = []
    for g in (1, min(2, genus + 1)):
        rank = 2 * g
        for d in (1, 2, 3):
            dcap = d + 2
            c = random_clasper(rng, d, rank)
            factor = surgery_factor(c, g, dcap)
            pres = one_loop_presentation(c, genus=g)
            base = trivial_cylinder(g)
            diff = torsion(pres, dcap).torsion.log - torsion(base, dcap).torsion.log
            if diff != factor.log:
                fails.append(f"g={g} d={d} clasper={c.to_json()}")
    checks.append(_check("oracle_equality", fails))

    fails = []
    for d in range(1, 5):
        g = max(genus, (d + 1) // 2)
        rank = 2 * g
        c = OneLoopClasper(
            d,
            tuple(GroupWord.generator(i) for i in range(1, d + 1)),
            GroupWord.identity(),
            (0,) * d,
        )
        value = surgery_factor(c, g, d).log
        expected = psi_leading([[1 if j == i else 0 for j in range(1, rank + 1)]
                                for i in range(1, d + 1)], rank)
        if value.slice_degree(d) != expected:
            fails.append(f"d={d}")
        for k in range(1, d):
            if not value.slice_degree(k).is_zero():
                fails.append(f"d={d} lower degree {k}")
    checks.append(_check("leading_value_and_vanishing", fails))

    fails = []
    g = genus
    c = random_clasper(rng, 2, 2 * g, maxlen=2)
    pres = one_loop_presentation(c, genus=g)
    labels = solve_labels(pres, 4)
    names = pres.names
    one = TensorSeries.one(2 * g, 4)
    for name in names:
        if name.startswith("y"):
            if labels[names.index(name) + 1] != one:
                fails.append(f"label({name}) != 1")
    checks.append(_check("appended_labels_trivial", fails))

    fails = []
    for d in (1, 2, 3):
        g = max(genus, 2)
        rank = 2 * g
        c = random_clasper(rng, d, rank, maxlen=2)
        mirrored = clasper_mirror(c)
        if clasper_mirror(mirrored) != c:
            fails.append(f"involution d={d}")
        lhs = surgery_factor(mirrored, g, d).log.slice_degree(d)
        rhs = surgery_factor(c, g, d).log.slice_degree(d) * Fraction((-1) ** d)
        if lhs != rhs:
            fails.append(f"leading mirror d={d}")
    checks.append(_check("mirror_bookkeeping", fails))

    fails = []
    g = genus
    c = random_clasper(rng, 2, 2 * g, maxlen=2)
    flipped = OneLoopClasper(c.degree, c.leaves, c.delta,
                             (1 - c.twists[0],) + c.twists[1:])
    back = OneLoopClasper(c.degree, c.leaves, c.delta, c.twists)
    f0 = surgery_factor(c, g, 4)
    f1 = surgery_factor(flipped, g, 4)
    f2 = surgery_factor(back, g, 4)
    if f0.log == f1.log and not all(w.is_identity() for w in c.leaves):
        # twist flip must matter unless the factor collapses anyway
        if f0.log != CyclicSeries.zero(2 * g, 4):
            fails.append("twist flip had no effect")
    if f0.log != f2.log:
        fails.append("double flip did not restore")
    checks.append(_check("twist_parity", fails))

    fails = []
    for d in (2, 3):
        g = 2
        shape = ([1] + [0] * (2 * g - 1), [0, 1] + [0] * (2 * g - 2))
        for _ in range(d - 2):
            shape = (shape, [0, 0, 1, 0] if g >= 2 else [0, 1])
        for k in (0, 1):
            t = TreeClasper(shape, twists=k)
            b = tree_bracket(t, 2 * g, d)
            if not dynkin_is_lie(b.slice_degree(d)):
                fails.append(f"not Lie d={d}")
            if tree_bracket(TreeClasper(shape, twists=k + 1), 2 * g, d) != -b:
                fails.append(f"twist sign d={d}")
        swapped = TreeClasper((shape[1], shape[0]), twists=0)
        if tree_bracket(swapped, 2 * g, d) != -tree_bracket(TreeClasper(shape, 0), 2 * g, d):
            fails.append(f"child swap d={d}")
    checks.append(_check("tree_bracket", fails))
    return checks


# -- suite: magnus -------------------------------------------------------


def _torsion_magnus_gap(pres, cap):
    inv = torsion(pres, cap)
    minv = torsion(mirror(pres), cap)
    from .cyclic import act_auto

    lhs = -inv.torsion.log + act_auto(inv.sigma, minv.torsion.log)
    r = magnus_rep(pres, cap)
    rhs = ldet(r)
    return lhs - rhs.log, rhs.det_eps


def suite_magnus(rng, trials, genus, cap) -> list[Check]:
    cap = min(cap, 4)
    checks = []

    fails = []
    for _ in range(min(trials, 3)):
        words = random_torelli_words(rng, genus, moves=2)
        pres = mapping_cylinder(words, genus)
        gap, det = _torsion_magnus_gap(pres, cap)
        if not gap.is_zero() or det != 1:
            fails.append(f"mapping cylinder {[str(w) for w in words]}")
    for d in (1, 2):
        c = random_clasper(rng, d, 2 * genus, maxlen=2)
        pres = one_loop_presentation(c, genus=genus)
        gap, det = _torsion_magnus_gap(pres, cap)
        if not gap.is_zero() or det != 1:
            fails.append(f"surgered cylinder d={d}")
    checks.append(_check("torsion_magnus_identity", fails))

    fails = []
    for d in (1, 2, 3):
        g = min(genus, 2)
        dcap = d + 2
        auto = random_deep_auto(rng, g, dcap, depth=d)
        if ia_degree(auto) is not None and ia_degree(auto) < d:
            continue
        lhs_values = log_derivation(auto)
        from .johnson import HomDerivation

        lhs = es_trace(HomDerivation(d, tuple(v.slice_degree(d + 1) for v in lhs_values)))
        mag = magnus_matrix(auto)
        from .k1 import _matrix_log_trace

        rhs = project_cyclic(_matrix_log_trace(mag))
        if lhs.slice_degree(d).max_slice(d) != rhs.slice_degree(d).max_slice(d):
            fails.append(f"d={d}")
    checks.append(_check("degree_d_trace_square", fails))

    fails = []
    for _ in range(min(trials, 3)):
        words = random_torelli_words(rng, genus, moves=1)
        pres = mapping_cylinder(words, genus)
        # the boundary-route matrix lives one degree lower, so solve deeper
        sigma = sigma_of(pres, cap + 1)
        if magnus_rep(pres, cap) != magnus_matrix(sigma):
            fails.append("two Magnus routes disagree")
    checks.append(_check("magnus_two_routes", fails))

    fails = []
    for _ in range(min(trials, 4)):
        a = random_torelli_auto(rng, genus, cap)
        b = random_torelli_auto(rng, genus, cap)
        ta, tb = tau(a, 1), tau(b, 1)
        tab = tau(auto_compose(a, b), 1)
        if tab.values != (ta + tb).values:
            fails.append("tau_1 additivity")
        for w in ta.values:
            s = w.slice_degree(2)
            if not s.is_zero() and not dynkin_is_lie(s):
                fails.append("tau value not Lie")
        la = log_derivation(a)
        if tuple(v.slice_degree(2) for v in la) != ta.values:
            fails.append("tau differs from log derivation in leading degree")
    checks.append(_check("tau_properties", fails))

    fails = []
    for _ in range(min(trials, 4)):
        a = random_torelli_auto(rng, genus, cap)
        inv = auto_invert(a)
        if auto_compose(a, inv) != ExpansionAuto.identity(2 * genus, cap):
            fails.append("compose with inverse")
        b = random_torelli_auto(rng, genus, cap)
        c = random_torelli_auto(rng, genus, cap)
        if auto_compose(auto_compose(a, b), c) != auto_compose(a, auto_compose(b, c)):
            fails.append("associativity")
    checks.append(_check("auto_group_laws", fails))

    fails = []
    f = tau(random_torelli_auto(rng, genus, cap), 1)
    g2 = tau(random_torelli_auto(rng, genus, cap), 1)
    if es_trace(f + g2) != es_trace(f) + es_trace(g2):
        fails.append("additivity")
    checks.append(_check("es_trace_linear", fails))

    # minus-eigenspace containment of the traced Johnson value, on realizable
    # data only: degree 1 is all of the minus eigenspace, and in degree 2
    # that eigenspace is zero, so products of separating twists (which
    # generate the genus-2 Torelli group) must have vanishing traced value
    fails = []
    for _ in range(min(trials, 4)):
        t1 = es_trace(tau(random_torelli_auto(rng, genus, cap), 1))
        if (t1 + rho(t1)) * Fraction(1, 2) != CyclicSeries.zero(2 * genus, cap):
            fails.append("degree 1")
    for _ in range(min(trials, 4)):
        auto = random_separating_twist_auto(rng, 2, 4)
        deg = ia_degree(auto)
        if deg is None or deg < 2:
            continue
        if not es_trace(tau(auto, 2)).is_zero():
            fails.append("degree 2 separating twists")
    checks.append(_check("trace_minus_eigenspace_realizable", fails))
    return checks


# -- suite: crossed ------------------------------------------------------


def suite_crossed(rng, trials, genus, cap) -> list[Check]:
    from .cyclic import act_auto

    cap = min(cap, 4)
    checks = []

    def family(k):
        if k % 2:
            return mapping_cylinder(random_torelli_words(rng, genus, moves=2), genus)
        return one_loop_presentation(random_clasper(rng, rng.randint(1, 2), 2 * genus, maxlen=2),
                                     genus=genus)

    fails = []
    for k in range(min(trials, 4)):
        p, q = family(k), family(k + 1)
        comp = compose(p, q)
        tp, tq, tc = torsion(p, cap), torsion(q, cap), torsion(comp, cap)
        expected = tp.torsion.log + act_auto(tp.sigma, tq.torsion.log)
        if tc.torsion.log != expected:
            fails.append(f"instance {k}")
        if sigma_of(comp, cap) != auto_compose(tp.sigma, tq.sigma):
            fails.append(f"sigma composition {k}")
    checks.append(_check("crossed_homomorphism", fails))

    fails = []
    pres = one_loop_presentation(random_clasper(rng, 2, 2 * genus, maxlen=2), genus=genus)
    labels = solve_labels(pres, cap)
    perm = list(range(len(pres.extra)))
    rng.shuffle(perm)
    shuffled = LabeledPresentation(
        pres.genus, list(pres.plus), [pres.extra[i] for i in perm], list(pres.minus),
        _permute_relator_indices(pres, perm),
    )
    labels2 = solve_labels(shuffled, cap)
    names, names2 = pres.names, shuffled.names
    for n in names:
        if labels[names.index(n) + 1] != labels2[names2.index(n) + 1]:
            fails.append(f"label({n})")
    checks.append(_check("solver_order_independence", fails))

    fails = []
    base = mapping_cylinder(random_torelli_words(rng, genus, moves=1), genus)
    t0 = torsion(base, cap).torsion
    # Tietze I: add a redundant generator with a defining relator
    names = base.names
    word = random_word(rng, len(names), 3)
    added = LabeledPresentation(
        base.genus, list(base.plus), list(base.extra) + ["zred"], list(base.minus),
        [_shift_minus(r, base) for r in base.relators]
        + [GroupWord([(base.n_unknowns + 1, 1)]) * _shift_minus(word, base).inverse()],
    )
    if torsion(added, cap).torsion.log != t0.log:
        fails.append("redundant generator changed torsion")
    # Tietze II: conjugate a relator; the raw log shifts by exactly the
    # conjugator's class and the normalization removes it
    j = rng.randrange(len(base.relators))
    gen_idx = rng.randint(1, len(names))
    s = GroupWord.generator(gen_idx)
    conj = list(base.relators)
    conj[j] = s * conj[j] * s.inverse()
    conjugated = LabeledPresentation(
        base.genus, list(base.plus), list(base.extra), list(base.minus), conj
    )
    from .series import series_log as _slog

    raw0 = ldet(presentation_matrix(base, cap)).log
    raw1 = ldet(presentation_matrix(conjugated, cap)).log
    label_s = solve_labels(base, cap)[gen_idx]
    from .cyclic import project_cyclic as _proj

    if raw1 - raw0 != -_proj(_slog(label_s)):
        fails.append("raw shift is not the conjugator class")
    if torsion(conjugated, cap).torsion.log != t0.log:
        fails.append("relator conjugation changed normalized torsion")
    checks.append(_check("tietze_invariance", fails))

    fails = []
    p = mapping_cylinder(random_torelli_words(rng, genus, moves=2), genus)
    mm = mirror(mirror(p))
    if torsion(mm, cap).torsion.log != torsion(p, cap).torsion.log:
        fails.append("double mirror torsion")
    sig = sigma_of(p, cap)
    if sigma_of(mirror(p), cap) != auto_invert(sig):
        fails.append("mirror sigma is not the inverse")
    checks.append(_check("mirror_involution", fails))

    fails = []
    words = random_torelli_words(rng, genus, moves=2)
    pres = mapping_cylinder(words, genus)
    exp = MagnusExpansion.standard(2 * genus, cap)
    expected = ExpansionAuto([exp.word(w) for w in words])
    if sigma_of(pres, cap) != expected:
        fails.append("sigma of mapping cylinder")
    checks.append(_check("mapping_cylinder_sigma", fails))
    return checks


def _shift_minus(r: GroupWord, base: LabeledPresentation) -> GroupWord:
    """Reindex a word over base's namespace into the namespace with one more
    extra generator appended (minus block shifts up by one)."""
    cut = base.n_unknowns
    return GroupWord([(i if i <= cut else i + 1, s) for i, s in r.letters])


def _permute_relator_indices(pres: LabeledPresentation, perm: list[int]) -> list[GroupWord]:
    g2 = 2 * pres.genus
    mapping = {}
    for new_pos, old_pos in enumerate(perm):
        mapping[g2 + old_pos + 1] = g2 + new_pos + 1
    out = []
    for r in pres.relators:
        out.append(GroupWord([(mapping.get(i, i), s) for i, s in r.letters]))
    return out


# -- suite: abelian ------------------------------------------------------


def suite_abelian(rng, trials, genus, cap) -> list[Check]:
    rank = 2 * genus
    cap = min(cap, 4)
    checks = []

    fails = []
    for _ in range(min(trials, 8)):
        n = rng.randint(1, 3)
        a = random_unit_matrix(rng, n, rank, cap)
        val = ldet(a)
        lhs = abelianize(val.log).exp() * val.det_eps
        rhs = comm_det(abelianize(a))
        if lhs != rhs:
            fails.append(f"n={n}")
    checks.append(_check("commutative_square_random", fails))

    fails = []
    for maker in (
        lambda: mapping_cylinder(random_torelli_words(rng, genus, moves=2), genus),
        lambda: one_loop_presentation(random_clasper(rng, 2, rank, maxlen=2), genus=genus),
    ):
        pres = maker()
        a = presentation_matrix(pres, cap)
        val = ldet(a)
        if abelianize(val.log).exp() * val.det_eps != comm_det(abelianize(a)):
            fails.append("presentation matrix")
    checks.append(_check("commutative_square_presentations", fails))

    fails = []
    s = random_series(rng, rank, cap)
    t = random_series(rng, rank, cap)
    if not abelianize(s * t - t * s).is_zero():
        fails.append("commutator survives abelianization")
    checks.append(_check("abelianize_kills_commutators", fails))
    return checks


# -- suite: kloop --------------------------------------------------------


def suite_kloop(rng, trials, genus, cap) -> list[Check]:
    cap = min(cap, 4)
    checks = []

    fails = []
    pres = theta_presentation(genus=genus)
    inv = torsion(pres, cap)
    if inv.torsion.det_eps != 1 or not inv.torsion.log.is_zero():
        fails.append("theta surgery torsion nontrivial")
    checks.append(_check("theta_trivial", fails))

    fails = []
    c = OneLoopClasper(1, (random_word(rng, 2 * genus, 2, nonempty=True),),
                       GroupWord.identity(), (0,))
    if not surgery_factor(c, genus, cap).log.is_zero():
        fails.append("formula")
    pres = one_loop_presentation(c, genus=genus)
    if not torsion(pres, cap).torsion.log.is_zero():
        fails.append("presentation")
    checks.append(_check("degree_one_loop_cancels", fails))

    fails = []
    names, relators = y_presentation()
    # labels: leaves embed trivially, so every generator label is 1
    from .words import fox_matrix

    mat = fox_matrix(relators, range(1, 7))
    rank, dcap = 2 * genus, cap
    one = TensorSeries.one(rank, dcap)
    zero = TensorSeries.zero(rank, dcap)
    labels = {i: one for i in range(1, 7)}
    inverses: dict[int, TensorSeries] = {}
    from .cylinder import _evaluate_ring

    evaluated = [[_evaluate_ring(mat[i][j], labels, inverses, rank, dcap)
                  for j in range(3)] for i in range(6)]
    # with trivial labels the displayed handlebody matrix reduces to the
    # alpha-block identity and vanishing beta rows
    for i in range(3):
        for j in range(3):
            expected = one if i == j else zero
            if evaluated[i][j] != expected:
                fails.append(f"alpha block ({i},{j})")
    for i in range(3, 6):
        for j in range(3):
            if evaluated[i][j] != zero:
                fails.append(f"beta block ({i},{j})")
    checks.append(_check("y_matrix_trivial_labels", fails))

    fails = []
    # Y-surgery with trivial leaf embeddings: appended fragment with three
    # defining relators killing the longitudes
    base = trivial_cylinder(genus)
    new_names = ["wa1", "wa2", "wa3", "wb1", "wb2", "wb3"]
    plus, extra, minus = list(base.plus), new_names, list(base.minus)
    names_all = plus + extra + minus
    pos = {n: k + 1 for k, n in enumerate(names_all)}
    trans = {k + 1: pos[n] for k, n in enumerate(base.names)}
    relators = [GroupWord([(trans[i], s) for i, s in r.letters]) for r in base.relators]
    ynames, yrel = y_presentation()
    ymap = {"a1": "wa1", "a2": "wa2", "a3": "wa3", "b1": "wb1", "b2": "wb2", "b3": "wb3"}
    for r in yrel:
        relators.append(GroupWord([(pos[ymap[ynames[i - 1]]], s) for i, s in r.letters]))
    for b in ("wb1", "wb2", "wb3"):
        relators.append(GroupWord([(pos[b], 1)]))
    ypres = LabeledPresentation(genus, plus, extra, minus, relators)
    if not torsion(ypres, cap).torsion.log.is_zero():
        fails.append("Y surgery with trivial longitudes")
    checks.append(_check("y_surgery_trivial", fails))
    return checks


SUITES = {
    "fox": suite_fox,
    "logexp": suite_logexp,
    "necklace": suite_necklace,
    "ldet": suite_ldet,
    "altprod": suite_altprod,
    "surgery-oracle": suite_surgery_oracle,
    "magnus": suite_magnus,
    "crossed": suite_crossed,
    "abelian": suite_abelian,
    "kloop": suite_kloop,
}


def run_suite(name: str, seed: int = 0, trials: int = 64, genus: int = 1,
              cap: int = 4, jobs: int = 1) -> dict:
    """Run one named suite and return its machine-readable report."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    rng = random.Random(seed)
    checks = SUITES[name](rng, trials, genus, cap)
    return {
        "suite": name,
        "seed": seed,
        "trials": trials,
        "genus": genus,
        "cap": cap,
        "passed": all(c.passed for c in checks),
        "checks": [c.to_json() for c in checks],
    }
