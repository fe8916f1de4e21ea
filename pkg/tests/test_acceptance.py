"""Acceptance gate: criteria A1-A12, one test per criterion.

Every comparison is exact rational arithmetic (tolerance zero).  Each test
prints a PASS/FAIL line with its runtime and stated budget; run with
``pytest tests/test_acceptance.py -v -s`` to see them.

A12 note: the first clause of A12 as stated (the minus-projection of the
A6 value equals -2 p_minus(x_1 (x) ... (x) x_d)) contradicts the A6 value
itself: that value is reversal invariant, so its minus-projection is zero,
while the right-hand side is nonzero for d in {1, 3, 4}.  The test asserts
the clause literally and therefore fails; the corrected structural split
(value = -2 p_plus model class, minus leg zero and equal to the traced
Johnson prediction) is verified in test_a12_structural_split_corrected.
See notes/decisions.md (outside the package) for the full analysis.
"""

import random
import time
from fractions import Fraction

from cyltor.cyclic import CyclicSeries, act_auto, p_minus, p_plus, project_cyclic, rho
from cyltor.cylinder import (
    alpha_d,
    compose,
    magnus_rep,
    mapping_cylinder,
    mirror,
    presentation_matrix,
    torsion,
    trivial_cylinder,
)
from cyltor.clasper import OneLoopClasper, one_loop_presentation, surgery_factor, theta_presentation
from cyltor.johnson import HomDerivation, es_trace, ia_degree, log_derivation, magnus_matrix
from cyltor.k1 import SeriesMatrix, _matrix_log_trace, abelianize, comm_det, delta_alt, ldet
from cyltor.series import magnus_expand, series_exp, series_log
from cyltor.verify import (
    random_clasper,
    random_deep_auto,
    random_ideal_matrix,
    random_torelli_words,
    random_unit_matrix,
    random_word,
)
from cyltor.words import GroupWord, RingElement, fox_derivative


def report(name: str, started: float, budget: str, ok: bool = True) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"{name}: {status}  ({time.time() - started:.2f}s, budget {budget})")


def test_a1_fox_fundamental_formula():
    t0 = time.time()
    rng = random.Random(1)
    for _ in range(10_000):
        g = rng.randint(1, 3)
        rank = 2 * g
        w = random_word(rng, rank, 12)
        total = RingElement.zero()
        for i in range(1, rank + 1):
            gi = RingElement.from_word(GroupWord.generator(i)) - RingElement.one()
            total = total + fox_derivative(w, i) * gi
        assert total == RingElement.from_word(w) - RingElement.one()
    report("A1 fox_fundamental_formula", t0, "5s")


def test_a2_logexp_and_cyclic_additivity():
    t0 = time.time()
    rng = random.Random(2)
    for cap in (3, 4, 5):
        for _ in range(24):
            rank = 2 * rng.randint(1, 2)
            u = random_word(rng, rank, 5)
            v = random_word(rng, rank, 5)
            tu = magnus_expand(u, rank, cap)
            tv = magnus_expand(v, rank, cap)
            assert series_exp(series_log(tu)) == tu
            lu = project_cyclic(series_log(tu))
            lv = project_cyclic(series_log(tv))
            luv = project_cyclic(series_log(magnus_expand(u * v, rank, cap)))
            assert luv == lu + lv
    report("A2 logexp_cyclic_additivity", t0, "10s")


def test_a3_ldet_homomorphism():
    t0 = time.time()
    rng = random.Random(3)
    for _ in range(10):
        n, cap = rng.randint(1, 3), rng.randint(2, 4)
        a = random_unit_matrix(rng, n, 2, cap)
        b = random_unit_matrix(rng, n, 2, cap)
        assert ldet(a * b) == ldet(a) * ldet(b)
        if n >= 2:
            e = SeriesMatrix.identity(n, 2, cap)
            i, j = rng.sample(range(n), 2)
            e.rows[i][j] = random_ideal_matrix(rng, 1, 2, cap).rows[0][0]
            assert ldet(e * a) == ldet(a)
    report("A3 ldet_homomorphism", t0, "30s")


def test_a4_alternating_sum_vanishing():
    t0 = time.time()
    rng = random.Random(4)
    for d in (1, 2, 3, 4):
        cap = d + 1
        for _ in range(3):
            n = rng.randint(1, 3)
            mats = [random_ideal_matrix(rng, n, 2, cap) for _ in range(d)]
            delta = delta_alt(mats)
            for k in range(1, d):
                assert delta.slice_degree(k).is_zero(), f"d={d} degree {k}"
    report("A4 alternating_sum_vanishing", t0, "60s")


def test_a5_surgery_oracle():
    t0 = time.time()
    rng = random.Random(5)
    for g in (1, 2):
        base = trivial_cylinder(g)
        for d in (1, 2, 3):
            cap = d + 2
            c = random_clasper(rng, d, 2 * g, maxlen=3)
            factor = surgery_factor(c, g, cap)
            pres = one_loop_presentation(c, genus=g)
            diff = torsion(pres, cap).torsion.log - torsion(base, cap).torsion.log
            assert diff == factor.log, f"g={g} d={d} clasper={c.to_json()}"
    report("A5 surgery_oracle", t0, "2min")


def test_a6_one_loop_leading_value():
    t0 = time.time()
    for d in (1, 2, 3, 4):
        g = max(1, (d + 1) // 2)
        rank = 2 * g
        c = OneLoopClasper(
            d, tuple(GroupWord.generator(i) for i in range(1, d + 1)),
            GroupWord.identity(), (0,) * d,
        )
        pres = one_loop_presentation(c, genus=g)
        value = alpha_d(pres, d, cap=max(d, 2))
        expected = CyclicSeries(rank, max(d, 2))
        fwd = tuple(range(1, d + 1))
        expected = expected + CyclicSeries(rank, max(d, 2), [(fwd, Fraction(-1))])
        expected = expected + CyclicSeries(
            rank, max(d, 2), [(tuple(reversed(fwd)), Fraction(-1) * (-1) ** d)]
        )
        assert value == expected, f"d={d}"
    report("A6 one_loop_leading_value", t0, "30s")


def test_a7_two_loop_surgery_trivial():
    t0 = time.time()
    pres = theta_presentation(genus=1)
    inv = torsion(pres, 4)
    assert inv.torsion.det_eps == 1
    assert inv.torsion.log.is_zero()
    report("A7 two_loop_surgery_trivial", t0, "60s")


def _a8_a9_families(rng, genus):
    yield mapping_cylinder(random_torelli_words(rng, genus, moves=2), genus)
    yield mapping_cylinder(random_torelli_words(rng, genus, moves=3), genus)
    for d in (1, 2):
        yield one_loop_presentation(
            random_clasper(rng, d, 2 * genus, maxlen=2), genus=genus
        )


def test_a8_torsion_magnus():
    t0 = time.time()
    rng = random.Random(8)
    cap = 4
    for pres in _a8_a9_families(rng, 1):
        inv = torsion(pres, cap)
        minv = torsion(mirror(pres), cap)
        lhs = -inv.torsion.log + act_auto(inv.sigma, minv.torsion.log)
        val = ldet(magnus_rep(pres, cap))
        assert val.det_eps == 1
        assert lhs == val.log
    report("A8 torsion_magnus", t0, "2min")


def test_a9_crossed_homomorphism():
    t0 = time.time()
    rng = random.Random(9)
    cap = 4
    pres_list = list(_a8_a9_families(rng, 1))
    for p, q in zip(pres_list, pres_list[1:] + pres_list[:1]):
        comp = compose(p, q)
        tp, tq, tc = torsion(p, cap), torsion(q, cap), torsion(comp, cap)
        assert tc.torsion.log == tp.torsion.log + act_auto(tp.sigma, tq.torsion.log)
    report("A9 crossed_homomorphism", t0, "2min")


def test_a10_degree_d_trace_square():
    t0 = time.time()
    rng = random.Random(10)
    for d in (1, 2, 3):
        for g in (1, 2):
            cap = d + 2
            auto = random_deep_auto(rng, g, cap, depth=d)
            deg = ia_degree(auto)
            assert deg is None or deg >= d
            logs = log_derivation(auto)
            lhs = es_trace(HomDerivation(d, tuple(v.slice_degree(d + 1) for v in logs)))
            rhs = project_cyclic(_matrix_log_trace(magnus_matrix(auto)))
            assert lhs.slice_degree(d).max_slice(d) == rhs.slice_degree(d).max_slice(d)
    report("A10 degree_d_trace_square", t0, "60s")


def test_a11_commutative_reduction():
    t0 = time.time()
    rng = random.Random(11)
    cap = 4
    instances = list(_a8_a9_families(rng, 1))
    instances.append(one_loop_presentation(random_clasper(rng, 2, 4, maxlen=2), genus=2))
    for pres in instances:
        a = presentation_matrix(pres, cap)
        val = ldet(a)
        assert abelianize(val.log).exp() * val.det_eps == comm_det(abelianize(a))
    report("A11 commutative_reduction", t0, "60s")


def _a6_value(d: int, rank: int) -> CyclicSeries:
    fwd = tuple(range(1, d + 1))
    return CyclicSeries(rank, d, [
        (fwd, Fraction(-1)),
        (tuple(reversed(fwd)), Fraction(-1) * (-1) ** d),
    ])


def test_a12_eigenspace_split_as_stated():
    t0 = time.time()
    failures = []
    for d in (1, 2, 3, 4):
        rank = 2 * max(1, (d + 1) // 2)
        value = _a6_value(d, rank)
        plus = (value + rho(value)) * Fraction(1, 2)
        assert rho(plus) == plus, "plus part must be reversal invariant"
        generator = CyclicSeries(rank, d, [(tuple(range(1, d + 1)), Fraction(1))])
        if p_minus(value) != p_minus(generator) * Fraction(-2):
            failures.append(d)
    ok = not failures
    report("A12 eigenspace_split_as_stated", t0, "10s", ok=ok)
    assert ok, (
        f"minus-projection clause fails for d in {failures}: the one-loop "
        "value -x1...xd - (-1)^d xd...x1 is reversal invariant, so its "
        "minus-projection is zero, while -2*p_minus(x1...xd) is nonzero for "
        "those degrees; see the corrected split test and notes/decisions.md"
    )


def test_a12_structural_split_corrected():
    t0 = time.time()
    for d in (1, 2, 3, 4):
        rank = 2 * max(1, (d + 1) // 2)
        value = _a6_value(d, rank)
        generator = CyclicSeries(rank, d, [(tuple(range(1, d + 1)), Fraction(1))])
        # plus leg: the whole value, equal to -2 times the model class
        assert rho(value) == value
        assert value == p_plus(generator).value * Fraction(-2)
        # minus leg: zero, matching the traced Johnson prediction obtained
        # from the mirror relation (mirror value minus value, projected)
        mirrored = CyclicSeries(rank, d, [
            (tuple(reversed(range(1, d + 1))), Fraction(-1)),
            (tuple(range(1, d + 1)), Fraction(-1) * (-1) ** d),
        ])
        predicted_trace = p_minus(-value + mirrored)
        assert p_minus(value).is_zero()
        assert predicted_trace.is_zero()
    report("A12 structural_split_corrected", t0, "10s")
