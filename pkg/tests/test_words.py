import random
from fractions import Fraction

import pytest

from cyltor.errors import ParseError
from cyltor.words import (
    GroupWord,
    RingElement,
    bar,
    format_word,
    fox_derivative,
    fox_matrix,
    parse_word,
)


def w(text):
    return parse_word(text)


def r(text):
    return RingElement.parse(text)


class TestGroupWord:
    def test_free_reduction_on_construction(self):
        assert GroupWord([(1, 1), (1, -1)]).is_identity()
        assert GroupWord([(2, -1), (1, 1), (1, -1), (2, 1)]).is_identity()
        assert w("g1 g2 G2 g1").letters == ((1, 1), (1, 1))

    def test_mul_and_inverse(self):
        u, v = w("g1 g2"), w("G2 g3")
        assert u * v == w("g1 g3")
        assert (u * u.inverse()).is_identity()
        assert u.inverse() == w("G2 G1")

    def test_pow(self):
        assert w("g1") ** 3 == w("g1 g1 g1")
        assert w("g1") ** -2 == w("G1 G1")
        assert (w("g1 g2") ** 0).is_identity()

    def test_parse_format_roundtrip(self):
        for text in ("1", "g1", "g2 G1 g2", "G3 G3"):
            assert format_word(w(text)) == text

    def test_named_tokens(self):
        names = ["p1", "m1"]
        word = parse_word("p1 M1", names)
        assert word.letters == ((1, 1), (2, -1))
        assert format_word(word, names) == "p1 M1"

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_word("h1")
        with pytest.raises(ParseError):
            parse_word("q1", ["p1"])


class TestBar:
    def test_single_word(self):
        assert r("1*g1 g2").bar() == r("1*G2 G1")

    def test_identity(self):
        assert RingElement.one().bar() == RingElement.one()

    def test_linearity(self):
        v = r("2*g1") - r("1*G2")
        assert v.bar() == r("2*G1") - r("1*g2")

    def test_involution_and_antihomomorphism(self):
        rng = random.Random(0)
        for _ in range(50):
            letters = [(rng.randint(1, 3), rng.choice((1, -1))) for _ in range(6)]
            u = RingElement.from_word(GroupWord(letters[:3]), Fraction(2, 3))
            v = RingElement.from_word(GroupWord(letters[3:]))
            assert bar(bar(u)) == u
            assert bar(u * v) == bar(v) * bar(u)


class TestFox:
    def test_generator_axioms(self):
        assert fox_derivative(w("g1"), 1) == RingElement.one()
        assert fox_derivative(w("g1"), 2) == RingElement.zero()
        assert fox_derivative(w("G1"), 1) == -r("1*G1")

    def test_commutator(self):
        # d/dg1 of g1 g2 G1 G2
        assert fox_derivative(w("g1 g2 G1 G2"), 1) == r("1*1") - r("1*g1 g2 G1")

    def test_linearity(self):
        v = r("2*g1 g2") - r("3*G1")
        expected = fox_derivative(w("g1 g2"), 1) * 2 - fox_derivative(w("G1"), 1) * 3
        assert fox_derivative(v, 1) == expected

    def test_product_rule(self):
        rng = random.Random(1)
        for _ in range(50):
            u = GroupWord([(rng.randint(1, 3), rng.choice((1, -1))) for _ in range(4)])
            v = GroupWord([(rng.randint(1, 3), rng.choice((1, -1))) for _ in range(4)])
            i = rng.randint(1, 3)
            assert fox_derivative(u * v, i) == (
                fox_derivative(u, i) + RingElement.from_word(u) * fox_derivative(v, i)
            )

    def test_fundamental_formula(self):
        rng = random.Random(2)
        for _ in range(100):
            rank = rng.randint(1, 3) * 2
            word = GroupWord(
                [(rng.randint(1, rank), rng.choice((1, -1))) for _ in range(rng.randint(0, 12))]
            )
            total = RingElement.zero()
            for i in range(1, rank + 1):
                gi = RingElement.from_word(GroupWord.generator(i)) - RingElement.one()
                total = total + fox_derivative(word, i) * gi
            assert total == RingElement.from_word(word) - RingElement.one()


class TestFoxMatrix:
    def test_commutator_relator(self):
        m = fox_matrix([w("g1 g2 G1 G2")], [1])
        assert m[0][0] == r("1*1") - r("1*g1 G2 G1")

    def test_single_generator_relator(self):
        assert fox_matrix([w("g1")], [1]) == [[RingElement.one()]]

    def test_shape(self):
        m = fox_matrix([w("g1"), w("g2 g1")], [1, 2, 3])
        assert len(m) == 3 and len(m[0]) == 2


class TestRingElement:
    def test_augmentation(self):
        assert (r("2*g1") - r("1/2*G2")).augmentation() == Fraction(3, 2)

    def test_to_str_parse_roundtrip(self):
        rng = random.Random(3)
        for _ in range(30):
            terms = {}
            for _ in range(3):
                word = GroupWord([(rng.randint(1, 3), rng.choice((1, -1))) for _ in range(2)])
                terms[word] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            v = RingElement(terms)
            assert RingElement.parse(v.to_str()) == v

    def test_zero_handling(self):
        v = r("1*g1") - r("1*g1")
        assert v.is_zero()
        assert v.to_str() == "0"
        assert RingElement.parse("0") == v
