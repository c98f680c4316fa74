"""
Tests for characters, ideals of S(Z) and the Hankel goodness check
"""
import sys
import os
from fractions import Fraction

import pytest
import sympy

sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

from characters import (  # noqa: E402
    Character,
    CharacterAnalyzer,
    Ideal,
    gram_determinant_polynomial,
    gram_matrix,
    hankel_matrix,
)
from enveloping import CenterPoly  # noqa: E402
from exact_linalg import det, rank  # noqa: E402


def test_line_values():
    assert Character.constant(1).line_value(7) == 1
    assert Character.geometric(3, "1/2").line_value(2) == Fraction(3, 4)
    assert Character.polynomial([1, 0, 1]).line_value(3) == 10
    assert Character.factorial().line_value(4) == 24
    explicit = Character.explicit([5, 6], tail=2)
    assert [explicit.line_value(m) for m in range(4)] == [5, 6, 2, 2]
    with pytest.raises(ValueError):
        explicit.line_value(-1)


def test_evaluate_on_n():
    factorial = Character.factorial()
    assert factorial.evaluate((0, 2)) == 2
    assert factorial.evaluate((2, 0)) == 1
    assert factorial.evaluate((3, 0)) == 0
    assert factorial.evaluate((-4, 9)) == 0
    with pytest.raises(ValueError):
        factorial.evaluate((0, 1))
    with pytest.raises(ValueError):
        factorial.evaluate((-1, 0))


def test_singular_indices():
    character = Character.polynomial([-2, 1])
    assert character.singular_indices(5) == [2]
    assert not character.nonsingular(5)
    assert character.nonsingular(1)
    assert Character.factorial().nonsingular(20)


def test_ideals():
    zero = Ideal.zero()
    assert zero.is_zero() and not zero.is_linear()
    assert zero.reduce(CenterPoly([1, 2, 3])) == CenterPoly([1, 2, 3])

    linear = Ideal.linear(2)
    assert linear.is_linear() and linear.root() == 2
    assert linear.reduce(CenterPoly([0, 0, 1])) == 4
    assert linear.contains(CenterPoly([-2, 1]))

    scaled = Ideal.principal(CenterPoly([-4, 2]))
    assert scaled == linear
    assert Ideal.principal(CenterPoly()) == zero

    square = Ideal.principal(CenterPoly([1, 0, 1]))
    assert square.reduce(CenterPoly([0, 0, 0, 1])) == CenterPoly([0, -1])
    with pytest.raises(ValueError):
        square.root()
    with pytest.raises(ValueError):
        Ideal(CenterPoly([1, 2]))


def test_ideal_containment():
    product = Ideal.principal(CenterPoly([-2, 1]) * CenterPoly([-1, 1]))
    assert Ideal.linear(2).contains_ideal(product)
    assert not product.contains_ideal(Ideal.linear(2))
    assert Ideal.linear(2).contains_ideal(Ideal.zero())


def test_hankel_all_ones():
    matrix = hankel_matrix(Character.constant(1), 1, 1, 3)
    assert (matrix.rows, matrix.cols) == (3, 2)
    assert all(value == 1 for value in matrix.entries)
    assert rank(matrix) == 1


def test_hankel_entries():
    matrix = hankel_matrix(Character.factorial(), 2, 2, 4)
    for m in range(1, 5):
        for j in range(3):
            assert matrix[m - 1, j] == Character.factorial().line_value(m + j + 1)


def test_factorial_gram():
    gram = gram_matrix(Character.factorial(), 1, 1)
    assert gram.to_rows() == [[1, 2], [2, 6]]
    assert det(gram) == 2


def test_geometric_has_rank_one():
    character = Character.geometric(1, "3/2")
    for n in range(1, 4):
        for s in range(1, 3):
            assert rank(hankel_matrix(character, n, s, n + 3)) == 1
    report = CharacterAnalyzer(character).good_check(2, 2, 5)
    assert report["verdict"] == "not good at truncation"


def test_good_check_constant():
    report = CharacterAnalyzer(Character.constant(1)).good_check(1, 1, 3)
    assert report["pairs"][0]["rank"] == 1
    assert report["pairs"][0]["verdict"] == "fails at truncation"
    assert report["verdict"] == "not good at truncation"
    assert report["nonsingular"]


def test_good_check_factorial():
    report = CharacterAnalyzer(Character.factorial()).good_check(4, 4)
    assert report["verdict"] == "good at truncation"
    assert all(pair["det_G"] != 0 for pair in report["pairs"])
    assert all(pair["rows"] == pair["n"] + 1 for pair in report["pairs"])
    first = report["pairs"][0]
    assert (first["n"], first["s"], first["det_G"]) == (1, 1, 2)
    assert any("truncation" in note for note in report["notes"])


def test_good_check_reports_singular_character():
    report = CharacterAnalyzer(Character.explicit([1, 1, 0, 1], tail=3)).good_check(1, 1)
    assert report["singular_indices"] == [2]
    assert report["verdict"] == "not good at truncation"


def test_good_check_raises_small_m_max():
    report = CharacterAnalyzer(Character.factorial()).good_check(3, 1, 2)
    assert [pair["rows"] for pair in report["pairs"]] == [2, 3, 4]
    assert any("raised" in note for note in report["notes"])


def test_parameter_errors():
    with pytest.raises(ValueError):
        hankel_matrix(Character.constant(1), 0, 1, 3)
    with pytest.raises(ValueError):
        CharacterAnalyzer(Character.constant(1)).good_check(0, 1)


def test_gram_determinant_polynomial():
    c2, c3, c4 = sympy.symbols("c2 c3 c4")
    assert sympy.expand(gram_determinant_polynomial(1, 2) - (c2 * c4 - c3 ** 2)) == 0
    # evaluating at factorial values reproduces the exact determinant
    poly = gram_determinant_polynomial(2, 1)
    values = {sympy.Symbol(f"c{a}"): sympy.factorial(a) for a in range(8)}
    assert int(poly.subs(values)) == det(gram_matrix(Character.factorial(), 2, 1))
