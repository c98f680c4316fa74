"""
Characters of n, ideals of S(Z), and the Hankel-matrix goodness criterion
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import sympy

from enveloping import CenterPoly, ZERO_POLY, to_fraction
from exact_linalg import RationalMatrix, det, rank
from lie_core import require_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Character:
    """Homomorphism phi: n -> Q fixed by the line values c_m = phi(x(2-m, m))"""
    kind: str
    params: Tuple = ()

    @classmethod
    def constant(cls, value) -> "Character":
        return cls("constant", (to_fraction(value),))

    @classmethod
    def geometric(cls, c, q) -> "Character":
        return cls("geometric", (to_fraction(c), to_fraction(q)))

    @classmethod
    def polynomial(cls, coeffs) -> "Character":
        return cls("polynomial", tuple(to_fraction(c) for c in coeffs))

    @classmethod
    def factorial(cls) -> "Character":
        return cls("factorial", ())

    @classmethod
    def explicit(cls, values, tail=0) -> "Character":
        return cls("explicit", (tuple(to_fraction(v) for v in values), to_fraction(tail)))

    def line_value(self, m: int) -> Fraction:
        """c_m, the value on x(2-m, m)"""
        if m < 0:
            raise ValueError(f"Line index must be non-negative, got {m}")
        if self.kind == "constant":
            return self.params[0]
        if self.kind == "geometric":
            c, q = self.params
            return c * q ** m
        if self.kind == "polynomial":
            return sum((c * m ** k for k, c in enumerate(self.params)), Fraction(0))
        if self.kind == "factorial":
            return Fraction(math.factorial(m))
        if self.kind == "explicit":
            values, tail = self.params
            return values[m] if m < len(values) else tail
        raise ValueError(f"Unknown character kind: {self.kind}")

    def evaluate(self, x) -> Fraction:
        """phi(x) for a generator x in n; zero off the line a+i = 2"""
        x = require_generator(x)
        total = x[0] + x[1]
        if total <= 1:
            raise ValueError(f"Generator {x!r} is not in n")
        if total >= 3:
            return Fraction(0)
        return self.line_value(x[1])

    def singular_indices(self, m_max: int) -> List[int]:
        return [m for m in range(m_max + 1) if not self.line_value(m)]

    def nonsingular(self, m_max: int) -> bool:
        return not self.singular_indices(m_max)

    def describe(self) -> str:
        if self.kind == "constant":
            return f"constant {self.params[0]}"
        if self.kind == "geometric":
            return f"geometric {self.params[0]}*{self.params[1]}^m"
        if self.kind == "polynomial":
            return "polynomial " + " + ".join(f"{c}*m^{k}" for k, c in enumerate(self.params))
        if self.kind == "factorial":
            return "factorial m!"
        values, tail = self.params
        return f"explicit [{', '.join(str(v) for v in values)}] then {tail}"


@dataclass(frozen=True)
class Ideal:
    """Ideal of S(Z) = Q[z], stored by its monic generator (zero polynomial for I = 0)"""
    generator: CenterPoly = ZERO_POLY

    def __post_init__(self):
        if not self.generator.is_zero() and self.generator.coeffs[-1] != 1:
            raise ValueError(f"Ideal generator must be monic: {self.generator}")

    @classmethod
    def zero(cls) -> "Ideal":
        return cls(ZERO_POLY)

    @classmethod
    def principal(cls, poly) -> "Ideal":
        """Ideal generated by poly, normalised to its monic generator"""
        poly = poly if isinstance(poly, CenterPoly) else CenterPoly(poly)
        if poly.is_zero():
            return cls.zero()
        return cls(poly * (1 / poly.coeffs[-1]))

    @classmethod
    def linear(cls, root) -> "Ideal":
        """The maximal ideal (z - root)"""
        return cls(CenterPoly([-to_fraction(root), 1]))

    def is_zero(self) -> bool:
        return self.generator.is_zero()

    def is_linear(self) -> bool:
        return self.generator.degree == 1

    def root(self) -> Fraction:
        if not self.is_linear():
            raise ValueError(f"Ideal {self} is not generated by a linear polynomial")
        return -self.generator.coeffs[0]

    def reduce(self, poly: CenterPoly) -> CenterPoly:
        return poly.remainder(self.generator)

    def contains(self, poly: CenterPoly) -> bool:
        return self.reduce(CenterPoly.coerce(poly)).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return self.contains(other.generator)

    def __str__(self):
        return "(0)" if self.is_zero() else f"({self.generator})"


def hankel_matrix(character: Character, n: int, s: int, m_max: int) -> RationalMatrix:
    """Rows 1..m_max of H^(n,s): entry (m, j) is c_(m+j+s-1)"""
    if n < 1 or s < 1:
        raise ValueError(f"Hankel parameters need n, s >= 1, got n={n}, s={s}")
    if m_max < 0:
        raise ValueError(f"m_max must be non-negative, got {m_max}")
    rows = [
        [character.line_value(m + j + s - 1) for j in range(n + 1)]
        for m in range(1, m_max + 1)
    ]
    return RationalMatrix.from_rows(rows, n + 1)


def gram_matrix(character: Character, n: int, s: int) -> RationalMatrix:
    """G^(n,s): the leading (n+1) x (n+1) block of H^(n,s)"""
    return hankel_matrix(character, n, s, n + 1)


def gram_determinant_polynomial(n: int, s: int) -> sympy.Expr:
    """det G^(n,s) as a polynomial in the line values c_a"""
    if n < 1 or s < 1:
        raise ValueError(f"Hankel parameters need n, s >= 1, got n={n}, s={s}")
    line = sympy.symbols(f"c0:{2 * n + s + 1}")
    block = sympy.Matrix(n + 1, n + 1, lambda m, j: line[m + 1 + j + s - 1])
    return sympy.expand(block.det())


class CharacterAnalyzer:
    """Checks nonsingularity and the Hankel rank condition at a truncation"""

    def __init__(self, character: Character):
        self.character = character

    def check_pair(self, n: int, s: int, m_max: Optional[int] = None) -> Dict:
        """Rank of the truncated H^(n,s) and det G^(n,s) for one (n, s)"""
        rows = n + 1 if m_max is None else max(m_max, n + 1)
        matrix = hankel_matrix(self.character, n, s, rows)
        matrix_rank = rank(matrix)
        determinant = det(matrix.submatrix(n + 1, n + 1))
        passes = matrix_rank == n + 1
        return {
            "n": n,
            "s": s,
            "rows": rows,
            "rank": matrix_rank,
            "det_G": determinant,
            "verdict": "passes at truncation" if passes else "fails at truncation"
        }

    def good_check(self, n_max: int, s_max: int, m_max: Optional[int] = None) -> Dict:
        """Goodness evidence over 1 <= n <= n_max, 1 <= s <= s_max"""
        if n_max < 1 or s_max < 1:
            raise ValueError(f"n_max and s_max must be >= 1, got {n_max}, {s_max}")

        pairs = [
            self.check_pair(n, s, m_max)
            for n in range(1, n_max + 1)
            for s in range(1, s_max + 1)
        ]
        deepest = max(pair["rows"] for pair in pairs) + n_max + s_max
        singular = self.character.singular_indices(deepest)
        if singular:
            logger.warning(f"Character {self.character.describe()} vanishes at line indices {singular}")

        all_pass = all(pair["verdict"] == "passes at truncation" for pair in pairs)
        good = all_pass and not singular
        report = {
            "character": self.character.describe(),
            "n_max": n_max,
            "s_max": s_max,
            "m_max": m_max,
            "pairs": pairs,
            "singular_indices": singular,
            "nonsingular": not singular,
            "verdict": "good at truncation" if good else "not good at truncation",
            "notes": self._generate_notes(pairs, singular, m_max)
        }
        logger.info(f"Character {self.character.describe()}: {report['verdict']}")
        return report

    def _generate_notes(self, pairs: List[Dict], singular: List[int], m_max: Optional[int]) -> List[str]:
        notes = ["Evidence at truncation only; goodness needs full rank for every n, s >= 1."]

        failing = [pair for pair in pairs if pair["verdict"] != "passes at truncation"]
        if failing:
            worst = failing[0]
            notes.append(
                f"H^({worst['n']},{worst['s']}) has rank {worst['rank']} < {worst['n'] + 1} "
                f"on {worst['rows']} rows."
            )

        zero_dets = [pair for pair in pairs if pair["det_G"] == 0]
        if zero_dets and not failing:
            notes.append("Some det G^(n,s) vanish although the taller truncations have full rank.")

        if singular:
            notes.append(f"Character is singular at line indices {singular}.")

        if m_max is not None and any(pair["rows"] > m_max for pair in pairs):
            notes.append("m_max was raised to n+1 where it was smaller.")

        return notes


def main():
    """Try out the goodness check"""
    for character in (Character.constant(1), Character.factorial(), Character.geometric(1, 2)):
        report = CharacterAnalyzer(character).good_check(2, 2)
        print(f"{report['character']}: {report['verdict']}")
    print("det G^(1,1) =", gram_determinant_polynomial(1, 1))


if __name__ == "__main__":
    main()
