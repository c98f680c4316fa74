"""
Generator indices, the Q-group and its total order, and partitions
for the Block-type Lie algebra with bracket
[x(a,i), x(b,j)] = ((b-1)i - (a-1)j) x(a+b, i+j-1)
"""
import logging
from enum import Enum
from typing import Iterable, List, NamedTuple, Optional

logger = logging.getLogger(__name__)


class QDegree(NamedTuple):
    """Element (a, i) of Q = Z x Z, ordered by (a+i, i)"""
    a: int
    i: int

    # The total order compares a+i first, then i; tuple order would compare a first.
    def __lt__(self, other):
        return (self[0] + self[1], self[1]) < (other[0] + other[1], other[1])

    def __le__(self, other):
        return (self[0] + self[1], self[1]) <= (other[0] + other[1], other[1])

    def __gt__(self, other):
        return (self[0] + self[1], self[1]) > (other[0] + other[1], other[1])

    def __ge__(self, other):
        return (self[0] + self[1], self[1]) >= (other[0] + other[1], other[1])

    def star(self, other) -> "QDegree":
        """Group law (a,i)*(b,j) = (a+b, i+j-1)"""
        return QDegree(self[0] + other[0], self[1] + other[1] - 1)

    def inverse(self) -> "QDegree":
        return QDegree(-self[0], 2 - self[1])

    def pi(self) -> int:
        return self[0] + self[1] - 1

    def pi1(self) -> int:
        return self[0]

    def pi2(self) -> int:
        return self[1]

    def __repr__(self):
        return f"({self[0]},{self[1]})"


# Generators share the Q representation; generator-consuming operations
# check the second index with require_generator.
GenIndex = QDegree

IDENTITY = QDegree(0, 1)
CENTRAL = QDegree(1, 0)


class Subalgebra(Enum):
    N = "n"
    H = "h"
    N_MINUS = "n_minus"
    CENTER = "center"


class Comparison(Enum):
    LT = -1
    EQ = 0
    GT = 1


class BracketTerm(NamedTuple):
    coefficient: int
    target: QDegree


def as_degree(value) -> QDegree:
    """Coerce a pair into a QDegree"""
    if isinstance(value, QDegree):
        return value
    a, i = value
    if not isinstance(a, int) or not isinstance(i, int) or isinstance(a, bool) or isinstance(i, bool):
        raise ValueError(f"Index entries must be integers, got {value!r}")
    return QDegree(a, i)


def require_generator(x) -> QDegree:
    """Return x as a generator index, rejecting a negative second index"""
    x = as_degree(x)
    if x[1] < 0:
        raise ValueError(f"Not a generator index (second index < 0): {x!r}")
    return x


def star_power(alpha, k: int) -> QDegree:
    """k-th power of alpha under the star product; k may be negative"""
    alpha = as_degree(alpha)
    return QDegree(k * alpha[0], k * (alpha[1] - 1) + 1)


def compare(x, y) -> Comparison:
    x, y = as_degree(x), as_degree(y)
    if x == y:
        return Comparison.EQ
    return Comparison.LT if x < y else Comparison.GT


def classify(x) -> Subalgebra:
    """Subalgebra holding the generator; CENTER is the h-element (1,0)"""
    x = require_generator(x)
    total = x[0] + x[1]
    if total > 1:
        return Subalgebra.N
    if total < 1:
        return Subalgebra.N_MINUS
    if x == CENTRAL:
        return Subalgebra.CENTER
    return Subalgebra.H


def is_in_n(x) -> bool:
    return x[0] + x[1] > 1


def is_in_h(x) -> bool:
    return x[0] + x[1] == 1


def is_in_n_minus(x) -> bool:
    return x[0] + x[1] < 1


def is_in_b_minus(x) -> bool:
    return x[0] + x[1] <= 1


def is_central(x) -> bool:
    return x[0] == 1 and x[1] == 0


# Index sets
def in_q_prime(alpha) -> bool:
    return alpha[0] + alpha[1] - 1 > 0


def in_q_double_prime(alpha) -> bool:
    return alpha[0] + alpha[1] - 1 <= 0


def in_k(alpha, n: int = 0) -> bool:
    return alpha[1] >= n


def in_k_prime(alpha, n: int = 0) -> bool:
    return in_k(alpha, n) and in_q_prime(alpha)


def in_k_double_prime(alpha, n: int = 0) -> bool:
    return in_k(alpha, n) and in_q_double_prime(alpha)


def bracket(x, y) -> Optional[BracketTerm]:
    """Structure-constant bracket; None stands for the zero element"""
    x = require_generator(x)
    y = require_generator(y)
    return bracket_unchecked(x, y)


def bracket_unchecked(x: QDegree, y: QDegree) -> Optional[BracketTerm]:
    coefficient = (y[0] - 1) * x[1] - (x[0] - 1) * y[1]
    if coefficient == 0:
        return None
    return BracketTerm(coefficient, QDegree(x[0] + y[0], x[1] + y[1] - 1))


def positive_generators(sum_max: int, i_max: int) -> List[QDegree]:
    """Generators of n with 2 <= a+i <= sum_max and 0 <= i <= i_max, in Q order"""
    return [
        QDegree(total - i, i)
        for total in range(2, sum_max + 1)
        for i in range(0, i_max + 1)
    ]


def b_minus_generators(pi_min: int, i_max: int) -> List[QDegree]:
    """Non-central generators of b_- with pi >= pi_min and 0 <= i <= i_max, in Q order"""
    gens = []
    for total in range(pi_min + 1, 2):
        for i in range(0, i_max + 1):
            gen = QDegree(total - i, i)
            if gen != CENTRAL:
                gens.append(gen)
    return gens


class Partition(tuple):
    """Non-decreasing sequence of Q elements labelling a PBW monomial"""

    def __new__(cls, parts: Iterable = ()):
        parts = tuple(as_degree(part) for part in parts)
        for left, right in zip(parts, parts[1:]):
            if right < left:
                raise ValueError(f"Partition parts must be non-decreasing: {parts!r}")
        return super().__new__(cls, parts)

    @classmethod
    def trusted(cls, parts) -> "Partition":
        """Wrap parts already known to be sorted QDegree values"""
        return tuple.__new__(cls, parts)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, alpha) -> int:
        return self.count(as_degree(alpha))

    def prefix(self, i: int) -> "Partition":
        """lambda{i}: the first i parts"""
        if not 0 <= i <= len(self):
            raise ValueError(f"Prefix index {i} out of range for length {len(self)}")
        return Partition.trusted(self[:i])

    def suffix(self, j: int) -> "Partition":
        """lambda[j]: the parts after position j"""
        if not 0 <= j <= len(self):
            raise ValueError(f"Suffix index {j} out of range for length {len(self)}")
        return Partition.trusted(self[j:])

    def remove(self, i: int) -> "Partition":
        """lambda<i>: drop the i-th part (1-based)"""
        if not 1 <= i <= len(self):
            raise ValueError(f"Remove index {i} out of range for length {len(self)}")
        return Partition.trusted(self[:i - 1] + self[i:])

    def degree(self) -> QDegree:
        """|lambda|, the star product of the parts"""
        a = sum(part[0] for part in self)
        i = sum(part[1] for part in self) - len(self) + 1
        return QDegree(a, i)

    def pi_degree(self) -> int:
        return sum(part[0] + part[1] - 1 for part in self)

    def height(self) -> int:
        return len(self)

    def __repr__(self):
        if not self:
            return "0"
        return "(" + ",".join(repr(part) for part in self) + ")"


NULL_PARTITION = Partition.trusted(())


def main():
    """Try out the bracket and the order"""
    print("[x(2,0), x(0,1)] =", bracket((2, 0), (0, 1)))
    print("[x(1,0), x(5,3)] =", bracket((1, 0), (5, 3)))
    print("classify (-1,0):", classify((-1, 0)).value)
    lam = Partition([(0, 1), (0, 1), (-1, 2)])
    print(f"|{lam}| = {lam.degree()}, pi = {lam.pi_degree()}, lambda<2> = {lam.remove(2)}")


if __name__ == "__main__":
    main()
