"""
Whittaker modules M_phi and L_(phi,I): the induced action on the basis
x_lambda w', Whittaker defects, the truncated Whittaker-vector solver,
closed-form coefficients of y_m-defects, and the descent
procedure that reaches a Whittaker vector from any nonzero vector.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple

from characters import Character, Ideal
from config import DEFAULT_MAX_STEPS
from enveloping import (
    CenterPoly,
    ONE_POLY,
    UEAElement,
    format_coefficient,
    format_monomial,
    monomial_key,
    multiply,
    phi_component,
    to_fraction,
)
from exact_linalg import RationalMatrix, kernel_basis
from lie_core import (
    NULL_PARTITION,
    Partition,
    QDegree,
    b_minus_generators,
    is_central,
    is_in_b_minus,
    is_in_n,
    positive_generators,
    require_generator,
)

logger = logging.getLogger(__name__)


class Cutoff(NamedTuple):
    """Finite stand-in for "every x in n": 2 <= a+i <= sum_max, 0 <= i <= i_max"""
    sum_max: int
    i_max: int

    def generators(self) -> List[QDegree]:
        return positive_generators(self.sum_max, self.i_max)


class Truncation(NamedTuple):
    """Candidate partitions: parts with i <= part_i_max, pi(|lambda|) >= pi_min, length <= len_max"""
    pi_min: int
    part_i_max: int
    len_max: int


def default_i_max(truncation: Truncation) -> int:
    return 2 * (truncation.part_i_max * truncation.len_max) + 4


def _reduced_add(terms: Dict, key, coeff: CenterPoly):
    if coeff.is_zero():
        return
    total = terms.get(key, None)
    total = coeff if total is None else total + coeff
    if total.is_zero():
        terms.pop(key, None)
    else:
        terms[key] = total


class ModuleVector:
    """Finite sum of basis vectors x_lambda w' with coefficients in S(Z)/I"""

    __slots__ = ("_terms", "ideal", "_hash")

    def __init__(self, terms: Mapping = None, ideal: Ideal = None):
        ideal = ideal if ideal is not None else Ideal.zero()
        canonical: Dict[Partition, CenterPoly] = {}
        for parts, coeff in (terms or {}).items():
            lam = parts if isinstance(parts, Partition) else Partition(parts)
            for part in lam:
                require_generator(part)
                if not is_in_b_minus(part) or is_central(part):
                    raise ValueError(f"Basis vectors use non-central parts of b_-, got {part!r}")
            _reduced_add(canonical, lam, ideal.reduce(CenterPoly.coerce(coeff)))
        self._terms = canonical
        self.ideal = ideal
        self._hash = None

    @classmethod
    def _from_reduced(cls, terms: Mapping, ideal: Ideal) -> "ModuleVector":
        vector = object.__new__(cls)
        vector._terms = {Partition.trusted(lam): c for lam, c in terms.items() if c}
        vector.ideal = ideal
        vector._hash = None
        return vector

    @classmethod
    def zero(cls, ideal: Ideal = None) -> "ModuleVector":
        return cls({}, ideal)

    @property
    def terms(self) -> Dict[Partition, CenterPoly]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda item: monomial_key(item[0]))

    def coefficient(self, parts) -> CenterPoly:
        return self._terms.get(Partition(parts), CenterPoly())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, ModuleVector):
            return self.ideal == other.ideal and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ideal.generator.coeffs, frozenset(self._terms.items())))
        return self._hash

    def _same_module(self, other: "ModuleVector"):
        if self.ideal != other.ideal:
            raise ValueError(f"Vectors live in different quotients: {self.ideal} and {other.ideal}")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._same_module(other)
        result = dict(self._terms)
        for lam, coeff in other._terms.items():
            _reduced_add(result, lam, coeff)
        return ModuleVector._from_reduced(result, self.ideal)

    def __neg__(self):
        return ModuleVector._from_reduced({lam: -c for lam, c in self._terms.items()}, self.ideal)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, coeff) -> "ModuleVector":
        """Multiply by a rational or by an element of S(Z), reducing mod I"""
        coeff = CenterPoly.coerce(coeff)
        return ModuleVector._from_reduced(
            {lam: self.ideal.reduce(c * coeff) for lam, c in self._terms.items()}, self.ideal
        )

    __rmul__ = scale

    # Q-grading: x_lambda w' sits in degree |lambda|
    def mindeg(self) -> QDegree:
        if self.is_zero():
            raise ValueError("mindeg of the zero vector is undefined")
        return min(lam.degree() for lam in self._terms)

    def ell(self) -> int:
        lowest = self.mindeg()
        return max(len(lam) for lam in self._terms if lam.degree() == lowest)

    # pi-grading: least pi(|lambda|) over the terms, and the height there
    def mindeg1(self) -> int:
        if self.is_zero():
            raise ValueError("mindeg1 of the zero vector is undefined")
        return min(lam.pi_degree() for lam in self._terms)

    def ell1(self) -> int:
        lowest = self.mindeg1()
        return max(len(lam) for lam in self._terms if lam.pi_degree() == lowest)

    def is_scalar_multiple_of_generator(self) -> bool:
        """True for nonzero p w' with p in S(Z)/I"""
        return bool(self._terms) and set(self._terms) == {NULL_PARTITION}

    def __repr__(self):
        return f"ModuleVector({format_vector(self)})"


def format_vector(v: ModuleVector) -> str:
    if v.is_zero():
        return "0"
    pieces = []
    for lam, coeff in v.items():
        basis = f"{format_monomial(lam)} w'" if lam else "w'"
        if coeff == 1:
            pieces.append(basis)
        elif coeff == -1:
            pieces.append(f"-{basis}")
        else:
            pieces.append(f"{format_coefficient(coeff)} {basis}")
    return " + ".join(pieces).replace("+ -", "- ")


def project(v: ModuleVector, target: Ideal) -> ModuleVector:
    """Canonical map L_(phi,I) -> L_(phi,J) for I contained in J"""
    if not target.contains_ideal(v.ideal):
        raise ValueError(f"Ideal {v.ideal} is not contained in {target}")
    return ModuleVector(v.terms, target)


@dataclass
class WhittakerCheck:
    passed: bool
    witness: Optional[QDegree] = None
    defect: Optional[ModuleVector] = None
    checked: int = 0

    def __bool__(self):
        return self.passed


@dataclass
class SolverResult:
    basis: List[ModuleVector]
    candidates: List[Partition]
    rows: int
    truncation: Truncation
    cutoff: Cutoff


class DescentStep(NamedTuple):
    generator: QDegree
    mindeg1: int
    ell1: int
    vector: ModuleVector


class DescentResult(NamedTuple):
    vector: ModuleVector
    steps: List[DescentStep]


class DescentError(RuntimeError):
    """Descent stopped without reaching a Whittaker vector"""

    def __init__(self, message: str, reason: str, trace: List[DescentStep]):
        super().__init__(message)
        self.reason = reason
        self.trace = trace


@dataclass
class WhittakerModule:
    """L_(phi,I) = M_phi / I M_phi with basis x_lambda w', lambda over non-central b_- parts"""
    character: Character
    ideal: Ideal = field(default_factory=Ideal.zero)

    def whittaker_generator(self, coeff=1) -> ModuleVector:
        return self.basis_vector(NULL_PARTITION, coeff)

    def basis_vector(self, lam, coeff=1) -> ModuleVector:
        return ModuleVector({Partition(lam): coeff}, self.ideal)

    def vector(self, terms: Mapping) -> ModuleVector:
        return ModuleVector(terms, self.ideal)

    def _check_vector(self, v: ModuleVector):
        if v.ideal != self.ideal:
            raise ValueError(f"Vector lives over {v.ideal}, module over {self.ideal}")

    def evaluate(self, u: UEAElement) -> ModuleVector:
        """u w'"""
        result: Dict = {}
        for lam, coeff in phi_component(u, self.character).terms.items():
            _reduced_add(result, lam, self.ideal.reduce(coeff))
        return ModuleVector._from_reduced(result, self.ideal)

    def act_elem(self, u: UEAElement, v: ModuleVector) -> ModuleVector:
        """u v, term by term through u x_mu w'"""
        self._check_vector(v)
        result: Dict = {}
        for mu, p in v.terms.items():
            product = multiply(u, UEAElement._from_normal_form({mu: ONE_POLY}))
            for lam, coeff in phi_component(product, self.character).terms.items():
                _reduced_add(result, lam, self.ideal.reduce(coeff * p))
        return ModuleVector._from_reduced(result, self.ideal)

    def act(self, x, v: ModuleVector) -> ModuleVector:
        return self.act_elem(UEAElement.generator(x), v)

    def defect(self, x, v: ModuleVector) -> ModuleVector:
        """x v - phi(x) v for x in n"""
        x = require_generator(x)
        if not is_in_n(x):
            raise ValueError(f"Defect needs a generator of n, got {x!r}")
        return self.act(x, v) - v.scale(self.character.evaluate(x))

    def whittaker_check(self, v: ModuleVector, cutoff: Cutoff) -> WhittakerCheck:
        """First generator in Q order with a nonzero defect, if any"""
        checked = 0
        for x in Cutoff(*cutoff).generators():
            checked += 1
            d = self.defect(x, v)
            if d:
                return WhittakerCheck(False, x, d, checked)
        return WhittakerCheck(True, checked=checked)

    def is_whittaker(self, v: ModuleVector, cutoff: Cutoff) -> bool:
        return self.whittaker_check(v, cutoff).passed

    def candidate_partitions(self, truncation: Truncation) -> List[Partition]:
        truncation = Truncation(*truncation)
        gens = b_minus_generators(truncation.pi_min, truncation.part_i_max)
        candidates = []
        for length in range(truncation.len_max + 1):
            for combo in combinations_with_replacement(gens, length):
                lam = Partition.trusted(combo)
                if lam.pi_degree() >= truncation.pi_min:
                    candidates.append(lam)
        return candidates

    def solve_system(self, truncation: Truncation, cutoff: Cutoff) -> SolverResult:
        """Kernel of the defect map on span{x_lambda w' : lambda a candidate}, at cutoff"""
        truncation = Truncation(*truncation)
        cutoff = Cutoff(*cutoff)
        if cutoff.i_max is None:
            cutoff = Cutoff(cutoff.sum_max, default_i_max(truncation))
        if not self.ideal.is_linear():
            raise ValueError(f"Solver needs an ideal (z - c), got {self.ideal}")

        candidates = self.candidate_partitions(truncation)
        if not candidates:
            raise ValueError(f"Empty candidate set for truncation {tuple(truncation)}")
        if cutoff.sum_max < 2 + (1 - truncation.pi_min):
            logger.warning(
                f"sum_max={cutoff.sum_max} is below the sufficient bound {3 - truncation.pi_min} "
                f"for pi_min={truncation.pi_min}"
            )

        # One row per (generator, output monomial), sorted before elimination
        rows: Dict[Tuple, Dict[int, object]] = {}
        for x in cutoff.generators():
            for col, lam in enumerate(candidates):
                for mu, coeff in self.defect(x, self.basis_vector(lam)).terms.items():
                    rows.setdefault((x, monomial_key(mu)), {})[col] = coeff.constant_term()
        ordered = [rows[key] for key in sorted(rows)]
        matrix = RationalMatrix.from_sparse_rows(ordered, len(candidates))
        logger.info(f"Solver system: {matrix.rows} rows, {matrix.cols} candidates")

        basis = [
            self.vector({lam: value for lam, value in zip(candidates, row) if value})
            for row in kernel_basis(matrix)
        ]
        logger.info(f"Whittaker solution space at cutoff {tuple(cutoff)} has dimension {len(basis)}")
        return SolverResult(basis, candidates, matrix.rows, truncation, cutoff)

    def solve_whittaker(self, truncation: Truncation, cutoff: Cutoff) -> List[ModuleVector]:
        return self.solve_system(truncation, cutoff).basis

    def descent(self, v: ModuleVector, cutoff: Cutoff, max_steps: int = DEFAULT_MAX_STEPS) -> DescentResult:
        """Replace v by a nonzero defect until every cutoff defect vanishes"""
        self._check_vector(v)
        if v.is_zero():
            raise ValueError("Descent needs a nonzero vector")

        current = v
        measure = (current.mindeg1(), current.ell1())
        trace: List[DescentStep] = []
        for step in range(max_steps + 1):
            check = self.whittaker_check(current, cutoff)
            if check.passed:
                logger.info(f"Descent reached a Whittaker vector after {step} steps")
                return DescentResult(current, trace)
            if step == max_steps:
                raise DescentError(f"No Whittaker vector within {max_steps} steps", "max_steps", trace)

            following = check.defect
            new_measure = (following.mindeg1(), following.ell1())
            # mindeg1 never drops; at equal mindeg1 the height ell1 must shrink
            if new_measure[0] < measure[0] or (new_measure[0] == measure[0] and new_measure[1] >= measure[1]):
                raise DescentError(
                    f"Measure went from {measure} to {new_measure} under {check.witness!r}",
                    "measure",
                    trace,
                )
            trace.append(DescentStep(check.witness, new_measure[0], new_measure[1], following))
            logger.debug(f"Descent step {step + 1}: {check.witness!r} gives measure {new_measure}")
            current, measure = following, new_measure

        raise DescentError(f"No Whittaker vector within {max_steps} steps", "max_steps", trace)


def sigma(i: int, s: int) -> QDegree:
    """sigma_i = (1-s-i, s+i), the h-generators used by the closed-form y_m-defect coefficients"""
    return QDegree(1 - s - i, s + i)


def _require_sigma_family(lam, s: int, n: int) -> Partition:
    if s < 1 or n < 0:
        raise ValueError(f"Family parameters need s >= 1 and n >= 0, got s={s}, n={n}")
    lam = Partition(lam)
    family = {sigma(i, s) for i in range(n + 1)}
    for part in lam:
        if part not in family:
            raise ValueError(f"Part {part!r} is not sigma_0..sigma_{n} for s={s}")
    return lam


def extended_partition(lam, a: int, s: int) -> Partition:
    """lambda^(a): lambda with one more copy of sigma_a"""
    return Partition(sorted(tuple(Partition(lam)) + (sigma(a, s),)))


def multiplicity_bump(lam, a: int, s: int) -> int:
    """d_a: copies of sigma_a in lambda^(a)"""
    return Partition(lam).multiplicity(sigma(a, s)) + 1


def eq_co_term(lam, j: int, m: int, s: int, n: int, b: Mapping, character: Character):
    """b_(lambda^(j)) * (-s-j) * d_j * c_(m+j+s-1)"""
    lam = _require_sigma_family(lam, s, n)
    if not 0 <= j <= n:
        raise ValueError(f"Summand index {j} outside 0..{n}")
    weight = to_fraction(b.get(extended_partition(lam, j, s), 0))
    if not weight:
        return weight
    return weight * (-s - j) * multiplicity_bump(lam, j, s) * character.line_value(m + j + s - 1)


def eq_co_coefficient(lam, m: int, s: int, n: int, b: Mapping, character: Character):
    """Coefficient of x_lambda w' in sum_a b_(lambda^(a)) (y_m - phi(y_m)) x_(lambda^(a)) w', closed form"""
    return sum((eq_co_term(lam, j, m, s, n, b, character) for j in range(n + 1)), to_fraction(0))


def engine_eq_co_coefficient(module: WhittakerModule, lam, m: int, s: int, n: int, b: Mapping):
    """Same coefficient read off the module action"""
    lam = _require_sigma_family(lam, s, n)
    v = module.vector({extended_partition(lam, a, s): b.get(extended_partition(lam, a, s), 0) for a in range(n + 1)})
    coeff = module.defect(QDegree(2 - m, m), v).coefficient(lam)
    if not coeff.is_constant():
        raise ArithmeticError(f"Coefficient {coeff} of x_lambda w' is not a rational")
    return coeff.constant_term()


def main():
    """Try out the action and the quadratic Whittaker vector"""
    module = WhittakerModule(Character.constant(1), Ideal.linear(1))
    alpha, beta = QDegree(0, 1), QDegree(-1, 2)
    quadratic = module.vector({(alpha, alpha): 4, (beta, beta): 1, (alpha, beta): -4})
    print("v =", format_vector(quadratic))
    print("x(2,0) v - v =", format_vector(module.defect((2, 0), quadratic)))
    print("Whittaker at (4,4):", module.is_whittaker(quadratic, Cutoff(4, 4)))


if __name__ == "__main__":
    main()
