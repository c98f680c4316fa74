"""
Universal enveloping algebra of the Block-type Lie algebra in PBW form.

Elements are finite sums of ordered monomials x_lambda with coefficients
in the polynomial ring of the central element z = x(1,0). Products are
brought to normal form by adjacent-transposition straightening.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, NamedTuple, Tuple

from lie_core import (
    CENTRAL,
    NULL_PARTITION,
    Partition,
    QDegree,
    as_degree,
    bracket_unchecked,
    is_central,
    is_in_b_minus,
    is_in_n,
    require_generator,
    star_power,
)

logger = logging.getLogger(__name__)


def to_fraction(value) -> Fraction:
    """Exact rational from int, Fraction or a 'p/q' string"""
    if isinstance(value, bool):
        raise ValueError(f"Not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"Not a rational number: {value!r}")
    raise ValueError(f"Not a rational number: {value!r}")


class CenterPoly:
    """Polynomial in z with exact rational coefficients, ascending powers"""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        coeffs = [to_fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(coeffs)
        self._hash = None

    @classmethod
    def _trusted(cls, coeffs: Tuple[Fraction, ...]) -> "CenterPoly":
        poly = object.__new__(cls)
        poly.coeffs = coeffs
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value) -> "CenterPoly":
        value = to_fraction(value)
        return cls._trusted((value,)) if value else ZERO_POLY

    @classmethod
    def monomial(cls, power: int, value=1) -> "CenterPoly":
        value = to_fraction(value)
        if not value:
            return ZERO_POLY
        return cls._trusted((Fraction(0),) * power + (value,))

    @classmethod
    def coerce(cls, value) -> "CenterPoly":
        if isinstance(value, CenterPoly):
            return value
        return cls.constant(value)

    @property
    def degree(self) -> int:
        """Degree in z; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CenterPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs == CenterPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            # constants hash like the rationals they compare equal to
            self._hash = hash(self.constant_term()) if len(self.coeffs) <= 1 else hash(self.coeffs)
        return self._hash

    def __add__(self, other):
        other = CenterPoly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        result = list(a)
        for k, c in enumerate(b):
            result[k] += c
        while result and result[-1] == 0:
            result.pop()
        return CenterPoly._trusted(tuple(result))

    __radd__ = __add__

    def __neg__(self):
        return CenterPoly._trusted(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-CenterPoly.coerce(other))

    def __rsub__(self, other):
        return CenterPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CenterPoly):
            value = to_fraction(other)
            if not value:
                return ZERO_POLY
            return CenterPoly._trusted(tuple(c * value for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        if len(b) == 1:
            return CenterPoly._trusted(tuple(c * b[0] for c in a))
        result = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                result[i + j] += ca * cb
        return CenterPoly._trusted(tuple(result))

    __rmul__ = __mul__

    def shift(self, power: int = 1) -> "CenterPoly":
        """Multiply by z**power"""
        if not self.coeffs or power == 0:
            return self
        return CenterPoly._trusted((Fraction(0),) * power + self.coeffs)

    def evaluate(self, value) -> Fraction:
        value = to_fraction(value)
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def remainder(self, modulus: "CenterPoly") -> "CenterPoly":
        """Remainder on division by a monic polynomial"""
        if modulus.is_zero():
            return self
        if modulus.coeffs[-1] != 1:
            raise ValueError(f"Modulus must be monic: {modulus}")
        d = modulus.degree
        if self.degree < d:
            return self
        result = list(self.coeffs)
        for top in range(len(result) - 1, d - 1, -1):
            lead = result[top]
            if lead:
                for k in range(d + 1):
                    result[top - d + k] -= lead * modulus.coeffs[k]
        result = result[:d]
        while result and result[-1] == 0:
            result.pop()
        return CenterPoly._trusted(tuple(result))

    def __repr__(self):
        return f"CenterPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            if power == 0:
                pieces.append(str(c))
            else:
                z = "z" if power == 1 else f"z^{power}"
                pieces.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(pieces).replace("+ -", "- ")


ZERO_POLY = CenterPoly._trusted(())
ONE_POLY = CenterPoly._trusted((Fraction(1),))
Z_POLY = CenterPoly._trusted((Fraction(0), Fraction(1)))


# Straightening kernel. Monomials are sorted tuples of non-central generators.
@lru_cache(maxsize=1 << 18)
def _insert(g: QDegree, mono: Tuple[QDegree, ...]) -> Tuple[Tuple[Tuple[QDegree, ...], CenterPoly], ...]:
    """Normal form of x_g * x_mono for a non-central generator g and sorted mono"""
    if not mono or not mono[0] < g:
        return (((g,) + mono, ONE_POLY),)

    head, rest = mono[0], mono[1:]
    result: Dict[Tuple[QDegree, ...], CenterPoly] = {}

    # g head rest = head (g rest) + [g, head] rest
    for inner, c_inner in _insert(g, rest):
        for outer, c_outer in _insert(head, inner):
            _accumulate(result, outer, c_inner * c_outer)

    term = bracket_unchecked(g, head)
    if term is not None:
        coefficient, target = term
        if target == CENTRAL:
            _accumulate(result, rest, Z_POLY * coefficient)
        else:
            for inner, c_inner in _insert(target, rest):
                _accumulate(result, inner, c_inner * coefficient)

    return tuple(result.items())


def _accumulate(terms: Dict, key, coeff: CenterPoly):
    if coeff.is_zero():
        return
    current = terms.get(key)
    if current is None:
        terms[key] = coeff
    else:
        total = current + coeff
        if total.is_zero():
            del terms[key]
        else:
            terms[key] = total


def _left_multiply(word: Iterable[QDegree], terms: Mapping) -> Dict:
    """Normal form of x_word * (sum of sorted monomials); word may hold central factors"""
    acc = dict(terms)
    for g in reversed(tuple(word)):
        if is_central(g):
            acc = {mono: coeff.shift(1) for mono, coeff in acc.items()}
            continue
        nxt: Dict = {}
        for mono, coeff in acc.items():
            for product, c in _insert(g, mono):
                _accumulate(nxt, product, coeff * c)
        acc = nxt
    return acc


def straightening_cache_info():
    return _insert.cache_info()


class UEAElement:
    """Finite sum of PBW monomials over S(Z), kept in canonical form"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping = None):
        canonical: Dict[Partition, CenterPoly] = {}
        for parts, coeff in (terms or {}).items():
            lam = parts if isinstance(parts, Partition) else Partition(parts)
            for part in lam:
                require_generator(part)
                if is_central(part):
                    raise ValueError(f"Central generator {part!r} belongs in the coefficient, not the monomial")
            _accumulate(canonical, lam, CenterPoly.coerce(coeff))
        self._terms = canonical
        self._hash = None

    @classmethod
    def _from_normal_form(cls, terms: Mapping) -> "UEAElement":
        element = object.__new__(cls)
        element._terms = {Partition.trusted(mono): coeff for mono, coeff in terms.items() if coeff}
        element._hash = None
        return element

    @classmethod
    def zero(cls) -> "UEAElement":
        return cls._from_normal_form({})

    @classmethod
    def one(cls) -> "UEAElement":
        return cls._from_normal_form({(): ONE_POLY})

    @classmethod
    def scalar(cls, coeff) -> "UEAElement":
        return cls._from_normal_form({(): CenterPoly.coerce(coeff)})

    @classmethod
    def generator(cls, x, coeff=1) -> "UEAElement":
        """The generator x(a,i) as an element; x(1,0) becomes the coefficient z"""
        x = require_generator(x)
        coeff = CenterPoly.coerce(coeff)
        if is_central(x):
            return cls._from_normal_form({(): coeff.shift(1)})
        return cls._from_normal_form({(x,): coeff})

    @classmethod
    def from_word(cls, word: Iterable, coeff=1) -> "UEAElement":
        """Normal form of an arbitrary product of generators"""
        word = [require_generator(g) for g in word]
        return cls._from_normal_form(_left_multiply(word, {(): CenterPoly.coerce(coeff)}))

    @property
    def terms(self) -> Dict[Partition, CenterPoly]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda item: monomial_key(item[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, parts) -> CenterPoly:
        return self._terms.get(Partition(parts), ZERO_POLY)

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "UEAElement") -> "UEAElement":
        terms = dict(self._terms)
        for lam, coeff in other._terms.items():
            _accumulate(terms, lam, coeff)
        return UEAElement._from_normal_form(terms)

    def __neg__(self):
        return UEAElement._from_normal_form({lam: -coeff for lam, coeff in self._terms.items()})

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return self + (-other)

    def scale(self, coeff) -> "UEAElement":
        """Multiply by a central coefficient (rational or CenterPoly)"""
        coeff = CenterPoly.coerce(coeff)
        return UEAElement._from_normal_form({lam: c * coeff for lam, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __repr__(self):
        return f"UEAElement({format_element(self)})"


def monomial_key(lam) -> Tuple:
    return (len(lam), tuple((part[0] + part[1], part[1]) for part in lam))


def format_monomial(lam) -> str:
    return "".join(f"x({part[0]},{part[1]})" for part in lam) or "1"


def format_coefficient(coeff: CenterPoly) -> str:
    text = str(coeff)
    return f"({text})" if len([c for c in coeff.coeffs if c]) > 1 else text


def format_element(u: UEAElement) -> str:
    if u.is_zero():
        return "0"
    pieces = []
    for lam, coeff in u.items():
        mono = format_monomial(lam)
        if coeff == 1:
            pieces.append(mono)
        elif coeff == -1:
            pieces.append(f"-{mono}")
        else:
            pieces.append(f"{format_coefficient(coeff)} {mono}" if lam else format_coefficient(coeff))
    return " + ".join(pieces).replace("+ -", "- ")


def multiply(u: UEAElement, v: UEAElement) -> UEAElement:
    """Product in U(B) brought to PBW normal form"""
    result: Dict = {}
    for lam, p in u._terms.items():
        for mono, c in _left_multiply(lam, v._terms).items():
            _accumulate(result, mono, p * c)
    return UEAElement._from_normal_form(result)


def power(u: UEAElement, k: int) -> UEAElement:
    if k < 0:
        raise ValueError(f"Negative power {k} is not defined in U(B)")
    result = UEAElement.one()
    for _ in range(k):
        result = multiply(result, u)
    return result


def lie_bracket(u: UEAElement, v: UEAElement) -> UEAElement:
    """Commutator uv - vu"""
    return multiply(u, v) - multiply(v, u)


def height(u: UEAElement) -> int:
    """Largest number of non-central factors in a term"""
    if u.is_zero():
        raise ValueError("Height of the zero element is undefined")
    return max(len(lam) for lam in u._terms)


def term_degree(lam, z_power: int) -> QDegree:
    """Q-degree of z**z_power * x_lambda"""
    return Partition.trusted(lam).degree().star(star_power(CENTRAL, z_power))


def grade_split(u: UEAElement) -> Dict[QDegree, UEAElement]:
    """Decompose into Q-homogeneous components"""
    components: Dict[QDegree, Dict] = {}
    for lam, coeff in u._terms.items():
        for power_, c in enumerate(coeff.coeffs):
            if not c:
                continue
            degree = term_degree(lam, power_)
            bucket = components.setdefault(degree, {})
            _accumulate(bucket, lam, CenterPoly.monomial(power_, c))
    return {degree: UEAElement._from_normal_form(terms) for degree, terms in sorted(components.items())}


def is_homogeneous(u: UEAElement) -> bool:
    return len(grade_split(u)) <= 1


def mindeg(u: UEAElement) -> QDegree:
    if u.is_zero():
        raise ValueError("mindeg of the zero element is undefined")
    return min(grade_split(u))


def mindeg1(u: UEAElement) -> int:
    """Least pi-value among the homogeneous components"""
    if u.is_zero():
        raise ValueError("mindeg1 of the zero element is undefined")
    return min(Partition.trusted(lam).pi_degree() for lam in u._terms)


class ExtractedTerm(NamedTuple):
    v: UEAElement
    w: QDegree
    source: Partition


class BracketDecomposition(NamedTuple):
    extracted: List[ExtractedTerm]
    remainder: UEAElement

    def recombine(self) -> UEAElement:
        total = self.remainder
        for term in self.extracted:
            total = total + multiply(term.v, UEAElement.generator(term.w))
        return total


def split_b_minus(lam) -> Tuple[Partition, Partition]:
    """Split a sorted monomial into its b_- prefix and n suffix"""
    cut = len(lam)
    for k, part in enumerate(lam):
        if is_in_n(part):
            cut = k
            break
    return Partition.trusted(lam[:cut]), Partition.trusted(lam[cut:])


def bracket_decompose(x, y: UEAElement) -> BracketDecomposition:
    """Write [x, y] as sum of v*w (w in n) plus a remainder in U(b_-), per term of y"""
    x = require_generator(x)
    if not is_in_n(x):
        raise ValueError(f"Generator {x!r} is not in n")
    for lam in y._terms:
        for part in lam:
            if not is_in_b_minus(part):
                raise ValueError(f"Element has a generator outside b_-: {part!r}")

    extracted: List[ExtractedTerm] = []
    remainder: Dict = {}
    x_element = UEAElement.generator(x)
    for lam in sorted(y._terms, key=monomial_key):
        term = UEAElement._from_normal_form({lam: y._terms[lam]})
        grouped: Dict[QDegree, Dict] = {}
        for mono, coeff in lie_bracket(x_element, term)._terms.items():
            b_part, n_part = split_b_minus(mono)
            if not n_part:
                _accumulate(remainder, mono, coeff)
                continue
            if len(n_part) > 1:
                raise ArithmeticError(f"Commutator term {mono!r} has more than one n-factor")
            _accumulate(grouped.setdefault(n_part[0], {}), b_part, coeff)
        for w in sorted(grouped):
            v = UEAElement._from_normal_form(grouped[w])
            if v:
                extracted.append(ExtractedTerm(v, w, lam))

    return BracketDecomposition(extracted, UEAElement._from_normal_form(remainder))


def phi_component(u: UEAElement, character) -> UEAElement:
    """Component in U(b_-) of u relative to U(B) = U(b_-) + I_phi"""
    result: Dict = {}
    for lam, coeff in u._terms.items():
        b_part, n_part = split_b_minus(lam)
        value = Fraction(1)
        for part in n_part:
            value *= character.evaluate(part)
            if not value:
                break
        if value:
            _accumulate(result, b_part, coeff * value)
    return UEAElement._from_normal_form(result)


def in_phi_kernel(u: UEAElement, character) -> bool:
    """u lies in I_phi exactly when its U(b_-) component vanishes"""
    return phi_component(u, character).is_zero()


def commutator_with_power(x, y, s: int) -> UEAElement:
    """[x, y**s] for generators x, y"""
    return lie_bracket(UEAElement.generator(x), power(UEAElement.generator(y), s))


def main():
    """Try out the straightening product"""
    a = UEAElement.generator((2, 0))
    b = UEAElement.generator((0, 1))
    print("x(2,0) * x(0,1) =", format_element(multiply(a, b)))
    print("x(0,1) * x(1,0) =", format_element(multiply(b, UEAElement.generator((1, 0)))))
    decomposition = bracket_decompose((2, 0), UEAElement.generator((-3, 2)))
    print("[x(2,0), x(-3,2)] remainder =", format_element(decomposition.remainder))
    print("cache:", straightening_cache_info())


if __name__ == "__main__":
    main()
