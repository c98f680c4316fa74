"""
JSON codec for generators, partitions, polynomials, elements, vectors,
characters and ideals. Rationals travel as strings; output is deterministic.
"""
import json
import logging
from fractions import Fraction
from typing import Any, Dict, List

from characters import Character, Ideal
from config import CHARACTER_KINDS, IDEAL_KINDS
from enveloping import CenterPoly, UEAElement, to_fraction
from lie_core import Partition, QDegree, is_central, require_generator
from whittaker import ModuleVector

logger = logging.getLogger(__name__)


class SchemaError(ValueError):
    """Malformed JSON input, located by a path such as terms[1].monomial[0]"""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '$'}: {message}")
        self.path = path or "$"


def _child(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _require(data, kind, path: str, what: str):
    if not isinstance(data, kind) or isinstance(data, bool):
        raise SchemaError(path, f"expected {what}, got {json.dumps(data)}")
    return data


def _field(data: Dict, key: str, path: str):
    if key not in data:
        raise SchemaError(path, f"missing key '{key}'")
    return data[key]


def loads(text: str, path: str = "") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(path, f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")


def dumps(data: Any) -> str:
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2)


def rational_to_json(value) -> str:
    return str(to_fraction(value))


def rational_from_json(data, path: str = "") -> Fraction:
    if isinstance(data, bool) or not isinstance(data, (str, int)):
        raise SchemaError(path, f"expected a rational string, got {json.dumps(data)}")
    try:
        return to_fraction(data)
    except ValueError:
        raise SchemaError(path, f"not a rational number: {json.dumps(data)}")


def generator_from_json(data, path: str = "") -> QDegree:
    _require(data, list, path, "a generator [a, i]")
    if len(data) != 2:
        raise SchemaError(path, f"generator needs two entries, got {len(data)}")
    for k, entry in enumerate(data):
        _require(entry, int, _child(path, k), "an integer")
    try:
        return require_generator(tuple(data))
    except ValueError as e:
        raise SchemaError(path, str(e))


def generator_to_json(x) -> List[int]:
    return [x[0], x[1]]


def partition_from_json(data, path: str = "") -> Partition:
    _require(data, list, path, "a partition (array of generators)")
    parts = []
    for k, entry in enumerate(data):
        part = generator_from_json(entry, _child(path, k))
        if is_central(part):
            raise SchemaError(_child(path, k), "central generator [1, 0] belongs in the coefficient")
        if parts and part < parts[-1]:
            raise SchemaError(_child(path, k), f"partition is not sorted: {part!r} follows {parts[-1]!r}")
        parts.append(part)
    return Partition.trusted(tuple(parts))


def partition_to_json(lam) -> List[List[int]]:
    return [generator_to_json(part) for part in lam]


def poly_from_json(data, path: str = "") -> CenterPoly:
    _require(data, list, path, "a polynomial (array of rational strings)")
    return CenterPoly([rational_from_json(c, _child(path, k)) for k, c in enumerate(data)])


def poly_to_json(poly: CenterPoly) -> List[str]:
    return [str(c) for c in poly.coeffs]


def _terms_to_json(items) -> List[Dict]:
    return [{"coeff": poly_to_json(c), "monomial": partition_to_json(lam)} for lam, c in items]


def element_from_json(data, path: str = "") -> UEAElement:
    """Element from terms carrying a sorted "monomial" or an arbitrary "word" product"""
    _require(data, dict, path, "an element object")
    terms_path = _child(path, "terms")
    terms = _require(_field(data, "terms", path), list, terms_path, "an array of terms")
    total = UEAElement.zero()
    for k, term in enumerate(terms):
        term_path = _child(terms_path, k)
        _require(term, dict, term_path, "a term object")
        coeff = poly_from_json(_field(term, "coeff", term_path), _child(term_path, "coeff"))
        if "monomial" in term and "word" in term:
            raise SchemaError(term_path, "use either 'monomial' or 'word', not both")
        if "word" in term:
            word_path = _child(term_path, "word")
            word = _require(term["word"], list, word_path, "an array of generators")
            gens = [generator_from_json(g, _child(word_path, j)) for j, g in enumerate(word)]
            total = total + UEAElement.from_word(gens, coeff)
        else:
            lam = partition_from_json(_field(term, "monomial", term_path), _child(term_path, "monomial"))
            total = total + UEAElement({lam: coeff})
    return total


def element_to_json(u: UEAElement) -> Dict:
    return {"terms": _terms_to_json(u.items())}


def ideal_from_json(data, path: str = "") -> Ideal:
    _require(data, dict, path, "an ideal object")
    kind = _field(data, "kind", path)
    if kind not in IDEAL_KINDS:
        raise SchemaError(_child(path, "kind"), f"unknown ideal kind {json.dumps(kind)}, expected one of {IDEAL_KINDS}")
    if kind == "zero":
        return Ideal.zero()
    monic_path = _child(path, "monic")
    poly = poly_from_json(_field(data, "monic", path), monic_path)
    if poly.is_zero() or poly.coeffs[-1] != 1:
        raise SchemaError(monic_path, f"generator must be monic, got {poly}")
    return Ideal(poly)


def ideal_to_json(ideal: Ideal) -> Dict:
    if ideal.is_zero():
        return {"kind": "zero"}
    return {"kind": "principal", "monic": poly_to_json(ideal.generator)}


def vector_from_json(data, path: str = "", ideal: Ideal = None) -> ModuleVector:
    """Vector over its own "ideal" entry, or over the given ideal when the entry is absent"""
    _require(data, dict, path, "a vector object")
    if "ideal" in data:
        ideal = ideal_from_json(data["ideal"], _child(path, "ideal"))
    elif ideal is None:
        raise SchemaError(path, "missing key 'ideal'")
    terms_path = _child(path, "terms")
    terms = _require(_field(data, "terms", path), list, terms_path, "an array of terms")
    result = ModuleVector.zero(ideal)
    for k, term in enumerate(terms):
        term_path = _child(terms_path, k)
        _require(term, dict, term_path, "a term object")
        coeff = poly_from_json(_field(term, "coeff", term_path), _child(term_path, "coeff"))
        lam_path = _child(term_path, "monomial")
        lam = partition_from_json(_field(term, "monomial", term_path), lam_path)
        try:
            result = result + ModuleVector({lam: coeff}, ideal)
        except ValueError as e:
            raise SchemaError(lam_path, str(e))
    return result


def vector_to_json(v: ModuleVector) -> Dict:
    return {"ideal": ideal_to_json(v.ideal), "terms": _terms_to_json(v.items())}


def character_from_json(data, path: str = "") -> Character:
    _require(data, dict, path, "a character object")
    kind = _field(data, "kind", path)
    if kind not in CHARACTER_KINDS:
        raise SchemaError(_child(path, "kind"), f"unknown character kind {json.dumps(kind)}, expected one of {CHARACTER_KINDS}")

    def rational(key):
        return rational_from_json(_field(data, key, path), _child(path, key))

    def rationals(key):
        key_path = _child(path, key)
        values = _require(_field(data, key, path), list, key_path, "an array of rational strings")
        return [rational_from_json(v, _child(key_path, k)) for k, v in enumerate(values)]

    if kind == "constant":
        return Character.constant(rational("value"))
    if kind == "geometric":
        return Character.geometric(rational("c"), rational("q"))
    if kind == "polynomial":
        return Character.polynomial(rationals("coeffs"))
    if kind == "factorial":
        return Character.factorial()
    tail = rational("tail") if "tail" in data else 0
    return Character.explicit(rationals("values"), tail)


def character_to_json(character: Character) -> Dict:
    kind, params = character.kind, character.params
    if kind == "constant":
        return {"kind": kind, "value": str(params[0])}
    if kind == "geometric":
        return {"kind": kind, "c": str(params[0]), "q": str(params[1])}
    if kind == "polynomial":
        return {"kind": kind, "coeffs": [str(c) for c in params]}
    if kind == "factorial":
        return {"kind": kind}
    values, tail = params
    return {"kind": kind, "values": [str(v) for v in values], "tail": str(tail)}


def to_jsonable(value: Any) -> Any:
    """Report values to plain JSON types; rationals become canonical strings"""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, CenterPoly):
        return poly_to_json(value)
    if isinstance(value, Partition):
        return partition_to_json(value)
    if isinstance(value, QDegree):
        return generator_to_json(value)
    if isinstance(value, UEAElement):
        return element_to_json(value)
    if isinstance(value, ModuleVector):
        return vector_to_json(value)
    if isinstance(value, Character):
        return character_to_json(value)
    if isinstance(value, Ideal):
        return ideal_to_json(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"Cannot serialise {type(value).__name__}")
