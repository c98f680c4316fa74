"""
Tests for the Whittaker module action, defects, the solver, closed-form
y_m-defect coefficients and descent
"""
import sys
import os
import random
from fractions import Fraction
from itertools import product

import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

from characters import Character, Ideal  # noqa: E402
from enveloping import CenterPoly, UEAElement, multiply, phi_component  # noqa: E402
from exact_linalg import RationalMatrix, rank  # noqa: E402
from lie_core import NULL_PARTITION, Partition, QDegree, b_minus_generators, is_central  # noqa: E402
from whittaker import (  # noqa: E402
    Cutoff,
    DescentError,
    ModuleVector,
    Truncation,
    WhittakerModule,
    default_i_max,
    engine_eq_co_coefficient,
    eq_co_coefficient,
    eq_co_term,
    extended_partition,
    format_vector,
    multiplicity_bump,
    project,
    sigma,
)

ONE = Character.constant(1)
FACTORIAL = Character.factorial()
ALPHA, BETA = QDegree(0, 1), QDegree(-1, 2)


def quadratic(ideal):
    return ModuleVector({(ALPHA, ALPHA): 4, (BETA, BETA): 1, (ALPHA, BETA): -4}, ideal)


def linear(ideal):
    return ModuleVector({(ALPHA,): 2, (BETA,): -1}, ideal)


def in_span(basis, target):
    """target lies in the span of basis (all vectors over one quotient)"""
    keys = sorted({lam for v in basis + [target] for lam in v.terms}, key=repr)

    def row(v):
        return [v.coefficient(lam).constant_term() for lam in keys]

    spanned = rank(RationalMatrix.from_rows([row(v) for v in basis], len(keys)))
    extended = rank(RationalMatrix.from_rows([row(v) for v in basis + [target]], len(keys)))
    return spanned == extended


def random_element(rng, max_terms=2, max_length=2, a_max=3, i_max=3):
    gens = [QDegree(a, i) for a in range(-a_max, a_max + 1) for i in range(i_max + 1) if not is_central((a, i))]
    total = UEAElement.zero()
    for _ in range(rng.randint(1, max_terms)):
        parts = sorted(rng.choice(gens) for _ in range(rng.randint(0, max_length)))
        total = total + UEAElement({tuple(parts): CenterPoly([rng.randint(-3, 3), rng.randint(-1, 1)])})
    return total


def random_vector(rng, ideal, pi_min=-2, part_i_max=2, max_terms=3, max_length=2):
    gens = b_minus_generators(pi_min, part_i_max)
    terms = {}
    while not terms:
        for _ in range(rng.randint(1, max_terms)):
            lam = Partition(sorted(rng.choice(gens) for _ in range(rng.randint(0, max_length))))
            if lam.pi_degree() >= pi_min:
                terms[lam] = rng.choice([-3, -2, -1, 1, 2, 3])
    return ModuleVector(terms, ideal)


# Action and defects

def test_act_examples():
    module = WhittakerModule(ONE, Ideal.linear(1))
    v = module.basis_vector([ALPHA])
    assert module.act((2, 0), v) == v - module.whittaker_generator()

    factorial = WhittakerModule(FACTORIAL, Ideal.linear(2))
    assert factorial.act((0, 2), factorial.whittaker_generator()) == factorial.whittaker_generator(2)


def test_generator_is_an_eigenvector():
    module = WhittakerModule(FACTORIAL, Ideal.zero())
    w = module.whittaker_generator()
    for x in Cutoff(5, 6).generators():
        assert module.act(x, w) == w.scale(FACTORIAL.evaluate(x))


def test_defect_examples():
    module = WhittakerModule(ONE, Ideal.linear(1))
    assert module.defect((2, 0), module.whittaker_generator()).is_zero()
    assert module.defect((2, 0), module.basis_vector([ALPHA])) == -module.whittaker_generator()
    assert module.defect((2, 0), linear(module.ideal)).is_zero()
    with pytest.raises(ValueError):
        module.defect((0, 1), module.whittaker_generator())


def test_is_whittaker_examples():
    module = WhittakerModule(ONE, Ideal.linear(1))
    assert module.is_whittaker(module.whittaker_generator(), Cutoff(8, 10))

    check = module.whittaker_check(module.basis_vector([ALPHA]), Cutoff(2, 0))
    assert not check.passed
    assert check.witness == (2, 0)
    assert check.defect == -module.whittaker_generator()


@pytest.mark.parametrize("ideal", [Ideal.linear(1), Ideal.linear(0)])
def test_quadratic_vector_is_whittaker(ideal):
    module = WhittakerModule(ONE, ideal)
    v = quadratic(ideal)
    assert module.defect((2, 0), v).is_zero()
    check = module.whittaker_check(v, Cutoff(8, 10))
    assert check.passed
    assert check.checked == 7 * 11
    assert module.is_whittaker(linear(ideal), Cutoff(8, 10))


def test_module_axiom():
    rng = random.Random(424242)
    for character, ideal in ((FACTORIAL, Ideal.linear(2)), (ONE, Ideal.zero())):
        module = WhittakerModule(character, ideal)
        for _ in range(40):
            u1, u2 = random_element(rng), random_element(rng)
            v = random_vector(rng, ideal, max_terms=3)
            assert module.act_elem(multiply(u1, u2), v) == module.act_elem(u1, module.act_elem(u2, v))


def test_center_acts_freely_or_by_scalar():
    rng = random.Random(5)
    z = UEAElement.scalar(CenterPoly([0, 1]))
    free = WhittakerModule(FACTORIAL, Ideal.zero())
    quotient = WhittakerModule(FACTORIAL, Ideal.linear(3))
    for _ in range(20):
        v = random_vector(rng, Ideal.zero())
        shifted = ModuleVector({lam: c.shift(1) for lam, c in v.terms.items()})
        assert free.act_elem(z, v) == shifted
        w = project(v, Ideal.linear(3))
        assert quotient.act_elem(z, w) == w.scale(3)


def test_defect_is_linear():
    rng = random.Random(99)
    module = WhittakerModule(FACTORIAL, Ideal.linear(2))
    for _ in range(30):
        u, v = random_vector(rng, module.ideal), random_vector(rng, module.ideal)
        a, b = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        x = rng.choice(Cutoff(4, 4).generators())
        combined = module.defect(x, u.scale(a) + v.scale(b))
        assert combined == module.defect(x, u).scale(a) + module.defect(x, v).scale(b)


def test_phi_component_acts_like_its_element():
    rng = random.Random(2718)
    for character in (ONE, FACTORIAL):
        module = WhittakerModule(character, Ideal.zero())
        w = module.whittaker_generator()
        for _ in range(200):
            u = random_element(rng, max_terms=3, max_length=3)
            assert module.act_elem(u, w) == module.act_elem(phi_component(u, character), w)


def test_forced_vanishing():
    module = WhittakerModule(FACTORIAL, Ideal.zero())
    for lam in module.candidate_partitions(Truncation(-2, 2, 2)):
        v = module.basis_vector(lam)
        for beta in Cutoff(7, 6).generators():
            if beta.pi() >= 2 - lam.pi_degree():
                assert module.defect(beta, v).is_zero()


# Solver

def test_good_character_has_only_scalar_whittaker_vectors():
    module = WhittakerModule(FACTORIAL, Ideal.linear(2))
    solution = module.solve_system(Truncation(-2, 3, 3), Cutoff(5, 8))
    assert len(solution.basis) == 1
    assert solution.basis[0] == module.whittaker_generator()
    assert solution.candidates[0] == NULL_PARTITION


def test_constant_character_has_extra_whittaker_vectors():
    module = WhittakerModule(ONE, Ideal.linear(1))
    cutoff = Cutoff(8, 10)
    basis = module.solve_whittaker(Truncation(0, 2, 2), cutoff)
    assert len(basis) >= 3
    for target in (module.whittaker_generator(), linear(module.ideal), quadratic(module.ideal)):
        assert in_span(basis, target)
    for v in basis:
        assert module.is_whittaker(v, cutoff)


def test_trivial_truncation():
    module = WhittakerModule(ONE, Ideal.linear(1))
    assert module.solve_whittaker(Truncation(0, 0, 0), Cutoff(4, 4)) == [module.whittaker_generator()]


def test_enlarging_the_cutoff_shrinks_the_solution_space():
    module = WhittakerModule(FACTORIAL, Ideal.linear(2))
    truncation = Truncation(-1, 2, 2)
    dimensions = [
        len(module.solve_whittaker(truncation, cutoff))
        for cutoff in (Cutoff(2, 0), Cutoff(2, 1), Cutoff(3, 2), Cutoff(4, 6))
    ]
    assert dimensions == sorted(dimensions, reverse=True)
    assert dimensions[-1] == 1


def test_solver_errors():
    with pytest.raises(ValueError):
        WhittakerModule(ONE, Ideal.zero()).solve_whittaker(Truncation(0, 1, 1), Cutoff(3, 3))
    with pytest.raises(ValueError):
        WhittakerModule(ONE, Ideal.principal(CenterPoly([1, 0, 1]))).solve_whittaker(Truncation(0, 1, 1), Cutoff(3, 3))
    with pytest.raises(ValueError):
        WhittakerModule(ONE, Ideal.linear(1)).solve_whittaker(Truncation(1, 1, 1), Cutoff(3, 3))


def test_default_i_max():
    assert default_i_max(Truncation(0, 2, 2)) == 12
    module = WhittakerModule(ONE, Ideal.linear(1))
    solution = module.solve_system(Truncation(0, 1, 1), Cutoff(3, None))
    assert solution.cutoff == (3, 6)


# Closed-form coefficients of y_m-defects

def test_eq_co_examples():
    s, n = 1, 1
    b = {extended_partition((), 0, s): 3, extended_partition((), 1, s): 5}
    assert eq_co_coefficient((), 1, s, n, b, ONE) == -3 - 2 * 5
    balanced = {extended_partition((), 0, s): -2, extended_partition((), 1, s): 1}
    assert eq_co_coefficient((), 1, s, n, balanced, ONE) == 0

    lam = (sigma(0, s),)
    b = {extended_partition(lam, 0, s): 7, extended_partition(lam, 1, s): 11}
    assert multiplicity_bump(lam, 0, s) == 2
    assert eq_co_coefficient(lam, 1, s, n, b, FACTORIAL) == -2 * 7 * 1 - 2 * 11 * 2
    assert eq_co_term(lam, 1, 1, s, n, b, FACTORIAL) == -2 * 11 * 2

    assert eq_co_coefficient(lam, 3, s, n, {}, FACTORIAL) == 0


def test_eq_co_rejects_other_partitions():
    with pytest.raises(ValueError):
        eq_co_coefficient(((2, 0),), 1, 1, 1, {}, ONE)
    with pytest.raises(ValueError):
        eq_co_coefficient((sigma(3, 1),), 1, 1, 2, {}, ONE)
    with pytest.raises(ValueError):
        eq_co_term((), 2, 1, 1, 1, {}, ONE)


def test_linear_vector_matches_eq_co_balance():
    s = 1
    assert sigma(0, s) == ALPHA and sigma(1, s) == BETA
    assert extended_partition((), 0, s) == (ALPHA,)


@pytest.mark.parametrize("character", [ONE, FACTORIAL])
def test_eq_co_formula_agrees_with_engine(character):
    rng = random.Random(1618)
    module = WhittakerModule(character, Ideal.zero())
    for s, n in product((1, 2), (1, 2)):
        family = [sigma(i, s) for i in range(n + 1)]
        partitions = [()] + [(p,) for p in family] + [tuple(sorted((p, q))) for p, q in product(family, repeat=2) if p <= q]
        for lam in partitions:
            b = {
                extended_partition(lam, a, s): Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                for a in range(n + 1)
            }
            for m in range(1, 5):
                assert engine_eq_co_coefficient(module, lam, m, s, n, b) == eq_co_coefficient(lam, m, s, n, b, character)


# Descent

def test_descent_on_whittaker_vectors():
    module = WhittakerModule(FACTORIAL, Ideal.linear(2))
    w = module.whittaker_generator()
    result = module.descent(w, Cutoff(8, 10))
    assert result.vector == w and result.steps == []
    assert module.descent(w.scale(5), Cutoff(8, 10)).vector == w.scale(5)


def test_descent_example():
    module = WhittakerModule(FACTORIAL, Ideal.linear(2))
    result = module.descent(module.basis_vector([(-1, 0)]), Cutoff(6, 8), 64)
    assert [step.generator for step in result.steps] == [(1, 1), (1, 1)]
    assert result.steps[0].vector == module.basis_vector([(0, 0)], -2)
    assert result.vector == module.whittaker_generator(4)


def test_descent_from_random_vectors():
    rng = random.Random(8128)
    module = WhittakerModule(FACTORIAL, Ideal.linear(2))
    for _ in range(50):
        start = random_vector(rng, module.ideal, pi_min=-2, part_i_max=2, max_terms=3)
        result = module.descent(start, Cutoff(6, 8), 64)
        assert result.vector.is_scalar_multiple_of_generator()
        # mindeg1 never decreases along the walk; ell1 drops when it stays put
        measures = [(start.mindeg1(), start.ell1())] + [(step.mindeg1, step.ell1) for step in result.steps]
        for before, after in zip(measures, measures[1:]):
            assert after[0] > before[0] or (after[0] == before[0] and after[1] < before[1])


def test_descent_errors(monkeypatch):
    module = WhittakerModule(FACTORIAL, Ideal.linear(2))
    with pytest.raises(ValueError):
        module.descent(ModuleVector.zero(module.ideal), Cutoff(6, 8))

    with pytest.raises(DescentError) as excinfo:
        module.descent(module.basis_vector([(-1, 0)]), Cutoff(6, 8), 1)
    assert excinfo.value.reason == "max_steps"
    assert len(excinfo.value.trace) == 1

    monkeypatch.setattr(ModuleVector, "mindeg1", lambda self: 0)
    monkeypatch.setattr(ModuleVector, "ell1", lambda self: 1)
    with pytest.raises(DescentError) as excinfo:
        module.descent(module.basis_vector([(-1, 0)]), Cutoff(6, 8))
    assert excinfo.value.reason == "measure"


# Vectors

def test_vector_statistics():
    ideal = Ideal.zero()
    v = ModuleVector({((-1, 0),): 1, ((0, 1), (0, 1)): 2, ((-1, 1),): 3}, ideal)
    assert v.mindeg1() == -2
    assert v.ell1() == 1
    assert v.mindeg() == (-1, 0)
    assert v.ell() == 1
    with pytest.raises(ValueError):
        ModuleVector.zero().mindeg1()


def test_vector_validation():
    with pytest.raises(ValueError):
        ModuleVector({((2, 0),): 1})
    with pytest.raises(ValueError):
        ModuleVector({((1, 0),): 1})
    with pytest.raises(ValueError):
        ModuleVector({}, Ideal.zero()) + ModuleVector({}, Ideal.linear(1))


def test_coefficients_reduce_modulo_the_ideal():
    v = ModuleVector({(): CenterPoly([0, 0, 1])}, Ideal.linear(3))
    assert v == ModuleVector({(): 9}, Ideal.linear(3))
    assert ModuleVector({(): CenterPoly([-3, 1])}, Ideal.linear(3)).is_zero()


def test_project():
    v = ModuleVector({((0, 1),): CenterPoly([1, 1]), (): CenterPoly([0, 2])})
    projected = project(v, Ideal.linear(2))
    assert projected == ModuleVector({((0, 1),): 3, (): 4}, Ideal.linear(2))
    with pytest.raises(ValueError):
        project(projected, Ideal.linear(1))


def test_format_vector():
    assert format_vector(quadratic(Ideal.linear(1))) == "4 x(0,1)x(0,1) w' - 4 x(0,1)x(-1,2) w' + x(-1,2)x(-1,2) w'"
    assert format_vector(ModuleVector.zero()) == "0"
    assert format_vector(ModuleVector({(): -1})) == "-w'"
