import random

import pytest
from sympy import Matrix, Rational, diff, symbols, sympify

from degloci.circuit import (
    CircuitBuilder,
    PolynomialParser,
    RingPoint,
    compile_polynomials,
    derivative_name,
    determinant_circuit,
    differentiate,
    evaluate,
    inline,
    jacobian_evaluate,
    parse_polynomial,
    substitute_linear,
    value_and_jacobian,
)
from degloci.errors import ParseError, ProblemError
from degloci.upoly.fields import QQ_FIELD, PrimeField, rational

VARS = ("X1", "X2", "X3")


def at(*values):
    return RingPoint.rational(QQ_FIELD, values)


def test_evaluate_sphere():
    circuit = parse_polynomial("X1^2+X2^2+X3^2-1", VARS)
    assert evaluate(circuit, at(1, 0, 0)) == [rational(0)]
    assert evaluate(circuit, at(1, 2, 3)) == [rational(13)]


@pytest.mark.parametrize(
    "text,point,expected",
    [
        ("X1/2 + 3/4", (1, 0, 0), "5/4"),
        ("1e-6*X1", (2, 0, 0), "1/500000"),
        ("X1**3 - -X2", (2, 5, 0), "13"),
        ("(X1+X2)*(X1-X2)", (3, 1, 0), "8"),
        ("0.25*X3^2", (0, 0, 2), "1"),
    ],
)
def test_parser_arithmetic(text, point, expected):
    circuit = parse_polynomial(text, VARS)
    assert evaluate(circuit, at(*point)) == [rational(expected)]


def test_evaluate_modulo_prime():
    circuit = parse_polynomial("X1^2+X2^2+X3^2-1", VARS)
    point = RingPoint.rational(PrimeField(7), [3, 0, 0])
    assert evaluate(circuit, point) == [1]


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("X1 + * X2", 1, 6),
        ("X1/X2", 1, 4),
        ("X1 + X4", 1, 6),
        ("X1^X2", 1, 4),
        ("(X1+1", 1, 6),
        ("X1/0", 1, 4),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, VARS)
    assert (err.value.line, err.value.column) == (line, column)


def test_parse_error_offset_into_file():
    parser = PolynomialParser(CircuitBuilder(3), VARS)
    with pytest.raises(ParseError) as err:
        parser.parse("X1 $", 3, 10)
    assert (err.value.line, err.value.column) == (3, 13)
    assert str(err.value).startswith("3:13:")


def test_unknown_group_name_rejected():
    with pytest.raises(ProblemError):
        compile_polynomials(VARS, {"f": "X1"}, equations=["g"])


def test_degree_bounds():
    circuit = compile_polynomials(VARS, {"f": "X1^2*X2", "g": "X3 + 1"})
    assert circuit.degree_of("f") == 3
    assert circuit.degree_of("g") == 1
    assert circuit.degree == 3


def test_shared_gates():
    circuit = compile_polynomials(VARS, {"f": "X1*X2 + 1", "g": "X1*X2 + 1"})
    assert circuit.node("f") == circuit.node("g")


def test_jacobian_of_sphere():
    circuit = parse_polynomial("X1^2+X2^2+X3^2-1", VARS, name="G")
    assert jacobian_evaluate(circuit, at(1, 2, 3), ["G"]) == [[rational(2), rational(4), rational(6)]]


def test_differentiate_matches_sympy():
    text = "X1^2*X2 - 3*X2*X3 + X3^3/2"
    circuit = differentiate(parse_polynomial(text, VARS, name="f"), ["f"])
    x1, x2, x3 = symbols("X1 X2 X3")
    expr = x1**2 * x2 - 3 * x2 * x3 + x3**3 / 2
    point = {x1: 2, x2: -1, x3: 3}
    names = [derivative_name("f", j) for j in range(3)]
    values = evaluate(circuit, at(2, -1, 3), names)
    expected = [rational(Rational(diff(expr, v).subs(point))) for v in (x1, x2, x3)]
    assert values == expected


def test_determinant_circuit_matches_sympy():
    circuit = compile_polynomials(
        VARS, {"a": "X1", "b": "X2^2", "c": "X1*X3", "d": "X2 - X3"}
    )
    circuit = determinant_circuit(circuit, [["a", "b", 1], ["c", "d", 2], [3, "a", "b"]], "det")
    x1, x2, x3 = symbols("X1 X2 X3")
    m = Matrix([[x1, x2**2, 1], [x1 * x3, x2 - x3, 2], [3, x1, x2**2]])
    value = m.det().subs({x1: 2, x2: -3, x3: 5})
    assert evaluate(circuit, at(2, -3, 5), ["det"]) == [rational(Rational(value))]


def test_determinant_of_non_square_view():
    circuit = compile_polynomials(VARS, {"a": "X1"})
    with pytest.raises(ProblemError):
        determinant_circuit(circuit, [["a", 1]], "det")


def test_substitute_linear():
    circuit = compile_polynomials(("X1", "X2"), {"f": "X1*X2"})
    changed = substitute_linear(circuit, [[1, 1], [1, -1]])
    assert evaluate(changed, at(3, 1), ["f"]) == [rational(8)]


def test_substitute_linear_with_shift():
    circuit = compile_polynomials(("X1",), {"f": "X1^2"})
    changed = substitute_linear(circuit, [[2]], shift=[1])
    assert evaluate(changed, at(3), ["f"]) == [rational(49)]


def test_inline_reads_given_inputs():
    inner = compile_polynomials(("X1", "X2"), {"f": "X1*X2 + 1"})
    builder = CircuitBuilder(1)
    t = builder.input(0)
    remap = inline(builder, inner, [t, t])
    builder.output("g", remap[inner.node("f")])
    circuit = builder.build()
    assert evaluate(circuit, at(5), ["g"]) == [rational(26)]


def test_inline_input_count():
    inner = compile_polynomials(("X1", "X2"), {"f": "X1"})
    builder = CircuitBuilder(1)
    with pytest.raises(ProblemError):
        inline(builder, inner, [builder.input(0)])


P = 1000003


def random_polynomial(rng):
    """A random sum of products of small monomials with rational coefficients."""

    def monomial():
        coefficient = f"{rng.randint(-9, 9) or 1}/{rng.randint(1, 7)}"
        factors = [f"{v}^{e}" for v in VARS if (e := rng.randint(0, 2))]
        return "*".join([coefficient, *factors])

    def block():
        return " + ".join(monomial() for _ in range(rng.randint(1, 3)))

    return " + ".join(f"({block()})*({block()})" for _ in range(rng.randint(1, 3)))


def to_prime_field(value):
    q = rational(value)
    return int(q.numerator) * pow(int(q.denominator), -1, P) % P


@pytest.mark.parametrize("seed", range(8))
def test_random_circuit_agrees_over_qq_and_fp(seed):
    rng = random.Random(seed)
    circuit = parse_polynomial(random_polynomial(rng), VARS, name="f")
    values = [rng.randint(-5, 5) for _ in VARS]
    exact = evaluate(circuit, at(*values), ["f"])[0]
    modular = evaluate(circuit, RingPoint.rational(PrimeField(P), values), ["f"])[0]
    assert modular == to_prime_field(exact)


@pytest.mark.parametrize("seed", range(8))
def test_value_and_jacobian_match_sympy(seed):
    rng = random.Random(100 + seed)
    text = random_polynomial(rng)
    circuit = parse_polynomial(text, VARS, name="f")
    x = symbols("X1 X2 X3")
    expr = sympify(text.replace("^", "**"), locals=dict(zip(VARS, x)))
    values = [rng.randint(-4, 4) for _ in VARS]
    substitution = dict(zip(x, values))
    value, jacobian = value_and_jacobian(circuit, at(*values), ["f"])
    assert value == [rational(Rational(expr.subs(substitution)))]
    assert jacobian == [[rational(Rational(diff(expr, v).subs(substitution))) for v in x]]


def test_value_and_jacobian_along_directions():
    circuit = parse_polynomial("X1^2*X2 + X3", VARS, name="f")
    _, jacobian = value_and_jacobian(circuit, at(1, 2, 3), ["f"], directions=[[1, 1, 0], [0, 0, 2]])
    # grad f = (4, 1, 1)
    assert jacobian == [[rational(5), rational(2)]]
