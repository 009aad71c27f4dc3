import pytest
from hypothesis import given, settings, strategies as st

from stemmodel.errors import MathDomain, ParseError, UnboundVariable
from stemmodel.expr import (
    BUILTINS,
    Binary,
    Call,
    Const,
    Neg,
    Var,
    compile_expr,
    eval_expr,
    free_vars,
    parse_expr,
    print_expr,
)


def ev(text, **env):
    return eval_expr(parse_expr(text), env)


class TestParse:
    def test_power_node(self):
        assert parse_expr("x^2") == Binary("^", Var("x"), Const(2))

    def test_precedence(self):
        assert ev("2+3*4") == 14
        assert ev("2^3^2") == 512
        assert ev("(2^3)^2") == 64
        assert ev("10-4-3") == 3
        assert ev("16/4/2") == 2

    def test_unary_minus_binds_looser_than_power(self):
        assert ev("-2^2") == -4
        assert ev("(-2)^2") == 4
        assert ev("2^-1") == 0.5

    def test_zero_at_shift_point(self):
        assert ev("(x-3)^2", x=3) == 0

    def test_functions_and_literals(self):
        assert ev("sqrt(16) + abs(-2)") == 6
        assert ev("ln(exp(1.5))") == pytest.approx(1.5)
        assert ev("1.5e2") == 150.0
        assert ev("sin(0) + cos(0)") == 1.0
        assert ev("t*2", t=4) == 8

    @pytest.mark.parametrize(
        "text,offset",
        [("2+*3", 2), ("", 0), ("(x+1", 4), ("x+", 2), ("foo(x)", 0), ("y", 0), ("2 3", 2), ("0x1F", 1), ("1_000", 1)],
    )
    def test_positioned_errors(self, text, offset):
        with pytest.raises(ParseError) as info:
            parse_expr(text)
        assert info.value.position == offset
        assert f"offset {offset}" in str(info.value)

    def test_parse_error_is_value_error(self):
        with pytest.raises(ValueError):
            parse_expr("2+")


class TestEval:
    def test_square(self):
        assert ev("x^2", x=3) == 9
        assert ev("x^2", x=5) == 25

    @pytest.mark.parametrize(
        "text,x", [("1/x", 0), ("ln(x)", 0), ("ln(x)", -1), ("sqrt(x)", -1), ("x^0.5", -4), ("0^-1", 0), ("exp(x)", 1e6)]
    )
    def test_math_domain(self, text, x):
        with pytest.raises(MathDomain):
            ev(text, x=x)

    def test_negative_base_integer_exponent_is_fine(self):
        assert ev("x^3", x=-2) == -8

    def test_unbound(self):
        with pytest.raises(UnboundVariable):
            ev("x+t", x=1)

    def test_free_vars_and_compile(self):
        e = parse_expr("x*t + sin(x)")
        assert free_vars(e) == {"x", "t"}
        f = compile_expr(parse_expr("x^2+1"))
        assert f(3) == 10

    def test_purity(self):
        e = parse_expr("x^2 + 1")
        assert eval_expr(e, {"x": 2.5}) == eval_expr(e, {"x": 2.5})


class TestPrint:
    @pytest.mark.parametrize(
        "tree,text",
        [
            (Binary("^", Var("x"), Const(2)), "x^2"),
            (Neg(Binary("+", Var("x"), Const(1))), "-(x+1)"),
            (Binary("-", Var("x"), Binary("-", Var("x"), Const(1))), "x-(x-1)"),
            (Binary("^", Binary("^", Var("x"), Const(2)), Const(3)), "(x^2)^3"),
            (Binary("^", Var("x"), Binary("^", Const(2), Const(3))), "x^2^3"),
            (Binary("^", Neg(Var("x")), Const(2)), "(-x)^2"),
            (Binary("^", Var("x"), Neg(Const(1))), "x^-1"),
            (Binary("*", Const(2), Call("sin", Var("x"))), "2*sin(x)"),
        ],
    )
    def test_minimal_parens(self, tree, text):
        assert print_expr(tree) == text
        assert parse_expr(text) == tree or print_expr(parse_expr(text)) == text


# ------------------------------------------------------------------ random round trip

_leaf = st.one_of(
    st.integers(0, 9).map(Const),
    st.floats(0.1, 9.9, allow_nan=False).map(lambda v: Const(round(v, 3))),
    st.just(Var("x")),
    st.just(Var("t")),
)


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda a: Binary(*a)),
        st.tuples(st.sampled_from(sorted(BUILTINS)), children).map(lambda a: Call(*a)),
    )


exprs = st.recursive(_leaf, _extend, max_leaves=12)
POINTS = [(-2.5, 0.5), (-1.0, 2.0), (-0.3, -1.1), (0.0, 1.0), (0.4, 0.7), (1.0, 3.0), (1.7, -0.2), (2.2, 0.1), (3.1, 2.2), (5.0, -4.0)]


@settings(max_examples=100, deadline=None)
@given(exprs)
def test_round_trip_random_asts(e):
    back = parse_expr(print_expr(e))
    for x, t in POINTS:
        try:
            va = eval_expr(e, {"x": x, "t": t})
        except MathDomain:
            with pytest.raises(MathDomain):
                eval_expr(back, {"x": x, "t": t})
            continue
        vb = eval_expr(back, {"x": x, "t": t})
        assert abs(va - vb) <= 1e-12 * max(1.0, abs(va)), (print_expr(e), x, t)
