"""Acceptance criteria 1-11; the terminal summary prints one PASS/FAIL line per criterion."""

import random
import time
import xml.etree.ElementTree as ET
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from stemmodel.core import get_attribute
from stemmodel.errors import MathDomain, ParseError, UnknownElement
from stemmodel.expr import eval_expr, parse_expr, print_expr
from stemmodel.packs import eng_pack, math_pack
from stemmodel.packs.chem_pack import balance, elem_balance_matrix, parse_formula, parse_reaction
from stemmodel.packs.math_pack import derivative, integral, limit
from stemmodel.packs.phys_pack import BALL_ANIMATION, VERTICAL_VELOCITY, Ball, position, velocity
from stemmodel.registry import MODEL_IDS, load_model
from stemmodel.render import AnimationSpec, animate, frame_times, instance_diagram, narrative, to_svg, type_diagram
from stemmodel.render.diagrams import effective_instance_template
from stemmodel.template import Fn1, Fn2, K, apply_template, merge_templates

from test_expr import POINTS, exprs
from test_template import OBJ, function_free, same_structure, templates


def criterion(number, title):
    return pytest.mark.criterion(number, title)


# ------------------------------------------------------------------ 1


@criterion(1, "molar mass of FeCl2 is 127")
def test_c01_molar_mass():
    m = load_model("reactions")
    assert abs(get_attribute(m, "FeCl2", "molar_mass") - 127.0) <= 1e-9


# ------------------------------------------------------------------ 2


def compositions(n, max_sum):
    """All positive integer n-vectors with sum <= max_sum."""
    if n == 0:
        yield ()
        return
    for first in range(1, max_sum - (n - 1) + 1):
        for rest in compositions(n - 1, max_sum - first):
            yield (first,) + rest


def brute_force_minimal(ins, outs, max_sum=25):
    prob = elem_balance_matrix(ins, outs)
    hits = [c for c in compositions(len(prob.species), max_sum) if not any(prob.residual(c))]
    return list(min(hits, key=lambda c: (sum(c), c))) if hits else None


BALANCE_CASES = [
    ("NO2 -> NO3 + NO", [2, 1, 1]),
    ("H2 + O2 -> H2O", [2, 1, 2]),
    ("Fe + Cl2 -> FeCl2", [1, 1, 1]),
    ("CO2 + H2O -> C6H12O6 + O2", [6, 6, 1, 6]),
]


@criterion(2, "balancing matches brute force (sum <= 25), gcd 1, under 5 s")
@pytest.mark.parametrize("text,expected", BALANCE_CASES, ids=[t for t, _ in BALANCE_CASES])
def test_c02_balance_matches_brute_force(text, expected):
    r = parse_reaction(text)
    c = balance(r.ins, r.outs)
    assert c == expected
    assert c == brute_force_minimal(r.ins, r.outs)
    assert gcd(*c) == 1


@criterion(2, "balancing matches brute force (sum <= 25), gcd 1, under 5 s")
def test_c02_runtime():
    start = time.perf_counter()
    for text, _ in BALANCE_CASES:
        r = parse_reaction(text)
        balance(r.ins, r.outs)
    assert time.perf_counter() - start < 5.0


# ------------------------------------------------------------------ 3

KNOWN = [
    "2 H2 + O2 -> 2 H2O",
    "2 NO2 -> NO3 + NO",
    "Fe + Cl2 -> FeCl2",
    "6 CO2 + 6 H2O -> C6H12O6 + 6 O2",
    "CH4 + 2 O2 -> CO2 + 2 H2O",
    "2 C2H6 + 7 O2 -> 4 CO2 + 6 H2O",
    "N2 + 3 H2 -> 2 NH3",
    "4 Fe + 3 O2 -> 2 Fe2O3",
    "2 H2O2 -> 2 H2O + O2",
    "C3H8 + 5 O2 -> 3 CO2 + 4 H2O",
    "4 NH3 + 5 O2 -> 4 NO + 6 H2O",
    "2 Fe + 3 Cl2 -> 2 FeCl3",
    "H2 + Cl2 -> 2 HCl",
    "2 NO + O2 -> 2 NO2",
    "Fe2O3 + 3 CO -> 2 Fe + 3 CO2",
    "3 NO2 + H2O -> 2 HNO3 + NO",
    "4 HCl + O2 -> 2 H2O + 2 Cl2",
    "Fe3O4 + 4 H2 -> 3 Fe + 4 H2O",
    "CH4 + 4 Cl2 -> CCl4 + 4 HCl",
    "2 CO + O2 -> 2 CO2",
    "C2H5OH + 3 O2 -> 2 CO2 + 3 H2O",
]


def stripped_reactions(count, seed=11):
    """Known-balanced equations, coefficients dropped, species order shuffled."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        r = parse_reaction(KNOWN[k % len(KNOWN)])
        ins, outs = list(r.ins), list(r.outs)
        rng.shuffle(ins)
        rng.shuffle(outs)
        out.append((ins, outs))
    return out


@criterion(3, "matrix * c == 0 exactly for 40 stripped known reactions")
def test_c03_balance_matrix_identity():
    cases = stripped_reactions(40)
    assert len(cases) >= 20
    for ins, outs in cases:
        c = balance(ins, outs)
        assert all(isinstance(x, int) and x > 0 for x in c)
        prob = elem_balance_matrix(ins, outs)
        for row in prob.matrix:
            assert sum(int(a) * b for a, b in zip(row, c)) == 0


# ------------------------------------------------------------------ 4


@criterion(4, "table function and its inverse")
def test_c04_table_and_inverse():
    m = load_model("inverse")
    tf, inv = m.view("tf"), m.view("inv")
    assert tf.eval(1) == 10
    assert list(tf.domain) == [1, 2]
    assert list(inv.domain) == [10, 15]
    for x in tf.domain:
        assert inv.eval(tf.eval(x)) == x


# ------------------------------------------------------------------ 5


@criterion(5, "Bump(ShiftX(x^2, 3), 0, 5, 100) on a 50-point grid")
def test_c05_transforms():
    bumped = load_model("transforms").view("bumped")
    grid = [-1.0 + k * 7.0 / 49 for k in range(50)]
    assert any(x < 0 for x in grid) and any(x > 5 for x in grid)
    for x in grid + [0.0, 5.0]:
        expected = 100 if 0 <= x <= 5 else (x - 3) ** 2
        assert abs(bumped.eval(x) - expected) <= 1e-12


# ------------------------------------------------------------------ 6


@criterion(6, "gravity ball against closed form, derivative check, under 2 s")
def test_c06_kinematics():
    b = Ball(1.0, (0.25, 0.75), (3, 10), ((0, -9.8),))  # fresh subject so nothing is cached
    a, p0, v0 = (0.0, -9.8), tuple(b.p0), tuple(b.v0)
    start = time.perf_counter()
    for t in (0.5, 1, 2, 5, 10):
        p, v = position(b, t), velocity(b, t)
        want_p = [p0[i] + v0[i] * t + 0.5 * a[i] * t * t for i in range(2)]
        want_v = [v0[i] + a[i] * t for i in range(2)]
        for got, want in zip(tuple(p) + tuple(v), want_p + want_v):
            assert abs(got - want) <= 1e-6 * max(1.0, abs(want))
    h = 1e-4
    for t in (0.5, 1, 2, 5):
        dp = (position(b, t + h) - position(b, t - h)) / (2 * h)
        assert (dp - velocity(b, t)).norm() <= 1e-4
    assert time.perf_counter() - start < 2.0


# ------------------------------------------------------------------ 7


@criterion(7, "derivative, integral and limit of x^2")
def test_c07_calculus():
    sq = load_model("transforms").view("square")
    assert abs(derivative(sq)(5) - 10) <= 1e-6
    assert abs(integral(sq, 0)(3) - 9) <= 1e-9
    assert abs(limit(sq, 0)) <= 1e-6


# ------------------------------------------------------------------ 8


@criterion(8, "template engine contract and merge right-bias")
@settings(max_examples=100, deadline=None)
@given(templates, st.floats(0, 10, allow_nan=False))
def test_c08_template_properties(t, when):
    out = apply_template(t, OBJ, when)
    assert function_free(out)
    assert same_structure(out, t)
    assert apply_template(out, OBJ, when) == out


@criterion(8, "template engine contract and merge right-bias")
def test_c08_substitution_and_merge():
    reactions = load_model("reactions")
    assert apply_template({K.text: Fn1(lambda o: o.label)}, reactions.view("NO2")) == {K.text: "NO2"}
    ball = load_model("ball").view("b")
    assert apply_template({K.origin: Fn2(lambda o, t: [o.p_x(t), o.p_y(t)])}, ball, 0.0) == {K.origin: [0.0, 0.0]}
    assert merge_templates({"a": 1}, {"a": 2}) == {"a": 2}
    t = effective_instance_template(math_pack.functions_model(), "TableFunction")
    assert t[K.gradient_color] == "Maroon" and t[K.name] == "Circle"


# ------------------------------------------------------------------ 9


def _render_all(model_id):
    m = load_model(model_id)
    out = [to_svg(type_diagram(m)), to_svg(instance_diagram(m))]
    if model_id == "rov":
        out.append(to_svg(eng_pack.project_wireframe(m.view("rov"))))
    return out


@criterion(9, "deterministic, well-formed SVG and stable goldens")
@pytest.mark.parametrize("model_id", MODEL_IDS)
def test_c09_determinism(model_id):
    first, second = _render_all(model_id), _render_all(model_id)
    assert first == second
    for svg in first:
        ET.fromstring(svg)


@criterion(9, "deterministic, well-formed SVG and stable goldens")
def test_c09_goldens(golden):
    golden("functions_types.svg", to_svg(type_diagram(load_model("functions"))))
    golden("network_instances.svg", to_svg(instance_diagram(load_model("network"))))
    golden("rov_wireframe.svg", to_svg(eng_pack.project_wireframe(load_model("rov").view("rov"))))
    golden("network_narrative.txt", narrative(load_model("network")))


# ------------------------------------------------------------------ 10


def _seg_length(props):
    (x1, y1), (x2, y2) = props[K.point_list][0], props[K.point_list][-1]
    return ((x2 - x1) ** 2 + (y2 - y1) ** 2) ** 0.5


@criterion(10, "60 uniform frames, origin at p0, velocity vector vanishes at apex")
def test_c10_animation():
    b = load_model("ball").view("b")
    spec = AnimationSpec(b, (0, 10), 60, BALL_ANIMATION)
    times = frame_times(spec)
    assert len(times) == 60
    assert all(abs(t - k * 10 / 59) <= 1e-12 for k, t in enumerate(times))
    docs = animate(spec)
    assert len(docs) == 60
    (ball_shape,) = [e for e in docs[0].elements if e.id == "el-0"]
    assert ball_shape.center == tuple(b.p0)
    apex = b.v0[1] / 9.8
    arrow = BALL_ANIMATION[VERTICAL_VELOCITY]
    assert _seg_length(apply_template(arrow, b, apex)) < 1e-3 * _seg_length(apply_template(arrow, b, 0.0))


# ------------------------------------------------------------------ 11


@criterion(11, "expression round trip, formula counts, positioned parse errors")
@settings(max_examples=100, deadline=None)
@given(exprs)
def test_c11_expression_round_trip(e):
    back = parse_expr(print_expr(e))
    for x, t in POINTS:
        try:
            va = eval_expr(e, {"x": x, "t": t})
        except MathDomain:
            with pytest.raises(MathDomain):
                eval_expr(back, {"x": x, "t": t})
            continue
        assert abs(va - eval_expr(back, {"x": x, "t": t})) <= 1e-12 * max(1.0, abs(va))


@criterion(11, "expression round trip, formula counts, positioned parse errors")
@pytest.mark.parametrize(
    "text,counts",
    [
        ("H2O", {"H": 2, "O": 1}),
        ("FeCl2", {"Fe": 1, "Cl": 2}),
        ("C6H12O6", {"C": 6, "H": 12, "O": 6}),
        ("NO2", {"N": 1, "O": 2}),
    ],
)
def test_c11_formula_counts(text, counts):
    assert dict(parse_formula(text).formula) == counts


_junk = st.text(alphabet="HOClFeNC0123456789+->()^*/ xyz.,", max_size=20)


@criterion(11, "expression round trip, formula counts, positioned parse errors")
@settings(max_examples=300, deadline=None)
@given(_junk)
def test_c11_malformed_input_never_crashes(text):
    for parse in (parse_expr, parse_formula, parse_reaction):
        try:
            parse(text)
        except ParseError as e:
            assert 0 <= e.position <= len(text)
        except UnknownElement:
            pass


@criterion(11, "expression round trip, formula counts, positioned parse errors")
@pytest.mark.parametrize("text,offset", [("x +* 2", 3), ("sin(x", 5), ("2 ^", 3)])
def test_c11_positioned_expression_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.position == offset
