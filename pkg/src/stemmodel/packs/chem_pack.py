"""Elements, molecules, reactions and networks, with ILP reaction balancing.

The plain-data layer (:class:`Species`, :func:`parse_formula`,
:func:`balance`, ...) works without a model and backs the CLI. The concept
types at the bottom wrap the same functions for diagrams and narratives.

Balancing: the element balance matrix has one row per element (first
appearance order) and one column per species, reactants positive and
products negative. A coefficient vector ``c`` balances the reaction when
``matrix @ c == 0``. :func:`balance` returns the positive integer ``c``
with the smallest sum (ties: lexicographically smallest).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from ..core import (
    Bool,
    ComputedK,
    ConceptType,
    Float,
    FunctionDef,
    InstanceView,
    Int,
    ListOf,
    Model,
    RefTo,
    String,
    TupleOf,
)
from ..errors import Infeasible, ParseError, UnknownElement
from ..template import Fn1, K

COEFFICIENT_BOUND = 30

# standard atomic weights, g/mol
DEFAULT_MASSES: Mapping[str, float] = {
    "H": 1.008,
    "C": 12.011,
    "N": 14.007,
    "O": 15.999,
    "Cl": 35.45,
    "Fe": 55.845,
}

# the rounded values used by the FeCl2 example
TEXTBOOK_MASSES: Mapping[str, float] = {**DEFAULT_MASSES, "Fe": 56.0, "Cl": 35.5}

Formula = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Species:
    label: str
    formula: Formula

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class UnbalancedReaction:
    ins: tuple[Species, ...]
    outs: tuple[Species, ...]


@dataclass(frozen=True)
class BalanceProblem:
    elements: tuple[str, ...]
    species: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]  # rows = elements, columns = species

    def residual(self, coefficients: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * c for a, c in zip(row, coefficients)) for row in self.matrix)


# ------------------------------------------------------------------ element table


def load_element_table(path: str | Path) -> dict[str, float]:
    """Read ``Symbol Mass`` lines; ``#`` starts a comment."""
    table: dict[str, float] = {}
    for n, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not re.fullmatch(r"[A-Z][a-z]?", parts[0]):
            raise ParseError(f"{path}:{n}: expected 'Symbol Mass'", raw, 0)
        try:
            mass = float(parts[1])
        except ValueError:
            raise ParseError(f"{path}:{n}: bad mass {parts[1]!r}", raw, raw.index(parts[1])) from None
        if not mass > 0:
            raise ParseError(f"{path}:{n}: mass must be positive", raw, raw.index(parts[1]))
        table[parts[0]] = mass
    return table


# ------------------------------------------------------------------ parsing

_SYMBOL = re.compile(r"[A-Z][a-z]?")
_COUNT = re.compile(r"[1-9][0-9]*")


def parse_formula(text: str, table: Mapping[str, float] = DEFAULT_MASSES, _offset: int = 0) -> Species:
    """``(Symbol Count?)+``; repeated symbols are summed in first-appearance order."""
    full = text
    if not text:
        raise ParseError("empty formula", full, _offset)
    counts: dict[str, int] = {}
    pos = 0
    while pos < len(text):
        m = _SYMBOL.match(text, pos)
        if m is None:
            raise ParseError(f"expected an element symbol, found {text[pos]!r}", full, _offset + pos)
        sym = m.group()
        if sym not in table:
            raise UnknownElement(f"unknown element {sym!r} at offset {_offset + pos}")
        pos = m.end()
        n = 1
        if pos < len(text) and text[pos].isdigit():
            c = _COUNT.match(text, pos)
            if c is None:
                raise ParseError("atom count must be a positive integer", full, _offset + pos)
            n = int(c.group())
            pos = c.end()
        counts[sym] = counts.get(sym, 0) + n
    return Species(text, tuple(counts.items()))


_TERM = re.compile(r"\s*(?:(\d+)\s*)?(\S+)\s*")


def _parse_side(text: str, start: int, table: Mapping[str, float]) -> tuple[Species, ...]:
    out = []
    pos = 0
    for piece in text.split("+"):
        at = start + pos
        if not piece.strip():
            raise ParseError("missing species", text, at + len(piece))
        m = _TERM.fullmatch(piece)
        if m is None:
            bad = piece.strip()
            raise ParseError(f"malformed term {bad!r}", text, at + piece.index(bad))
        out.append(parse_formula(m.group(2), table, at + m.start(2)))
        pos += len(piece) + 1
    return tuple(out)


def parse_reaction(text: str, table: Mapping[str, float] = DEFAULT_MASSES) -> UnbalancedReaction:
    """``A + B -> C + D``; a leading integer coefficient on a term is accepted and ignored."""
    if "->" not in text:
        raise ParseError("expected '->' between reactants and products", text, len(text))
    arrow = text.index("->")
    if "->" in text[arrow + 2:]:
        raise ParseError("more than one '->'", text, text.index("->", arrow + 2))
    try:
        ins = _parse_side(text[:arrow], 0, table)
        outs = _parse_side(text[arrow + 2:], arrow + 2, table)
    except ParseError as e:
        raise ParseError(e.message, text, e.position) from None
    return UnbalancedReaction(ins, outs)


# ------------------------------------------------------------------ chemistry


def formula_of(m: Any) -> Formula:
    """Formula of a Species or of a Molecule instance view."""
    if isinstance(m, Species):
        return m.formula
    if isinstance(m, InstanceView):
        return tuple((el.name, n) for el, n in m.formula)
    raise TypeError(f"not a molecule: {m!r}")


def label_of(m: Any) -> str:
    if isinstance(m, Species):
        return m.label
    return computed_label(m)


def computed_label(m: Any) -> str:
    return "".join(sym if n == 1 else f"{sym}{n}" for sym, n in formula_of(m))


def molar_mass(m: Any, table: Mapping[str, float] | None = None) -> float:
    """Sum of count * atomic mass. Views carry their own element masses."""
    if isinstance(m, InstanceView):
        return sum(n * el.atomic_mass for el, n in m.formula)
    table = DEFAULT_MASSES if table is None else table
    return sum(n * table[sym] for sym, n in formula_of(m))


def elem_balance_matrix(ins: Sequence[Any], outs: Sequence[Any]) -> BalanceProblem:
    if not ins or not outs:
        raise ValueError("both sides of a reaction need at least one species")
    species = list(ins) + list(outs)
    formulas = [dict(formula_of(s)) for s in species]
    elements: dict[str, None] = {}
    for s in species:
        for sym, _ in formula_of(s):
            elements.setdefault(sym)
    signs = [1] * len(ins) + [-1] * len(outs)
    matrix = tuple(
        tuple(sign * f.get(e, 0) for f, sign in zip(formulas, signs)) for e in elements
    )
    return BalanceProblem(tuple(elements), tuple(label_of(s) for s in species), matrix)


def nullspace(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the rational nullspace, via exact reduced row echelon form."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(v)
    return basis


def primitive(v: Sequence[Fraction]) -> list[int]:
    """Smallest integer multiple of ``v`` with gcd 1 and the first nonzero entry positive."""
    scale = lcm(*(f.denominator for f in v)) if v else 1
    ints = [int(f * scale) for f in v]
    g = gcd(*ints) or 1
    ints = [i // g for i in ints]
    first = next((i for i in ints if i), 0)
    return [-i for i in ints] if first < 0 else ints


def branch_and_bound(matrix: Sequence[Sequence[int]], ncols: int, bound: int = COEFFICIENT_BOUND) -> list[int] | None:
    """Positive integer ``c`` (each <= bound) with ``matrix @ c == 0`` and minimal sum.

    Totals are tried in increasing order, so the first hit is sum-minimal;
    values are tried in increasing order, so it is also lexicographically
    smallest. A branch is cut when some element row can no longer reach
    zero: the unassigned columns each take at least 1, and the remaining
    budget can at most be spent on the most negative / most positive entry.
    """
    n = ncols
    rows = [list(r) for r in matrix]
    # suffix sums / minima / maxima of each row from column j on
    suf_sum = [[sum(r[j:]) for j in range(n + 1)] for r in rows]
    suf_min = [[min(r[j:], default=0) for j in range(n + 1)] for r in rows]
    suf_max = [[max(r[j:], default=0) for j in range(n + 1)] for r in rows]
    c = [0] * n

    def reachable(partial: list[int], j: int, budget: int) -> bool:
        extra = budget - (n - j)
        if extra < 0:
            return False
        for e, p in enumerate(partial):
            base = p + suf_sum[e][j]
            lo = base + extra * min(0, suf_min[e][j])
            hi = base + extra * max(0, suf_max[e][j])
            if not lo <= 0 <= hi:
                return False
        return True

    def dfs(j: int, budget: int, partial: list[int]) -> bool:
        if j == n - 1:
            if not 1 <= budget <= bound:
                return False
            if all(p + rows[e][j] * budget == 0 for e, p in enumerate(partial)):
                c[j] = budget
                return True
            return False
        for v in range(1, min(bound, budget - (n - j - 1)) + 1):
            nxt = [p + rows[e][j] * v for e, p in enumerate(partial)]
            if reachable(nxt, j + 1, budget - v):
                c[j] = v
                if dfs(j + 1, budget - v, nxt):
                    return True
        return False

    if n == 0:
        return None
    for total in range(n, n * bound + 1):
        if dfs(0, total, [0] * len(rows)):
            return list(c)
    return None


def balance(ins: Sequence[Any], outs: Sequence[Any], bound: int = COEFFICIENT_BOUND) -> list[int]:
    """Smallest positive integer coefficients, ordered ins then outs.

    The rational nullspace decides the shape of the problem first: an empty
    nullspace is infeasible outright; a one-dimensional one has a single
    primitive solution (LCM scaling); otherwise a branch and bound over
    coefficients in ``[1, bound]`` finds the minimal-sum vector.
    """
    prob = elem_balance_matrix(ins, outs)
    n = len(prob.species)
    basis = nullspace(prob.matrix, n)
    if not basis:
        raise Infeasible(f"no nonzero coefficients balance {' + '.join(prob.species)}")
    if len(basis) == 1:
        v = primitive(basis[0])
        if all(x > 0 for x in v):
            return v
        raise Infeasible("the only balancing coefficients are not all positive")
    found = branch_and_bound(prob.matrix, n, bound)
    if found is None:
        raise Infeasible(f"no positive integer coefficients <= {bound} balance the reaction")
    return found


def is_balanced(reactants: Sequence[tuple[int, Any]], products: Sequence[tuple[int, Any]]) -> bool:
    prob = elem_balance_matrix([m for _, m in reactants], [m for _, m in products])
    coeffs = [c for c, _ in reactants] + [c for c, _ in products]
    return all(r == 0 for r in prob.residual(coeffs))


def format_side(terms: Iterable[tuple[int, Any]]) -> str:
    return " + ".join(f"{c} {label_of(m)}" for c, m in terms)


def format_balanced(ins: Sequence[Any], outs: Sequence[Any], coefficients: Sequence[int]) -> str:
    if len(coefficients) != len(ins) + len(outs):
        raise ValueError("need one coefficient per species")
    k = len(ins)
    return f"{format_side(zip(coefficients[:k], ins))} -> {format_side(zip(coefficients[k:], outs))}"


def _and_join(items: Sequence[str]) -> str:
    if len(items) <= 1:
        return "".join(items)
    return ", ".join(items[:-1]) + " and " + items[-1]


# ------------------------------------------------------------------ concepts


def _fn(name, params, body, source) -> FunctionDef:
    return FunctionDef(name, tuple(params), body, source)


def _phrase(terms) -> str:
    return _and_join([f"{c} {label_of(m)}" for c, m in terms])


Element = ConceptType(
    "Element",
    attributes=(("name", String), ("atomic_mass", Float)),
    class_template={K.gradient_color: "LightGray"},
    instance_template={K.text: Fn1(lambda e: [e.name, f"{e.atomic_mass:g} g/mol"]), K.name: "Circle"},
    invariants=(
        ("an element symbol for name", lambda e: re.fullmatch(r"[A-Z][a-z]?", e.name) is not None),
        ("atomic_mass > 0", lambda e: e.atomic_mass > 0),
    ),
)

Molecule = ConceptType(
    "Molecule",
    attributes=(
        ("formula", ListOf(TupleOf(RefTo("Element"), Int))),
        ("label", ComputedK(String, "_get_label")),
        ("molar_mass", ComputedK(Float, "_get_molar_mass")),
    ),
    functions=(
        _fn("_get_label", [], computed_label, "def _get_label(self):\n    return computed_label(self)"),
        _fn("_get_molar_mass", [], molar_mass,
            "def _get_molar_mass(self):\n    return sum([n * el.atomic_mass\n"
            "                for el, n in self.formula])"),
    ),
    class_template={K.gradient_color: "LightSkyBlue"},
    instance_template={K.text: Fn1(computed_label), K.name: "Circle", K.show_refs: False},
    invariants=(
        ("a non-empty formula", lambda m: len(m.formula) > 0),
        ("positive atom counts", lambda m: all(n >= 1 for _, n in m.formula)),
        ("each element once per formula", lambda m: len({el.name for el, _ in m.formula}) == len(m.formula)),
    ),
)

Reaction = ConceptType(
    "Reaction",
    attributes=(
        ("reactants", ListOf(TupleOf(Int, RefTo("Molecule")))),
        ("products", ListOf(TupleOf(Int, RefTo("Molecule")))),
        ("label", ComputedK(String, "_get_label")),
        ("balanced", ComputedK(Bool, "_get_balanced")),
    ),
    functions=(
        _fn("_get_label", [], lambda r: f"{format_side(r.reactants)} -> {format_side(r.products)}",
            "def _get_label(self):\n    return side(self.reactants) + ' -> ' + side(self.products)"),
        _fn("_get_balanced", [], lambda r: is_balanced(r.reactants, r.products),
            "def _get_balanced(self):\n    return all(row == 0 for row in\n"
            "               elem_balance_matrix(self) @ coefficients(self))"),
        _fn("reactant_phrase", [], lambda r: _phrase(r.reactants), "def reactant_phrase(self): ..."),
        _fn("product_phrase", [], lambda r: _phrase(r.products), "def product_phrase(self): ..."),
    ),
    class_template={K.gradient_color: "Khaki"},
    instance_template={K.text: Fn1(lambda r: r.label), K.name: "Rectangle"},
    narrative_template="{reactant_phrase} react to produce {product_phrase}.",
    invariants=(
        ("non-empty reactants and products", lambda r: len(r.reactants) > 0 and len(r.products) > 0),
        ("positive coefficients", lambda r: all(c >= 1 for c, _ in (*r.reactants, *r.products))),
    ),
)


def _unbalanced_coefficients(u: InstanceView) -> list[int]:
    return balance(list(u.ins), list(u.outs))


UnbalancedReactionType = ConceptType(
    "UnbalancedReaction",
    attributes=(
        ("ins", ListOf(RefTo("Molecule"))),
        ("outs", ListOf(RefTo("Molecule"))),
        ("coefficients", ComputedK(ListOf(Int), "balance")),
        ("label", ComputedK(String, "_get_label")),
    ),
    functions=(
        _fn("balance", [], _unbalanced_coefficients,
            "def balance(self):\n    # smallest positive c with\n    # elem_balance_matrix(ins, outs) @ c == 0\n"
            "    return ilp_minimize(sum(c), matrix @ c == 0, c >= 1)"),
        _fn("_get_label", [], lambda u: format_balanced(list(u.ins), list(u.outs), _unbalanced_coefficients(u)),
            "def _get_label(self):\n    return format_balanced(self.ins, self.outs, self.balance())"),
        _fn("elem_balance_matrix", [], lambda u: elem_balance_matrix(list(u.ins), list(u.outs)).matrix,
            "def elem_balance_matrix(self):\n    # rows: elements; + for ins, - for outs"),
    ),
    class_template={K.gradient_color: "PeachPuff"},
    instance_template={K.text: Fn1(lambda u: ["balance:", u.label]), K.name: "Rectangle"},
    invariants=(("non-empty ins and outs", lambda u: len(u.ins) > 0 and len(u.outs) > 0),),
)

Network = ConceptType(
    "Network",
    attributes=(("reactions", ListOf(RefTo("Reaction"))),),
    class_template={K.gradient_color: "LightGreen"},
    instance_template={K.text: Fn1(lambda n: [f"Network of {len(n.reactions)} reactions"])},
    invariants=(("at least one reaction", lambda n: len(n.reactions) > 0),),
)

CHEM_TYPES = (Element, Molecule, Reaction, UnbalancedReactionType, Network)


def chemistry_types() -> Model:
    return Model().with_types(*CHEM_TYPES)


def add_elements(m: Model, symbols: Iterable[str], table: Mapping[str, float]) -> Model:
    for sym in symbols:
        m = m.define("Element", sym, name=sym, atomic_mass=table[sym])
    return m


def add_molecule(m: Model, ident: str, text: str, table: Mapping[str, float]) -> Model:
    sp = parse_formula(text, table)
    return m.define("Molecule", ident, formula=[(m.view(sym), n) for sym, n in sp.formula])


def reactions_model(table: Mapping[str, float] = TEXTBOOK_MASSES) -> Model:
    m = add_elements(chemistry_types(), ["H", "O", "N", "Fe", "Cl"], table)
    for ident, text in [("H2", "H2"), ("O2", "O2"), ("H2O", "H2O"), ("mol_Fe", "Fe"), ("Cl2", "Cl2"),
                        ("FeCl2", "FeCl2"), ("NO2", "NO2"), ("NO3", "NO3"), ("NO", "NO")]:
        m = add_molecule(m, ident, text, table)
    m = m.define("UnbalancedReaction", "water", ins=[m.view("H2"), m.view("O2")], outs=[m.view("H2O")])
    m = m.define("UnbalancedReaction", "iron_chloride", ins=[m.view("mol_Fe"), m.view("Cl2")], outs=[m.view("FeCl2")])
    m = m.define("Reaction", "R1", reactants=[(2, m.view("NO2"))], products=[(1, m.view("NO3")), (1, m.view("NO"))])
    return m.show_method("water", "balance")


def network_model(table: Mapping[str, float] = TEXTBOOK_MASSES) -> Model:
    m = add_elements(chemistry_types(), ["N", "O", "C"], table)
    for text in ["NO2", "NO3", "NO", "CO", "CO2"]:
        m = add_molecule(m, text, text, table)
    v = m.view
    m = m.define("Reaction", "R1", reactants=[(2, v("NO2"))], products=[(1, v("NO3")), (1, v("NO"))])
    v = m.view
    m = m.define("Reaction", "R2", reactants=[(1, v("NO3")), (1, v("CO"))], products=[(1, v("NO2")), (1, v("CO2"))])
    return m.define("Network", "Net", reactions=[m.view("R1"), m.view("R2")])
