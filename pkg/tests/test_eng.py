import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from stemmodel.core import get_attribute
from stemmodel.packs import eng_pack
from stemmodel.packs.eng_pack import (
    PVCPipe,
    center_of_mass,
    demo_pipes,
    direction,
    moment_of_inertia,
    pipe_center,
    pipe_mass,
    project,
    project_wireframe,
    rov_mass,
)

UNIT = PVCPipe((0, 0, 0), 1.0, 0.02, 1400.0)

vec3 = st.tuples(*[st.floats(-10, 10, allow_nan=False)] * 3)
angles = st.tuples(*[st.floats(-180, 180, allow_nan=False)] * 3)


def close3(a, b, tol):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def monte_carlo_moi(pipes, n=10_000, seed=7):
    """Sample each rod uniformly along its length; mass split evenly across samples."""
    rng = random.Random(seed)
    cx, cy, _ = center_of_mass(pipes)
    total = 0.0
    for p in pipes:
        dm = pipe_mass(p) / n
        d = direction(p.axis)
        for _ in range(n):
            s = rng.random() * p.length
            x, y = p.p0[0] + d[0] * s, p.p0[1] + d[1] * s
            total += dm * ((x - cx) ** 2 + (y - cy) ** 2)
    return total


class TestPipe:
    def test_mass(self):
        assert pipe_mass(UNIT) == pytest.approx(1.7593, abs=1e-4)

    def test_mass_scales_with_radius_squared(self):
        doubled = PVCPipe((0, 0, 0), 1.0, 0.04, 1400.0)
        assert pipe_mass(doubled) == pytest.approx(4 * pipe_mass(UNIT), rel=1e-12)

    def test_center_default_axis(self):
        assert pipe_center(PVCPipe((0, 0, 0), 2.0, 0.02, 1400.0)) == (0.0, 0.0, 1.0)

    def test_direction(self):
        assert direction((0, 0, 0)) == (0.0, 0.0, 1.0)
        assert direction((0, 90, 0)) == (1.0, 0.0, 0.0)
        assert close3(direction((0, 90, 90)), (0.0, 1.0, 0.0), 1e-15)

    @settings(max_examples=100, deadline=None)
    @given(angles)
    def test_direction_is_unit(self, a):
        assert math.hypot(*direction(a)) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            PVCPipe((0, 0, 0), 0.0, 0.02, 1400.0)
        with pytest.raises(ValueError):
            PVCPipe((0, 0, 0), 1.0, -1.0, 1400.0)

    def test_p1(self):
        p = PVCPipe((1, 2, 3), 3.0, 0.02, 1400.0, (0, 90, 0))
        assert p.p1 == (4.0, 2.0, 3.0)


class TestShiftRotate:
    def test_pure(self):
        before = UNIT
        shifted = UNIT.shift((1, 2, 3))
        rotated = UNIT.rotate((0, 90, 0))
        assert UNIT == before and UNIT.p0 == (0.0, 0.0, 0.0) and UNIT.axis == (0.0, 0.0, 0.0)
        assert shifted.p0 == (1.0, 2.0, 3.0) and rotated.axis == (0.0, 90.0, 0.0)

    @settings(max_examples=100, deadline=None)
    @given(vec3, vec3)
    def test_shift_additive(self, u, v):
        a = UNIT.shift(u).shift(v)
        b = UNIT.shift(tuple(x + y for x, y in zip(u, v)))
        assert close3(a.p0, b.p0, 1e-9)

    @settings(max_examples=100, deadline=None)
    @given(angles, angles)
    def test_rotate_additive(self, a, b):
        r1 = UNIT.rotate(a).rotate(b)
        r2 = UNIT.rotate(tuple(x + y for x, y in zip(a, b)))
        assert close3(r1.axis, r2.axis, 1e-9)

    @settings(max_examples=50, deadline=None)
    @given(vec3)
    def test_shift_preserves_mass_and_translates_center(self, v):
        s = UNIT.shift(v)
        assert pipe_mass(s) == pipe_mass(UNIT)
        assert close3(pipe_center(s), tuple(c + d for c, d in zip(pipe_center(UNIT), v)), 1e-9)


class TestRov:
    def test_demo_values(self):
        pipes = demo_pipes()
        assert rov_mass(pipes) == pytest.approx(21.1115, abs=1e-4)
        assert close3(center_of_mass(pipes), (0.75, 0.75, 1.5), 1e-12)
        assert moment_of_inertia(pipes) == pytest.approx(39.584, abs=1e-3)

    def test_mass_additive(self):
        pipes = demo_pipes()
        assert abs(rov_mass(pipes) - sum(pipe_mass(p) for p in pipes)) <= 1e-12

    def test_single_pipe_is_rod_term_only(self):
        p = PVCPipe((0, 0, 0), 2.0, 0.02, 1400.0, (0, 90, 0))
        assert moment_of_inertia([p]) == pytest.approx(pipe_mass(p) * 4 / 12, rel=1e-12)

    def test_vertical_pipe_has_no_moment(self):
        assert moment_of_inertia([UNIT]) == 0.0

    def test_symmetric_pipes_center_at_origin(self):
        a = PVCPipe((-1, 0, 0), 2.0, 0.02, 1400.0, (0, 90, 0))
        b = PVCPipe((0, -1, 0), 2.0, 0.02, 1400.0, (-90, 0, 0))
        assert close3(center_of_mass([a, b]), (0.0, 0.0, 0.0), 1e-12)

    def test_monte_carlo_oracle(self):
        pipes = demo_pipes()
        mc = monte_carlo_moi(pipes)
        assert abs(mc - moment_of_inertia(pipes)) <= 0.01 * moment_of_inertia(pipes)

    def test_monte_carlo_oracle_tilted(self):
        pipes = [
            PVCPipe((0, 0, 0), 2.0, 0.03, 1200.0, (30, 45, 10)),
            PVCPipe((1, -1, 0.5), 1.5, 0.02, 1400.0, (70, -20, 120)),
        ]
        mc = monte_carlo_moi(pipes)
        assert abs(mc - moment_of_inertia(pipes)) <= 0.01 * moment_of_inertia(pipes)

    @settings(max_examples=50, deadline=None)
    @given(vec3)
    def test_moi_invariant_under_rigid_shift(self, v):
        pipes = demo_pipes()
        moved = [p.shift(v) for p in pipes]
        assert abs(moment_of_inertia(moved) - moment_of_inertia(pipes)) <= 1e-9

    def test_com_inside_bounding_box(self):
        pipes = demo_pipes()
        pts = [p.p0 for p in pipes] + [p.p1 for p in pipes]
        com = center_of_mass(pipes)
        for i in range(3):
            assert min(q[i] for q in pts) <= com[i] <= max(q[i] for q in pts)

    def test_empty_body(self):
        with pytest.raises(ValueError):
            rov_mass([])


class TestProjection:
    def test_example(self):
        assert project((0, 0, 2)) == (-1.0, -0.5)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(-100, 100), st.floats(-100, 100))
    def test_identity_in_plane(self, x, y):
        assert project((x, y, 0)) == (x, y)

    def test_wireframe_has_one_line_per_pipe(self):
        doc = project_wireframe(eng_pack.rov_model().view("rov"))
        ids = {getattr(e, "id", None) for e in doc.elements}
        assert {f"pipe-{i}" for i in range(4)} <= ids


class TestConcept:
    def test_computed_attributes(self):
        m = eng_pack.rov_model()
        assert get_attribute(m, "rov", "mass") == pytest.approx(rov_mass(demo_pipes()), rel=1e-12)
        assert get_attribute(m, "rov", "moment_of_inertia") == pytest.approx(39.584, abs=1e-3)
        assert get_attribute(m, "p1", "mass") == pytest.approx(pipe_mass(demo_pipes()[0]))

    def test_view_round_trip(self):
        m = eng_pack.rov_model()
        assert PVCPipe.of(m.view("c2")) == demo_pipes()[3]
