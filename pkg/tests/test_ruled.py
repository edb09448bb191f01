import math

import numpy as np
import pytest

from hmin.errors import DegenerateDenominator, OutOfRange, SingularRule
from hmin.fields import PlanarDomain, Profile, square
from hmin.gallery import circle_seed, gallery_get, line_seed, optreg2_seed
from hmin.heis import HPoint, dilate, group_mul
from hmin.ruled import (GeneralizedSeedCurve, GSCJoin, GSCPiece, RuledPatch,
                        bernstein_quotient, build_surface,
                        characteristic_locus, classify_entire_graph,
                        constant_curvature_test, curvature_on_patch,
                        extend_rules, invert_chart, roundtrip, rule,
                        validate_gsc, w_direct)
from hmin.seed import curvature
from hmin.surface import GraphPatch


def cylinder_patch(sign=1.0, r_range=(-2.0, 2.0)):
    s_range = (-0.95, 0.95)
    h0 = Profile(f=lambda s: sign * math.sqrt(1 - s * s),
                 d1=lambda s: -sign * s / math.sqrt(1 - s * s))
    return RuledPatch(line_seed((0.0, 0.0), (1.0, 0.0), s_range), h0, s_range, r_range)


def flat_patch():
    return RuledPatch(circle_seed((0.0, 0.0), (1.0, 0.0), (-math.pi, math.pi)),
                      Profile.constant(0.0), (-math.pi, math.pi), (-0.5, 0.5))


def hyperbolic_patch():
    return RuledPatch(line_seed((0.0, 1.0), (-1.0, 0.0), (-1.5, 1.5)),
                      Profile.from_expr("-s/2"), (-1.5, 1.5), (-0.5, 0.5))


# -- construction -------------------------------------------------------------


def test_cylinder_points_satisfy_the_implicit_form():
    patch = cylinder_patch()
    for s in np.linspace(-0.9, 0.9, 21):
        for r in np.linspace(-2, 2, 21):
            g = patch.embed(float(s), float(r))
            assert g.x == pytest.approx(float(s))
            assert g.y == pytest.approx(-float(r))
            assert (g.t - g.x * g.y / 2) ** 2 == pytest.approx(1 - g.x ** 2, abs=1e-12)


def test_gencurve_points_satisfy_the_cubic_form():
    s_range = (0.05, 1.5)
    patch = RuledPatch(line_seed((0.0, 0.0), (1.0, 0.0), s_range),
                       Profile(f=lambda s: s ** (1.0 / 3.0)), s_range, (-1.0, 1.0))
    for s in np.linspace(0.1, 1.4, 11):
        for r in np.linspace(-1, 1, 11):
            g = patch.embed(float(s), float(r))
            assert (g.t - g.x * g.y / 2) ** 3 == pytest.approx(g.x, abs=1e-10)


def test_r_zero_is_the_lifted_seed():
    patch = cylinder_patch()
    g = patch.embed(0.3, 0.0)
    assert (g.x, g.y, g.t) == pytest.approx((0.3, 0.0, math.sqrt(1 - 0.09)))


def test_build_surface_rejects_non_arclength_seed():
    bad = line_seed((0.0, 0.0), (1.0, 0.0), (-1.0, 1.0))
    bad.dgamma_fn = lambda s: (2.0, 0.0)   # deliberately not unit
    from hmin.errors import HminError
    with pytest.raises(HminError):
        build_surface(bad, Profile.constant(0.0), (-1.0, 1.0), (-1.0, 1.0))


def test_representation_sufficiency_for_arbitrary_data():
    # any arclength seed + any C^1 height gives a minimal patch where graph-valid
    rng = np.random.default_rng(0)
    for _ in range(5):
        coef = rng.uniform(-0.5, 0.5, size=4)

        def theta(s):
            return (coef[0] * math.sin(s) + coef[1] * math.cos(2 * s)
                    + coef[2] * s)

        def gamma(s, n=201):
            from hmin.fields import adaptive_simpson
            return (adaptive_simpson(lambda v: math.cos(theta(v)), 0.0, s, 1e-11),
                    adaptive_simpson(lambda v: math.sin(theta(v)), 0.0, s, 1e-11))

        from hmin.seed import SeedCurve
        curve = SeedCurve.from_callables(
            gamma,
            lambda s: (math.cos(theta(s)), math.sin(theta(s))),
            lambda s: (-math.sin(theta(s)) * _dtheta(coef, s),
                       math.cos(theta(s)) * _dtheta(coef, s)),
            (-1.0, 1.0), n_samples=101)
        h0 = Profile.from_expr(f"({float(coef[3])!r})*sin(s) + s/3")
        patch = build_surface(curve, h0, (-1.0, 1.0), (-0.8, 0.8))
        for s in np.linspace(-0.8, 0.8, 5):
            for r in np.linspace(-0.7, 0.7, 5):
                s, r = float(s), float(r)
                det = -1.0 + r * curvature(curve, s)
                if abs(det) <= 0.15 or abs(patch.w(s, r)) < 1e-2:
                    continue
                assert abs(curvature_on_patch(patch, s, r)) <= 1e-6


def _dtheta(coef, s):
    return coef[0] * math.cos(s) - 2 * coef[1] * math.sin(2 * s) + coef[2]


# -- angle function -----------------------------------------------------------


def test_w0_flat_plane():
    patch = flat_patch()
    for s in np.linspace(-3, 3, 13):
        assert patch.w0(float(s)) == pytest.approx(0.5, abs=1e-14)


def test_w0_hyperbolic():
    patch = hyperbolic_patch()
    assert patch.w0(0.4) == pytest.approx(1.0, abs=1e-12)


def test_w0_matches_direct_angle_function():
    for patch in (flat_patch(), hyperbolic_patch(), cylinder_patch()):
        for s in np.linspace(*patch.s_range, 9)[1:-1]:
            s = float(s)
            assert abs(abs(patch.w(s, 0.0)) - w_direct(patch, s, 0.0)) <= 1e-6


def test_optreg2_height_choice_gives_w0_minus_one():
    patch = gallery_get("optreg2").ruled()
    for s in np.linspace(-0.9, 0.9, 19):
        assert patch.w0(float(s)) == pytest.approx(-1.0, abs=1e-12)


def test_w_field_flat_plane():
    patch = flat_patch()
    for r in (-0.4, 0.0, 0.3):
        assert patch.w(0.2, r) == pytest.approx((1 + r) / 2, abs=1e-12)


def test_w_field_hyperbolic():
    patch = hyperbolic_patch()
    for r in (-0.5, 0.0, 0.5):
        assert patch.w(0.1, r) == pytest.approx(1.0 + r, abs=1e-12)


def test_w_field_singular_rule():
    patch = flat_patch()
    with pytest.raises(SingularRule):
        patch.w(0.0, -1.0)   # 1 - r*kappa = 0 exactly


def test_w_direct_invert_agrees_with_chain():
    patch = cylinder_patch()
    for s, r in [(0.2, 0.5), (-0.4, -1.2)]:
        assert w_direct(patch, s, r, "chain") == pytest.approx(
            w_direct(patch, s, r, "invert"), abs=1e-6)


def test_w_ode_residual():
    for patch in (flat_patch(), hyperbolic_patch(), cylinder_patch()):
        for s in np.linspace(*patch.s_range, 7)[1:-1]:
            for r in (-0.4, 0.0, 0.4):
                if abs(1 - r * curvature(patch.seed, float(s))) < 1e-6:
                    continue
                assert patch.w_ode_residual(float(s), r) <= 1e-8


# -- characteristic locus -----------------------------------------------------


def test_locus_flat_plane_double_root():
    rep = characteristic_locus(flat_patch(), n_s=31)
    assert {lab for _, lab in rep.labels} == {"double-root"}
    for root in rep.roots:
        assert root.r == pytest.approx(-1.0, abs=1e-12)
        assert math.hypot(root.image.x, root.image.y) <= 1e-9
        assert root.verified


def test_locus_hyperbolic_single_root():
    rep = characteristic_locus(hyperbolic_patch(), n_s=31)
    assert {lab for _, lab in rep.labels} == {"kappa-zero"}
    for root in rep.roots:
        assert root.r == pytest.approx(-1.0, abs=1e-12)   # r = -y with y = 1
        assert abs(root.image.y) <= 1e-12 and abs(root.image.t) <= 1e-12
        assert root.verified


def test_locus_counterexample_empty():
    patch = gallery_get("counterexample").ruled()
    rep = characteristic_locus(patch, n_s=31)
    assert rep.empty
    assert {lab for _, lab in rep.labels} == {"none"}


def test_locus_optreg2_case_split_and_corner():
    patch = gallery_get("optreg2").ruled()
    rep = characteristic_locus(patch, n_s=41)
    labels = dict(rep.labels)
    assert labels[0.0] == "kappa-zero"
    assert labels[1.0] == "two-roots"
    at0 = [r for r in rep.roots if r.s == 0.0]
    assert len(at0) == 1 and at0[0].r == pytest.approx(1.0, abs=1e-12)
    for root in rep.roots:
        if root.s != 0.0 and root.r > 0:
            want = (math.sqrt(1 + 2 * abs(root.s)) - 1) / abs(root.s)
            assert root.r == pytest.approx(want, abs=1e-10)


def test_locus_double_root_case():
    # W0*kappa = -1/2 exactly: circle seed radius 2 (kappa=-1/2), W0 = 1
    seed_c = circle_seed((0.0, 0.0), (2.0, 0.0), (-2.0, 2.0))
    h0 = Profile(f=lambda s: -0.0, d1=lambda s: 0.0)
    patch = RuledPatch(seed_c, h0, (-2.0, 2.0), (-0.5, 0.5))
    assert patch.w0(0.1) == pytest.approx(1.0)
    rep = characteristic_locus(patch, n_s=11)
    assert {lab for _, lab in rep.labels} == {"double-root"}
    for root in rep.roots:
        assert root.r == pytest.approx(-2.0, abs=1e-10)


def test_locus_no_root_case():
    # W0*kappa < -1/2: same circle but with a height slope pushing W0 up
    seed_c = circle_seed((0.0, 0.0), (2.0, 0.0), (-2.0, 2.0))
    h0 = Profile(f=lambda s: -s, d1=lambda s: -1.0)   # W0 = 1 + 1 = 2
    patch = RuledPatch(seed_c, h0, (-2.0, 2.0), (-0.5, 0.5))
    rep = characteristic_locus(patch, n_s=11)
    assert rep.empty and {lab for _, lab in rep.labels} == {"none"}


def test_locus_two_root_case_verified():
    # W0*kappa > -1/2: lower the angle function along the seed
    seed_c = circle_seed((0.0, 0.0), (2.0, 0.0), (-2.0, 2.0))
    h0 = Profile(f=lambda s: 0.25 * s, d1=lambda s: 0.25)  # W0 = 0.75
    patch = RuledPatch(seed_c, h0, (-2.0, 2.0), (-0.5, 0.5))
    rep = characteristic_locus(patch, n_s=11)
    assert {lab for _, lab in rep.labels} == {"two-roots"}
    disc = math.sqrt(1 + 2 * 0.75 * (-0.5))
    want = sorted([(1 - disc) / -0.5, (1 + disc) / -0.5])
    for root in rep.roots:
        assert root.verified
        assert min(abs(root.r - want[0]), abs(root.r - want[1])) <= 1e-10


# -- rules as geodesics -------------------------------------------------------


def test_rule_group_form_matches_parameterization():
    rng = np.random.default_rng(4)
    for patch in (flat_patch(), cylinder_patch(), hyperbolic_patch()):
        for _ in range(20):
            s = float(rng.uniform(*patch.s_range))
            r = float(rng.uniform(-1.0, 1.0))
            ln = rule(patch, s)
            a, b = ln.point(r), patch.embed(s, r)
            assert max(abs(a.x - b.x), abs(a.y - b.y), abs(a.t - b.t)) <= 1e-12


def test_rule_base_and_direction():
    patch = cylinder_patch()
    ln = rule(patch, 0.0)
    assert (ln.base.x, ln.base.y, ln.base.t) == (0.0, 0.0, 1.0)
    assert (ln.direction.x, ln.direction.y, ln.direction.t) == (0.0, -1.0, 0.0)
    p = ln.point(0.7)
    assert (p.x, p.y, p.t) == pytest.approx((0.0, -0.7, 1.0))
    assert (p.t - p.x * p.y / 2) ** 2 == pytest.approx(1 - p.x ** 2)


def test_rule_cc_distance_is_parameter_gap():
    patch = flat_patch()
    ln = rule(patch, 0.5)
    assert ln.cc_distance(0.8, -0.3) == pytest.approx(1.1, abs=1e-15)
    # group-form reduction: delta_{r2} v^{-1} o delta_{r1} v = delta_{r1-r2} v
    from hmin.heis import group_inv
    v = ln.direction
    red = group_mul(group_inv(dilate(-0.3, v)), dilate(0.8, v))
    want = dilate(1.1, v)
    assert max(abs(red.x - want.x), abs(red.y - want.y), abs(red.t - want.t)) <= 1e-15


def test_rule_direction_is_unit_horizontal():
    patch = hyperbolic_patch()
    ln = rule(patch, 0.3)
    assert ln.direction.t == 0.0
    assert math.hypot(ln.direction.x, ln.direction.y) == pytest.approx(1.0)


def test_rule_out_of_range():
    with pytest.raises(OutOfRange):
        rule(flat_patch(), 9.0)


# -- extension ----------------------------------------------------------------


def test_extend_hyperbolic_keeps_the_closed_form():
    patch = RuledPatch(line_seed((0.0, 1.0), (-1.0, 0.0), (-1.5, 1.5)),
                       Profile.from_expr("-s/2"), (-1.5, 1.5), (-0.5, 0.5))
    ext = extend_rules(patch)
    assert ext.r_range is None
    for s in np.linspace(-1.4, 1.4, 7):
        for r in (-30.0, -3.0, 4.0, 50.0):
            g = ext.embed(float(s), r)
            assert abs(g.t - g.x * g.y / 2) <= 1e-10


def test_extend_cylinder_keeps_the_closed_form():
    ext = extend_rules(cylinder_patch())
    for s in (-0.9, 0.0, 0.5):
        for r in (-40.0, -2.0, 35.0):
            g = ext.embed(s, r)
            assert (g.t - g.x * g.y / 2) ** 2 == pytest.approx(1 - g.x ** 2, abs=1e-9)


def test_per_s_r_range():
    import numpy as np
    patch = cylinder_patch()
    shaped = RuledPatch(patch.seed, patch.h0, patch.s_range,
                        r_range=lambda s: (-1.0 - abs(s), 1.0 + abs(s)))
    assert shaped.r_at(0.5) == (-1.5, 1.5)
    lo, hi = shaped.r_interval()
    assert lo <= -1.9 and hi >= 1.9
    from hmin.meshes import mesh_ruled
    mesh = mesh_ruled(shaped, 9, 9)
    assert len(mesh.vertices) == 81


def test_extend_flat_plane_across_the_fold():
    ext = extend_rules(flat_patch())
    for r in (-3.0, -1.5, 2.0):
        assert ext.embed(0.3, r).t == 0.0


# -- generalized seed curves --------------------------------------------------


def test_validate_gencurve_gsc():
    gsc = gallery_get("gencurve-3").gsc()
    out = validate_gsc(gsc, 1e-9)
    assert out.valid and out.max_gap == 0.0


def test_validate_catenoid_two_sheet_gsc():
    gsc = gallery_get("catenoid").gsc()
    out = validate_gsc(gsc, 1e-9)
    assert out.valid


def test_validate_gsc_detects_gap():
    p1 = GSCPiece(line_seed((0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)),
                  Profile.constant(0.0), -1.0, 0.0)
    p2 = GSCPiece(line_seed((0.5, 0.0), (1.0, 0.0), (0.0, 1.0)),
                  Profile.constant(0.0), 0.0, 1.0)
    out = validate_gsc(GeneralizedSeedCurve([p1, p2]), 1e-6)
    assert not out.valid
    assert out.checks[0].gap == pytest.approx(0.5)


def test_validate_gsc_infinite_end_is_flagged():
    p1 = GSCPiece(line_seed((0.0, 0.0), (1.0, 0.0), (-2.0, 0.0)),
                  Profile.constant(0.0), -math.inf, 0.0)
    p2 = GSCPiece(line_seed((0.0, 0.0), (1.0, 0.0), (0.0, 2.0)),
                  Profile.constant(0.0), 0.0, 2.0)
    out = validate_gsc(GeneralizedSeedCurve([p1, p2], [GSCJoin("a", "a")]), 1e-6)
    assert not out.valid and "infinite" in out.checks[0].note


def test_constant_curvature_gencurve_and_flat():
    ok, summary = constant_curvature_test(gallery_get("gencurve-3").gsc(), 1e-9)
    assert ok and all(abs(p["kappa"]) <= 1e-12 for p in summary)
    piece = GSCPiece(circle_seed((0.0, 0.0), (1.0, 0.0), (-2.0, 2.0)),
                     Profile.constant(0.0), -2.0, 2.0)
    ok, summary = constant_curvature_test(GeneralizedSeedCurve([piece]), 1e-9)
    assert ok and summary[0]["kappa"] == pytest.approx(-1.0)


def test_constant_curvature_rejects_optreg_seed():
    piece = GSCPiece(optreg2_seed(), Profile.constant(0.0), -1.0, 1.0)
    ok, summary = constant_curvature_test(GeneralizedSeedCurve([piece]), 1e-3)
    assert not ok
    assert summary[0]["max_dev"] > 0.3


def test_pieces_may_have_different_constants():
    line = GSCPiece(line_seed((1.0, 0.0), (0.0, 1.0), (0.0, 1.0)),
                    Profile.constant(0.0), 0.0, 1.0)
    circ = GSCPiece(circle_seed((0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)),
                    Profile.constant(0.0), -1.0, 0.0, name="arc")
    gsc = GeneralizedSeedCurve([circ, line], [GSCJoin("b", "a")])
    assert validate_gsc(gsc, 1e-9).valid
    ok, summary = constant_curvature_test(gsc, 1e-6)
    assert ok
    assert summary[0]["kappa"] == pytest.approx(-1.0)
    assert summary[1]["kappa"] == pytest.approx(0.0, abs=1e-12)


# -- Bernstein quotient -------------------------------------------------------


def normalized_circle(kappa0):
    def gamma(s):
        return ((1 - math.cos(kappa0 * s)) / kappa0, math.sin(kappa0 * s) / kappa0)

    def dgamma(s):
        return (math.sin(kappa0 * s), math.cos(kappa0 * s))

    def ddgamma(s):
        return (kappa0 * math.cos(kappa0 * s), -kappa0 * math.sin(kappa0 * s))

    from hmin.seed import SeedCurve
    return SeedCurve.from_callables(gamma, dgamma, ddgamma, (-1.0, 1.0))


def test_bernstein_quotient_circle():
    c = normalized_circle(2.0)
    assert curvature(c, 0.0) == pytest.approx(2.0)
    for s in (0.1, 0.3, -0.2):
        assert bernstein_quotient(c, s) == pytest.approx(2.0, abs=1e-8)


def test_bernstein_quotient_negative_curvature():
    c = normalized_circle(-1.0)
    assert bernstein_quotient(c, 0.2) == pytest.approx(-1.0, abs=1e-8)


def test_bernstein_quotient_limit_is_kappa0():
    c = normalized_circle(0.7)
    vals = [bernstein_quotient(c, s) for s in (0.2, 0.1, 0.05, 0.01)]
    assert abs(vals[-1] - 0.7) <= 1e-6


def test_bernstein_quotient_degenerate_denominator():
    c = normalized_circle(1.0)
    with pytest.raises(DegenerateDenominator):
        bernstein_quotient(c, 0.0)


# -- round-trip and classification --------------------------------------------


def test_roundtrip_hyperbolic():
    patch = GraphPatch.from_expr("x*y/2", square(3.0))
    assert roundtrip(patch, (0.0, 1.0)) <= 1e-6


def test_roundtrip_flat():
    patch = GraphPatch.from_expr("0", square(3.0))
    assert roundtrip(patch, (1.0, 0.0)) <= 1e-6


def test_roundtrip_counterexample():
    entry = gallery_get("counterexample")
    assert roundtrip(entry.graph, (1.0, 0.0), arc_span=0.8, r_span=0.4) <= 1e-5


def test_invert_chart_roundtrip():
    patch = flat_patch()
    s0, r0 = 0.4, 0.2
    z = patch.embed(s0, r0)
    s, r = invert_chart(patch, (z.x, z.y), (0.3, 0.1))
    assert (s, r) == pytest.approx((s0, r0), abs=1e-10)


def test_classify_plane():
    patch = GraphPatch.from_expr("(4 - 1*x - 2*y)/2", square(3.0))
    out = classify_entire_graph(patch)
    assert out.kind == "class1"
    assert out.sigma == pytest.approx((-2.0, 1.0, 2.0), abs=1e-8)
    scale = 1.0 / out.a
    assert (out.a * scale, out.b * scale, out.c * scale, out.d * scale) == pytest.approx(
        (1.0, 2.0, 2.0, 4.0), abs=1e-8)


def test_classify_hyperbolic_is_class2():
    patch = GraphPatch.from_expr("x*y/2", square(3.0))
    out = classify_entire_graph(patch)
    assert out.kind == "class2"
    assert abs(out.direction[0]) == pytest.approx(1.0, abs=1e-9)
    assert out.direction[1] == pytest.approx(0.0, abs=1e-9)
    # h0 along a straight seed of t = xy/2 is linear in s
    svals = np.array([s for s, _ in out.h0_samples])
    hvals = np.array([h for _, h in out.h0_samples])
    coef = np.polyfit(svals, hvals, 1)
    assert np.max(np.abs(np.polyval(coef, svals) - hvals)) <= 1e-9


def test_classify_quadratic_family_member():
    patch = GraphPatch.from_expr("x^2 - x*y/2", square(3.0))
    out = classify_entire_graph(patch)
    assert out.kind == "class2"
    assert out.alpha == pytest.approx(1.0, abs=1e-6)
    assert out.rebuild_error <= 1e-6


def test_classify_not_minimal():
    patch = GraphPatch.from_expr("(x^2+y^2)/4", square(3.0))
    out = classify_entire_graph(patch)
    assert out.kind == "not-minimal"
    assert out.max_curvature > 0.5


def test_classify_not_entire():
    dom = PlanarDomain(-3, 3, -3, 3, membership=lambda x, y: x > 0)
    patch = GraphPatch.from_expr("x*y/2", dom)
    out = classify_entire_graph(patch)
    assert out.kind == "not-entire"


# -- symmetry of the construction ----------------------------------------------


def test_translate_and_rebuild_gives_the_same_point_set():
    # left-translating a built patch equals rebuilding from translated data:
    # the seed translates in the plane and the height picks up the group term
    rng = np.random.default_rng(9)
    for patch in (hyperbolic_patch(), cylinder_patch()):
        x0, y0, t0 = (float(v) for v in rng.uniform(-1.0, 1.0, size=3))

        def moved_gamma(s):
            g = patch.seed.point(s)
            return (g[0] + x0, g[1] + y0)

        def moved_h0(s):
            g = patch.seed.point(s)
            return patch.h0(s) + t0 - 0.5 * (g[0] * y0 - x0 * g[1])

        from hmin.seed import SeedCurve
        moved_seed = SeedCurve.from_callables(
            moved_gamma, patch.seed.tangent, patch.seed.second,
            (patch.seed.s_min, patch.seed.s_max))
        moved = RuledPatch(moved_seed, Profile(f=moved_h0),
                           patch.s_range, patch.r_range)
        g0 = HPoint(x0, y0, t0)
        for s in np.linspace(*patch.s_range, 7)[1:-1]:
            for r in (-0.8, 0.0, 1.1):
                a = group_mul(g0, patch.embed(float(s), r))
                b = moved.embed(float(s), r)
                assert max(abs(a.x - b.x), abs(a.y - b.y), abs(a.t - b.t)) <= 1e-9


def test_locus_branch_is_smooth_on_smooth_data():
    # away from constructed defects the branch r(s) is C^1: one-sided slopes
    # agree, and match the closed form r = -s/sqrt(1-s^2) for the cylinder
    from hmin.ruled import locus_branch_slope
    patch = cylinder_patch()
    for s in (-0.5, 0.0, 0.4):
        sp = locus_branch_slope(patch, s, +1)
        sm = locus_branch_slope(patch, s, -1)
        want = -(1.0 - s * s) ** -1.5
        assert sp == pytest.approx(sm, abs=1e-5)
        assert sp == pytest.approx(want, abs=1e-4)


def test_w_oracle_on_random_patches():
    # the closed-form angle function matches reconstructed-graph derivatives
    # for arbitrary smooth data, on both sides of its zero set
    rng = np.random.default_rng(21)
    for _ in range(5):
        coef = [float(v) for v in rng.uniform(-0.5, 0.5, size=3)]

        def theta(s):
            return coef[0] * s + coef[1] * math.sin(2 * s) + coef[2] * math.cos(s)

        def dtheta(s):
            return coef[0] + 2 * coef[1] * math.cos(2 * s) - coef[2] * math.sin(s)

        from hmin.fields import cumulative_integral
        import numpy as _np
        grid = _np.linspace(-1.0, 1.0, 161)
        gx = cumulative_integral(lambda v: math.cos(theta(v)), grid, tol=1e-11)
        gy = cumulative_integral(lambda v: math.sin(theta(v)), grid, tol=1e-11)
        from hmin.seed import SeedCurve
        curve = SeedCurve(
            grid, _np.column_stack([gx, gy]),
            _np.array([(math.cos(theta(float(s))), math.sin(theta(float(s))))
                       for s in grid]),
            _np.array([(-math.sin(theta(float(s))) * dtheta(float(s)),
                        math.cos(theta(float(s))) * dtheta(float(s)))
                       for s in grid]),
            provenance="closed-form",
            dgamma_fn=lambda s: (math.cos(theta(s)), math.sin(theta(s))),
            ddgamma_fn=lambda s: (-math.sin(theta(s)) * dtheta(s),
                                  math.cos(theta(s)) * dtheta(s)))
        h0 = Profile(f=lambda s, c=coef: c[0] * math.cos(s) + 0.4 * s,
                     d1=lambda s, c=coef: -c[0] * math.sin(s) + 0.4)
        patch = RuledPatch(curve, h0, (-1.0, 1.0), (-0.9, 0.9))
        signs = set()
        for s in np.linspace(-0.8, 0.8, 7):
            for r in np.linspace(-0.9, 0.9, 7):
                s, r = float(s), float(r)
                if abs(-1.0 + r * curvature(curve, s)) <= 0.15:
                    continue
                w = patch.w(s, r)
                if abs(w) < 1e-3:
                    continue
                signs.add(w > 0)
                assert abs(abs(w) - w_direct(patch, s, r)) <= 1e-6
                assert patch.w_ode_residual(s, r) <= 1e-6
