"""Built-in catalog of reference H-minimal surfaces.

Every entry bundles closed-form data (graph and/or implicit form, known
seed curve, curvature, height function, expected loci) together with the
domains on which the numerical checks run.  ``gallery_verify`` replays
the standard battery against an entry: curvature scans in analytic and
pure-FD mode, seed extraction against the closed form, curvature values,
characteristic loci, and the representation round-trip.

Catalog names:

    char-plane          t = 0
    general-plane       a x + b y + c t = d          (params a, b, c, d)
    hyperbolic          t = x y / 2
    catenoid            (t - u0)^2 = (4/a^2)(a |z|^2/4 - 1)   (params a, u0)
    counterexample      y = -x tan(tanh t)  (entire graph, empty char. locus)
    cylinder            (t - x y/2)^2 = 1 - x^2
    gencurve-n          (t - x y/2)^n = x             (param n)
    optreg2             seed with curvature -|s|; locus has a corner
    iso-profile         constant-curvature profile, H = 2/R  (param R)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np

from .errors import UnknownName
from .fields import Grid2, PlanarDomain, Profile, cumulative_integral
from .heis import HPoint
from .report import Check, check_flag, check_leq
from .ruled import (GeneralizedSeedCurve, GSCJoin, GSCPiece, RuledPatch,
                    characteristic_locus, chart_height_gradient,
                    curvature_on_patch, locus_branch_slope, roundtrip,
                    validate_gsc, w_direct)
from .seed import SeedCurve, _hermite, curvature, extract_seed
from .surface import (GraphPatch, ImplicitSurface, characteristic_scan,
                      h_mean_curvature, horizontal_data)

TOL_H_ANALYTIC = 1e-8
TOL_H_FD = 1e-4
W_MARGIN = 1e-3


# ---------------------------------------------------------------------------
# Closed-form seed constructors
# ---------------------------------------------------------------------------


def circle_seed(center: tuple[float, float], z0: tuple[float, float],
                s_range: tuple[float, float], sense: float = 1.0) -> SeedCurve:
    """Arclength circle through z0 around center; sense=+1 is counterclockwise
    (signed curvature -sense/radius)."""
    cx, cy = center
    rho = math.hypot(z0[0] - cx, z0[1] - cy)
    phi0 = math.atan2(z0[1] - cy, z0[0] - cx)

    def gamma(s: float):
        th = phi0 + sense * s / rho
        return (cx + rho * math.cos(th), cy + rho * math.sin(th))

    def dgamma(s: float):
        th = phi0 + sense * s / rho
        return (-sense * math.sin(th), sense * math.cos(th))

    def ddgamma(s: float):
        th = phi0 + sense * s / rho
        return (-math.cos(th) / rho, -math.sin(th) / rho)

    return SeedCurve.from_callables(gamma, dgamma, ddgamma, s_range)


def line_seed(z0: tuple[float, float], direction: tuple[float, float],
              s_range: tuple[float, float]) -> SeedCurve:
    norm = math.hypot(*direction)
    dx, dy = direction[0] / norm, direction[1] / norm
    return SeedCurve.from_callables(
        lambda s: (z0[0] + s * dx, z0[1] + s * dy),
        lambda s: (dx, dy),
        lambda s: (0.0, 0.0),
        s_range,
    )


def catenoid_seed(a: float, z0: tuple[float, float], s_range: tuple[float, float],
                  sheet: float = 1.0, n: int = 801) -> SeedCurve:
    """Spiral seed of the catenoid sheet t = u0 + sheet*(2/a) sqrt(a|z|^2/4 - 1).

    The radius obeys |gamma(s)|^2 = |z0|^2 - sheet*(4/sqrt(a)) s and the polar
    angle rate is theta' = sqrt(rho^2 - 4/a)/rho^2 (integrated by quadrature).
    The base point z0 sits at s = 0, which must lie inside s_range.
    """
    if not (s_range[0] <= 0.0 <= s_range[1]):
        raise ValueError("catenoid_seed expects s_range to contain the base s = 0")
    rho0 = math.hypot(*z0)
    th0 = math.atan2(z0[1], z0[0])
    rate = 4.0 / math.sqrt(a)

    def rho(s: float) -> float:
        return math.sqrt(rho0 * rho0 - sheet * rate * s)

    def theta_rate(s: float) -> float:
        r2 = rho0 * rho0 - sheet * rate * s
        return math.sqrt(max(r2 - 4.0 / a, 0.0)) / r2

    # sample grid containing s = 0 exactly, so theta(0) = th0 needs no offset
    n_lo = max(2, int(round(n * (-s_range[0]) / (s_range[1] - s_range[0])))) if s_range[0] < 0 else 0
    n_hi = max(2, n - n_lo) if s_range[1] > 0 else 0
    parts = []
    if n_lo:
        parts.append(np.linspace(s_range[0], 0.0, n_lo + 1)[:-1])
    parts.append(np.array([0.0]))
    if n_hi:
        parts.append(np.linspace(0.0, s_range[1], n_hi + 1)[1:])
    s = np.concatenate(parts)
    i0 = int(np.argmin(np.abs(s)))
    theta = cumulative_integral(theta_rate, s)
    theta += th0 - theta[i0]
    g = np.empty((len(s), 2))
    dg = np.empty((len(s), 2))
    for i, sv in enumerate(s):
        r = rho(float(sv))
        th = theta[i]
        c, sn = math.cos(th), math.sin(th)
        g[i] = (r * c, r * sn)
        drho = -sheet * rate / (2.0 * r)
        dth = theta_rate(float(sv))
        dg[i] = (drho * c - r * dth * sn, drho * sn + r * dth * c)
    ddg = np.gradient(dg, s, axis=0)
    # arclength forces gamma'' _|_ gamma'; drop the differencing error's
    # tangential component
    ddg -= np.einsum("ij,ij->i", ddg, dg)[:, None] * dg
    return SeedCurve(s, g, dg, ddg, provenance="closed-form")


def optreg2_seed(n: int = 801) -> SeedCurve:
    """Seed with signed curvature -|s|: gamma' = (cos Psi, sin Psi),
    Psi(s) = (1 + sign(s) s^2)/2, positions by quadrature from gamma(-1) = 0."""

    def psi_int(s: float) -> float:
        return 0.5 * (1.0 + math.copysign(s * s, s))

    def dgamma(s: float):
        p = psi_int(s)
        return (math.cos(p), math.sin(p))

    def ddgamma(s: float):
        p = psi_int(s)
        return (-abs(s) * math.sin(p), abs(s) * math.cos(p))

    s = np.linspace(-1.0, 1.0, n)
    gx = cumulative_integral(lambda v: dgamma(v)[0], s)
    gy = cumulative_integral(lambda v: dgamma(v)[1], s)
    g = np.column_stack([gx, gy])
    dg = np.array([dgamma(float(v)) for v in s])
    ddg = np.array([ddgamma(float(v)) for v in s])
    return SeedCurve(s, g, dg, ddg, provenance="closed-form",
                     dgamma_fn=dgamma, ddgamma_fn=ddgamma)


def _profile_from_samples(s: np.ndarray, values: np.ndarray,
                          d1: Callable[[float], float]) -> Profile:
    """Cubic Hermite profile through (s, values) with exact slope callable."""

    def f(sq: float) -> float:
        i = int(np.searchsorted(s, sq)) - 1
        i = min(max(i, 0), len(s) - 2)
        return float(_hermite(sq, s[i], s[i + 1], values[i], values[i + 1],
                              d1(float(s[i])), d1(float(s[i + 1]))))

    return Profile(f=f, d1=d1)


# ---------------------------------------------------------------------------
# Entries
# ---------------------------------------------------------------------------


@dataclass
class GalleryEntry:
    name: str
    params: dict
    notes: str = ""
    graph: Optional[GraphPatch] = None
    graph_lower: Optional[GraphPatch] = None
    implicit: Optional[ImplicitSurface] = None
    verify_domain: Optional[PlanarDomain] = None
    expected_curvature: float = 0.0
    tol_h_analytic: float = TOL_H_ANALYTIC
    tol_h_fd: float = TOL_H_FD
    seed_base: Optional[tuple[float, float]] = None
    arc_span: float = 1.0
    known_seed: Optional[Callable[[tuple[float, float]], SeedCurve]] = None
    known_kappa: Optional[Callable[[tuple[float, float]], float]] = None
    known_h0: Optional[Callable[[tuple[float, float]], Profile]] = None
    scan_domain: Optional[PlanarDomain] = None
    radius_law: Optional[Callable[[tuple[float, float], float], float]] = None
    ruled: Optional[Callable[[], RuledPatch]] = None
    ruled_pair: Optional[Callable[[], tuple[RuledPatch, RuledPatch]]] = None
    gsc: Optional[Callable[[], GeneralizedSeedCurve]] = None
    expected_scan: Optional[dict] = None
    expected_chart_label: Optional[str] = None
    expected_chart_root: Optional[Callable[[float], float]] = None
    roundtrip_base: Optional[tuple[float, float]] = None
    xt_graph: Optional[Callable[[float, float], float]] = None
    extra: dict = dc_field(default_factory=dict)


def _num(v: float) -> str:
    return f"({v!r})"


def _char_plane() -> GalleryEntry:
    dom = PlanarDomain(-2.2, 2.2, -2.2, 2.2)
    entry = GalleryEntry(
        name="char-plane",
        params={},
        notes="the plane t = 0; one characteristic point at the origin",
        graph=GraphPatch.from_expr("0", dom),
        implicit=ImplicitSurface.from_expr("t"),
        verify_domain=PlanarDomain(-2.0, 2.0, -2.0, 2.0),
        seed_base=(1.0, 0.0),
        arc_span=math.pi,
        known_seed=lambda z0: circle_seed((0.0, 0.0), z0, (-math.pi, math.pi)),
        known_kappa=lambda z0: -1.0 / math.hypot(*z0),
        known_h0=lambda z0: Profile.constant(0.0),
        expected_scan={"kind": "point", "at": (0.0, 0.0)},
        expected_chart_label="double-root",
        expected_chart_root=lambda s: -1.0,
        roundtrip_base=(1.0, 0.0),
    )
    entry.ruled = lambda: RuledPatch(
        circle_seed((0.0, 0.0), (1.0, 0.0), (-math.pi, math.pi)),
        Profile.constant(0.0), (-math.pi, math.pi), (-0.5, 0.5))
    return entry


def _general_plane(a: float = 1.0, b: float = 2.0, c: float = 2.0,
                   d: float = 4.0) -> GalleryEntry:
    if c == 0.0:
        raise UnknownName("general-plane requires c != 0 (vertical planes have no graph form)")
    src = f"({_num(d)} - {_num(a)}*x - {_num(b)}*y)/{_num(c)}"
    dom = PlanarDomain(-3.2, 3.2, -3.2, 3.2)
    center = (-2.0 * b / c, 2.0 * a / c)
    sense = 1.0 if c > 0 else -1.0
    base = (center[0] + 1.0, center[1])

    def known_seed(z0):
        return circle_seed(center, z0, (-math.pi, math.pi), sense=sense)

    return GalleryEntry(
        name="general-plane",
        params={"a": a, "b": b, "c": c, "d": d},
        notes="plane a x + b y + c t = d; characteristic point (-2b/c, 2a/c, d/c)",
        graph=GraphPatch.from_expr(src, dom),
        implicit=ImplicitSurface.from_expr(
            f"{_num(a)}*x + {_num(b)}*y + {_num(c)}*t - {_num(d)}"),
        verify_domain=PlanarDomain(-3.0, 3.0, -3.0, 3.0),
        seed_base=base,
        arc_span=math.pi / 2,
        known_seed=known_seed,
        known_kappa=lambda z0: -sense / math.hypot(z0[0] - center[0], z0[1] - center[1]),
        expected_scan={"kind": "point", "at": center},
        # scan lattice centered on the characteristic point so a node hits it
        scan_domain=PlanarDomain(center[0] - 1.1, center[0] + 1.1,
                                 center[1] - 1.1, center[1] + 1.1),
        extra={"sigma": (center[0], center[1], d / c)},
    )


def _hyperbolic() -> GalleryEntry:
    dom = PlanarDomain(-2.2, 2.2, -2.2, 2.2)

    def known_seed(z0):
        sgn = 1.0 if z0[1] > 0 else -1.0
        return line_seed(z0, (-sgn, 0.0), (-1.5, 1.5))

    def known_h0(z0):
        x, y = z0
        sgn = 1.0 if y > 0 else -1.0
        return Profile.from_expr(f"{_num(y)}*({_num(x)} - {_num(sgn)}*s)/2")

    entry = GalleryEntry(
        name="hyperbolic",
        params={},
        notes="t = x y/2; straight seeds, characteristic locus on the x-axis",
        graph=GraphPatch.from_expr("x*y/2", dom),
        implicit=ImplicitSurface.from_expr("t - x*y/2"),
        verify_domain=PlanarDomain(-2.0, 2.0, -2.0, 2.0),
        seed_base=(0.0, 1.0),
        arc_span=1.5,
        known_seed=known_seed,
        known_kappa=lambda z0: 0.0,
        known_h0=known_h0,
        expected_scan={"kind": "line-y0"},
        expected_chart_label="kappa-zero",
        expected_chart_root=lambda s: -1.0,   # r = -y with y = 1 along the seed
        roundtrip_base=(0.0, 1.0),
    )
    entry.ruled = lambda: RuledPatch(
        line_seed((0.0, 1.0), (-1.0, 0.0), (-1.5, 1.5)),
        Profile.from_expr("-s/2"), (-1.5, 1.5), (-0.5, 0.5))
    return entry


def _catenoid(a: float = 2.0, u0: float = 0.0) -> GalleryEntry:
    rim2 = 4.0 / a
    upper = f"{_num(u0)} + (2/{_num(a)})*sqrt({_num(a)}*(x^2+y^2)/4 - 1)"
    lower = f"{_num(u0)} - (2/{_num(a)})*sqrt({_num(a)}*(x^2+y^2)/4 - 1)"
    half = max(3.6, 2.2 * math.sqrt(rim2))

    def member(margin):
        return lambda x, y: x * x + y * y >= rim2 + margin

    dom = PlanarDomain(-half, half, -half, half, member(0.08))
    vdom = PlanarDomain(-half + 0.2, half - 0.2, -half + 0.2, half - 0.2, member(0.15))
    rho0 = 2.0 * math.sqrt(rim2)   # comfortably outside the rim
    base = (rho0, 0.0)
    rate = 4.0 / math.sqrt(a)

    def radius_law(z0, s):
        return math.hypot(*z0) ** 2 - rate * s

    entry = GalleryEntry(
        name="catenoid",
        params={"a": a, "u0": u0},
        notes="catenoid-type surface; empty characteristic locus, two sheets",
        graph=GraphPatch.from_expr(upper, dom),
        graph_lower=GraphPatch.from_expr(lower, dom),
        implicit=ImplicitSurface.from_expr(
            f"(t - {_num(u0)})^2 - (4/{_num(a * a)})*({_num(a)}*(x^2+y^2)/4 - 1)"),
        verify_domain=vdom,
        seed_base=base,
        arc_span=1.0,
        radius_law=radius_law,
        expected_scan={"kind": "empty"},
        expected_chart_label="none",
    )

    def ruled():
        rho0sq = rho0 * rho0
        s_rim = (rho0sq - rim2) / rate
        s_range = (-1.0, 0.6 * s_rim)
        seed_c = catenoid_seed(a, base, s_range, sheet=1.0)

        def h0f(s: float) -> float:
            r2 = rho0sq - rate * s
            return u0 + (2.0 / a) * math.sqrt(a * r2 / 4.0 - 1.0)

        def h0d(s: float) -> float:
            r2 = rho0sq - rate * s
            return -(1.0 / math.sqrt(a)) / math.sqrt(a * r2 / 4.0 - 1.0)

        return RuledPatch(seed_c, Profile(f=h0f, d1=h0d), s_range, (-0.3, 0.3))

    entry.ruled = ruled

    def gsc():
        rho0sq = rho0 * rho0
        s_rim = (rho0sq - rim2) / rate
        up = catenoid_seed(a, base, (-0.5, s_rim), sheet=1.0)
        rim_pt = up.point(s_rim)

        def h0_up(s: float) -> float:
            return u0 + (2.0 / a) * math.sqrt(max(a * (rho0sq - rate * s) / 4.0 - 1.0, 0.0))

        low = catenoid_seed(a, rim_pt, (0.0, s_rim + 0.5), sheet=-1.0)

        def h0_low(s: float) -> float:
            return u0 - (2.0 / a) * math.sqrt(max(a * (rim2 + rate * s) / 4.0 - 1.0, 0.0))

        pieces = [GSCPiece(up, Profile(f=h0_up), -0.5, s_rim, name="upper"),
                  GSCPiece(low, Profile(f=h0_low), 0.0, s_rim + 0.5, name="lower")]
        return GeneralizedSeedCurve(pieces, [GSCJoin("b", "a")])

    entry.gsc = gsc
    return entry


def _counterexample() -> GalleryEntry:
    def member_wide(x, y):
        return x >= 0.1 and abs(math.atan2(y, x)) <= 0.95

    def member_tight(x, y):
        return x >= 0.25 and abs(math.atan2(y, x)) <= 0.9

    dom = PlanarDomain(0.1, 3.2, -3.2, 3.2, member_wide)
    vdom = PlanarDomain(0.25, 3.0, -3.0, 3.0, member_tight)

    def known_seed(z0):
        rho = math.hypot(*z0)
        th = math.atan2(z0[1], z0[0])
        lo = -(1.0 + th) * rho * 0.93
        hi = (1.0 - th) * rho * 0.93
        return circle_seed((0.0, 0.0), z0, (lo, hi))

    def known_h0(z0):
        rho = math.hypot(*z0)
        th = math.atan2(z0[1], z0[0])
        return Profile.from_expr(f"-atanh({_num(th)} + s/{_num(rho)})")

    entry = GalleryEntry(
        name="counterexample",
        params={},
        notes="y = -x tan(tanh t): entire graph over the xt-plane with empty "
              "characteristic locus that is not a vertical plane",
        graph=GraphPatch.from_expr("-atanh(atan(y/x))", dom),
        implicit=ImplicitSurface.from_expr("y + x*tan(tanh(t))"),
        verify_domain=vdom,
        seed_base=(1.0, 0.0),
        arc_span=0.85,
        known_seed=known_seed,
        known_kappa=lambda z0: -1.0 / math.hypot(*z0),
        known_h0=known_h0,
        expected_scan={"kind": "empty"},
        expected_chart_label="none",
        roundtrip_base=(1.0, 0.0),
        xt_graph=lambda x, t: -x * math.tan(math.tanh(t)),
    )
    entry.ruled = lambda: RuledPatch(
        circle_seed((0.0, 0.0), (1.0, 0.0), (-0.9, 0.9)),
        Profile.from_expr("-atanh(s)"), (-0.9, 0.9), (-0.4, 0.4))
    return entry


def _cylinder() -> GalleryEntry:
    dom = PlanarDomain(-0.99, 0.99, -2.2, 2.2)
    vdom = PlanarDomain(-0.95, 0.95, -2.0, 2.0)

    def make_pair():
        s_range = (-0.98, 0.98)
        s1 = RuledPatch(line_seed((0.0, 0.0), (1.0, 0.0), s_range),
                        Profile.from_expr("sqrt(1 - s^2)"), s_range, None)
        s2 = RuledPatch(line_seed((0.0, 0.0), (1.0, 0.0), s_range),
                        Profile.from_expr("-sqrt(1 - s^2)"), s_range, None)
        return s1, s2

    def gsc():
        s1, s2 = make_pair()
        pieces = [GSCPiece(s1.seed, s1.h0, -0.98, 0.98, name="upper"),
                  GSCPiece(s2.seed, s2.h0, -0.98, 0.98, name="lower")]
        # the sheets close up along the vertical tangent lines x = +-1
        joins = [GSCJoin("b", "b", plane_normal=(1.0, 0.0)),
                 GSCJoin("a", "a", plane_normal=(1.0, 0.0))]
        return GeneralizedSeedCurve(pieces, joins)

    entry = GalleryEntry(
        name="cylinder",
        params={},
        notes="(t - xy/2)^2 = 1 - x^2: topological cylinder with piecewise "
              "constant horizontal Gauss map (+-1, 0)",
        graph=GraphPatch.from_expr("sqrt(1 - x^2) + x*y/2", dom),
        graph_lower=GraphPatch.from_expr("-sqrt(1 - x^2) + x*y/2", dom),
        implicit=ImplicitSurface.from_expr("(t - x*y/2)^2 - (1 - x^2)"),
        verify_domain=vdom,
        seed_base=(0.0, 1.0),
        arc_span=0.9,
        known_kappa=lambda z0: 0.0,
        expected_chart_label="kappa-zero",
        expected_chart_root=lambda s: -s / math.sqrt(1.0 - s * s),
        extra={"implicit_residual": lambda x, y, t: (t - x * y / 2.0) ** 2 - (1.0 - x * x)},
    )
    entry.ruled_pair = make_pair
    entry.ruled = lambda: make_pair()[0]
    entry.gsc = gsc
    return entry


def _gencurve(n: int = 3) -> GalleryEntry:
    if n == 0:
        raise UnknownName("gencurve requires a nonzero integer n")
    odd = n % 2 == 1
    if odd:
        src = f"sign(x)*abs(x)^(1/{_num(float(n))}) + x*y/2"
        dom = PlanarDomain(-2.1, 2.1, -2.1, 2.1, lambda x, y: abs(x) >= 0.05)
        vdom = PlanarDomain(-2.0, 2.0, -2.0, 2.0, lambda x, y: abs(x) >= 0.1)
        graph = GraphPatch.from_expr(src, dom)
        graph_lower = None
    else:
        dom = PlanarDomain(0.05, 2.1, -2.1, 2.1)
        vdom = PlanarDomain(0.1, 2.0, -2.0, 2.0)
        graph = GraphPatch.from_expr(f"x^(1/{_num(float(n))}) + x*y/2", dom)
        graph_lower = GraphPatch.from_expr(f"-(x^(1/{_num(float(n))})) + x*y/2", dom)

    def gsc():
        if odd:
            p1 = GSCPiece(line_seed((0.0, 0.0), (1.0, 0.0), (-2.0, 0.0)),
                          Profile(f=lambda s: math.copysign(abs(s) ** (1.0 / n), s)),
                          -2.0, 0.0, name="x<0")
            p2 = GSCPiece(line_seed((0.0, 0.0), (1.0, 0.0), (0.0, 2.0)),
                          Profile(f=lambda s: math.copysign(abs(s) ** (1.0 / n), s)),
                          0.0, 2.0, name="x>0")
            joins = [GSCJoin("b", "a", plane_normal=(1.0, 0.0))]
        else:
            p1 = GSCPiece(line_seed((0.0, 0.0), (1.0, 0.0), (0.0, 2.0)),
                          Profile(f=lambda s: s ** (1.0 / n)), 0.0, 2.0, name="upper")
            p2 = GSCPiece(line_seed((0.0, 0.0), (1.0, 0.0), (0.0, 2.0)),
                          Profile(f=lambda s: -(s ** (1.0 / n))), 0.0, 2.0, name="lower")
            joins = [GSCJoin("a", "a", plane_normal=(1.0, 0.0))]
        return GeneralizedSeedCurve([p1, p2], joins)

    entry = GalleryEntry(
        name="gencurve-n",
        params={"n": n},
        notes="(t - xy/2)^n = x; needs a generalized seed curve (two pieces)",
        graph=graph,
        graph_lower=graph_lower,
        implicit=ImplicitSurface.from_expr(f"(t - x*y/2)^{_num(float(n))} - x"),
        verify_domain=vdom,
        seed_base=(1.0, 0.5),
        arc_span=0.7,
        known_kappa=lambda z0: 0.0,
    )
    entry.gsc = gsc
    s_range = (0.05, 2.0)
    entry.ruled = lambda: RuledPatch(
        line_seed((0.0, 0.0), (1.0, 0.0), s_range),
        Profile(f=lambda s: s ** (1.0 / n)), s_range, (-0.5, 0.5))
    return entry


def _optreg2() -> GalleryEntry:
    seed_c = optreg2_seed()

    def h0_rate(s: float) -> float:
        g = seed_c.point(s)
        d = seed_c.tangent(s)
        # chosen so that the angle function along the seed is identically -1
        return -0.5 * (d[0] * g[1] - d[1] * g[0]) + 1.0

    grid = np.linspace(-1.0, 1.0, 801)
    h0_vals = cumulative_integral(h0_rate, grid, tol=1e-11)
    h0 = _profile_from_samples(grid, h0_vals, h0_rate)

    def make_patch():
        return RuledPatch(seed_c, h0, (-1.0, 1.0), (-6.0, 6.0))

    entry = GalleryEntry(
        name="optreg2",
        params={},
        notes="seed curvature -|s|; characteristic branch with a corner at s=0",
        seed_base=None,
        extra={"branch": lambda s: (math.sqrt(1.0 + 2.0 * abs(s)) - 1.0) / abs(s)
               if s != 0.0 else 1.0},
    )
    entry.ruled = make_patch
    return entry


def _iso_profile(R: float = 1.0) -> GalleryEntry:
    r2 = R * R
    src = (f"0.25*sqrt(x^2+y^2)*sqrt({_num(r2)} - x^2 - y^2)"
           f" - ({_num(r2)}/4)*atan(sqrt((x^2+y^2)/({_num(r2)} - x^2 - y^2)))"
           f" + pi*{_num(r2)}/8")

    def member(lo, hi):
        return lambda x, y: lo * lo <= x * x + y * y <= hi * hi

    dom = PlanarDomain(-0.97 * R, 0.97 * R, -0.97 * R, 0.97 * R,
                       member(0.04 * R, 0.96 * R))
    vdom = PlanarDomain(-0.96 * R, 0.96 * R, -0.96 * R, 0.96 * R,
                        member(0.05 * R, 0.95 * R))
    return GalleryEntry(
        name="iso-profile",
        params={"R": R},
        notes="isoperimetric-type profile: constant H-mean curvature 2/R "
              "(upper sheet, graph orientation)",
        graph=GraphPatch.from_expr(src, dom),
        verify_domain=vdom,
        expected_curvature=2.0 / R,
        tol_h_analytic=1e-4,
    )


_BUILDERS: dict[str, Callable[..., GalleryEntry]] = {
    "char-plane": _char_plane,
    "general-plane": _general_plane,
    "hyperbolic": _hyperbolic,
    "catenoid": _catenoid,
    "counterexample": _counterexample,
    "cylinder": _cylinder,
    "gencurve-n": _gencurve,
    "optreg2": _optreg2,
    "iso-profile": _iso_profile,
}


def gallery_names() -> list[str]:
    return list(_BUILDERS.keys())


def gallery_get(name: str, **params) -> GalleryEntry:
    key = name
    if name.startswith("gencurve-"):
        suffix = name.split("-", 1)[1]
        key = "gencurve-n"
        if suffix != "n":
            try:
                params.setdefault("n", int(suffix))
            except ValueError:
                raise UnknownName(f"bad gencurve suffix in {name!r}") from None
    if key not in _BUILDERS:
        raise UnknownName(f"unknown gallery entry {name!r}; known: {gallery_names()}")
    try:
        return _BUILDERS[key](**params)
    except TypeError as err:
        raise UnknownName(f"bad parameters for {name!r}: {err}") from None


# ---------------------------------------------------------------------------
# Verification battery
# ---------------------------------------------------------------------------


def max_curvature_deviation(patch: GraphPatch, domain: PlanarDomain,
                            nx: int = 101, ny: int = 101,
                            expect: float = 0.0,
                            w_margin: float = W_MARGIN) -> float:
    """max |H - expect| over non-characteristic grid nodes (W > w_margin)."""
    worst = 0.0
    for x, y in Grid2(domain, nx, ny).nodes:
        hd = horizontal_data(patch, (x, y))
        if hd.w <= w_margin:
            continue
        val = h_mean_curvature(patch, (x, y), cross_check=False)
        worst = max(worst, abs(val - expect))
    return worst


def _seed_deviation(entry: GalleryEntry) -> tuple[float, SeedCurve]:
    extracted = extract_seed(entry.graph, entry.seed_base, entry.arc_span)
    worst = 0.0
    if entry.known_seed is not None:
        known = entry.known_seed(entry.seed_base)
        lo = max(extracted.s_min, known.s_min)
        hi = min(extracted.s_max, known.s_max)
        for s in np.linspace(lo, hi, 101):
            ge = extracted.point(float(s))
            gk = known.point(float(s))
            err = math.hypot(ge[0] - gk[0], ge[1] - gk[1]) / max(1.0, abs(float(s)))
            worst = max(worst, err)
    elif entry.radius_law is not None:
        for s in np.linspace(max(extracted.s_min, -1.0), min(extracted.s_max, 0.0), 101):
            g = extracted.point(float(s))
            law = entry.radius_law(entry.seed_base, float(s))
            worst = max(worst, abs(g[0] * g[0] + g[1] * g[1] - law))
    return worst, extracted


def _check_locus(entry: GalleryEntry, report_checks: list[Check]):
    patch = entry.ruled()
    rep = characteristic_locus(patch)
    if entry.expected_chart_label is None:
        return rep
    if entry.expected_chart_label == "none":
        report_checks.append(check_flag("locus_empty", rep.empty))
        return rep
    labels = {lab for _, lab in rep.labels}
    report_checks.append(check_flag(
        f"locus_label_{entry.expected_chart_label}",
        labels == {entry.expected_chart_label},
        note=f"labels seen: {sorted(labels)}"))
    if entry.expected_chart_root is not None:
        worst = max(abs(r.r - entry.expected_chart_root(r.s)) for r in rep.roots)
        report_checks.append(check_leq("locus_root_value", worst, 1e-6))
    report_checks.append(check_flag("locus_verified",
                                    all(r.verified for r in rep.roots)))
    return rep


def gallery_verify(name: str, tolerances: Optional[dict] = None, **params) -> list[Check]:
    """Run the standard checks for one entry; returns labeled pass/fail records."""
    tol = {"h_analytic": None, "h_fd": None, "seed": 1e-6, "kappa": 1e-5,
           "roundtrip": 1e-5, "gsc": 1e-6}
    tol.update(tolerances or {})
    entry = gallery_get(name, **params)
    checks: list[Check] = []

    if entry.graph is not None:
        ta = tol["h_analytic"] or entry.tol_h_analytic
        tf = tol["h_fd"] or entry.tol_h_fd
        dev = max_curvature_deviation(entry.graph, entry.verify_domain,
                                      expect=entry.expected_curvature)
        checks.append(check_leq("h_scan_analytic", dev, ta))
        dev_fd = max_curvature_deviation(entry.graph.fd_only(), entry.verify_domain,
                                         expect=entry.expected_curvature)
        checks.append(check_leq("h_scan_fd", dev_fd, tf))
        if entry.graph_lower is not None:
            dev2 = max_curvature_deviation(entry.graph_lower, entry.verify_domain,
                                           expect=-entry.expected_curvature)
            checks.append(check_leq("h_scan_lower", dev2, ta))

    if entry.graph is not None and entry.seed_base is not None:
        worst, extracted = _seed_deviation(entry)
        if entry.known_seed is not None or entry.radius_law is not None:
            checks.append(check_leq("seed_extraction", worst, tol["seed"]))
        if entry.known_kappa is not None:
            kk = entry.known_kappa(entry.seed_base)
            span = min(-extracted.s_min, extracted.s_max) * 0.9
            kdev = max(abs(curvature(extracted, float(s)) - kk)
                       for s in np.linspace(-span, span, 41))
            checks.append(check_leq("seed_kappa", kdev, tol["kappa"]))

    if entry.ruled is not None:
        _check_locus(entry, checks)
        patch = entry.ruled()
        r_lo, r_hi = patch.r_interval()
        worst_h = 0.0
        worst_res = 0.0
        for s in np.linspace(*patch.s_range, 9)[1:-1]:
            for r in np.linspace(r_lo, r_hi, 9):
                s, r = float(s), float(r)
                det = -1.0 + r * curvature(patch.seed, s)
                if abs(det) <= 0.15:   # also keeps 1 - r*kappa away from 0
                    continue
                if abs(patch.w(s, r)) < 1e-3:
                    continue
                worst_res = max(worst_res, patch.w_ode_residual(s, r))
                worst_h = max(worst_h, abs(curvature_on_patch(patch, s, r)))
        checks.append(check_leq("built_patch_minimal", worst_h, 1e-6))
        checks.append(check_leq("w_ode_residual", worst_res, 1e-6))
        worst_w = 0.0
        for s in np.linspace(*patch.s_range, 7)[1:-1]:
            for r in np.linspace(r_lo, r_hi, 7):
                s, r = float(s), float(r)
                if abs(-1.0 + r * curvature(patch.seed, s)) <= 0.15:
                    continue
                worst_w = max(worst_w, abs(abs(patch.w(s, r)) - w_direct(patch, s, r)))
        checks.append(check_leq("w_formula_vs_direct", worst_w, 1e-6))

    if entry.expected_scan is not None and entry.graph is not None:
        scan = characteristic_scan(entry.graph,
                                   Grid2(entry.scan_domain or entry.verify_domain, 101, 101),
                                   1e-9)
        kind = entry.expected_scan["kind"]
        if kind == "empty":
            checks.append(check_flag("scan_empty", scan.empty))
        elif kind == "point":
            ok = len(scan.components) == 1
            if ok:
                cx, cy = scan.components[0].representative
                ax, ay = entry.expected_scan["at"]
                ok = math.hypot(cx - ax, cy - ay) <= 2e-2
            checks.append(check_flag("scan_point", ok))
        elif kind == "line-y0":
            ok = bool(scan.components) and all(
                abs(y) <= 1e-9 for comp in scan.components for _, y in comp.nodes)
            checks.append(check_flag("scan_on_x_axis", ok))

    if entry.roundtrip_base is not None:
        err = roundtrip(entry.graph, entry.roundtrip_base,
                        arc_span=entry.arc_span, r_span=0.4)
        checks.append(check_leq("roundtrip", err, tol["roundtrip"]))

    if entry.gsc is not None:
        validation = validate_gsc(entry.gsc(), tol["gsc"])
        checks.append(check_flag("gsc_joins", validation.valid,
                                 note=f"max gap {validation.max_gap:.2e}"))

    if entry.name == "counterexample":
        checks.extend(_counterexample_triple(entry))
    if entry.name == "optreg2":
        checks.extend(_optreg2_corner(entry))
    if entry.name == "cylinder":
        checks.extend(_cylinder_checks(entry))
    if entry.name == "gencurve-n" and entry.params["n"] % 2 == 0:
        checks.extend(_gencurve_even_checks(entry))
    if entry.graph is not None and entry.implicit is not None:
        worst = 0.0
        for x, y in Grid2(entry.verify_domain, 11, 11).nodes:
            t = entry.graph.h.value(x, y)
            worst = max(worst, abs(entry.implicit.phi(x, y, t)))
        checks.append(check_leq("graph_vs_implicit", worst, 1e-10))
    return checks


def _counterexample_triple(entry: GalleryEntry) -> list[Check]:
    checks = []
    # entire graph over the xt-plane: y(x, t) finite on a window
    ok = True
    for x in np.linspace(-3.0, 3.0, 31):
        for t in np.linspace(-3.0, 3.0, 31):
            if not math.isfinite(entry.xt_graph(float(x), float(t))):
                ok = False
    checks.append(check_flag("entire_xt_graph", ok))
    # empty characteristic locus: W > 0 on the surface sample
    wmin = math.inf
    for x in np.linspace(-3.0, 3.0, 31):
        for t in np.linspace(-3.0, 3.0, 31):
            y = entry.xt_graph(float(x), float(t))
            hd = entry.implicit.horizontal_data(HPoint(float(x), y, float(t)))
            wmin = min(wmin, hd.w)
    checks.append(check_flag("empty_characteristic_locus", wmin > 1e-6,
                             note=f"min W = {wmin:.3e}"))
    # not a vertical plane: fit a x + b y = c to surface points, residual large
    pts = []
    for x in np.linspace(-3.0, 3.0, 13):
        for t in np.linspace(-3.0, 3.0, 13):
            pts.append((float(x), entry.xt_graph(float(x), float(t))))
    arr = np.array(pts)
    arr -= arr.mean(axis=0)
    _, sv, _ = np.linalg.svd(arr, full_matrices=False)
    checks.append(check_flag("not_vertical_plane", float(sv[-1]) > 1e-2,
                             note=f"planar residual {float(sv[-1]):.3e}"))
    return checks


def _optreg2_corner(entry: GalleryEntry) -> list[Check]:
    patch = entry.ruled()
    checks = []
    rep = characteristic_locus(patch, n_s=41)
    branch = entry.extra["branch"]
    worst = 0.0
    for root in rep.roots:
        if root.r > 0:     # the bounded branch
            worst = max(worst, abs(root.r - branch(root.s)))
    checks.append(check_leq("optreg2_branch_values", worst, 1e-8))
    val0 = branch(0.0)
    checks.append(check_leq("optreg2_branch_at_0", abs(val0 - 1.0), 1e-12))
    sp = locus_branch_slope(patch, 0.0, +1, which="max")
    sm = locus_branch_slope(patch, 0.0, -1, which="max")
    checks.append(check_leq("optreg2_slope_jump", abs(abs(sp - sm) - 1.0), 1e-3,
                            note=f"slopes {sp:.6f} / {sm:.6f}"))
    return checks


def _cylinder_checks(entry: GalleryEntry) -> list[Check]:
    checks = []
    s1, s2 = entry.ruled_pair()
    resid = entry.extra["implicit_residual"]
    worst = 0.0
    for patch in (s1, s2):
        for s in np.linspace(*patch.s_range, 25):
            for r in np.linspace(-2.0, 2.0, 25):
                g = patch.embed(float(s), float(r))
                worst = max(worst, abs(resid(g.x, g.y, g.t)))
    checks.append(check_leq("cylinder_implicit_residual", worst, 1e-9))
    # piecewise-constant Gauss map (+-1, 0) off the characteristic locus
    worst_nu = 0.0
    for patch in (s1, s2):
        for s in np.linspace(-0.9, 0.9, 13):
            for r in np.linspace(-1.5, 1.5, 13):
                s, r = float(s), float(r)
                if abs(patch.w(s, r)) < 1e-2:
                    continue
                x, y = patch.seed.point(s)[0], -r
                hx, hy = chart_height_gradient(patch, s, r)
                p = -(hx + 0.5 * y)
                q = -(hy - 0.5 * x)
                w = math.hypot(p, q)
                worst_nu = max(worst_nu, abs(abs(p / w) - 1.0), abs(q / w))
    checks.append(check_leq("cylinder_gauss_piecewise", worst_nu, 1e-9))
    return checks


def _gencurve_even_checks(entry: GalleryEntry) -> list[Check]:
    # two sheets over the same planar points: not globally a graph
    from .errors import NotAGraphAfterTransform
    from .surface import points_to_graph_samples
    pts = []
    for x in np.linspace(0.2, 1.8, 9):
        for y in np.linspace(-1.0, 1.0, 9):
            pts.append(entry.graph.point(float(x), float(y)))
            pts.append(entry.graph_lower.point(float(x), float(y)))
    try:
        points_to_graph_samples(pts, tol=1e-6)
        two_sheets = False
    except NotAGraphAfterTransform:
        two_sheets = True
    return [check_flag("gencurve_even_two_sheets", two_sheets)]
