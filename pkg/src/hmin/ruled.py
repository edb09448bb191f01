"""Ruled H-minimal surfaces built from a seed curve and a height function.

A pair (gamma, h0) determines the surface patch

    embed(s, r) = (F(s, r), h0(s) - (r/2) <gamma(s), gamma'(s)>)

whose rules r -> embed(s, r) are straight lines and Carnot-Caratheodory
geodesics; in group form a rule is d(s) o delta_r v(s) with
d(s) = (gamma(s), h0(s)) and v(s) = (gamma2', -gamma1', 0).

The angle function W restricted to the chart satisfies the Frobenius ODE
W_r = 1 + kappa W / (1 - r kappa) with closed-form solution

    W(s, r) = (W0(s) + r - (r^2/2) kappa(s)) / (1 - r kappa(s)),
    W0(s)   = -h0'(s) + (1/2)(gamma1 gamma2' - gamma2 gamma1').

W(s, r) is signed: the reconstructed graph's angle function is |W(s, r)|
and its Gauss map is sign(W) * gamma'(s).  The characteristic locus is
the zero set of the numerator, solved per s:

    kappa ~ 0        ->  single root r = -W0(s)
    D = 1 + 2 W0 k   ->  two roots r = 1/k +- sqrt(D)/k   (D > 0)
                         double root r = 1/k              (D = 0)
                         no root                          (D < 0)

Every reported root is re-verified against the angle function computed
directly from the reconstructed graph, which is also the oracle that
pins down the sign conventions above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import (DegenerateDenominator, FieldUndefined, HminError,
                     OutOfRange, SingularRule)
from .fields import PlanarDomain, Profile, ScalarField2
from .heis import HPoint, dilate, group_mul
from .seed import (SeedCurve, curvature, extract_seed, rule_jacobian,
                   rule_jacobian_det, rule_point, singular_locus, SingularLocus,
                   EPS_KAPPA)
from .surface import EPS_CHAR, GraphPatch, h_mean_curvature, horizontal_data

EPS_DELTA = 1e-9
DET_GUARD = 0.1


def _inner(curve: SeedCurve, s: float) -> float:
    g, d = curve.point(s), curve.tangent(s)
    return g[0] * d[0] + g[1] * d[1]


@dataclass
class RuledPatch:
    """A seed-and-height surface patch.

    ``r_range`` is a fixed interval, a per-s interval function, or None
    for all of R (an extended graph).
    """

    seed: SeedCurve
    h0: Profile
    s_range: tuple[float, float]
    r_range: object = (-1.0, 1.0)

    def _check_s(self, s: float):
        if s < self.s_range[0] - 1e-9 or s > self.s_range[1] + 1e-9:
            raise OutOfRange(f"s={s} outside {self.s_range}")

    def r_at(self, s: float, fallback: float = 1.0) -> tuple[float, float]:
        """The rule-parameter interval over the rule through gamma(s)."""
        if callable(self.r_range):
            lo, hi = self.r_range(s)
            return (float(lo), float(hi))
        return self.r_interval(fallback)

    def height(self, s: float, r: float) -> float:
        self._check_s(s)
        return self.h0(s) - 0.5 * r * _inner(self.seed, s)

    def embed(self, s: float, r: float) -> HPoint:
        x, y = rule_point(self.seed, s, r)
        return HPoint(x, y, self.height(s, r))

    def w0(self, s: float) -> float:
        """Angle function along the seed: -h0' + (gamma1 gamma2' - gamma2 gamma1')/2."""
        self._check_s(s)
        g, d = self.seed.point(s), self.seed.tangent(s)
        return -self.h0.d(s) + 0.5 * (g[0] * d[1] - g[1] * d[0])

    def w(self, s: float, r: float) -> float:
        """Signed angle function on the chart (Frobenius closed form)."""
        kap = curvature(self.seed, s)
        den = 1.0 - r * kap
        if abs(den) < 1e-12:
            raise SingularRule(f"1 - r*kappa = {den} at (s={s}, r={r})")
        return (self.w0(s) + r - 0.5 * r * r * kap) / den

    def w_ode_residual(self, s: float, r: float, step: float = 1e-6) -> float:
        """|dW/dr - 1 - kappa W/(1 - r kappa)| with dW/dr by central differences."""
        kap = curvature(self.seed, s)
        den = 1.0 - r * kap
        if abs(den) < 1e-12:
            raise SingularRule(f"1 - r*kappa = {den} at (s={s}, r={r})")
        dw = (self.w(s, r + step) - self.w(s, r - step)) / (2.0 * step)
        return abs(dw - 1.0 - kap * self.w(s, r) / den)

    def extended(self) -> "RuledPatch":
        return replace(self, r_range=None)

    def r_interval(self, fallback: float = 1.0) -> tuple[float, float]:
        """A global r interval: the hull over s for per-s ranges."""
        if self.r_range is None:
            return (-fallback, fallback)
        if callable(self.r_range):
            samples = [self.r_range(float(s))
                       for s in np.linspace(*self.s_range, 9)]
            return (min(lo for lo, _ in samples), max(hi for _, hi in samples))
        return self.r_range


def validate_arclength(curve: SeedCurve, s_range: tuple[float, float],
                       tol: float = 1e-6, n: int = 64) -> float:
    """Max deviation of |gamma'| from 1 over the range; raises when beyond tol."""
    worst = 0.0
    for s in np.linspace(s_range[0], s_range[1], n):
        d = curve.tangent(float(s))
        worst = max(worst, abs(math.hypot(*d) - 1.0))
    if worst > tol:
        raise HminError(f"seed is not arclength-parameterized: max ||gamma'|-1| = {worst}")
    return worst


def build_surface(seed_curve: SeedCurve, h0: Profile,
                  s_range: tuple[float, float],
                  r_range: Optional[tuple[float, float]]) -> RuledPatch:
    validate_arclength(seed_curve, s_range)
    return RuledPatch(seed_curve, h0, s_range, r_range)


# ---------------------------------------------------------------------------
# Local graph reconstruction (the oracle side of every W/curvature check)
# ---------------------------------------------------------------------------


def invert_chart(patch: RuledPatch, z: tuple[float, float],
                 start: tuple[float, float], tol: float = 1e-13,
                 max_iter: int = 60) -> tuple[float, float]:
    """Newton solve of F(s, r) = z, warm-started at ``start``."""
    s, r = start
    for _ in range(max_iter):
        fx, fy = rule_point(patch.seed, s, r)
        rx, ry = fx - z[0], fy - z[1]
        if math.hypot(rx, ry) < tol:
            return (s, r)
        j = rule_jacobian(patch.seed, s, r)
        det = j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0]
        if abs(det) < 1e-14:
            raise FieldUndefined(f"chart Jacobian singular near (s={s}, r={r})")
        ds = (rx * j[1, 1] - ry * j[0, 1]) / det
        dr = (ry * j[0, 0] - rx * j[1, 0]) / det
        s, r = s - ds, r - dr
    raise FieldUndefined(f"chart inversion did not converge at z={z}")


def chart_height_gradient(patch: RuledPatch, s: float, r: float) -> tuple[float, float]:
    """Planar gradient of the reconstructed height at F(s, r) by the chain rule."""
    g, d1, d2 = patch.seed.point(s), patch.seed.tangent(s), patch.seed.second(s)
    dh_ds = patch.h0.d(s) - 0.5 * r * (1.0 + g[0] * d2[0] + g[1] * d2[1])
    dh_dr = -0.5 * (g[0] * d1[0] + g[1] * d1[1])
    j = rule_jacobian(patch.seed, s, r)
    det = j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0]
    if abs(det) < 1e-14:
        raise FieldUndefined(f"chart Jacobian singular at (s={s}, r={r})")
    # grad h = J^{-T} (dh_ds, dh_dr)
    hx = (j[1, 1] * dh_ds - j[1, 0] * dh_dr) / det
    hy = (-j[0, 1] * dh_ds + j[0, 0] * dh_dr) / det
    return (hx, hy)


def w_direct(patch: RuledPatch, s: float, r: float, method: str = "chain") -> float:
    """Angle function of the reconstructed graph at F(s, r), from first principles.

    ``chain`` differentiates the reconstructed height through the chart
    (exact up to interpolation error); ``invert`` finite-differences the
    height obtained by Newton-inverting F, a fully independent route.
    """
    x, y = rule_point(patch.seed, s, r)
    if method == "chain":
        hx, hy = chart_height_gradient(patch, s, r)
    elif method == "invert":
        step = 1e-5

        def h_at(zx: float, zy: float) -> float:
            si, ri = invert_chart(patch, (zx, zy), (s, r))
            return patch.height(si, ri)

        hx = (h_at(x + step, y) - h_at(x - step, y)) / (2.0 * step)
        hy = (h_at(x, y + step) - h_at(x, y - step)) / (2.0 * step)
    else:
        raise ValueError(f"unknown method {method!r}")
    p = -(hx + 0.5 * y)
    q = -(hy - 0.5 * x)
    return math.hypot(p, q)


def graph_field(patch: RuledPatch, s0: float, r0: float, halfwidth: float = 1.0) -> GraphPatch:
    """A GraphPatch view of the built surface near embed(s0, r0).

    Heights come from Newton inversion of the chart; the gradient is exact
    via the chain rule, and second derivatives fall back to differencing
    the gradient.  Valid while the inversion stays in the (s0, r0) basin,
    which is all the stencils used here need.
    """
    zx, zy = rule_point(patch.seed, s0, r0)

    def solve(x: float, y: float) -> tuple[float, float]:
        return invert_chart(patch, (x, y), (s0, r0))

    def f(x: float, y: float) -> float:
        return patch.height(*solve(x, y))

    def grad(x: float, y: float) -> tuple[float, float]:
        return chart_height_gradient(patch, *solve(x, y))

    dom = PlanarDomain(zx - halfwidth, zx + halfwidth, zy - halfwidth, zy + halfwidth)
    # the gradient is exact, so its difference step can sit well below the
    # generic default; third derivatives blow up near the chart fold and
    # would otherwise dominate the Hessian truncation error
    return GraphPatch(dom, ScalarField2(f=f, grad=grad, domain=dom, fd_step=1e-6))


def curvature_on_patch(patch: RuledPatch, s: float, r: float,
                       eps_char: float = EPS_CHAR) -> float:
    """H-mean curvature of the built patch where it is locally a graph."""
    det = rule_jacobian_det(patch.seed, s, r)
    if abs(det) <= DET_GUARD:
        raise FieldUndefined(f"|det DF| = {abs(det)} <= {DET_GUARD} at (s={s}, r={r})")
    gp = graph_field(patch, s, r)
    z = rule_point(patch.seed, s, r)
    return h_mean_curvature(gp, z, eps_char=eps_char, cross_check=False)


# ---------------------------------------------------------------------------
# Characteristic locus in the (s, r) chart
# ---------------------------------------------------------------------------

LABEL_TWO = "two-roots"
LABEL_DOUBLE = "double-root"
LABEL_NONE = "none"
LABEL_KAPPA_ZERO = "kappa-zero"


@dataclass
class LocusRoot:
    s: float
    r: float
    label: str
    image: HPoint
    w_formula: float              # signed W at the root (should vanish)
    w_direct: Optional[float]     # direct W on the reconstructed graph, if checkable
    det: float                    # det DF at the root
    verified: bool = False


@dataclass
class LociReport:
    roots: list[LocusRoot]
    labels: list[tuple[float, str]]           # (s, case label) for every sampled s
    singular: SingularLocus

    @property
    def empty(self) -> bool:
        return not self.roots

    def with_label(self, label: str) -> list[LocusRoot]:
        return [r for r in self.roots if r.label == label]

    def branch_values(self) -> dict[str, list[tuple[float, float]]]:
        out: dict[str, list[tuple[float, float]]] = {}
        for root in self.roots:
            out.setdefault(root.label, []).append((root.s, root.r))
        return out


def _roots_at(patch: RuledPatch, s: float, eps_kappa: float,
              eps_delta: float) -> tuple[str, list[float]]:
    kap = curvature(patch.seed, s)
    w0 = patch.w0(s)
    if abs(kap) <= eps_kappa:
        return LABEL_KAPPA_ZERO, [-w0]
    disc = 1.0 + 2.0 * w0 * kap
    if abs(disc) <= eps_delta:
        return LABEL_DOUBLE, [1.0 / kap]
    if disc < 0.0:
        return LABEL_NONE, []
    root = math.sqrt(disc)
    pair = sorted([(1.0 - root) / kap, (1.0 + root) / kap])
    return LABEL_TWO, pair


def characteristic_locus(patch: RuledPatch, n_s: int = 201,
                         eps_kappa: float = EPS_KAPPA,
                         eps_delta: float = EPS_DELTA,
                         verify: bool = True,
                         w_tol: float = 1e-8,
                         direct_tol: float = 1e-6) -> LociReport:
    """Solve the characteristic quadratic per sampled s and verify each root.

    Verification is two-sided: the closed-form W must vanish at the root,
    and where the chart is invertible (|det DF| > 0.1) the angle function
    of the reconstructed graph must vanish too; near-singular roots are
    instead probed at nearby r, comparing |W| against the direct value.
    """
    s_lo, s_hi = patch.s_range
    roots: list[LocusRoot] = []
    labels: list[tuple[float, str]] = []
    for s in np.linspace(s_lo, s_hi, n_s):
        s = float(s)
        label, rs = _roots_at(patch, s, eps_kappa, eps_delta)
        labels.append((s, label))
        for r in rs:
            try:
                wf = patch.w(s, r)
            except SingularRule:
                wf = patch.w0(s) + r - 0.5 * r * r * curvature(patch.seed, s)
            det = rule_jacobian_det(patch.seed, s, r)
            image = patch.embed(s, r)
            wd = None
            ok = abs(wf) <= w_tol
            if verify and ok:
                if abs(det) > DET_GUARD:
                    wd = w_direct(patch, s, r)
                    ok = wd <= direct_tol
                else:
                    # probe the rule on the invertible side of the fold
                    probe = r + (0.5 if det < 0 else -0.5) * 0.5
                    for cand in (probe, r + 0.25, r - 0.25):
                        if abs(rule_jacobian_det(patch.seed, s, cand)) > DET_GUARD:
                            wd = w_direct(patch, s, cand)
                            ok = abs(wd - abs(patch.w(s, cand))) <= direct_tol
                            break
            roots.append(LocusRoot(s, r, label, image, wf, wd, det, ok))
    return LociReport(roots, labels, singular_locus(patch.seed, eps_kappa))


def locus_branch_slope(patch: RuledPatch, s: float, side: int,
                       which: str = "min", h: float = 1e-3,
                       eps_kappa: float = EPS_KAPPA,
                       eps_delta: float = EPS_DELTA) -> float:
    """One-sided ds-slope of a characteristic branch at s, second order.

    ``side`` is +1 (limit from above) or -1 (from below); ``which`` picks
    the branch by root ordering ("min"/"max").
    """

    def branch(sv: float) -> float:
        _, rs = _roots_at(patch, sv, eps_kappa, eps_delta)
        if not rs:
            raise FieldUndefined(f"no characteristic root at s={sv}")
        return min(rs) if which == "min" else max(rs)

    c0 = branch(s)
    c1 = branch(s + side * h)
    c2 = branch(s + side * 2.0 * h)
    return side * (4.0 * c1 - c2 - 3.0 * c0) / (2.0 * h)


# ---------------------------------------------------------------------------
# Rules as geodesics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    """One straight rule of the patch, in both group and chart form."""

    base: HPoint                        # d(s) = (gamma(s), h0(s))
    direction: HPoint                   # v(s) = (gamma2', -gamma1', 0)

    def point(self, r: float) -> HPoint:
        return group_mul(self.base, dilate(r, self.direction))

    def cc_distance(self, r1: float, r2: float) -> float:
        # d(s) cancels on the left; delta_{r2} v^-1 o delta_{r1} v = delta_{r1-r2} v,
        # whose cc-distance to the origin is |r1 - r2| * |v|_plane.
        speed = math.hypot(self.direction.x, self.direction.y)
        return abs(r1 - r2) * speed


def rule(patch: RuledPatch, s: float) -> Rule:
    patch._check_s(s)
    g, d = patch.seed.point(s), patch.seed.tangent(s)
    return Rule(HPoint(g[0], g[1], patch.h0(s)), HPoint(d[1], -d[0], 0.0))


def extend_rules(patch: RuledPatch) -> RuledPatch:
    """Extended graph: same seed and height function, rules over all of R."""
    return patch.extended()


# ---------------------------------------------------------------------------
# Generalized seed curves
# ---------------------------------------------------------------------------


@dataclass
class GSCPiece:
    curve: SeedCurve
    h0: Profile
    a: float
    b: float
    name: str = ""

    def endpoint(self, end: str) -> Optional[tuple[float, float]]:
        s = self.a if end == "a" else self.b
        if not math.isfinite(s):
            return None
        return self.curve.point(s)


@dataclass
class GSCJoin:
    """How consecutive pieces meet; may carry a vertical-plane normal."""

    end_left: str = "b"
    end_right: str = "a"
    plane_normal: Optional[tuple[float, float]] = None


@dataclass
class GeneralizedSeedCurve:
    pieces: list[GSCPiece]
    joins: list[GSCJoin] = field(default_factory=list)

    def __post_init__(self):
        if not self.joins and len(self.pieces) > 1:
            self.joins = [GSCJoin() for _ in range(len(self.pieces) - 1)]


@dataclass
class JoinCheck:
    index: int
    gap: Optional[float]
    ok: bool
    note: str = ""


@dataclass
class GSCValidation:
    checks: list[JoinCheck]

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def max_gap(self) -> float:
        gaps = [c.gap for c in self.checks if c.gap is not None]
        return max(gaps) if gaps else 0.0


def validate_gsc(gsc: GeneralizedSeedCurve, tol: float) -> GSCValidation:
    """Check planar endpoint matching for every adjacent pair of pieces.

    A joins list as long as the pieces list closes the chain (the last
    join matches the last piece back to the first), as for cylinders.
    """
    checks = []
    n = len(gsc.pieces)
    for i, join in enumerate(gsc.joins):
        left = gsc.pieces[i % n].endpoint(join.end_left)
        right = gsc.pieces[(i + 1) % n].endpoint(join.end_right)
        if left is None or right is None:
            checks.append(JoinCheck(i, None, False, "join at an infinite endpoint"))
            continue
        gap = math.hypot(left[0] - right[0], left[1] - right[1])
        checks.append(JoinCheck(i, gap, gap <= tol))
    return GSCValidation(checks)


def constant_curvature_test(gsc: GeneralizedSeedCurve, tol: float,
                            n: int = 101) -> tuple[bool, list[dict]]:
    """True iff each piece's signed curvature is constant to tol.

    The constants may differ from piece to piece.
    """
    summary = []
    ok = True
    for piece in gsc.pieces:
        lo = piece.a if math.isfinite(piece.a) else piece.curve.s_min
        hi = piece.b if math.isfinite(piece.b) else piece.curve.s_max
        lo = max(lo, piece.curve.s_min)
        hi = min(hi, piece.curve.s_max)
        kappas = np.array([curvature(piece.curve, float(s)) for s in np.linspace(lo, hi, n)])
        mean = float(kappas.mean())
        dev = float(np.abs(kappas - mean).max())
        summary.append({"name": piece.name, "kappa": mean, "max_dev": dev})
        ok = ok and dev <= tol
    return ok, summary


def bernstein_quotient(curve: SeedCurve, s: float) -> float:
    """gamma1'(s) / <gamma(s), gamma'(s)> for a seed normalized to
    gamma(0) = 0, gamma'(0) = (0, 1); constant = kappa(0) for graphs over a plane."""
    den = _inner(curve, s)
    if abs(den) < 1e-12:
        raise DegenerateDenominator(f"<gamma, gamma'> = {den} at s={s}")
    return curve.tangent(s)[0] / den


# ---------------------------------------------------------------------------
# Representation round-trip and the entire-graph classifier
# ---------------------------------------------------------------------------


def lifted_height(patch: GraphPatch, curve: SeedCurve) -> Profile:
    """h0(s) = h(gamma(s)) along an extracted seed."""

    def f(s: float) -> float:
        x, y = curve.point(s)
        return patch.h.value(x, y)

    return Profile(f=f)


def roundtrip(patch: GraphPatch, z0: tuple[float, float],
              arc_span: float = 1.0, r_span: float = 0.5,
              n_s: int = 21, n_r: int = 21,
              step: float = 1e-3) -> float:
    """Extract (seed, h0), rebuild via the representation, compare heights.

    Returns the max |h_rebuilt - h| over chart samples that are graph-valid
    (|det DF| > 0.1) and land inside the patch domain.
    """
    curve = extract_seed(patch, z0, arc_span, step=step)
    h0 = lifted_height(patch, curve)
    span = min(arc_span, -curve.s_min, curve.s_max)
    built = RuledPatch(curve, h0, (-span, span), (-r_span, r_span))
    worst = 0.0
    count = 0
    for s in np.linspace(-span, span, n_s):
        for r in np.linspace(-r_span, r_span, n_r):
            s, r = float(s), float(r)
            if abs(rule_jacobian_det(curve, s, r)) <= DET_GUARD:
                continue
            x, y = rule_point(curve, s, r)
            if not patch.domain.contains(x, y):
                continue
            err = abs(built.height(s, r) - patch.h.value(x, y))
            worst = max(worst, err)
            count += 1
    if count == 0:
        raise FieldUndefined("no graph-valid chart samples landed in the patch domain")
    return worst


@dataclass
class Class1:
    """Entire minimal graph with circular seed: the plane a x + b y + c t = d."""

    a: float
    b: float
    c: float
    d: float
    sigma: tuple[float, float, float]
    residual: float

    kind: str = "class1"


@dataclass
class Class2:
    """Entire minimal graph with straight seed: direction, base point, heights."""

    direction: tuple[float, float]
    base: tuple[float, float, float]
    h0_samples: list[tuple[float, float]]
    alpha: Optional[float]
    rebuild_error: float

    kind: str = "class2"


@dataclass
class NotMinimal:
    max_curvature: float
    at: tuple[float, float]

    kind: str = "not-minimal"


@dataclass
class NotEntire:
    reason: str

    kind: str = "not-entire"


Classification = Class1 | Class2 | NotMinimal | NotEntire


def classify_entire_graph(patch: GraphPatch, tol: float = 1e-6,
                          n_grid: int = 21, tol_kappa: float = 1e-4) -> Classification:
    """Classify an entire minimal graph: circular seed means a plane,
    straight seed means the shear family t = h0(ax+by) - (ax+by)(bx-ay)/2."""
    dom = patch.domain
    xs = np.linspace(dom.xmin, dom.xmax, n_grid)
    ys = np.linspace(dom.ymin, dom.ymax, n_grid)

    best = (0.0, (0.0, 0.0))
    worst_h = (0.0, (0.0, 0.0))
    samples = []
    # seed extraction needs room around its base point; keep candidates
    # away from the window boundary
    margin_x = 0.25 * (dom.xmax - dom.xmin)
    margin_y = 0.25 * (dom.ymax - dom.ymin)
    for x in xs:
        for y in ys:
            x, y = float(x), float(y)
            if not dom.contains(x, y):
                return NotEntire(f"window point ({x}, {y}) outside patch domain")
            v = patch.h.value(x, y)
            if not math.isfinite(v):
                return NotEntire(f"height not finite at ({x}, {y})")
            samples.append((x, y, v))
            hd = horizontal_data(patch, (x, y))
            interior = (dom.xmin + margin_x <= x <= dom.xmax - margin_x
                        and dom.ymin + margin_y <= y <= dom.ymax - margin_y)
            if interior and hd.w > best[0]:
                best = (hd.w, (x, y))
            if hd.w > 1e-3:
                hcur = abs(h_mean_curvature(patch, (x, y), cross_check=False))
                if hcur > worst_h[0]:
                    worst_h = (hcur, (x, y))
    if worst_h[0] > tol:
        return NotMinimal(worst_h[0], worst_h[1])
    if best[0] <= 1e-6:
        return NotEntire("no usable non-characteristic base point in the window")

    z0 = best[1]
    window = min(dom.xmax - dom.xmin, dom.ymax - dom.ymin)
    span = min(1.5, window / 4.0)
    curve = extract_seed(patch, z0, span)
    lo = max(curve.s_min, -span / 2)
    hi = min(curve.s_max, span / 2)
    kappas = np.array([curvature(curve, float(s)) for s in np.linspace(lo, hi, 41)])

    if np.abs(kappas).max() <= tol_kappa:
        # straight seed: report direction, lifted base point and heights
        d = curve.tangent(0.0)
        g0 = curve.point(0.0)
        base = (g0[0], g0[1], patch.h.value(*g0))
        h0s = [(float(s), patch.h.value(*curve.point(float(s))))
               for s in np.linspace(lo, hi, 21)]
        alpha = None
        if abs(d[1]) > 1e-9:
            alpha = -d[0] / (2.0 * d[1])
        err = roundtrip(patch, z0, arc_span=span, r_span=min(1.0, window / 6.0))
        return Class2(direction=d, base=base, h0_samples=h0s, alpha=alpha,
                      rebuild_error=err)

    if np.abs(kappas - kappas.mean()).max() <= tol_kappa * max(1.0, abs(kappas.mean())):
        # circular seed: the graph must be a plane; fit a x + b y + c t = d
        arr = np.array(samples)
        design = np.column_stack([arr[:, 0], arr[:, 1], np.ones(len(arr))])
        coef, *_ = np.linalg.lstsq(design, arr[:, 2], rcond=None)
        alpha_c, beta_c, delta_c = map(float, coef)
        residual = float(np.abs(design @ coef - arr[:, 2]).max())
        if residual > tol:
            return NotEntire(f"circular seed but non-planar heights (residual {residual})")
        # t = alpha x + beta y + delta  <=>  (-alpha) x + (-beta) y + t = delta
        a, b, c, d0 = -alpha_c, -beta_c, 1.0, delta_c
        scale = math.sqrt(a * a + b * b + c * c)
        sigma = (-2.0 * b / c, 2.0 * a / c, d0 / c)
        return Class1(a / scale, b / scale, c / scale, d0 / scale, sigma, residual)

    return NotEntire("seed curve is neither a line nor a circle at tolerance")
