"""
检查目录

每个检查有稳定的点分名称、一句数学锚点、覆盖的操作名，以及一个
fn(ctx) -> CheckOutcome。检查函数只读取 CheckContext，彼此独立，可以并发执行。
"""

import logging
import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from ..einstein import (
    ConformalScale, aes_residual, decompose_scale, key_display_parts, lift_minus, lift_plus,
    rescaled_schouten_trace, scale_eigen_residuals, solve_scales,
)
from ..errors import DimensionError, PreconditionError
from ..projective import (
    AffineConnection, ProjectiveSolution, SolutionKind, affine_bivector_residuals, curvature, dual_kind,
    dualize_lowdim, integrability_residuals, is_special, prolong, prolonged_residuals, projective_rescale,
    solution_residual, solve_solutions, special_part, thomas_parameters, weyl_cotton,
)
from ..pwext import (
    PWGeometry, Rejection, WalkerNormalForm, build, conformal_covariance_check, curvature_dictionary,
    einstein_check, frame_christoffels, frame_christoffels_intrinsic, frame_christoffels_koszul,
    frame_commutators, k_geodesic_shearfree, k_properties, k_twisting, mu_coordinates,
    normal_form_from_metric, recover_connection, riemann_closed, thomas_pw, vertical_totally_geodetic,
    walker_conditions, weyl_cotton_only,
)
from ..spin import (
    Spinor, clifford_compatibility, clifford_module, eta_equation_residual, eta_spinor, k_from_eta,
    lie_derivative_spinor, make_chi_etacheck, projector_identities, twistor_residual,
)
from ..symcore import Scalar, TensorField, format_scalar, format_tensor
from ..symmetry import (
    LiftMode, LiftPart, affine_homothety_remark, ck_prolongation_identities, ck_residual, decompose,
    killing_lift_norms, killing_residual, lie_cubic_residual, lie_eigen_residual, lift_affine,
    lift_conformal, lift_invariance_check, lightlike_geodetic, mu_scalar, n3_bivector_to_oneform,
    tangency,
)
from .scenario import MTILDE_SCALE, MTILDE_VECTOR, Scenario

logger = logging.getLogger('PWLab.checks')

# 场景没给 options.scales 时用于射影变换类检查的尺度
DEFAULT_SCALES = ("1 + x1", "1 + x1^2 + x2")

BASE_KINDS = tuple(SolutionKind)


@dataclass(frozen=True)
class CheckOutcome:
    passed: bool
    residual: str = ""
    detail: str = ""


@dataclass(frozen=True)
class CheckSpec:
    name: str
    anchor: str
    ops: Tuple[str, ...]
    fn: Callable[["CheckContext"], CheckOutcome]
    spin: bool = False


CATALOG: Dict[str, CheckSpec] = {}


def check(name: str, anchor: str, ops: Sequence[str] = (), spin: bool = False):
    """注册一个检查"""
    def decorator(fn: Callable[["CheckContext"], CheckOutcome]):
        CATALOG[name] = CheckSpec(name, anchor, tuple(ops), fn, spin)
        return fn
    return decorator


def resolve_check_name(name: str) -> str:
    """点分名称或把点换成下划线的别名 → 点分名称"""
    if name in CATALOG:
        return name
    aliases = {spec.name.replace('.', '_'): spec.name for spec in CATALOG.values()}
    if name in aliases:
        return aliases[name]
    raise KeyError(f"未知检查 {name!r}，可用: {', '.join(sorted(CATALOG))}")


# ---------- 上下文 ----------

class CheckContext:
    """一个场景的共享状态；PW 几何与求解结果按需计算并缓存"""

    def __init__(self, scenario: Scenario, degree_bound: int = 3):
        self.scenario = scenario
        self.D: AffineConnection = scenario.connection
        self.chart = self.D.chart
        self.n = self.D.n
        self.degree_bound = degree_bound
        self._lock = threading.Lock()
        self._key_locks: Dict[str, threading.Lock] = {}
        self._cache: Dict[str, object] = {}

    def _cached(self, key: str, factory: Callable[[], object]):
        """每个键只算一次；不同键的计算互不阻塞"""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
            key_lock = self._key_locks.setdefault(key, threading.Lock())
        with key_lock:
            with self._lock:
                if key in self._cache:
                    return self._cache[key]
            value = factory()
            with self._lock:
                self._cache[key] = value
            return value

    @property
    def P(self) -> PWGeometry:
        return self._cached("P", lambda: build(self.D))

    def scales(self) -> List[Scalar]:
        texts = self.scenario.options.scales or list(DEFAULT_SCALES)
        return [self.chart.parse(t) for t in texts]

    def solutions(self, *kinds: SolutionKind) -> List[Tuple[str, ProjectiveSolution]]:
        """场景给出的底解；场景一个底解都没有时改用有界次数求解的结果"""
        declared = self.scenario.base_solutions()
        if declared:
            return [(c.name, c.value) for c in declared if c.value.kind in kinds]
        out = []
        for kind in kinds:
            found = self._cached(
                f"solve:{kind.value}", lambda kind=kind: solve_solutions(self.D, kind, self.degree_bound)
            )
            out.extend((f"{kind.value}#{i}", s) for i, s in enumerate(found))
        return out

    def lifted(self, kind: str) -> List[Tuple[str, object]]:
        return [(c.name, c.value) for c in self.scenario.candidates if c.kind == kind]

    def require_trace_free(self) -> None:
        """旋量检查在 Γ 无迹、坐标体积下进行"""
        if not self.D.trace().is_zero() or self.D.volume != self.chart.one:
            raise PreconditionError("trace-free", "旋量检查需要 Γ_A^C_C = 0 且体积为坐标体积")


# ---------- 残差汇总 ----------

def _is_zero(value) -> bool:
    if isinstance(value, (TensorField, Spinor)):
        return value.is_zero()
    if isinstance(value, (list, tuple)):
        return all(_is_zero(v) for v in value)
    return not value.numer


def _text(chart, value) -> str:
    if isinstance(value, TensorField):
        return format_tensor(value)
    if isinstance(value, Spinor):
        return "; ".join(f"[{m}]: {format_scalar(chart, v)}" for m, v in value.nonzero())
    if isinstance(value, (list, tuple)):
        return " ".join(f"<{i}> {_text(chart, v)}" for i, v in enumerate(value) if not _is_zero(value[i]))
    return format_scalar(chart, value)


class Residuals:
    """按标签收集非零残差与不成立的断言"""

    def __init__(self, chart):
        self.chart = chart
        self.failures: List[Tuple[str, str]] = []
        self.notes: List[str] = []

    def add(self, label: str, value) -> None:
        if not _is_zero(value):
            self.failures.append((label, _text(self.chart, value)))

    def add_all(self, prefix: str, named: Dict[str, object]) -> None:
        for key in sorted(named):
            self.add(f"{prefix}{key}", named[key])

    def require(self, label: str, condition: bool, detail: str = "") -> None:
        if not condition:
            self.failures.append((label, detail or "不成立"))

    def note(self, text: str) -> None:
        self.notes.append(text)

    def outcome(self) -> CheckOutcome:
        residual = " | ".join(f"{label}: {text}" for label, text in self.failures)
        return CheckOutcome(not self.failures, residual, "; ".join(self.notes))


def _need(items: list, what: str) -> list:
    if not items:
        raise PreconditionError("candidates", f"场景中没有可用的{what}")
    return items


# ---------- 底流形 ----------

@check("base.special", "Γ_A^C_C = ∂_A log e", ("special_part",))
def check_base_special(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add("trace - dlog(e)", ctx.D.density_term())
    return r.outcome()


@check("base.special_part", "Υ_A = (∂_A log e − Γ_A^C_C)/(n+1) gives a special representative with the same Π",
       ("special_part", "projective_change", "thomas_parameters"))
def check_base_special_part(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    upsilon, special = special_part(ctx.D)
    r.require("special", is_special(special), format_tensor(special.density_term()))
    r.add("Pi", thomas_parameters(special) - thomas_parameters(ctx.D))
    r.note(f"Υ = {format_tensor(upsilon) or '0'}")
    return r.outcome()


@check("base.ricci_flat", "Ric_AB = R_CA^C_B = 0", ("curvature",))
def check_base_ricci_flat(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add("Ric", curvature(ctx.D).ricci)
    return r.outcome()


@check("base.projective_invariance", "W and Π unchanged under Γ ↦ Γ + 2δ_(A^C Υ_B), Υ = ds/s",
       ("projective_change", "projective_weyl_cotton", "thomas_parameters"))
def check_base_projective_invariance(ctx: CheckContext) -> CheckOutcome:
    D = ctx.D
    r = Residuals(ctx.chart)
    special = is_special(D)
    W = weyl_cotton(D).weyl if special else None
    for s in ctx.scales():
        label = format_scalar(ctx.chart, s)
        hat = projective_rescale(D, s)
        r.add(f"Pi[{label}]", thomas_parameters(hat) - thomas_parameters(D))
        if special:
            r.add(f"W[{label}]", weyl_cotton(hat).weyl - W)
    if not special:
        r.note("非特殊联络，只比较 Π")
    return r.outcome()


@check("base.solutions", "each candidate solves its overdetermined equation and curvature conditions",
       ("solution_residual",))
def check_base_solutions(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    for name, sol in _need(ctx.solutions(*BASE_KINDS), "底解"):
        r.add(f"{name}", solution_residual(ctx.D, sol))
        r.add_all(f"{name}.", integrability_residuals(ctx.D, sol))
    return r.outcome()


@check("base.prolongation", "the prolonged first-order systems close on (v, φ, ψ, β) and (w, ν)",
       ("prolong",))
def check_base_prolongation(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    kinds = (SolutionKind.PROJECTIVE, SolutionKind.AFFINE, SolutionKind.BIVECTOR)
    for name, sol in _need(ctx.solutions(*kinds), "对称或双向量解"):
        r.add_all(f"{name}.", prolonged_residuals(ctx.D, prolong(ctx.D, sol)))
    return r.outcome()


@check("base.duality", "n = 2: ξ ↔ α, w ↔ σ; n = 3: w ↔ α through the volume form",
       ("dualize_lowdim",))
def check_base_duality(ctx: CheckContext) -> CheckOutcome:
    if ctx.n not in (2, 3):
        raise DimensionError(f"低维对偶只在 n ∈ {{2, 3}} 定义，得到 n = {ctx.n}")
    r = Residuals(ctx.chart)
    kinds = [k for k in BASE_KINDS if _has_dual(ctx.n, k)]
    for name, sol in _need(ctx.solutions(*kinds), "可对偶的底解"):
        dual = dualize_lowdim(ctx.D, sol)
        r.add(f"{name}->{dual.kind.value}", solution_residual(ctx.D, dual))
        r.add(f"{name}.roundtrip", dualize_lowdim(ctx.D, dual).data - sol.data)
    return r.outcome()


def _has_dual(n: int, kind: SolutionKind) -> bool:
    try:
        dual_kind(n, kind)
    except PreconditionError:
        return False
    return True


@check("base.solve", "bounded-degree polynomial solution spaces; every basis element prolongs consistently",
       ("solution_residual", "prolong"))
def check_base_solve(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    dims = []
    for kind in BASE_KINDS:
        found = solve_solutions(ctx.D, kind, ctx.degree_bound, integrable_only=False)
        dims.append(f"{kind.value}={len(found)}")
        for i, sol in enumerate(found):
            if kind in (SolutionKind.PROJECTIVE, SolutionKind.AFFINE, SolutionKind.BIVECTOR):
                r.add_all(f"{kind.value}#{i}.", prolonged_residuals(ctx.D, prolong(ctx.D, sol)))
    r.note(f"次数 ≤ {ctx.degree_bound}: " + ", ".join(dims))
    return r.outcome()


# ---------- PW 几何 ----------

@check("pw.christoffel_oracle",
       "Γ̃ = 2χη̌χΓ + χχχRp and the closed R̃ agree with the Koszul pipeline on g = 2dx⊙dp − 2Γp dx⊙dx",
       ("build", "frame_christoffels"))
def check_pw_christoffel_oracle(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    r = Residuals(ctx.chart)
    closed = frame_christoffels(P)
    r.add("closed-koszul", closed - frame_christoffels_koszul(P))
    r.add("closed-intrinsic", closed - frame_christoffels_intrinsic(P))
    r.add("riemann", riemann_closed(P) - P.to_frame(P.riemann_lowered))
    return r.outcome()


@check("pw.curvature_dictionary", "P̃ = χχP, Ỹ = χχχY and W̃ from W, DW·p and Y·p",
       ("curvature_dictionary",))
def check_pw_curvature_dictionary(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add_all("", curvature_dictionary(ctx.P).mismatches())
    return r.outcome()


@check("pw.k_properties", "D̃_a k_b = μ_ab + g_ab, L_k g = 2g, g(k, k) = 0, μ = ±1 on H/V",
       ("k_properties",))
def check_pw_k_properties(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add_all("", k_properties(ctx.P).residuals())
    r.add("mu-coordinates", mu_coordinates(ctx.P))
    return r.outcome()


@check("pw.walker", "R̃ and W̃ vanish on any pair of vertical vectors", ("build",))
def check_pw_walker(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add_all("", walker_conditions(ctx.P))
    return r.outcome()


@check("pw.frame_commutators", "[V_A, H_B] = Γ_B^A_C V_C, [H_A, H_B] = R_AB^C_D p_C V_D, [V, V] = 0",
       ("frame_commutators",))
def check_pw_frame_commutators(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add("structure", frame_commutators(ctx.P))
    return r.outcome()


@check("pw.vertical_geodesic", "the vertical distribution is totally geodesic", ("vertical_totally_geodetic",))
def check_pw_vertical_geodesic(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add("g(V, D_V V)", vertical_totally_geodetic(ctx.P))
    return r.outcome()


@check("pw.k_geodesic_shearfree", "k is geodesic and shear-free, and twisting: k_[a D̃_b k_c] ≠ 0",
       ("k_geodesic_shearfree", "symmetrize"))
def check_pw_k_geodesic_shearfree(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add("(k.Dk)^[a k^b]", k_geodesic_shearfree(ctx.P))
    r.require("twisting", k_twisting(ctx.P), "k_[a D̃_b k_c] = 0")
    return r.outcome()


@check("pw.schouten_zero", "Ricci-flat D gives a Ricci-flat metric: P̃ = 0", ("curvature_dictionary",))
def check_pw_schouten_zero(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add("P~", ctx.P.schouten)
    return r.outcome()


@check("pw.einstein", "an Einstein metric g is Ricci-flat", ("curvature_dictionary",))
def check_pw_einstein(ctx: CheckContext) -> CheckOutcome:
    report = einstein_check(ctx.P)
    r = Residuals(ctx.chart)
    r.require("einstein=>ricci-flat", report.ok(), format_tensor(report.ricci))
    r.note(f"einstein={report.is_einstein}, ricci-flat={report.is_ricci_flat}")
    return r.outcome()


def _perturbed(N: WalkerNormalForm, extra) -> WalkerNormalForm:
    theta = TensorField.from_function(
        N.chart, N.theta.slots, lambda a, b: N.theta[a, b] + (extra if (a, b) == (0, 0) else 0)
    )
    return WalkerNormalForm(N.n, theta)


@check("pw.normal_form", "Θ_AB = Γ_A^C_B p_C iff Θ is linear, homogeneous and Σ_B ∂Θ_BA/∂p_B = 0",
       ("recover_connection",))
def check_pw_normal_form(ctx: CheckContext) -> CheckOutcome:
    D, chart = ctx.D, ctx.chart
    r = Residuals(chart)
    trace_free = D.trace().is_zero()
    if not trace_free:
        # 有迹的 Γ 不能从 PW 度量读回
        got = recover_connection(WalkerNormalForm.from_connection(D))
        r.require("reject[trace]", isinstance(got, Rejection) and got.condition == "trace", str(got))
    # 往返在 D 本身或同一射影类里无迹的 Π 上做
    P = ctx.P if trace_free and is_special(D) else thomas_pw(D)
    N = normal_form_from_metric(P.metric)
    if isinstance(N, Rejection):
        r.require("normal-form", False, str(N))
        return r.outcome()
    recovered = recover_connection(N)
    if isinstance(recovered, Rejection):
        r.require("recover", False, str(recovered))
    else:
        r.add("Gamma", recovered.gamma - P.source.gamma)
    p1 = chart.p(0)
    for extra, condition in ((p1 * p1, "linear"), (chart.one, "homogeneous"), (p1, "trace")):
        got = recover_connection(_perturbed(N, extra))
        r.require(f"reject[{condition}]", isinstance(got, Rejection) and got.condition == condition, str(got))
    return r.outcome()


@check("pw.conformal_covariance", "ĝ = s^w(g + 2(w−2)p_(A Υ_B) dx⊙dx), conformal to g iff w = 2",
       ("conformal_covariance_check",))
def check_pw_conformal_covariance(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    for s in ctx.scales():
        label = format_scalar(ctx.chart, s)
        for w in (0, 1, 2, 3):
            report = conformal_covariance_check(ctx.D, s, w)
            r.add(f"[{label}, w={w}]", report.difference)
            r.require(f"[{label}, w={w}].conformal", report.ok(), f"is_conformal={report.is_conformal}")
    return r.outcome()


@check("pw.thomas", "the metric built from Thomas parameters depends only on the projective class",
       ("thomas_pw", "thomas_parameters", "special_part"))
def check_pw_thomas(ctx: CheckContext) -> CheckOutcome:
    D = ctx.D
    r = Residuals(ctx.chart)
    g = thomas_pw(D).metric
    _, special = special_part(D)
    r.add("special_part", thomas_pw(special).metric - g)
    for s in ctx.scales():
        r.add(f"rescale[{format_scalar(ctx.chart, s)}]", thomas_pw(projective_rescale(D, s)).metric - g)
    if D.trace().is_zero():
        r.add("build", ctx.P.metric - g)
    return r.outcome()


@check("pw.weyl_cotton_n2", "n = 2: W̃ is the horizontal block p_C Y_DAB − p_D Y_CAB",
       ("n2_weyl_cotton_dictionary", "projective_weyl_cotton"))
def check_pw_weyl_cotton_n2(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add("W~ - pY", weyl_cotton_only(ctx.P))
    r.note("Y ≠ 0" if not weyl_cotton(ctx.D).cotton.is_zero() else "Y = 0")
    return r.outcome()


# ---------- 旋量 ----------

@check("spin.clifford", "γ_aγ_b + γ_bγ_a = −2g_ab and [ω_a, γ_c] = Γ̃_abc γ^b", ("spin_covariant_derivative",),
       spin=True)
def check_spin_clifford(ctx: CheckContext) -> CheckOutcome:
    C = clifford_module(ctx.chart)
    r = Residuals(ctx.chart)
    r.require("clifford", not C.clifford_violations(), str(C.clifford_violations()[:4]))
    r.require("degree-shift", C.degree_shift_ok())
    bad = clifford_compatibility(ctx.P)
    r.require("spin-connection", not bad, str(bad[:4]))
    return r.outcome()


@check("spin.twistor_chi", "χ is a twistor spinor and L_k χ = −½(n+1)χ",
       ("twistor_residual", "lie_derivative_spinor", "make_chi_etacheck"), spin=True)
def check_spin_twistor_chi(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    chi, _ = make_chi_etacheck(clifford_module(ctx.chart))
    r = Residuals(ctx.chart)
    r.add("twistor", twistor_residual(P, chi))
    lie = lie_derivative_spinor(P, P.k_vector, chi)
    r.add("L_k chi", lie + chi.scale(ctx.chart.const(ctx.n + 1, 2)))
    return r.outcome()


@check("spin.purity", "χ and η are pure; the annihilator of η contains k", ("eta_spinor", "make_chi_etacheck"),
       spin=True)
def check_spin_purity(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    C = clifford_module(ctx.chart)
    chi, _ = make_chi_etacheck(C)
    eta = eta_spinor(P)
    r = Residuals(ctx.chart)
    for label, psi in (("chi", chi), ("eta", eta)):
        rank = C.purity_rank(psi)
        r.require(f"{label}.pure", rank == ctx.n, f"零化子维数 {rank}")
    k = P.to_frame(P.k_vector)
    annihilated = Spinor.zeros(ctx.chart, dual=True, cweight=eta.cweight)
    for a in range(P.dim):
        if k[a].numer:
            annihilated = annihilated + C.act(a, eta).scale(k[a])
    r.add("eta.gamma(k)", annihilated)
    return r.outcome()


@check("spin.projectors", "χ_a^A χ^aB = 0, η̌^a_A η̌_aB = 0, χ_a^A η̌^a_B = δ, η̌χ = −½, k = 2η_A χ^aA",
       ("make_chi_etacheck", "eta_spinor"), spin=True)
def check_spin_projectors(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    chi, etacheck = make_chi_etacheck(clifford_module(ctx.chart))
    r = Residuals(ctx.chart)
    r.add_all("", projector_identities(P))
    r.add("etacheck.chi+1/2", etacheck.pair(chi) + ctx.chart.const(1, 2))
    r.add("k-from-eta", k_from_eta(P) - P.k_vector)
    return r.outcome()


@check("spin.eta_equation", "D̃_a η − η̌γ_a = (1/8) k^d W̃_dabc η γ^b γ^c", ("eta_spinor",), spin=True)
def check_spin_eta_equation(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    r.add("eta", eta_equation_residual(ctx.P))
    return r.outcome()


# ---------- 近 Einstein 尺度 ----------

def _scales(ctx: CheckContext) -> List[Tuple[str, ConformalScale]]:
    P = ctx.P
    out = []
    for name, sol in ctx.solutions(SolutionKind.EULER):
        out.append((name, lift_plus(P, sol)))
    for name, sol in ctx.solutions(SolutionKind.RICCIFLAT):
        out.append((name, lift_minus(P, sol)))
    return out


@check("einstein.lifts", "σ̃_+ = ξ^A p_A and σ̃_− = π*σ are almost Einstein scales with (L_k ∓ 1)σ̃_± = 0",
       ("aes_residual", "lift_plus", "lift_minus"))
def check_einstein_lifts(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    r = Residuals(ctx.chart)
    lifted = _scales(ctx)
    given = [(name, ConformalScale.of(ctx.chart, value)) for name, value in ctx.lifted(MTILDE_SCALE)]
    for name, sigma in _need(lifted + given, "尺度"):
        r.add(f"{name}.aes", aes_residual(P, sigma))
        r.add_all(f"{name}.", scale_eigen_residuals(P, sigma))
    for name, sigma in lifted:
        r.add(f"{name}.schouten-trace", rescaled_schouten_trace(P, sigma))
    return r.outcome()


@check("einstein.decompose", "σ̃ = σ̃_+ + σ̃_− splits by p-degree into the two lifts",
       ("decompose_scale", "grade_in_p"))
def check_einstein_decompose(ctx: CheckContext) -> CheckOutcome:
    P, chart = ctx.P, ctx.chart
    r = Residuals(chart)
    xis = ctx.solutions(SolutionKind.EULER)
    sigmas = ctx.solutions(SolutionKind.RICCIFLAT)
    _need(xis + sigmas, "尺度")
    total = ConformalScale(chart, chart.zero)
    for _, sol in xis:
        total = total + lift_plus(P, sol)
    for _, sol in sigmas:
        total = total + lift_minus(P, sol)
    parts = decompose_scale(P, total)
    if xis:
        want = xis[0][1].data
        for _, sol in xis[1:]:
            want = want + sol.data
        r.require("xi", parts.xi is not None, "没有抽出 ξ")
        if parts.xi is not None:
            r.add("xi", parts.xi.data - want)
    if sigmas:
        want = sum((sol.data.value() for _, sol in sigmas), chart.zero)
        r.require("sigma", parts.sigma is not None, "没有抽出 σ")
        if parts.sigma is not None:
            r.add("sigma", parts.sigma.data.value() - want)
    for name, value in ctx.lifted(MTILDE_SCALE):
        split = decompose_scale(P, ConformalScale.of(chart, value))
        r.add(f"{name}.sum", split.plus.value + split.minus.value - ConformalScale.of(chart, value).value)
    return r.outcome()


@check("einstein.key_display",
       "(D̃D̃σ̃_+ + P̃σ̃_+)_0 = 2(Dξ)_0 χ_(a η̌_b) + (DDξ + δPξ − ξW) p χχ",
       ("aes_residual", "lift_plus"))
def check_einstein_key_display(ctx: CheckContext) -> CheckOutcome:
    P, chart = ctx.P, ctx.chart
    r = Residuals(chart)
    for name, sol in _need(ctx.solutions(SolutionKind.EULER), "Euler 型场"):
        xi = sol.data
        sigma = ConformalScale(chart, sum((xi[a] * chart.p(a) for a in range(ctx.n)), chart.zero))
        parts = key_display_parts(P, xi)
        total = parts["Dxi0"] + parts["DDxi+Pxi-xiW"]
        r.add(name, P.to_frame(aes_residual(P, sigma)) - total)
    return r.outcome()


@check("einstein.solve", "bounded-degree Euler fields with ξ·W = 0 and Ricci-flat scales all lift",
       ("lift_plus", "lift_minus"))
def check_einstein_solve(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    r = Residuals(ctx.chart)
    found = solve_scales(ctx.D, ctx.degree_bound)
    for i, sol in enumerate(found.euler):
        r.add(f"euler#{i}", aes_residual(P, lift_plus(P, sol)))
    for i, sol in enumerate(found.ricciflat):
        r.add(f"ricciflat#{i}", aes_residual(P, lift_minus(P, sol)))
    r.note(", ".join(f"{k}={v}" for k, v in sorted(found.dimensions.items())))
    return r.outcome()


# ---------- 对称 ----------

CONFORMAL_KINDS = (SolutionKind.PROJECTIVE, SolutionKind.AFFINE, SolutionKind.BIVECTOR, SolutionKind.KILLING)


def _affine_eligible(ctx: CheckContext) -> List[Tuple[str, ProjectiveSolution]]:
    """仿射对称、Killing 1-形式，以及满足平行条件的双向量"""
    out = []
    for name, sol in ctx.solutions(SolutionKind.AFFINE, SolutionKind.KILLING, SolutionKind.BIVECTOR):
        if sol.kind == SolutionKind.BIVECTOR and not all(
                t.is_zero() for t in affine_bivector_residuals(ctx.D, sol.data).values()):
            continue
        out.append((name, sol))
    return out


@check("sym.k_conformal_killing", "k is conformal Killing with μ^a_b D̃_a k^b − (1/n)D̃·k = −2(n+1)",
       ("ck_residual", "killing_residual"))
def check_sym_k_conformal_killing(ctx: CheckContext) -> CheckOutcome:
    P, chart = ctx.P, ctx.chart
    k = P.k_vector
    r = Residuals(chart)
    r.add("ck", ck_residual(P, k))
    r.add("mu-scalar", mu_scalar(P, k) + 2 * (ctx.n + 1))
    r.add("L_k k", lie_eigen_residual(P, k, 0))
    return r.outcome()


@check("sym.lifts", "v, w, α lift to conformal Killing fields ṽ_0, ṽ_+, ṽ_− with L_k = 0, +2, −2",
       ("lift_conformal", "ck_residual"))
def check_sym_lifts(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    r = Residuals(ctx.chart)
    for name, sol in _need(ctx.solutions(*CONFORMAL_KINDS), "可提升的底解"):
        cand = lift_conformal(P, sol)
        X = cand.vector
        r.add(f"{name}.ck", ck_residual(P, X))
        r.add(f"{name}.L_k", lie_eigen_residual(P, X, cand.eigenvalue))
        r.add(f"{name}.cubic", lie_cubic_residual(P, X))
        if cand.part == LiftPart.ZERO:
            r.add(f"{name}.mu-scalar", mu_scalar(P, X))
        else:
            r.add(f"{name}.tangency", tangency(P, cand))
    return r.outcome()


@check("sym.ck_prolongation", "D̃φ̃ and D̃β̃ close on (ṽ, φ̃, ψ̃, β̃) with W̃ and Ỹ",
       ("ck_residual",))
def check_sym_ck_prolongation(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    r = Residuals(ctx.chart)
    fields = [(name, lift_conformal(P, sol).vector) for name, sol in ctx.solutions(*CONFORMAL_KINDS)]
    fields += ctx.lifted(MTILDE_VECTOR)
    for name, X in _need(fields, "共形 Killing 场"):
        r.add_all(f"{name}.", ck_prolongation_identities(P, X))
    return r.outcome()


@check("sym.affine_lifts", "affine symmetries, parallel bivectors and Killing forms lift to Killing fields",
       ("lift_affine", "killing_residual"))
def check_sym_affine_lifts(ctx: CheckContext) -> CheckOutcome:
    P, chart = ctx.P, ctx.chart
    r = Residuals(chart)
    for name, sol in _need(_affine_eligible(ctx), "仿射可提升的底解"):
        cand = lift_affine(P, sol)
        X = cand.vector
        r.add(f"{name}.killing", killing_residual(P, X))
        r.add(f"{name}.L_k", lie_eigen_residual(P, X, cand.eigenvalue))
        r.add(f"{name}.norm", killing_lift_norms(P, sol))
        if cand.part == LiftPart.ZERO:
            psi = cand.source.prolongation["psi"].value()
            r.add(f"{name}.mu-scalar", mu_scalar(P, X) - 2 * ctx.n * psi)
    return r.outcome()


@check("sym.decompose.roundtrip", "ṽ = ṽ_+ + ṽ_0 + ṽ_− + c k is unique and recovers (w, v, α, c)",
       ("decompose", "grade_in_p"))
def check_sym_decompose_roundtrip(ctx: CheckContext) -> CheckOutcome:
    P, chart = ctx.P, ctx.chart
    r = Residuals(chart)
    c = chart.const(3, 2)
    conformal = ctx.solutions(*CONFORMAL_KINDS)
    if conformal:
        _roundtrip(ctx, r, LiftMode.CONFORMAL, conformal, c)
    affine = _affine_eligible(ctx)
    if affine:
        _roundtrip(ctx, r, LiftMode.KILLING, affine, chart.zero)
    for name, X in ctx.lifted(MTILDE_VECTOR):
        parts = decompose(P, X, LiftMode.CONFORMAL)
        r.add(f"{name}.sum", parts.plus + parts.zero + parts.minus + P.k_vector.scale(parts.c) - X)
        r.note(f"{name}: c = {format_scalar(chart, parts.c)}")
    _need(conformal + affine + ctx.lifted(MTILDE_VECTOR), "可分解的场")
    return r.outcome()


def _roundtrip(ctx: CheckContext, r: Residuals, mode: LiftMode,
               sols: List[Tuple[str, ProjectiveSolution]], c: Scalar) -> None:
    P = ctx.P
    lift_fn = lift_conformal if mode == LiftMode.CONFORMAL else lift_affine
    by_part: Dict[LiftPart, List[Tuple[TensorField, TensorField]]] = {part: [] for part in LiftPart}
    for _, sol in sols:
        cand = lift_fn(P, sol)
        by_part[cand.part].append((cand.vector, sol.data))

    zero_vec = P.k_vector.scale(0)
    totals = {part: sum((v for v, _ in items), zero_vec) for part, items in by_part.items()}
    X = totals[LiftPart.PLUS] + totals[LiftPart.ZERO] + totals[LiftPart.MINUS] + P.k_vector.scale(c)
    parts = decompose(P, X, mode)
    tag = mode.value
    r.add(f"{tag}.plus", parts.plus - totals[LiftPart.PLUS])
    r.add(f"{tag}.zero", parts.zero - totals[LiftPart.ZERO])
    r.add(f"{tag}.minus", parts.minus - totals[LiftPart.MINUS])
    r.add(f"{tag}.c", parts.c - c)
    for part, extracted in ((LiftPart.ZERO, parts.v), (LiftPart.PLUS, parts.w), (LiftPart.MINUS, parts.alpha)):
        items = by_part[part]
        if not items:
            r.require(f"{tag}.{part.value}-empty", extracted is None)
            continue
        want = items[0][1]
        for _, data in items[1:]:
            want = want + data
        r.require(f"{tag}.{part.value}-found", extracted is not None)
        if extracted is not None:
            r.add(f"{tag}.{part.value}-data", extracted.data - want)
    if mode == LiftMode.CONFORMAL and parts.mu_check is not None:
        r.add(f"{tag}.mu-check", parts.mu_check)


@check("sym.lightlike", "|ṽ_0|² = −2 p_A(v^B D_B v^A − (2/(n+1))(D·v) v^A); affine: −2 p_A v^B D_B v^A",
       ("lightlike_geodetic",))
def check_sym_lightlike(ctx: CheckContext) -> CheckOutcome:
    P = ctx.P
    r = Residuals(ctx.chart)
    for name, sol in _need(ctx.solutions(SolutionKind.PROJECTIVE, SolutionKind.AFFINE), "对称"):
        modes = [LiftMode.CONFORMAL] + ([LiftMode.KILLING] if sol.kind == SolutionKind.AFFINE else [])
        for mode in modes:
            report = lightlike_geodetic(P, sol, mode)
            r.add(f"{name}.{mode.value}.norm", report.norm - report.closed_form)
            r.require(f"{name}.{mode.value}.criterion", report.ok(),
                      f"lightlike={report.lightlike}, criterion={format_tensor(report.criterion)}")
            r.note(f"{name}/{mode.value}: lightlike={report.lightlike}, geodetic={report.geodetic}")
    return r.outcome()


@check("sym.lift_invariance", "lifts are unchanged when D, the base data and p change projectively",
       ("lift_invariance_check", "projective_change"))
def check_sym_lift_invariance(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    for name, sol in _need(ctx.solutions(*BASE_KINDS), "底解"):
        if sol.kind == SolutionKind.AFFINE:
            sol = ProjectiveSolution(SolutionKind.PROJECTIVE, sol.data)
        for s in ctx.scales():
            report = lift_invariance_check(ctx.D, s, sol)
            r.add(f"{name}[{format_scalar(ctx.chart, s)}]", report.difference)
    return r.outcome()


@check("sym.n3_duality", "n = 3: ṽ_− = ½ ε̃^a_bc D̃^b ṽ_+^c with α_A = ½ w^BC ε_BCA", ("dualize_lowdim",))
def check_sym_n3_duality(ctx: CheckContext) -> CheckOutcome:
    if ctx.n != 3:
        raise DimensionError(f"只在 n = 3 定义，得到 n = {ctx.n}")
    r = Residuals(ctx.chart)
    for name, sol in _need(ctx.solutions(SolutionKind.BIVECTOR), "双向量"):
        r.add(name, n3_bivector_to_oneform(ctx.P, sol))
    return r.outcome()


@check("sym.homothety", "an affine symmetry lifted by the conformal formula is a homothety, D̃·ṽ = 2n²ψ/(n+1)",
       ("lift_conformal",))
def check_sym_homothety(ctx: CheckContext) -> CheckOutcome:
    r = Residuals(ctx.chart)
    for name, sol in _need(ctx.solutions(SolutionKind.AFFINE), "仿射对称"):
        r.add_all(f"{name}.", affine_homothety_remark(ctx.P, sol))
    return r.outcome()


DEFAULT_CHECKS = (
    "base.special",
    "base.solutions",
    "base.prolongation",
    "pw.christoffel_oracle",
    "pw.curvature_dictionary",
    "pw.k_properties",
    "pw.walker",
    "pw.normal_form",
    "spin.twistor_chi",
    "spin.projectors",
    "einstein.lifts",
    "sym.lifts",
)


def run_check(name: str, ctx: CheckContext) -> CheckOutcome:
    """同步执行一个检查，异常交给调用方"""
    spec = CATALOG[resolve_check_name(name)]
    if spec.spin:
        ctx.require_trace_free()
    logger.debug(f"运行检查 {spec.name} ({ctx.scenario.name})")
    return spec.fn(ctx)


def manifest() -> List[Tuple[str, str, Tuple[str, ...]]]:
    """(名称, 锚点, 覆盖的操作)，按名称排序"""
    return [(s.name, s.anchor, s.ops) for s in sorted(CATALOG.values(), key=lambda s: s.name)]
