"""
(共形) Killing 场按 p 分级唯一分解

标架分量 a^A = ṽ^{x^A}，b_A = ṽ^{p_A} − Θ_EA ṽ^{x^E}：
    ṽ_−：b 的 0 次部分
    ṽ_+：a 的 1 次与 b 的 2 次部分
    余下（a 的 0 次、b 的 1 次）= ṽ_0 + c k
c 由 μ 标量确定：μ^a_b D̃_a(c k)^b − (1/n) D̃(c k) = −2(n+1)c，而共形提升的 ṽ_0 上该量为零。
"""

import logging
from dataclasses import dataclass
from typing import Optional

from ..errors import GradingError, PreconditionError
from ..projective import (
    ProjectiveSolution, SolutionKind, affine_bivector_residuals, integrability_residuals, solution_residual,
)
from ..pwext import PWGeometry
from ..symcore import Scalar, TensorField, down, up, up_t
from ..symcore.tensor import Basis, Parity
from .killing import ck_residual, killing_residual, mu_scalar
from .lifts import LiftMode, lift

logger = logging.getLogger('PWLab.symmetry')


@dataclass(frozen=True)
class SymmetryDecomposition:
    mode: LiftMode
    plus: TensorField
    zero: TensorField
    minus: TensorField
    c: Scalar
    v: Optional[ProjectiveSolution] = None
    w: Optional[ProjectiveSolution] = None
    alpha: Optional[ProjectiveSolution] = None
    # ṽ_0 上的 μ 标量（只在当前这一个度量上验证）
    mu_check: Optional[Scalar] = None


def _frame_components(P: PWGeometry, X: TensorField) -> TensorField:
    C, N = P.coframe, P.dim
    return TensorField.from_function(
        P.chart, (up_t(P.n),),
        lambda a: sum((C[a][mu] * X[mu] for mu in range(N) if X[mu].numer), P.chart.zero),
        basis=Basis.ADAPTED,
    )


def _split(P: PWGeometry, frame: TensorField, a_degree: Optional[int], b_degree: int) -> TensorField:
    """取 a 的 a_degree 次与 b 的 b_degree 次部分，换回坐标向量"""
    n = P.n
    a_part = frame.grade_in_p(a_degree) if a_degree is not None else None
    b_part = frame.grade_in_p(b_degree)
    comps = [
        (a_part[i] if a_part is not None else P.chart.zero) if i < n else b_part[i]
        for i in range(P.dim)
    ]
    return P.vector_from_frame(comps)


def _check_grading(P: PWGeometry, frame: TensorField) -> None:
    n = P.n
    horizontal = TensorField.from_function(P.chart, (up(n),), lambda A: frame[A])
    vertical = TensorField.from_function(P.chart, (down(n),), lambda A: frame[n + A])
    for name, part, top in (("水平", horizontal, 1), ("垂直", vertical, 2)):
        degrees = part.p_degrees()
        if degrees and degrees[-1] > top:
            raise GradingError(f"{name}分量出现 p 的 {degrees[-1]} 次项，超出允许的 {top} 次")


def _verify(P: PWGeometry, sol: ProjectiveSolution, part: TensorField, mode: LiftMode) -> None:
    """抽出的底数据满足底方程与可积条件，且重新提升后与该分量一致"""
    D = P.source
    if sol.kind == SolutionKind.BIVECTOR and mode == LiftMode.KILLING:
        checks = affine_bivector_residuals(D, sol.data)
    else:
        checks = {"base-residual": solution_residual(D, sol)}
        if sol.kind == SolutionKind.BIVECTOR:
            checks.update(integrability_residuals(D, sol))
    for name, residual in checks.items():
        if not residual.is_zero():
            raise PreconditionError(name, f"抽出的 {sol.kind.value} 不满足 {name}")
    if not (lift(P, sol, mode).vector - part).is_zero():
        raise PreconditionError("lift-mismatch", f"{sol.kind.value} 的重新提升与分量不一致")


def decompose(P: PWGeometry, X: TensorField, mode: LiftMode = LiftMode.CONFORMAL) -> SymmetryDecomposition:
    mode = LiftMode(mode)
    chart, n = P.chart, P.n
    residual = ck_residual(P, X) if mode == LiftMode.CONFORMAL else killing_residual(P, X)
    if not residual.is_zero():
        raise PreconditionError(f"{mode.value}-residual", "输入不是（共形）Killing 场")

    frame = _frame_components(P, X)
    _check_grading(P, frame)
    minus = _split(P, frame, None, 0)
    plus = _split(P, frame, 1, 2)
    rest = _split(P, frame, 0, 1)

    if mode == LiftMode.CONFORMAL:
        c = -mu_scalar(P, rest) * chart.const(1, 2 * (n + 1))
        if not (c.numer.is_ground and c.denom.is_ground):
            raise PreconditionError("mu-scalar", "k 的系数 c 不是常数")
    else:
        c = chart.zero
    zero = rest - P.k_vector.scale(c)
    logger.debug(f"分解 ({mode.value}): c = {c.as_expr()}")

    v = w = alpha = None
    kind0 = SolutionKind.PROJECTIVE if mode == LiftMode.CONFORMAL else SolutionKind.AFFINE
    if not zero.is_zero():
        # v^A = ½ χ^{aA} D̃_a (k_b ṽ_0^b) = ½ ∂(k♭(ṽ_0))/∂p_A
        kv = P.inner(P.k_vector, zero)
        half = chart.const(1, 2)
        data = TensorField.from_function(chart, (up(n),), lambda A: half * chart.dp(kv, A))
        v = ProjectiveSolution(kind0, data)
        _verify(P, v, zero, mode)
    if not plus.is_zero():
        data = TensorField.from_function(
            chart, (up(n), up(n)), lambda A, B: chart.dp(frame[B], A), pweight=-2,
            symmetries=(((0, 1), Parity.ANTISYM),),
        )
        w = ProjectiveSolution(SolutionKind.BIVECTOR, data)
        _verify(P, w, plus, mode)
    if not minus.is_zero():
        graded = frame.grade_in_p(0)
        data = TensorField.from_function(chart, (down(n),), lambda A: graded[n + A], pweight=2)
        alpha = ProjectiveSolution(SolutionKind.KILLING, data)
        _verify(P, alpha, minus, mode)

    return SymmetryDecomposition(
        mode=mode, plus=plus, zero=zero, minus=minus, c=c,
        v=v, w=w, alpha=alpha, mu_check=mu_scalar(P, zero),
    )
