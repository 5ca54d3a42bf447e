from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from src.exception import InfeasibleError
from src.models import BinaryJoint, DistortionBudget, SourceModel
from src.rd_math.entropy import binary_entropy, mutual_information, mutual_information_grid

FEASIBILITY_TOLERANCE = 1e-12
ORACLE_GRID_POINTS = 1_000_000


def rate_distortion(source: SourceModel, distortion: DistortionBudget) -> float:
    """
    Rate-distortion function of the binary memoryless source under Hamming distortion.
    :param source:
    :param distortion:
    :return: h(p) - h(D) if D < min(p, 1 - p), 0 otherwise.
    """
    d = distortion.as_float
    if d < min(source.p, 1.0 - source.p):
        return binary_entropy(source.p) - binary_entropy(d)
    return 0.0


def feasible_joint_interval(q: float, p: float, d: float) -> tuple[float, float]:
    """
    Interval of a = P(X=1, Y=1) for which the joint with marginals p, q has P(X != Y) <= d.
    :param q: Marginal of Y.
    :param p: Marginal of X.
    :param d: Distortion budget.
    :return: (lower, upper) interval bounds.
    :raises InfeasibleError: When |p - q| > d.
    """
    if abs(p - q) > d + FEASIBILITY_TOLERANCE:
        raise InfeasibleError(f"Type {q} cannot cover type {p} within distortion {d}.")
    upper = min(p, q)
    lower = min(max(0.0, p + q - 1.0, (p + q - d) / 2.0), upper)
    return lower, upper


def minimizing_joint(q: float, source: SourceModel, distortion: DistortionBudget) -> BinaryJoint:
    """
    Joint with marginals p, q and distortion within budget that has the smallest mutual information.
    Mutual information is convex in a with minimum at independence, so the optimum is a = pq moved into
    the feasible interval.
    :param q:
    :param source:
    :param distortion:
    :return: Minimizing joint.
    :raises InfeasibleError: When |p - q| > D.
    """
    p = source.p
    lower, upper = feasible_joint_interval(q, p, distortion.as_float)
    return BinaryJoint(a=float(np.clip(p * q, lower, upper)), p=p, q=q)


def lower_mutual_info(q: float, source: SourceModel, distortion: DistortionBudget) -> float:
    """
    Lower mutual information I_m(q, p, D), the exponent of probability that a type-q codeword covers a type-p
    source string.
    :param q: Type of the reproduction.
    :param source:
    :param distortion:
    :return: Minimal mutual information in bits.
    :raises InfeasibleError: When |p - q| > D.
    """
    return cached_lower_mutual_info(q, source.p, distortion.as_float)


@lru_cache(maxsize=1 << 16)
def cached_lower_mutual_info(q: float, p: float, d: float) -> float:
    lower, upper = feasible_joint_interval(q, p, d)
    a_star = float(np.clip(max(p * q, (p + q - d) / 2.0), lower, upper))
    return max(0.0, mutual_information(BinaryJoint(a=a_star, p=p, q=q)))


def lower_mutual_info_oracle(
    q: float, source: SourceModel, distortion: DistortionBudget, grid_points: int = ORACLE_GRID_POINTS
) -> float:
    """
    Brute force minimum of mutual information over a dense grid of feasible joints, refined by bounded scalar
    minimization around the best grid point. Meant for verification of lower_mutual_info.
    :param q:
    :param source:
    :param distortion:
    :param grid_points: Number of grid intervals.
    :return: Minimal mutual information in bits.
    :raises InfeasibleError: When |p - q| > D.
    """
    p = source.p
    lower, upper = feasible_joint_interval(q, p, distortion.as_float)
    if upper - lower <= 0.0:
        return max(0.0, float(mutual_information_grid(np.asarray(lower), p, q)))

    grid = np.linspace(lower, upper, grid_points + 1)
    values = mutual_information_grid(grid, p, q)
    best = int(np.argmin(values))
    refined = minimize_scalar(
        lambda a: float(mutual_information_grid(np.asarray(a), p, q)),
        bounds=(grid[max(best - 1, 0)], grid[min(best + 1, grid_points)]),
        method="bounded",
        options={"xatol": 1e-13},
    )
    return max(0.0, min(float(values[best]), float(refined.fun), float(values[0]), float(values[-1])))


def optimal_reproduction_type(source: SourceModel, distortion: DistortionBudget) -> float:
    """
    Reproduction type maximizing the probability of covering the source, (p - D) / (1 - 2D) clamped to [0, 1].
    At D = 1/2 the limit is returned (1/2 for symmetric source, otherwise 0 or 1).
    :param source:
    :param distortion:
    :return: Optimal type q*.
    """
    p = source.p
    d = distortion.as_float
    if 1.0 - 2.0 * d <= 0.0:
        if p == 0.5:
            return 0.5
        return 0.0 if p < 0.5 else 1.0
    return float(np.clip((p - d) / (1.0 - 2.0 * d), 0.0, 1.0))


def type_grid_table(source: SourceModel, distortion: DistortionBudget, step: float = 0.05) -> list[tuple[float, float]]:
    """
    Lower mutual information on a grid of reproduction types, infeasible types are left out.
    :param source:
    :param distortion:
    :param step: Grid step.
    :return: List of (q, I_m(q, p, D)).
    """
    table = []
    for q in np.round(np.arange(0.0, 1.0 + step / 2, step), 10):
        try:
            table.append((float(q), lower_mutual_info(float(q), source, distortion)))
        except InfeasibleError:
            continue
    return table
