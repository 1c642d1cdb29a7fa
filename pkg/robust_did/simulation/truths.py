"""
Analytic Truths

Closed-form ATTs, selection biases and identified sets of the Monte-Carlo designs.
"""

from dataclasses import dataclass, field

from scipy import stats

from ..enums import DgpKind
from .dgp import DgpSpec


@dataclass(frozen=True)
class IdentifiedSet:
    """
    True ATT and its identified set.

    Attributes:
        att (float): True ATT
        lower (float): Lower endpoint of the identified set
        upper (float): Upper endpoint of the identified set
    """

    att: float
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains_att(self) -> bool:
        return self.lower <= self.att <= self.upper


@dataclass(frozen=True)
class TruthSet:
    """
    Analytic truths of one design.

    Attributes:
        c (float): alpha_1 - alpha_0, the treated-minus-control mean of U
        primary (IdentifiedSet | None): Set targeted by a single rdid run (dip and covariate designs)
        estimand (float | None): Population post-period difference in means
        sb (dict[float, float]): True selection bias per information level
        periods (dict[float, IdentifiedSet]): Per post period (dip design)
        cells (dict[tuple[float, float], IdentifiedSet]): Per (g, t) (staggered design)
        mu (dict[float, float]): E[U | G = g] - E[U | G = never] (staggered design)
    """

    c: float
    primary: IdentifiedSet | None = None
    estimand: float | None = None
    sb: dict[float, float] = field(default_factory=dict)
    periods: dict[float, IdentifiedSet] = field(default_factory=dict)
    cells: dict[tuple[float, float], IdentifiedSet] = field(default_factory=dict)
    mu: dict[float, float] = field(default_factory=dict)


def selection_gap() -> float:
    """
    alpha_1 - alpha_0 for D = 1{U >= 1}, U standard normal.

    alpha_1 = phi(1) / (1 - Phi(1)) and alpha_0 = -phi(1) / Phi(1); the gap is about 1.812735.
    """
    density = stats.norm.pdf(1.0)
    return float(density / stats.norm.sf(1.0) + density / stats.norm.cdf(1.0))


def staggered_mu(g: int, horizon: int) -> float:
    """E[U | G = g] - E[U | G = never] for U ~ U[0, 2]: (2 - (2g - 1) / (2T)) - 0.5."""
    return 2.0 - (2.0 * g - 1.0) / (2.0 * horizon) - 0.5


def staggered_att(g: int, t: int) -> float:
    """ATT(g, t) = sum_{s=g..t} (1 + s^2) / 2, zero for t < g."""
    return sum((1.0 + s * s) / 2.0 for s in range(g, t + 1))


def analytic_truths(spec: DgpSpec) -> TruthSet:
    """
    Closed-form truths of a design.

    Args:
        spec: Design

    Returns:
        TruthSet; the staggered design fills cells and mu for g, t in 1..T
    """
    c = selection_gap()

    if spec.kind is DgpKind.ASHENFELTER_DIP:
        theta = spec.theta
        sb = {-2.0: 7.0 * c, -1.0: 3.0 * c, 0.0: c}
        periods = {}
        for t in range(1, spec.post_periods + 1):
            theta_ols = (1.0 + t + t * t) * c + theta * t
            periods[float(t)] = IdentifiedSet(att=theta * t, lower=theta_ols - 7.0 * c, upper=theta_ols - c)
        return TruthSet(c=c, primary=periods[1.0], estimand=3.0 * c + theta, sb=sb, periods=periods)

    if spec.kind is DgpKind.COVARIATE_EXAMPLE:
        theta, p = spec.theta, spec.p
        primary = IdentifiedSet(att=p * theta, lower=(p / 2.0 - 1.0) * c + p * theta, upper=p * c / 2.0 + p * theta)
        return TruthSet(c=c, primary=primary, estimand=p * theta + (1.0 + 0.5 * p) * c, sb={0.0: c, 1.0: 2.0 * c})

    horizon = spec.horizon
    mu = {float(g): staggered_mu(g, horizon) for g in range(1, horizon + 1)}
    cells = {}
    for g in range(1, horizon + 1):
        for t in range(1, horizon + 1):
            att = staggered_att(g, t)
            cells[(float(g), float(t))] = IdentifiedSet(
                att=att,
                lower=att + (t * t - horizon * horizon) * mu[float(g)],
                upper=att + t * t * mu[float(g)],
            )
    return TruthSet(c=c, cells=cells, mu=mu)
