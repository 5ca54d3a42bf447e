import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

DEFAULT_SLACK_MULTIPLIER = 3.0


class Comparison(Enum):
    """
    How empirical estimate is compared with the bound.
    """

    EQUAL = "equal"
    AT_LEAST = "at_least"
    AT_MOST = "at_most"


@dataclass(slots=True)
class LemmaReport:
    """
    Result of one verification check for one parameter cell.
    :param check_name: Name of the check (e.g. match_count_mean).
    :param parameters: Parameters of the cell (p, D, level, ...).
    :param estimate: Empirical (or exactly computed) value.
    :param bound: Value predicted by the bound under test.
    :param sample_count: Number of samples behind the estimate.
    :param standard_error: Standard error of the estimate, 0 for deterministic checks.
    :param comparison: Direction of the bound.
    :param slack: Multiplier of standard error tolerated in the comparison.
    :param details: Additional values for the csv output.
    """

    check_name: str
    parameters: dict[str, Any]
    estimate: float
    bound: float
    sample_count: int
    standard_error: float
    comparison: Comparison
    slack: float = DEFAULT_SLACK_MULTIPLIER
    details: dict[str, Any] = field(default_factory=dict)
    passed: bool = field(init=False, default=False)

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError(f"Report {self.check_name} needs at least one sample.")
        self.passed = self.recompute_passed()

    @property
    def tolerance(self) -> float:
        return self.slack * self.standard_error

    def recompute_passed(self) -> bool:
        """
        Evaluate the comparison of estimate and bound within tolerance. NaN values never pass.
        :return: True if the bound holds.
        """
        if math.isnan(self.estimate) or math.isnan(self.bound):
            return False
        if self.comparison == Comparison.EQUAL:
            return abs(self.estimate - self.bound) <= self.tolerance + 1e-12
        if self.comparison == Comparison.AT_LEAST:
            return self.estimate + self.tolerance + 1e-12 >= self.bound
        return self.estimate - self.tolerance - 1e-12 <= self.bound

    def as_dict(self) -> dict[str, Any]:
        """
        Flatten report into one csv row.
        """
        row = {"check": self.check_name}
        row.update(self.parameters)
        row.update(
            {
                "estimate": self.estimate,
                "bound": self.bound,
                "comparison": self.comparison.value,
                "sample_count": self.sample_count,
                "standard_error": self.standard_error,
                "slack": self.slack,
                "passed": self.passed,
                "details": json.dumps(self.details, sort_keys=True, default=str),
            }
        )
        return row
