import logging
from dataclasses import dataclass, field
from fractions import Fraction
from os import environ as env
from typing import Optional

from src.models import CodecVariant, MatchRelation
from src.utils import bool_from_env, float_from_env, fraction_from_env, int_from_env, int_list_from_env

MAX_ELL = 16
MAX_SEED = (1 << 64) - 1
CHECK_NAMES = [
    "match_count_mean",
    "match_count_second_moment",
    "coverage_probability",
    "symmetry",
    "cycle_lemma",
    "frontier_growth",
    "short_phrases",
    "ball_intersection",
    "random_codebook_baseline",
    "rate_sweep",
]


@dataclass(slots=True)
class CodecConfig:
    """
    Configuration of encoding.
    """

    variant: str = env.get("CLP_VARIANT", "practical")
    relation: Optional[str] = env.get("CLP_RELATION")
    distortion: Fraction = fraction_from_env("CLP_DISTORTION", Fraction(0))
    source_p: Optional[Fraction] = fraction_from_env("CLP_SOURCE_P")
    ell: Optional[int] = int_from_env("CLP_ELL")
    delta: float = float_from_env("CLP_DELTA", 0.01)
    seed: int = int_from_env("CLP_SEED", 0)
    bits: Optional[int] = int_from_env("CLP_BITS")

    @property
    def codec_variant(self) -> CodecVariant:
        return CodecVariant.from_name(self.variant)

    @property
    def match_relation(self) -> MatchRelation:
        """
        Relation given by configuration, or the variant default (prefix-wise for idealized variant, full codelet
        for the practical one).
        """
        if self.relation:
            return MatchRelation.from_name(self.relation)
        if self.codec_variant == CodecVariant.IDEALIZED:
            return MatchRelation.PREFIX_WISE
        return MatchRelation.FULL_CODELET

    def validate(self) -> None:
        """
        Check values are within allowed limits.
        :raises ValueError:
        """
        variant = self.codec_variant
        relation = self.match_relation
        if variant == CodecVariant.IDEALIZED and relation != MatchRelation.PREFIX_WISE:
            raise ValueError("Idealized variant works with prefix-wise match relation only.")

        if self.distortion is None or not 0 <= self.distortion <= Fraction(1, 2):
            raise ValueError("CLP_DISTORTION needs to be a number from interval [0, 1/2].")

        if self.source_p is not None and not 0 <= self.source_p <= 1:
            raise ValueError("CLP_SOURCE_P needs to be a probability from interval [0, 1].")

        if self.ell is not None and not 1 <= self.ell <= MAX_ELL:
            raise ValueError(f"CLP_ELL needs to be from interval [1, {MAX_ELL}].")

        if self.delta is None or not 0.0 < self.delta < 1.0:
            raise ValueError("CLP_DELTA needs to be from interval (0, 1).")

        if self.seed is None or not 0 <= self.seed <= MAX_SEED:
            raise ValueError("CLP_SEED needs to be an unsigned 64-bit integer.")

        if self.bits is not None and self.bits < 0:
            raise ValueError("CLP_BITS needs to be nonnegative.")

        if variant == CodecVariant.PRACTICAL and self.ell is not None:
            logging.warning("Level width is used by the idealized variant only, CLP_ELL=%s is ignored.", self.ell)


@dataclass(slots=True)
class ExperimentConfig:
    """
    One parameter cell of the verification harness.
    """

    p: float = float_from_env("CLP_EXPERIMENT_P", 0.5)
    distortion: Fraction = fraction_from_env("CLP_EXPERIMENT_DISTORTION", Fraction(1, 4))
    ell: int = int_from_env("CLP_EXPERIMENT_ELL", 2)
    delta: float = float_from_env("CLP_EXPERIMENT_DELTA", 0.01)
    n_values: list[int] = field(
        default_factory=lambda: int_list_from_env("CLP_EXPERIMENT_N_VALUES", [1 << 12, 1 << 14])
    )
    trials: int = int_from_env("CLP_EXPERIMENT_TRIALS", 10_000)
    builds: int = int_from_env("CLP_EXPERIMENT_BUILDS", 20)
    horizon_n: int = int_from_env("CLP_EXPERIMENT_HORIZON", 4096)
    level: int = int_from_env("CLP_EXPERIMENT_LEVEL", 4)
    max_exhaustive_length: int = int_from_env("CLP_EXPERIMENT_MAX_EXHAUSTIVE_LENGTH", 16)
    pair_count: int = int_from_env("CLP_EXPERIMENT_PAIR_COUNT", 100)
    codebook_size: Optional[int] = int_from_env("CLP_EXPERIMENT_CODEBOOK_SIZE")
    frontier_runs: int = int_from_env("CLP_EXPERIMENT_FRONTIER_RUNS", 1000)
    sweep_seeds: int = int_from_env("CLP_EXPERIMENT_SWEEP_SEEDS", 20)
    seed: int = int_from_env("CLP_EXPERIMENT_SEED", 0)
    output_path: str = env.get("CLP_EXPERIMENT_OUTPUT", "lemma_reports.csv")
    checks: list[str] = field(default_factory=lambda: ["all"])

    @property
    def label(self) -> str:
        """
        Short description of the cell for logs.
        """
        return f"p={self.p} D={self.distortion} ell={self.ell} L={self.level}"

    def selected_checks(self) -> list[str]:
        if "all" in self.checks:
            return list(CHECK_NAMES)
        return [name for name in CHECK_NAMES if name in self.checks]

    def validate(self) -> None:
        """
        Check values are within allowed limits.
        :raises ValueError:
        """
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("Experiment p needs to be from interval [0, 1].")
        if self.distortion is None or not 0 <= self.distortion <= Fraction(1, 2):
            raise ValueError("Experiment distortion needs to be from interval [0, 1/2].")
        if not 1 <= self.ell <= MAX_ELL:
            raise ValueError(f"Experiment ell needs to be from interval [1, {MAX_ELL}].")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("Experiment delta needs to be from interval (0, 1).")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError("Experiment n values need to be positive, at least one is needed.")
        for name in ["trials", "builds", "horizon_n", "pair_count", "frontier_runs", "sweep_seeds"]:
            if getattr(self, name) < 1:
                raise ValueError(f"Experiment {name} needs to be at least 1.")
        if self.level < self.ell or self.level % self.ell != 0:
            raise ValueError("Experiment level needs to be a positive multiple of ell.")
        if self.max_exhaustive_length < 1 or self.level + self.ell > 24:
            raise ValueError("Experiment level + ell needs to stay at most 24 for exact computations.")
        if self.codebook_size is not None and self.codebook_size < 1:
            raise ValueError("Experiment codebook size needs to be at least 1.")
        if not 0 <= self.seed <= MAX_SEED:
            raise ValueError("Experiment seed needs to be an unsigned 64-bit integer.")
        unknown_checks = [name for name in self.checks if name != "all" and name not in CHECK_NAMES]
        if unknown_checks:
            raise ValueError(f"Unknown checks {unknown_checks}, expected some of {CHECK_NAMES} or all.")


@dataclass(slots=True)
class Config:
    """
    Application configuration.
    """

    logging_debug: bool = bool_from_env("LOGGING_DEBUG", False)
    max_process_count: int = int_from_env("MAX_PROCESS_COUNT", 8)
    full_log_path: Optional[str] = env.get("CLP_LOG_FILE")
    filtered_log_path: Optional[str] = env.get("CLP_FILTERED_LOG_FILE")

    codec: CodecConfig = field(default_factory=CodecConfig)

    def validate(self):
        """
        Check the values set for config are valid for their purpose.
        :raises ValueError:
        """
        if self.max_process_count < 1:
            raise ValueError("MAX_PROCESS_COUNT needs to be at least 1.")

        self.codec.validate()
