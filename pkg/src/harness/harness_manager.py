import logging
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

import pandas as pd

from src.config import ExperimentConfig
from src.exception import CheckFailureError, FileWritingError, ZeroRateError
from src.generic_file_handlers.csv_handler import save_dataframe_to_csv
from src.harness.dictionary_sampling import BuildSample, build_and_sample
from src.harness.exhaustive_checks import (
    check_ball_intersection,
    check_cycle_lemma,
    check_random_codebook_baseline,
    random_codebook_trials,
)
from src.harness.lemma_checks import (
    check_coverage_probability,
    check_frontier_growth,
    check_match_count_mean,
    check_match_count_second_moment,
    check_short_phrases,
    check_symmetry,
    frontier_violated,
)
from src.harness.rate_sweep import rate_sweep
from src.harness.trial_runner import run_trials, split_evenly
from src.models import Diagnostics, ExitCode, LemmaReport


@dataclass(slots=True)
class CellRun:
    """
    Everything one parameter cell needs while its checks run. Builder runs are made once, on first use.
    """

    cfg: ExperimentConfig
    process_count: int
    diagnostics: Diagnostics = field(default_factory=Diagnostics)
    sweep_rows: Optional[pd.DataFrame] = None
    _builds: Optional[list[BuildSample]] = None

    @property
    def builds(self) -> list[BuildSample]:
        if self._builds is None:
            self._builds = HarnessManager.collect_builds(self.cfg, self.process_count)
        return self._builds


class HarnessManager:
    """
    Class with static methods only, running the checks of parameter cells and storing their reports.
    """

    @staticmethod
    def collect_builds(cfg: ExperimentConfig, process_count: int) -> list[BuildSample]:
        """
        Run the builder cfg.builds times, the fresh samples are split evenly among the builds.
        """
        logging.info("[%s] Running %s dictionary builds.", cfg.label, cfg.builds)
        sample_counts = split_evenly(cfg.trials, cfg.builds)
        return run_trials(
            build_and_sample,
            [(cfg, build_index, count) for build_index, count in enumerate(sample_counts)],
            process_count,
        )

    @staticmethod
    def collect_frontier_violations(cfg: ExperimentConfig, process_count: int) -> list[bool]:
        logging.info("[%s] Running %s instrumented encodes.", cfg.label, cfg.frontier_runs)
        arguments = [(cfg, run_index) for run_index in range(cfg.frontier_runs)]
        return run_trials(frontier_violated, arguments, process_count)

    @staticmethod
    def collect_random_codebooks(cfg: ExperimentConfig, process_count: int) -> list:
        chunk_sizes = split_evenly(cfg.trials, max(1, min(process_count, cfg.trials)))
        starts = [sum(chunk_sizes[:index]) for index in range(len(chunk_sizes))]
        return run_trials(random_codebook_trials, list(zip([cfg] * len(starts), starts, chunk_sizes)), process_count)

    @staticmethod
    def run_rate_sweep(run: CellRun) -> Optional[LemmaReport]:
        rows, report = rate_sweep(run.cfg, run.process_count)
        run.sweep_rows = rows
        if report is None:
            run.diagnostics.add("Rate convergence not reported, it needs at least two n values.")
        return report

    @staticmethod
    def run_short_phrases(run: CellRun) -> Optional[LemmaReport]:
        try:
            return check_short_phrases(run.cfg)
        except ZeroRateError as ex:
            run.diagnostics.add(f"Short phrase check skipped: {ex}")
            return None

    @staticmethod
    def run_cell(cfg: ExperimentConfig, process_count: int) -> tuple[list[LemmaReport], Optional[pd.DataFrame], bool]:
        """
        Run selected checks of one cell. A check that cannot run is logged and counts as failed.
        :param cfg: Validated experiment cell.
        :param process_count: Maximum number of worker processes.
        :return: Reports, sweep rows (None if sweep was not selected) and False if some check could not run.
        """
        run = CellRun(cfg=cfg, process_count=process_count)
        reports: list[LemmaReport] = []
        all_ran = True
        for check_name in cfg.selected_checks():
            logging.info("[%s] Check %s is starting.", cfg.label, check_name)
            try:
                report = CHECKS[check_name](run)
            except (ValueError, ArithmeticError) as ex:
                logging.error("[%s] Check %s could not run: %s", cfg.label, check_name, ex)
                all_ran = False
                continue
            if report is None:
                continue
            logging.info(
                "[%s] Check %s %s: estimate %.6g, bound %.6g (%s, SE %.3g).",
                cfg.label,
                report.check_name,
                "passed" if report.passed else "FAILED",
                report.estimate,
                report.bound,
                report.comparison.value,
                report.standard_error,
            )
            reports.append(report)
        run.diagnostics.process_into_logging("Analysis", cfg.label)
        return reports, run.sweep_rows, all_ran

    @staticmethod
    def ensure_all_passed(reports: list[LemmaReport]) -> None:
        """
        :raises CheckFailureError: If some report did not pass.
        """
        failed = [f"{report.check_name} ({report.parameters})" for report in reports if not report.passed]
        if failed:
            raise CheckFailureError(f"{len(failed)} checks failed: {'; '.join(failed)}")


CHECKS: dict[str, Callable[[CellRun], Optional[LemmaReport]]] = {
    "match_count_mean": lambda run: check_match_count_mean(run.cfg, run.builds, run.diagnostics),
    "match_count_second_moment": lambda run: check_match_count_second_moment(run.cfg, run.builds, run.diagnostics),
    "coverage_probability": lambda run: check_coverage_probability(run.cfg, run.builds, run.diagnostics),
    "symmetry": lambda run: check_symmetry(run.cfg, run.builds, run.diagnostics),
    "cycle_lemma": lambda run: check_cycle_lemma(run.cfg),
    "frontier_growth": lambda run: check_frontier_growth(
        run.cfg, HarnessManager.collect_frontier_violations(run.cfg, run.process_count)
    ),
    "short_phrases": HarnessManager.run_short_phrases,
    "ball_intersection": lambda run: check_ball_intersection(run.cfg, run.diagnostics),
    "random_codebook_baseline": lambda run: check_random_codebook_baseline(
        run.cfg, HarnessManager.collect_random_codebooks(run.cfg, run.process_count), run.diagnostics
    ),
    "rate_sweep": HarnessManager.run_rate_sweep,
}


def sweep_output_path(output_path: str) -> str:
    """
    Path of the rate sweep csv next to the report csv, "<stem>_rate_sweep.csv".
    """
    stem, _ = os.path.splitext(output_path)
    return f"{stem}_rate_sweep.csv"


def run_analysis(configs: list[ExperimentConfig], output_path: str, process_count: int) -> ExitCode:
    """
    Run the checks of every cell and store reports (and sweep rows) into csv.
    :param configs: Experiment cells.
    :param output_path: Report csv path.
    :param process_count: Maximum number of worker processes.
    :return: Exit code of the action.
    """
    logging.info("ANALYSIS is starting")
    try:
        for cfg in configs:
            cfg.validate()
    except ValueError as ex:
        logging.error("Invalid experiment configuration: %s", ex)
        logging.info("ANALYSIS failed.")
        return ExitCode.USAGE_ERROR

    reports: list[LemmaReport] = []
    sweeps: list[pd.DataFrame] = []
    all_ran = True
    for cfg in configs:
        cell_reports, sweep_rows, cell_ran = HarnessManager.run_cell(cfg, process_count)
        reports.extend(cell_reports)
        all_ran &= cell_ran
        if sweep_rows is not None:
            sweeps.append(sweep_rows)

    try:
        save_dataframe_to_csv(pd.DataFrame([report.as_dict() for report in reports]), output_path)
        if sweeps:
            save_dataframe_to_csv(pd.concat(sweeps, ignore_index=True), sweep_output_path(output_path))
    except FileWritingError as ex:
        logging.error(ex)
        logging.info("ANALYSIS failed.")
        return ExitCode.USAGE_ERROR

    try:
        HarnessManager.ensure_all_passed(reports)
        if not all_ran:
            raise CheckFailureError("Some checks could not run.")
    except CheckFailureError as ex:
        logging.error(ex)
        logging.info("ANALYSIS finished with failed checks.")
        return ExitCode.CHECK_FAILURE

    logging.info("ANALYSIS finished successfully, %s reports passed.", len(reports))
    return ExitCode.SUCCESS
