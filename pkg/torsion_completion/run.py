import argparse
import functools
import os
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import List, Optional, Sequence

import tqdm
from dotenv import load_dotenv
from easydict import EasyDict
from loguru import logger
from rich.console import Console

import constants
from constants.errors import LevelCapExceeded, ScenarioError, WindowInsufficient
from torsion_completion import __version__
from torsion_completion.report import RunReport, TaskReport
from torsion_completion.scenario import build_context, load_scenario
from torsion_completion.tasks import OPERATIONS, PreparedTask, execute, prepare_tasks
from utilities import utils
from utilities.perf_monitor import PerfMonitor

LOG_LEVEL_VARIABLE = "TORSION_COMPLETION_LOG_LEVEL"


def setup_logging(level: Optional[str]):
    logger.remove()
    logger.add(sys.stderr, level=(level or os.environ.get(LOG_LEVEL_VARIABLE) or "WARNING").upper())


class Runner:
    @staticmethod
    def config(argv: Optional[Sequence[str]] = None) -> EasyDict:
        parser = argparse.ArgumentParser(
            prog="torsion-completion",
            description="Runs the verification tasks of a scenario file and writes a JSON report.",
        )
        parser.add_argument("scenario", type=Path, help="Scenario file to run.")
        parser.add_argument(
            "--level",
            type=int,
            help=f"Level J for tasks that set none (default {constants.DEFAULT_LEVEL}).",
        )
        parser.add_argument(
            "--window",
            type=int,
            nargs=2,
            metavar=("D0", "D1"),
            help="Internal-degree window for graded rings.",
        )
        parser.add_argument(
            "--seed",
            type=int,
            help=f"Seed for random instances (default {constants.DEFAULT_SEED}).",
        )
        parser.add_argument(
            "--order",
            choices=["grevlex", "lex"],
            help="Monomial order, overriding the ring block.",
        )
        parser.add_argument(
            "--resolution-length",
            type=int,
            help="Length of truncated free resolutions over quotient rings.",
        )
        parser.add_argument(
            "--jobs",
            type=int,
            default=1,
            help="Number of tasks run at once.",
        )
        parser.add_argument(
            "--output",
            default="-",
            help="Where to write the report; '-' is stdout.",
        )
        parser.add_argument(
            "--log-level",
            help=f"Log level on stderr; falls back to ${LOG_LEVEL_VARIABLE}, then WARNING.",
        )
        parser.add_argument(
            "--ttl",
            type=int,
            default=constants.DEFAULT_LIMITS.task_ttl,
            help="Seconds a task may run before it counts as a resource cap; 0 runs tasks inline without a limit.",
        )
        parser.add_argument(
            "--progress",
            action="store_true",
            help="Show a progress bar over tasks on stderr.",
        )
        config = EasyDict(vars(parser.parse_args(argv)))
        if config.jobs < 1 or config.ttl < 0:
            parser.error("--jobs must be positive and --ttl non-negative")
        config.limits = constants.DEFAULT_LIMITS.with_overrides(task_ttl=config.ttl)
        return config

    def __init__(self, config: EasyDict):
        self.config = config
        self.scenario = load_scenario(config.scenario, OPERATIONS)
        self.context = build_context(self.scenario, config.order)
        self.tasks = prepare_tasks(self.scenario, self.context, config)
        defaults = self.scenario.defaults
        self.seed = next(s for s in (config.seed, defaults.seed, constants.DEFAULT_SEED) if s is not None)
        self.input_hash = utils.canonical_hash(
            self.scenario.text,
            config.level,
            tuple(config.window) if config.window else None,
            self.seed,
            config.order,
            config.resolution_length,
        )
        # Set once a task hits a time, level or window cap.
        self.capped = False
        self.perf = PerfMonitor("task")

    def _run_one(self, task: PreparedTask) -> TaskReport:
        try:
            with self.perf.sample(task.op):
                if self.config.ttl > 0:
                    return utils.run_with_ttl(functools.partial(execute, task), self.config.ttl)
                return execute(task)
        except (TimeoutError, LevelCapExceeded, WindowInsufficient) as e:
            logger.error(f"Task {task.index} ({task.op}) hit a resource cap: {e}")
            self.capped = True
            return TaskReport(
                index=task.index,
                op=task.op,
                verdict=f"{constants.VERDICT_UNDETERMINED} at resource cap",
                witnesses=[f"{type(e).__name__}: {e}"],
            )
        except Exception as e:
            logger.exception(f"Task {task.index} ({task.op}) crashed")
            return TaskReport(
                index=task.index, op=task.op, verdict=constants.VERDICT_FAIL, witnesses=[f"{type(e).__name__}: {e}"]
            )

    def run_tasks(self) -> List[TaskReport]:
        results = {}
        pbar = tqdm.tqdm(total=len(self.tasks), desc="Tasks", disable=not self.config.progress, file=sys.stderr)
        with ThreadPoolExecutor(max_workers=self.config.jobs) as executor:
            futures = {executor.submit(self._run_one, task): task.index for task in self.tasks}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
                pbar.update(1)
        pbar.close()
        return [results[i] for i in sorted(results)]

    def write(self, report: RunReport):
        text = report.to_json()
        if self.config.output == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            Path(self.config.output).write_text(text, encoding="utf-8")
            logger.info(f"Wrote report to {self.config.output}")

    def run(self) -> int:
        report = RunReport(
            engine_version=__version__,
            input_hash=self.input_hash,
            seed=self.seed,
            tasks=self.run_tasks(),
        )
        self.write(report)
        if report.tasks:
            report.print_summary(Console(stderr=True))
            logger.debug(self.perf.summary_str())
        if self.capped:
            return constants.EXIT_RESOURCE_CAP
        if not all(task.succeeded for task in report.tasks):
            return constants.EXIT_VERIFICATION_FAILED
        return constants.EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    config = Runner.config(argv)
    setup_logging(config.log_level)
    try:
        runner = Runner(config)
    except ScenarioError as e:
        logger.error(f"{config.scenario}: {e}")
        return constants.EXIT_USAGE
    except OSError as e:
        logger.error(f"Cannot read {config.scenario}: {e}")
        return constants.EXIT_USAGE
    return runner.run()
