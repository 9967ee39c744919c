import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from json import load
from pathlib import Path
from typing import ClassVar, Optional

from command_bus import CommandBus
from errors import CommandError, GrossError, InvalidScoreVector
from grosscore import DEFAULT_MAX_DIV_TERMS, GrossNumber, Magnitude, Ordering, Parts, classify, compare, parts
from grossparse import evaluate_text
from lexrank import METHODS, RankMethod, ScoreVector, leaderboard
from setmeasure import Measure, SetDescriptor, catalog, compare_measure, measure, parse_set

SETTINGS_FILE = Path(__file__).resolve().parent / "grossnum_settings.json"
MAX_DIV_TERMS_ENV = "GROSSNUM_MAX_DIV_TERMS"

LOG_FORMAT = "%(asctime)s | %(levelname)-7s | %(message)s"


def configure_logging(level="WARNING"):
    """Set the standard logging format used by all modules"""
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        datefmt="%H:%M:%S",
    )
    # basicConfig does nothing once handlers exist, the level still has to follow
    logging.getLogger().setLevel(level)


@dataclass(frozen=True)
class Settings:
    max_div_terms: int = DEFAULT_MAX_DIV_TERMS
    unicode_output: bool = False
    log_level: str = "WARNING"
    batch_workers: int = 4


def parse_max_div_terms(value, source: str) -> int:
    """Positive integer division budget, or CommandError naming where the value came from"""
    if isinstance(value, bool):
        raise CommandError(f"{source} must be a positive integer, got {value!r}")
    try:
        terms = int(value)
    except (TypeError, ValueError):
        raise CommandError(f"{source} must be a positive integer, got {value!r}") from None
    if terms < 1 or str(terms) != str(value).strip():
        raise CommandError(f"{source} must be a positive integer, got {value!r}")
    return terms


def load_settings(path=None, environ=None) -> Settings:
    """Load settings from grossnum_settings.json, then apply the environment override"""
    path = Path(path) if path is not None else SETTINGS_FILE
    environ = os.environ if environ is None else environ

    # Open the settings file
    data = {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = load(f)
    except FileNotFoundError:
        logging.warning("[Driver] Settings file %s not found, using defaults", path)

    # Keys the Settings class does not know are reported and skipped
    known = {f.name for f in fields(Settings)}
    for key in data:
        if key not in known:
            logging.warning("[Driver] Ignoring unknown setting '%s'", key)
    settings = Settings(**{key: value for key, value in data.items() if key in known})

    settings = replace(settings, max_div_terms=parse_max_div_terms(settings.max_div_terms, f"{path.name}: max_div_terms"))
    if settings.batch_workers < 1:
        raise CommandError(f"{path.name}: batch_workers must be a positive integer")

    # The environment wins over the file
    override = environ.get(MAX_DIV_TERMS_ENV)
    if override is not None:
        settings = replace(settings, max_div_terms=parse_max_div_terms(override, MAX_DIV_TERMS_ENV))
    return settings


# Commands routed over the bus, one type per verb
@dataclass(frozen=True)
class EvalCommand:
    verb: ClassVar[str] = "eval"
    expr: str


@dataclass(frozen=True)
class CmpCommand:
    verb: ClassVar[str] = "cmp"
    lhs: str
    rhs: str


@dataclass(frozen=True)
class PartsCommand:
    verb: ClassVar[str] = "parts"
    expr: str


@dataclass(frozen=True)
class MeasureCommand:
    verb: ClassVar[str] = "measure"
    set_expr: str


@dataclass(frozen=True)
class MeasureCmpCommand:
    verb: ClassVar[str] = "measure-cmp"
    lhs: str
    rhs: str


@dataclass(frozen=True)
class RankCommand:
    verb: ClassVar[str] = "rank"
    method: str
    vectors: tuple
    labels: tuple = ()

    def __post_init__(self):
        method = getattr(self.method, "value", self.method)
        if method not in METHODS:
            raise CommandError(f"unknown rank method '{method}', expected one of: {', '.join(METHODS)}")
        if not self.vectors:
            raise CommandError("rank needs at least one --scores vector")
        try:
            vectors = tuple(
                v if isinstance(v, ScoreVector) else ScoreVector.parse(v)
                for v in self.vectors
            )
        except InvalidScoreVector as e:
            raise CommandError(f"--scores: {e}") from e
        labels = tuple(self.labels or ())
        if labels and len(labels) != len(vectors):
            raise CommandError(f"{len(labels)} --label values for {len(vectors)} --scores vectors")
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "labels", labels)


@dataclass(frozen=True)
class TableCommand:
    verb: ClassVar[str] = "table"


COMMAND_TYPES = {
    command.verb: command
    for command in (EvalCommand, CmpCommand, PartsCommand, MeasureCommand, MeasureCmpCommand, RankCommand, TableCommand)
}


# Results handed back to the front ends
@dataclass(frozen=True)
class PartsResult:
    value: GrossNumber
    parts: Parts
    magnitude: Magnitude


@dataclass(frozen=True)
class MeasureResult:
    descriptor: SetDescriptor
    measure: Measure


@dataclass(frozen=True)
class RankResult:
    method: RankMethod
    entries: list = field(default_factory=list)


@dataclass(frozen=True)
class BatchOutcome:
    command: object
    result: object = None
    error: Optional[GrossError] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class Driver:
    """The driver owns the settings and the batch pool, and routes commands from the bus to the library modules"""
    def __init__(self, bus: CommandBus, settings: Settings):
        self.bus = bus
        self.settings = settings
        self.batch_executor = None
        self.running = False

    def start(self):
        logging.info("[Driver] Starting with max_div_terms=%d", self.settings.max_div_terms)

        # Create the worker pool for batch files
        self.batch_executor = ThreadPoolExecutor(max_workers=self.settings.batch_workers)

        # Driver answers every verb the front ends publish
        self.bus.subscribe("eval", self.evaluate)
        self.bus.subscribe("cmp", self.compare)
        self.bus.subscribe("parts", self.split)
        self.bus.subscribe("measure", self.measure)
        self.bus.subscribe("measure-cmp", self.compare_measures)
        self.bus.subscribe("rank", self.rank)
        self.bus.subscribe("table", self.table)

        self.running = True

    def _evaluate_text(self, text: str) -> GrossNumber:
        return evaluate_text(text, self.settings.max_div_terms)

    def evaluate(self, command: EvalCommand) -> GrossNumber:
        return self._evaluate_text(command.expr)

    def compare(self, command: CmpCommand) -> Ordering:
        return compare(self._evaluate_text(command.lhs), self._evaluate_text(command.rhs))

    def split(self, command: PartsCommand) -> PartsResult:
        value = self._evaluate_text(command.expr)
        return PartsResult(value, parts(value), classify(value))

    def measure(self, command: MeasureCommand) -> MeasureResult:
        descriptor = parse_set(command.set_expr)
        return MeasureResult(descriptor, measure(descriptor))

    def compare_measures(self, command: MeasureCmpCommand) -> Ordering:
        left = measure(parse_set(command.lhs))
        right = measure(parse_set(command.rhs))
        return compare_measure(left, right)

    def rank(self, command: RankCommand) -> RankResult:
        method = METHODS[command.method]
        # A label count that does not match is a usage problem, not a domain error
        try:
            entries = leaderboard(command.vectors, command.labels, method)
        except ValueError as e:
            raise CommandError(str(e)) from e
        return RankResult(method, entries)

    def table(self, command: TableCommand = None) -> list:
        return catalog()

    def run_batch(self, commands: list) -> list:
        """Dispatch independent commands on the worker pool; outcomes keep input order"""
        if not self.running:
            raise RuntimeError("driver is not running")
        logging.info("[Driver] Running batch of %d commands", len(commands))

        # Submit everything first, then collect in input order
        futures = [self.batch_executor.submit(self.bus.publish, command.verb, command) for command in commands]
        outcomes = []
        for command, future in zip(commands, futures):
            # Domain errors become failed outcomes; anything else is a bug and propagates
            try:
                outcomes.append(BatchOutcome(command, result=future.result()))
            except GrossError as e:
                outcomes.append(BatchOutcome(command, error=e))

        failed = sum(not outcome.ok for outcome in outcomes)
        if failed:
            logging.warning("[Driver] %d of %d batch commands failed", failed, len(outcomes))
        return outcomes

    def stop_system(self):
        """Function to safely shutdown the driver"""
        if not self.running:
            return
        logging.info("[Driver] Shutting down...")
        self.running = False
        # Let running batch commands finish, drop the queued ones
        if self.batch_executor:
            self.batch_executor.shutdown(wait=True, cancel_futures=True)
        logging.info("[Driver] Shutdown complete.")
