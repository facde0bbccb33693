from __future__ import annotations

import asyncio
import logging
import signal
import time
from contextlib import AsyncExitStack, contextmanager
from dataclasses import dataclass, field
from typing import Generator

# importing for side effect of check registration
import sawgyro.checks  # noqa: F401
from sawgyro.check import CHECKS, Check, CheckOutcome, Context, Level
from sawgyro.config import Config

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    description: str
    anchor: str
    passed: bool
    detail: str
    seconds: float


@dataclass(frozen=True, slots=True)
class VerifyReport:
    level: Level
    results: list[CheckResult]
    interrupted: bool = False

    @property
    def passed(self) -> bool:
        return not self.interrupted and all(result.passed for result in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [result for result in self.results if not result.passed]


@dataclass(frozen=True, slots=True)
class Runtime:
    config: Config
    checks: dict[str, type[Check]] = field(default_factory=lambda: CHECKS)

    async def run(self, *, level: Level) -> VerifyReport:
        """Run every check of `level` concurrently and collect their outcomes."""
        context = Context(level=level, config=self.config)
        selected = {
            name: cls for name, cls in self.checks.items() if level in cls.levels
        }
        results: list[CheckResult] = []

        async with AsyncExitStack() as stack:
            stop_event = stack.enter_context(_catch_stop_signal())
            tg = await stack.enter_async_context(asyncio.TaskGroup())

            stop_signal = tg.create_task(stop_event.wait())
            checks = tg.create_task(self._run_checks(selected, context, results))

            done, _pending = await asyncio.wait(
                (stop_signal, checks), return_when=asyncio.FIRST_COMPLETED
            )

            if stop_signal not in done:
                stop_signal.cancel()

            if checks not in done:
                logger.info("Caught stop signal - cancelling pending checks")
                checks.cancel()

        return VerifyReport(
            level=level,
            results=sorted(results, key=lambda result: result.name),
            interrupted=checks.cancelled(),
        )

    async def _run_checks(
        self,
        selected: dict[str, type[Check]],
        context: Context,
        results: list[CheckResult],
    ):
        async with asyncio.TaskGroup() as tg:
            for name, cls in selected.items():
                tg.create_task(self._run_check(name, cls, context, results))
        logger.debug(f"All {len(selected)} checks completed")

    async def _run_check(
        self,
        name: str,
        cls: type[Check],
        context: Context,
        results: list[CheckResult],
    ):
        logger.debug(f"Starting check '{name}'")
        start = time.perf_counter()
        try:
            outcome = await asyncio.to_thread(cls().run, context=context)
        except Exception as exc:
            logger.debug(f"Check '{name}' raised", exc_info=True)
            detail = f"raised {type(exc).__name__}: {exc}"
            outcome = CheckOutcome(passed=False, detail=detail)
        seconds = time.perf_counter() - start

        results.append(
            CheckResult(
                name=name,
                description=cls.description,
                anchor=cls.anchor,
                passed=outcome.passed,
                detail=outcome.detail,
                seconds=seconds,
            )
        )
        status = "passed" if outcome.passed else "FAILED"
        logger.info(f"Check '{name}' {status} in {seconds:.2f}s")


@contextmanager
def _catch_stop_signal() -> Generator[asyncio.Event, None, None]:
    stop_signals = (signal.SIGINT, signal.SIGTERM)
    stop_signal = asyncio.Event()
    loop = asyncio.get_running_loop()

    def set_stop_signal():
        logger.debug("Caught stop signal - setting event to notify runtime")
        stop_signal.set()

    for sig in stop_signals:
        loop.add_signal_handler(sig, set_stop_signal)
    logger.debug("Installed signal handlers")

    yield stop_signal

    for sig in stop_signals:
        loop.remove_signal_handler(sig)
    logger.debug("Uninstalled signal handlers")
