"""
检查运行器

同一场景的检查共享一个 CheckContext，各检查放进线程池并发执行；
单个检查的异常或超时只影响该条目。
"""

import asyncio
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

from ..config import ConfigManager
from .checks import CATALOG, DEFAULT_CHECKS, CheckContext, CheckOutcome, resolve_check_name, run_check
from .report import CheckEntry, CheckReport
from .scenario import Scenario

logger = logging.getLogger('PWLab.runner')


class CheckRunner:
    """按配置的并发度运行一个或多个场景"""

    def __init__(self, config: ConfigManager, degree_override: Optional[int] = None):
        self.config = config
        self.jobs = max(1, config.runner.jobs)
        self.timeout = config.runner.check_timeout
        self.degree_bound = config.solver.degree_bound
        # 命令行给出的次数上限优先于场景 options
        self.degree_override = degree_override

    def _plan(self, scenario: Scenario, only: Optional[Sequence[str]]) -> List[str]:
        if only:
            return [resolve_check_name(name) for name in only]
        return list(scenario.checks or DEFAULT_CHECKS)

    async def _run_one(self, executor: ThreadPoolExecutor, semaphore: asyncio.Semaphore,
                       ctx: CheckContext, name: str) -> CheckEntry:
        spec = CATALOG[name]
        async with semaphore:
            start_time = time.time()
            loop = asyncio.get_running_loop()
            try:
                outcome: CheckOutcome = await asyncio.wait_for(
                    loop.run_in_executor(executor, run_check, name, ctx),
                    timeout=self.timeout,
                )
                status = "pass" if outcome.passed else "fail"
                residual, detail = outcome.residual, outcome.detail
            except asyncio.TimeoutError:
                status, residual, detail = "error", "", f"超时 ({self.timeout:.0f}s)"
            elapsed = (time.time() - start_time) * 1000

        icon = "✅" if status == "pass" else "❌"
        logger.info(f"{icon} {ctx.scenario.name} :: {name} ({elapsed:.0f}ms)")
        return CheckEntry(
            scenario=ctx.scenario.name, name=name, anchor=spec.anchor, status=status,
            residual=residual, detail=detail, elapsed_ms=elapsed,
        )

    async def run(self, scenarios: Sequence[Scenario], only: Optional[Sequence[str]] = None) -> CheckReport:
        """所有场景的所有检查一起排队，结果按 (场景, 检查名) 归一排序"""
        total_start_time = time.time()
        semaphore = asyncio.Semaphore(self.jobs)
        plans = []
        for scenario in scenarios:
            degree = self.degree_override or scenario.options.degree_bound or self.degree_bound
            ctx = CheckContext(scenario, degree_bound=degree)
            plans.extend((ctx, name) for name in self._plan(scenario, only))

        with ThreadPoolExecutor(max_workers=self.jobs) as executor:
            results = await asyncio.gather(
                *(self._run_one(executor, semaphore, ctx, name) for ctx, name in plans),
                return_exceptions=True,
            )

        entries = []
        for (ctx, name), result in zip(plans, results):
            if isinstance(result, Exception):
                logger.debug(f"{ctx.scenario.name} :: {name} 出错: {result!r}")
                entries.append(CheckEntry(
                    scenario=ctx.scenario.name, name=name, anchor=CATALOG[name].anchor, status="error",
                    residual="", detail=f"{type(result).__name__}: {result}", elapsed_ms=0.0,
                ))
            else:
                entries.append(result)

        total_elapsed = (time.time() - total_start_time) * 1000
        return CheckReport(entries, elapsed_ms=total_elapsed)


def run_checks(scenario: Scenario, config: Optional[ConfigManager] = None,
               only: Optional[Sequence[str]] = None) -> CheckReport:
    """同步入口：运行单个场景"""
    runner = CheckRunner(config or ConfigManager.defaults())
    return asyncio.run(runner.run([scenario], only))
