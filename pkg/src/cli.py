"""
RSNC 명령행 인터페이스
  gen    - 설정 JSON 으로 시나리오 생성
  run    - 시나리오 하나에 스케줄러 실행
  sweep  - 실험 sweep 실행 후 CSV 저장
  trace  - 전송 계획기의 라운드별 결정 출력
exit code: 0 정상, 2 잘못된 입력, 3 oracle 한도 초과
"""

import argparse
import sys
from typing import Any, Callable, Dict, List, Optional, TextIO

from src.coding.graph import build_graph
from src.core.errors import (
    DocumentFormatError,
    InvalidConfigError,
    InvalidScenarioError,
    OracleLimitExceeded,
)
from src.core.quantities import validate_scenario
from src.core.serialization import load_scenario, read_json, save_log, save_scenario
from src.harness.experiments import ALGORITHMS, SCHEDULERS, resolve_experiment, run_experiment
from src.harness.generator import GenConfig, generate_scenario
from src.harness.metrics import deadline_miss_ratio
from src.harness.tracker import SweepTracker
from src.scheduling.oracle import optimal_schedule
from src.scheduling.rsnc import PropagationDecision, run_rsnc
from src.utils.logger import cli_logger

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_ORACLE_LIMIT = 3


def _load_valid_scenario(path: str):
    scenario = load_scenario(path)
    report = validate_scenario(scenario)
    if not report.is_valid:
        raise InvalidScenarioError(report)
    return scenario


def cmd_gen(args: argparse.Namespace) -> int:
    config = GenConfig.from_dict(read_json(args.config))
    if args.seed is not None:
        config = config.with_overrides(seed=args.seed)
    scenario = generate_scenario(config)
    save_scenario(scenario, args.output)
    print(f"wrote scenario with {scenario.n_destinations} destinations, "
          f"{scenario.total_requests} requests to {args.output}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _load_valid_scenario(args.scenario)
    if args.algo == "oracle":
        log = optimal_schedule(scenario).best_log
    else:
        log = SCHEDULERS[args.algo](scenario)

    if args.output:
        save_log(log, args.output)
    for transmission in log.transmissions:
        print(transmission.describe())
    print(f"{args.algo}: {len(log.transmissions)} transmissions, "
          f"{log.misses}/{log.total_requests} missed (miss ratio {deadline_miss_ratio(log, scenario):.4f})")
    return EXIT_OK


def progress_reporter(tracker: SweepTracker,
                      stream: Optional[TextIO] = None) -> Callable[[str, Dict[str, Any]], None]:
    """완료 run 이 전체의 10% 를 넘을 때마다 한 줄씩 진행률 출력"""
    def report(event: str, info: Dict[str, Any]) -> None:
        if event == "run_start":
            return
        done, total = len(tracker.finished_runs), tracker.expected_runs or 0
        step = max(1, total // 10)
        if done % step == 0 or done == total or event == "run_failed":
            print(f"[{done}/{total}] {info['grid_point']} {info['algorithm']} "
                  f"sample {info['sample_index']} {info['status']}", file=stream or sys.stderr)

    return report


def cmd_sweep(args: argparse.Namespace) -> int:
    experiment = resolve_experiment(args.experiment, samples=args.samples, seed=args.seed)
    tracker = SweepTracker()
    tracker.set_progress_callback(progress_reporter(tracker))
    table = run_experiment(experiment, workers=args.workers, timing=args.timing, tracker=tracker)
    table.to_csv(args.output)

    stats = tracker.get_statistics()
    print(f"{experiment.name}: {len(table.rows)} rows, {stats.get('completed_runs', 0)} runs, "
          f"{table.total_skipped} skipped -> {args.output}")
    for (grid_point, algorithm), count in sorted(table.skipped.items()):
        print(f"  skipped {count} {algorithm} samples at {grid_point}")
    return EXIT_OK


def format_decision(round_index: int, decision: PropagationDecision) -> List[str]:
    """trace 출력용 라운드 요약"""
    lines = [f"round {round_index}"]
    for candidate in decision.candidates:
        members = ",".join(v.key for v in candidate.clique.vertices) or "-"
        marker = "" if candidate.eligible else " (empty)"
        lines.append(
            f"  k={candidate.k} Tr={candidate.threshold:g} clique={{{members}}} "
            f"rate={candidate.rate:g} U={candidate.u_value:g} loss={candidate.loss:g}{marker}"
        )
    lines.append(
        f"  -> send {decision.transmission.describe()} "
        f"(k={decision.chosen_rate_index}, U={decision.u_value:g}, "
        f"doomed={[r.key for r in sorted(decision.l)]})"
    )
    return lines


def cmd_trace(args: argparse.Namespace) -> int:
    scenario = _load_valid_scenario(args.scenario)
    print(f"coding graph: {len(build_graph(scenario))} vertices, {scenario.total_requests} requests")
    log = run_rsnc(scenario, on_decision=lambda i, d: print("\n".join(format_decision(i, d))))
    print(f"total: {len(log.transmissions)} transmissions, {log.misses}/{log.total_requests} missed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsnc", description="Rate-aware deadline network coding scheduler")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random scenario")
    gen.add_argument("--config", required=True, help="generator config JSON")
    gen.add_argument("--seed", type=int, default=None, help="64-bit seed (overrides config)")
    gen.add_argument("-o", "--output", required=True, help="scenario JSON output path")
    gen.set_defaults(handler=cmd_gen)

    run = sub.add_parser("run", help="schedule one scenario")
    run.add_argument("--algo", choices=list(ALGORITHMS), default="rsnc")
    run.add_argument("--scenario", required=True, help="scenario JSON path")
    run.add_argument("-o", "--output", default=None, help="transmission log JSON output path")
    run.set_defaults(handler=cmd_run)

    sweep = sub.add_parser("sweep", help="run an experiment sweep")
    sweep.add_argument("--experiment", required=True, help="preset name or experiment JSON path")
    sweep.add_argument("--samples", type=int, default=None, help="samples per grid point")
    sweep.add_argument("--seed", type=int, default=None, help="master seed")
    sweep.add_argument("-o", "--output", required=True, help="results CSV path")
    sweep.add_argument("--workers", type=int, default=None, help="worker processes")
    sweep.add_argument("--timing", action="store_true", default=None, help="measure mean_runtime_us")
    sweep.set_defaults(handler=cmd_sweep)

    trace = sub.add_parser("trace", help="print the planner's decisions round by round")
    trace.add_argument("--scenario", required=True, help="scenario JSON path")
    trace.set_defaults(handler=cmd_trace)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except OracleLimitExceeded as e:
        cli_logger.log_error(e, args.command)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ORACLE_LIMIT
    except (InvalidScenarioError, InvalidConfigError, DocumentFormatError, OSError) as e:
        cli_logger.log_error(e, args.command)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
