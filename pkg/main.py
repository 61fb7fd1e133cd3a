#!/usr/bin/env python3

import argparse
import asyncio
import contextlib
import logging
import os
import sys
from datetime import datetime
from typing import List, Optional

from core.config import Settings
from documents import COMMANDS
from reporting import ReportVisualizer
from tasks import ComputationRunner, RunFlags

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact cohomology of matched pairs of finite groups",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", help="input document (groups, pairs, Lie algebras, tasks)")
    parser.add_argument("--modulus", "-m", type=int, help="coefficients ℤ/m")
    parser.add_argument("--max-degree", type=int, help="highest cohomological degree")
    parser.add_argument("--bound", type=int, nargs=2, metavar=("P", "Q"), help="double complex bounds")
    parser.add_argument("--convention", choices=("a", "b"), help="ψ argument order and shuffle sign")
    parser.add_argument("--force", action="store_true", help="override the size guards")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--target", help="name of the group, pair or configuration to use")
    parser.add_argument("--save", action="store_true", help="write text and JSON reports to MP_REPORTS_DIR")
    return parser


def save_report(report, settings: Settings) -> None:
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    os.makedirs(settings.reports_dir, exist_ok=True)

    report_filename = os.path.join(settings.reports_dir, f"{report.command}_{timestamp}.txt")
    with open(report_filename, 'w', encoding='utf-8') as f:
        f.write(ReportVisualizer.create_text_report(report))

    json_filename = os.path.join(settings.reports_dir, f"{report.command}_{timestamp}.json")
    with open(json_filename, 'w', encoding='utf-8') as f:
        f.write(ReportVisualizer.to_structured(report, include_timing=True))

    print(f"\n💾 Reports saved:", file=sys.stderr)
    print(f"   📄 Text report: {report_filename}", file=sys.stderr)
    print(f"   📊 Structured data: {json_filename}", file=sys.stderr)


async def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and print its report; returns the exit code"""
    args = build_parser().parse_args(argv)
    settings = Settings.from_env()
    logging.basicConfig(level=getattr(logging, settings.log_level, logging.INFO))

    flags = RunFlags(
        modulus=args.modulus,
        max_degree=args.max_degree,
        bound=tuple(args.bound) if args.bound else None,
        convention=args.convention,
        force=args.force,
        target=args.target,
    )
    runner = ComputationRunner(settings, flags)

    if args.format == "structured":
        # stdout carries only the structured document
        with contextlib.redirect_stdout(sys.stderr):
            report = await runner.run(args.command, args.input)
        print(ReportVisualizer.to_structured(report))
    else:
        report = await runner.run(args.command, args.input)
        print(ReportVisualizer.create_text_report(report))

    if args.save:
        save_report(report, settings)
    return report.exit_code


def main() -> None:
    sys.exit(asyncio.run(run()))


if __name__ == "__main__":
    main()
