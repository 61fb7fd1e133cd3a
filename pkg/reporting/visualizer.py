import json
import logging
from dataclasses import asdict
from typing import Any, Dict

try:
    from ..core.models import ComputationStep, Report
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from core.models import ComputationStep, Report

logger = logging.getLogger(__name__)

# Wall-clock fields, left out of structured output so that reruns are byte-identical
TIMING_FIELDS = ("timestamp", "total_duration", "duration_seconds")


def _factors(summary: Any) -> str:
    factors = summary.get("invariant_factors", []) if isinstance(summary, dict) else summary
    if not factors:
        return "0"
    return " ⊕ ".join(f"ℤ/{d}" for d in factors)


class ReportVisualizer:
    """Human-readable and structured renderings of a run report"""

    @staticmethod
    def to_dict(report: Report, include_timing: bool = False) -> Dict[str, Any]:
        data = asdict(report)
        if not include_timing:
            for key in TIMING_FIELDS:
                data.pop(key, None)
            for step in data["steps_taken"]:
                for key in TIMING_FIELDS:
                    step.pop(key, None)
        return data

    @staticmethod
    def to_structured(report: Report, include_timing: bool = False) -> str:
        data = ReportVisualizer.to_dict(report, include_timing)
        return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True, default=str)

    @staticmethod
    def from_structured(text: str) -> Report:
        """Inverse of ``to_structured``; timing fields absent from the document come back empty"""
        data = json.loads(text)
        steps = [
            ComputationStep(**{"timestamp": "", "duration_seconds": 0.0, **step})
            for step in data.pop("steps_taken", [])
        ]
        data.setdefault("timestamp", "")
        data.setdefault("total_duration", 0.0)
        return Report(steps_taken=steps, **data)

    @staticmethod
    def create_text_report(report: Report) -> str:
        """Banner-sectioned summary of the run"""
        lines = [
            "=" * 100,
            f"🧮 MATCHED PAIR COHOMOLOGY - {report.command.upper()} REPORT",
            "=" * 100,
            "",
            "📋 RUN OVERVIEW",
            "─" * 100,
            f"Input: {report.input_path}",
            f"Flags: {', '.join(f'{k}={v}' for k, v in sorted(report.flags.items()) if v is not None) or 'defaults'}",
            f"Exit code: {report.exit_code}",
            f"Total Duration: {report.total_duration:.2f} seconds",
            "",
        ]

        if report.errors:
            lines += ["=" * 100, "❌ ERRORS", "=" * 100]
            for error in report.errors:
                lines.append(f"• [{error.get('code')}] {error.get('message')}")
                if "witness" in error:
                    lines.append(f"  witness: {error['witness']}")
            lines.append("")

        if report.results:
            lines += ["=" * 100, "📊 RESULTS", "=" * 100]
            lines += ReportVisualizer._result_lines(report.results)
            lines.append("")

        lines += ["=" * 100, "🔬 COMPUTATION STEPS", "=" * 100]
        for step in report.steps_taken:
            lines.append(f"{step.step_number}. {step.description} [{step.action_type}] "
                         f"({step.duration_seconds:.2f}s)")
            if step.notes:
                lines.append(f"   ↳ {step.notes}")
        lines.append("=" * 100)
        return "\n".join(lines)

    @staticmethod
    def _result_lines(results: Dict[str, Any]) -> list:
        lines = []
        for key, value in results.items():
            if key in ("cohomology", "tot_cohomology", "diag_cohomology", "groups") and isinstance(value, dict) \
                    and all(isinstance(v, dict) and "invariant_factors" in v for v in value.values()):
                lines.append(f"{key}:")
                for label, summary in value.items():
                    lines.append(f"  • {summary.get('label', label)} = {_factors(summary)}")
            elif key == "verdicts":
                lines.append("exactness:")
                for verdict in value:
                    mark = "✅" if verdict["exact"] else "❌"
                    lines.append(f"  {mark} {verdict['position']}: im {_factors(verdict['image_invariant_factors'])}"
                                 f" / ker {_factors(verdict['kernel_invariant_factors'])}")
            elif key == "conclusion":
                lines.append("conclusion:")
                lines += [f"  • {line}" for line in value]
            elif key == "maps":
                lines.append(f"maps: {', '.join(sorted(value))}")
            elif isinstance(value, dict):
                lines.append(f"{key}:")
                lines += [f"  • {k}: {v}" for k, v in value.items()]
            else:
                lines.append(f"{key}: {value}")
        return lines
