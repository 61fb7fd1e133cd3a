import logging
import time
from dataclasses import asdict, dataclass
from datetime import datetime
from typing import Any, Awaitable, Callable, Dict, List, Optional, Tuple

try:
    from ..barcomplex import group_cohomology, stabilization_report
    from ..core.config import Settings
    from ..core.errors import MatchedPairError, ValidationError
    from ..core.models import ComputationStep, PresentationSummary, Report
    from ..core.size_guard import SizeGuard, set_default_guard
    from ..cosimplicial import SHUFFLE_CONVENTIONS, from_matched_pair, verify_ez
    from ..documents import COMMANDS, InputDocument, TaskDirective, load_document
    from ..fingroup import FiniteGroup, bismash
    from ..kac import PSI_CONVENTIONS, verify_kac_exactness_async
    from ..liecohomology import check_actions_compatible, method6, method6_examples
    from ..mpcomplex import bidegree_cohomology, iterated_cohomology, matched_pair_cohomology, pi_sequence_report
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from barcomplex import group_cohomology, stabilization_report
    from core.config import Settings
    from core.errors import MatchedPairError, ValidationError
    from core.models import ComputationStep, PresentationSummary, Report
    from core.size_guard import SizeGuard, set_default_guard
    from cosimplicial import SHUFFLE_CONVENTIONS, from_matched_pair, verify_ez
    from documents import COMMANDS, InputDocument, TaskDirective, load_document
    from fingroup import FiniteGroup, bismash
    from kac import PSI_CONVENTIONS, verify_kac_exactness_async
    from liecohomology import check_actions_compatible, method6, method6_examples
    from mpcomplex import bidegree_cohomology, iterated_cohomology, matched_pair_cohomology, pi_sequence_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_NOT_EXACT = 3


@dataclass
class RunFlags:
    """Command-line overrides; None means fall back to the task line, then to the settings"""
    modulus: Optional[int] = None
    max_degree: Optional[int] = None
    bound: Optional[Tuple[int, int]] = None
    convention: Optional[str] = None
    force: bool = False
    target: Optional[str] = None


class ComputationRunner:
    """Runs one command over one input document and records every stage as a timed step"""

    def __init__(self, settings: Settings, flags: Optional[RunFlags] = None):
        self.settings = settings
        self.flags = flags or RunFlags()
        self.guard = SizeGuard.from_settings(settings, force=self.flags.force)
        set_default_guard(self.guard)
        self.computation_steps: List[ComputationStep] = []
        self.start_time = None
        self._handlers: Dict[str, Callable[[InputDocument, Optional[TaskDirective]], Awaitable[Tuple[Dict, bool]]]] = {
            "validate": self._run_validate,
            "group-cohomology": self._run_group_cohomology,
            "mp-cohomology": self._run_mp_cohomology,
            "bidegree": self._run_bidegree,
            "kac-verify": self._run_kac_verify,
            "method6": self._run_method6,
            "ez-verify": self._run_ez_verify,
        }

    # --- bookkeeping ----------------------------------------------------------
    def _record(self, description: str, action_type: str, inputs: Dict[str, Any], outputs: Dict[str, Any],
                notes: str, step_start: float) -> None:
        step = ComputationStep(
            step_number=len(self.computation_steps) + 1,
            description=description,
            action_type=action_type,
            inputs=inputs,
            outputs=outputs,
            notes=notes,
            timestamp=datetime.now().isoformat(),
            duration_seconds=time.time() - step_start,
        )
        self.computation_steps.append(step)

    def _effective_flags(self, task: Optional[TaskDirective]) -> Dict[str, Any]:
        return {
            "modulus": self._modulus(task),
            "max_degree": self._max_degree(task),
            "bound": list(self._bound(task)) if self._bound(task) else None,
            "convention": self._convention(task),
            "force": self.flags.force,
            "target": self.flags.target or (task.options.get("target") if task else None),
        }

    # --- parameter resolution: flag, then task line, then settings ------------
    @staticmethod
    def _task_int(task: Optional[TaskDirective], key: str) -> Optional[int]:
        if task is None or key not in task.options:
            return None
        try:
            return int(task.options[key])
        except ValueError:
            raise ValidationError(f"task option {key}={task.options[key]!r} is not an integer",
                                  {"line": task.line, "option": key})

    def _modulus(self, task: Optional[TaskDirective]) -> int:
        m = self.flags.modulus or self._task_int(task, "modulus") or self.settings.default_modulus
        if m < 2:
            raise ValidationError(f"the modulus must be at least 2, got {m}", {"modulus": m})
        return m

    def _max_degree(self, task: Optional[TaskDirective]) -> int:
        n = self.flags.max_degree or self._task_int(task, "degree") or 2
        if n < 1:
            raise ValidationError(f"the degree must be at least 1, got {n}", {"degree": n})
        return n

    def _bound(self, task: Optional[TaskDirective]) -> Optional[Tuple[int, int]]:
        if self.flags.bound:
            return tuple(self.flags.bound)
        if task is not None and "bound" in task.options:
            parts = task.options["bound"].split(",")
            try:
                p, q = (int(part) for part in parts)
            except ValueError:
                raise ValidationError(f"bound must read p,q, got {task.options['bound']!r}", {"line": task.line})
            return p, q
        return None

    def _convention(self, task: Optional[TaskDirective]) -> str:
        convention = self.flags.convention or (task.options.get("convention") if task else None) or "a"
        if convention not in PSI_CONVENTIONS or convention not in SHUFFLE_CONVENTIONS:
            raise ValidationError(f"unknown convention '{convention}'", {"convention": convention})
        return convention

    def _target(self, table: Dict[str, Any], kind: str, task: Optional[TaskDirective]) -> str:
        name = self.flags.target or (task.options.get("target") if task else None)
        if name is not None:
            if name not in table:
                raise ValidationError(f"unknown {kind} '{name}'", {"target": name, "available": sorted(table)})
            return name
        if len(table) == 1:
            return next(iter(table))
        raise ValidationError(f"choose a {kind} with --target", {"available": sorted(table)})

    # --- orchestration ----------------------------------------------------------
    async def run(self, command: str, input_path: str) -> Report:
        self.start_time = time.time()
        self.computation_steps = []
        results: Dict[str, Any] = {}
        errors: List[Dict[str, Any]] = []
        flags: Dict[str, Any] = {}
        exit_code = EXIT_OK

        print(f"\n🧮 MATCHED PAIR COHOMOLOGY: {command}")
        print("=" * 80)
        print(f"Input: {input_path}")
        print("=" * 80)

        try:
            if command not in self._handlers:
                raise ValidationError(f"unknown command '{command}'", {"command": command, "valid": list(COMMANDS)})

            print("\n📄 Step 1: Parse and validate the input document")
            step_start = time.time()
            document = load_document(input_path)
            self._record("Parse the input document and validate every declared object", "parse",
                         {"path": input_path}, document.summary(),
                         "groups, pairs, Lie algebras and actions are validated as they are read", step_start)
            print(f"   ✅ {len(document.groups)} groups, {len(document.pairs)} pairs, "
                  f"{len(document.lie_algebras)} Lie algebras, {len(document.configurations)} configurations")

            task = document.task_for(command)
            flags = self._effective_flags(task)
            print(f"\n⚙️ Step 2: {command} (m = {flags['modulus']})")
            results, ok = await self._handlers[command](document, task)
            if not ok:
                exit_code = EXIT_NOT_EXACT
                print("   ❌ Verification failed")
        except MatchedPairError as exc:
            logger.error(f"{command} failed: {exc.message}")
            errors.append(exc.to_dict())
            exit_code = EXIT_ERROR

        total_duration = time.time() - self.start_time
        report = Report(
            command=command,
            input_path=input_path,
            flags=flags,
            results=results,
            steps_taken=self.computation_steps,
            errors=errors,
            exit_code=exit_code,
            timestamp=datetime.now().isoformat(),
            total_duration=total_duration,
        )
        status = "✅" if exit_code == EXIT_OK else "❌"
        print(f"\n{status} {command} finished with exit code {exit_code} ({total_duration:.2f}s)")
        print(f"📊 Steps: {len(self.computation_steps)}")
        return report

    # --- commands ---------------------------------------------------------------
    async def _run_validate(self, document: InputDocument, task: Optional[TaskDirective]) -> Tuple[Dict, bool]:
        step_start = time.time()
        pairs = {}
        for name, mp in sorted(document.pairs.items()):
            self.guard.check_group(mp.bismash_order, label=f"bismash product of {name}")
            bismash(mp)
            pairs[name] = {
                "T_order": mp.T.order,
                "N_order": mp.N.order,
                "bismash_order": mp.bismash_order,
                "left_action_trivial": mp.left_is_trivial,
                "right_action_trivial": mp.right_is_trivial,
            }
        for configuration in document.configurations.values():
            check_actions_compatible(configuration)
        results = {
            "groups": {name: {"order": G.order} for name, G in sorted(document.groups.items())},
            "pairs": pairs,
            "lie_algebras": {name: {"dimension": g.dimension} for name, g in sorted(document.lie_algebras.items())},
            "actions": {name: {"group_order": a.group.order} for name, a in sorted(document.actions.items())},
            "configurations": sorted(document.configurations),
            "valid": True,
        }
        self._record("Check the matched pair axioms, bismash associativity and action compatibility",
                     "validate", document.summary(), {"valid": True}, "every object validated", step_start)
        print(f"   ✅ All {sum(len(v) for v in document.summary().values())} declarations are valid")
        return results, True

    def _group_target(self, document: InputDocument, task: Optional[TaskDirective]) -> FiniteGroup:
        candidates: Dict[str, Any] = dict(document.groups)
        candidates.update(document.pairs)
        name = self._target(candidates, "group or pair", task)
        if name in document.groups:
            return document.groups[name]
        return bismash(document.pairs[name]).group

    async def _run_group_cohomology(self, document: InputDocument,
                                    task: Optional[TaskDirective]) -> Tuple[Dict, bool]:
        G = self._group_target(document, task)
        m, top = self._modulus(task), self._max_degree(task)
        self.guard.check_group(G.order, label=G.name or "group")
        cohomology, stabilization = {}, {}
        for n in range(1, top + 1):
            step_start = time.time()
            H = group_cohomology(G, m, n, guard=self.guard)
            cohomology[n] = asdict(PresentationSummary.of(f"H^{n}({G.name})", H))
            stable = stabilization_report(G, n, m, guard=self.guard)
            stabilization[n] = stable.is_isomorphism
            self._record(f"H^{n} from the normalized bar complex", "cohomology",
                         {"group": G.name, "degree": n, "modulus": m},
                         {"invariant_factors": list(H.invariant_factors), "stable_at_2m": stable.is_isomorphism},
                         "ℤ/m → ℤ/2m comparison decides stabilization", step_start)
            print(f"   🔢 H^{n}({G.name}, ℤ/{m}) = {H}")
        return {"group": G.name, "order": G.order, "modulus": m,
                "cohomology": cohomology, "stable_at_2m": stabilization}, True

    async def _run_mp_cohomology(self, document: InputDocument,
                                 task: Optional[TaskDirective]) -> Tuple[Dict, bool]:
        name = self._target(document.pairs, "pair", task)
        mp = document.pairs[name]
        m, top, bound = self._modulus(task), self._max_degree(task), self._bound(task)
        p_max, q_max = bound if bound else (None, None)
        cohomology = {}
        for i in range(1, top + 1):
            step_start = time.time()
            H = matched_pair_cohomology(mp, m, i, p_max, q_max, guard=self.guard)
            cohomology[i] = asdict(PresentationSummary.of(f"ℋ^{i}({name})", H))
            self._record(f"ℋ^{i} of the edge-deleted double complex", "cohomology",
                         {"pair": name, "degree": i, "modulus": m, "bound": bound},
                         {"invariant_factors": list(H.invariant_factors)}, "Tot uses only p, q ≥ 1", step_start)
            print(f"   🔢 ℋ^{i}({name}, ℤ/{m}) = {H}")
        results: Dict[str, Any] = {"pair": name, "modulus": m, "cohomology": cohomology}
        ok = True
        if mp.right_is_trivial and top >= 2:
            step_start = time.time()
            sequence = pi_sequence_report(mp, m, guard=self.guard)
            results["pi_sequence"] = sequence.to_dict()
            ok = sequence.is_exact and sequence.composite_is_zero
            self._record("H²(N) ⊕ ℋ²_2 → ℋ² → H^{1,2}", "exactness", {"pair": name, "modulus": m},
                         sequence.to_dict(), "image equals kernel at ℋ²", step_start)
            print(f"   {'✅' if ok else '❌'} π-sequence exact: {sequence.is_exact}")
        return results, ok

    async def _run_bidegree(self, document: InputDocument, task: Optional[TaskDirective]) -> Tuple[Dict, bool]:
        name = self._target(document.pairs, "pair", task)
        mp = document.pairs[name]
        m, top = self._modulus(task), self._max_degree(task)
        table, ok = {}, True
        for i in range(1, top + 1):
            for j in range(1, top + 2 - i):
                step_start = time.time()
                double = bidegree_cohomology(mp, m, i, j, guard=self.guard)
                iterated = iterated_cohomology(mp, m, i, j, guard=self.guard)
                agrees = double.invariant_factors == iterated.invariant_factors
                ok = ok and agrees
                table[f"{i},{j}"] = {
                    "bidegree": list(double.invariant_factors),
                    "iterated": list(iterated.invariant_factors),
                    "isomorphic": agrees,
                }
                self._record(f"H^{{{i},{j}}} against H^{i}(T, H^{j}(N))", "cohomology",
                             {"pair": name, "bidegree": [i, j], "modulus": m}, table[f"{i},{j}"],
                             "both sides computed independently", step_start)
                print(f"   {'✅' if agrees else '❌'} H^{{{i},{j}}} = {double}, H^{i}(T, H^{j}(N)) = {iterated}")
        return {"pair": name, "modulus": m, "bidegrees": table}, ok

    async def _run_kac_verify(self, document: InputDocument, task: Optional[TaskDirective]) -> Tuple[Dict, bool]:
        name = self._target(document.pairs, "pair", task)
        m, convention = self._modulus(task), self._convention(task)
        step_start = time.time()
        report = await verify_kac_exactness_async(document.pairs[name], m, convention, self.guard,
                                                  self.settings.h3_max_order)
        results = asdict(report)
        results["all_exact"] = report.all_exact
        self._record("Kac sequence: groups, maps and exactness at every interior position", "exactness",
                     {"pair": name, "modulus": m, "convention": convention},
                     {"all_exact": report.all_exact, "h3_computed": report.h3_computed},
                     "H³ presented only for small bismash products", step_start)
        return results, report.all_exact

    async def _run_method6(self, document: InputDocument, task: Optional[TaskDirective]) -> Tuple[Dict, bool]:
        configurations = dict(method6_examples()) if not document.configurations else {}
        configurations.update(document.configurations)
        name = self._target(configurations, "configuration", task)
        m = self._modulus(task)
        step_start = time.time()
        report = method6(configurations[name], m, guard=self.guard)
        results = asdict(report)
        results["invariant_dims"] = report.invariant_dims
        self._record("ℋ² from Lie algebra invariants and the group part", "lie",
                     {"configuration": name, "modulus": m},
                     {"invariant_dims": report.invariant_dims, "lie_quotient_dim": report.lie_quotient_dim},
                     "; ".join(report.conclusion), step_start)
        return results, True

    async def _run_ez_verify(self, document: InputDocument, task: Optional[TaskDirective]) -> Tuple[Dict, bool]:
        name = self._target(document.pairs, "pair", task)
        m, n_max, convention = self._modulus(task), self._max_degree(task), self._convention(task)
        bound = self._bound(task)
        top = min(bound) if bound else n_max + 1
        step_start = time.time()
        X = from_matched_pair(document.pairs[name], m, top, guard=self.guard)
        self._record("Build the cosimplicial bicomplex and check its identities", "cosimplicial",
                     {"pair": name, "modulus": m, "bound": top}, {"checked": True},
                     "all maps T^p × N^q → ℤ/m", step_start)
        step_start = time.time()
        report = verify_ez(X, n_max, convention)
        results = asdict(report)
        results["verified"] = report.verified
        self._record("Alexander–Whitney and shuffle maps, Dold–Kan splitting of the diagonal", "cosimplicial",
                     {"pair": name, "max_degree": n_max, "convention": convention},
                     {"verified": report.verified}, "induced maps compared on presentations", step_start)
        return results, report.verified
