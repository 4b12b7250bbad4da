# src/verification_controller.py

import time
from itertools import product

import methodtools
import numpy as np

from src import __version__
from src.arithmetic_ops.addition import addition_alternate, build_addition
from src.arithmetic_ops.doubling import build_doubling, doubling_power_closed_form
from src.arithmetic_ops.multiplication import build_multiplication_triple, build_multiplication_unitary
from src.arithmetic_ops.oracles import evaluate, verify_addition, verify_against_oracle, verify_multiplication, verify_unitary_on_family
from src.axiom_checker.axioms import check_axioms
from src.hilbert_core.operators import DimensionLimitError
from src.reporting.report_builder import CheckResult, Report
from src.representations.encoding import build_entangled_encoding, build_product_encoding, compare_constructions, decode_columns, decode_number
from src.representations.entanglement import ALL_ENTANGLED, ALL_PRODUCT, certify_entanglement
from src.resource_profiler.costs import profile, rate_estimate, time_estimate, verify_against_builders
from src.resource_profiler.fitting import INCONCLUSIVE, MIN_POINTS, fit_scaling
from src.successor_model.model import BitFunction
from src.successor_model.properties import check_all_properties
from src.utils.config import Config
from src.utils.logger import get_logger
from src.utils.parallel import ParallelCheckRunner

ENCODINGS = ("product", "entangled")
ARITHMETIC_OPS = ("add", "double", "mul", "mul-unitary")
SCHEMES = ("multisuccessor", "unary", "squarewell")
PROFILE_OPS = ("S", "add", "mul")
BUILDER_CHECK_MAX_N = 6

# Largest n each command accepts, by config limit name
COMMAND_LIMITS = {
    "build": "single_register_n",
    "verify-properties": "single_register_n",
    "certify-entanglement": "single_register_n",
    "verify-axioms": "triple_n",
    "verify-arithmetic": "single_register_n",
    "report": "triple_n",
}
OP_LIMITS = {"add": "pair_n", "double": "single_register_n", "mul": "triple_n", "mul-unitary": "quadruple_n"}
EXPECTED_VERDICT = {"product": ALL_PRODUCT, "entangled": ALL_ENTANGLED}


def check_name(n, name):
    return f"n{n:02d}/{name}"


def _oracle_check(n, result):
    return CheckResult(
        name=check_name(n, result.name),
        tag=result.name,
        passed=result.passed,
        witnesses=result.failures,
        detail={"cases": result.cases, "failure_count": result.failure_count},
    )


class VerificationController:
    """
    Runs the verification suites behind the command-line front end.

    Encodings and arithmetic operators are built once per (encoding, n) and
    shared by every check of a run. Independent check groups execute on a
    thread pool; the report orders them by name.

    Args:
        config: Config with tolerances, limits and parallelism settings
    """

    def __init__(self, config=None):
        self.logger = get_logger(__name__)
        self.config = config or Config()
        self.max_dim = self.config.limit("max_dim")
        self.dense_cap = self.config.limit("dense_cap")
        self.max_workers = self.config.max_workers
        self.oracle_options = {"fidelity": self.config.tolerance("decode_fidelity"), "tol": self.config.tolerance("amplitude")}
        self.classify_tol = self.config.tolerance("classify")

    def require_n(self, n, limit_name):
        limit = self.config.limit(limit_name)
        if not 1 <= n <= limit:
            err_msg = f"n={n} is outside 1..{limit} (limit {limit_name})"
            self.logger.error(err_msg)
            raise DimensionLimitError(err_msg)

    @methodtools.lru_cache(maxsize=32)
    def encoding(self, kind, n):
        max_n = self.config.limit("single_register_n")
        if kind == "product":
            return build_product_encoding(n, max_n=max_n, classify_tol=self.classify_tol)
        if kind == "entangled":
            return build_entangled_encoding(n, max_n=max_n, cap=self.dense_cap, classify_tol=self.classify_tol)
        err_msg = f"Unknown encoding {kind!r}; expected one of {ENCODINGS}"
        self.logger.error(err_msg)
        raise ValueError(err_msg)

    @methodtools.lru_cache(maxsize=64)
    def arithmetic(self, kind, n, name):
        model = self.encoding(kind, n).model
        if name == "addition":
            return build_addition(model, max_dim=self.max_dim)
        if name == "doubling":
            return build_doubling(model, cap=self.dense_cap, tol=self.classify_tol)
        if name == "multiplication-triple":
            return build_multiplication_triple(model, max_dim=self.max_dim)
        if name == "multiplication-quadruple":
            return build_multiplication_unitary(model, max_dim=self.max_dim)
        raise ValueError(f"Unknown arithmetic operator {name!r}")

    def build_checks(self, kind, n):
        encoding = self.encoding(kind, n)
        model = encoding.model
        numbers = {str(k): [[i, state.amps[i].real, state.amps[i].imag] for i in state.support()] for k, state in enumerate(encoding.states)}
        build = CheckResult(
            name=check_name(n, "build"),
            tag="model-build",
            passed=True,
            detail={"kind": kind, "dim": model.dim, "ordering": list(model.ordering), "zero_support": model.zero.support(), "numbers": numbers},
        )
        table = encoding.table()
        expected = np.arange(encoding.dim)
        failures = []
        for method in ("table", "adjoint"):
            decoded = decode_columns(encoding, table, method, self.oracle_options["fidelity"])
            failures.extend([method, int(k)] for k in np.flatnonzero(decoded != expected))
        roundtrip = CheckResult(check_name(n, "encoding-roundtrip"), "encode-decode", not failures, failures, {"numbers": encoding.dim})
        return [build, roundtrip]

    def property_checks(self, kind, n):
        model = self.encoding(kind, n).model
        report = check_all_properties(model, self.config.tolerance("operator"), self.dense_cap)
        checks = []
        for result in report.results:
            entry = result.to_dict()
            checks.append(
                CheckResult(
                    name=check_name(n, f"property-{result.number:02d}"),
                    tag=f"property-{result.number}",
                    passed=result.passed,
                    witnesses=entry["witness"],
                    detail={"title": entry["title"], **entry["detail"]},
                )
            )
        return checks

    def axiom_checks(self, kind, n, policy):
        """
        One check per axiom. An axiom whose only failures are expected wrap-around
        failures (strict policy) does not fail the run; `holds` records its verdict.
        """
        encoding = self.encoding(kind, n)
        report = check_axioms(encoding.model, encoding, self.arithmetic(kind, n, "addition"), self.arithmetic(kind, n, "multiplication-triple"), policy, **self.oracle_options)
        return [
            CheckResult(
                name=check_name(n, f"axiom-{result.number}"),
                tag=f"axiom-{result.number}",
                passed=result.passed or result.expected_failure,
                witnesses=result.counterexamples,
                detail={
                    "statement": result.statement,
                    "holds": result.passed,
                    "exclusions": result.exclusions,
                    "expected_failure": result.expected_failure,
                    "policy": report.policy,
                },
            )
            for result in report.results
        ]

    def _addition_checks(self, kind, n):
        encoding = self.encoding(kind, n)
        model = encoding.model
        addition = self.arithmetic(kind, n, "addition")
        checks = [_oracle_check(n, verify_addition(model, addition, **self.oracle_options))]

        modulus = model.dim
        pairs = list(product(range(modulus), repeat=2))
        by_operator, _ = evaluate(model, addition, pairs)
        failures = []
        for (x, y), got in zip(pairs, by_operator[:, 1]):
            value = decode_number(encoding, addition_alternate(model, encoding.states[x], encoding.states[y], self.classify_tol))
            if value != got or value != (x + y) % modulus:
                failures.append([x, y])
        checks.append(CheckResult(check_name(n, "addition-alternate"), "addition-alternate", not failures, failures[:16], {"cases": len(pairs)}))

        if n <= self.config.limit("dense_compare_n"):
            deviation = compare_constructions(encoding, build_addition, self.dense_cap)
            agreed = deviation <= self.config.tolerance("operator")
            checks.append(CheckResult(check_name(n, "addition-conjugation"), "conjugated-addition", agreed, [] if agreed else [deviation]))
        return checks

    def _doubling_checks(self, kind, n):
        encoding = self.encoding(kind, n)
        model = encoding.model
        doubling = self.arithmetic(kind, n, "doubling")
        modulus = model.dim
        singles = [(x,) for x in range(modulus)]
        checks = [_oracle_check(n, verify_against_oracle("doubling-oracle", model, doubling, singles, lambda c: ((2 * c[0]) % modulus,), **self.oracle_options))]

        added, _ = evaluate(model, self.arithmetic(kind, n, "addition"), [(x, x) for x in range(modulus)])
        doubled, _ = evaluate(model, doubling, singles)
        failures = [[x] for x in range(modulus) if added[x, 1] != doubled[x, 0]]
        checks.append(CheckResult(check_name(n, "doubling-diagonal"), "doubling-diagonal", not failures, failures[:16], {"cases": modulus}))

        # Iterate W up to h = n + 1 against the closed product formula
        ordering = model.ordering
        current = np.arange(modulus).reshape(-1, 1)
        failures, printed_h, printed_h1, zero_from = [], True, True, None
        for h in range(n + 2):
            if h > 0:
                current, _ = evaluate(model, doubling, current)
            for beta in range(modulus):
                closed = doubling_power_closed_form(model, h, BitFunction.from_int(beta, ordering))
                if closed.bits.to_int(ordering) != int(current[beta, 0]):
                    failures.append([h, beta])
                printed_h &= closed.matches_at_h
                printed_h1 &= closed.matches_at_h_plus_1
            if zero_from is None and not current.any():
                zero_from = h
        detail = {"max_h": n + 1, "zero_from_h": zero_from, "printed_form_matches_at_h": printed_h, "printed_form_matches_at_h_plus_1": printed_h1}
        passed = not failures and zero_from is not None and zero_from <= n
        checks.append(CheckResult(check_name(n, "doubling-closed-form"), "doubling-closed-form", passed, failures[:16], detail))
        return checks

    def _multiplication_checks(self, kind, n):
        model = self.encoding(kind, n).model
        triple = self.arithmetic(kind, n, "multiplication-triple")
        return [
            _oracle_check(n, verify_multiplication(model, triple, **self.oracle_options)),
            _oracle_check(n, verify_multiplication(model, triple, accumulate=True, **self.oracle_options)),
        ]

    def _unitary_multiplication_checks(self, kind, n):
        model = self.encoding(kind, n).model
        quadruple = self.arithmetic(kind, n, "multiplication-quadruple")
        return [
            _oracle_check(n, verify_multiplication(model, quadruple, **self.oracle_options)),
            _oracle_check(n, verify_unitary_on_family(model, quadruple, tol=self.oracle_options["tol"])),
        ]

    def arithmetic_checks(self, kind, n, op):
        groups = {
            "add": self._addition_checks,
            "double": self._doubling_checks,
            "mul": self._multiplication_checks,
            "mul-unitary": self._unitary_multiplication_checks,
        }
        return groups[op](kind, n)

    def entanglement_checks(self, kind, n):
        encoding = self.encoding(kind, n)
        certificate = certify_entanglement(encoding, self.config.tolerance("schmidt"))
        expected = EXPECTED_VERDICT[kind]
        if expected == ALL_PRODUCT:
            witnesses = [k for k, row in enumerate(certificate.ranks) if any(rank > 1 for rank in row)]
        else:
            witnesses = [k for k, row in enumerate(certificate.ranks) if not row or min(row) < 2]
        return [
            CheckResult(
                name=check_name(n, "entanglement"),
                tag="entanglement-certificate",
                passed=certificate.verdict == expected,
                witnesses=witnesses[:16],
                detail=certificate.to_dict(),
            )
        ]

    def profile_checks(self, scheme, op, n_values, granularity):
        """
        Counts and scaling fit for one (scheme, op) pair.

        Returns:
            tuple: (checks, traces); the fit is skipped below five distinct n
        """
        traces = profile(scheme, op, n_values, granularity)
        detail = {"scheme": scheme, "op": op, "granularity": granularity, "n": list(n_values), "counts": [trace.count for trace in traces]}
        if any(trace.best_count is not None for trace in traces):
            detail["best_counts"] = [trace.best_count for trace in traces]
        if any(trace.average_count is not None for trace in traces):
            detail["average_counts"] = [trace.average_count for trace in traces]

        passed = True
        if len(set(n_values)) >= MIN_POINTS:
            fit = fit_scaling(traces, self.config.tolerance("fit_r2"))
            detail["fit"] = fit.to_dict(scheme, op)
            passed = fit.verdict != INCONCLUSIVE
            if fit.cost_model is not None:
                largest = max(n_values)
                detail["time_estimate"] = time_estimate(fit.cost_model, largest)
                detail["rate_estimate"] = rate_estimate(fit.cost_model, largest)
        else:
            detail["fit"] = None
        return [CheckResult(f"profile/{scheme}-{op}", "scaling-fit", passed, detail=detail)], traces

    def builder_count_checks(self, n_values):
        n_max = min(max(n_values), BUILDER_CHECK_MAX_N)
        mismatches = verify_against_builders(n_max)
        witnesses = [[m["op"], m["n"], m["granularity"], m["expected"], m["reported"]] for m in mismatches]
        return [CheckResult("profile/builder-counts", "builder-counts", not mismatches, witnesses, {"n_max": n_max})]

    def select_ops(self, n, ops=None):
        """Arithmetic groups to run at n: explicit `ops` must fit their caps, None selects every group that fits."""
        if ops is None:
            return [op for op in ARITHMETIC_OPS if n <= self.config.limit(OP_LIMITS[op])]
        for op in ops:
            self.require_n(n, OP_LIMITS[op])
        return list(ops)

    def _groups(self, command, n, kind, policy, ops):
        if command == "build":
            return {"build": lambda: self.build_checks(kind, n)}
        if command == "verify-properties":
            return {"properties": lambda: self.property_checks(kind, n)}
        if command == "verify-axioms":
            return {"axioms": lambda: self.axiom_checks(kind, n, policy)}
        if command == "certify-entanglement":
            return {"entanglement": lambda: self.entanglement_checks(kind, n)}
        groups = {}
        if command == "report":
            groups["properties"] = lambda: self.property_checks(kind, n)
            groups["axioms"] = lambda: self.axiom_checks(kind, n, policy)
        for op in self.select_ops(n, ops):
            groups[f"arithmetic-{op}"] = lambda op=op: self.arithmetic_checks(kind, n, op)
        return groups

    def _run_groups(self, report, tasks):
        def timed(task):
            def run():
                start = time.perf_counter()
                checks = task()
                return checks, time.perf_counter() - start

            return run

        with ParallelCheckRunner(self.max_workers) as runner:
            results = runner.run_all({name: timed(task) for name, task in tasks.items()})
        for name, (checks, seconds) in results.items():
            report.add_checks(checks)
            report.record_timing(name, seconds)

    def run(self, command, n_values, encoding="product", policy="exclude-wrap", ops=None, config_echo=None):
        """
        Run one verification command over every n in `n_values`.

        Raises:
            DimensionLimitError: an n exceeds the command's cap
            ValueError: unknown command or encoding, or an entangled encoding with n < 2
        """
        if command not in COMMAND_LIMITS:
            raise ValueError(f"Unknown verification command {command!r}")
        for n in n_values:
            self.require_n(n, COMMAND_LIMITS[command])
            if command in ("verify-arithmetic", "report"):
                self.select_ops(n, ops if command == "verify-arithmetic" else None)
        for n in n_values:
            self.encoding(encoding, n)

        tasks = {}
        for n in n_values:
            for group, task in self._groups(command, n, encoding, policy, ops if command == "verify-arithmetic" else None).items():
                tasks[check_name(n, group)] = task
        report = Report(__version__, config_echo)
        self._run_groups(report, tasks)
        self.logger.info(f"{command} finished: {len(report.checks)} checks, failed {report.failed()}")
        return report

    def run_profile(self, schemes, ops, n_values, granularity="fine", config_echo=None):
        """
        Returns:
            tuple: (Report, traces in scheme/op/n order)

        Raises:
            DimensionLimitError: an n exceeds limits.profile_n
        """
        for n in n_values:
            self.require_n(n, "profile_n")
        collected = {}

        def task(scheme, op):
            checks, traces = self.profile_checks(scheme, op, n_values, granularity)
            collected[(scheme, op)] = traces
            return checks

        tasks = {f"profile/{scheme}-{op}": (lambda s=scheme, o=op: task(s, o)) for scheme in schemes for op in ops}
        if "multisuccessor" in schemes:
            tasks["profile/builder-counts"] = lambda: self.builder_count_checks(n_values)
        report = Report(__version__, config_echo)
        self._run_groups(report, tasks)
        traces = [trace for scheme in schemes for op in ops for trace in collected[(scheme, op)]]
        return report, traces
