#!/usr/bin/env python3
# scripts/validate.py

import argparse
import os
import sys

# Add the project root directory to the Python path
script_dir = os.path.dirname(os.path.abspath(__file__))
project_root = os.path.dirname(script_dir)
sys.path.insert(0, project_root)

try:
    from src.reporting import ConfigValidator
    from src.resource_profiler import count_resources, fit_scaling, squarewell_width
    from src.successor_model import build_product_model, check_all_properties
    from src.utils.config import Config, load_config
    from src.verification_controller import VerificationController
except ImportError as e:
    print(f"Error importing required modules: {e}")
    print("Make sure you're running this script from the project root directory")
    sys.exit(1)


def validate_properties(n_max=8):
    """Product models n = 1 … n_max pass all twelve properties."""
    failed = {}
    for n in range(1, n_max + 1):
        report = check_all_properties(build_product_model(n))
        if not report.passed:
            failed[n] = report.failed()
    if failed:
        return False, f"Property suite failed: {failed}"
    return True, f"Property suite passed for n = 1..{n_max}"


def validate_independence(controller, n_values=(2, 3, 4)):
    """
    The full report of the entangled encoding equals the product encoding's,
    while only the entangled numbers carry Schmidt rank 2.
    """
    messages = []
    for n in n_values:
        product = controller.run("report", [n], encoding="product").to_dict()["checks"]
        entangled = controller.run("report", [n], encoding="entangled").to_dict()["checks"]
        if product != entangled:
            differing = [p["name"] for p, e in zip(product, entangled) if p != e]
            messages.append(f"n={n}: reports differ at {differing[:5]}")
        elif not all(check["pass"] for check in product):
            messages.append(f"n={n}: report has failing checks")
        ranks = {kind: controller.run("certify-entanglement", [n], encoding=kind).checks[0] for kind in ("product", "entangled")}
        if not all(check.passed for check in ranks.values()):
            messages.append(f"n={n}: entanglement certificates are not all-product / all-entangled")
    if messages:
        return False, "Independence demonstration failed:\n  " + "\n  ".join(messages)
    return True, f"Independence demonstration passed for n = {list(n_values)}"


def validate_scaling(fit_r2=0.99):
    expectations = [
        ("multisuccessor", "add", range(2, 13), "polynomial", 1.0, 0.1),
        ("multisuccessor", "mul", range(2, 13), "polynomial", 2.0, 0.15),
        ("unary", "add", range(1, 13), "exponential", 2.0, 0.05),
        ("squarewell", "add", range(1, 13), "exponential", 4.0, 0.05),
    ]
    failures = []
    for scheme, op, n_values, verdict, parameter, margin in expectations:
        fit = fit_scaling([count_resources(scheme, op, n) for n in n_values], fit_r2)
        if fit.verdict != verdict or abs(fit.parameter - parameter) > margin:
            failures.append(f"{scheme} {op}: {fit.verdict} {fit.parameter}")
    width = squarewell_width(100, 1.0)
    if not 1e-31 <= width <= 1e-29:
        failures.append(f"well 100 has width {width:.3e} cm")
    if failures:
        return False, "Scaling validation failed: " + "; ".join(failures)
    return True, "Scaling validation passed"


def main():
    parser = argparse.ArgumentParser(description="Acceptance sweep for the multisuccessor arithmetic models")
    parser.add_argument("--config", help="Configuration file")
    parser.add_argument("--properties", action="store_true", help="Run the property suite for n = 1..8")
    parser.add_argument("--independence", action="store_true", help="Compare product and entangled reports at n = 2, 3, 4")
    parser.add_argument("--scaling", action="store_true", help="Check the profiler verdicts")
    args = parser.parse_args()

    config = load_config(args.config) if args.config and os.path.exists(args.config) else Config()
    validator = ConfigValidator()
    if not validator.validate(config.config):
        print("Configuration validation failed:")
        for i, error in enumerate(validator.get_errors(), 1):
            print(f"  {i}. {error}")
        sys.exit(2)

    selected = args.properties or args.independence or args.scaling
    results = []
    if args.properties or not selected:
        results.append(validate_properties())
    if args.independence or not selected:
        results.append(validate_independence(VerificationController(config)))
    if args.scaling or not selected:
        results.append(validate_scaling(config.tolerance("fit_r2")))

    for _, message in results:
        print(message)
    sys.exit(0 if all(ok for ok, _ in results) else 1)


if __name__ == "__main__":
    main()
