
import sys
import os
sys.path.append(os.getcwd())
import argparse
import time

from dotenv import load_dotenv
from loguru import logger

load_dotenv()

from basis.oscillator import BasisSpec, Parity
from engine.models import IterationConfig
from hamiltonian.potential import pt_cubic
from observables.energy_shift import quadratic_response
from runner.cli import write_report
from runner.presets import PRESETS, expand_preset
from runner.reference_tables import QUADRATIC_RESPONSE, QUADRATIC_RESPONSE_SCALE
from runner.report import build_report
from runner.table_comparator import comparator_for

# Redirect logger to stdout with color
logger.remove()
logger.add(sys.stdout, format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>")


def reproduce_preset(name: str, fmt: str) -> bool:
    start = time.time()
    runs = expand_preset(name)
    report = build_report(name, [(r.label, r.params, r.config) for r in runs])
    write_report(report, fmt)

    result = comparator_for(name).compare_report(report)
    for row in result.failures:
        ref = row.reference
        logger.error(
            f"  {row.block}: expected {ref.er} {ref.ei} (x2={ref.x2}), found {row.found} "
            f"(|dER|={row.er_error:.2e}, |dEI|={row.ei_error:.2e}, |dx2|={row.x2_error})"
        )
    elapsed = time.time() - start
    if result.match:
        logger.success(f"{name}: all {result.total} reference rows reproduced ({elapsed:.1f}s)")
    else:
        logger.error(f"{name}: {result.matched}/{result.total} reference rows reproduced ({elapsed:.1f}s)")
    return result.match


def reproduce_quadratic_response() -> bool:
    # beta x^2 - i x^3: A = -1, B = 0; W kept inside the Stokes wedges of -i x^3
    spec = BasisSpec(alpha=1.0, w=complex(1.0, 0.5), parity=Parity.FULL, dim=150)
    fit = quadratic_response(spec, pt_cubic(-1.0, 0.0), IterationConfig(e0=1.15, max_iters=500))
    expected = float(QUADRATIC_RESPONSE) / QUADRATIC_RESPONSE_SCALE
    error = abs(fit.quadratic.real - expected)
    if error <= 1e-7:
        logger.success(f"quadratic response {fit.quadratic.real:.10f} (expected {expected})")
        return True
    logger.error(f"quadratic response {fit.quadratic.real:.10f}, expected {expected} (error {error:.2e})")
    return False


def main():
    parser = argparse.ArgumentParser(description="Rerun every table preset and compare with the reference rows.")
    parser.add_argument("presets", nargs="*", default=list(PRESETS), help="Presets to run (default: all).")
    parser.add_argument("--format", choices=["csv", "json", "text"], default="text")
    parser.add_argument("--skip-response", action="store_true", help="Skip the beta^2 response fit.")
    args = parser.parse_args()

    logger.info(f"Reproducing {len(args.presets)} preset(s)...")
    outcomes = {name: reproduce_preset(name, args.format) for name in args.presets}
    if not args.skip_response:
        outcomes["quadratic-response"] = reproduce_quadratic_response()

    passed = sum(outcomes.values())
    logger.info(f"{passed}/{len(outcomes)} checks passed")
    return 0 if passed == len(outcomes) else 1


if __name__ == "__main__":
    sys.exit(main())
