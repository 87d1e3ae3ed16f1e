from datetime import datetime
from typing import Dict, Optional

from core.errors import (
    BranchJumpError,
    ConfigError,
    ConvergenceError,
    DimensionMismatchError,
    DomainError,
    PreconditionError,
    ReferenceRowDegenerateError,
    SingularShiftError,
)

# first matching category wins, so subclasses come before their bases
RULES = {
    "CONFIG": (ConfigError,),
    "SINGULAR_SHIFT": (SingularShiftError,),
    "REFERENCE_ROW": (ReferenceRowDegenerateError,),
    "BRANCH_JUMP": (BranchJumpError,),
    "CONVERGENCE": (ConvergenceError,),
    "INPUT": (DimensionMismatchError, DomainError, PreconditionError),
    "IO": (OSError,),
}

SEVERITY_MAP = {
    "CONFIG":         "high",
    "SINGULAR_SHIFT": "medium",
    "REFERENCE_ROW":  "medium",
    "BRANCH_JUMP":    "high",
    "CONVERGENCE":    "high",
    "INPUT":          "high",
    "IO":             "critical",
}

# 2: the request itself is wrong; 3: the numerics failed on a valid request
EXIT_CODES = {
    "CONFIG":         2,
    "INPUT":          2,
    "IO":             2,
    "SINGULAR_SHIFT": 3,
    "REFERENCE_ROW":  3,
    "BRANCH_JUMP":    3,
    "CONVERGENCE":    3,
}

NUMERICAL = frozenset({"SINGULAR_SHIFT", "REFERENCE_ROW", "BRANCH_JUMP", "CONVERGENCE"})


class FailureClassifier:

    def classify(self, error: BaseException, context: Optional[str] = None) -> Dict:
        for category, types in RULES.items():
            if isinstance(error, types):
                return self._build_result(context, category, SEVERITY_MAP[category], error)
        return self._build_result(context, "UNKNOWN", "critical", error)

    def exit_code(self, error: BaseException) -> int:
        return self.classify(error)["exit_code"]

    @staticmethod
    def _build_result(context, category, severity, error) -> Dict:
        suggestions = {
            "CONFIG":         "Fix the named key; `resonance-scan validate <cfg>` checks a file without running it",
            "SINGULAR_SHIFT": "The shift is an eigenvalue to working precision; move e_min or change de",
            "REFERENCE_ROW":  "Pick a reference row where the eigencolumn has weight, or enable auto_reference",
            "BRANCH_JUMP":    "Reduce the probe delta or start closer to the target eigenvalue",
            "CONVERGENCE":    "Raise max_iters, loosen tol, or enable rayleigh_update",
            "INPUT":          "Check parity against the potential's powers and the degree cap",
            "IO":             "Check the path exists and the report directory is writable",
            "UNKNOWN":        "Manual review needed",
        }
        return {
            "context":        context,
            "error_category": category,
            "error_type":     type(error).__name__,
            "severity":       severity,
            "error_message":  str(error),
            "exit_code":      EXIT_CODES.get(category, 1),
            "numerical":      category in NUMERICAL,
            "suggested_fix":  suggestions.get(category, "Manual review"),
            "created_at":     datetime.now().isoformat(),
        }


failure_classifier = FailureClassifier()
