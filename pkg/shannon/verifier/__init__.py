from shannon.verifier.checks import (
    CheckResult,
    CheckStatus,
    PClassCertificate,
    Verdict,
    Verifier,
    evaluate_relation,
    implication_status,
)
from shannon.verifier.suite import VerificationReport, random_pairs, run_suite

__all__ = [
    "CheckResult",
    "CheckStatus",
    "PClassCertificate",
    "Verdict",
    "VerificationReport",
    "Verifier",
    "evaluate_relation",
    "implication_status",
    "random_pairs",
    "run_suite",
]
