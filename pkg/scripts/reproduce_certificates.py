"""Check every embedded zoo certificate, then re-derive one from scratch.

For each entry: the stored certificate is verified against its path system,
then check_metric solves the LP independently and its Farkas certificate is
verified too.  Prints one line per entry and exits nonzero on any failure.
"""
import sys
import time

from metrizability.certificates import NonMetric, check_metric, format_linear_form, verify_certificate
from metrizability.zoo import load_zoo


def main() -> int:
    failures = 0
    for e in load_zoo():
        t = time.perf_counter()
        stored = verify_certificate(e.system, e.certificate)
        res = check_metric(e.system)
        derived = isinstance(res, NonMetric) and verify_certificate(e.system, res.certificate.to_doc()).valid
        dt = time.perf_counter() - t
        ok = stored.valid and derived and e.certificate.target == e.target
        failures += not ok
        rows = len(res.certificate.rows) if isinstance(res, NonMetric) else 0
        print(f"entry {e.id:2d}: stored {'valid' if stored.valid else 'INVALID'} "
              f"({format_linear_form(stored.residual)} <= 0), "
              f"derived {'valid' if derived else 'INVALID'} ({rows} rows), {dt:.2f}s")
    print(f"{16 - failures}/16 entries reproduced")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
