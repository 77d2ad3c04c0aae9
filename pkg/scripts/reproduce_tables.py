"""Print the parameter/cost tables for every security level.

    python scripts/reproduce_tables.py [--format text|csv|json] [--omega 2.81]
"""
import argparse

from ranksd.estimator import max_minors_cost, support_minors_cost, table_report
from ranksd.params import LEVELS

# rows of the algebraic-attack comparison: (lambda, code, MM, (a, p), SM)
ALGEBRAIC = [
    (128, (2, 31, 29, 14, 10), 146.1, (12, 1), 149.9),
    (192, (2, 37, 38, 16, 14), 233.0, (14, 2), 230.8),
    (256, (2, 43, 44, 23, 13), 300.3, (20, 1), 309.9),
]


def algebraic(omega):
    print("lambda  code                 MaxMinors (a,p)        ref    SupportMinors (a,p,b)   ref")
    for lam, code, mm_ref, ap_ref, sm_ref in ALGEBRAIC:
        mm, a, p = max_minors_cost(*code, omega=omega)
        sm, sa, sp, sb = support_minors_cost(*code, omega=omega)
        print("%-7d %-20s %7.2f (%d,%d) %12.1f %s  %7.2f (%d,%d,%d) %10.1f"
              % (lam, code, mm, a, p, mm_ref, "" if (a, p) == ap_ref else "*", sm, sa, sp, sb, sm_ref))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=["text", "csv", "json"], default="text")
    ap.add_argument("--omega", type=float, default=2.0)
    args = ap.parse_args()
    for lv in LEVELS:
        if args.format == "text":
            print("== level %s ==" % lv)
        print(table_report(lv, args.format, args.omega))
    if args.format == "text":
        print("== algebraic attacks (omega = %g) ==" % args.omega)
        algebraic(args.omega)


if __name__ == "__main__":
    main()
