#!/usr/bin/env python3
"""Solve an LP/MPS model with HiGHS and write "name value" lines.

Usage: highs_solve.py MODEL SOLUTION
"""
import sys

import highspy


def main(argv):
    if len(argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    model, solution = argv[1], argv[2]
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if h.readModel(model) != highspy.HighsStatus.kOk:
        print(f"cannot read model {model}", file=sys.stderr)
        return 3
    h.run()
    status = h.getModelStatus()
    name = h.modelStatusToString(status)
    with open(solution, "w") as out:
        out.write(f"# status {name}\n")
        if status != highspy.HighsModelStatus.kOptimal:
            print(f"solver status: {name}", file=sys.stderr)
            return 1
        out.write(f"# objective {h.getInfo().objective_function_value!r}\n")
        lp = h.getLp()
        values = h.getSolution().col_value
        for col, value in zip(lp.col_names_, values):
            out.write(f"{col} {value!r}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
