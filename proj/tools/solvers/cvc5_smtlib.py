#!/usr/bin/env python3
"""Runs an SMT-LIB 2 script through the cvc5 Python API.

Reads the script from the file given as the first argument, or from stdin,
executes its commands in order and prints their responses like the cvc5
executable would.
"""

import sys

import cvc5


def main() -> int:
    text = open(sys.argv[1]).read() if len(sys.argv) > 1 else sys.stdin.read()
    tm = cvc5.TermManager()
    solver = cvc5.Solver(tm)
    symbols = cvc5.SymbolManager(tm)
    parser = cvc5.InputParser(solver, symbols)
    parser.setStringInput(cvc5.InputLanguage.SMT_LIB_2_6, text, "script")
    while True:
        try:
            cmd = parser.nextCommand()
        except RuntimeError as e:
            print(f'(error "{e}")')
            return 1
        if cmd.isNull():
            return 0
        out = cmd.invoke(solver, symbols)
        if out.startswith("unknown ("):
            # The API appends the explanation; the executable prints the bare token.
            out = "unknown\n"
        if out:
            sys.stdout.write(out if out.endswith("\n") else out + "\n")
            sys.stdout.flush()


if __name__ == "__main__":
    sys.exit(main())
