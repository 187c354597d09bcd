"""The command-line front end: JSON reports and a small M = N sweep.

Equivalent shell commands:
    krsums msum --algebra A1 --k 2 --lambda 0 --n 1:4,0
    krsums sweep --grid A1:1-2,G2:1 --max-n 2 --max-lambda 2
"""
from krsums.cli import run

run(["msum", "--algebra", "A1", "--k", "2", "--lambda", "0", "--n", "1:4,0"])
run(["verify", "--statement", "gfactorization", "--algebra", "A2", "--k", "2", "--lambda", "1,0",
     "--n", "1:1,0", "--n", "2:0,1", "--window", "4"])
code = run(["sweep", "--grid", "A1:1-2,G2:1", "--max-n", "2", "--max-lambda", "2"])
print("exit code", code)
