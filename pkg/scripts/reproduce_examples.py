"""Print the worked examples: small Jantzen values, the semisimple towers,
the four factorization examples, the very even D4 pair and the staircase.

    python3 scripts/reproduce_examples.py

Each section is a plain CLI invocation, so any line can be rerun by hand
as ``blocks <args>``.
"""

import shlex

from parablocks.cli import main

SECTIONS = [
    ("Jantzen coefficients", [
        "jantzen B 3 --include 1,3 --weight 1,1,0",
        "jantzen B 2 --include 2 --weight 1,1",
    ]),
    ("semisimple towers", [
        "blocks B 2 --exclude 2 --weight 1,0",
        "blocks B 6 --exclude 2,6 --weight 2,1,1,1,0,0",
        "blocks B 12 --exclude 2,6,12 --weight 3,2,2,2,1,1,1,1,1,0,0,0",
    ]),
    ("factorizations", [
        "factorize A 7 --exclude 3,5,6 --weight 3,2,2,2,1,1,1",
        "factorize B 6 --exclude 4,6 --weight 2,1,1,1,0,0",
        "factorize D 9 --exclude 4,6 --weight 2,2,1,1,1,1,0,0,0",
        "factorize D 9 --exclude 5,8,9 --weight 3,2,2,2,1,1,1,1,-1",
    ]),
    ("very even D4", [
        "partitions D 4 --include 1,3 --singular 1,2,3",
        "partitions D 4 --include 1,3 --singular 1,2,4",
    ]),
    ("staircase, k = 2", [
        "separable B 6 --exclude 2,6 --singular 2,3,5,6",
        "partitions B 6 --exclude 2,6 --singular 2,3,5,6",
    ]),
]


def run() -> None:
    for title, commands in SECTIONS:
        print(f"== {title}")
        for command in commands:
            print(f"$ blocks {command}")
            main(shlex.split(command))
            print()


if __name__ == "__main__":
    run()
