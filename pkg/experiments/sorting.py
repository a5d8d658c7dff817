"""
Insertion sort and merge sort compute the same function at every size but are
different algorithms: testing agrees on them while the prover finds no chain
of equations between them.
"""

import pandas as pd
from loguru import logger

from pralg.interp import Equal, ext_equal
from pralg.prover import Proved, equiv
from pralg.schemes import insertion_sort, merge_sort
from pralg.utils import checkpoints_path, on_ci


def compare(n: int, budget: int) -> dict:
    t1, t2 = insertion_sort(n), merge_sort(n)
    verdict = ext_equal(t1, t2, samples=300, max_value=15)
    result = equiv(t1, t2, budget=budget)
    logger.info(f"n = {n}: {type(verdict).__name__}, {type(result).__name__}")
    return {
        "n": n,
        "size insertion": t1.size,
        "size merge": t2.size,
        "same function": isinstance(verdict, Equal),
        "proved": isinstance(result, Proved),
        "terms explored": result.states_explored,
    }


def main(from_checkpoint: bool = False) -> None:
    budget = 1_000 if on_ci() else 100_000
    path = checkpoints_path() / f"sorting_{budget}.pickle"

    if not from_checkpoint:
        sizes = range(2, 4) if on_ci() else range(2, 6)
        frame = pd.DataFrame([compare(n, budget) for n in sizes]).set_index("n")
        frame.to_pickle(path)
    else:
        frame = pd.read_pickle(path)

    print(frame.to_latex())


if __name__ == "__main__":
    main()
