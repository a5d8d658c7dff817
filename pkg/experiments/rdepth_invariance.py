from loguru import logger

from pralg.complexity import InvarianceReport, theorem2_check
from pralg.surface import print_term
from pralg.utils import checkpoints_path, on_ci


def main(from_checkpoint: bool = False) -> None:
    trials = 100 if on_ci() else 1000
    path = checkpoints_path() / f"rdepth_invariance_{trials}.pickle"

    if not from_checkpoint:
        logger.info(f"Checking Rdepth invariance on {trials} random terms")
        report = theorem2_check(trials=trials, max_depth=7, seed=0)
        report.save(path)
    else:
        report = InvarianceReport.load(path)

    logger.info(f"Group II steps checked: {report.group_ii_steps}")
    logger.info(f"Group I steps checked: {report.group_i_steps}")
    print(report.to_frame().to_latex())

    if not report.passed:
        v = report.counterexample
        logger.warning(
            f"{v.rule} {v.direction.value} at {v.position}: {print_term(v.before)} "
            f"(Rdepth {v.rdepth_before}) => {print_term(v.after)} (Rdepth {v.rdepth_after})"
        )


if __name__ == "__main__":
    main()
