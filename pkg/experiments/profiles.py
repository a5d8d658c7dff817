from loguru import logger
from matplotlib import pyplot as plt

from pralg.complexity import RdepthProfile, dominates, scheme_profile
from pralg.schemes import SCHEMES, get_scheme
from pralg.utils import figures_path, on_ci


def plot_profiles(profiles: list[RdepthProfile], minimized: list[RdepthProfile]) -> None:
    colors = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"]
    plt.figure()
    for color, profile in zip(colors, profiles, strict=False):
        frame = profile.to_frame()
        plt.step(frame["n"], frame["rdepth"], where="post", color=color, label=profile.name)
    for color, profile in zip(colors, minimized, strict=False):
        frame = profile.to_frame()
        plt.plot(frame["n"], frame["rdepth"], "o", color=color, fillstyle="none")

    plt.xlabel("Input size n")
    plt.ylabel("Rdepth")
    plt.legend()
    plt.savefig(figures_path() / "rdepth_profiles.pdf")

    show_plot = False
    if show_plot:
        plt.show()


def main() -> None:
    n_max = 4 if on_ci() else 8
    logger.info(f"Computing Rdepth profiles up to n = {n_max}")
    profiles = [scheme_profile(get_scheme(name), n_max) for name in SCHEMES]

    # the search is slow on the larger networks
    minimized = []
    if not on_ci():
        minimized = [
            scheme_profile(get_scheme(name), 4, minimize=True, budget=2000) for name in SCHEMES
        ]

    for p in profiles:
        logger.info(f"{p.name}: {p.values}")
        for q in profiles:
            if p is not q and dominates(p, q) and not dominates(q, p):
                logger.info(f"{p.name} dominates {q.name}")

    plot_profiles(profiles, minimized)


if __name__ == "__main__":
    main()
