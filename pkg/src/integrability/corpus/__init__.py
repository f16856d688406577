"""Bundled Gauss codes for standard knots and links."""

from importlib import resources

from ..diagram import LinkDiagram, parse_gauss

NAMES = ("unknot", "trefoil", "figure_eight", "hopf", "whitehead", "borromean", "split_unlink")


def corpus_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"no bundled diagram named {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__name__).joinpath(f"{name}.gauss").read_text()


def load(name: str) -> LinkDiagram:
    return parse_gauss(corpus_text(name))


def load_all() -> dict[str, LinkDiagram]:
    return {name: load(name) for name in NAMES}
