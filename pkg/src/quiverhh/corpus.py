"""The shipped presentation files."""

from importlib import resources

from quiverhh.algebra import build_graded_algebra, parse_presentation

NAMES = (
    "semisimple3",
    "truncated_poly2",
    "truncated_poly3",
    "truncated_poly4",
    "buchweitz_q2",
    "three_vertex",
    "hereditary_a2",
    "two_cycle_radsq",
)


def corpus_text(name):
    if name not in NAMES:
        raise KeyError("no corpus algebra named %r" % name)
    return resources.files("quiverhh").joinpath("corpus").joinpath(name + ".json").read_text()


def corpus_presentation(name):
    return parse_presentation(corpus_text(name))


def corpus_algebra(name):
    return build_graded_algebra(corpus_presentation(name))
