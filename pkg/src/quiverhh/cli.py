"""
Command-line front end.

    quiverhh COMMAND INPUT [options]

INPUT is a presentation file, or ``corpus:NAME`` for a shipped algebra.
Structured output (``--format json``) is one JSON document on stdout with
sorted keys and every number written as an exact rational string, so the
same command on the same input produces the same bytes.  Logs and timing go
to stderr.
"""

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from quiverhh import corpus
from quiverhh.algebra import build_graded_algebra, load_presentation
from quiverhh.cartan import (
    DEFAULT_ORDER,
    cartan_det,
    check_recurrence,
    graded_cartan,
    log_derivative,
    loop_count_criterion,
    ungraded_cartan,
)
from quiverhh.errors import (
    ArithmeticInvariantError,
    ComplexError,
    PresentationError,
    ResourceCapExceeded,
    VerificationMismatch,
)
from quiverhh.homology import (
    hc_table,
    hh_table,
    homology_dims,
    relative_cyclic_piece_literal,
    relative_hc_table,
    structural_identities,
    verify_sbi,
)
from quiverhh.igusa import (
    HanOptions,
    chi_from_cartan,
    chi_from_homology,
    han_verdict,
    logdet_from_chi,
)
from quiverhh.numtheory import f_weighted
from quiverhh.polyseries import matrix_inverse_series, series_log
from quiverhh.resolution import (
    InsufficientBound,
    betti_table,
    global_dimension_probe,
    koszul_check,
    wilson_inverse_check,
)

log = logging.getLogger("quiverhh")

COMMANDS = (
    "basis", "cartan", "det", "logderiv", "inverse", "chi", "hh", "hc", "relhc",
    "ext", "koszul", "wilson", "gldim", "han", "verify",
)
JOBS_ENV = "QUIVERHH_JOBS"

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    input: str
    command: str
    n_max: int = 4
    m_max: int = 4
    order: int = DEFAULT_ORDER
    v_max: int = 6
    window: int = 10
    fmt: str = "text"
    jobs: int = 1
    method: str = "both"
    suite: str = "all"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError("unknown command %r" % self.command)
        for name in ("n_max", "m_max", "order", "v_max", "window", "jobs"):
            if getattr(self, name) < 1:
                raise UsageError("--%s must be positive" % name.replace("_", "-"))

    def echo(self):
        return {
            "input": self.input, "n_max": str(self.n_max), "m_max": str(self.m_max),
            "order": str(self.order), "v_max": str(self.v_max), "window": str(self.window),
            "method": self.method, "suite": self.suite,
        }


class Mismatch(Exception):
    """A cross-check failed; carries the partial report."""

    def __init__(self, result, message):
        super().__init__(message)
        self.result = result


def _q(x):
    return str(Fraction(x))


def _series(s):
    return {"series": str(s), "coefficients": [_q(c) for c in s.coeffs]}


def _table_rows(table):
    return [{"m": str(m), "dims": [str(d) for d in table.row(m)]} for m in range(table.m_max + 1)]


def load_algebra(spec):
    if spec.startswith("corpus:"):
        name = spec[len("corpus:"):]
        try:
            return corpus.corpus_algebra(name)
        except KeyError:
            raise UsageError("unknown corpus algebra %r (have: %s)" % (name, ", ".join(corpus.NAMES))) from None
    if not os.path.isfile(spec):
        raise UsageError("input file %s does not exist" % spec)
    return build_graded_algebra(load_presentation(spec))


# -- commands ---------------------------------------------------------------

def cmd_basis(alg, cfg):
    return {
        "dimension": str(alg.dim),
        "degree_dims": [str(d) for d in alg.degree_dims()],
        "basis": [
            {"index": str(b.index), "degree": str(b.degree), "source": str(b.source + 1),
             "target": str(b.target + 1), "label": b.label}
            for b in alg.basis
        ],
    }


def cmd_cartan(alg, cfg):
    C = graded_cartan(alg).matrix
    return {
        "matrix": [[str(C[i, j]) for j in range(alg.r)] for i in range(alg.r)],
        "ungraded": [[str(e) for e in row] for row in ungraded_cartan(alg)],
    }


def cmd_det(alg, cfg):
    return str(cartan_det(alg))


def cmd_logderiv(alg, cfg):
    data = log_derivative(cartan_det(alg), cfg.order)
    rec = check_recurrence(data)
    result = {
        "det": str(cartan_det(alg)),
        "b": [str(x) for x in data.b],
        "c": [str(x) for x in data.c],
        "u": str(data.u),
        "recurrence_holds": rec.holds,
        "first_violation": None if rec.first_violation is None else str(rec.first_violation),
    }
    if not rec.holds:
        raise Mismatch(result, "recurrence fails at m=%d" % rec.first_violation)
    return result


def cmd_inverse(alg, cfg):
    inv = matrix_inverse_series(graded_cartan(alg).matrix, cfg.order)
    return {"inverse": [[_series(e) for e in row] for row in inv]}


def cmd_chi(alg, cfg):
    result = {}
    if cfg.method in ("cartan", "both"):
        result["cartan"] = _series(chi_from_cartan(cartan_det(alg), cfg.m_max))
    if cfg.method in ("homology", "both"):
        rel = relative_hc_table(alg, cfg.m_max + 1, cfg.m_max, jobs=cfg.jobs)
        result["homology"] = _series(chi_from_homology(rel, cfg.m_max))
    if cfg.method == "both":
        match = result["cartan"] == result["homology"]
        result["match"] = match
        if not match:
            raise Mismatch(result, "Euler series from homology and from the Cartan determinant differ")
    return result


def cmd_hh(alg, cfg):
    return {"table": _table_rows(hh_table(alg, cfg.n_max, cfg.m_max, jobs=cfg.jobs))}


def cmd_hc(alg, cfg):
    return {"table": _table_rows(hc_table(alg, cfg.n_max, cfg.m_max, jobs=cfg.jobs))}


def cmd_relhc(alg, cfg):
    return {"table": _table_rows(relative_hc_table(alg, cfg.n_max, cfg.m_max, jobs=cfg.jobs))}


def cmd_ext(alg, cfg):
    table = betti_table(alg, cfg.v_max)
    return {
        "ext": [
            {"v": str(v), "i": str(i + 1), "j": str(j + 1), "u": str(u), "dim": str(c)}
            for (v, i, j, u), c in table.nonzero()
        ],
        "terminated": list(table.terminated),
    }


def cmd_koszul(alg, cfg):
    verdict = koszul_check(alg, max(cfg.v_max, 2))
    out = {"consistent": verdict.consistent, "v_max": str(verdict.v_max), "summary": str(verdict)}
    if verdict.witness:
        out["witness"] = dict(zip(("v", "u", "i", "j"), map(str, verdict.witness)))
    return out


def cmd_wilson(alg, cfg):
    order = min(cfg.order, cfg.v_max)
    verdict = wilson_inverse_check(alg, order, cfg.v_max)
    result = {
        "order": str(order),
        "match": verdict.match,
        "ext_side": [[_series(e) for e in row] for row in verdict.ext_side],
    }
    if not verdict.match:
        i, j, k = verdict.mismatch
        result["mismatch"] = {"i": str(i), "j": str(j), "power": str(k)}
        raise Mismatch(result, "alternating Ext series differs from the inverse Cartan matrix")
    return result


def cmd_gldim(alg, cfg):
    g = global_dimension_probe(alg, cfg.v_max)
    return {
        "finite": g.finite,
        "value": None if g.value is None else str(g.value),
        "v_max": str(g.v_max),
        "projective_dims": [None if p is None else str(p) for p in g.projective_dims],
        "summary": str(g),
    }


def cmd_han(alg, cfg):
    v = han_verdict(alg, HanOptions(cfg.order, cfg.window, cfg.v_max))
    out = {
        "verdict": v.verdict,
        "certified_infinite_hhdim": v.certified_infinite_hhdim,
        "det": v.det,
        "classes": [{"class": c.name, "status": c.status, "detail": c.detail} for c in v.classes],
    }
    if v.evidence is not None:
        ev = v.evidence
        out["properness"] = {
            "order": str(ev.order),
            "window": str(ev.window),
            "checkpoints": [{"after": str(B), "nonzero_at": None if k is None else str(k)} for B, k in ev.checkpoints],
            "all_found": ev.found_all,
        }
    return out


def _suite_complexes(alg, cfg):
    checks = []
    failures = structural_identities(alg, cfg.n_max, cfg.m_max)
    checks.append(("operator identities", not failures, "; ".join(failures)))
    sbi = verify_sbi(alg, cfg.n_max, cfg.m_max, jobs=cfg.jobs)
    checks.append(("HH/HC dimension sequence", sbi.holds, " ".join(map(str, sbi.violations))))
    rel = relative_hc_table(alg, cfg.n_max, cfg.m_max, jobs=cfg.jobs)
    same = all(rel[(n, m)] == sbi.hc[(n, m)] for n in range(cfg.n_max + 1) for m in range(1, cfg.m_max + 1))
    zero_row = all(rel[(n, 0)] == 0 for n in range(cfg.n_max + 1))
    checks.append(("relative equals absolute for m >= 1", same, ""))
    checks.append(("relative m = 0 row vanishes", zero_row, ""))
    m_lit = min(cfg.m_max, 3)
    literal = all(
        homology_dims(relative_cyclic_piece_literal(alg, cfg.n_max, m, composable=True)) == rel.row(m)
        for m in range(m_lit + 1)
    )
    checks.append(("relative complex built as a kernel agrees (m <= %d)" % m_lit, literal, ""))
    return checks


def _suite_igusa(alg, cfg):
    checks = []
    det = cartan_det(alg)
    rel = relative_hc_table(alg, cfg.m_max + 1, cfg.m_max, jobs=cfg.jobs)
    hom = chi_from_homology(rel, cfg.m_max)
    cart = chi_from_cartan(det, cfg.m_max)
    checks.append(("Euler series: homology vs Cartan determinant", hom == cart, "%s vs %s" % (hom, cart)))
    order = cfg.order
    chi = chi_from_cartan(det, order)
    checks.append(("log det recovered from the Euler series",
                   logdet_from_chi(chi, order) == series_log(det, order), ""))
    data = log_derivative(det, order)
    checks.append(("log-derivative recurrence", check_recurrence(data).holds, ""))
    seq = chi.as_sequence()
    fb = all(f_weighted(m, seq) == data.b[m - 1] for m in range(1, order))
    checks.append(("weighted divisor sum equals shifted log-derivative", fb, ""))
    checks.append(("loop count equals x-coefficient of det",
                   loop_count_criterion(alg.presentation, alg).loops == det[1], ""))
    w_order = min(cfg.v_max, order)
    checks.append(("alternating Ext series inverts the Cartan matrix",
                   wilson_inverse_check(alg, w_order, cfg.v_max).match, ""))
    return checks


def cmd_verify(alg, cfg):
    checks = []
    if cfg.suite in ("complexes", "all"):
        checks += [("complexes",) + c for c in _suite_complexes(alg, cfg)]
    if cfg.suite in ("igusa", "all"):
        checks += [("igusa",) + c for c in _suite_igusa(alg, cfg)]
    result = {
        "checks": [
            {"suite": s, "check": name, "passed": ok, **({"detail": d} if d and not ok else {})}
            for s, name, ok, d in checks
        ],
    }
    result["passed"] = all(c["passed"] for c in result["checks"])
    if not result["passed"]:
        raise Mismatch(result, "%d verification check(s) failed" % sum(not c["passed"] for c in result["checks"]))
    return result


HANDLERS = {name: globals()["cmd_" + name] for name in COMMANDS}


# -- reporting --------------------------------------------------------------

def run(cfg):
    """Run one command; returns (report, exit status)."""
    report = {"command": cfg.command, "config": cfg.echo(), "warnings": []}
    status = EXIT_OK
    started = time.perf_counter()
    try:
        alg = load_algebra(cfg.input)
        report["result"] = HANDLERS[cfg.command](alg, cfg)
    except Mismatch as exc:
        report["result"] = exc.result
        report["error"] = str(exc)
        status = EXIT_MISMATCH
    except (ArithmeticInvariantError, ComplexError, VerificationMismatch) as exc:
        report["error"] = str(exc)
        status = EXIT_MISMATCH
    except PresentationError as exc:
        report["error"] = str(exc)
        status = EXIT_INVALID
    except ResourceCapExceeded as exc:
        report["error"] = str(exc)
        status = EXIT_CAP
    except (UsageError, InsufficientBound, ValueError) as exc:
        report["error"] = str(exc)
        status = EXIT_USAGE
    log.info("%s finished in %.3fs (exit %d)", cfg.command, time.perf_counter() - started, status)
    return report, status


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _render_text(value, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append("%s%s:" % (pad, key))
                lines += _render_text(v, indent + 1)
            else:
                lines.append("%s%s: %s" % (pad, key, _scalar(v)))
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            lines.append(pad + " ".join(_scalar(v) for v in value))
        else:
            for v in value:
                if isinstance(v, dict) and all(not isinstance(x, (dict, list)) for x in v.values()):
                    lines.append(pad + "- " + ", ".join("%s=%s" % (k, _scalar(x)) for k, x in v.items()))
                else:
                    lines.append(pad + "-")
                    lines += _render_text(v, indent + 1)
    else:
        lines.append(pad + _scalar(value))
    return lines


def _scalar(v):
    if v is None:
        return "-"
    if v is True or v is False:
        return "yes" if v else "no"
    return str(v)


def render_text(report):
    lines = ["%s %s" % (report["command"], report["config"]["input"])]
    if "result" in report:
        lines += _render_text(report["result"], 1) if isinstance(report["result"], (dict, list)) else ["  " + report["result"]]
    if "error" in report:
        lines.append("error: " + report["error"])
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    p = _Parser(prog="quiverhh", description="Cartan determinants and homology of graded quiver algebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="presentation file, or corpus:NAME")
    p.add_argument("--n-max", type=int, default=4, help="largest homological degree (default 4)")
    p.add_argument("--m-max", type=int, default=4, help="largest internal degree (default 4)")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series truncation order N (default 50)")
    p.add_argument("--v-max", type=int, default=6, help="resolution length bound (default 6)")
    p.add_argument("--window", type=int, default=10, help="properness search window (default 10)")
    p.add_argument("--method", choices=("cartan", "homology", "both"), default="both", help="for chi")
    p.add_argument("--suite", choices=("complexes", "igusa", "all"), default="all", help="for verify")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for homology (env %s)" % JOBS_ENV)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    jobs = args.jobs
    if jobs is None:
        env = os.environ.get(JOBS_ENV)
        try:
            jobs = int(env) if env else 1
        except ValueError:
            parser.error("%s must be an integer" % JOBS_ENV)
    try:
        cfg = RunConfig(args.input, args.command, args.n_max, args.m_max, args.order, args.v_max,
                        args.window, args.format, jobs, args.method, args.suite)
    except UsageError as exc:
        parser.error(str(exc))
    report, status = run(cfg)
    out = render_json(report) if cfg.fmt == "json" else render_text(report)
    sys.stdout.write(out)
    if "error" in report and cfg.fmt == "json":
        sys.stderr.write("error: %s\n" % report["error"])
    return status


if __name__ == "__main__":
    sys.exit(main())
