"""
Command-line front end: one subcommand per verification, records on stdout
(or --out) in json-lines, csv or a human table, logs on stderr.

Exit codes: 0 every record passed, 1 a record failed (or an identity was
violated, or output could not be written), 2 usage error.
"""

from argparse import ArgumentParser
from dataclasses import dataclass
import logging
import random
import sys

from config import LOG_LEVELS, configure_logging, load_settings
from curve_group import Curve
from exceptions import IdentityViolation, LabError, UsageError
from records import (
    FORMATS, CharEqRecord, CountReport, FuzzRecord, MultMapRecord, ParallelogramRecord,
    ResultantRecord, SweepSummary, ZagierRecord, emit,
)
import hasse
import isogeny_calculus
import zagier

logger = logging.getLogger(__name__)

DEFAULT_ITERS = 1000
DEFAULT_MULT_RANGE = range(1, 9)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    p: int = None
    a: int = None
    b: int = None
    m: object = None
    n: object = None
    p_min: int = None
    p_max: int = None
    seed: int = None
    iters: int = DEFAULT_ITERS
    format: str = 'json-lines'
    out_path: str = None
    workers: int = 1
    summary: bool = False


def _endo_label(text):
    """An integer multiplier or 'pi'"""
    if text == 'pi':
        return text
    return int(text)


def build_parser():
    parser = ArgumentParser(prog='isogeny-lab',
                            description="Verify isogeny-degree identities and the Hasse bound over small prime fields")
    parser.add_argument('--log-level', choices=LOG_LEVELS, type=str.upper, default=None,
                        help="Override ISOGENY_LAB_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    def command(name, help_text, curve=False, p=False):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument('--format', choices=FORMATS, default='json-lines')
        sub.add_argument('--out', dest='out_path', default=None, help="Write records here instead of stdout")
        if curve or p:
            sub.add_argument('--p', type=int, required=True)
        if curve:
            sub.add_argument('--a', type=int, required=True)
            sub.add_argument('--b', type=int, required=True)
        return sub

    alias = "(alias of hasse-check)"
    for name, help_text in (('count', f"Point count N over F_p {alias}"),
                            ('trace', f"Frobenius trace t = p + 1 - N {alias}"),
                            ('hasse-check', "t^2 <= 4p for one curve")):
        command(name, help_text, curve=True)

    sweep = command('hasse-sweep', "Hasse bound over every nonsingular curve in a prime range")
    sweep.add_argument('--p-min', type=int, default=5)
    sweep.add_argument('--p-max', type=int, required=True)
    sweep.add_argument('--workers', type=int, default=None)
    sweep.add_argument('--summary', action='store_true', help="Emit one aggregate record")

    para = command('parallelogram', "d(phi + psi) + d(phi - psi) = 2d(phi) + 2d(psi)", curve=True)
    para.add_argument('--m', type=_endo_label, default=1, help="Multiplier or 'pi' (default 1)")
    para.add_argument('--n', type=_endo_label, default='pi', help="Multiplier or 'pi' (default pi)")

    mult = command('mult-map', "x-map of [m] against the division-polynomial oracle", curve=True)
    mult.add_argument('--m', type=int, default=None, help="Default: every m in 1..8 with p not dividing m")

    char = command('char-eq', "phi^2 - tr(phi) phi + d(phi) on E(F_{p^2}), phi = [m] + [n]pi", curve=True)
    char.add_argument('--m', type=int, default=0)
    char.add_argument('--n', type=int, default=1)
    char.add_argument('--iters', type=int, default=None, help="Sample this many points (default: all)")
    char.add_argument('--seed', type=int, default=None)

    zag = command('zagier', "S(p) for x^3 - 35x + 98 against p = A^2 + 7B^2")
    zag.add_argument('--p', type=int, default=None, help="Single prime")
    zag.add_argument('--p-max', type=int, default=None, help="Every prime up to this bound")
    zag.add_argument('--workers', type=int, default=None)

    for name, help_text in (('lemma1-fuzz', "H(AC, AD + BC, BD) = H(A, B) + H(C, D)"),
                            ('lemma2-fuzz', "H(Q1, Q2, Q3) = 2H(P, Q) + 2H(R, S)")):
        fuzz = command(name, help_text, p=True)
        fuzz.add_argument('--iters', type=int, default=DEFAULT_ITERS)
        fuzz.add_argument('--seed', type=int, default=None)

    res = command('resultant-id', "Resultant identity equals 4a^3 + 27b^2", p=True)
    res.add_argument('--a', type=int, default=None)
    res.add_argument('--b', type=int, default=None)
    res.add_argument('--iters', type=int, default=100, help="Random curves when --a/--b are absent")
    res.add_argument('--seed', type=int, default=None)
    return parser


def parse_config(argv, settings):
    """RunConfig from command-line arguments, with settings filling the defaults"""
    args = build_parser().parse_args(argv)
    values = vars(args)
    workers = values.get('workers')
    workers = settings.threads if workers is None else min(workers, settings.threads)
    seed = values.get('seed')
    cfg = RunConfig(
        subcommand=args.subcommand,
        p=values.get('p'),
        a=values.get('a'),
        b=values.get('b'),
        m=values.get('m'),
        n=values.get('n'),
        p_min=values.get('p_min'),
        p_max=values.get('p_max'),
        seed=settings.seed if seed is None else seed,
        iters=values.get('iters'),
        format=args.format,
        out_path=args.out_path,
        workers=workers,
        summary=values.get('summary', False),
    )
    return cfg, args.log_level or settings.log_level


def _require_positive(name, value):
    if value is not None and value < 1:
        raise UsageError(f"--{name} must be >= 1, got {value}")


def _curve(cfg):
    return Curve(cfg.p, cfg.a, cfg.b)


def _run_count(cfg):
    return [hasse.hasse_check(_curve(cfg))], CountReport


def _xmap_for(curve, label):
    if label == 'pi':
        return isogeny_calculus.frobenius_xmap(curve)
    return isogeny_calculus.mult_by_m_xmap(curve, label)


def _run_parallelogram(cfg):
    curve = _curve(cfg)
    phi, psi = _xmap_for(curve, cfg.m), _xmap_for(curve, cfg.n)
    return [isogeny_calculus.parallelogram_check(phi, psi)], ParallelogramRecord


def _run_mult_map(cfg):
    curve = _curve(cfg)
    ms = [cfg.m] if cfg.m is not None else [m for m in DEFAULT_MULT_RANGE if m % curve.p]
    records = []
    for m in ms:
        phi = isogeny_calculus.mult_by_m_xmap(curve, m)
        oracle = isogeny_calculus.division_poly_xmap(curve, m)
        records.append(MultMapRecord(curve.p, curve.a, curve.b, m, phi.degree, phi == oracle))
    return records, MultMapRecord


def _run_char_eq(cfg):
    curve = _curve(cfg)
    _require_positive('iters', cfg.iters)
    rng = random.Random(cfg.seed)
    tr, nrm = hasse.endomorphism_invariants(curve, cfg.m, cfg.n)
    total = hasse.quadratic_count(curve)
    points = total if cfg.iters is None else min(cfg.iters, total)
    ok = hasse.general_endo_char_check(curve, cfg.m, cfg.n, cfg.iters, rng)
    return [CharEqRecord(curve.p, curve.a, curve.b, cfg.m, cfg.n, tr, nrm, points, ok)], CharEqRecord


def _run_hasse_sweep(cfg):
    reports = hasse.exhaustive_sweep(cfg.p_min, cfg.p_max, cfg.workers)
    if cfg.summary:
        return [hasse.summarize_sweep(reports, cfg.p_min, cfg.p_max)], SweepSummary
    return reports, CountReport


def _run_zagier(cfg):
    if (cfg.p is None) == (cfg.p_max is None):
        raise UsageError("zagier needs exactly one of --p and --p-max")
    if cfg.p is not None:
        return [zagier.zagier_verify(cfg.p)], ZagierRecord
    return zagier.zagier_sweep(cfg.p_max, cfg.workers), ZagierRecord


def _run_lemma1(cfg):
    _require_positive('iters', cfg.iters)
    return isogeny_calculus.lemma1_fuzz(cfg.p, cfg.iters, cfg.seed), FuzzRecord


def _run_lemma2(cfg):
    _require_positive('iters', cfg.iters)
    return isogeny_calculus.lemma2_fuzz(cfg.p, cfg.iters, cfg.seed), FuzzRecord


def _resultant_record(curve):
    value = isogeny_calculus.resultant_identity_check(curve)
    expected = curve.discriminant()
    return ResultantRecord(curve.p, curve.a, curve.b, int(value), expected, value == expected)


def _run_resultant(cfg):
    if (cfg.a is None) != (cfg.b is None):
        raise UsageError("give both --a and --b, or neither")
    if cfg.a is not None:
        return [_resultant_record(Curve(cfg.p, cfg.a, cfg.b))], ResultantRecord
    _require_positive('iters', cfg.iters)
    rng = random.Random(cfg.seed)
    records = []
    while len(records) < cfg.iters:
        a, b = rng.randrange(cfg.p), rng.randrange(cfg.p)
        if (4 * a ** 3 + 27 * b * b) % cfg.p == 0:
            continue
        records.append(_resultant_record(Curve(cfg.p, a, b)))
    return records, ResultantRecord


HANDLERS = {
    'count': _run_count,
    'trace': _run_count,
    'hasse-check': _run_count,
    'hasse-sweep': _run_hasse_sweep,
    'parallelogram': _run_parallelogram,
    'mult-map': _run_mult_map,
    'char-eq': _run_char_eq,
    'zagier': _run_zagier,
    'lemma1-fuzz': _run_lemma1,
    'lemma2-fuzz': _run_lemma2,
    'resultant-id': _run_resultant,
}


def _write(records, record_type, cfg):
    if cfg.out_path is None:
        emit(records, cfg.format, sys.stdout, record_type)
        sys.stdout.flush()
        return
    with open(cfg.out_path, 'w', newline='') as sink:
        emit(records, cfg.format, sink, record_type)


def dispatch(cfg):
    """Run one verification and emit its records; returns the exit code"""
    handler = HANDLERS.get(cfg.subcommand)
    if handler is None:
        print(f"error: unknown subcommand {cfg.subcommand!r}", file=sys.stderr)
        return 2
    try:
        records, record_type = handler(cfg)
        _write(records, record_type, cfg)
    except IdentityViolation as e:
        logger.error("identity violated: %s", e)
        return 1
    except LabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        logger.error("could not write output: %s", e)
        return 1

    failed = [r for r in records if not r.passed]
    if failed:
        logger.error("%d of %d records failed", len(failed), len(records))
        return 1
    return 0


def main(argv=None):
    try:
        settings = load_settings()
    except LabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        cfg, level = parse_config(argv, settings)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    configure_logging(level)
    logger.info("running %s", cfg.subcommand)
    return dispatch(cfg)


if __name__ == '__main__':
    sys.exit(main())
