"""Command-line surface.

Five subcommands: expand (build a law, emit one representation),
density (tabulate a density series as CSV), convolve (combine two
expanded series files), classify (Diophantine evidence for a real
number certificate), verify (series vs independent oracles).

Output discipline: a single canonical JSON object per run (CSV only
for density tables), floats always %.17g, every default echoed in the
config block, no timestamps, no randomness.  Identical invocations
must produce identical bytes.

Exit codes: 0 success, 2 validation error, 3 verification failure,
4 numeric guard violation.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
import warnings
from fractions import Fraction

from . import diophantine as dio
from . import oracles, pareto, stable, transforms
from .errors import (
    CertificateError,
    DomainBranchError,
    IncompatibleSeriesError,
    InconclusiveError,
    InvalidArgumentError,
    InvalidFormError,
    InvalidModelError,
    LogTermObstructionError,
    NonConvergentReversionError,
    NormalizationError,
    NotInvertibleError,
    OutsideValidityRegionError,
    PowertailError,
    ResonanceError,
    ResourceGuardError,
    TruncationWarning,
    UnsupportedSemigroupError,
)
from .semigroup import SemigroupSpec, density_constant, exponent_grid
from .series import DEFAULT_CUTOFF, evaluate
from .transforms import FourierEvaluator, MomentSeries

FORMAT_VERSION = "powertail/1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_VERIFY_FAIL = 3
EXIT_NUMERIC_GUARD = 4

_VALIDATION_ERRORS = (
    InvalidArgumentError,
    IncompatibleSeriesError,
    InvalidFormError,
    InvalidModelError,
    NormalizationError,
    NotInvertibleError,
    CertificateError,
    UnsupportedSemigroupError,
    LogTermObstructionError,
    InconclusiveError,
)
_GUARD_ERRORS = (
    NonConvergentReversionError,
    ResourceGuardError,
    OutsideValidityRegionError,
    DomainBranchError,
    ResonanceError,
)


# -- canonical serialization ----------------------------------------------


def _fmt_float(x: float) -> str:
    if isinstance(x, float) and not math.isfinite(x):
        # JSON has no infinities; only bound columns can produce them
        return '"%s"' % repr(x)
    return "%.17g" % x


def _canon(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, dict):
        inner = ",".join("%s:%s" % (json.dumps(str(k)), _canon(v))
                         for k, v in obj.items())
        return "{%s}" % inner
    if isinstance(obj, (list, tuple)):
        return "[%s]" % ",".join(_canon(v) for v in obj)
    raise InvalidArgumentError("unserializable value of type %s" % type(obj).__name__)


def _emit(document: dict, out_path: str | None) -> None:
    text = _canon(document) + "\n"
    if out_path:
        with open(out_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(header: list[str], rows: list[list], out_path: str | None) -> None:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, float):
                cells.append("%.17g" % cell if math.isfinite(cell) else repr(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- shared helpers --------------------------------------------------------


def _default_cutoff() -> float:
    env = os.environ.get("GPS_CUTOFF")
    if env is None:
        return DEFAULT_CUTOFF
    try:
        value = float(env)
    except ValueError:
        raise InvalidArgumentError("GPS_CUTOFF must be a number, got %r" % env)
    if value <= 0:
        raise InvalidArgumentError("GPS_CUTOFF must be positive")
    return value


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise InvalidArgumentError("cannot parse %r as a complex number" % text)


def _series_records(spec: SemigroupSpec, cutoff: float, terms: dict) -> list[dict]:
    grid = exponent_grid(spec, cutoff)
    records = []
    for key in sorted(terms):
        idx = grid.index_of(key)
        counts = list(grid.reps[idx]) if idx >= 0 else []
        c = complex(terms[key])
        records.append({
            "index": counts,
            "exponent": float(key),
            "re": c.real,
            "im": c.imag,
        })
    return records


_NU_CHOICES = ("uniform", "delta1")


def _nu_moments(name: str, cutoff: float, alpha: float) -> list[float]:
    n_max = int(math.floor(cutoff / max(alpha, 1e-9))) + 1
    if name == "uniform":
        return [1.0 / (n + 1) for n in range(n_max + 1)]
    return [1.0 for n in range(n_max + 1)]


def _build_moment_law(args, cutoff: float):
    """Return (MomentSeries, extras dict) for laws with a moment form."""
    law = args.law
    extras: dict = {}
    if law == "delta0":
        return transforms.delta_zero(cutoff=cutoff), extras
    if law == "cauchy":
        m, diag = stable.classical_stable(
            stable.StableParams(alpha=1.0, b=1j), cutoff=cutoff)
        extras["membership"] = _diag_dict(diag)
        return m, extras
    if law == "arcsine":
        return stable.monotone_stable(2.0, 2.0, cutoff=cutoff), extras
    if law == "semicircle":
        return stable.free_stable(
            stable.StableParams(alpha=2.0, b=1.0 + 0j, kind=stable.StableKind.FREE),
            cutoff=cutoff), extras
    if law == "bernoulli":
        return stable.boolean_stable(
            stable.StableParams(alpha=2.0, b=1.0 + 0j,
                                kind=stable.StableKind.BOOLEAN),
            cutoff=cutoff), extras
    if law == "classical-stable":
        params = _stable_params(args)
        m, diag = stable.classical_stable(params, cutoff=cutoff)
        extras["membership"] = _diag_dict(diag)
        return m, extras
    if law == "free-stable":
        _require_param(args, "alpha")
        params = stable.StableParams(alpha=args.alpha, b=_parse_complex(args.b),
                                     kind=stable.StableKind.FREE)
        return stable.free_stable(params, cutoff=cutoff), extras
    if law == "boolean-stable":
        _require_param(args, "alpha")
        params = stable.StableParams(alpha=args.alpha, b=_parse_complex(args.b),
                                     kind=stable.StableKind.BOOLEAN)
        return stable.boolean_stable(params, cutoff=cutoff), extras
    if law == "monotone-stable":
        _require_param(args, "alpha")
        return stable.monotone_stable(args.alpha, _parse_complex(args.b),
                                      cutoff=cutoff), extras
    if law == "positive-stable":
        _require_param(args, "alpha")
        b = cmath.exp(1j * math.pi * (1.0 - args.alpha))
        m, diag = stable.classical_stable(
            stable.StableParams(alpha=args.alpha, b=b), cutoff=cutoff)
        extras["membership"] = _diag_dict(diag)
        return m, extras
    if law == "stable-mixture":
        _require_param(args, "alpha")
        nu = _nu_moments(args.nu, cutoff, args.alpha)
        m, model = stable.stable_mixture(nu, args.alpha, cutoff=cutoff)
        extras["tail_model"] = {
            "r": model.r, "R": model.R, "guard_radius": model.guard_radius}
        return m, extras
    raise InvalidArgumentError("law %r has no moment-series form" % law)


def _require_param(args, name: str) -> None:
    if getattr(args, name, None) is None:
        raise InvalidArgumentError("--%s is required for law %r"
                                   % (name.replace("_", "-"), args.law))


def _stable_params(args) -> "stable.StableParams":
    _require_param(args, "alpha")
    if args.c is not None or args.beta_hat is not None:
        if args.c is None or args.beta_hat is None:
            raise InvalidArgumentError("--c and --beta-hat must be given together")
        b = stable.scale_skew_to_b(args.alpha, args.c, args.beta_hat)
        return stable.StableParams(alpha=args.alpha, b=b,
                                   gamma_shift=args.gamma0)
    return stable.StableParams(alpha=args.alpha, b=_parse_complex(args.b),
                               gamma_shift=args.gamma0)


def _diag_dict(diag) -> dict:
    return {
        "A_coarse": diag.A_coarse,
        "A_fine": diag.A_fine,
        "relative_increase": diag.relative_increase,
        "cutoff_stable": diag.cutoff_stable,
        "note": diag.note,
    }


def _config_common(args, cutoff: float) -> dict:
    cfg = {"cutoff": cutoff, "cutoff_source":
           ("flag" if args.cutoff is not None
            else ("env:GPS_CUTOFF" if os.environ.get("GPS_CUTOFF") else "default"))}
    return cfg


# -- expand ----------------------------------------------------------------

_REPRS = ("moments", "fourier", "stieltjes", "F", "voiculescu", "tail")


def cmd_expand(args) -> int:
    cutoff = args.cutoff if args.cutoff is not None else _default_cutoff()
    cfg = {"law": args.law, "repr": args.repr}
    cfg.update(_law_param_echo(args))
    cfg.update(_config_common(args, cutoff))

    if args.law == "mu-br":
        if args.repr != "stieltjes":
            raise InvalidArgumentError(
                "mu-br is defined through its resolvent; use --repr stieltjes")
        _require_param(args, "alpha")
        _require_param(args, "r")
        S = stable.mu_br(args.alpha, _parse_complex(args.b), args.r, cutoff=cutoff)
        records = _series_records(S.spec, cutoff, S.terms)
        doc = _document("expand", cfg, {
            "representation": "stieltjes",
            "monomial": "z^(-gamma-1)",
            "generators": list(S.spec.fractional_generators),
            "records": records,
        })
        _emit(doc, args.out)
        return EXIT_OK
    if args.law == "pareto":
        if args.repr != "fourier":
            raise InvalidArgumentError("pareto expands on the Fourier side only")
        _require_param(args, "beta")
        exp = pareto.pareto_fourier(args.beta, args.R, cutoff=cutoff)
        records = _series_records(exp.regular.spec, cutoff, exp.regular.terms)
        doc = _document("expand", cfg, {
            "representation": "fourier",
            "monomial": "z^gamma",
            "generators": list(exp.regular.spec.fractional_generators),
            "records": records,
            "singular": {
                "floor_exponent": exp.singular.floor_exponent,
                "coef_floor": _cpx(exp.singular.coef_floor),
                "coef_floor_plus_one": _cpx(exp.singular.coef_floor_plus_one),
                "coef_beta": _cpx(exp.singular.coef_beta),
                "coef_log": _cpx(exp.singular.coef_log),
                "has_log_term": exp.singular.has_log_term,
            },
        })
        _emit(doc, args.out)
        return EXIT_OK

    m, extras = _build_moment_law(args, cutoff)
    body = _represent(m, args.repr, cutoff)
    body.update(extras)
    doc = _document("expand", cfg, body)
    _emit(doc, args.out)
    return EXIT_OK


def _cpx(c: complex) -> dict:
    return {"re": c.real, "im": c.imag}


def _represent(m: MomentSeries, repr_name: str, cutoff: float) -> dict:
    spec = m.spec
    if repr_name == "moments":
        terms = dict(m.terms)
        monomial = "coefficient m_gamma of z^(-gamma-1) in the resolvent"
    elif repr_name == "fourier":
        fe = FourierEvaluator(m)
        terms = dict(fe.series.terms)
        monomial = "coefficient of z^gamma, phase folded in"
    elif repr_name == "stieltjes":
        S = transforms.stieltjes_from_moments(m)
        terms = dict(S.terms)
        monomial = "z^(-gamma-1)"
    elif repr_name == "F":
        F = transforms.F_from_moments(m)
        terms = dict(F.terms)
        monomial = "z^(1-gamma), reciprocal-resolvent form"
    elif repr_name == "voiculescu":
        phi = transforms.voiculescu_from_moments(m)
        terms = dict(phi.terms)
        monomial = "z^(1-gamma), shift correction"
    elif repr_name == "tail":
        model = transforms.tail_from_moments(m)
        recs = []
        for beta in sorted(model.a):
            c = model.a[beta]
            recs.append({"exponent": float(beta), "re": c.real, "im": c.imag})
        inner = [{"n": n, "re": c.real, "im": c.imag}
                 for n, c in sorted(model.inner_moments.items())]
        return {
            "representation": "tail",
            "monomial": "a_beta |x|^(-beta-1) with the negative-side phase",
            "generators": list(spec.fractional_generators),
            "r": model.r, "R": model.R, "guard_radius": model.guard_radius,
            "records": recs, "inner_moments": inner,
        }
    else:
        raise InvalidArgumentError("unknown representation %r" % repr_name)
    return {
        "representation": repr_name,
        "monomial": monomial,
        "generators": list(spec.fractional_generators),
        "records": _series_records(spec, cutoff, terms),
    }


def _law_param_echo(args) -> dict:
    echo = {}
    for name in ("alpha", "b", "gamma0", "c", "beta_hat", "beta", "R", "r",
                 "rho", "M", "N", "d", "nu"):
        if hasattr(args, name) and getattr(args, name) is not None:
            echo[name] = getattr(args, name)
    return echo


def _document(command: str, config: dict, body: dict) -> dict:
    doc = {"format": FORMAT_VERSION, "command": command, "config": config}
    doc.update(body)
    return doc


# -- density ---------------------------------------------------------------


def _density_object(args, cutoff: float):
    _require_param(args, "alpha")
    if args.law == "positive-stable":
        return stable.positive_stable_density(args.alpha, cutoff=cutoff)
    if args.law == "supremum":
        _require_param(args, "rho")
        return _supremum_with_clamp(args)
    if args.law == "last-passage":
        _require_param(args, "d")
        return stable.last_passage_density(
            stable.LastPassageParams(alpha=args.alpha, d=args.d, M=args.M or 20))
    raise InvalidArgumentError("law %r has no density table" % args.law)


def _supremum_with_clamp(args):
    M = args.M or 12
    N = args.N or 12
    while True:
        try:
            return stable.supremum_density(
                stable.SupremumSeriesParams(alpha=args.alpha, rho=args.rho, M=M, N=N))
        except ResonanceError:
            if M <= 0 and N <= 1:
                raise
            M = max(M // 2, 0)
            N = max(N // 2, 1)
            warnings.warn(
                "resonant sine denominator; truncation clamped to M=%d N=%d"
                % (M, N), TruncationWarning, stacklevel=2)


def cmd_density(args) -> int:
    cutoff = args.cutoff if args.cutoff is not None else _default_cutoff()
    den = _density_object(args, cutoff)
    if args.points < 2 or args.x_max <= args.x_min:
        raise InvalidArgumentError("need x_max > x_min and at least 2 points")
    rows = []
    flagged = 0
    for i in range(args.points):
        x = args.x_min + (args.x_max - args.x_min) * i / (args.points - 1)
        try:
            val = complex(den.density(x))
            bound = float(den.remainder_estimate(x)) \
                if hasattr(den, "remainder_estimate") else 0.0
            rows.append([x, val.real, val.imag, bound, ""])
        except (OutsideValidityRegionError, InvalidArgumentError):
            flagged += 1
            rows.append([x, float("nan"), float("nan"), float("nan"),
                         "outside_validity"])
    _emit_csv(["x", "density_re", "density_im", "remainder_bound", "flag"],
              rows, args.out)
    if flagged:
        print("warning: %d of %d points outside the validity region"
              % (flagged, args.points), file=sys.stderr)
    return EXIT_OK


# -- convolve ---------------------------------------------------------------


_CONV_KINDS = {
    "classical": transforms.classical_convolve,
    "free": transforms.free_convolve,
    "boolean": transforms.boolean_convolve,
    "monotone": transforms.monotone_convolve,
}


def _moments_from_file(path: str) -> MomentSeries:
    try:
        with open(path, "r", encoding="ascii") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InvalidArgumentError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError("%s is not valid JSON: %s" % (path, exc))
    if doc.get("format") != FORMAT_VERSION:
        raise InvalidArgumentError(
            "%s: unsupported format %r" % (path, doc.get("format")))
    if doc.get("representation") != "moments":
        raise InvalidArgumentError(
            "%s holds a %r series; convolve needs moments"
            % (path, doc.get("representation")))
    gens = doc.get("generators", [])
    spec = SemigroupSpec.with_alphas(*gens) if gens else SemigroupSpec.natural()
    cutoff = float(doc["config"]["cutoff"])
    terms = {float(r["exponent"]): complex(r["re"], r["im"])
             for r in doc["records"]}
    return transforms.moment_series(spec, terms, cutoff=cutoff)


def cmd_convolve(args) -> int:
    cutoff = args.cutoff if args.cutoff is not None else _default_cutoff()
    if args.in_a and args.in_b:
        ma = _moments_from_file(args.in_a)
        mb = _moments_from_file(args.in_b)
        src = {"in_a": args.in_a, "in_b": args.in_b}
    elif args.law_a and args.law_b:
        ns_a = argparse.Namespace(**{**vars(args), "law": args.law_a})
        ns_b = argparse.Namespace(**{**vars(args), "law": args.law_b})
        ma, _ = _build_moment_law(ns_a, cutoff)
        mb, _ = _build_moment_law(ns_b, cutoff)
        src = {"law_a": args.law_a, "law_b": args.law_b}
    else:
        raise InvalidArgumentError(
            "give either --in-a/--in-b files or --law-a/--law-b names")
    out = _CONV_KINDS[args.kind](ma, mb)
    cfg = {"kind": args.kind}
    cfg.update(src)
    cfg.update(_config_common(args, cutoff))
    doc = _document("convolve", cfg, {
        "representation": "moments",
        "monomial": "coefficient m_gamma of z^(-gamma-1) in the resolvent",
        "generators": list(out.spec.fractional_generators),
        "records": _series_records(out.spec, out.cutoff, dict(out.terms)),
    })
    _emit(doc, args.out)
    return EXIT_OK


# -- classify ----------------------------------------------------------------


def _certificate_from_args(args) -> dio.RealCertificate:
    picked = [bool(args.cert), args.golden, args.rational is not None,
              args.float_value is not None, args.super_liouville]
    if sum(picked) != 1:
        raise InvalidArgumentError(
            "pick exactly one of --cert/--golden/--rational/--float/--super-liouville")
    if args.cert:
        return _certificate_from_file(args.cert)
    if args.golden:
        return dio.golden_ratio_certificate()
    if args.rational is not None:
        return dio.RationalCertificate(Fraction(args.rational))
    if args.float_value is not None:
        return dio.FloatCertificate(args.float_value)
    return dio.super_liouville_certificate()


def _certificate_from_file(path: str) -> dio.RealCertificate:
    try:
        with open(path, "r", encoding="ascii") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InvalidArgumentError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError("%s is not valid JSON: %s" % (path, exc))
    return _certificate_from_dict(doc)


def _certificate_from_dict(doc: dict) -> dio.RealCertificate:
    kind = doc.get("kind")
    if kind == "rational":
        return dio.RationalCertificate(Fraction(int(doc["p"]), int(doc["q"])))
    if kind == "quadratic":
        return dio.QuadraticCertificate(int(doc["P"]), int(doc["D"]), int(doc["Q"]))
    if kind == "float":
        return dio.FloatCertificate(float(doc["value"]))
    if kind == "super-liouville":
        return dio.super_liouville_certificate()
    if kind == "transform":
        base = _certificate_from_dict(doc["of"])
        op = dio.TransformOp(doc["op"])
        amount = doc.get("amount")
        if amount is not None:
            amount = Fraction(amount)
        return dio.transform_certificate(base, op, amount)
    raise CertificateError("unknown certificate kind %r" % kind)


def _apply_transform_flags(cert, transform_specs):
    for item in transform_specs or []:
        if ":" in item:
            op_name, amount_text = item.split(":", 1)
            amount = Fraction(amount_text)
        else:
            op_name, amount = item, None
        cert = dio.transform_certificate(cert, dio.TransformOp(op_name), amount)
    return cert


def cmd_classify(args) -> int:
    cert = _certificate_from_args(args)
    cert = _apply_transform_flags(cert, args.transform)
    params = dio.ClassifyParams(q_limit=args.q_limit)
    evidence = dio.classify(cert, params)
    body = {
        "certificate": cert.describe(),
        "verdict": evidence.verdict.value,
        "strongest_b": evidence.strongest_b,
        "tested_q_limit": evidence.tested_q_limit,
        "precision_limited": evidence.precision_limited,
        "notes": evidence.notes,
        "witnesses": [
            {"q": w.q, "log10_distance": w.log10_distance, "implied_b": w.implied_b}
            for w in evidence.witnesses
        ],
    }
    if args.profile:
        prof = dio.sin_growth_profile(cert, args.profile)
        body["profile"] = {
            "N": args.profile,
            "running_max_linear": prof.running_max_linear,
            "running_max_log": prof.running_max_log,
        }
    cfg = {"q_limit": args.q_limit, "profile": args.profile or 0,
           "transform": list(args.transform or [])}
    _emit(_document("classify", cfg, body), args.out)
    return EXIT_OK


# -- verify -----------------------------------------------------------------


def _check(name: str, passed: bool, discrepancy: float, tolerance: float,
           note: str = "", flag: str = "") -> dict:
    status = "pass" if passed else "fail"
    if passed and flag:
        status = "pass-with-flag"
    return {"name": name, "status": status, "discrepancy": discrepancy,
            "tolerance": tolerance, "note": note, "flag": flag}


def _verify_cauchy(cutoff: float) -> list[dict]:
    m, _ = stable.classical_stable(stable.StableParams(alpha=1.0, b=1j),
                                   cutoff=cutoff)
    checks = []
    fe = FourierEvaluator(m)
    density = oracles.IntegrableDensity(
        fn=lambda x: (1.0 / math.pi) / (1.0 + x * x),
        envelope_scale=1.0 / math.pi, envelope_exponent=1.0, envelope_start=1.0)
    z = 1.0
    series_val = complex(fe(z))
    quad_val = oracles.quadrature_fourier(density, z).value
    d = abs(series_val - quad_val)
    checks.append(_check("fourier-vs-quadrature", d <= 1e-7, d, 1e-7,
                         note="z = 1, closed form e^-1"))
    link = oracles.laplace_link_check(m, 3.0)
    checks.append(_check("laplace-link", link.discrepancy <= 1e-7,
                         link.discrepancy, 1e-7, note="y = 3"))
    S = transforms.stieltjes_from_moments(m)
    dens = oracles.stieltjes_inversion(
        lambda zz: complex(evaluate(S, zz)), 5.0)
    d = abs(dens - 1.0 / (26.0 * math.pi))
    checks.append(_check("stieltjes-inversion", d <= 1e-7, d, 1e-7,
                         note="x = 5 vs 1/(26 pi)"))
    return checks


def _verify_delta0(cutoff: float) -> list[dict]:
    m = transforms.delta_zero(cutoff=cutoff)
    fe = FourierEvaluator(m)
    d = abs(complex(fe(1.0)) - 1.0)
    checks = [_check("unit-mass", d <= 1e-12, d, 1e-12)]
    link = oracles.laplace_link_check(m, 5.0)
    checks.append(_check("laplace-link", link.discrepancy <= 1e-9,
                         link.discrepancy, 1e-9, note="y = 5, both sides 1/5"))
    return checks


def _verify_classical_stable(args, cutoff: float) -> list[dict]:
    params = _stable_params(args)
    m, diag = stable.classical_stable(params, cutoff=cutoff)
    checks = []
    if params.alpha <= 1.0:
        ok = diag.cutoff_stable
        checks.append(_check(
            "membership-dichotomy", ok, diag.relative_increase, 0.05,
            note="alpha <= 1: coefficient growth must stabilize under "
                 "cutoff doubling"))
        A = FourierEvaluator(m).growth.A
        c = density_constant(m.spec, int(math.ceil(cutoff)))
        y = 2.5 * max(c * A, 0.4)
        link = oracles.laplace_link_check(m, y)
        checks.append(_check("laplace-link", link.discrepancy <= 1e-6,
                             link.discrepancy, 1e-6, note="y = %.17g" % y))
    else:
        unstable = not diag.cutoff_stable
        checks.append(_check(
            "membership-dichotomy", unstable, diag.relative_increase, 0.05,
            note="alpha > 1: growth must NOT stabilize (law outside the "
                 "expandable class)",
            flag="growth-instability-expected" if unstable else ""))
    return checks


def _verify_pareto(args, cutoff: float) -> list[dict]:
    exp = pareto.pareto_fourier(args.beta, args.R, cutoff=cutoff)
    checks = []
    for z in (0.05, 0.3):
        series_val = exp.evaluate(z)
        oracle = oracles.rotated_pareto_transform(exp.beta, args.R, z)
        rel = abs(series_val - oracle.value) / max(abs(oracle.value), 1e-300)
        checks.append(_check("expansion-vs-quadrature-z%g" % z,
                             rel <= 1e-8, rel, 1e-8, note="relative error"))
    has_log = exp.singular.has_log_term
    is_int = float(exp.beta).is_integer()
    checks.append(_check(
        "log-term-detection", has_log == is_int,
        0.0 if has_log == is_int else 1.0, 0.0,
        note=("log term present: the one-sided tail is not expandable in "
              "pure powers" if has_log else "no log obstruction"),
        flag="log-term-present" if has_log else ""))
    return checks


def _verify_self_similarity(args, cutoff: float) -> list[dict]:
    kind = args.law.split("-")[0]
    conv = {"free": transforms.free_convolve, "boolean": transforms.boolean_convolve,
            "monotone": transforms.monotone_convolve}[kind]
    b = _parse_complex(args.b)
    if kind == "free":
        m = stable.free_stable(
            stable.StableParams(alpha=args.alpha, b=b, kind=stable.StableKind.FREE),
            cutoff=cutoff)
    elif kind == "boolean":
        m = stable.boolean_stable(
            stable.StableParams(alpha=args.alpha, b=b,
                                kind=stable.StableKind.BOOLEAN),
            cutoff=cutoff)
    else:
        m = stable.monotone_stable(args.alpha, b, cutoff=cutoff)
    doubled = conv(m, m)
    if kind == "free":
        m2 = stable.free_stable(
            stable.StableParams(alpha=args.alpha, b=2.0 * b,
                                kind=stable.StableKind.FREE), cutoff=cutoff)
    elif kind == "boolean":
        m2 = stable.boolean_stable(
            stable.StableParams(alpha=args.alpha, b=2.0 * b,
                                kind=stable.StableKind.BOOLEAN), cutoff=cutoff)
    else:
        m2 = stable.monotone_stable(args.alpha, 2.0 * b, cutoff=cutoff)
    worst = 0.0
    for gamma in set(doubled.terms) | set(m2.terms):
        c, expect = doubled.terms.get(gamma, 0j), m2.terms.get(gamma, 0j)
        worst = max(worst, abs(c - expect) / max(1.0, abs(expect)))
    return [_check("self-similarity", worst <= 1e-8, worst, 1e-8,
                   note="own convolution equals the law with b doubled "
                        "(dilation by 2^(1/alpha))")]


def _verify_positive_stable(args, cutoff: float) -> list[dict]:
    den = stable.positive_stable_density(args.alpha, cutoff=cutoff)
    b = cmath.exp(1j * math.pi * (1.0 - args.alpha))
    m, _ = stable.classical_stable(stable.StableParams(alpha=args.alpha, b=b),
                                   cutoff=cutoff)
    S = transforms.stieltjes_from_moments(m)
    x = max(4.0, 1.5 * den.x_min)
    inv = oracles.stieltjes_inversion(lambda zz: complex(evaluate(S, zz)), x)
    series_val = complex(den.density(x)).real
    d = abs(inv - series_val) / max(abs(series_val), 1e-300)
    return [_check("density-vs-inversion", d <= 1e-5, d, 1e-5,
                   note="x = %.17g, relative" % x)]


def _verify_mixture(args, cutoff: float) -> list[dict]:
    nu = _nu_moments(args.nu, cutoff, args.alpha)
    m, _ = stable.stable_mixture(nu, args.alpha, cutoff=cutoff)
    A = FourierEvaluator(m).growth.A
    c = density_constant(m.spec, int(math.ceil(cutoff)))
    y = 2.5 * max(c * A, 0.4)
    link = oracles.laplace_link_check(m, y)
    return [_check("laplace-link", link.discrepancy <= 1e-6, link.discrepancy,
                   1e-6, note="y = %.17g" % y)]


def _verify_supremum(args, cutoff: float) -> list[dict]:
    # resonant alpha/rho raise here and surface as a numeric-guard exit:
    # a truncation-doubling check is meaningless at clamped orders
    d_small = stable.supremum_density(
        stable.SupremumSeriesParams(alpha=args.alpha, rho=args.rho, M=12, N=12))
    d_big = stable.supremum_density(
        stable.SupremumSeriesParams(alpha=args.alpha, rho=args.rho, M=24, N=24))
    x = 5.0 * max(d_small.x_min, d_big.x_min)
    a = complex(d_small.density(x))
    bb = complex(d_big.density(x))
    d = abs(a - bb) / max(abs(bb), 1e-300)
    return [_check("truncation-doubling", d <= 1e-8, d, 1e-8,
                   note="x = %.17g, relative" % x)]


def _verify_last_passage(args, cutoff: float) -> list[dict]:
    M = args.M or 20
    d_small = stable.last_passage_density(
        stable.LastPassageParams(alpha=args.alpha, d=args.d, M=M // 2))
    d_big = stable.last_passage_density(
        stable.LastPassageParams(alpha=args.alpha, d=args.d, M=M))
    t = 2.0 * max(d_small.t_min, d_big.t_min)
    a = complex(d_small.density(t))
    bb = complex(d_big.density(t))
    gap = abs(a - bb) / max(abs(bb), 1e-300)
    return [_check("truncation-doubling", gap <= 1e-8, gap, 1e-8,
                   note="t = %.17g, relative" % t)]


def _verify_mu_br(args, cutoff: float) -> list[dict]:
    S = stable.mu_br(args.alpha, _parse_complex(args.b), args.r, cutoff=cutoff)
    d0 = S.terms.get(0.0)
    checks = [_check("unit-leading-coefficient", d0 == 1.0 + 0j,
                     abs((d0 or 0) - 1.0), 0.0,
                     note="resolvent must start at exactly 1/z")]
    z = complex(40.0, -30.0)
    val = complex(evaluate(S, z))
    d = abs(z * val - 1.0)
    checks.append(_check("resolvent-decay", d <= 0.1, d, 0.1,
                         note="z G(z) -> 1 far from the spectrum"))
    return checks


_VERIFY_REQUIRED = {
    "classical-stable": ("alpha",),
    "free-stable": ("alpha",),
    "boolean-stable": ("alpha",),
    "monotone-stable": ("alpha",),
    "positive-stable": ("alpha",),
    "stable-mixture": ("alpha",),
    "supremum": ("alpha", "rho"),
    "last-passage": ("alpha", "d"),
    "mu-br": ("alpha", "r"),
    "pareto": ("beta",),
}


def cmd_verify(args) -> int:
    cutoff = args.cutoff if args.cutoff is not None else _default_cutoff()
    law = args.law
    for name in _VERIFY_REQUIRED.get(law, ()):
        _require_param(args, name)
    if law == "cauchy":
        checks = _verify_cauchy(cutoff)
    elif law == "delta0":
        checks = _verify_delta0(cutoff)
    elif law == "classical-stable":
        checks = _verify_classical_stable(args, cutoff)
    elif law == "pareto":
        checks = _verify_pareto(args, cutoff)
    elif law in ("free-stable", "boolean-stable", "monotone-stable"):
        checks = _verify_self_similarity(args, cutoff)
    elif law == "positive-stable":
        checks = _verify_positive_stable(args, cutoff)
    elif law == "stable-mixture":
        checks = _verify_mixture(args, cutoff)
    elif law == "supremum":
        checks = _verify_supremum(args, cutoff)
    elif law == "last-passage":
        checks = _verify_last_passage(args, cutoff)
    elif law == "mu-br":
        checks = _verify_mu_br(args, cutoff)
    else:
        raise InvalidArgumentError("no verification suite for law %r" % law)
    cfg = {"law": law}
    cfg.update(_law_param_echo(args))
    cfg.update(_config_common(args, cutoff))
    failed = [c for c in checks if c["status"] == "fail"]
    doc = _document("verify", cfg, {
        "checks": checks,
        "passed": len(checks) - len(failed),
        "failed": len(failed),
    })
    _emit(doc, args.out)
    return EXIT_VERIFY_FAIL if failed else EXIT_OK


# -- argument parsing --------------------------------------------------------


_LAWS = ("delta0", "cauchy", "arcsine", "semicircle", "bernoulli",
         "classical-stable", "free-stable", "boolean-stable", "monotone-stable",
         "positive-stable", "stable-mixture", "supremum", "last-passage",
         "mu-br", "pareto")


def _add_law_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=None,
                   help="stability index in (0, 2]")
    p.add_argument("--b", type=str, default="1",
                   help="complex coefficient, e.g. '1', '1j', '0.5+0.5j'")
    p.add_argument("--gamma0", type=float, default=0.0,
                   help="real location shift for classical stable laws")
    p.add_argument("--c", type=float, default=None,
                   help="scale parameter (with --beta-hat)")
    p.add_argument("--beta-hat", dest="beta_hat", type=float, default=None,
                   help="skewness in [-1, 1] (with --c)")
    p.add_argument("--beta", type=float, default=None, help="tail exponent")
    p.add_argument("--R", type=float, default=1.0, help="tail start")
    p.add_argument("--r", type=float, default=None, help="deformation order >= 1")
    p.add_argument("--rho", type=float, default=None,
                   help="positivity parameter in (0, 1)")
    p.add_argument("--M", type=int, default=None, help="first truncation order")
    p.add_argument("--N", type=int, default=None, help="second truncation order")
    p.add_argument("--d", type=int, default=None, help="space dimension")
    p.add_argument("--nu", choices=_NU_CHOICES, default="uniform",
                   help="mixing moment sequence for stable-mixture")
    p.add_argument("--cutoff", type=float, default=None,
                   help="exponent cutoff (default 20, or GPS_CUTOFF)")
    p.add_argument("--out", type=str, default=None, help="output file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="powertail",
        description="power-series calculus for heavy-tailed laws on "
                    "exponent semigroups")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="emit one representation of a law")
    p.add_argument("--law", choices=_LAWS, required=True)
    p.add_argument("--repr", choices=_REPRS, default="moments")
    _add_law_params(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("density", help="tabulate a density series as CSV")
    p.add_argument("--law", choices=("positive-stable", "supremum", "last-passage"),
                   required=True)
    p.add_argument("--x-min", dest="x_min", type=float, required=True)
    p.add_argument("--x-max", dest="x_max", type=float, required=True)
    p.add_argument("--points", type=int, default=100)
    _add_law_params(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("convolve", help="convolve two moment series")
    p.add_argument("--kind", choices=tuple(_CONV_KINDS), required=True)
    p.add_argument("--in-a", dest="in_a", type=str, default=None)
    p.add_argument("--in-b", dest="in_b", type=str, default=None)
    p.add_argument("--law-a", dest="law_a", choices=_LAWS, default=None)
    p.add_argument("--law-b", dest="law_b", choices=_LAWS, default=None)
    _add_law_params(p)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("classify", help="Diophantine evidence for a real number")
    p.add_argument("--cert", type=str, default=None,
                   help="JSON certificate file")
    p.add_argument("--golden", action="store_true")
    p.add_argument("--rational", type=str, default=None, help="p/q")
    p.add_argument("--float", dest="float_value", type=float, default=None)
    p.add_argument("--super-liouville", dest="super_liouville",
                   action="store_true")
    p.add_argument("--transform", action="append", default=None,
                   metavar="OP[:AMOUNT]",
                   help="scale:Q, shift:Q, or invert; repeatable, applied in order")
    p.add_argument("--profile", type=int, default=None,
                   help="also compute the sine growth profile up to N")
    p.add_argument("--q-limit", dest="q_limit", type=int, default=10 ** 5)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check a law against independent oracles")
    p.add_argument("--law", choices=_LAWS, required=True)
    _add_law_params(p)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else 0
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION
    except _GUARD_ERRORS as exc:
        print("numeric guard: %s" % exc, file=sys.stderr)
        return EXIT_NUMERIC_GUARD
    except PowertailError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
