"""Command-line front end: job parsing, pipeline orchestration, reports.

A job is a small declaration file (or stdin) naming the variables, an
optional monomial order and mode, then one polynomial per line after a
``polys:`` marker.  Flags override file declarations.  Reports come in a
stable text form or as a schema-versioned JSON document
(``artinlab-report/1``); identical jobs produce byte-identical JSON.

Exit codes: 0 success, 2 parse error, 3 infinite-dimensional quotient,
4 irrational points, 5 non-isolated singularity, 6 internal invariant
violation, 130 cancelled.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import criteria as crit
from .artin import from_groebner, socle_data
from .errors import (
    AmbientMismatchError,
    ArtinlabError,
    CancelledError,
    IncompletePointsError,
    InfiniteDimensionalError,
    InternalInvariantError,
    NonIsolatedSingularityError,
    ParseError,
)
from .groebner import (
    Ideal,
    buchberger,
    is_finite_dimensional,
    local_component,
    min_power_of_maximal_inside,
    quotient_dimension,
    rational_points,
    standard_monomials,
)
from .liealg import (
    all_nilpotent,
    compute_derivations,
    series,
    socle_bound_check,
    unipotent_subgroup_dim,
)
from .poly import MonomialOrder, Polynomial, VarSet, parse as parse_poly
from .singular import moduli_algebra, splitting_normal_form, yau_report

SCHEMA = "artinlab-report/1"
MODES = ("analyze", "moduli", "groebner", "derivations", "split")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFINITE = 3
EXIT_IRRATIONAL = 4
EXIT_NON_ISOLATED = 5
EXIT_INTERNAL = 6
EXIT_CANCELLED = 130


@dataclass
class JobSpec:
    variables: tuple
    mode: str = "analyze"
    polynomials: tuple = ()
    order_kind: str = "degrevlex"
    order_priority: tuple | None = None
    truncation_cap: int = 50
    fmt: str = "text"

    def varset(self) -> VarSet:
        return VarSet(self.variables)

    def order(self) -> MonomialOrder:
        return MonomialOrder.for_varset(
            self.varset(), self.order_kind, self.order_priority
        )


@dataclass(frozen=True)
class Report:
    data: dict

    def __getitem__(self, key):
        return self.data[key]


def parse_job_text(text: str) -> dict:
    """Declaration block (key: value lines) then `polys:` and one
    polynomial per line; `#` starts a comment."""
    decls: dict = {}
    polys: list[str] = []
    in_polys = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_polys:
            polys.append(line)
            continue
        if line == "polys:":
            in_polys = True
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        decls[key.strip().lower()] = value.strip()
    decls["polys"] = polys
    return decls


def _parse_order_option(text: str):
    kind, _, prio = text.partition(":")
    kind = kind.strip()
    if kind not in MonomialOrder.KINDS:
        raise ParseError(f"unknown order {kind!r}")
    priority = tuple(p.strip() for p in prio.split(",") if p.strip()) or None
    return kind, priority


def job_from_sources(file_text: str | None, args) -> JobSpec:
    decls = parse_job_text(file_text) if file_text is not None else {"polys": []}
    variables = None
    if decls.get("vars"):
        variables = tuple(v.strip() for v in decls["vars"].split(",") if v.strip())
    if args.vars:
        variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if not variables:
        raise ParseError("no variables declared (use 'vars:' or --vars)")
    kind, priority = "degrevlex", None
    if decls.get("order"):
        kind, priority = _parse_order_option(decls["order"])
    if args.order:
        kind, priority = _parse_order_option(args.order)
    mode = decls.get("mode", "analyze")
    if args.mode:
        mode = args.mode
    if mode not in MODES:
        raise ParseError(f"unknown mode {mode!r}")
    cap = 50
    if decls.get("truncation-cap"):
        cap = int(decls["truncation-cap"])
    if args.truncation_cap is not None:
        cap = args.truncation_cap
    fmt = decls.get("format", "text")
    if args.format:
        fmt = args.format
    if fmt not in ("text", "structured"):
        raise ParseError(f"unknown format {fmt!r}")
    polys = tuple(decls["polys"])
    if not polys:
        raise ParseError("no polynomials given after 'polys:'")
    if mode in ("moduli", "split") and len(polys) != 1:
        raise ParseError(f"mode {mode!r} takes exactly one polynomial")
    return JobSpec(
        variables=variables,
        mode=mode,
        polynomials=polys,
        order_kind=kind,
        order_priority=priority,
        truncation_cap=cap,
        fmt=fmt,
    )


# pipeline ----------------------------------------------------------------


def _frs(x) -> str:
    return str(Fraction(x))


def _component_block(ideal: Ideal, point, order) -> dict:
    comp = crit.component_criteria(ideal, point, order)
    alg = comp.algebra
    rep = compute_derivations(alg)
    ser = series(rep)
    block = {
        "point": [_frs(a) for a in point],
        "dim": alg.dim,
        "l": comp.l,
        "min_gens": comp.min_gens,
        "schulze": comp.schulze,
        "extremal": comp.extremal,
        "narrow_gr": comp.narrow_gr,
        "narrow_verdict": comp.narrow_verdict,
        "dim_der": rep.dimension,
        "solvable": "solvable" if ser.solvable else "non-solvable",
        "nilpotent": ser.nilpotent,
        "tangent_unipotent": ser.all_nilpotent_operators,
        "derived_dims": list(ser.derived_dims),
        "lower_central_dims": list(ser.lower_central_dims),
        "nilpotency_exponent": alg.nilpotency_exponent,
        "socle": None,
        "bounds": None,
    }
    if alg.dim >= 2:
        sd = socle_data(alg)
        bound = socle_bound_check(alg, rep)
        uni = unipotent_subgroup_dim(alg, rep)
        block["socle"] = {
            "dim": sd.socle.dim,
            "lower": sd.lsoc.dim,
            "upper": sd.usoc.dim,
        }
        block["bounds"] = {
            "socle_product": bound.product_bound,
            "socle_bound_holds": bound.bound_holds,
            "dim_der_positive": bound.positive_when_nontrivial,
            "unipotent_dim": uni.dim_u,
            "unipotent_bound_holds": rep.dimension >= uni.dim_u,
            "unipotent_members_ok": uni.all_members,
        }
    return block


def run(job: JobSpec, cancel=None) -> Report:
    """Full pipeline for the job's mode; deterministic output."""
    vs = job.varset()
    order = job.order()
    polys = [parse_poly(t, vs) for t in job.polynomials]
    data: dict = {
        "schema": SCHEMA,
        "input": {
            "vars": list(job.variables),
            "order": job.order_kind
            + ("" if not job.order_priority else ":" + ",".join(job.order_priority)),
            "mode": job.mode,
            "polynomials": [str(p) for p in polys],
            "truncation_cap": job.truncation_cap,
        },
    }
    if job.mode == "groebner":
        gb = buchberger(Ideal(vs, polys), order)
        finite = is_finite_dimensional(gb)
        data["groebner"] = {
            "elements": [str(g) for g in gb.elements],
            "finite_dimensional": finite,
            "dim": quotient_dimension(gb) if finite else None,
            "min_power_of_maximal": (
                min_power_of_maximal_inside(gb)
                if finite and quotient_dimension(gb) > 0
                else None
            ),
        }
        return Report(data)
    if job.mode == "split":
        p = polys[0]
        trunc = max(3, job.truncation_cap)
        sp = splitting_normal_form(p, trunc)
        data["split"] = {
            "rank": sp.rank,
            "lambdas": [_frs(x) for x in sp.lambdas],
            "split_vars": list(sp.split_vars),
            "residual": str(sp.residual) if sp.residual is not None else None,
            "change": {k: str(v) for k, v in sorted(sp.change.items())},
            "truncation": sp.truncation,
        }
        return Report(data)
    if job.mode == "moduli":
        p = polys[0]
        rep = yau_report(p, cap=job.truncation_cap, cancel=cancel)
        qh = rep.moduli.quasi_homogeneous
        data["singularity"] = {
            "tjurina": rep.moduli.tjurina,
            "milnor": rep.moduli.milnor,
            "quasi_homogeneous": (
                list(qh.weights) + [qh.degree] if qh is not None else None
            ),
            "p_in_jacobian": rep.p_in_jacobian,
            "split_rank": rep.split_rank,
            "residual": str(rep.residual) if rep.residual is not None else None,
            "residual_tjurina": rep.residual_tjurina,
            "schulze": rep.schulze.verdict if rep.schulze else "solvable",
            "narrow_gr": rep.narrow_gr,
            "dim_der": rep.dim_der,
            "yau_solvable": "solvable" if rep.solvable else "non-solvable",
        }
        data["dim"] = rep.moduli.tjurina
        data["local"] = True
        return Report(data)
    ideal = Ideal(vs, polys)
    gb = buchberger(ideal, order)
    if not is_finite_dimensional(gb):
        raise InfiniteDimensionalError(
            "quotient algebra is not finite-dimensional for this ideal"
        )
    dim_total = quotient_dimension(gb)
    if job.mode == "derivations":
        alg = from_groebner(gb)
        rep = compute_derivations(alg)
        ser = series(rep)
        data["dim"] = alg.dim
        data["local"] = alg.local
        data["derivations"] = {
            "dim_der": rep.dimension,
            "derived_dims": list(ser.derived_dims),
            "lower_central_dims": list(ser.lower_central_dims),
            "solvable": "solvable" if ser.solvable else "non-solvable",
            "nilpotent": ser.nilpotent,
            "tangent_unipotent": ser.all_nilpotent_operators,
            "operators": [
                [[_frs(x) for x in row] for row in op.entries]
                for op in rep.basis_operators
            ],
        }
        return Report(data)
    # analyze
    pts = rational_points(ideal, order)
    if not pts.complete:
        raise IncompletePointsError(pts.failed_variable)
    components = [_component_block(ideal, p, order) for p in pts.points]
    ci = crit.complete_intersection_check(ideal, order)
    data["dim"] = dim_total
    data["local"] = len(pts.points) == 1 and all(
        Fraction(a) == 0 for a in pts.points[0]
    )
    data["complete_intersection"] = ci
    # the per-component answer is the direct derivation-series decision,
    # so the aggregate verdict here is definitive, not one-sided
    data["verdict"] = (
        "solvable"
        if all(c["solvable"] == "solvable" for c in components)
        else "non-solvable"
    )
    data["components"] = components
    return Report(data)


# serialization -------------------------------------------------------------


def serialize(report: Report, fmt: str = "structured") -> bytes:
    if fmt == "structured":
        return (
            json.dumps(report.data, indent=2, sort_keys=True, ensure_ascii=True)
            + "\n"
        ).encode()
    return _text_report(report).encode()


def deserialize(blob: bytes) -> Report:
    data = json.loads(blob.decode())
    if data.get("schema") != SCHEMA:
        raise ParseError(f"unknown schema {data.get('schema')!r}")
    return Report(data)


def _text_report(report: Report) -> str:
    d = report.data
    out = [f"artinlab report ({d['schema']})"]
    inp = d["input"]
    out.append(f"mode: {inp['mode']}")
    out.append(f"vars: {', '.join(inp['vars'])}   order: {inp['order']}")
    out.append("polynomials: " + "; ".join(inp["polynomials"]))
    if "dim" in d:
        locality = "local" if d.get("local") else "non-local"
        out.append(f"dim S = {d['dim']} ({locality})")
    if "groebner" in d:
        g = d["groebner"]
        out.append("groebner basis:")
        for e in g["elements"]:
            out.append(f"  {e}")
        out.append(
            f"finite-dimensional: {_yn(g['finite_dimensional'])}"
            + (f"   dim = {g['dim']}" if g["dim"] is not None else "")
        )
        if g.get("min_power_of_maximal") is not None:
            out.append(f"maximal ideal power inside: {g['min_power_of_maximal']}")
    if "split" in d:
        s = d["split"]
        out.append(
            f"split rank {s['rank']}, lambdas [{', '.join(s['lambdas'])}], "
            f"split vars [{', '.join(s['split_vars'])}]"
        )
        out.append(f"residual: {s['residual']}")
        for k, v in s["change"].items():
            out.append(f"  {k} -> {v}")
    if "singularity" in d:
        s = d["singularity"]
        out.append(
            f"tjurina = {s['tjurina']}   milnor = {s['milnor']}"
        )
        qh = s["quasi_homogeneous"]
        out.append(
            "quasi-homogeneous: "
            + (f"weights {qh[:-1]} degree {qh[-1]}" if qh else "no")
        )
        if s["p_in_jacobian"] is not None:
            out.append(f"p in jacobian ideal: {_yn(s['p_in_jacobian'])}")
        out.append(
            f"moduli criteria: generator-count {s['schulze']}, "
            f"narrow {_yn(s['narrow_gr'])}"
        )
        out.append(f"dim Der = {s['dim_der']}   verdict: {s['yau_solvable']}")
    if "derivations" in d:
        v = d["derivations"]
        out.append(
            f"dim Der = {v['dim_der']}   {v['solvable']}   "
            f"nilpotent: {_yn(v['nilpotent'])}   "
            f"tangent-unipotent: {_yn(v['tangent_unipotent'])}"
        )
        out.append("derived dims: " + " ".join(map(str, v["derived_dims"])))
    if "components" in d:
        out.append(f"complete intersection: {_yn(d['complete_intersection'])}")
        out.append(f"verdict: {d['verdict']}")
        for c in d["components"]:
            out.append(f"component at ({', '.join(c['point'])}): dim {c['dim']}")
            if c["l"] is not None:
                out.append(
                    f"  l = {c['l']}   min_gens = {c['min_gens']}   "
                    f"schulze = {c['schulze']}   extremal: {_yn(c['extremal'])}"
                )
            out.append(
                f"  narrow: {_yn(c['narrow_gr'])} -> {c['narrow_verdict']}"
            )
            out.append(
                f"  dim Der = {c['dim_der']}   {c['solvable']}   "
                f"nilpotent: {_yn(c['nilpotent'])}   "
                f"tangent-unipotent: {_yn(c['tangent_unipotent'])}"
            )
            out.append("  derived dims: " + " ".join(map(str, c["derived_dims"])))
            if c["socle"]:
                s = c["socle"]
                out.append(
                    f"  socle: dim {s['dim']} (lower {s['lower']}, upper {s['upper']})"
                )
            if c["bounds"]:
                b = c["bounds"]
                out.append(
                    f"  bounds: der >= emb*soc ({c['dim_der']} >= "
                    f"{b['socle_product']}): {_ok(b['socle_bound_holds'])}; "
                    f"unipotent dim {b['unipotent_dim']}: "
                    f"{_ok(b['unipotent_bound_holds'])}; "
                    f"members: {_ok(b['unipotent_members_ok'])}"
                )
    return "\n".join(out) + "\n"


def _yn(b) -> str:
    return "yes" if b else "no"


def _ok(b) -> str:
    return "ok" if b else "VIOLATED"


# entry point ----------------------------------------------------------------


def _find_fixture(name: str) -> Path:
    cand = Path("fixtures") / f"{name}.job"
    if cand.exists():
        return cand
    p = Path(name)
    if p.exists():
        return p
    raise ParseError(f"fixture {name!r} not found (looked for {cand})")


class _CancelFlag:
    def __init__(self):
        self._cancelled = False

    def set(self, *_):
        self._cancelled = True

    def __call__(self):
        return self._cancelled


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="artinlab",
        description="Exact solvability analysis of finite-dimensional "
        "quotient algebras and isolated hypersurface singularities.",
    )
    ap.add_argument("input", nargs="?", help="job file, or - for stdin")
    ap.add_argument("--vars", help="comma-separated variable names")
    ap.add_argument("--order", help="lex|deglex|degrevlex[:priority,...]")
    ap.add_argument("--mode", choices=MODES)
    ap.add_argument("--format", choices=("text", "structured"))
    ap.add_argument("--truncation-cap", type=int, default=None)
    ap.add_argument("--fixture", help="named job under ./fixtures")
    args = ap.parse_args(argv)
    cancel = _CancelFlag()
    try:
        signal.signal(signal.SIGINT, cancel.set)
    except ValueError:
        pass  # not the main thread
    try:
        if args.fixture:
            text = _find_fixture(args.fixture).read_text()
        elif args.input == "-" or args.input is None:
            text = sys.stdin.read()
        else:
            path = Path(args.input)
            if not path.exists():
                raise ParseError(f"input file {args.input!r} not found")
            text = path.read_text()
        job = job_from_sources(text, args)
        report = run(job, cancel=cancel)
        sys.stdout.write(serialize(report, job.fmt).decode())
        return EXIT_OK
    except ParseError as e:
        print(f"artinlab: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except AmbientMismatchError as e:
        print(f"artinlab: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InfiniteDimensionalError as e:
        print(f"artinlab: {e}", file=sys.stderr)
        return EXIT_INFINITE
    except IncompletePointsError as e:
        print(f"artinlab: {e}", file=sys.stderr)
        return EXIT_IRRATIONAL
    except NonIsolatedSingularityError as e:
        print(f"artinlab: {e}", file=sys.stderr)
        return EXIT_NON_ISOLATED
    except CancelledError:
        print("artinlab: cancelled", file=sys.stderr)
        return EXIT_CANCELLED
    except InternalInvariantError as e:
        print(f"artinlab: internal invariant violation: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except ArtinlabError as e:
        print(f"artinlab: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        print(f"artinlab: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
