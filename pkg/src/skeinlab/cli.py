"""``skein-lab`` command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a checked invariant failed,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import jsonschema
import numpy as np

from . import bracket, charvar, exactalg, io, qrep, shadow, skein_pt, traintrack

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INVARIANT = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class InvariantFailure(Exception):
    pass


_INVALID = (
    bracket.MalformedPD, bracket.SchemaError, bracket.CapacityError,
    traintrack.SchemaError, traintrack.EulerMismatch, traintrack.SelfLoopEdge,
    traintrack.TrackMismatch, charvar.NotCoprime, charvar.LengthMismatch,
    shadow.UnsupportedCurve, shadow.NonGeneric, shadow.ZeroWeight,
    qrep.EvenN, qrep.ZeroScalar, jsonschema.ValidationError, json.JSONDecodeError,
    FileNotFoundError, ValueError,
)
_INVARIANT = (
    InvariantFailure, shadow.ConventionMismatch, shadow.NonScalar, shadow.SearchExhausted,
    qrep.NormalFormFailure, qrep.NotScalar, traintrack.RankMismatch,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SKEINLAB_THREADS", "1")))
    except ValueError:
        return 1


def _root(text: str | None):
    if not text:
        return None
    try:
        parts = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--at-root expects N,k, got {text!r}") from exc
    if len(parts) == 1:
        parts.append(1)
    return exactalg.RootOfUnity(parts[0], parts[1])


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.replace("[", "").replace("]", "").split(",") if v.strip()]


def _cplx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _emit(args, command, result, inputs=(), seed=None, ok=True):
    env = io.envelope(command, result, inputs, seed, ok)
    text = io.dumps(env)
    if getattr(args, "report", None):
        Path(args.report).write_text(text)
    return env


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


# -- subcommands ------------------------------------------------------------------

def cmd_bracket(args):
    data = _load_json(args.file)
    io.validate(data, "pd")
    d = bracket.parse_pd(data, require_planar=not args.allow_nonplanar)
    value = bracket.kauffman_bracket(d)
    root = _root(args.at_root)
    if root is None:
        print(repr(value))
        result = {"bracket": value.to_json(), "text": repr(value)}
    else:
        z = exactalg.eval_at_root(value, root)
        print(f"{z.real:.12g}{z.imag:+.12g}j")
        result = {"bracket": value.to_json(), "at_root": [root.N, root.k], "value": _cplx(z)}
    _emit(args, "bracket", result, [args.file])
    return EXIT_OK


def cmd_cheb(args):
    if args.n < 0:
        raise UsageError("n must be non-negative")
    poly = exactalg.chebyshev(args.n)
    print(str(poly))
    _emit(args, "cheb", {"n": args.n, "coeffs": list(poly.coeffs), "text": str(poly)})
    return EXIT_OK


def cmd_charvar(args):
    data = _load_json(args.rep)
    io.validate(data, "sl2rep")
    r = charvar.SL2Rep.from_json(data)
    if args.action == "trace":
        if not args.word:
            raise UsageError("charvar trace needs --word")
        value = charvar.trace_word(args.word, r)
        result = {"word": args.word, "trace": _cplx(value)}
    else:
        if args.p is None or args.q is None:
            raise UsageError("charvar fricke needs --p and --q")
        value = charvar.fricke_trace(args.p, args.q, r)
        word = charvar.christoffel_word(args.p, args.q)
        check = charvar.trace_word(word, r)
        if abs(value - check) > 1e-8 * max(1.0, abs(check)):
            raise InvariantFailure("Farey recursion disagrees with the explicit word")
        result = {"p": args.p, "q": args.q, "trace": _cplx(value), "word": str(word)}
    print(f"{value.real:.12g}{value.imag:+.12g}j")
    _emit(args, f"charvar {args.action}", result, [args.rep])
    return EXIT_OK


def cmd_skein(args):
    if args.action == "nf":
        if not args.expr:
            raise UsageError("skein nf needs an expression")
        el = skein_pt.parse_expression(args.expr)
        root = _root(args.at_root)
        if root is None:
            text = repr(el)
            terms = {f"{a},{b},{c}": coef.to_json() for (a, b, c), coef in sorted(el.terms.items())}
        else:
            terms = {f"{a},{b},{c}": _cplx(exactalg.eval_at_root(coef, root))
                     for (a, b, c), coef in sorted(el.terms.items())}
            text = json.dumps(terms, sort_keys=True)
        print(text)
        _emit(args, "skein nf", {"expr": args.expr, "normal_form": terms})
        return EXIT_OK
    Ns = _ints(args.N) if args.N else [3, 5, 7]
    by_order = {}
    ok = True
    gens = {1: skein_pt.X1, 2: skein_pt.X2, 3: skein_pt.X3}
    for N in Ns:
        if N % 2 == 0 or N < 3:
            raise ValueError(f"N={N} must be odd and >= 3")
        table = {}
        for j, xj in gens.items():
            tj = skein_pt.chebyshev_of(N, xj)
            for k, xk in gens.items():
                norm = skein_pt.commutator_at_root(tj, xk, N)
                table[f"T{N}(X{j}),X{k}"] = norm
                ok &= norm == 0
        by_order[str(N)] = table
    closed = skein_pt.closed_torus_central_check()
    result = {"chebyshev_centrality": by_order, "closed_torus": closed}
    print(json.dumps({"chebyshev_central": ok,
                      "verbatim_central": closed["verbatim"]["central"],
                      "symmetric_central": closed["symmetric_variant"]["central"]},
                     sort_keys=True))
    _emit(args, "skein central", result, ok=ok)
    return EXIT_OK if ok else EXIT_INVARIANT


def _track(path):
    data = _load_json(path)
    io.validate(data, "triangulation")
    T = traintrack.load_triangulation(data, name=str(path))
    return T, traintrack.build_train_track(T)


def cmd_tt(args):
    T, tt = _track(args.file)
    if args.action == "basis":
        basis = traintrack.weight_basis(tt)
        result = {
            "branches": tt.n_branches,
            "switches": len(tt.switches),
            "rank": len(basis),
            "basis": [list(b) for b in basis],
            "omega": qrep.omega_matrix(tt, basis).tolist(),
            "puncture_vectors": [list(traintrack.puncture_vector(tt, i))
                                 for i in range(T.punctures)],
        }
        print(json.dumps({"rank": len(basis), "basis": result["basis"]}))
    else:
        if args.a is None or args.b is None:
            raise UsageError("tt form needs --a and --b")
        a, b = _ints(args.a), _ints(args.b)
        if args.edge:
            a, b = tt.from_edge_coordinates(a), tt.from_edge_coordinates(b)
        for v in (a, b):
            if not tt.satisfies_switch(v):
                raise ValueError(f"{list(v)} violates the switch conditions")
        value = traintrack.thurston_form(tt, a, b)
        oracle = traintrack.corner_count_form(tt, a, b)
        if value != oracle:
            raise InvariantFailure(f"switch rule {value} != corner count {oracle}")
        print(value)
        result = {"a": list(a), "b": list(b), "omega": value}
    _emit(args, f"tt {args.action}", result, [args.file])
    return EXIT_OK


def cmd_qrep(args):
    if args.action == "build":
        T, tt = _track(args.file)
        basis = traintrack.weight_basis(tt)
        Omega = qrep.omega_matrix(tt, basis)
        inputs = [args.file]
        if args.character:
            cdata = _load_json(args.character)
            io.validate(cdata, "character")
            chi = qrep.CentralCharacter.from_json(cdata)
            inputs.append(args.character)
        else:
            chi = None
        rho = qrep.build_rep(Omega, args.N, chi)
        resid = qrep.verify_rep(rho)
        rank = qrep.irreducibility_rank(rho)
        bundle = rho.to_json()
        bundle["basis"] = [list(b) for b in basis]
        io.validate(bundle, "qrep_bundle")
        if args.out:
            Path(args.out).write_text(io.dumps(bundle))
        ok = resid < qrep.RELATION_TOL and rank == rho.dim ** 2
        summary = {"dim": rho.dim, "residual": resid, "irreducibility_rank": rank,
                   "expected_dim": args.N ** (qrep.rank_mod(Omega, args.N) // 2)}
        print(json.dumps(summary, sort_keys=True))
        _emit(args, "qrep build", summary, inputs, ok=ok)
        if not ok:
            raise InvariantFailure("representation failed verification")
        return EXIT_OK
    data = _load_json(args.file)
    io.validate(data, "qrep_bundle")
    rho = qrep.MatrixRep.from_json(data)
    resid = qrep.verify_rep(rho)
    rank = qrep.irreducibility_rank(rho)
    summary = {"dim": rho.dim, "residual": resid, "irreducibility_rank": rank}
    print(json.dumps(summary, sort_keys=True))
    ok = resid < qrep.RELATION_TOL
    _emit(args, "qrep verify", summary, [args.file], ok=ok)
    if not ok:
        raise InvariantFailure(f"relation residual {resid:.3e}")
    return EXIT_OK


def shadow_corpus(T, N: int, samples: int, seed: int, threads: int = 1) -> dict:
    """Deterministic corpus run; samples are drawn first, then evaluated in order."""
    rng = np.random.default_rng(seed)
    sds = [shadow.random_shear(T, rng) for _ in range(samples)]
    qt = shadow.quantum_trace_pt(T)

    def one(sd):
        rep = shadow.shadow_pipeline(sd, N)
        rec = rep.to_json()
        rec["shear"] = sd.to_json()
        rec["_raw"] = max(c.raw_error for c in rep.curves)
        return rec, rep

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            out = list(pool.map(one, sds))
    else:
        out = [one(sd) for sd in sds]
    records = []
    raw = 0.0
    for rec, _ in out:
        raw = max(raw, rec.pop("_raw"))
        records.append(rec)
    return {
        "N": N,
        "samples": samples,
        "seed": seed,
        "quantum_trace": {
            "curves": [shadow.curve_label(K) for K in qt.curves],
            "elements": [{json.dumps(list(w)): c.to_json() for w, c in sorted(y.terms.items())}
                         for y in qt.Y],
            "candidates_tried": qt.candidates_tried,
        },
        "records": records,
        "max_error": max(r.max_error for _, r in out),
        "max_schur_residual": max(r.max_schur for _, r in out),
        "max_raw_error": raw,
    }


def cmd_shadow(args):
    if args.triangulation:
        T, _ = _track(args.triangulation)
        inputs = [args.triangulation]
    else:
        T = traintrack.load_triangulation(io.data_path("punctured_torus.json").read_text(),
                                          name="punctured_torus")
        inputs = []
    if args.N % 2 == 0:
        raise qrep.EvenN(f"N={args.N} is even")
    result = shadow_corpus(T, args.N, args.samples, args.seed, _threads())
    io.validate(result, "shadow_report")
    ok = result["max_error"] < shadow.SHADOW_TOL and \
        result["max_schur_residual"] < qrep.SCHUR_TOL
    print(json.dumps({"N": args.N, "samples": args.samples, "max_error": result["max_error"],
                      "max_schur_residual": result["max_schur_residual"], "ok": ok},
                     sort_keys=True))
    _emit(args, "shadow run", result, inputs, args.seed, ok)
    if not ok:
        raise InvariantFailure(f"shadow error {result['max_error']:.3e} exceeds tolerance")
    return EXIT_OK


def cmd_corpus(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if args.kind in ("pd", "all"):
        rng = np.random.default_rng(args.seed)
        for i in range(args.count):
            strands = int(rng.integers(2, 5))
            length = int(rng.integers(1, 11))
            word = [int(rng.integers(1, strands)) * int(rng.choice([-1, 1]))
                    for _ in range(length)]
            d = bracket.braid_closure(word, strands)
            path = out / f"pd_{i:03d}.json"
            path.write_text(io.dumps(d.to_json()))
            written.append(path.name)
    if args.kind in ("triangulations", "all"):
        for name, text in io.corpus_triangulations().items():
            path = out / f"{name}.json"
            path.write_text(text if text.endswith("\n") else text + "\n")
            written.append(path.name)
    print(f"wrote {len(written)} files to {out}")
    _emit(args, "corpus", {"files": written, "kind": args.kind}, seed=args.seed)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skein-lab", description=__doc__.splitlines()[0])
    p.add_argument("--at-root", metavar="N,k", help="evaluate at exp(2 pi i k/N)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--report", help="write the JSON report here")
        sp.add_argument("--at-root", dest="at_root_local", metavar="N,k", help=argparse.SUPPRESS)
        return sp

    sp = common(sub.add_parser("bracket", help="Kauffman bracket of a PD file"))
    sp.add_argument("file")
    sp.add_argument("--allow-nonplanar", action="store_true")
    sp.set_defaults(func=cmd_bracket)

    sp = common(sub.add_parser("cheb", help="normalized Chebyshev polynomial T_n"))
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_cheb)

    sp = common(sub.add_parser("charvar", help="traces of SL2 representations"))
    sp.add_argument("action", choices=["trace", "fricke"])
    sp.add_argument("--rep", required=True)
    sp.add_argument("--word")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.set_defaults(func=cmd_charvar)

    sp = common(sub.add_parser("skein", help="punctured-torus skein algebra"))
    sp.add_argument("action", choices=["nf", "central"])
    sp.add_argument("expr", nargs="?")
    sp.add_argument("--N", help="comma-separated odd orders (central)")
    sp.set_defaults(func=cmd_skein)

    sp = common(sub.add_parser("tt", help="train-track lattice and Thurston form"))
    sp.add_argument("action", choices=["basis", "form"])
    sp.add_argument("file")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--edge", action="store_true", help="--a/--b are edge coordinates")
    sp.set_defaults(func=cmd_tt)

    sp = common(sub.add_parser("qrep", help="quantum torus representations"))
    sp.add_argument("action", choices=["build", "verify"])
    sp.add_argument("file")
    sp.add_argument("--N", type=int, default=3)
    sp.add_argument("--character")
    sp.add_argument("--out", help="bundle output path (build)")
    sp.set_defaults(func=cmd_qrep)

    sp = common(sub.add_parser("shadow", help="classical shadow pipeline"))
    sp.add_argument("action", choices=["run"])
    sp.add_argument("--triangulation")
    sp.add_argument("--N", type=int, default=3)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=7)
    sp.set_defaults(func=cmd_shadow)

    sp = common(sub.add_parser("corpus", help="write test corpora"))
    sp.add_argument("kind", choices=["pd", "triangulations", "all"])
    sp.add_argument("--out", required=True)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        args.at_root = args.at_root or getattr(args, "at_root_local", None)
        try:
            _root(args.at_root)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INVARIANT as exc:
        print(f"invariant failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except _INVALID as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
