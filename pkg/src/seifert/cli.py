"""Command-line interface.

Every command reads UTF-8 JSON files and prints aligned text, or JSON with
``--json``.  Exit codes: 0 success, 1 a verification or obstruction finding,
2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional

from . import core, invariants, lattices, symplectic
from .algebra import LaurentPolynomial, format_laurent, format_rational, parse_rational
from .core import Certificate, Flavor, SeifertMatrix
from .errors import (AmbientMismatch, CertificateError, InvalidInput, NotSeifertMatrix,
                     SeifertError)
from .matrices import Matrix

EXIT_OK, EXIT_FINDING, EXIT_INPUT = 0, 1, 2


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout
        self.data: Dict = {}
        self.lines: List[str] = []

    def put(self, key: str, value, text: Optional[str] = None):
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def text(self, line: str):
        self.lines.append(line)

    def flush(self):
        if self.as_json:
            print(json.dumps(self.data, indent=2), file=self.stream)
        elif self.lines:
            print("\n".join(self.lines), file=self.stream)


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc.msg})") from None


def _matrix(path: str) -> Matrix:
    return Matrix.from_json(_load(path))


def _seifert(path: str) -> SeifertMatrix:
    return core.validate(_matrix(path))


def _lattice(path: str) -> lattices.Lattice:
    return lattices.Lattice.from_json(_load(path))


def _points(text: str):
    return [parse_rational(p) for p in text.split(",") if p.strip()]


def _block(title: str, m: Matrix) -> str:
    body = m.pretty()
    return f"{title}:\n" + "\n".join("  " + line for line in body.splitlines())


def _poly(p: LaurentPolynomial) -> str:
    return format_laurent(p)


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args, out: Output) -> int:
    v = _seifert(args.V)
    out.put("valid", True, f"valid Seifert matrix of size {v.size} (genus {v.genus})")
    out.put("genus", v.genus)
    out.put("integral", v.integral)
    out.put("invertible", v.is_invertible())
    return EXIT_OK


def cmd_alexander(args, out: Output) -> int:
    v = _seifert(args.V)
    delta = invariants.alexander_polynomial(v)
    normal = delta.unit_normal()
    out.put("alexander", normal.to_json(), f"Delta(t) = {_poly(normal)}")
    out.put("determinant", invariants.alexander_determinant(v).to_json())
    out.put("normalized_at_one", delta.to_json())
    return EXIT_OK


def cmd_decompose(args, out: Output) -> int:
    v = _seifert(args.V)
    dec = invariants.module_decomposition(v)
    normal = [d.unit_normal() for d in dec.invariant_factors]
    out.put("invariant_factors", [d.to_json() for d in normal])
    if not normal:
        out.text("trivial module")
    for i, d in enumerate(normal, 1):
        out.text(f"d{i} = {_poly(d)}")
    return EXIT_OK


def _rf_matrix_text(title: str, m: Matrix) -> str:
    return _block(title, m)


def cmd_blanchfield(args, out: Output) -> int:
    v = _seifert(args.V)
    b = invariants.blanchfield_matrix(v)
    out.put("blanchfield", b.to_json())
    out.text(_rf_matrix_text("Phi = (1 - t)(tV - V^t)^-1", b.entries))
    out.text(_rf_matrix_text("reduced mod Q[t,t^-1]", b.reduced_entries))
    return EXIT_OK


def cmd_scalar_form(args, out: Output) -> int:
    v = _seifert(args.V)
    s, ok = invariants.scalar_form(v)
    out.put("S", s.to_json(), _block("S", s))
    out.put("equals_J", ok, "S equals J" if ok else "S differs from J")
    return EXIT_OK if ok else EXIT_FINDING


def cmd_t_action(args, out: Output) -> int:
    v = _seifert(args.V)
    t = invariants.t_action(v)
    out.put("T", t.to_json(), _block("T = V^t V^-1", t))
    return EXIT_OK


def _cert_text(cert: Certificate) -> str:
    lines = [f"certificate ({cert.flavor.value}, {len(cert)} moves):"]
    for i, m in enumerate(cert.moves):
        if m.kind in (core.MoveKind.ROW_ENLARGE, core.MoveKind.COL_ENLARGE):
            rho = ", ".join(format_rational(r) for r in m.rho)
            lines.append(f"  {i}: {m.kind.value} x={format_rational(m.x)} rho=[{rho}]")
        elif m.kind is core.MoveKind.CONGRUENCE:
            rows = "; ".join(" ".join(format_rational(x) for x in r) for r in m.P.rows)
            lines.append(f"  {i}: congruence P=[{rows}]")
        else:
            lines.append(f"  {i}: {m.kind.value}")
    return "\n".join(lines)


def cmd_reduce_invertible(args, out: Output) -> int:
    v = _seifert(args.V)
    w, cert = core.reduce_to_invertible(v)
    out.put("result", w.to_json(), _block("invertible representative", w.matrix))
    out.put("certificate", cert.to_json(), _cert_text(cert))
    return EXIT_OK


def cmd_enlarge(args, out: Output) -> int:
    v = _seifert(args.V)
    x = parse_rational(args.x)
    rho = _points(args.rho) if args.rho else []
    fn = core.row_enlarge if args.kind == "row" else core.col_enlarge
    w = fn(v, x, rho)
    out.put("result", w.to_json(), _block(f"{args.kind} enlargement", w.matrix))
    return EXIT_OK


def cmd_reduce(args, out: Output) -> int:
    w = _seifert(args.W)
    v, kind = core.reduce(w)
    out.put("kind", kind.value, f"pattern: {kind.value}")
    out.put("result", v.to_json(), _block("reduced", v.matrix))
    return EXIT_OK


def cmd_congruence(args, out: Output) -> int:
    v = _seifert(args.V)
    p = _matrix(args.P)
    w = core.congruence(v, p)
    out.put("result", w.to_json(), _block("P V P^t", w.matrix))
    return EXIT_OK


def cmd_apply_cert(args, out: Output) -> int:
    v = _seifert(args.V)
    cert = Certificate.from_json(_load(args.cert))
    applied = core.apply_certificate(v, cert)
    out.put("result", applied.seifert.to_json(), _block("result", applied.seifert.matrix))
    out.put("transport", applied.transport.to_json())
    return EXIT_OK


def cmd_verify_cert(args, out: Output) -> int:
    v = _seifert(args.V)
    target = _seifert(args.Vp)
    cert = Certificate.from_json(_load(args.cert))
    if args.flavor:
        cert = Certificate(cert.moves, Flavor(args.flavor))
    try:
        result = core.apply_certificate(v, cert).seifert
    except CertificateError as exc:
        out.put("valid", False, f"certificate rejected: {exc}")
        out.put("error", str(exc))
        return EXIT_FINDING
    ok = result == target
    out.put("valid", ok, f"certificate {'verified' if ok else 'does not reach the target'} "
                         f"({cert.flavor.value})")
    if not ok:
        out.put("result", result.to_json(), _block("certificate produces", result.matrix))
    return EXIT_OK if ok else EXIT_FINDING


def cmd_factor_symplectic(args, out: Output) -> int:
    p = _matrix(args.P)
    f = symplectic.factor_symplectic(p)
    out.put("factorization", f.to_json())
    out.text(f"{len(f.factors)} factors:")
    for i, fac in enumerate(f.factors):
        if isinstance(fac, symplectic.DeltaFactor):
            out.text(f"  {i}: delta({format_rational(fac.n)})")
        else:
            out.text(f"  {i}: integral " + str([[format_rational(x) for x in r]
                                              for r in fac.P.rows]))
    return EXIT_OK


def cmd_realize_delta(args, out: Output) -> int:
    v = _seifert(args.V)
    r = symplectic.realize_delta(v, parse_rational(args.n), require_integral=args.integral)
    out.put("tilde_v", r.tilde_v.to_json(), _block("enlargement of V", r.tilde_v.matrix))
    out.put("P", r.P.to_json(), _block("P", r.P))
    out.put("tilde_w", r.tilde_w.to_json(), _block("enlargement of delta V delta", r.tilde_w.matrix))
    out.put("result", r.target.to_json(), _block("delta(n) V delta(n)", r.target.matrix))
    out.put("certificate", r.certificate.to_json(), _cert_text(r.certificate))
    return EXIT_OK


def cmd_elementary_ideals(args, out: Output) -> int:
    v = _seifert(args.V)
    points = _points(args.points)
    rows = []
    for k in range(1, v.size + 2):
        ideal = invariants.elementary_ideal(v, k)
        values = [invariants.evaluate_ideal(ideal, p) for p in points]
        rows.append({"index": k, "generators": [g.to_json() for g in ideal.generators],
                     "values": {format_rational(p): str(x) for p, x in zip(points, values)}})
        gens = ", ".join(_poly(g) for g in ideal.generators) or "0"
        vals = ", ".join(f"t={format_rational(p)}: {x}Z" for p, x in zip(points, values))
        out.text(f"E{k} = ({gens})  [{vals}]")
    out.put("ideals", rows)
    return EXIT_OK


def cmd_distinguish(args, out: Output) -> int:
    v = _seifert(args.V)
    w = _seifert(args.Vp)
    rep = invariants.distinguish(v, w, _points(args.points))
    out.data.update(rep.to_json())
    out.text(f"Alexander polynomials equal: {rep.alexander_equal}")
    out.text(f"invariant factors equal: {rep.factors_equal}")
    if rep.witness:
        wt = rep.witness
        out.text(f"integral witness: E{wt.ideal_index}@t={format_rational(wt.point)}: "
                 f"{wt.values[0]} vs {wt.values[1]}")
    else:
        out.text("no integral witness found")
    return EXIT_FINDING if rep.obstruction else EXIT_OK


def cmd_lattice_selfdual(args, out: Output) -> int:
    lat = _lattice(args.L)
    ok = lattices.is_self_dual(lat)
    out.put("gram", lat.gram().to_json(), _block("Gram matrix", lat.gram()))
    out.put("self_dual", ok, f"self-dual: {ok}")
    out.put("admissible", lattices.is_admissible(lat), f"admissible: {lattices.is_admissible(lat)}")
    return EXIT_OK if ok else EXIT_FINDING


def cmd_lattice_sympbasis(args, out: Output) -> int:
    lat = _lattice(args.L)
    b = lattices.symplectic_basis(lat)
    out.put("basis", b.to_json(), _block("symplectic basis (columns)", b))
    return EXIT_OK


def cmd_lattice_adjacency(args, out: Output) -> int:
    a, b = _lattice(args.L1), _lattice(args.L2)
    n = lattices.adjacency(a, b)
    out.put("n", n, f"adjacent with n = {n}" if n else "not adjacent")
    if n is None:
        return EXIT_FINDING
    if lattices.is_self_dual(a) and lattices.is_self_dual(b):
        w = lattices.adjacent_symplectic_bases(a, b)
        out.put("basis", w.basis.to_json(), _block("witness basis b (columns)", w.basis))
        out.put("second_basis", w.second_basis.to_json(),
                _block("(n b1, b2/n, ...) for the second lattice", w.second_basis))
    return EXIT_OK


def cmd_lattice_seifert(args, out: Output) -> int:
    lat = _lattice(args.L)
    v = lattices.seifert_from_lattice(lat)
    out.put("seifert", v.to_json(), _block("Seifert matrix", v.matrix))
    return EXIT_OK


def cmd_verify_chain(args, out: Output) -> int:
    data = _load(args.chain)
    if not isinstance(data, list):
        raise InvalidInput("chain file must hold a JSON list of lattices")
    chain = [lattices.Lattice.from_json(x) for x in data]
    links = lattices.verify_chain(chain)
    out.put("links", [l.to_json() for l in links])
    for l in links:
        n = f" n={l.n}" if l.n else ""
        out.text(f"link {l.index}->{l.index + 1}: {'ok' if l.ok else 'FAIL'}{n} {l.message}")
    ok = all(l.ok for l in links)
    out.put("valid", ok, "chain valid" if ok else "chain invalid")
    return EXIT_OK if ok else EXIT_FINDING


COMMANDS: Dict[str, Callable] = {}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seifert",
                                     description="Exact Seifert matrix calculus.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    # a subcommand-level default would clobber a --json given before the command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, fn, files, help_text, extra=None):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for f in files:
            p.add_argument(f)
        if extra:
            extra(p)
        p.set_defaults(func=fn)
        COMMANDS[name] = fn

    add("validate", cmd_validate, ["V"], "check V - V^t = J")
    add("alexander", cmd_alexander, ["V"], "Alexander polynomial")
    add("decompose", cmd_decompose, ["V"], "invariant factors of the Alexander module")
    add("blanchfield", cmd_blanchfield, ["V"], "Blanchfield matrix (1 - t)(tV - V^t)^-1")
    add("scalar-form", cmd_scalar_form, ["V"], "scalar form chi(Phi), compared with J")
    add("t-action", cmd_t_action, ["V"], "matrix of t on the generators")
    add("reduce-invertible", cmd_reduce_invertible, ["V"],
        "S-equivalent invertible matrix and certificate")
    add("enlarge", cmd_enlarge, ["V"], "row or column enlargement", lambda p: (
        p.add_argument("--kind", choices=["row", "col"], default="row"),
        p.add_argument("--x", default="0"),
        p.add_argument("--rho", default="", help="comma separated rationals")))
    add("reduce", cmd_reduce, ["W"], "strip an enlargement")
    add("congruence", cmd_congruence, ["V", "P"], "P V P^t for symplectic P")
    add("apply-cert", cmd_apply_cert, ["V", "cert"], "apply a certificate")
    add("verify-cert", cmd_verify_cert, ["V", "Vp", "cert"], "check a certificate maps V to Vp",
        lambda p: p.add_argument("--flavor", choices=[f.value for f in Flavor]))
    add("factor-symplectic", cmd_factor_symplectic, ["P"],
        "factor a rational symplectic matrix")
    add("realize-delta", cmd_realize_delta, ["V"], "moves from V to delta(n) V delta(n)",
        lambda p: (p.add_argument("--n", default="2"),
                   p.add_argument("--integral", action="store_true")))
    add("elementary-ideals", cmd_elementary_ideals, ["V"], "elementary ideals and evaluations",
        lambda p: p.add_argument("--points", default="-1"))
    add("distinguish", cmd_distinguish, ["V", "Vp"], "compare S-equivalence invariants",
        lambda p: p.add_argument("--points", default="-1"))
    add("lattice-selfdual", cmd_lattice_selfdual, ["L"], "self-duality and admissibility")
    add("lattice-sympbasis", cmd_lattice_sympbasis, ["L"], "symplectic basis of a lattice")
    add("lattice-adjacency", cmd_lattice_adjacency, ["L1", "L2"], "adjacency and witness bases")
    add("lattice-seifert", cmd_lattice_seifert, ["L"], "Seifert matrix of an admissible lattice")
    add("verify-chain", cmd_verify_chain, ["chain"], "check a chain of adjacent lattices")
    return parser


VALUE_FLAGS = ("--points", "--n", "--x", "--rho", "--kind", "--flavor")


def _join_values(argv: List[str]) -> List[str]:
    """Glue value flags to their argument so values like ``-1,2`` are not
    mistaken for options."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.json, stdout)
    try:
        code = args.func(args, out)
    except (InvalidInput, NotSeifertMatrix, AmbientMismatch) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except SeifertError as exc:
        out.put("error", str(exc), f"error: {exc}")
        out.flush()
        return EXIT_FINDING
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
