"""Command-line driver: ``qhwb <file> [--json] [--sparse] [--command <name>]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from itertools import combinations

from . import config_solver as cs
from .dsl import AlgebraBlock, Command, Document, parse, render_vector
from .errors import ParityUnsupported, ParseError, QhwbError
from .field_tower import render
from .qh_algebra import AlgebraPresentation, alg_make, decompose, decomposition_json, semisimple
from .spectral_layer import (
    DisjointnessRegistry,
    SpectralClass,
    chain_classes,
    count_distinct_qmor,
    dehn_inequality_check,
)
from .sphere_calc import classify_sign, dehn_idempotents, sphere_class, sphere_report

SCHEMA = 1


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    line: int
    column: int

    def to_json(self):
        return {"severity": self.severity, "message": self.message,
                "line": self.line, "column": self.column}


def build_algebra(block: AlgebraBlock, sparse=False):
    graded = block.t_degree is not None
    return alg_make(AlgebraPresentation(
        basis_names=block.basis_names,
        unit_index=None,
        unit_coords=list(block.unit),
        structure_constants={key: list(vec) for key, vec in block.products},
        degrees=[d for _, d in block.basis] if graded else None,
        t_degree=block.t_degree,
        parity_n=block.n,
        integration=list(block.integration) if block.integration is not None else None,
        field=block.field,
        novikov_n=block.novikov_n or 1,
        sparse=sparse,
    ))


class Runner:
    def __init__(self, doc: Document, sparse=False):
        self.doc = doc
        self.sparse = sparse
        self.blocks = doc.algebras()
        self._built = {}

    def algebra(self, name):
        if name not in self._built:
            self._built[name] = build_algebra(self.blocks[name], self.sparse)
        return self._built[name]

    def sphere_arg(self, A, block, arg):
        if isinstance(arg, tuple):
            return f"({render_vector(arg[1], block.basis_names)})", sphere_class(A, A.element(arg[1]))
        return arg, sphere_class(A, A.element(dict(block.spheres)[arg]))

    def execute(self, c: Command):
        handler = getattr(self, "cmd_" + c.name)
        return handler(c)

    def cmd_check(self, c):
        A = self.algebra(c.target)
        return {"dim": A.dim, "graded": A.degrees is not None, "field_degree": A.field.degree}

    def cmd_semisimple(self, c):
        return {"semisimple": semisimple(self.algebra(c.target))}

    def cmd_decompose(self, c):
        return {"idempotents": decomposition_json(decompose(self.algebra(c.target)))}

    def cmd_sphere(self, c):
        A = self.algebra(c.target)
        block = self.blocks[c.target]
        label, l = self.sphere_arg(A, block, c.args[0])
        others = [(name, sphere_class(A, A.element(v)))
                  for name, v in block.spheres if A.element(v) != l.element]
        out = {"class": label}
        out.update(sphere_report(A, l, others))
        return out

    def cmd_dehn(self, c):
        A = self.algebra(c.target)
        block = self.blocks[c.target]
        (na, l), (nb, lp) = (self.sphere_arg(A, block, a) for a in c.args)
        if A.parity_n % 2:
            raise ParityUnsupported("the odd route needs externally supplied unit data")
        sign = classify_sign(A, l, lp)
        tw = dehn_idempotents(A, l, lp)
        report = dehn_inequality_check(A, l, lp, cs.Even).to_json()
        report.update({
            "L": na, "L'": nb,
            "sign_case": sign.tag,
            "pairing": render(sign.pairing),
            "twisted": tw.twisted.element.to_strings(),
        })
        return report

    def cmd_config(self, c):
        block = self.doc.configs()[c.target]
        if block.dynkin is not None:
            g = cs.dynkin(*block.dynkin)
        else:
            g = cs.ConfigGraph.from_edges(block.vertices, [(i - 1, j - 1) for i, j in block.edges])
        parity = cs.Even if c.parity == "even" else cs.OddGood
        return {"parity": parity.tag, "vertices": g.vertex_count,
                "verdict": cs.admissible(g, parity).to_json()}

    def cmd_lattice(self, c):
        block = self.doc.lattices()[c.target]
        L = cs.BlowupLattice(block.k)
        classes = [cs.LatticeClass(L, coeffs) for _, coeffs in block.classes]
        names = [name for name, _ in block.classes]
        checks = []
        for name, cl in zip(names, classes):
            chk = cs.verify_sphere_class(L, cl)
            checks.append({"name": name, "class": str(cl), "square": chk.square,
                           "c1_pairing": chk.c1_pairing, "ok": chk.ok})
        parity = cs.OddGood if c.parity == "oddgood" else cs.Even
        verdict, g = cs.chain_check(L, classes, parity)
        edges = sorted([names[i], names[j]] for i, j in combinations(range(len(names)), 2)
                       if g.adjacent(i, j))
        out = {"classes": checks, "edges": edges, "verdict": verdict.to_json()}
        order = g.path_order()
        if verdict.sat and parity == cs.Even and order is not None:
            out["path"] = [names[v] for v in order]
            out["qmor"] = self._count(verdict, order, names, block.torus)
        return out

    def _count(self, verdict, order, names, torus):
        m = len(order)
        pairs = [(i, j) for i, j in combinations(range(m), 2) if j > i + 1]
        extra = ()
        if torus is not None:
            # A declared torus is taken to be disjoint from every chain sphere.
            pairs += [(torus, i) for i in range(m)]
            extra = ((torus, SpectralClass.of(f"{torus}:unit")),)
        count = count_distinct_qmor(chain_classes(verdict.witness, order),
                                    DisjointnessRegistry.of(pairs), extra)
        carrier = lambda x: names[order[x]] if isinstance(x, int) else x
        return {
            "count": count.count,
            "ids": [str(u) for u in count.ids],
            "certificates": [[str(a), str(b), [carrier(x), carrier(y)]]
                             for a, b, (x, y) in count.certificates],
        }


def run(doc: Document, as_json=False, sparse=False, command=None):
    """Execute the document's commands in order; return (exit code, output text)."""
    runner = Runner(doc, sparse)
    results = []
    code = 0
    for c in doc.commands():
        if command is not None and c.name != command:
            continue
        entry = {"command": c.name, "target": c.target, "line": c.pos.line}
        try:
            entry["status"] = "ok"
            entry.update(runner.execute(c))
        except QhwbError as exc:
            entry["status"] = "error"
            entry["error"] = {"type": type(exc).__name__, "category": exc.exit_code,
                              "message": str(exc)}
            code = code or exc.exit_code
        results.append(entry)
    if as_json:
        payload = {"schema": SCHEMA, "exit_code": code, "results": results}
        return code, json.dumps(payload, indent=2) + "\n"
    return code, "".join(_human(r) for r in results)


def _human(r):
    head = f"[{r['status']}] {r['command']} {r['target']}"
    if r["status"] == "error":
        e = r["error"]
        return f"{head}: {e['type']}: {e['message']}\n"
    body = {k: v for k, v in r.items() if k not in ("command", "target", "line", "status")}
    lines = [head]
    for k, v in body.items():
        lines.append(f"  {k}: {json.dumps(v)}")
    return "\n".join(lines) + "\n"


def diagnostic_output(path, err: ParseError, as_json):
    d = Diagnostic("error", err.message, err.line, err.column)
    if as_json:
        payload = {"schema": SCHEMA, "exit_code": err.exit_code, "diagnostics": [d.to_json()]}
        return json.dumps(payload, indent=2) + "\n"
    return f"{path}:{d.line}:{d.column}: {d.severity}: {d.message}\n"


def main(argv=None):
    ap = argparse.ArgumentParser(prog="qhwb", description="Run a quantum-cohomology presentation file.")
    ap.add_argument("file")
    ap.add_argument("--json", action="store_true", help="emit versioned JSON")
    ap.add_argument("--sparse", action="store_true", help="missing products default to zero")
    ap.add_argument("--command", help="run only commands with this name")
    args = ap.parse_args(argv)
    try:
        with open(args.file, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        print(f"{args.file}: {exc.strerror}", file=sys.stderr)
        return 1
    try:
        doc = parse(source)
    except ParseError as err:
        text = diagnostic_output(args.file, err, args.json)
        (sys.stdout if args.json else sys.stderr).write(text)
        return err.exit_code
    code, text = run(doc, args.json, args.sparse, args.command)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
