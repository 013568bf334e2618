"""Command-line front end.

Every verb prints one result document on stdout. Exit status: 0 on success,
1 on malformed input, 2 on a domain error (the document then carries an
``error`` payload with a stable ``code``).

Group arguments are catalog expressions (``S4``, ``C2xC3``, ``S2^3``,
``wreath S2 3``, ``semidirect S3 on S2^3``, ``A4`` ...), a path to a group
definition file, ``@path``, or ``-`` for standard input.

Group definition grammar: a line ``degree <n>`` followed by one permutation
per line, in cycle notation ``(0 1 2)(3 4)`` or as an image list
``[1,0,2]``; ``#`` starts a comment. Lines before the ``degree`` line are
ignored, and the block ends at the first line that is not a permutation,
so a text-format result document that embeds a definition is itself a valid
group file.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import __version__
from .actions import (
    adjoint_action,
    center,
    conjugacy_class_indices,
    coset_groupoid,
    free_loop_groupoid,
    natural_action,
    right_action,
    trivial_action,
)
from .catalog import catalog_group
from .cohomology import Cochain, GModule, central_extension, cohomology_group
from .constructions import (
    GroupActionOnGroup,
    alternating_group,
    cyclic_orderings_action,
    direct_power,
    direct_product,
    factor_permutation_action,
    inversion_action,
    klein_point_action,
    partition_action,
    semidirect_product,
    sign_hom,
    wreath_product,
)
from .covers import cover_of_subgroup, deck_transformations, galois_correspondence_report
from .deloop import (
    UnitalBinaryOp,
    abelianization,
    eckmann_hilton,
    eckmann_hilton_search,
    hom_conjugacy_classes,
    hom_group,
    hom_set,
)
from .errors import HGroupsError, NotAHomomorphism, ParseError
from .group import FiniteGroup, Homomorphism, are_isomorphic, get_order_cap, hom
from .groupoid import are_equivalent, groupoid_document, homotopy_fiber
from .perm import Permutation

VERBS = (
    "order", "elements", "conj-classes", "center", "abelianize", "hom-set", "hom-classes",
    "hom-group", "fiber", "coset-groupoid", "loop-groupoid", "fixed-points", "orbits",
    "semidirect", "direct", "wreath", "sign", "alt", "cyclic-orderings", "partitions",
    "covers", "deck", "cohomology", "extension", "eckmann-hilton", "isomorphic",
)

# -- group definitions ----------------------------------------------------------------

_DEGREE_RE = re.compile(r"^\s*degree\s+(\d+)\s*$")


def group_definition(G):
    """The round-trippable text definition of a group."""
    lines = [f"degree {G.degree}"]
    for g in dict.fromkeys(G.generators):
        if not g.is_identity():
            lines.append(g.cycle_string())
    return "\n".join(lines)


def parse_group_definition(text, name=None):
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
            text = doc["result"]["definition"]
        except (ValueError, KeyError, TypeError):
            raise ParseError("JSON input carries no result.definition") from None
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    for start, ln in enumerate(lines):
        m = _DEGREE_RE.match(ln)
        if m:
            break
    else:
        raise ParseError("group definition has no 'degree <n>' line")
    degree = int(m.group(1))
    gens = []
    for ln in lines[start + 1:]:
        if not ln:
            continue
        if not ln.startswith(("(", "[")):
            break
        gens.append(Permutation.parse(ln, degree))
    return FiniteGroup(degree, gens, name=name)


# -- catalog expressions --------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(\(|\)|\^|\d+|[A-Z][A-Za-z]*\d*|[a-z]+)")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive descent over group expressions.

    ``expr := 'wreath' expr INT | 'semidirect' expr 'on' expr ['by' MODE] | product``;
    ``product := power ('x' power)*``; ``power := atom ['^' INT]``;
    ``atom := NAME | '(' expr ')'``.
    """

    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a token'} in {self.text!r}")
        self.i += 1
        return tok

    def integer(self):
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected an integer, got {tok!r}")
        return int(tok)

    def parse(self):
        G, _ = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.toks[self.i:]} in {self.text!r}")
        G.name = G.name or self.text.strip()
        return G

    def expr(self):
        tok = self.peek()
        if tok == "wreath":
            self.take()
            N, _ = self.expr()
            n = self.integer()
            return wreath_product(N, n).group, None
        if tok == "semidirect":
            self.take()
            H, _ = self.expr()
            self.take("on")
            N, power = self.expr()
            mode = None
            if self.peek() == "by":
                self.take()
                mode = self.take()
            return _semidirect(H, N, power, mode).group, None
        return self.product()

    def product(self):
        G, power = self.power()
        factors = 1
        while self.peek() == "x":
            self.take()
            H, _ = self.power()
            G = direct_product(G, H)
            factors += 1
        return G, power if factors == 1 else None

    def power(self):
        G = self.atom()
        if self.peek() == "^":
            self.take()
            n = self.integer()
            return direct_power(G, n), (G, n)
        return G, None

    def atom(self):
        tok = self.take()
        if tok == "(":
            G, _ = self.expr()
            self.take(")")
            return G
        try:
            return catalog_group(tok)
        except (KeyError, ValueError):
            raise ParseError(f"unknown group name {tok!r}") from None


def _semidirect(H, N, power, mode):
    if mode is None:
        if power is not None and H.degree == power[1]:
            mode = "factors"
        elif N.order == 4 and all(o <= 2 for o in N.element_orders) and H.degree == 3:
            mode = "points"
        elif H.order == 2 and N.is_abelian():
            mode = "inversion"
        else:
            raise ParseError("cannot infer the action; add 'by factors|points|inversion|trivial'")
    if mode == "factors":
        if power is None:
            raise ParseError("'by factors' needs the normal factor written as M^k")
        data = factor_permutation_action(H, power[0], power[1], power=N)
    elif mode == "points":
        data = klein_point_action(H, N)
    elif mode == "inversion":
        data = inversion_action(H, N)
    elif mode == "trivial":
        data = GroupActionOnGroup.trivial(H, N)
    else:
        raise ParseError(f"unknown action mode {mode!r}")
    return semidirect_product(data)


def load_group(spec, stdin=None):
    spec = spec.strip()
    if spec == "-":
        stream = stdin if stdin is not None else sys.stdin
        return parse_group_definition(stream.read(), name="stdin")
    path = spec[1:] if spec.startswith("@") else spec
    if spec.startswith("@") or os.path.isfile(path):
        try:
            with open(path) as fh:
                return parse_group_definition(fh.read(), name=os.path.basename(path))
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return _ExprParser(spec).parse()


def parse_permutation_list(text, degree):
    return [Permutation.parse(p, degree) for p in text.split(";") if p.strip()]


def parse_table(text):
    rows = [r.split() for r in text.split(";") if r.strip()]
    try:
        return [[int(v) for v in r] for r in rows]
    except ValueError:
        raise ParseError(f"bad operation table {text!r}") from None


# -- payload helpers -------------------------------------------------------------------


def _cyc(G, i):
    return G.elements[i].cycle_string()


def _group_payload(G):
    return {"order": G.order, "degree": G.degree, "definition": group_definition(G)}


def _hom_payload(h):
    G = h.source
    return [_cyc(h.target, h.images[s]) for s in G.generating_set()]


def _homomorphism(H, G, images):
    if images:
        return hom(H, G, parse_permutation_list(images, G.degree))
    if H.degree == G.degree and all(p in G for p in H.elements):
        return Homomorphism(H, G, tuple(G.index(p) for p in H.elements), check=False)
    # otherwise the first injective homomorphism in enumeration order
    for f in hom_set(H, G):
        if f.is_injective():
            return f
    raise NotAHomomorphism("no injective homomorphism from source to target; pass --images")


def _action(G, kind):
    return {
        "adjoint": adjoint_action,
        "right": right_action,
        "natural": natural_action,
        "trivial": trivial_action,
    }[kind](G)


def _label(x):
    if hasattr(x, "cycle_string"):
        return x.cycle_string()
    if isinstance(x, tuple):
        return [_label(v) for v in x]
    return x


# -- verbs ---------------------------------------------------------------------------------


def run_verb(args, stdin=None):
    v = args.verb
    G = load_group(args.group, stdin) if getattr(args, "group", None) is not None else None
    H = load_group(args.other, stdin) if getattr(args, "other", None) is not None else None

    if v == "order":
        return {"order": G.order}
    if v == "elements":
        return {"order": G.order, "elements": [p.cycle_string() for p in G.elements]}
    if v == "conj-classes":
        classes = conjugacy_class_indices(G)
        return {
            "count": len(classes),
            "classes": [
                {"size": len(c), "representative": _cyc(G, c[0]), "elements": [_cyc(G, i) for i in c]}
                for c in classes
            ],
        }
    if v == "center":
        Z = center(G)
        return {"order": Z.order, "elements": [_cyc(G, i) for i in sorted(Z.indices)]}
    if v == "abelianize":
        Q, proj = abelianization(G)
        out = _group_payload(Q)
        out["commutator_order"] = proj.kernel().order
        return out
    if v == "hom-set":
        homs = hom_set(G, H)
        return {
            "generators": [_cyc(G, s) for s in G.generating_set()],
            "count": len(homs),
            "homomorphisms": [_hom_payload(h) for h in homs],
        }
    if v == "hom-classes":
        classes = hom_conjugacy_classes(G, H)
        return {
            "generators": [_cyc(G, s) for s in G.generating_set()],
            "count": len(classes),
            "classes": [{"size": len(c), "representative": _hom_payload(c.representative)} for c in classes],
        }
    if v == "hom-group":
        return _group_payload(hom_group(G, H))
    if v in ("fiber", "coset-groupoid"):
        f = _homomorphism(G, H, args.images)
        X = homotopy_fiber(f) if v == "fiber" else coset_groupoid(f)
        out = groupoid_document(X)
        if v == "coset-groupoid":
            out["equivalent_to_fiber"] = are_equivalent(X, homotopy_fiber(f)) is not None
        return out
    if v == "loop-groupoid":
        X = free_loop_groupoid(G)
        out = groupoid_document(X)
        out["conjugacy_classes"] = len(X.connected_components())
        return out
    if v == "fixed-points":
        X = _action(G, args.action)
        return {"action": args.action, "fixed_points": [_label(x) for x in X.fixed_points()]}
    if v == "orbits":
        X = _action(G, args.action)
        orbs = X.orbit_indices()
        return {
            "action": args.action,
            "carrier_size": len(X.carrier),
            "generator_permutations": [p.cycle_string() for p in X.generator_permutations()],
            "orbits": [
                {
                    "size": len(o),
                    "stabilizer_order": X.stabilizer_of_index(o[0]).order,
                    "points": [_label(X.carrier[i]) for i in o],
                }
                for o in orbs
            ],
        }
    if v == "semidirect":
        P = _ExprParser(args.normal)
        N, power = P.expr()
        if P.peek() is not None:
            raise ParseError(f"trailing input in {args.normal!r}")
        sd = _semidirect(G, N, power, args.by)
        return _group_payload(sd.group)
    if v == "direct":
        return _group_payload(direct_product(G, H))
    if v == "wreath":
        return _group_payload(wreath_product(G, args.n).group)
    if v == "sign":
        s = sign_hom(args.n)
        S = s.source
        return {
            "generators": [g.cycle_string() for g in S.generators],
            "images": [s(g).cycle_string() for g in S.generators],
            "kernel_order": s.kernel().order,
        }
    if v == "alt":
        return _group_payload(alternating_group(args.n).as_group())
    if v == "cyclic-orderings":
        X = cyclic_orderings_action(args.n)
        return {
            "carrier_size": len(X.carrier),
            "carrier": [list(c) for c in X.carrier],
            "generator_permutations": [p.cycle_string() for p in X.generator_permutations()],
            "stabilizer_order": X.stabilizer_of_index(0).order,
        }
    if v == "partitions":
        X, p = partition_action()
        return {
            "carrier": [[list(b) for b in c] for c in X.carrier],
            "generator_permutations": [q.cycle_string() for q in X.generator_permutations()],
            "kernel_order": p.kernel().order,
            "kernel": [_cyc(p.source, i) for i in sorted(p.kernel().indices)],
            "surjective": p.is_surjective(),
        }
    if v == "covers":
        r = galois_correspondence_report(G)
        return {
            "rows": [
                {
                    "subgroup_order": row.subgroup_order,
                    "index": row.index,
                    "class_size": row.class_size,
                    "normal": row.normal,
                    "galois": row.galois,
                    "deck_order": row.deck_order,
                }
                for row in r.rows
            ],
            "bijection": r.bijection,
            "round_trip": r.round_trip,
            "contravariant": r.contravariant,
            "normal_iff_galois": r.normal_iff_galois,
        }
    if v == "deck":
        gens = parse_permutation_list(args.subgroup, G.degree) if args.subgroup else []
        K = G.generated_subgroup(gens)
        D = deck_transformations(cover_of_subgroup(G, K))
        out = _group_payload(D)
        out["cover_size"] = K.index_in_parent()
        return out
    if v == "cohomology":
        M = GModule(G, H)
        C = cohomology_group(M, args.degree)
        return {
            "degree": args.degree,
            "order": C.order,
            "cocycles": C.cocycle_count,
            "coboundaries": C.coboundary_count,
            "representatives": [list(r.values) for r in C.representatives],
        }
    if v == "extension":
        M = GModule(G, H)
        if args.cocycle:
            try:
                vals = [int(x) for x in re.split(r"[,\s]+", args.cocycle.strip())]
            except ValueError:
                raise ParseError(f"bad cocycle table {args.cocycle!r}") from None
            if len(vals) != G.order ** 2:
                raise ParseError(f"cocycle table needs {G.order ** 2} values")
            c = Cochain(M, 2, vals)
        else:
            C = cohomology_group(M, 2)
            if not 0 <= args.cls < C.order:
                raise ParseError(f"class index must be in 0..{C.order - 1}")
            c = C.representatives[args.cls]
        E = central_extension(G, H, c)
        out = _group_payload(E.group)
        out["order_histogram"] = [list(x) for x in E.group.order_histogram()]
        out["split"] = are_isomorphic(E.group, direct_product(H, G)) is not None
        return out
    if v == "eckmann-hilton":
        if args.op1 or args.op2:
            if not (args.op1 and args.op2):
                raise ParseError("pass both --op1 and --op2")
            verdict = eckmann_hilton(
                UnitalBinaryOp(parse_table(args.op1), args.unit),
                UnitalBinaryOp(parse_table(args.op2), args.unit),
            )
            return {
                "status": verdict.status,
                "violation": list(verdict.violation) if verdict.violation else None,
                "ops_equal": verdict.ops_equal,
                "commutative": verdict.commutative,
                "associative": verdict.associative,
            }
        return {
            "searches": [
                {
                    "size": r.size,
                    "operations_per_unit": r.operations_per_unit,
                    "pairs": r.pairs,
                    "interchange_pairs": r.interchange_pairs,
                    "counterexamples": r.counterexamples,
                }
                for r in eckmann_hilton_search(args.max_size)
            ]
        }
    if v == "isomorphic":
        iso = are_isomorphic(G, H)
        return {
            "isomorphic": iso is not None,
            "witness": _hom_payload(iso) if iso is not None else None,
        }
    raise ParseError(f"unknown verb {v!r}")


# -- argument parsing and rendering ------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    p = _Parser(prog="hgroups", description="Set-level higher group computations.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--version", action="version", version=f"hgroups {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, *groups, **extra):
        sp = sub.add_parser(name)
        for dest in groups:
            sp.add_argument(dest)
        for flag, kw in extra.items():
            sp.add_argument(flag, **kw)
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        return sp

    for name in ("order", "elements", "conj-classes", "center", "abelianize", "loop-groupoid", "covers"):
        verb(name, "group")
    for name in ("hom-set", "hom-classes", "hom-group", "direct", "isomorphic"):
        verb(name, "group", "other")
    for name in ("fiber", "coset-groupoid"):
        sp = verb(name, "group", "other")
        sp.add_argument("--images", default=None, help="';'-separated images of the source generators")
    for name in ("fixed-points", "orbits"):
        sp = verb(name, "group")
        sp.add_argument("--action", choices=("adjoint", "right", "natural", "trivial"), default="natural")
    sp = verb("semidirect", "group", "normal")
    sp.add_argument("--by", choices=("factors", "points", "inversion", "trivial"), default=None)
    sp = verb("wreath", "group")
    sp.add_argument("n", type=int)
    for name in ("sign", "alt", "cyclic-orderings"):
        sp = verb(name)
        sp.add_argument("n", type=int)
    verb("partitions")
    sp = verb("deck", "group")
    sp.add_argument("--subgroup", default=None, help="';'-separated generators of the subgroup")
    sp = verb("cohomology", "group", "other")
    sp.add_argument("--degree", type=int, default=2)
    sp = verb("extension", "group", "other")
    sp.add_argument("--class", dest="cls", type=int, default=0)
    sp.add_argument("--cocycle", default=None)
    sp = verb("eckmann-hilton")
    sp.add_argument("--max-size", type=int, default=3)
    sp.add_argument("--op1", default=None)
    sp.add_argument("--op2", default=None)
    sp.add_argument("--unit", type=int, default=0)
    return p


def _inputs(args):
    skip = {"verb", "format"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def _render_value(key, value, lines, indent=""):
    if isinstance(value, dict):
        for k, v in value.items():
            _render_value(f"{key}.{k}" if key else k, v, lines, indent)
    elif isinstance(value, list) and value and all(isinstance(x, dict) for x in value):
        for i, item in enumerate(value):
            _render_value(f"{key}[{i}]", item, lines, indent)
    elif isinstance(value, str) and "\n" in value:
        lines.append(f"{key}:")
        lines.extend("  " + ln for ln in value.splitlines())
    else:
        lines.append(f"{key}: {json.dumps(value) if not isinstance(value, str) else value}")


def render(doc, fmt):
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    lines = []
    _render_value("", doc, lines)
    return "\n".join(lines) + "\n"


def main(argv=None, stdin=None, stdout=None):
    out = stdout if stdout is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "--format=json" in argv or ("--format" in argv and argv[argv.index("--format") + 1:][:1] == ["json"]) else "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        result = run_verb(args, stdin)
        doc = {"verb": args.verb, "inputs": _inputs(args), "result": result, "version": __version__}
        out.write(render(doc, fmt))
        return 0
    except ParseError as exc:
        out.write(render({"error": exc.payload(), "version": __version__}, fmt))
        return 1
    except ValueError as exc:
        # out-of-range numeric parameters (n < 1 and the like)
        out.write(render({"error": ParseError(str(exc)).payload(), "version": __version__}, fmt))
        return 1
    except HGroupsError as exc:
        payload = exc.payload()
        if exc.code == "order_limit_exceeded":
            payload["details"].setdefault("cap", get_order_cap())
        out.write(render({"error": payload, "version": __version__}, fmt))
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
