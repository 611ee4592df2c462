"""
Quivers with homogeneous relations and the finite-dimensional graded algebras
they present.

Paths are written in product notation: ``["beta", "alpha"]`` is the product
``beta*alpha``, where ``alpha`` acts first.  A path therefore starts at the
source of its *last* arrow and ends at the target of its *first* arrow, and a
product ``a*b`` of basis elements is nonzero only if ``source(a) ==
target(b)``.  The grading is path length; ``truncate`` kills every path of
length at least ``t``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from quiverhh.errors import PresentationError
from quiverhh.linalg import rref


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex id")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate arrow name")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise PresentationError("arrow %r has an unknown endpoint" % a.name)

    def arrow(self, name):
        for a in self.arrows:
            if a.name == name:
                return a
        raise PresentationError("unknown arrow %r" % name)

    def vertex_index(self, v):
        return self.vertices.index(v)

    def path_ends(self, path):
        """``(source, target)`` vertex ids of a nonempty composable path."""
        arrows = [self.arrow(name) for name in path]
        for left, right in zip(arrows, arrows[1:]):
            if left.source != right.target:
                raise PresentationError(
                    "path %s is not composable at %s*%s" % ("*".join(path), left.name, right.name)
                )
        return arrows[-1].source, arrows[0].target

    def loops(self):
        """Number of loops at each vertex, in vertex order."""
        return [sum(1 for a in self.arrows if a.source == v and a.target == v) for v in self.vertices]


@dataclass(frozen=True)
class Relation:
    terms: Tuple[Tuple[Fraction, Tuple[str, ...]], ...]

    def paths(self):
        return [p for _, p in self.terms]

    @property
    def length(self):
        return len(self.terms[0][1])

    def is_monomial(self):
        return len(self.terms) == 1


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: Tuple[Relation, ...]
    truncate: int

    def __post_init__(self):
        if not isinstance(self.truncate, int) or self.truncate < 2:
            raise PresentationError("truncate must be an integer >= 2")
        for rel in self.relations:
            validate_relation(self.quiver, rel)

    def is_monomial(self):
        return all(rel.is_monomial() for rel in self.relations)


def validate_relation(quiver, rel):
    if not rel.terms:
        raise PresentationError("empty relation")
    ends = None
    length = None
    for coef, path in rel.terms:
        if len(path) < 2:
            raise PresentationError("relation term %r has length < 2" % "*".join(path))
        if length is None:
            length = len(path)
        elif len(path) != length:
            raise PresentationError("relation terms have different lengths (not homogeneous)")
        e = quiver.path_ends(path)
        if ends is None:
            ends = e
        elif e != ends:
            raise PresentationError(
                "relation terms are not parallel: %s vs %s" % ("->".join(ends), "->".join(e))
            )


# -- input document ---------------------------------------------------------


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise PresentationError("%s: missing field %r" % (where, key))
    value = obj[key]
    if not isinstance(value, kind):
        raise PresentationError("%s: field %r has the wrong type" % (where, key))
    return value


def _parse_coef(text, where):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise PresentationError("%s: coefficient must be a rational string 'p/q'" % where)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise PresentationError("%s: bad rational %r" % (where, text)) from None


def presentation_from_dict(doc):
    vertices = _require(doc, "vertices", list, "document")
    if not all(isinstance(v, str) for v in vertices):
        raise PresentationError("vertices must be strings")
    arrows = []
    for k, a in enumerate(_require(doc, "arrows", list, "document")):
        where = "arrows[%d]" % k
        arrows.append(
            Arrow(_require(a, "name", str, where), _require(a, "from", str, where), _require(a, "to", str, where))
        )
    quiver = Quiver(tuple(vertices), tuple(arrows))
    relations = []
    for k, r in enumerate(_require(doc, "relations", list, "document")):
        where = "relations[%d]" % k
        merged: Dict[Tuple[str, ...], Fraction] = {}
        order = []
        for j, term in enumerate(_require(r, "terms", list, where)):
            twhere = "%s.terms[%d]" % (where, j)
            coef = _parse_coef(_require(term, "coef", (str, int), twhere), twhere)
            path = _require(term, "path", list, twhere)
            if not all(isinstance(x, str) for x in path):
                raise PresentationError("%s: path entries must be arrow names" % twhere)
            for name in path:
                quiver.arrow(name)
            path = tuple(path)
            if path not in merged:
                order.append(path)
                merged[path] = Fraction(0)
            merged[path] += coef
        terms = tuple((merged[p], p) for p in order if merged[p])
        if not terms:
            raise PresentationError("%s: relation is zero" % where)
        relations.append(Relation(terms))
    truncate = _require(doc, "truncate", int, "document")
    if isinstance(truncate, bool):
        raise PresentationError("document: truncate must be an integer")
    return AlgebraPresentation(quiver, tuple(relations), truncate)


def parse_presentation(text):
    """Parse a JSON presentation document into a validated presentation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError("syntax error: %s" % exc.msg, (exc.lineno, exc.colno)) from None
    return presentation_from_dict(doc)


def load_presentation(path):
    with open(path) as fh:
        return parse_presentation(fh.read())


def presentation_to_dict(pres):
    return {
        "vertices": list(pres.quiver.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in pres.quiver.arrows],
        "relations": [
            {"terms": [{"coef": str(c), "path": list(p)} for c, p in rel.terms]} for rel in pres.relations
        ],
        "truncate": pres.truncate,
    }


def serialize_presentation(pres):
    return json.dumps(presentation_to_dict(pres), indent=2) + "\n"


# -- the graded algebra -----------------------------------------------------


@dataclass(frozen=True)
class BasisElement:
    index: int
    degree: int
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class GradedAlgebra:
    """A finite-dimensional graded algebra with an explicit homogeneous basis.

    ``products[(a, b)]`` lists ``(c, coef)`` pairs with ``e_a * e_b = sum coef
    e_c``; missing pairs multiply to zero.  Vertices are 0-based here.
    """

    vertices: Tuple[str, ...]
    basis: Tuple[BasisElement, ...]
    idempotents: Tuple[int, ...]
    products: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = field(compare=False)
    presentation: Optional[AlgebraPresentation] = field(default=None, compare=False)

    @property
    def r(self):
        return len(self.vertices)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def s(self):
        return max((b.degree for b in self.basis), default=0)

    def degree_dims(self):
        dims = [0] * (self.s + 1)
        for b in self.basis:
            dims[b.degree] += 1
        return dims

    def by_degree(self, l):
        return [b.index for b in self.basis if b.degree == l]

    def radical(self):
        return [b.index for b in self.basis if b.degree > 0]

    def mul_basis(self, a, b):
        return self.products.get((a, b), ())

    def multiply(self, x, y):
        """Product of two elements given as dicts ``basis index -> coefficient``."""
        out: Dict[int, Fraction] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, coef in self.products.get((a, b), ()):
                    v = out.get(c, 0) + ca * cb * coef
                    if v:
                        out[c] = v
                    else:
                        out.pop(c, None)
        return out

    def element(self, label):
        """The basis element with the given label, as an element dict."""
        for b in self.basis:
            if b.label == label:
                return {b.index: Fraction(1)}
        raise KeyError(label)

    def block_dim(self, i, j, l):
        """dim e_j A_l e_i for 1-based vertex indices ``i`` (source) and ``j`` (target)."""
        if not (1 <= i <= self.r and 1 <= j <= self.r):
            raise IndexError("vertex index out of range 1..%d" % self.r)
        return sum(1 for b in self.basis if b.degree == l and b.source == i - 1 and b.target == j - 1)

    def relabel(self, perm):
        """The same algebra with basis element ``k`` renumbered to ``perm[k]``."""
        assert sorted(perm) == list(range(self.dim))
        basis = [None] * self.dim
        for b in self.basis:
            basis[perm[b.index]] = BasisElement(perm[b.index], b.degree, b.source, b.target, b.label)
        products = {
            (perm[a], perm[b]): tuple(sorted((perm[c], coef) for c, coef in prod))
            for (a, b), prod in self.products.items()
        }
        return GradedAlgebra(
            self.vertices, tuple(basis), tuple(perm[e] for e in self.idempotents), products, self.presentation
        )


def _paths_of_length(quiver, l):
    """All composable paths of length ``l >= 1`` as tuples of arrow indices."""
    arrows = quiver.arrows
    paths = [(k,) for k in range(len(arrows))]
    for _ in range(l - 1):
        # prepend: new arrow acts last, so its source must be the path's target
        paths = [
            (k,) + p
            for p in paths
            for k in range(len(arrows))
            if arrows[k].source == arrows[p[0]].target
        ]
    return paths


def build_graded_algebra(pres):
    """Construct ``kQ/I`` degree by degree.

    In each degree ``l < t`` and each (source, target) block, the ideal is
    spanned by all ``p*rho*q``; it is row-reduced with the lexicographically
    largest path as pivot, and the remaining (standard) paths form the basis.
    Every path of that degree then has a normal form in the standard paths,
    which gives the structure constants.
    """
    quiver = pres.quiver
    r = len(quiver.vertices)
    vidx = {v: k for k, v in enumerate(quiver.vertices)}
    arrows = quiver.arrows
    aidx = {a.name: k for k, a in enumerate(arrows)}
    t = pres.truncate

    def ends(p):
        return vidx[arrows[p[-1]].source], vidx[arrows[p[0]].target]

    rels = [[(c, tuple(aidx[n] for n in path)) for c, path in rel.terms] for rel in pres.relations]

    basis: List[BasisElement] = []
    for k, v in enumerate(quiver.vertices):
        basis.append(BasisElement(k, 0, k, k, "e" + v))

    # normal_form[path] = tuple of (basis index, coef); standard paths map to themselves
    normal_form: Dict[Tuple[int, ...], Tuple[Tuple[int, Fraction], ...]] = {}
    path_of: Dict[int, Tuple[int, ...]] = {}
    paths_by_len = {0: []}
    for l in range(1, t):
        paths = _paths_of_length(quiver, l)
        paths_by_len[l] = paths
        blocks: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
        for p in paths:
            blocks.setdefault(ends(p), []).append(p)
        for key in sorted(blocks):
            block = sorted(blocks[key], reverse=True)  # largest path first = preferred pivot
            pos = {p: k for k, p in enumerate(block)}
            gens = []
            for rel in rels:
                L = len(rel[0][1])
                if L > l:
                    continue
                for a in range(l - L + 1):
                    lefts = paths_by_len[a] if a else [()]
                    rights = paths_by_len[l - L - a] if l - L - a else [()]
                    for left in lefts:
                        for right in rights:
                            row = [Fraction(0)] * len(block)
                            ok = True
                            for c, w in rel:
                                full = left + w + right
                                if full not in pos:
                                    ok = False
                                    break
                                row[pos[full]] += c
                            if ok and any(row):
                                gens.append(row)
            reduced, pivots = rref(gens, len(block)) if gens else ([], [])
            pivot_set = set(pivots)
            standard = [k for k in range(len(block)) if k not in pivot_set]
            std_index = {}
            for k in sorted(standard, key=lambda k: block[k]):
                p = block[k]
                idx = len(basis)
                std_index[k] = idx
                label = "*".join(arrows[x].name for x in p)
                basis.append(BasisElement(idx, l, key[0], key[1], label))
                path_of[idx] = p
                normal_form[p] = ((idx, Fraction(1)),)
            # pivot path == -(rest of its rref row), which only involves standard paths
            for row, pc in zip(reduced, pivots):
                nf = tuple(
                    (std_index[k], -row[k]) for k in sorted(standard, key=lambda k: block[k]) if row[k]
                )
                normal_form[block[pc]] = nf

    products: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
    for a in basis:
        for b in basis:
            if a.source != b.target:
                continue
            if a.degree == 0:
                products[(a.index, b.index)] = ((b.index, Fraction(1)),)
            elif b.degree == 0:
                products[(a.index, b.index)] = ((a.index, Fraction(1)),)
            elif a.degree + b.degree < t:
                nf = normal_form[path_of[a.index] + path_of[b.index]]
                if nf:
                    products[(a.index, b.index)] = nf

    alg = GradedAlgebra(
        tuple(quiver.vertices), tuple(basis), tuple(range(r)), products, pres
    )
    return alg


def algebra_from_text(text):
    return build_graded_algebra(parse_presentation(text))


def algebra_from_file(path):
    return build_graded_algebra(load_presentation(path))
