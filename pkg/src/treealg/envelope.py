"""Enveloping dendriform algebra of a finite-dimensional brace algebra.

The input is a brace structure given by structure constants.  The
envelope is the free dendriform algebra on the brace basis modulo the
ideal identifying each corolla operation with its structure-constant
value, adjoined unit; everything is computed degree-truncated.

A basis letter may carry a weight (its filtration degree); structure
constants harvested from the primitives of a free algebra use the
primitive degree as weight, which is what makes the truncated envelope
of the free brace match the free dendriform dimensions.
"""

import json
from itertools import product

from treealg.linalg import LinComb, rat, rat_str
from treealg.dendriform import (
    DendElement,
    DendSpan,
    eval_pbt,
    psi_corolla,
    s_closure,
    upcomb,
)
from treealg.bialgebra import (
    TensorSquareElement,
    coproduct,
    primitives,
)


class BraceError(ValueError):
    pass


class BraceStructure:
    """Finite-dimensional brace algebra by structure constants.

    products maps (root index, argument index tuple) to a LinComb over
    basis indices; tuples absent within the declared bounds are zero.
    weight_bound, when set, marks the structure as a truncation: tuples
    of total weight beyond it are unknown and raise on access.
    """

    def __init__(self, dim, basis, max_arity, products, weights=None, weight_bound=None):
        assert dim == len(basis) and len(set(basis)) == dim
        self.dim = dim
        self.basis = list(basis)
        self.max_arity = max_arity
        self.products = {}
        for (root, args), value in products.items():
            args = tuple(args)
            assert len(args) >= 1
            value = value if isinstance(value, LinComb) else LinComb(value)
            if value:
                self.products[(root, args)] = value
        self.weights = list(weights) if weights else [1] * dim
        assert len(self.weights) == dim and all(w >= 1 for w in self.weights)
        self.weight_bound = weight_bound

    def is_trivial(self) -> bool:
        return not self.products

    def tuple_weight(self, root, args) -> int:
        return self.weights[root] + sum(self.weights[j] for j in args)

    def brace(self, root, args) -> LinComb:
        """{b_root | b_args...} as a combination of basis indices.

        Tuples absent from the table are zero at any arity; only a
        truncated structure (weight_bound set) refuses to answer beyond
        its bound."""
        args = tuple(args)
        if not args:
            return LinComb.single(root)
        if self.weight_bound is not None and self.tuple_weight(root, args) > self.weight_bound:
            raise BraceError(
                "structure constants unknown beyond total weight %d" % self.weight_bound
            )
        return self.products.get((root, args), LinComb())

    def brace_multi(self, root: LinComb, args) -> LinComb:
        """Multilinear extension to combinations of basis indices."""
        out = LinComb()
        spread = [list(a.terms.items()) for a in args]
        for r, cr in root.terms.items():
            for combo in product(*spread):
                coeff = cr
                for _, c in combo:
                    coeff = coeff * c
                out = out + self.brace(r, [i for i, _ in combo]).scale(coeff)
        return out

    def letters(self):
        return {name: self.weights[i] for i, name in enumerate(self.basis)}

    def to_json(self) -> dict:
        prods = []
        for (root, args), value in sorted(self.products.items()):
            prods.append(
                {
                    "root": root,
                    "args": list(args),
                    "value": [
                        {"coeff": rat_str(c), "index": i} for i, c in value.items()
                    ],
                }
            )
        out = {
            "dim": self.dim,
            "basis": self.basis,
            "max_arity": self.max_arity,
            "products": prods,
        }
        if any(w != 1 for w in self.weights):
            out["weights"] = self.weights
        return out

    @classmethod
    def from_json(cls, data) -> "BraceStructure":
        products = {}
        for entry in data.get("products", []):
            value = LinComb(
                (item["index"], rat(item["coeff"])) for item in entry["value"]
            )
            products[(entry["root"], tuple(entry["args"]))] = value
        return cls(
            data["dim"],
            data["basis"],
            data["max_arity"],
            products,
            weights=data.get("weights"),
        )

    @classmethod
    def load(cls, path) -> "BraceStructure":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def trivial_brace(dim, max_arity=6, basis=None) -> BraceStructure:
    if basis is None:
        basis = [chr(ord("a") + i) for i in range(dim)]
    return BraceStructure(dim, basis, max_arity, {})


def validate_brace(b: BraceStructure, arity_bound: int):
    """Check the corolla relations on all basis tuples with
    n+m+1 <= arity_bound; returns the list of defects (empty = valid).

    Tuples whose total weight exceeds a declared weight_bound are
    outside the structure's authority and are skipped.
    """
    defects = []
    idx = range(b.dim)
    for n in range(1, arity_bound):
        for m in range(1, arity_bound - n):
            for z in idx:
                for xs in product(idx, repeat=n):
                    for ys in product(idx, repeat=m):
                        if b.weight_bound is not None:
                            w = b.weights[z] + sum(b.weights[j] for j in xs + ys)
                            if w > b.weight_bound:
                                continue
                        lhs = b.brace_multi(b.brace(z, xs), [LinComb.single(y) for y in ys])
                        rhs = LinComb()
                        for blocks in _interval_partitions(list(ys), 2 * n + 1):
                            args = []
                            for i in range(n):
                                args.extend(LinComb.single(y) for y in blocks[2 * i])
                                args.append(b.brace(xs[i], blocks[2 * i + 1]))
                            args.extend(LinComb.single(y) for y in blocks[2 * n])
                            rhs = rhs + b.brace_multi(LinComb.single(z), args)
                        if lhs != rhs:
                            defects.append(
                                {
                                    "n": n,
                                    "m": m,
                                    "root": z,
                                    "xs": list(xs),
                                    "ys": list(ys),
                                    "lhs": _named(b, lhs),
                                    "rhs": _named(b, rhs),
                                }
                            )
    return defects


def _named(b: BraceStructure, combo: LinComb) -> str:
    return str(combo.map_keys(lambda i: b.basis[i]))


def _interval_partitions(items, k):
    """Splittings of an ordered list into k consecutive, possibly empty
    blocks."""
    from itertools import combinations_with_replacement

    m = len(items)
    for cuts in combinations_with_replacement(range(m + 1), k - 1):
        bounds = (0,) + cuts + (m,)
        yield [items[bounds[i] : bounds[i + 1]] for i in range(k)]


def relation_generators(b: BraceStructure, degree_bound: int):
    """Ideal generators: corolla image minus structure-constant value,
    for every basis tuple of total weight <= degree_bound.

    Includes arity 2 (identifying x<y - y>x with {x|y}); without it a
    trivial brace envelope would be the whole free algebra in degree 2.
    """
    assert degree_bound >= 2
    gens = []
    letters = [DendElement.generator(name) for name in b.basis]
    idx = range(b.dim)
    for arity in range(2, degree_bound + 1):
        found = False
        for tup in product(idx, repeat=arity):
            w = b.weights[tup[0]] + sum(b.weights[j] for j in tup[1:])
            if w > degree_bound:
                continue
            if b.weight_bound is not None and w > b.weight_bound:
                continue
            found = True
            value = b.brace(tup[0], tup[1:])
            low = DendElement()
            for i, c in value.terms.items():
                low = low + letters[i].scale(c)
            gens.append(psi_corolla([letters[j] for j in tup]) - low)
        if not found:
            break
    return gens


class TruncatedQuotient:
    """Degree-truncated envelope: quotient of the free dendriform
    algebra on the brace basis by the saturated relation ideal."""

    def __init__(self, brace, bound, slack, span: DendSpan, graded, stable, stable_dims):
        self.brace = brace
        self.bound = bound
        self.slack = slack
        self.span = span
        self.graded = graded
        self.stable = stable
        self._stable_dims = stable_dims
        self.notes = [
            "relation generators include the arity-2 identifications x<y - y>x = {x|y}"
        ]

    def weighted_degree(self, e: DendElement) -> int:
        return max(
            [0] + [self.span.wdeg(t) for t in e.body.terms]
        )

    def reduce(self, e: DendElement) -> DendElement:
        """Canonical representative modulo the truncated ideal."""
        if self.weighted_degree(e) > self.span.cutoff:
            raise BraceError("degree overflow: element exceeds the truncation")
        return self.span.reduce(e)

    def dims(self):
        """Filtration dimensions: degree 0 is the unit line."""
        cols = {}
        for w in self.span.col_degree:
            cols[w] = cols.get(w, 0) + 1
        ranks = self.span.degree_dims()
        out = {0: 1}
        for d in range(1, self.bound + 1):
            out[d] = cols.get(d, 0) - ranks.get(d, 0)
        return out

    def quotient_trees(self):
        """Non-pivot basis trees (class representatives) per degree."""
        pivot_set = set(self.span.span.pivots)
        out = {}
        for i, t in enumerate(self.span.columns):
            d = self.span.col_degree[i]
            if d <= self.bound and i not in pivot_set:
                out.setdefault(d, []).append(t)
        return out

    def class_of(self, t) -> DendElement:
        return self.reduce(DendElement.from_tree(t))

    def _reduce_leg(self, key) -> DendElement:
        if key.is_leaf():
            return DendElement.one()
        return self.reduce(DendElement.from_tree(key))

    def coproduct(self, e: DendElement) -> TensorSquareElement:
        """Coproduct computed upstairs, both tensor legs reduced."""
        if self.weighted_degree(e) > self.bound:
            raise BraceError("degree overflow: coproduct is reported up to the bound")
        return coproduct(self.reduce(e)).map_legs(self._reduce_leg, self._reduce_leg)

    def verify_coideal(self):
        """Reduce the coproduct of every ideal basis row in the quotient
        tensor square; non-vanishing rows are returned as defects."""
        defects = []
        for row in self.span.basis_elements():
            d = coproduct(row).map_legs(self._reduce_leg, self._reduce_leg)
            if not d.is_zero():
                defects.append(str(row))
        return defects

    def report(self) -> dict:
        dims = self.dims()
        prim_elems, prim_dims, _ = envelope_primitives(self)
        return {
            "dims": [dims[d] for d in sorted(dims)],
            "stable": self.stable,
            "graded": self.graded,
            "primitive_basis": [str(p) for p in prim_elems],
            "primitive_dims": {str(k): v for k, v in sorted(prim_dims.items())},
            "notes": self.notes,
        }


def build_envelope(b: BraceStructure, bound: int, slack: int = 1) -> TruncatedQuotient:
    """Saturate the relation ideal inside degrees <= bound+slack and
    truncate to the report bound.

    Homogeneous generators (trivial structure constants) make the ideal
    graded, so truncation is exact: the slack run is skipped and the
    stability flag is set.  Otherwise dimensions are compared against a
    slack+1 run; instability marks the report untrusted.
    """
    assert bound >= 1 and slack >= 0
    letters = b.letters()
    alphabet = list(letters)
    weights = letters

    def wdegs(e):
        return {sum(letters[x] for x in t.decorations()) for t in e.body.terms}

    gens = relation_generators(b, max(bound + slack, 2))
    graded = all(len(wdegs(g)) <= 1 for g in gens)
    if graded:
        span = s_closure(
            relation_generators(b, max(bound, 2)), bound, alphabet=alphabet, weights=weights
        )
        return TruncatedQuotient(b, bound, slack, span, True, True, None)
    span = s_closure(gens, bound + slack, alphabet=alphabet, weights=weights)
    span_next = s_closure(
        relation_generators(b, bound + slack + 1),
        bound + slack + 1,
        alphabet=alphabet,
        weights=weights,
    )
    quota = TruncatedQuotient(b, bound, slack, span, False, True, None)
    next_quota = TruncatedQuotient(b, bound, slack + 1, span_next, False, True, None)
    stable = quota.dims() == next_quota.dims()
    quota.stable = stable
    quota._stable_dims = next_quota.dims()
    return quota


def envelope_primitives(q: TruncatedQuotient):
    """Kernel of the reduced quotient coproduct on the class basis.

    Returns (primitive elements, dims by top degree, structure check),
    where the structure check replays every declared brace product on
    the primitive classes and compares with the structure constants.
    """
    classes = []
    for d in sorted(q.quotient_trees()):
        classes.extend(q.quotient_trees()[d])
    index = {t: i for i, t in enumerate(classes)}
    pair_index = {}
    columns = []
    for t in classes:
        col = {}
        delta = q.coproduct(DendElement.from_tree(t))
        delta = delta - TensorSquareElement.from_product(
            q.class_of(t), DendElement.one()
        )
        delta = delta - TensorSquareElement.from_product(
            DendElement.one(), q.class_of(t)
        )
        for key, c in delta.combo.terms.items():
            k = pair_index.setdefault(key, len(pair_index))
            col[k] = c
        columns.append(col)
    from treealg.linalg import RatMatrix, kernel_basis

    rows = [[col.get(i, 0) for col in columns] for i in range(len(pair_index))]
    if not rows:
        rows = [[0] * len(classes)]
    kernel = kernel_basis(RatMatrix.from_rows(rows, cols=len(classes)))
    elems = []
    for v in kernel:
        elems.append(
            DendElement(0, LinComb((classes[i], c) for i, c in enumerate(v) if c))
        )
    dims = {}
    for e in elems:
        dims[q.weighted_degree(e)] = dims.get(q.weighted_degree(e), 0) + 1
    check = _structure_roundtrip(q, elems)
    return elems, dims, check


def _structure_roundtrip(q: TruncatedQuotient, prim_elems) -> dict:
    """Recompute brace products on the letter classes and compare with
    the input structure constants (within the truncation bound)."""
    b = q.brace
    letters = [DendElement.generator(name) for name in b.basis]
    # primitives must span exactly the letter lines
    from treealg.linalg import span_contains

    prim_combos = [p.body for p in prim_elems]
    letters_in = all(
        span_contains(prim_combos, q.reduce(x).body) for x in letters
    )
    size_match = len(prim_elems) == b.dim
    product_defects = []
    for (root, args), value in sorted(b.products.items()):
        w = b.tuple_weight(root, args)
        if w > q.bound:
            continue
        lhs = q.reduce(psi_corolla([letters[root]] + [letters[j] for j in args]))
        rhs = DendElement()
        for i, c in value.terms.items():
            rhs = rhs + letters[i].scale(c)
        if lhs != q.reduce(rhs):
            product_defects.append({"root": root, "args": list(args)})
    # zero products within reach must reduce to zero as well
    idx = range(b.dim)
    for arity in range(2, q.bound + 1):
        for tup in product(idx, repeat=arity):
            w = b.weights[tup[0]] + sum(b.weights[j] for j in tup[1:])
            if w > q.bound:
                continue
            if b.weight_bound is not None and w > b.weight_bound:
                continue
            if (tup[0], tup[1:]) in b.products:
                continue
            lhs = q.reduce(psi_corolla([letters[j] for j in tup]))
            if not lhs.is_zero():
                product_defects.append({"root": tup[0], "args": list(tup[1:])})
    return {
        "primitive_count_matches_dim": size_match,
        "letters_primitive": letters_in,
        "product_defects": product_defects,
    }


def harvest_brace(n_gens: int, max_degree: int):
    """Brace structure on the primitives of the free algebra on n_gens
    generators, up to the degree bound; weights are primitive degrees.

    Returns (BraceStructure, primitive elements in basis order)."""
    alphabet = [chr(ord("a") + i) for i in range(n_gens)]
    prims = []
    weights = []
    for d in range(1, max_degree + 1):
        for p in primitives(d, alphabet):
            prims.append(p)
            weights.append(d)
    names = ["p%d" % (i + 1) for i in range(len(prims))]
    # pivot tree of each primitive (the echelon pivot): coordinates of a
    # homogeneous primitive vector read off at the pivots
    from treealg.dendriform import pbt_expr

    pivots = []
    for p in prims:
        terms = sorted(p.body.terms.items(), key=lambda kv: pbt_expr(kv[0]))
        pivots.append(terms[0][0])
        assert terms[0][1] == 1

    def express(e: DendElement) -> LinComb:
        coords = LinComb((i, e.body.coeff(pivots[i])) for i in range(len(prims)))
        rest = e
        for i, c in coords.terms.items():
            rest = rest - prims[i].scale(c)
        assert rest.is_zero(), "value escaped the primitive span"
        return coords

    products = {}
    idx = range(len(prims))
    for root in idx:
        for arity in range(2, max_degree + 1):
            for args in product(idx, repeat=arity - 1):
                w = weights[root] + sum(weights[j] for j in args)
                if w > max_degree:
                    continue
                value = psi_corolla([prims[root]] + [prims[j] for j in args])
                coords = express(value)
                if coords:
                    products[(root, args)] = coords
    b = BraceStructure(
        len(prims),
        names,
        max_degree,
        products,
        weights=weights,
        weight_bound=max_degree,
    )
    return b, prims


def envelope_word_class(q: TruncatedQuotient, letters_seq) -> DendElement:
    """Class of the word b_1...b_n under the tensor identification: the
    coalgebra isomorphism sends a word to the up-comb of its letters in
    reversed order (deconcatenation then matches the coproduct)."""
    gens = [DendElement.generator(a) for a in reversed(list(letters_seq))]
    return q.reduce(upcomb(gens))


def theta_roundtrip(n_gens: int, bound: int, slack: int = 0) -> dict:
    """Harvest the primitives of the free algebra, build the envelope of
    the harvested brace, and compare the two along the canonical map.

    Reports per-degree dimension equality, per-degree surjectivity of
    the evaluation map, and coproduct intertwining on the up-comb
    monomials of primitives.
    """
    from treealg.linalg import EchelonSpan, ZERO
    from treealg.trees import catalan, pbt_basis

    alphabet = [chr(ord("a") + i) for i in range(n_gens)]
    b, prims = harvest_brace(n_gens, bound)
    q = build_envelope(b, bound, slack)
    assign = {name: prims[i] for i, name in enumerate(b.basis)}

    def theta(e: DendElement) -> DendElement:
        out = DendElement(e.unit)
        for t, c in e.body.terms.items():
            out = out + eval_pbt(t, assign).scale(c)
        return out

    def theta_leg(key) -> DendElement:
        if key.is_leaf():
            return DendElement.one()
        return theta(DendElement.from_tree(key))

    dims = q.dims()
    free_dims = {0: 1}
    for d in range(1, bound + 1):
        free_dims[d] = catalan(d) * n_gens**d
    dim_equal = {d: dims[d] == free_dims[d] for d in range(bound + 1)}

    surjective = {0: True}
    classes = q.quotient_trees()
    for d in range(1, bound + 1):
        basis = sorted(pbt_basis(d, alphabet), key=str)
        index = {t: i for i, t in enumerate(basis)}
        span = EchelonSpan(len(basis))
        for t in classes.get(d, []):
            img = theta(DendElement.from_tree(t))
            v = [ZERO] * len(basis)
            for u, c in img.body.terms.items():
                v[index[u]] = c
            span.insert(v)
        surjective[d] = span.rank == len(basis)

    intertwined = True
    for length in range(1, bound + 1):
        for tup in product(range(b.dim), repeat=length):
            if sum(b.weights[i] for i in tup) > bound:
                continue
            u = upcomb([DendElement.generator(b.basis[i]) for i in tup])
            lhs = coproduct(theta(q.reduce(u)))
            rhs = q.coproduct(u).map_legs(theta_leg, theta_leg)
            if lhs != rhs:
                intertwined = False
    return {
        "dims_envelope": [dims[d] for d in sorted(dims)],
        "dims_free": [free_dims[d] for d in sorted(free_dims)],
        "dims_equal": all(dim_equal.values()),
        "surjective": all(surjective.values()),
        "intertwined": intertwined,
        "stable": q.stable,
        "defects": [
            d
            for d, ok in sorted(dim_equal.items())
            if not ok
        ]
        + [("surjectivity", d) for d, ok in sorted(surjective.items()) if not ok],
    }
