"""Free categories on finite EI quivers and the freeness test.

The free category on an EI quiver has the quiver's groups as
endomorphisms and, between distinct objects, the disjoint union over
directed paths of glued biset products: tuples of arrow-biset elements
modulo the middle-vertex moves (t·h, s) ~ (t, h·s).  Composition is
concatenation followed by class lookup.

A category is free exactly when the canonical functor from the free
category on its own quiver of unfactorizables is bijective on hom-sets;
since it is always surjective, comparing cardinalities suffices.  An
independent oracle checks the equivalent unique-factorization property
directly by enumerating decompositions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SchemaError, ValidationError
from .eicat import (ArrowBiset, EICategory, EIQuiverData, MorphId,
                    _object_order, compose, ei_quiver_of, make_homset,
                    unfactorizables, validate_category)
from .permgrp import PermGroup

DEFAULT_PATH_BOUND = 100000


def build_ei_quiver_input(objects, groups: dict[str, PermGroup],
                          homspecs) -> EIQuiverData:
    """Parse the arrow list of an ei-quiver document into quiver data."""
    arrows = []
    for hspec in homspecs:
        try:
            x, y = str(hspec["from"]), str(hspec["to"])
            size = int(hspec["size"])
            lga = hspec.get("left_action", [])
            rga = hspec.get("right_action", [])
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"bad arrow entry: {e}") from e
        if x not in groups or y not in groups:
            raise SchemaError(f"arrow references unknown object {x!r} or {y!r}")
        if x == y:
            raise ValidationError("arrow-loop",
                                  "loop arrows make the free category infinite")
        if size <= 0:
            raise SchemaError(f"arrow {x}->{y} must have positive size")
        # reuse the hom-set validator: same action axioms apply to arrows
        hs = make_homset(x, y, size, lga, rga, groups[x], groups[y])
        arrows.append(ArrowBiset(x, y, size, hs.left_gen, hs.right_gen))
    return EIQuiverData(tuple(objects), dict(groups), tuple(arrows))


def biset_product(b2: ArrowBiset, b1: ArrowBiset,
                  middle: PermGroup) -> ArrowBiset:
    """Glued product of an (K, H)-biset with an (H, G)-biset.

    Elements are pairs (t, s) modulo the moves (t·h, s) ~ (t, h·s) over
    the generators h of the middle group; the outer actions descend to
    the classes.  This is the two-arrow case of _path_classes, kept as a
    standalone operation for composing covers arrow by arrow.
    """
    if b2.source != b1.target:
        raise ValidationError("biset-middle-mismatch",
                              f"cannot glue {b1.source}->{b1.target} with "
                              f"{b2.source}->{b2.target}")
    uf = _UnionFind()
    pairs = [(t, s) for t in range(b2.size) for s in range(b1.size)]
    for k in range(len(middle.generators)):
        ract, lact = b2.right_gen[k], b1.left_gen[k]
        for t, s in pairs:
            uf.union((ract[t], s), (t, lact[s]))
    roots = sorted({uf.find(pr) for pr in pairs})
    idx = {r: i for i, r in enumerate(roots)}

    def descend(move):
        return tuple(idx[uf.find(move(t, s))] for t, s in roots)

    left_gen = tuple(descend(lambda t, s, a=act: (a[t], s))
                     for act in b2.left_gen)
    right_gen = tuple(descend(lambda t, s, a=act: (t, a[s]))
                      for act in b1.right_gen)
    return ArrowBiset(b1.source, b2.target, len(roots), left_gen, right_gen)


def _quiver_paths(quiv: EIQuiverData, bound: int):
    """All directed arrow-index paths per object pair, DFS in arrow order.

    Raises on a directed cycle (the free category would be infinite)."""
    arrows_from: dict[str, list[int]] = {x: [] for x in quiv.objects}
    for i, a in enumerate(quiv.arrows):
        arrows_from[a.source].append(i)

    # object-level cycle detection first, so DFS below terminates
    _object_order(quiv.objects,
                  {(a.source, a.target): None for a in quiv.arrows})

    paths: dict[tuple[str, str], list[tuple[int, ...]]] = {}
    count = 0
    for x in quiv.objects:
        stack = [(x, ())]
        while stack:
            cur, pfx = stack.pop()
            # keep DFS order deterministic: push in reverse arrow order
            for i in reversed(arrows_from[cur]):
                path = pfx + (i,)
                tgt = quiv.arrows[i].target
                paths.setdefault((x, tgt), []).append(path)
                count += 1
                if count > bound:
                    raise ValidationError(
                        "path-bound",
                        f"free category exceeds {bound} paths")
                stack.append((tgt, path))
    for key in paths:
        paths[key].sort()
    return paths


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, a):
        p = self.parent.setdefault(a, a)
        if p != a:
            p = self.parent[a] = self.find(p)
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the lexicographically least tuple as the root
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _path_classes(quiv: EIQuiverData, path: tuple[int, ...], bound: int):
    """Equivalence classes of biset-element tuples along one path.

    Returns (class representatives in least-tuple order, tuple -> class id).
    """
    sizes = [quiv.arrows[i].size for i in path]
    total = 1
    for s in sizes:
        total *= s
        if total > bound:
            raise ValidationError("path-bound",
                                  f"path biset exceeds {bound} tuples")
    uf = _UnionFind()
    moves = []
    for i in range(len(path) - 1):
        mid = quiv.arrows[path[i]].target
        for k in range(len(quiv.groups[mid].generators)):
            moves.append((i, quiv.arrows[path[i]].left_gen[k],
                          quiv.arrows[path[i + 1]].right_gen[k]))
    for t in itertools.product(*(range(s) for s in sizes)):
        for i, lact, ract in moves:
            # (t_{i+1}·h, t_i) ~ (t_{i+1}, h·t_i)
            a = t[:i + 1] + (ract[t[i + 1]],) + t[i + 2:]
            b = t[:i] + (lact[t[i]],) + t[i + 1:]
            uf.union(a, b)
        uf.find(t)
    roots: dict[tuple, list[tuple]] = {}
    for t in itertools.product(*(range(s) for s in sizes)):
        roots.setdefault(uf.find(t), []).append(t)
    reps = sorted(roots)
    class_of = {}
    for ci, r in enumerate(reps):
        for t in roots[r]:
            class_of[t] = ci
    return reps, class_of


def generate_free_category(quiv: EIQuiverData,
                           max_paths: int = DEFAULT_PATH_BOUND) -> EICategory:
    """The free EI category on the quiver, as a fully explicit category."""
    paths = _quiver_paths(quiv, max_paths)

    # per pair: global element order is (path in sorted order, class in
    # least-representative order)
    elem_of: dict[tuple[str, str], dict] = {}      # (path, tuple) -> index
    elems: dict[tuple[str, str], list] = {}        # index -> (path, rep tuple)
    for key, plist in paths.items():
        lookup: dict = {}
        flat: list = []
        for path in plist:
            reps, class_of = _path_classes(quiv, path, max_paths)
            base = len(flat)
            flat.extend((path, r) for r in reps)
            for t, ci in class_of.items():
                lookup[(path, t)] = base + ci
        elem_of[key] = lookup
        elems[key] = flat

    homs = {}
    for (x, y), flat in elems.items():
        left_gen = []
        for k in range(len(quiv.groups[y].generators)):
            perm = []
            for path, rep in flat:
                act = quiv.arrows[path[-1]].left_gen[k]
                moved = rep[:-1] + (act[rep[-1]],)
                perm.append(elem_of[(x, y)][(path, moved)])
            left_gen.append(tuple(perm))
        right_gen = []
        for k in range(len(quiv.groups[x].generators)):
            perm = []
            for path, rep in flat:
                act = quiv.arrows[path[0]].right_gen[k]
                moved = (act[rep[0]],) + rep[1:]
                perm.append(elem_of[(x, y)][(path, moved)])
            right_gen.append(tuple(perm))
        homs[(x, y)] = make_homset(x, y, len(flat), left_gen, right_gen,
                                   quiv.groups[x], quiv.groups[y])

    comp = {}
    for (x, y) in elems:
        for (y2, z) in elems:
            if y2 != y or z == x or (x, z) not in elems:
                continue
            table = []
            for qpath, qrep in elems[(y, z)]:
                row = []
                for rpath, rrep in elems[(x, y)]:
                    row.append(elem_of[(x, z)][(rpath + qpath, rrep + qrep)])
                table.append(tuple(row))
            comp[(x, y, z)] = tuple(table)

    topo = _object_order(quiv.objects, homs)
    cat = EICategory(quiv.objects, dict(quiv.groups), homs, comp, topo)
    validate_category(cat)
    return cat


def free_cover(cat: EICategory, max_paths: int = DEFAULT_PATH_BOUND) -> EICategory:
    """Free category on the category's quiver of unfactorizables."""
    return generate_free_category(ei_quiver_of(cat), max_paths=max_paths)


def is_free(cat: EICategory, max_paths: int = DEFAULT_PATH_BOUND) -> bool:
    """Whether the canonical functor from the free cover is bijective.

    The functor is always surjective, so equality of hom-set sizes over
    every object pair decides it.
    """
    cover = free_cover(cat, max_paths=max_paths)
    pairs = set(cat.homs) | set(cover.homs)
    return all(cat.hom_size(*pr) == cover.hom_size(*pr) for pr in pairs)


# ---------------------------------------------------------------------------
# unique factorization oracle (independent of the cover construction)

def decompositions(cat: EICategory, alpha: MorphId,
                   _unfact=None) -> list[tuple[MorphId, ...]]:
    """All ways to write alpha as a composite of unfactorizables."""
    if _unfact is None:
        _unfact = unfactorizables(cat)
    x, y = alpha.source, alpha.target
    out = []
    if alpha.index in _unfact.get((x, y), ()):
        out.append((alpha,))
    for z in cat.objects:
        if z in (x, y) or (x, z) not in cat.homs or (z, y) not in cat.homs:
            continue
        for bi in _unfact[(x, z)]:
            beta = MorphId(x, z, bi)
            for di in range(cat.homs[(z, y)].size):
                delta = MorphId(z, y, di)
                if compose(cat, delta, beta) == alpha:
                    for rest in decompositions(cat, delta, _unfact):
                        out.append((beta,) + rest)
    return out


def _relatable(cat: EICategory, d1, d2) -> bool:
    """Whether two decompositions differ by an interleaved chain of
    automorphisms at the intermediate objects."""
    if len(d1) != len(d2):
        return False
    if any(a.source != b.source or a.target != b.target
           for a, b in zip(d1, d2)):
        return False
    n = len(d1)
    if n == 1:
        return d1[0] == d2[0]
    # candidates h_i with d2_i * h_{i-1} = h_i * d1_i, h_0 = h_n = identity
    mid = d1[0].target
    cand = {h for h in range(len(cat.groups[mid]))
            if compose(cat, MorphId(mid, mid, h), d1[0]) == d2[0]}
    for i in range(1, n - 1):
        mid2 = d1[i].target
        nxt = set()
        for h in range(len(cat.groups[mid2])):
            lhs = compose(cat, MorphId(mid2, mid2, h), d1[i])
            if any(compose(cat, d2[i], MorphId(mid, mid, hp)) == lhs
                   for hp in cand):
                nxt.add(h)
        cand, mid = nxt, mid2
        if not cand:
            return False
    return any(compose(cat, d2[-1], MorphId(mid, mid, hp)) == d1[-1]
               for hp in cand)


def has_unique_factorization(cat: EICategory, alpha: MorphId) -> bool:
    """Whether every pair of decompositions of alpha is related by an
    automorphism chain."""
    ds = decompositions(cat, alpha)
    if not ds:
        return False
    return all(_relatable(cat, ds[0], d) for d in ds[1:])


def category_has_ufp(cat: EICategory) -> bool:
    """Whether every non-endomorphism factors uniquely; equivalent to
    freeness, which the tests exploit as an independent oracle."""
    unfact = unfactorizables(cat)
    for (x, y), hs in cat.homs.items():
        for i in range(hs.size):
            if not has_unique_factorization(cat, MorphId(x, y, i)):
                return False
    return True
