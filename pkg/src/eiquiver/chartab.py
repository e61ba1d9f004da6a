"""Exact character theory over a splitting prime field.

All scalars live in F_p where p ≡ 1 (mod exponent) for every group in
play and p exceeds twice the largest group order.  Under those
constraints F_p is a splitting field for every group and subgroup
involved, every group algebra is split semisimple, and all multiplicities
agree with their characteristic-0 counterparts and are recovered exactly
as least nonnegative residues.

Character tables are computed by the Burnside/Dixon method: simultaneous
eigenvectors of the class-multiplication matrices over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from sympy.ntheory import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from . import linalg
from .permgrp import (ConjClass, PermGroup, QuotientGroup, SubgroupHandle,
                      GroupIso, class_index_of, conjugacy_classes)

PRIME_SEARCH_BOUND = 10**6


class CharTableError(ValueError):
    pass


@dataclass(frozen=True)
class SplittingPrime:
    p: int
    certified_exponent: int   # lcm of exponents of registered groups
    certified_max_order: int

    def certify(self, g: PermGroup) -> None:
        if self.certified_exponent % g.exponent() != 0 or len(g) > self.certified_max_order:
            raise CharTableError(
                f"prime {self.p} not certified for a group of order {len(g)}")


def splitting_prime_for(exponent: int, max_order: int) -> SplittingPrime:
    """Minimal prime p ≡ 1 mod exponent with p > 2*max_order."""
    p = 2 * max_order + 1
    # align to the residue class 1 mod exponent
    if exponent > 1:
        p += (1 - p) % exponent
    else:
        p = max(p, 3)
    while p <= PRIME_SEARCH_BOUND:
        if p > 2 * max_order and isprime(p):
            return SplittingPrime(p, exponent, max_order)
        p += exponent if exponent > 1 else 1
    raise CharTableError(f"no splitting prime below {PRIME_SEARCH_BOUND}")


def certified_prime(p: int, groups) -> SplittingPrime:
    """Certify a user-supplied prime against the given groups, or raise."""
    ex = 1
    mx = 1
    for g in groups:
        ex = lcm(ex, g.exponent())
        mx = max(mx, len(g))
    if not isprime(p):
        raise CharTableError(f"{p} is not prime")
    if p % ex != 1 and ex > 1:
        raise CharTableError(f"{p} is not 1 mod the group exponent {ex}")
    if p <= 2 * mx:
        raise CharTableError(f"{p} must exceed twice the largest group order {mx}")
    return SplittingPrime(p, ex, mx)


def choose_splitting_prime(groups) -> SplittingPrime:
    groups = list(groups)
    if not groups:
        raise CharTableError("need at least one group")
    ex = 1
    mx = 1
    for g in groups:
        ex = lcm(ex, g.exponent())
        mx = max(mx, len(g))
    return splitting_prime_for(ex, mx)


@dataclass(frozen=True)
class ClassFunction:
    """A class function stored by element position (groups are tiny)."""
    group: PermGroup
    values: tuple[int, ...]

    def __post_init__(self):
        assert len(self.values) == len(self.group.elements)

    def at_inverse(self, pos: int) -> int:
        return self.values[self.group.inv(pos)]


def inner_product(f: ClassFunction, g: ClassFunction, p: int) -> int:
    """⟨f, g⟩ = |G|^{-1} Σ f(x) g(x^{-1}) in F_p, as a least residue."""
    grp = f.group
    acc = 0
    for i in range(len(grp)):
        acc = (acc + f.values[i] * g.at_inverse(i)) % p
    return acc * linalg.inv_scalar(len(grp), p) % p


@dataclass(frozen=True)
class CharTable:
    group: PermGroup
    p: int
    classes: tuple[ConjClass, ...]
    class_of: tuple[int, ...]              # element position -> class index
    rows: tuple[tuple[int, ...], ...]      # irreducible values per class
    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def irreducible(self, i: int) -> ClassFunction:
        vals = tuple(self.rows[i][self.class_of[e]] for e in range(len(self.group)))
        return ClassFunction(self.group, vals)

    def irreducibles(self):
        return [self.irreducible(i) for i in range(len(self))]


def _class_mult_matrices(g: PermGroup, classes, class_of, p: int):
    """M_i with (M_i)[j,k] = #{(u,v) in C_i x C_j : uv = w_k} for fixed w_k."""
    r = len(classes)
    mats = [linalg.zeros(r, r) for _ in range(r)]
    for k in range(r):
        w = classes[k].rep
        for i in range(r):
            for u in classes[i].members:
                v = g.mul(g.inv(u), w)
                mats[i][class_of[v], k] += 1
    return [m % p for m in mats]


def _split_common_eigenvectors(mats, r: int, p: int):
    """Intersect eigenspaces of the commuting matrices until 1-dimensional."""
    spaces = [linalg.eye(r)]  # columns span each subspace
    for m in mats:
        nxt = []
        for c in spaces:
            if c.shape[1] == 1:
                nxt.append(c)
                continue
            mc = linalg.matmul(m, c, p)
            s = linalg.solve(c, mc, p)
            if s is None:
                raise CharTableError("class-sum matrix does not stabilize subspace")
            roots = sorted(set(linalg.poly_roots(linalg.char_poly(s, p), p)))
            for lam in roots:
                ns = linalg.nullspace((s - lam * linalg.eye(s.shape[0])) % p, p)
                if ns.shape[0] == 0:
                    continue
                sub = linalg.matmul(c, ns.T % p, p)
                # canonicalize the spanning columns
                sub = linalg.row_space(sub.T, p).T
                nxt.append(sub)
        spaces = nxt
        if all(c.shape[1] == 1 for c in spaces):
            break
    if any(c.shape[1] != 1 for c in spaces):
        raise CharTableError("eigenspaces did not split; prime is not splitting")
    return [c[:, 0] for c in spaces]


def character_table(g: PermGroup, prime: SplittingPrime) -> CharTable:
    prime.certify(g)
    p = prime.p
    classes = tuple(conjugacy_classes(g))
    class_of = tuple(class_index_of(g, list(classes)))
    r = len(classes)
    inv_class = [class_of[g.inv(classes[k].rep)] for k in range(r)]
    mats = _class_mult_matrices(g, classes, class_of, p)
    omegas = _split_common_eigenvectors(mats, r, p)

    n = len(g)
    rows = []
    for om in omegas:
        om = [int(x) % p for x in om]
        if om[0] == 0:
            raise CharTableError("eigenvector vanishes at the identity class")
        scale = linalg.inv_scalar(om[0], p)
        om = [x * scale % p for x in om]
        # ω_k = |C_k| χ(g_k) / d and orthogonality pin down d^2
        acc = 0
        for k in range(r):
            acc = (acc + om[k] * om[inv_class[k]] * linalg.inv_scalar(len(classes[k]), p)) % p
        d2 = n * linalg.inv_scalar(acc, p) % p
        root = sqrt_mod(d2, p)
        if root is None:
            raise CharTableError("character degree is not a square mod p")
        d = min(int(root), p - int(root))
        row = tuple(d * om[k] % p * linalg.inv_scalar(len(classes[k]), p) % p
                    for k in range(r))
        rows.append(row)

    rows.sort(key=lambda row: (row[0], row))
    dims = tuple(row[0] for row in rows)
    if sum(d * d for d in dims) != n:
        raise CharTableError("sum of squared degrees does not match group order")
    labels = tuple(f"X{i}" for i in range(r))
    table = CharTable(g, p, classes, class_of, tuple(rows), dims, labels)
    _check_orthogonality(table)
    return table


def _check_orthogonality(t: CharTable) -> None:
    irr = t.irreducibles()
    for i in range(len(irr)):
        for j in range(i, len(irr)):
            ip = inner_product(irr[i], irr[j], t.p)
            if ip != (1 if i == j else 0):
                raise CharTableError("row orthogonality fails")
    if any(v != 1 for v in t.rows[0]):
        raise CharTableError("first irreducible is not the trivial character")


def class_fusion(sub: SubgroupHandle, sub_table: CharTable,
                 parent_table: CharTable) -> list[int]:
    """Map each subgroup class to the parent class containing it."""
    out = []
    parent = sub.parent
    for c in sub_table.classes:
        perm = sub_table.group.elements[c.rep]
        out.append(parent_table.class_of[parent.index_of[perm]])
    return out


def restrict(chi: ClassFunction, sub: SubgroupHandle) -> ClassFunction:
    vals = tuple(chi.values[i] for i in sub.member_positions)
    return ClassFunction(sub.as_group(), vals)


def restriction_multiplicity(chi: ClassFunction, sub: SubgroupHandle,
                             mu: ClassFunction, p: int) -> int:
    """Multiplicity of mu (on sub) inside chi restricted to sub.

    Valid as an integer because p exceeds twice every group order, so
    every multiplicity is its own least residue.
    """
    return inner_product(restrict(chi, sub), mu, p)


def inflate(chi: ClassFunction, quot: QuotientGroup) -> ClassFunction:
    """Pull a class function on the quotient back to the base subgroup."""
    base = quot.base
    vals = tuple(chi.values[quot.projection[i]] for i in base.member_positions)
    return ClassFunction(base.as_group(), vals)


def transport(chi: ClassFunction, iso: GroupIso) -> ClassFunction:
    """Move a class function along a quotient isomorphism (value at q is
    the value at iso^{-1}(q))."""
    back = iso.inverse()
    tgt, _ = iso.target.as_group()
    vals = tuple(chi.values[back(c)] for c in range(len(iso.target)))
    return ClassFunction(tgt, vals)


def permutation_character(g: PermGroup, act, npoints: int, p: int) -> ClassFunction:
    """Fixed-point character of the action `act(element_pos, point) -> point`."""
    vals = []
    for i in range(len(g)):
        fixed = sum(1 for pt in range(npoints) if act(i, pt) == pt)
        vals.append(fixed % p)
    return ClassFunction(g, tuple(vals))
