"""Diagonal neighbourhoods and pluggable membership classes.

A class declares which cochains count as tame.  Backend "all" admits
everything; backend "quotient" admits cochains factoring through the cosets
of a fixed normal subgroup.  Bicochains get the asymmetric notion: factoring
must hold for all x-tuples but only for y-tuples near the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ValidationError
from .groups import FiniteGroup, all_subgroups, is_normal, left_cosets


@dataclass(frozen=True)
class IdentityNbhd:
    group: FiniteGroup
    members: tuple[int, ...]

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def is_symmetric(self) -> bool:
        return all(self.group.inv[g] in self.members for g in self.members)

    def is_full(self) -> bool:
        return len(self.members) == self.group.order


def identity_nbhd(group: FiniteGroup, elements) -> IdentityNbhd:
    members = tuple(sorted(set(elements)))
    if any(g < 0 or g >= group.order for g in members):
        raise ValidationError("neighbourhood contains elements outside the group")
    if group.identity not in members:
        raise ValidationError("neighbourhood must contain the identity")
    return IdentityNbhd(group, members)


@dataclass(frozen=True)
class DiagonalNbhd:
    nbhd: IdentityNbhd
    degree: int
    tuples: tuple[tuple[int, ...], ...]

    def __contains__(self, tup) -> bool:
        return tuple(tup) in self.tuples


def diagonal_nbhd(nbhd: IdentityNbhd, p: int) -> DiagonalNbhd:
    """Tuples whose pairwise quotients g_i^-1 g_j all lie in the nbhd.

    Length-1 tuples impose no condition, so the degree-0 set is all of G.
    """
    if p < 0:
        raise ValidationError("degree must be nonnegative")
    grp = nbhd.group
    allowed = set(nbhd.members)
    out = []
    for tup in product(range(grp.order), repeat=p + 1):
        ok = True
        for i in range(len(tup)):
            gi_inv = grp.inv[tup[i]]
            for j in range(len(tup)):
                if i != j and grp.mult[gi_inv][tup[j]] not in allowed:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tup)
    return DiagonalNbhd(nbhd, p, tuple(out))


@dataclass(frozen=True)
class ContinuityClass:
    """Backend "all" or "quotient".  For "quotient", coset_index maps each
    element to the least element of its coset mod the stored normal subgroup.
    """

    group: FiniteGroup
    kind: str
    normal_subgroup: tuple[int, ...] | None = None
    coset_index: tuple[int, ...] | None = None

    def coset_of(self, g: int) -> int:
        return g if self.kind == "all" else self.coset_index[g]

    def __repr__(self) -> str:
        if self.kind == "all":
            return "ContinuityClass(all)"
        return f"ContinuityClass(quotient, N={list(self.normal_subgroup)})"


def all_class(group: FiniteGroup) -> ContinuityClass:
    return ContinuityClass(group=group, kind="all")


def quotient_class(group: FiniteGroup, subgroup_elements) -> ContinuityClass:
    sub = tuple(sorted(set(subgroup_elements)))
    closed = all(group.mult[a][b] in set(sub) for a in sub for b in sub)
    has_inv = all(group.inv[a] in set(sub) for a in sub)
    if group.identity not in sub or not closed or not has_inv:
        raise ValidationError("quotient backend needs a subgroup")
    if not is_normal(group, sub):
        raise ValidationError("quotient backend needs a normal subgroup")
    coset_index = [0] * group.order
    for coset in left_cosets(group, sub):
        rep = min(coset)
        for g in coset:
            coset_index[g] = rep
    return ContinuityClass(group=group, kind="quotient",
                           normal_subgroup=sub, coset_index=tuple(coset_index))


def witness_candidates(cls: ContinuityClass) -> tuple[IdentityNbhd, ...]:
    """Search lattice for local membership witnesses, largest first.

    Generated by the identity singleton and the cosets of the nontrivial
    subgroups, closed under union, restricted to sets containing the
    identity.  Small enough to scan exhaustively at table scale.
    """
    grp = cls.group
    if cls.kind == "all":
        return (identity_nbhd(grp, range(grp.order)),)
    base: set[frozenset[int]] = {frozenset([grp.identity])}
    for sub in all_subgroups(grp):
        if len(sub) == 1:
            continue
        for coset in left_cosets(grp, sub):
            base.add(frozenset(coset))
    closed = set(base)
    changed = True
    while changed:
        changed = False
        for a in list(closed):
            for b in list(closed):
                u = a | b
                if u not in closed:
                    closed.add(u)
                    changed = True
    with_id = [s for s in closed if grp.identity in s]
    with_id.sort(key=lambda s: (-len(s), tuple(sorted(s))))
    return tuple(identity_nbhd(grp, s) for s in with_id)


def _factors_on(cls: ContinuityClass, order: int, entries) -> tuple | None:
    """Check that (key_tuple -> value) table is constant on coset patterns.

    entries yields (tuple_of_elements, value) pairs; the pattern collapses
    every element to its coset representative.  Returns None when consistent,
    otherwise a pair of conflicting argument tuples.
    """
    seen: dict[tuple, tuple] = {}
    for tup, value in entries:
        pattern = tuple(cls.coset_of(g) for g in tup)
        prev = seen.get(pattern)
        if prev is None:
            seen[pattern] = (tup, value)
        elif prev[1] != value:
            return (prev[0], tup)
    return None


def continuity_conflict(cls: ContinuityClass, f) -> tuple | None:
    """None when f is continuous for the class, else two conflicting tuples.

    Accepts a Cochain or a BiCochain; bicochain tables are keyed by the
    concatenated (x, y) argument tuple.
    """
    if cls.kind == "all":
        return None
    from .bicomplex import BiCochain
    from .cochains import tuples_of

    order = cls.group.order
    if isinstance(f, BiCochain):
        entries = (
            (x + y, f.value(x, y))
            for x in tuples_of(order, f.p + 1)
            for y in tuples_of(order, f.q + 1)
        )
    else:
        entries = zip(tuples_of(order, f.degree + 1), f.values)
    return _factors_on(cls, order, entries)


def is_continuous(cls: ContinuityClass, f) -> bool:
    _check_same_group(cls, f)
    return continuity_conflict(cls, f) is None


def local_conflict(cls: ContinuityClass, f, nbhd: IdentityNbhd) -> tuple | None:
    """Factoring check restricted near the diagonal.

    For a Cochain the whole argument tuple is restricted to the diagonal
    neighbourhood.  For a BiCochain only the y-block is restricted; the
    x-block ranges over the full power.
    """
    if cls.kind == "all":
        return None
    from .bicomplex import BiCochain
    from .cochains import tuples_of

    order = cls.group.order
    if isinstance(f, BiCochain):
        gamma = diagonal_nbhd(nbhd, f.q).tuples
        entries = (
            (x + y, f.value(x, y))
            for x in tuples_of(order, f.p + 1)
            for y in gamma
        )
    else:
        gamma = diagonal_nbhd(nbhd, f.degree).tuples
        entries = ((t, f.value(t)) for t in gamma)
    return _factors_on(cls, order, entries)


def is_locally_continuous(cls: ContinuityClass, f) -> IdentityNbhd | None:
    """Maximal witness neighbourhood, or None when even the smallest fails."""
    _check_same_group(cls, f)
    for nbhd in witness_candidates(cls):
        if local_conflict(cls, f, nbhd) is None:
            return nbhd
    return None


def is_member(cls: ContinuityClass, f) -> bool:
    """Membership in the class complex.

    Monotone in the neighbourhood: shrinking the witness weakens the
    condition, so membership is equivalent to the identity-singleton witness
    working.
    """
    _check_same_group(cls, f)
    if cls.kind == "all":
        return True
    singleton = identity_nbhd(cls.group, [cls.group.identity])
    return local_conflict(cls, f, singleton) is None


def _check_same_group(cls: ContinuityClass, f) -> None:
    if f.group != cls.group:
        raise ValidationError("class and cochain live over different groups")


@dataclass(frozen=True)
class GammaRestriction:
    nbhd: IdentityNbhd
    degree: int
    entries: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def value(self, tup):
        key = tuple(tup)
        for t, v in self.entries:
            if t == key:
                return v
        raise KeyError(key)


def restrict_to_gamma(f, nbhd: IdentityNbhd) -> GammaRestriction:
    gamma = diagonal_nbhd(nbhd, f.degree)
    entries = tuple((t, f.value(t)) for t in gamma.tuples)
    return GammaRestriction(nbhd, f.degree, entries)


def cochain_member_blocks(cls: ContinuityClass, degree: int) -> list[list[int]]:
    """Partition of table indices into groups forced to share a value.

    Backend "all" gives all singletons.  Blocks are ordered by their first
    table index, so the induced member basis is deterministic.
    """
    from .cochains import tuple_index, tuples_of

    order = cls.group.order
    count = order ** (degree + 1)
    if cls.kind == "all":
        return [[i] for i in range(count)]
    blocks: dict[tuple, list[int]] = {}
    for tup in tuples_of(order, degree + 1):
        pattern = tuple(cls.coset_of(g) for g in tup)
        blocks.setdefault(pattern, []).append(tuple_index(order, tup))
    return sorted(blocks.values(), key=lambda b: b[0])


def bicochain_member_blocks(cls: ContinuityClass, p: int, q: int) -> list[list[int]]:
    """Blocks for the (p, q) member subspace at the identity-singleton witness.

    Indices address the flattened x-major table.  Entries with y off the
    diagonal are unconstrained singletons; diagonal-y entries are grouped by
    the joint coset pattern.
    """
    from .cochains import tuple_index, tuples_of

    order = cls.group.order
    y_count = order ** (q + 1)
    total = order ** (p + 1) * y_count
    if cls.kind == "all":
        return [[i] for i in range(total)]
    if q == 0:
        # Length-1 y-tuples see no diagonal restriction: global factoring
        # over the concatenated (p+2)-tuple.
        return cochain_member_blocks(cls, p + 1)
    blocks: dict[tuple, list[int]] = {}
    singles: list[list[int]] = []
    for x in tuples_of(order, p + 1):
        x_idx = tuple_index(order, x) * y_count
        x_pat = tuple(cls.coset_of(g) for g in x)
        for y in tuples_of(order, q + 1):
            idx = x_idx + tuple_index(order, y)
            if all(g == y[0] for g in y):
                blocks.setdefault(x_pat + (cls.coset_of(y[0]),), []).append(idx)
            else:
                singles.append([idx])
    return sorted(list(blocks.values()) + singles, key=lambda b: b[0])
