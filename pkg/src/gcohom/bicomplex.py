"""First-quadrant double complex of two-block cochains and its total complex.

Tables are keyed by an x-block of length p+1 and a y-block of length q+1.
The horizontal differential is the plain alternating face sum over x; the
vertical one carries a (-1)^p twist so the two anticommute and the total
differential squares to zero.

Sign conventions are frozen constants here, fixed by requiring four exact
identities (both augmentations are chain maps, the row and column homotopy
identities hold, and the corner witness below satisfies its equation).  A
generated test re-derives each one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochains import Cochain, tuple_index, tuples_of
from .continuity import (ContinuityClass, continuity_conflict, identity_nbhd,
                         is_member, local_conflict)
from .errors import ClassViolationError, InternalCheckError, ValidationError
from .groups import FiniteGroup
from .modules import GModule

# All four derived normalizations, in one place.  The first two say the edge
# inclusions need no sign at all; the last two are per-bidegree exponents.
SIGN_ROW_AUGMENT = 1          # row edge (0, n), value f(y-block)
SIGN_COL_AUGMENT = 1          # column edge (n, 0), value f(x-block)
ROW_CONTRACTION_SIGN_EXP = 1  # sign (-1)^p, y_0 copied into the last x slot
VERTICAL_INSERTION_SIGN_EXP = 1  # sign (-1)^p, identity prepended to y
CORNER_WITNESS_SIGN_EXP = 1   # component (p, q) carries (-1)^(p+1)


@dataclass(frozen=True)
class BiCochain:
    group: FiniteGroup
    module: GModule
    p: int
    q: int
    values: tuple[tuple[int, ...], ...]

    def value(self, x, y) -> tuple[int, ...]:
        order = self.group.order
        return self.values[tuple_index(order, x) * order ** (self.q + 1)
                           + tuple_index(order, y)]

    def is_zero(self) -> bool:
        zero = self.module.zero()
        return all(v == zero for v in self.values)

    def __repr__(self) -> str:
        return f"BiCochain(p={self.p}, q={self.q}, group={self.group.label!r})"


def bicochain_from_function(group: FiniteGroup, module: GModule, p: int, q: int, fn) -> BiCochain:
    if p < 0 or q < 0:
        raise ValidationError("bidegree components must be nonnegative")
    order = group.order
    values = tuple(
        module.reduce(fn(x, y))
        for x in tuples_of(order, p + 1)
        for y in tuples_of(order, q + 1)
    )
    return BiCochain(group, module, p, q, values)


def zero_bicochain(group: FiniteGroup, module: GModule, p: int, q: int) -> BiCochain:
    count = group.order ** (p + 1) * group.order ** (q + 1)
    return BiCochain(group, module, p, q, (module.zero(),) * count)


def add_bicochains(f: BiCochain, g: BiCochain) -> BiCochain:
    _same_shape(f, g)
    mod = f.module
    return BiCochain(f.group, mod, f.p, f.q,
                     tuple(mod.add(a, b) for a, b in zip(f.values, g.values)))


def sub_bicochains(f: BiCochain, g: BiCochain) -> BiCochain:
    _same_shape(f, g)
    mod = f.module
    return BiCochain(f.group, mod, f.p, f.q,
                     tuple(mod.sub(a, b) for a, b in zip(f.values, g.values)))


def scale_bicochain(k: int, f: BiCochain) -> BiCochain:
    mod = f.module
    return BiCochain(f.group, mod, f.p, f.q, tuple(mod.scale(k, v) for v in f.values))


def _same_shape(f: BiCochain, g: BiCochain) -> None:
    if f.group != g.group or f.module != g.module or (f.p, f.q) != (g.p, g.q):
        raise ValidationError("bicochain shapes do not match")


def d_h(f: BiCochain) -> BiCochain:
    """Alternating face sum over the x-block, no extra sign."""
    mod = f.module
    order = f.group.order

    def fn(x, y):
        acc = mod.zero()
        sign = 1
        for i in range(len(x)):
            face = f.value(x[:i] + x[i + 1:], y)
            acc = mod.add(acc, face) if sign > 0 else mod.sub(acc, face)
            sign = -sign
        return acc

    return bicochain_from_function(f.group, mod, f.p + 1, f.q, fn)


def d_v(f: BiCochain) -> BiCochain:
    """(-1)^p times the alternating face sum over the y-block."""
    mod = f.module
    flip = f.p % 2 == 1

    def fn(x, y):
        acc = mod.zero()
        sign = 1
        for j in range(len(y)):
            face = f.value(x, y[:j] + y[j + 1:])
            acc = mod.add(acc, face) if sign > 0 else mod.sub(acc, face)
            sign = -sign
        return mod.neg(acc) if flip else acc

    return bicochain_from_function(f.group, mod, f.p, f.q + 1, fn)


def bicochain_g_action(g: int, f: BiCochain) -> BiCochain:
    """Diagonal action on both argument blocks, module action on values."""
    grp = f.group
    mod = f.module
    ginv = grp.inv[g]

    def fn(x, y):
        xs = tuple(grp.mult[ginv][a] for a in x)
        ys = tuple(grp.mult[ginv][b] for b in y)
        return mod.act(g, f.value(xs, ys))

    return bicochain_from_function(grp, mod, f.p, f.q, fn)


def bicochain_is_equivariant(f: BiCochain) -> bool:
    return all(bicochain_g_action(g, f).values == f.values for g in f.group.elements())


@dataclass(frozen=True)
class TotalCochain:
    """Graded family in total degree n: one component per bidegree (p, n-p).

    Degree -1 is the legal empty family; it is what a transfer in total
    degree 0 produces as its witness.
    """

    group: FiniteGroup
    module: GModule
    degree: int
    components: tuple[BiCochain, ...]

    def component(self, p: int, q: int) -> BiCochain:
        if p + q != self.degree or p < 0 or q < 0:
            raise ValidationError(f"no component at bidegree ({p}, {q})")
        return self.components[p]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def total_from_components(group: FiniteGroup, module: GModule, degree: int,
                          components) -> TotalCochain:
    comps = tuple(components)
    if degree < -1:
        raise ValidationError("total degree must be >= -1")
    if len(comps) != degree + 1:
        raise ValidationError("a total cochain of degree n needs n+1 components")
    for p, c in enumerate(comps):
        if (c.p, c.q) != (p, degree - p):
            raise ValidationError(f"component {p} has bidegree ({c.p}, {c.q})")
    return TotalCochain(group, module, degree, comps)


def zero_total(group: FiniteGroup, module: GModule, degree: int) -> TotalCochain:
    comps = [zero_bicochain(group, module, p, degree - p) for p in range(degree + 1)]
    return total_from_components(group, module, degree, comps)


def add_totals(s: TotalCochain, t: TotalCochain) -> TotalCochain:
    _same_total_shape(s, t)
    comps = [add_bicochains(a, b) for a, b in zip(s.components, t.components)]
    return TotalCochain(s.group, s.module, s.degree, tuple(comps))


def sub_totals(s: TotalCochain, t: TotalCochain) -> TotalCochain:
    _same_total_shape(s, t)
    comps = [sub_bicochains(a, b) for a, b in zip(s.components, t.components)]
    return TotalCochain(s.group, s.module, s.degree, tuple(comps))


def _same_total_shape(s: TotalCochain, t: TotalCochain) -> None:
    if s.group != t.group or s.module != t.module or s.degree != t.degree:
        raise ValidationError("total cochain shapes do not match")


def total_differential(t: TotalCochain) -> TotalCochain:
    """Component (p, q) of the output is d_h of (p-1, q) plus d_v of (p, q-1)."""
    n = t.degree
    out = []
    for p in range(n + 2):
        q = n + 1 - p
        acc = zero_bicochain(t.group, t.module, p, q)
        if 0 <= p - 1 <= n:
            acc = add_bicochains(acc, d_h(t.components[p - 1]))
        if 0 <= p <= n:
            acc = add_bicochains(acc, d_v(t.components[p]))
        out.append(acc)
    return TotalCochain(t.group, t.module, n + 1, tuple(out))


def augment_h(f: Cochain) -> TotalCochain:
    """Place an equivariant n-cochain on the (0, n) edge as (x, y) -> f(y).

    A chain map with no sign: the total differential of the result is the
    augmentation of the differential.
    """
    from .cochains import is_equivariant

    if not is_equivariant(f):
        raise ValidationError("row augmentation needs an equivariant cochain")
    n = f.degree
    corner = bicochain_from_function(f.group, f.module, 0, n, lambda x, y: f.value(y))
    if SIGN_ROW_AUGMENT != 1:
        corner = scale_bicochain(SIGN_ROW_AUGMENT, corner)
    comps = [corner] + [zero_bicochain(f.group, f.module, p, n - p) for p in range(1, n + 1)]
    return total_from_components(f.group, f.module, n, comps)


def augment_v(f: Cochain, cls: ContinuityClass) -> TotalCochain:
    """Place a continuous equivariant n-cochain on the (n, 0) edge as
    (x, y) -> f(x).  Refuses input outside the class."""
    from .cochains import is_equivariant

    if not is_equivariant(f):
        raise ValidationError("column augmentation needs an equivariant cochain")
    conflict = continuity_conflict(cls, f)
    if conflict is not None:
        raise ClassViolationError(
            "column augmentation input is not continuous for the class",
            witness=conflict)
    n = f.degree
    corner = bicochain_from_function(f.group, f.module, n, 0, lambda x, y: f.value(x))
    if SIGN_COL_AUGMENT != 1:
        corner = scale_bicochain(SIGN_COL_AUGMENT, corner)
    comps = [zero_bicochain(f.group, f.module, p, n - p) for p in range(n)] + [corner]
    return total_from_components(f.group, f.module, n, comps)


def row_edge(f: BiCochain) -> Cochain:
    """Left inverse of the row augmentation on the (0, q) column: evaluate
    the single x slot at y_0."""
    if f.p != 0:
        raise ValidationError("row edge is defined on bidegree (0, q)")
    from .cochains import cochain_from_function

    return cochain_from_function(f.group, f.module, f.q,
                                 lambda y: f.value((y[0],), y))


def col_edge(f: BiCochain) -> Cochain:
    """Counterpart on the (p, 0) row: evaluate the single y slot at the
    identity."""
    if f.q != 0:
        raise ValidationError("column edge is defined on bidegree (p, 0)")
    from .cochains import cochain_from_function

    e = f.group.identity
    return cochain_from_function(f.group, f.module, f.p,
                                 lambda x: f.value(x, (e,)))


def row_contraction(f: BiCochain, cls: ContinuityClass | None = None) -> BiCochain:
    """Copy y_0 into a final x slot, with sign (-1)^p.

    Splits d_h: contraction of d_h plus d_h of contraction is the identity
    for p >= 1.  The inserted argument comes from the y-block, so class
    membership survives; with a class supplied, the input is checked and the
    output is guaranteed.
    """
    if f.p < 1:
        raise ValidationError("row contraction needs p >= 1; use the edge identity at p = 0")
    if cls is not None and not is_member(cls, f):
        raise ClassViolationError("row contraction input is outside the class",
                                  witness=None)
    mod = f.module
    flip = f.p % 2 == 1

    def fn(x, y):
        v = f.value(x + (y[0],), y)
        return mod.neg(v) if flip else v

    return bicochain_from_function(f.group, mod, f.p - 1, f.q, fn)


def vertical_insertion(f: BiCochain, cls: ContinuityClass | None = None) -> BiCochain:
    """Prepend the identity to the y-block, with sign (-1)^p.

    Splits d_v unconditionally as a table operation, but the output can leave
    a quotient class: the inserted identity pins y_0 to one coset while the
    remaining arguments still roam, which is exactly the failure mode this
    operation must refuse.  With a class supplied, a violating result raises
    and reports one conflicting pair of argument tuples.
    """
    if f.q < 1:
        raise ValidationError("vertical insertion needs q >= 1")
    mod = f.module
    e = f.group.identity
    flip = f.p % 2 == 1

    def fn(x, y):
        v = f.value(x, (e,) + y)
        return mod.neg(v) if flip else v

    out = bicochain_from_function(f.group, mod, f.p, f.q - 1, fn)
    if cls is not None:
        singleton = identity_nbhd(cls.group, [cls.group.identity])
        conflict = local_conflict(cls, out, singleton)
        if conflict is not None:
            raise ClassViolationError(
                "vertical insertion left the class", witness=conflict)
    return out


def equivariantize(f: BiCochain) -> BiCochain:
    """Translate by the leading x argument: x_0 . f(x_0^-1 x, x_0^-1 y).

    Projects onto equivariant bicochains and repairs any preimage of an
    equivariant vertical coboundary without moving the coboundary.
    """
    grp = f.group
    mod = f.module

    def fn(x, y):
        inv0 = grp.inv[x[0]]
        xs = tuple(grp.mult[inv0][a] for a in x)
        ys = tuple(grp.mult[inv0][b] for b in y)
        return mod.act(x[0], f.value(xs, ys))

    return bicochain_from_function(grp, mod, f.p, f.q, fn)


def cochain_as_bicochain(f: Cochain, p: int, q: int) -> BiCochain:
    """Reshape an (p+q+1)-degree cochain table by splitting its arguments."""
    if p + q + 1 != f.degree or p < 0 or q < 0:
        raise ValidationError("argument split does not match the degree")
    return bicochain_from_function(f.group, f.module, p, q,
                                   lambda x, y: f.value(x + y))


def corner_witness(f: Cochain, cls: ContinuityClass) -> TotalCochain:
    """Degree n-1 total cochain W with D(W) = column edge of f minus row edge
    of f, for a continuous equivariant n-cocycle f.

    Component (p, q) is (-1)^(p+1) times f with its arguments split.  The
    equation is re-verified before returning; failure means a sign regression
    and is an internal error.
    """
    from .cochains import differential, is_equivariant

    if not is_equivariant(f):
        raise ValidationError("corner witness needs an equivariant cochain")
    if not differential(f).is_zero():
        raise ValidationError("corner witness needs a cocycle")
    conflict = continuity_conflict(cls, f)
    if conflict is not None:
        raise ClassViolationError("corner witness input is not continuous for the class",
                                  witness=conflict)
    n = f.degree
    comps = []
    for p in range(n):
        q = n - 1 - p
        split = cochain_as_bicochain(f, p, q)
        if (p + CORNER_WITNESS_SIGN_EXP) % 2 == 1:
            split = scale_bicochain(-1, split)
        comps.append(split)
    witness = total_from_components(f.group, f.module, n - 1, comps)
    target = sub_totals(augment_v(f, cls), augment_h(f))
    if total_differential(witness).components != target.components:
        raise InternalCheckError("corner witness equation failed; sign conventions broken")
    return witness


def bicochain_to_vec(f: BiCochain) -> list[int]:
    return [c for v in f.values for c in v]


def vec_to_bicochain(group: FiniteGroup, module: GModule, p: int, q: int, vec) -> BiCochain:
    dim = module.dim
    count = group.order ** (p + 1) * group.order ** (q + 1)
    if len(vec) != count * dim:
        raise ValidationError("flat vector length mismatch")
    vals = tuple(module.reduce(vec[i * dim:(i + 1) * dim]) for i in range(count))
    return BiCochain(group, module, p, q, vals)


def d_v_matrix(group: FiniteGroup, module: GModule, p: int, q: int) -> list[list[int]]:
    """Matrix of d_v from bidegree (p, q) to (p, q+1) on flat coordinates.

    The differential never mixes module coordinates, so the matrix is a
    tuple-index incidence pattern tensored with an identity block.
    """
    order = group.order
    dim = module.dim
    x_count = order ** (p + 1)
    in_y = order ** (q + 1)
    out_y = order ** (q + 2)
    rows = x_count * out_y * dim
    cols = x_count * in_y * dim
    sign_p = -1 if p % 2 == 1 else 1
    mat = [[0] * cols for _ in range(rows)]
    for xi in range(x_count):
        for y in tuples_of(order, q + 2):
            out_idx = xi * out_y + tuple_index(order, y)
            sign = sign_p
            for j in range(q + 2):
                in_idx = xi * in_y + tuple_index(order, y[:j] + y[j + 1:])
                for c in range(dim):
                    mat[out_idx * dim + c][in_idx * dim + c] += sign
                sign = -sign
    return mat
