"""Homogeneous group cochains and the simplicial differential.

A degree-n cochain is a map G^{n+1} -> A stored as a dense table in
lexicographic tuple order.  The differential is the alternating sum over
argument deletions; the group acts diagonally on arguments and through the
module action on values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ValidationError
from .groups import FiniteGroup
from .modules import GModule


def tuple_index(order: int, tup) -> int:
    idx = 0
    for g in tup:
        idx = idx * order + g
    return idx


def tuples_of(order: int, length: int):
    """All tuples in the same lexicographic order the tables are indexed by."""
    return product(range(order), repeat=length)


@dataclass(frozen=True)
class Cochain:
    group: FiniteGroup
    module: GModule
    degree: int
    values: tuple[tuple[int, ...], ...]

    def value(self, tup) -> tuple[int, ...]:
        return self.values[tuple_index(self.group.order, tup)]

    def is_zero(self) -> bool:
        zero = self.module.zero()
        return all(v == zero for v in self.values)

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, group={self.group.label!r})"


def cochain_from_function(group: FiniteGroup, module: GModule, degree: int, fn) -> Cochain:
    if degree < 0:
        raise ValidationError(f"cochain degree must be >= 0, got {degree}")
    values = tuple(module.reduce(fn(t)) for t in tuples_of(group.order, degree + 1))
    return Cochain(group=group, module=module, degree=degree, values=values)


def zero_cochain(group: FiniteGroup, module: GModule, degree: int) -> Cochain:
    z = module.zero()
    return Cochain(group, module, degree, (z,) * group.order ** (degree + 1))


def cochain_from_table(group: FiniteGroup, module: GModule, degree: int, table) -> Cochain:
    table = tuple(module.reduce(v) for v in table)
    if len(table) != group.order ** (degree + 1):
        raise ValidationError("cochain table has the wrong length")
    return Cochain(group, module, degree, table)


def add_cochains(f: Cochain, g: Cochain) -> Cochain:
    _same_shape(f, g)
    mod = f.module
    return Cochain(f.group, mod, f.degree, tuple(mod.add(a, b) for a, b in zip(f.values, g.values)))


def sub_cochains(f: Cochain, g: Cochain) -> Cochain:
    _same_shape(f, g)
    mod = f.module
    return Cochain(f.group, mod, f.degree, tuple(mod.sub(a, b) for a, b in zip(f.values, g.values)))


def scale_cochain(k: int, f: Cochain) -> Cochain:
    mod = f.module
    return Cochain(f.group, mod, f.degree, tuple(mod.scale(k, v) for v in f.values))


def _same_shape(f: Cochain, g: Cochain) -> None:
    if f.group is not g.group and f.group != g.group:
        raise ValidationError("cochains live over different groups")
    if f.module != g.module or f.degree != g.degree:
        raise ValidationError("cochain shapes do not match")


def differential(f: Cochain) -> Cochain:
    """Alternating sum over deleted arguments; raises degree by one."""
    mod = f.module
    order = f.group.order
    out = []
    for tup in tuples_of(order, f.degree + 2):
        acc = mod.zero()
        sign = 1
        for i in range(len(tup)):
            face = f.values[tuple_index(order, tup[:i] + tup[i + 1:])]
            acc = mod.add(acc, face) if sign > 0 else mod.sub(acc, face)
            sign = -sign
        out.append(acc)
    return Cochain(f.group, mod, f.degree + 1, tuple(out))


def g_action(g: int, f: Cochain) -> Cochain:
    """(g.f)(g_0..g_n) = g . f(g^-1 g_0, .., g^-1 g_n)."""
    grp = f.group
    mod = f.module
    ginv = grp.inv[g]
    order = grp.order
    out = []
    for tup in tuples_of(order, f.degree + 1):
        shifted = tuple(grp.mult[ginv][x] for x in tup)
        out.append(mod.act(g, f.values[tuple_index(order, shifted)]))
    return Cochain(grp, mod, f.degree, tuple(out))


def is_equivariant(f: Cochain) -> bool:
    return all(g_action(g, f).values == f.values for g in f.group.elements())


def insertion_contraction(f: Cochain, base: int | None = None) -> Cochain:
    """(h f)(g_0..g_{n-1}) = f(base, g_0, .., g_{n-1}); splits the differential.

    h(df) + d(hf) = f for degree >= 1, and h(df) = f - constant(f at base)
    in degree 0.
    """
    if f.degree < 1:
        raise ValidationError("insertion contraction needs degree >= 1")
    grp = f.group
    b = grp.identity if base is None else base
    order = grp.order
    out = [
        f.values[tuple_index(order, (b,) + tup)]
        for tup in tuples_of(order, f.degree)
    ]
    return Cochain(grp, f.module, f.degree - 1, tuple(out))


@dataclass(frozen=True)
class InhomCochain:
    """Bar-coordinates cochain: a map G^n -> A (n = 0 means a single value)."""

    group: FiniteGroup
    module: GModule
    degree: int
    values: tuple[tuple[int, ...], ...]

    def value(self, tup) -> tuple[int, ...]:
        return self.values[tuple_index(self.group.order, tup)]


def inhomogeneous_of(f: Cochain) -> InhomCochain:
    """Read an equivariant cochain in bar coordinates.

    F(g_1..g_n) = f(e, g_1, g_1 g_2, .., g_1..g_n).  Requires equivariance,
    otherwise the homogeneous table is not determined by F.
    """
    if not is_equivariant(f):
        raise ValidationError("only equivariant cochains have bar coordinates")
    grp = f.group
    order = grp.order
    out = []
    for tup in tuples_of(order, f.degree):
        args = [grp.identity]
        for g in tup:
            args.append(grp.mult[args[-1]][g])
        out.append(f.values[tuple_index(order, tuple(args))])
    return InhomCochain(grp, f.module, f.degree, tuple(out))


def homogeneous_of(bar: InhomCochain) -> Cochain:
    """f(g_0..g_n) = g_0 . F(g_0^-1 g_1, g_1^-1 g_2, .., g_{n-1}^-1 g_n)."""
    grp = bar.group
    mod = bar.module
    order = grp.order
    out = []
    for tup in tuples_of(order, bar.degree + 1):
        quotients = tuple(
            grp.mult[grp.inv[tup[i]]][tup[i + 1]] for i in range(bar.degree)
        )
        out.append(mod.act(tup[0], bar.values[tuple_index(order, quotients)]))
    return Cochain(grp, mod, bar.degree, tuple(out))


def bar_values_from_vec(group: FiniteGroup, module: GModule, degree: int, vec) -> InhomCochain:
    """Rebuild an InhomCochain from the flat int vector used by the solvers."""
    dim = module.dim
    count = group.order ** degree
    if len(vec) != count * dim:
        raise ValidationError("flat vector length mismatch")
    vals = tuple(module.reduce(vec[i * dim:(i + 1) * dim]) for i in range(count))
    return InhomCochain(group, module, degree, vals)


def vec_from_bar(bar: InhomCochain) -> list[int]:
    return [c for v in bar.values for c in v]
