"""Coefficient modules: finitely presented abelian groups with a group action.

A module is Z^rank + Z/d_1 + ... + Z/d_t.  Elements are int tuples of length
rank + t, canonicalized so torsion coordinates sit in [0, d_i).  The action
assigns each group element an integer matrix; matrices must be well defined on
the presentation and invertible over it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ValidationError
from .groups import FiniteGroup, Violation


@dataclass(frozen=True)
class GModule:
    group: FiniteGroup
    rank: int
    torsion: tuple[int, ...]
    action: tuple[tuple[tuple[int, ...], ...], ...]  # one matrix per group element
    label: str = ""

    @property
    def dim(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, 0 meaning a free Z coordinate."""
        return (0,) * self.rank + self.torsion

    def reduce(self, vec) -> tuple[int, ...]:
        return tuple(int(v) % m if m else int(v) for v, m in zip(vec, self.moduli))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dim

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> tuple[int, ...]:
        return self.reduce(x - y for x, y in zip(a, b))

    def neg(self, a) -> tuple[int, ...]:
        return self.reduce(-x for x in a)

    def scale(self, k: int, a) -> tuple[int, ...]:
        return self.reduce(k * x for x in a)

    def act(self, g: int, vec) -> tuple[int, ...]:
        mat = self.action[g]
        return self.reduce(sum(row[j] * vec[j] for j in range(self.dim)) for row in mat)

    def is_trivial_action(self) -> bool:
        ident = _identity_matrix(self.dim)
        return all(_reduce_matrix(m, self.moduli) == ident for m in self.action)

    def elements(self):
        """All elements; only legal for finite modules (rank 0)."""
        if self.rank:
            raise ValidationError("cannot enumerate a module with free rank")
        return (tuple(v) for v in product(*(range(d) for d in self.torsion)))

    def size(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __repr__(self) -> str:
        name = self.label or _presentation_label(self.rank, self.torsion)
        return f"GModule({name} over {self.group.label or 'group'})"


def _presentation_label(rank: int, torsion) -> str:
    parts = ["Z"] * rank + [f"Z/{d}" for d in torsion]
    return "+".join(parts) if parts else "0"


def _identity_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _reduce_matrix(mat, moduli) -> tuple[tuple[int, ...], ...]:
    # rows of torsion coordinates are only meaningful mod their modulus
    return tuple(
        tuple(v % m if m else v for v in row) for row, m in zip(mat, moduli)
    )


def _matmul(a, b, n: int):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def validate_module(mod: GModule) -> list[Violation]:
    """Check shapes, well-definedness on the presentation, and invertibility."""
    violations = []
    n = mod.dim
    if any(d < 2 for d in mod.torsion):
        violations.append(Violation("torsion", mod.torsion, "torsion orders must be >= 2"))
    if len(mod.action) != mod.group.order:
        violations.append(
            Violation("action", (len(mod.action),), "need one action matrix per group element")
        )
        return violations
    moduli = mod.moduli
    for g, mat in enumerate(mod.action):
        if len(mat) != n or any(len(row) != n for row in mat):
            violations.append(Violation("shape", (g,), f"action matrix of {g} is not {n}x{n}"))
            return violations
        # columns of torsion coordinates must map consistently: d_j * col_j = 0
        # in the target, which forces zero entries in free rows
        for i in range(n):
            for j in range(n):
                dj = moduli[j]
                if dj:
                    di = moduli[i]
                    v = mat[i][j] * dj
                    if (di == 0 and v != 0) or (di != 0 and v % di != 0):
                        violations.append(
                            Violation(
                                "well-defined",
                                (g, i, j),
                                f"action of {g} is not well defined at entry ({i},{j})",
                            )
                        )
    if violations:
        return violations
    ident = _identity_matrix(n)
    e = mod.group.identity
    if _reduce_matrix(mod.action[e], moduli) != ident:
        violations.append(Violation("identity-action", (e,), "identity must act as the identity matrix"))
    for g in mod.group.elements():
        h = mod.group.inv[g]
        prod_mat = _matmul(mod.action[g], mod.action[h], n)
        if _reduce_matrix(prod_mat, moduli) != ident:
            violations.append(
                Violation("invertible", (g, h), f"action of {g} times action of {g}^-1 is not 1")
            )
        for k in mod.group.elements():
            gk = mod.group.mul(g, k)
            lhs = _reduce_matrix(_matmul(mod.action[g], mod.action[k], n), moduli)
            rhs = _reduce_matrix(mod.action[gk], moduli)
            if lhs != rhs:
                violations.append(
                    Violation("homomorphism", (g, k), f"action({g})action({k}) != action({g}{k})")
                )
    return violations


def trivial_module(group: FiniteGroup, rank: int = 0, torsion=(), label: str = "") -> GModule:
    """Module with every group element acting as the identity."""
    torsion = tuple(int(d) for d in torsion)
    n = rank + len(torsion)
    ident = _identity_matrix(n)
    mod = GModule(
        group=group,
        rank=rank,
        torsion=torsion,
        action=tuple(ident for _ in group.elements()),
        label=label or _presentation_label(rank, torsion),
    )
    bad = validate_module(mod)
    if bad:
        raise ValidationError(f"invalid module: {bad[0].message}", bad)
    return mod


def module_with_action(
    group: FiniteGroup, rank: int, torsion, matrices: dict[int, list], label: str = ""
) -> GModule:
    """Module whose action is given on some elements; the rest act as identity.

    The action must still be a homomorphism on the whole group, which
    validate_module verifies; passing only generators therefore works only
    when the remaining elements genuinely act trivially.
    """
    torsion = tuple(int(d) for d in torsion)
    n = rank + len(torsion)
    ident = _identity_matrix(n)
    action = tuple(
        tuple(tuple(int(v) for v in row) for row in matrices[g]) if g in matrices else ident
        for g in group.elements()
    )
    mod = GModule(group=group, rank=rank, torsion=torsion, action=action,
                  label=label or _presentation_label(rank, torsion))
    bad = validate_module(mod)
    if bad:
        raise ValidationError(f"invalid module: {bad[0].message}", bad)
    return mod


def element_index(mod: GModule, vec) -> int:
    """Mixed-radix index of a finite-module element; inverse of indexed_element."""
    if mod.rank:
        raise ValidationError("element indexing needs a finite module")
    idx = 0
    for v, d in zip(vec, mod.torsion):
        idx = idx * d + (v % d)
    return idx


def indexed_element(mod: GModule, idx: int) -> tuple[int, ...]:
    if mod.rank:
        raise ValidationError("element indexing needs a finite module")
    out = []
    for d in reversed(mod.torsion):
        out.append(idx % d)
        idx //= d
    return tuple(reversed(out))
