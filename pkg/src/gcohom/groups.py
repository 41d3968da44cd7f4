"""Finite groups as dense multiplication tables with 0-based element indices."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class Violation:
    """One failed axiom with the witnessing elements."""

    kind: str
    witness: tuple
    message: str


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group on elements 0..order-1.

    mult[a][b] is the product a*b.  identity and inv are stored so callers
    never search for them.
    """

    order: int
    mult: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    label: str = ""

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def elements(self) -> range:
        return range(self.order)

    def conjugate(self, g: int, h: int) -> int:
        """g * h * g^-1."""
        return self.mult[self.mult[g][h]][self.inv[g]]

    def __repr__(self) -> str:
        name = self.label or "group"
        return f"FiniteGroup({name}, order={self.order})"


def validate_group(mult, identity: int | None = None, inv=None) -> list[Violation]:
    """Check group axioms on a candidate table; empty list means valid.

    identity and inv are inferred when omitted; when given they are checked
    against the table.
    """
    violations = []
    n = len(mult)
    if n == 0:
        return [Violation("empty", (), "multiplication table is empty")]
    for a, row in enumerate(mult):
        if len(row) != n:
            return [Violation("shape", (a,), f"row {a} has length {len(row)}, expected {n}")]
        for b, c in enumerate(row):
            if not isinstance(c, int) or not 0 <= c < n:
                return [Violation("range", (a, b), f"mult[{a}][{b}] = {c} outside 0..{n - 1}")]

    if identity is None:
        identity = next(
            (e for e in range(n) if all(mult[e][g] == g and mult[g][e] == g for g in range(n))),
            None,
        )
        if identity is None:
            violations.append(Violation("identity", (), "no two-sided identity element"))
    else:
        for g in range(n):
            if mult[identity][g] != g or mult[g][identity] != g:
                violations.append(
                    Violation("identity", (identity, g), f"claimed identity {identity} fails at {g}")
                )
                break

    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                    violations.append(
                        Violation(
                            "associativity",
                            (a, b, c),
                            f"(({a}*{b})*{c}) != ({a}*({b}*{c}))",
                        )
                    )
    if identity is not None:
        for a in range(n):
            if not any(mult[a][b] == identity and mult[b][a] == identity for b in range(n)):
                violations.append(Violation("inverse", (a,), f"element {a} has no two-sided inverse"))
        if inv is not None:
            for a in range(n):
                if mult[a][inv[a]] != identity or mult[inv[a]][a] != identity:
                    violations.append(
                        Violation("inverse", (a, inv[a]), f"claimed inverse of {a} is wrong")
                    )
                    break
    return violations


def group_from_mult(mult, label: str = "") -> FiniteGroup:
    """Build a FiniteGroup from a raw table, inferring identity and inverses."""
    mult = tuple(tuple(row) for row in mult)
    violations = validate_group(mult)
    if violations:
        first = violations[0]
        raise ValidationError(f"not a group: {first.message}", violations)
    n = len(mult)
    identity = next(e for e in range(n) if all(mult[e][g] == g for g in range(n)))
    inv = tuple(next(b for b in range(n) if mult[a][b] == identity) for a in range(n))
    return FiniteGroup(order=n, mult=mult, identity=identity, inv=inv, label=label)


def make_cyclic(n: int) -> FiniteGroup:
    """Z/n with addition mod n; element i is the residue i."""
    if n < 1:
        raise ValidationError(f"cyclic group order must be positive, got {n}")
    mult = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return FiniteGroup(order=n, mult=mult, identity=0, inv=inv, label=f"cyclic:{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with pairs (a, b) encoded as a * |H| + b."""
    nh = h.order
    order = g.order * nh

    def enc(a: int, b: int) -> int:
        return a * nh + b

    mult = tuple(
        tuple(
            enc(g.mult[a1][a2], h.mult[b1][b2])
            for a2 in g.elements()
            for b2 in h.elements()
        )
        for a1 in g.elements()
        for b1 in h.elements()
    )
    inv = tuple(enc(g.inv[a], h.inv[b]) for a in g.elements() for b in h.elements())
    label = f"({g.label or 'G'})x({h.label or 'H'})"
    return FiniteGroup(order=order, mult=mult, identity=enc(g.identity, h.identity), inv=inv, label=label)


def element_order(group: FiniteGroup, g: int) -> int:
    k, x = 1, g
    while x != group.identity:
        x = group.mul(x, g)
        k += 1
    return k


def generated_subgroup(group: FiniteGroup, gens) -> frozenset[int]:
    """Closure of gens under multiplication and inverse."""
    closed = {group.identity}
    frontier = [group.identity]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (group.mul(x, g), group.mul(x, group.inv[g])):
                if y not in closed:
                    closed.add(y)
                    frontier.append(y)
    return frozenset(closed)


def all_subgroups(group: FiniteGroup) -> list[frozenset[int]]:
    """Every subgroup, found by closing generator sets; sorted for determinism."""
    found = {frozenset({group.identity})}
    frontier = [frozenset({group.identity})]
    while frontier:
        h = frontier.pop()
        for g in group.elements():
            if g not in h:
                bigger = generated_subgroup(group, set(h) | {g})
                if bigger not in found:
                    found.add(bigger)
                    frontier.append(bigger)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_normal(group: FiniteGroup, subset) -> bool:
    sub = set(subset)
    return all(group.conjugate(g, h) in sub for g in group.elements() for h in sub)


def left_cosets(group: FiniteGroup, subgroup) -> list[frozenset[int]]:
    sub = sorted(subgroup)
    seen: set[frozenset[int]] = set()
    cosets = []
    for g in group.elements():
        c = frozenset(group.mul(g, h) for h in sub)
        if c not in seen:
            seen.add(c)
            cosets.append(c)
    return cosets
