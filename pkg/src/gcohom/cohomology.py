"""Cohomology of the equivariant cochain complex, optionally class-restricted.

Everything runs in bar coordinates: an equivariant degree-n cochain is a flat
integer vector indexed by (n-tuple, module coordinate).  The differential
becomes an integer matrix, continuity becomes a sublattice cut out by linear
constraints, and homology is a lattice quotient handled by the exact solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochains import (Cochain, bar_values_from_vec, homogeneous_of,
                       inhomogeneous_of, tuple_index, tuples_of, vec_from_bar)
from .continuity import ContinuityClass, all_class
from .errors import InternalCheckError, ValidationError
from .groups import FiniteGroup
from .linalg import (FPAbelianGroup, LatticeQuotient, columns_to_matrix,
                     identity_matrix, kernel_mod, lattice_quotient, matmul,
                     matvec, solve_fp)
from .modules import GModule

VARIANTS = ("continuous", "member")


def bar_space_dim(group: FiniteGroup, module: GModule, n: int) -> int:
    return group.order ** n * module.dim


def bar_moduli(group: FiniteGroup, module: GModule, n: int) -> list[int]:
    return list(module.moduli) * group.order ** n


def bar_differential_matrix(group: FiniteGroup, module: GModule, n: int) -> list[list[int]]:
    """Matrix of the degree-n differential on bar coordinates.

    Leading term acts through the module action of the first argument; inner
    terms merge adjacent arguments; the last term drops the final argument.
    """
    order = group.order
    dim = module.dim
    rows = bar_space_dim(group, module, n + 1)
    cols = bar_space_dim(group, module, n)
    mat = [[0] * cols for _ in range(rows)]

    def add_block(out_idx: int, in_idx: int, sign: int, action=None):
        for r in range(dim):
            row = mat[out_idx * dim + r]
            if action is None:
                row[in_idx * dim + r] += sign
            else:
                for c in range(dim):
                    row[in_idx * dim + c] += sign * action[r][c]

    for tup in tuples_of(order, n + 1):
        out_idx = tuple_index(order, tup)
        add_block(out_idx, tuple_index(order, tup[1:]), 1,
                  action=module.action[tup[0]])
        sign = -1
        for i in range(1, n + 1):
            merged = tup[:i - 1] + (group.mult[tup[i - 1]][tup[i]],) + tup[i + 1:]
            add_block(out_idx, tuple_index(order, merged), sign)
            sign = -sign
        add_block(out_idx, tuple_index(order, tup[:n]), sign)
    return mat


def class_lattice(group: FiniteGroup, module: GModule, n: int,
                  cls: ContinuityClass, variant: str = "continuous") -> list[list[int]]:
    """Column generators of the class-restricted equivariant cochains.

    Variant "continuous" demands the homogeneous table factor through cosets
    globally; "member" only on the diagonal neighbourhood of the identity
    singleton.  Constraints compare a block representative against each other
    block element through the bar correspondence, where an equivariant
    cochain's value at x is the action of x_0 on a bar coordinate.
    """
    if variant not in VARIANTS:
        raise ValidationError(f"unknown cohomology variant {variant!r}")
    dim = bar_space_dim(group, module, n)
    if cls.kind == "all":
        return [list(col) for col in zip(*identity_matrix(dim))]
    order = group.order
    mdim = module.dim

    if variant == "continuous":
        blocks: dict[tuple, list[tuple[int, ...]]] = {}
        for tup in tuples_of(order, n + 1):
            pattern = tuple(cls.coset_of(g) for g in tup)
            blocks.setdefault(pattern, []).append(tup)
    else:
        blocks = {}
        for x in range(order):
            blocks.setdefault((cls.coset_of(x),), []).append((x,) * (n + 1))

    def bar_point(tup):
        # bar index of the quotient tuple, and the leading element
        quotients = tuple(
            group.mult[group.inv[tup[i]]][tup[i + 1]] for i in range(n)
        )
        return tuple_index(order, quotients), tup[0]

    rows: list[list[int]] = []
    row_moduli: list[int] = []
    for members in blocks.values():
        if len(members) < 2:
            continue
        idx0, lead0 = bar_point(members[0])
        act0 = module.action[lead0]
        for other in members[1:]:
            idx1, lead1 = bar_point(other)
            act1 = module.action[lead1]
            for r in range(mdim):
                row = [0] * dim
                for c in range(mdim):
                    row[idx0 * mdim + c] += act0[r][c]
                    row[idx1 * mdim + c] -= act1[r][c]
                rows.append(row)
                row_moduli.append(module.moduli[r])
    if not rows:
        return [list(col) for col in zip(*identity_matrix(dim))]
    return kernel_mod(rows, row_moduli)


@dataclass
class CohomologyGroup:
    group: FiniteGroup
    module: GModule
    degree: int
    cls: ContinuityClass
    variant: str
    structure: FPAbelianGroup
    quotient: LatticeQuotient

    def class_of(self, f: Cochain) -> tuple[int, ...]:
        """Coordinates of an equivariant cocycle in invariant-factor form."""
        vec = vec_from_bar(inhomogeneous_of(f))
        return self.quotient.class_of(vec)

    def generators(self) -> list[Cochain]:
        out = []
        for vec in self.quotient.generator_vectors():
            bar = bar_values_from_vec(self.group, self.module, self.degree, vec)
            out.append(homogeneous_of(bar))
        return out

    def __str__(self) -> str:
        return str(self.structure)


def cohomology_group(group: FiniteGroup, module: GModule, degree: int,
                     cls: ContinuityClass | None = None,
                     variant: str = "continuous") -> CohomologyGroup:
    """Invariant factors and generators of degree-n cohomology.

    With no class (or the all-backend) this is ordinary group cohomology.
    With a quotient class it is the cohomology of the subcomplex the class
    cuts out.
    """
    if degree < 0:
        raise ValidationError("cohomology degree must be >= 0")
    if cls is None:
        cls = all_class(group)
    ambient = bar_space_dim(group, module, degree)
    mid_moduli = bar_moduli(group, module, degree)
    out_moduli = bar_moduli(group, module, degree + 1)

    lattice_n = class_lattice(group, module, degree, cls, variant)
    d_n = bar_differential_matrix(group, module, degree)

    ker_gens: list[list[int]] = []
    if lattice_n:
        basis_mat = columns_to_matrix(lattice_n, ambient)
        restricted = matmul(d_n, basis_mat)
        for coeffs in kernel_mod(restricted, out_moduli):
            ker_gens.append(matvec(basis_mat, coeffs))
    for i, m in enumerate(mid_moduli):
        if m:
            gen = [0] * ambient
            gen[i] = m
            ker_gens.append(gen)

    im_gens: list[list[int]] = []
    if degree > 0:
        lattice_prev = class_lattice(group, module, degree - 1, cls, variant)
        if lattice_prev:
            d_prev = bar_differential_matrix(group, module, degree - 1)
            prev_mat = columns_to_matrix(lattice_prev, bar_space_dim(group, module, degree - 1))
            image_mat = matmul(d_prev, prev_mat)
            im_gens.extend([list(col) for col in zip(*image_mat)])
    for i, m in enumerate(mid_moduli):
        if m:
            gen = [0] * ambient
            gen[i] = m
            im_gens.append(gen)

    quot = lattice_quotient(ker_gens, im_gens, ambient)
    return CohomologyGroup(group=group, module=module, degree=degree, cls=cls,
                           variant=variant, structure=quot.group,
                           quotient=quot)


@dataclass(frozen=True)
class CoboundaryWitness:
    """Equivariant b with db = f - g.  Degree-0 queries have no cochain to
    return; the witness is then the empty one and b is None."""

    b: Cochain | None
    degree: int


def solve_coboundary(f: Cochain, g: Cochain,
                     cls: ContinuityClass | None = None,
                     variant: str = "continuous") -> CoboundaryWitness | None:
    """Witness that two equivariant cocycles are cohomologous.

    When a class is supplied the witness is restricted to the class-member
    lattice of the chosen variant, so the answer is class-relative.
    """
    from .cochains import differential, is_equivariant, sub_cochains

    if f.degree != g.degree:
        raise ValidationError("cocycles of different degrees are never cohomologous")
    if not is_equivariant(f) or not is_equivariant(g):
        raise ValidationError("coboundary solving works on equivariant cochains")
    diff = sub_cochains(f, g)
    n = f.degree
    if n == 0:
        return CoboundaryWitness(b=None, degree=-1) if diff.is_zero() else None

    group, module = f.group, f.module
    if cls is None:
        cls = all_class(group)
    target = vec_from_bar(inhomogeneous_of(diff))
    lattice_prev = class_lattice(group, module, n - 1, cls, variant)
    if not lattice_prev:
        from .cochains import zero_cochain
        if diff.is_zero():
            return CoboundaryWitness(b=zero_cochain(group, module, n - 1), degree=n - 1)
        return None
    prev_dim = bar_space_dim(group, module, n - 1)
    basis_mat = columns_to_matrix(lattice_prev, prev_dim)
    mat = matmul(bar_differential_matrix(group, module, n - 1), basis_mat)
    coeffs = solve_fp(mat, target, bar_moduli(group, module, n))
    if coeffs is None:
        return None
    b_vec = matvec(basis_mat, coeffs)
    b = homogeneous_of(bar_values_from_vec(group, module, n - 1, b_vec))
    if differential(b).values != diff.values:
        raise InternalCheckError("coboundary witness failed to re-verify")
    return CoboundaryWitness(b=b, degree=n - 1)
