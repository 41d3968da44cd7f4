"""Zig-zag transfer from the locally tame edge to the globally tame one.

Starting from a cocycle placed on the row edge, the staircase repeatedly
lifts the outermost component through the vertical differential and pushes
the support toward the column edge, accumulating a total-degree witness.  The
result is a certificate whose single equation, checked exactly, proves the
output cocycle represents the same class as the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bicomplex import (BiCochain, TotalCochain, augment_h, augment_v,
                        bicochain_to_vec, col_edge, d_v, d_v_matrix,
                        equivariantize, sub_totals, total_differential,
                        total_from_components, vec_to_bicochain,
                        vertical_insertion, zero_bicochain, zero_total)
from .cochains import Cochain, differential, is_equivariant, tuples_of
from .cohomology import CoboundaryWitness, solve_coboundary
from .continuity import (ContinuityClass, bicochain_member_blocks,
                         continuity_conflict, identity_nbhd, is_continuous,
                         is_locally_continuous, is_member, local_conflict)
from .errors import (ClassViolationError, InternalCheckError, ObstructionError,
                     ValidationError)
from .linalg import kernel_mod, solve_fp


@dataclass(frozen=True)
class TransferStep:
    bidegree: tuple[int, int]
    method: str


@dataclass
class TransferCertificate:
    """Machine-checkable record: D(witness) = column edge of output minus row
    edge of input, plus the side conditions on both cocycles."""

    cls: ContinuityClass
    input: Cochain
    output: Cochain
    witness: TotalCochain
    steps: tuple[TransferStep, ...]
    coboundary_to_input: CoboundaryWitness | None
    verified: bool = False

    def verify(self) -> bool:
        f, g = self.input, self.output
        if f.degree != g.degree or self.witness.degree != f.degree - 1:
            return False
        if not is_equivariant(f) or not is_equivariant(g):
            return False
        if not differential(f).is_zero() or not differential(g).is_zero():
            return False
        if is_locally_continuous(self.cls, f) is None:
            return False
        if not is_continuous(self.cls, g):
            return False
        if not all(is_member(self.cls, c) for c in self.witness.components):
            return False
        lhs = total_differential(self.witness)
        rhs = sub_totals(augment_v(g, self.cls), augment_h(f))
        return lhs.components == rhs.components


_dmat_cache: dict = {}


def _cached_d_v_matrix(group, module, p: int, q: int):
    key = (group, module, p, q)
    mat = _dmat_cache.get(key)
    if mat is None:
        mat = d_v_matrix(group, module, p, q)
        _dmat_cache[key] = mat
    return mat


def _member_supports(cls: ContinuityClass, group, module, p: int, q: int):
    """Flat-index supports of the delta-combination basis of the member
    subspace at (p, q), one support per (block, coordinate) pair."""
    dim = module.dim
    supports = []
    for block in bicochain_member_blocks(cls, p, q):
        for c in range(dim):
            supports.append([idx * dim + c for idx in block])
    return supports


def _restricted_columns(dmat, supports):
    """Columns of dmat summed over each support, as a row-major matrix."""
    rows = len(dmat)
    out = [[0] * len(supports) for _ in range(rows)]
    for j, support in enumerate(supports):
        for i in support:
            for r in range(rows):
                v = dmat[r][i]
                if v:
                    out[r][j] += v
    return out


def _dedupe_rows(mat, moduli, target=None):
    """Drop repeated (row, modulus, target) constraints; order-preserving."""
    seen = set()
    rows_out, mod_out, tgt_out = [], [], []
    for r, row in enumerate(mat):
        t = target[r] if target is not None else 0
        key = (tuple(row), moduli[r], t)
        if key in seen:
            continue
        if not any(row) and (moduli[r] == 0 and t == 0 or
                             moduli[r] != 0 and t % moduli[r] == 0):
            continue
        seen.add(key)
        rows_out.append(row)
        mod_out.append(moduli[r])
        tgt_out.append(t)
    if target is None:
        return rows_out, mod_out
    return rows_out, mod_out, tgt_out


_lift_cache: dict = {}


def _lift_system(cls: ContinuityClass, group, module, p: int, q: int):
    """Member supports at (p, q) and the restricted d_v matrix out of them."""
    key = (cls, group, module, p, q)
    entry = _lift_cache.get(key)
    if entry is None:
        supports = _member_supports(cls, group, module, p, q)
        dmat = _cached_d_v_matrix(group, module, p, q)
        entry = (supports, _restricted_columns(dmat, supports))
        _lift_cache[key] = entry
    return entry


def _solve_vertical_lift(cls: ContinuityClass, t: BiCochain) -> BiCochain | None:
    """Canonical class-member u at (p, q-1) with d_v u = t, or None."""
    group, module = t.group, t.module
    p, q = t.p, t.q
    supports, restricted = _lift_system(cls, group, module, p, q - 1)
    moduli = list(module.moduli) * (group.order ** (p + 1) * group.order ** (q + 1))
    target = list(bicochain_to_vec(t))
    rows, mods, tgt = _dedupe_rows(restricted, moduli, target)
    coeffs = solve_fp(rows, tgt, mods)
    if coeffs is None:
        return None
    flat = [0] * (group.order ** (p + 1) * group.order ** q * module.dim)
    for support, c in zip(supports, coeffs):
        for i in support:
            flat[i] += c
    return vec_to_bicochain(group, module, p, q - 1, flat)


def transfer_lc_to_c(f: Cochain, cls: ContinuityClass) -> TransferCertificate:
    """Staircase construction of a globally tame cocycle in the class of f.

    The witness accumulates the negated lifts, so the running total stays
    equal to the row augmentation plus the witness differential; when the
    support reaches the column edge the corner component is y-independent and
    its edge restriction is the output.

    Lifts come from the one-step insertion on the all-backend and from the
    canonical solver on quotient backends, equivariantized either way;
    a failed solve raises with the obstructing cocycle attached.
    """
    if not is_equivariant(f):
        raise ValidationError("transfer input must be equivariant")
    df = differential(f)
    if not df.is_zero():
        zero = f.module.zero()
        bad = next(t for t in tuples_of(f.group.order, f.degree + 2)
                   if df.value(t) != zero)
        raise ValidationError(
            f"transfer input must be a cocycle; d(f) is nonzero at tuple {bad}")
    if is_locally_continuous(cls, f) is None:
        conflict = local_conflict(cls, f, identity_nbhd(f.group, [f.group.identity]))
        raise ClassViolationError("transfer input is not locally continuous",
                                  witness=conflict)
    group, module = f.group, f.module
    n = f.degree

    if n == 0:
        # a degree-0 cocycle is constant and already globally tame
        cert = TransferCertificate(
            cls=cls, input=f, output=f,
            witness=total_from_components(group, module, -1, []),
            steps=(), coboundary_to_input=None)
        if not cert.verify():
            raise InternalCheckError("degree-0 transfer certificate failed to verify")
        cert.verified = True
        return cert

    running = augment_h(f)
    witness = zero_total(group, module, n - 1)
    steps: list[TransferStep] = []
    for p in range(n):
        q = n - p
        t = running.component(p, q)
        if not d_v(t).is_zero():
            raise InternalCheckError("staircase component is not a vertical cocycle")
        if cls.kind == "all":
            lift = equivariantize(vertical_insertion(t))
            method = "insertion"
        else:
            raw = _solve_vertical_lift(cls, t)
            if raw is None:
                raise ObstructionError(
                    "vertical cocycle admits no class-member lift",
                    obstruction=t, bidegree=(p, q))
            lift = equivariantize(raw)
            if not is_member(cls, lift):
                raise ObstructionError(
                    "equivariantized lift left the class",
                    obstruction=t, bidegree=(p, q))
            method = "solver"
        if d_v(lift).values != t.values:
            raise InternalCheckError("vertical lift failed to re-verify")
        steps.append(TransferStep(bidegree=(p, q - 1), method=method))
        lift_total = total_from_components(
            group, module, n - 1,
            [lift if i == p else zero_bicochain(group, module, i, n - 1 - i)
             for i in range(n)])
        witness = sub_totals(witness, lift_total)
        running = sub_totals(running, total_differential(lift_total))

    corner = running.component(n, 0)
    if not d_v(corner).is_zero():
        raise InternalCheckError("corner component depends on its y argument")
    g = col_edge(corner)

    coboundary = None
    if cls.kind == "all":
        coboundary = solve_coboundary(f, g)
        if coboundary is None:
            raise InternalCheckError("transfer output left the input's class")

    cert = TransferCertificate(cls=cls, input=f, output=g, witness=witness,
                               steps=tuple(steps), coboundary_to_input=coboundary)
    if not cert.verify():
        raise InternalCheckError("transfer certificate failed to verify")
    cert.verified = True
    return cert


@dataclass(frozen=True)
class ExactnessEntry:
    q: int
    exact: bool
    obstruction: BiCochain | None


@dataclass(frozen=True)
class ExactnessReport:
    cls: ContinuityClass
    p: int
    entries: tuple[ExactnessEntry, ...]

    def all_exact(self) -> bool:
        return all(e.exact for e in self.entries)


def column_exactness_check(cls: ContinuityClass, group, module, p: int,
                           q_max: int) -> ExactnessReport:
    """Decide, degree by degree, whether class-member vertical cocycles in
    column p lift through d_v within the class.

    At the foot of the column the reference complex is augmented by the
    globally tame p-cochains, so exactness there asks every y-independent
    member to have a tame edge restriction.
    """
    entries = []
    for q in range(q_max + 1):
        supports, restricted = _lift_system(cls, group, module, p, q)
        out_moduli = list(module.moduli) * (group.order ** (p + 1)
                                            * group.order ** (q + 2))
        rows, mods = _dedupe_rows(restricted, out_moduli)
        cocycle_coeffs = kernel_mod(rows, mods)
        exact = True
        obstruction = None
        for coeffs in cocycle_coeffs:
            flat = [0] * (group.order ** (p + 1) * group.order ** (q + 1)
                          * module.dim)
            for support, c in zip(supports, coeffs):
                for i in support:
                    flat[i] += c
            z = vec_to_bicochain(group, module, p, q, flat)
            if z.is_zero():
                continue
            if q == 0:
                # kernel membership already makes z y-independent, so z is the
                # constant extension of its edge; exactness needs the edge tame
                edge = col_edge(z)
                if continuity_conflict(cls, edge) is not None:
                    exact = False
                    obstruction = z
                    break
            else:
                if _solve_vertical_lift(cls, z) is None:
                    exact = False
                    obstruction = z
                    break
        entries.append(ExactnessEntry(q=q, exact=exact, obstruction=obstruction))
    return ExactnessReport(cls=cls, p=p, entries=tuple(entries))
