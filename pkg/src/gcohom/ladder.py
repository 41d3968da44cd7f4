"""Long exact sequence of a coefficient short exact sequence, and the
comparison ladder between two continuity classes.

All modules here are finite (rank 0), so every verdict is decided by direct
enumeration: subgroup images and kernels are compared element by element in
invariant-factor coordinates, and the five-lemma conclusion is recomputed
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cochains import (Cochain, bar_values_from_vec, cochain_from_function,
                       differential, homogeneous_of, inhomogeneous_of)
from .cohomology import CohomologyGroup, bar_differential_matrix, cohomology_group
from .continuity import ContinuityClass, all_class
from .errors import ClassViolationError, InternalCheckError, ValidationError
from .groups import Violation
from .linalg import matvec
from .modules import GModule, element_index, indexed_element

ENUMERATION_CAP = 100_000


@dataclass(frozen=True)
class CoefficientSES:
    """0 -> gamma -> b -> a -> 0 over one group, with a tabulated set-level
    section of the projection (not required to be additive)."""

    gamma: GModule
    b: GModule
    a: GModule
    incl: tuple[tuple[int, ...], ...]
    proj: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...]

    @property
    def group(self):
        return self.gamma.group


def module_elements(module: GModule) -> list[tuple[int, ...]]:
    if module.rank != 0:
        raise ValidationError("only finite modules can be enumerated")
    return [indexed_element(module, i)
            for i in range(_module_size(module))]


def _module_size(module: GModule) -> int:
    size = 1
    for m in module.torsion:
        size *= m
    return size


def apply_matrix(mat, vec, out: GModule) -> tuple[int, ...]:
    return out.reduce(sum(row[j] * vec[j] for j in range(len(vec)))
                      for row in mat)


def validate_ses(ses: CoefficientSES) -> list[Violation]:
    violations = []
    if not (ses.gamma.group == ses.b.group == ses.a.group):
        return [Violation("group", (), "ses modules live over different groups")]
    for name, mod in (("gamma", ses.gamma), ("b", ses.b), ("a", ses.a)):
        if mod.rank != 0:
            violations.append(Violation("finiteness", (name,), f"module {name} is not finite"))
    if violations:
        return violations
    if len(ses.incl) != ses.b.dim or any(len(r) != ses.gamma.dim for r in ses.incl):
        violations.append(Violation("shape", (), "inclusion matrix has the wrong shape"))
    if len(ses.proj) != ses.a.dim or any(len(r) != ses.b.dim for r in ses.proj):
        violations.append(Violation("shape", (), "projection matrix has the wrong shape"))
    if violations:
        return violations

    group = ses.group
    for g in range(group.order):
        for gamma in module_elements(ses.gamma):
            lhs = apply_matrix(ses.incl, ses.gamma.act(g, gamma), ses.b)
            rhs = ses.b.act(g, apply_matrix(ses.incl, gamma, ses.b))
            if lhs != rhs:
                violations.append(Violation(
                    "equivariance", (g,),
                    f"inclusion does not commute with the action of {g}"))
                break
        for bv in module_elements(ses.b):
            lhs = apply_matrix(ses.proj, ses.b.act(g, bv), ses.a)
            rhs = ses.a.act(g, apply_matrix(ses.proj, bv, ses.a))
            if lhs != rhs:
                violations.append(Violation(
                    "equivariance", (g,),
                    f"projection does not commute with the action of {g}"))
                break

    image = {apply_matrix(ses.incl, gamma, ses.b)
             for gamma in module_elements(ses.gamma)}
    if len(image) != _module_size(ses.gamma):
        violations.append(Violation("injective", (), "inclusion is not injective"))
    kernel = {bv for bv in module_elements(ses.b)
              if apply_matrix(ses.proj, bv, ses.a) == ses.a.zero()}
    if image != kernel:
        violations.append(Violation(
            "exactness", (),
            "image of the inclusion differs from the kernel of the projection"))
    proj_image = {apply_matrix(ses.proj, bv, ses.a)
                  for bv in module_elements(ses.b)}
    if len(proj_image) != _module_size(ses.a):
        violations.append(Violation("surjective", (), "projection is not surjective"))

    if len(ses.section) != _module_size(ses.a):
        violations.append(Violation("section", (), "section table has the wrong length"))
    else:
        for i, bv in enumerate(ses.section):
            av = indexed_element(ses.a, i)
            if len(bv) != ses.b.dim:
                violations.append(Violation("section", (i,), f"section value {i} has the wrong width"))
                break
            if apply_matrix(ses.proj, ses.b.reduce(bv), ses.a) != av:
                violations.append(Violation(
                    "section", (av,), f"section of {av} does not project back to it"))
                break
    return violations


def make_ses(gamma: GModule, b: GModule, a: GModule, incl, proj,
             section) -> CoefficientSES:
    ses = CoefficientSES(
        gamma=gamma, b=b, a=a,
        incl=tuple(tuple(int(v) for v in row) for row in incl),
        proj=tuple(tuple(int(v) for v in row) for row in proj),
        section=tuple(tuple(int(v) for v in row) for row in section))
    violations = validate_ses(ses)
    if violations:
        raise ValidationError("invalid coefficient sequence", violations)
    return ses


def split_section(b: GModule, a: GModule, splitting):
    """Section table induced by a module splitting matrix a -> b."""
    return tuple(apply_matrix(splitting, av, b) for av in module_elements(a))


def push_cochain(f: Cochain, mat, out: GModule) -> Cochain:
    """Post-compose a cochain with a coefficient map given as a matrix."""
    return cochain_from_function(
        f.group, out, f.degree, lambda g: apply_matrix(mat, f.value(g), out))


def connecting_cochain(ses: CoefficientSES, f: Cochain) -> Cochain:
    """Cochain-level connecting construction: lift the bar form through the
    section, differentiate in the middle module, pull back along the
    inclusion.  The result is an equivariant cocycle of degree n+1 over gamma.
    """
    if f.module != ses.a:
        raise ValidationError("connecting construction wants a cochain over a")
    if not differential(f).is_zero():
        raise ValidationError("connecting construction wants a cocycle")
    group = f.group
    n = f.degree
    bar = inhomogeneous_of(f)
    lifted = []
    for value in bar.values:
        lifted.extend(ses.section[element_index(ses.a, value)])
    dvec = matvec(bar_differential_matrix(group, ses.b, n), lifted)

    pullback = {apply_matrix(ses.incl, gamma, ses.b): gamma
                for gamma in module_elements(ses.gamma)}
    gamma_vec = []
    bdim = ses.b.dim
    for i in range(group.order ** (n + 1)):
        chunk = ses.b.reduce(dvec[i * bdim:(i + 1) * bdim])
        pre = pullback.get(chunk)
        if pre is None:
            raise InternalCheckError(
                "lifted differential left the inclusion image")
        gamma_vec.extend(pre)
    out = homogeneous_of(bar_values_from_vec(group, ses.gamma, n + 1, gamma_vec))
    if not differential(out).is_zero():
        raise InternalCheckError("connecting construction broke the cocycle law")
    return out


@dataclass(frozen=True)
class ConnectingMap:
    ses: CoefficientSES
    degree: int
    domain: CohomologyGroup
    codomain: CohomologyGroup
    matrix: tuple[tuple[int, ...], ...]

    def apply(self, coords) -> tuple[int, ...]:
        return _reduce_coords(matvec(self.matrix, list(coords)),
                              self.codomain)


def _reduce_coords(vec, cohom: CohomologyGroup) -> tuple[int, ...]:
    factors = cohom.structure.factors
    return tuple(v % m if m else v for v, m in zip(vec, factors))


def _map_matrix(domain: CohomologyGroup, codomain: CohomologyGroup,
                image_of) -> tuple[tuple[int, ...], ...]:
    """Matrix of a map between cohomology groups in invariant-factor
    coordinates, built by pushing each domain generator through image_of."""
    cols = []
    for gen in domain.generators():
        coords = codomain.class_of(image_of(gen))
        if coords is None:
            raise ClassViolationError(
                "induced map left the continuity class", witness=None)
        cols.append(coords)
    rows = len(codomain.structure.factors)
    return tuple(tuple(col[i] for col in cols) for i in range(rows))


def connecting_hom(ses: CoefficientSES, n: int,
                   cls: ContinuityClass | None = None,
                   variant: str = "continuous") -> ConnectingMap:
    group = ses.group
    if cls is None:
        cls = all_class(group)
    domain = cohomology_group(group, ses.a, n, cls, variant)
    codomain = cohomology_group(group, ses.gamma, n + 1, cls, variant)
    matrix = _map_matrix(domain, codomain,
                         lambda f: connecting_cochain(ses, f))
    return ConnectingMap(ses=ses, degree=n, domain=domain, codomain=codomain,
                         matrix=matrix)


@dataclass(frozen=True)
class LESNode:
    degree: int
    slot: str  # "gamma" | "b" | "a"
    cohomology: CohomologyGroup


@dataclass(frozen=True)
class LESMap:
    label: str  # "incl" | "proj" | "delta"
    source: int
    target: int
    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class LESReport:
    ses: CoefficientSES
    cls: ContinuityClass
    nodes: tuple[LESNode, ...]
    maps: tuple[LESMap, ...]
    tail: CohomologyGroup
    tail_matrix: tuple[tuple[int, ...], ...]
    exact_at: tuple[bool, ...]
    compositions_zero: bool

    def all_exact(self) -> bool:
        return all(self.exact_at)


def _group_elements(cohom: CohomologyGroup) -> list[tuple[int, ...]]:
    factors = cohom.structure.factors
    if any(m == 0 for m in factors):
        raise ValidationError("cannot enumerate an infinite cohomology group")
    size = 1
    for m in factors:
        size *= m
    if size > ENUMERATION_CAP:
        raise ValidationError("cohomology group too large to enumerate")
    return [tuple(c) for c in product(*(range(m) for m in factors))]


def _image_set(matrix, domain: CohomologyGroup, codomain: CohomologyGroup):
    return {_reduce_coords(matvec(matrix, list(x)), codomain)
            for x in _group_elements(domain)}


def _kernel_set(matrix, domain: CohomologyGroup, codomain: CohomologyGroup):
    zero = tuple(0 for _ in codomain.structure.factors)
    return {x for x in _group_elements(domain)
            if _reduce_coords(matvec(matrix, list(x)), codomain) == zero}


def les_segment(ses: CoefficientSES, n_max: int,
                cls: ContinuityClass | None = None,
                variant: str = "continuous") -> LESReport:
    """Groups, maps and node-by-node exactness verdicts for degrees up to
    n_max, with one extra connecting map so the last node is checkable."""
    group = ses.group
    if cls is None:
        cls = all_class(group)
    violations = validate_ses(ses)
    if violations:
        raise ValidationError("invalid coefficient sequence", violations)

    nodes: list[LESNode] = []
    for n in range(n_max + 1):
        for slot, mod in (("gamma", ses.gamma), ("b", ses.b), ("a", ses.a)):
            nodes.append(LESNode(n, slot, cohomology_group(group, mod, n,
                                                           cls, variant)))
    tail = cohomology_group(group, ses.gamma, n_max + 1, cls, variant)

    maps: list[LESMap] = []
    for idx in range(len(nodes) - 1):
        src, dst = nodes[idx], nodes[idx + 1]
        if src.slot == "gamma":
            matrix = _map_matrix(src.cohomology, dst.cohomology,
                                 lambda f: push_cochain(f, ses.incl, ses.b))
            label = "incl"
        elif src.slot == "b":
            matrix = _map_matrix(src.cohomology, dst.cohomology,
                                 lambda f: push_cochain(f, ses.proj, ses.a))
            label = "proj"
        else:
            matrix = _map_matrix(src.cohomology, dst.cohomology,
                                 lambda f: connecting_cochain(ses, f))
            label = "delta"
        maps.append(LESMap(label, idx, idx + 1, matrix))
    tail_matrix = _map_matrix(nodes[-1].cohomology, tail,
                              lambda f: connecting_cochain(ses, f))

    exact_at: list[bool] = []
    compositions = True
    for idx, node in enumerate(nodes):
        if idx == 0:
            incoming = {tuple(0 for _ in node.cohomology.structure.factors)}
        else:
            m = maps[idx - 1]
            incoming = _image_set(m.matrix, nodes[idx - 1].cohomology,
                                  node.cohomology)
        if idx < len(maps):
            out_matrix, out_codomain = maps[idx].matrix, nodes[idx + 1].cohomology
        else:
            out_matrix, out_codomain = tail_matrix, tail
        outgoing_kernel = _kernel_set(out_matrix, node.cohomology, out_codomain)
        exact_at.append(incoming == outgoing_kernel)
        if not incoming <= outgoing_kernel:
            compositions = False
    return LESReport(ses=ses, cls=cls, nodes=tuple(nodes), maps=tuple(maps),
                     tail=tail, tail_matrix=tail_matrix,
                     exact_at=tuple(exact_at), compositions_zero=compositions)


def classes_nested(fine: ContinuityClass, coarse: ContinuityClass) -> bool:
    """Whether every fine-class member is a coarse-class member."""
    if coarse.kind == "all":
        return True
    if fine.kind == "all":
        return set(coarse.normal_subgroup) == {coarse.group.identity}
    return set(coarse.normal_subgroup) <= set(fine.normal_subgroup)


@dataclass(frozen=True)
class LadderReport:
    fine: LESReport
    coarse: LESReport
    vertical: tuple[tuple[tuple[int, ...], ...], ...]
    squares_commute: tuple[bool, ...]
    vertical_iso: tuple[bool, ...]
    five_lemma_checks: tuple[tuple[int, bool], ...]

    def all_squares_commute(self) -> bool:
        return all(self.squares_commute)


def ladder_check(ses: CoefficientSES, cls_fine: ContinuityClass,
                 cls_coarse: ContinuityClass, n_max: int,
                 variant: str = "continuous") -> LadderReport:
    """Compare the sequences of a finer and a coarser class.

    Vertical maps send each fine class to the coarse class of the same
    cochain.  Every square is checked on generators, each vertical map gets
    an isomorphism verdict by enumeration, and every window of five nodes
    whose outer four verticals are isomorphisms has the middle one
    recomputed, not inferred.
    """
    if not classes_nested(cls_fine, cls_coarse):
        raise ValidationError("fine class members must be coarse class members")
    fine = les_segment(ses, n_max, cls_fine, variant)
    coarse = les_segment(ses, n_max, cls_coarse, variant)

    vertical = []
    for fn, cn in zip(fine.nodes, coarse.nodes):
        vertical.append(_map_matrix(fn.cohomology, cn.cohomology, lambda f: f))
    vertical = tuple(vertical)

    squares = []
    for idx, fmap in enumerate(fine.maps):
        cmap = coarse.maps[idx]
        ok = True
        for x in _group_elements(fine.nodes[idx].cohomology):
            right_then_down = _reduce_coords(
                matvec(vertical[idx + 1],
                       list(_reduce_coords(matvec(fmap.matrix, list(x)),
                                           fine.nodes[idx + 1].cohomology))),
                coarse.nodes[idx + 1].cohomology)
            down_then_right = _reduce_coords(
                matvec(cmap.matrix,
                       list(_reduce_coords(matvec(vertical[idx], list(x)),
                                           coarse.nodes[idx].cohomology))),
                coarse.nodes[idx + 1].cohomology)
            if right_then_down != down_then_right:
                ok = False
                break
        squares.append(ok)

    iso = []
    for v, fn, cn in zip(vertical, fine.nodes, coarse.nodes):
        dom = _group_elements(fn.cohomology)
        images = {_reduce_coords(matvec(v, list(x)), cn.cohomology)
                  for x in dom}
        iso.append(len(images) == len(dom) and
                   len(dom) == len(_group_elements(cn.cohomology)))

    five_lemma = []
    for mid in range(2, len(vertical) - 2):
        window = [iso[mid - 2], iso[mid - 1], iso[mid + 1], iso[mid + 2]]
        if all(window):
            five_lemma.append((mid, iso[mid]))
    return LadderReport(fine=fine, coarse=coarse, vertical=vertical,
                        squares_commute=tuple(squares),
                        vertical_iso=tuple(iso),
                        five_lemma_checks=tuple(five_lemma))
