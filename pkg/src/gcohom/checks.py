"""Randomized and exhaustive self-check suites behind the `check` command.

Each suite replays one family of structural identities on freshly sampled
data and reports per-identity results.  The signs suite is different: it
re-derives the frozen sign normalizations by elimination, trying every
candidate sign family and asserting only the shipped one survives.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bicomplex import (BiCochain, add_bicochains, augment_h, augment_v,
                        bicochain_from_function, bicochain_is_equivariant,
                        corner_witness, d_h, d_v, equivariantize,
                        row_contraction, row_edge, scale_bicochain,
                        sub_bicochains, sub_totals, total_differential,
                        total_from_components, vertical_insertion)
from .cochains import (Cochain, bar_values_from_vec, cochain_from_function,
                       differential, homogeneous_of)
from .cohomology import bar_differential_matrix, bar_moduli, bar_space_dim
from .continuity import all_class
from .errors import ValidationError
from .groups import FiniteGroup, direct_product, make_cyclic
from .linalg import (identity_matrix, kernel_mod, matmul, matvec,
                     smith_normal_form, solve_fp)
from .modules import GModule, module_with_action, trivial_module


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


# ---------------------------------------------------------------------------
# shared sample generators (the acceptance tests draw from these too)


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def random_cochain(rng: random.Random, group: FiniteGroup, module: GModule,
                   degree: int, bound: int = 20) -> Cochain:
    return cochain_from_function(
        group, module, degree,
        lambda t: tuple(rng.randrange(bound) for _ in range(module.dim)))


def random_bicochain(rng: random.Random, group: FiniteGroup, module: GModule,
                     p: int, q: int, bound: int = 20) -> BiCochain:
    return bicochain_from_function(
        group, module, p, q,
        lambda x, y: tuple(rng.randrange(bound) for _ in range(module.dim)))


def random_equivariant_bicochain(rng: random.Random, group: FiniteGroup,
                                 module: GModule, p: int, q: int) -> BiCochain:
    return equivariantize(random_bicochain(rng, group, module, p, q))


_COCYCLE_GENS: dict = {}


def _cocycle_generators(group: FiniteGroup, module: GModule, degree: int):
    key = (group, module, degree)
    if key not in _COCYCLE_GENS:
        mat = bar_differential_matrix(group, module, degree)
        _COCYCLE_GENS[key] = kernel_mod(mat, bar_moduli(group, module,
                                                        degree + 1))
    return _COCYCLE_GENS[key]


def random_equivariant_cocycle(rng: random.Random, group: FiniteGroup,
                               module: GModule, degree: int) -> Cochain:
    """Random element of the kernel of the degree-n differential.

    Sampled in bar coordinates, where the kernel is a lattice the exact
    solver can enumerate generators of.
    """
    gens = _cocycle_generators(group, module, degree)
    dim = bar_space_dim(group, module, degree)
    vec = [0] * dim
    for gen in gens:
        k = rng.randrange(6)
        for i, v in enumerate(gen):
            vec[i] += k * v
    bar = bar_values_from_vec(group, module, degree, _reduce_vec(module, vec))
    return homogeneous_of(bar)


def _reduce_vec(module: GModule, vec):
    dim = module.dim
    out = []
    for base in range(0, len(vec), dim):
        out.extend(module.reduce(vec[base:base + dim]))
    return out


def _sign_module(group: FiniteGroup, torsion: tuple[int, ...]) -> GModule:
    """Each generator-coset acts by negation; needs even element orders."""
    n = len(torsion)
    neg = [[-(i == j) for j in range(n)] for i in range(n)]
    matrices = {g: neg for g in group.elements() if g % 2 == 1}
    return module_with_action(group, 0, torsion, matrices)


def _sample_grid(max_order: int):
    """Weighted groups plus per-family degree caps.

    Table sizes grow like order^(degree+4) through a squared differential,
    so large orders are sampled rarely and only at low degree; the caps were
    tuned against the stated one-minute budget for the full suite.
    """
    groups, weights = [], []
    for n in range(2, max_order + 1):
        groups.append(make_cyclic(n))
        weights.append(5 if n <= 3 else 4 if n <= 4 else 2 if n <= 6 else 1)
    if max_order >= 4:
        groups.append(direct_product(make_cyclic(2), make_cyclic(2)))
        weights.append(4)
    if max_order >= 8:
        groups.append(direct_product(make_cyclic(2), make_cyclic(4)))
        weights.append(1)

    def cap(by_order: dict, default: int):
        return lambda group: by_order.get(group.order, default)

    caps = {
        "single": cap({2: 3, 3: 3, 4: 3, 5: 2, 6: 2}, 1),
        "bi": cap({2: 3, 3: 2, 4: 2}, 1),
        "total": cap({2: 3, 3: 2, 4: 1, 5: 1, 6: 1}, 0),
    }
    return groups, weights, caps


def _sample_module(rng: random.Random, group: FiniteGroup) -> GModule:
    roll = rng.randrange(6)
    if roll == 0:
        return trivial_module(group, rank=1)
    if roll == 1 and group.order % 2 == 0 and group.order <= 6:
        return _sign_module(group, (4,))
    if roll == 2 and group.order <= 3:
        return trivial_module(group, 0, (2, 4))
    return trivial_module(group, 0, (rng.choice((2, 3, 4, 6)),))


# ---------------------------------------------------------------------------
# suite: differentials


def suite_differentials(seed: int = 0, samples: int = 200,
                        max_order: int = 8) -> list[CheckResult]:
    rng = random.Random(seed)
    groups, weights, caps = _sample_grid(max_order)
    out = []

    def sample_space(kind: str):
        group = rng.choices(groups, weights)[0]
        module = _sample_module(rng, group)
        return group, module, rng.randint(0, caps[kind](group))

    failures = 0
    witness = ""
    for _ in range(samples):
        group, module, n = sample_space("single")
        f = random_cochain(rng, group, module, n)
        if not differential(differential(f)).is_zero():
            failures += 1
            witness = f"group {group.label}, degree {n}"
    out.append(CheckResult("differentials", "d o d = 0", failures == 0, witness))

    for name, fn in (
        ("d_h o d_h = 0", lambda f: d_h(d_h(f))),
        ("d_v o d_v = 0", lambda f: d_v(d_v(f))),
        ("d_h d_v + d_v d_h = 0",
         lambda f: add_bicochains(d_h(d_v(f)), d_v(d_h(f)))),
    ):
        failures = 0
        witness = ""
        for _ in range(samples):
            group, module, total = sample_space("bi")
            p = rng.randint(0, total)
            f = random_bicochain(rng, group, module, p, total - p)
            if not fn(f).is_zero():
                failures += 1
                witness = f"group {group.label}, bidegree ({p}, {total - p})"
        out.append(CheckResult("differentials", name, failures == 0, witness))

    failures = 0
    witness = ""
    for _ in range(samples):
        group, module, n = sample_space("total")
        comps = [random_bicochain(rng, group, module, p, n - p)
                 for p in range(n + 1)]
        t = total_from_components(group, module, n, comps)
        if not total_differential(total_differential(t)).is_zero():
            failures += 1
            witness = f"group {group.label}, total degree {n}"
    out.append(CheckResult("differentials", "D o D = 0", failures == 0, witness))
    return out


# ---------------------------------------------------------------------------
# suite: homotopy


def _row_identity_holds(f: BiCochain) -> bool:
    lhs = add_bicochains(row_contraction(d_h(f)), d_h(row_contraction(f)))
    return lhs.values == f.values


def _row_edge_identity_holds(f: BiCochain) -> bool:
    edge = row_edge(f)
    back = bicochain_from_function(f.group, f.module, 0, f.q,
                                   lambda x, y: edge.value(y))
    return row_contraction(d_h(f)).values == sub_bicochains(f, back).values


def _col_identity_holds(f: BiCochain) -> bool:
    lhs = add_bicochains(vertical_insertion(d_v(f)), d_v(vertical_insertion(f)))
    return lhs.values == f.values


def _delta_basis(group: FiniteGroup, module: GModule, p: int, q: int):
    size = group.order ** (p + 1) * group.order ** (q + 1)
    zero = module.zero()
    for i in range(size):
        for c in range(module.dim):
            unit = list(zero)
            unit[c] = 1
            table = [zero] * size
            table[i] = tuple(unit)
            yield BiCochain(group, module, p, q, tuple(table))


def suite_homotopy(seed: int = 0, samples: int = 30,
                   max_order: int = 4) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []

    # identities are linear in the cochain, so the delta basis is exhaustive
    z2 = make_cyclic(2)
    a2 = trivial_module(z2, 0, (2,))
    bad = None
    for p in (1, 2):
        for q in (0, 1, 2):
            for f in _delta_basis(z2, a2, p, q):
                if not _row_identity_holds(f):
                    bad = (p, q)
    out.append(CheckResult(
        "homotopy", "row contraction, exhaustive order 2", bad is None,
        "" if bad is None else f"fails at bidegree {bad}"))

    groups = [g for g in (make_cyclic(3), make_cyclic(4),
                          direct_product(make_cyclic(2), make_cyclic(2)))
              if g.order <= max_order]
    bad = None
    for group in groups:
        for _ in range(samples):
            module = _sample_module(rng, group)
            p, q = rng.randint(1, 2), rng.randint(0, 2)
            if not _row_identity_holds(random_bicochain(rng, group, module, p, q)):
                bad = (group.label, p, q)
    out.append(CheckResult(
        "homotopy", "row contraction, randomized", bad is None,
        "" if bad is None else f"fails at {bad}"))

    bad = None
    for group in groups:
        for _ in range(samples):
            module = _sample_module(rng, group)
            q = rng.randint(0, 2)
            if not _row_edge_identity_holds(random_bicochain(rng, group, module, 0, q)):
                bad = (group.label, q)
    out.append(CheckResult(
        "homotopy", "row contraction, p = 0 edge form", bad is None,
        "" if bad is None else f"fails at {bad}"))

    bad = None
    for group in groups:
        for _ in range(samples):
            module = _sample_module(rng, group)
            p, q = rng.randint(0, 2), rng.randint(1, 2)
            if not _col_identity_holds(random_bicochain(rng, group, module, p, q)):
                bad = (group.label, p, q)
    out.append(CheckResult(
        "homotopy", "vertical insertion, randomized", bad is None,
        "" if bad is None else f"fails at {bad}"))
    return out


# ---------------------------------------------------------------------------
# suite: equivariantize


def suite_equivariantize(seed: int = 0, samples: int = 100,
                         max_order: int = 2) -> list[CheckResult]:
    del max_order  # the stated family lives over the order-2 group
    rng = random.Random(seed)
    group = make_cyclic(2)
    modules = [trivial_module(group, 0, (4,)), _sign_module(group, (4,))]
    out = []

    bad = None
    for i in range(samples):
        module = modules[i % len(modules)]
        p = rng.randint(0, 2)
        q = rng.randint(1, 2)
        # u itself is not equivariant, but d_v u is: the non-equivariant part
        # is a vertical coboundary, which d_v kills
        u = add_bicochains(
            random_equivariant_bicochain(rng, group, module, p, q),
            d_v(random_bicochain(rng, group, module, p, q - 1)))
        dv_u = d_v(u)
        if not bicochain_is_equivariant(dv_u):
            bad = ("sample construction broke", p, q)
            break
        eu = equivariantize(u)
        if not bicochain_is_equivariant(eu):
            bad = ("output not equivariant", p, q)
            break
        if d_v(eu).values != dv_u.values:
            bad = ("vertical differential moved", p, q)
            break
    out.append(CheckResult(
        "equivariantize", "projects and fixes the vertical coboundary",
        bad is None, "" if bad is None else str(bad)))

    bad = None
    for i in range(samples // 2):
        module = modules[i % len(modules)]
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        f = random_equivariant_bicochain(rng, group, module, p, q)
        if equivariantize(f).values != f.values:
            bad = (p, q)
            break
    out.append(CheckResult(
        "equivariantize", "idempotent on equivariant tables", bad is None,
        "" if bad is None else f"moved at bidegree {bad}"))
    return out


# ---------------------------------------------------------------------------
# suite: corner (the explicit zig-zag witness)


def suite_corner(seed: int = 0, samples: int = 50,
                 max_order: int = 4) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []

    z2 = make_cyclic(2)
    a2 = trivial_module(z2, 0, (2,))
    cls2 = all_class(z2)
    mat = bar_differential_matrix(z2, a2, 1)
    moduli = bar_moduli(z2, a2, 2)
    dim = bar_space_dim(z2, a2, 1)
    bad = None
    count = 0
    for bits in range(2 ** dim):
        vec = [(bits >> i) & 1 for i in range(dim)]
        if any(v % 2 for v in matvec(mat, vec)):
            continue
        f = homogeneous_of(bar_values_from_vec(z2, a2, 1, vec))
        count += 1
        w = corner_witness(f, cls2)
        rhs = sub_totals(augment_v(f, cls2), augment_h(f))
        if total_differential(w).components != rhs.components:
            bad = vec
    out.append(CheckResult(
        "corner", f"degree 1, exhaustive over {count} cocycles, order 2",
        bad is None, "" if bad is None else f"fails at bar vector {bad}"))

    groups = [make_cyclic(2), make_cyclic(3), make_cyclic(4),
              direct_product(make_cyclic(2), make_cyclic(2))]
    groups = [g for g in groups if g.order <= max_order]
    bad = None
    for i in range(samples):
        group = groups[i % len(groups)]
        module = trivial_module(group, 0, (rng.choice((2, 3, 4)),))
        cls = all_class(group)
        n = 2 if i % 3 else 3
        # degree-3 kernel enumeration at order 4 needs a 1280x256 normal
        # form; keep that configuration at degree 2
        if group.order ** (n + 1) > 128:
            n = 2
        f = random_equivariant_cocycle(rng, group, module, n)
        w = corner_witness(f, cls)
        rhs = sub_totals(augment_v(f, cls), augment_h(f))
        if total_differential(w).components != rhs.components:
            bad = (group.label, n)
    out.append(CheckResult(
        "corner", "degrees 2-3, randomized", bad is None,
        "" if bad is None else f"fails at {bad}"))
    return out


# ---------------------------------------------------------------------------
# suite: snf


def suite_snf(seed: int = 0, samples: int = 40,
              max_order: int = 6) -> list[CheckResult]:
    rng = random.Random(seed)
    shapes = [(1, 1), (2, 3), (3, 2), (4, 4), (5, 3), (6, 6)]
    shapes = [s for s in shapes if max(s) <= max_order]
    diag_ok = chain_ok = factor_ok = inverse_ok = True
    witness = ""
    for i in range(samples):
        rows, cols = shapes[i % len(shapes)]
        mat = random_matrix(rng, rows, cols)
        if i % 7 == 0:
            mat[rng.randrange(rows)] = [0] * cols
        res = smith_normal_form(mat)
        s = res.s
        if any(s[r][c] for r in range(rows) for c in range(cols) if r != c):
            diag_ok, witness = False, f"shape {rows}x{cols}"
        d = res.diagonal
        for a, b in zip(d, d[1:]):
            if (a == 0 and b != 0) or (a and b and b % a):
                chain_ok, witness = False, f"diagonal {d}"
        if matmul(res.left, matmul(mat, res.right)) != s:
            factor_ok, witness = False, f"shape {rows}x{cols}"
        if (matmul(res.left, res.left_inv) != identity_matrix(rows)
                or matmul(res.right, res.right_inv) != identity_matrix(cols)):
            inverse_ok, witness = False, f"shape {rows}x{cols}"
    out = [
        CheckResult("snf", "smith form is diagonal", diag_ok, witness),
        CheckResult("snf", "divisibility chain holds", chain_ok, witness),
        CheckResult("snf", "S = L * M * R", factor_ok, witness),
        CheckResult("snf", "transforms have integer inverses", inverse_ok, witness),
    ]

    solve_ok = kernel_ok = True
    witness = ""
    for i in range(samples):
        rows, cols = shapes[i % len(shapes)]
        mat = random_matrix(rng, rows, cols, bound=5)
        moduli = [rng.choice((0, 2, 4, 6)) for _ in range(rows)]
        x0 = [rng.randint(-3, 3) for _ in range(cols)]
        b = [v if m == 0 else v % m
             for v, m in zip(matvec(mat, x0), moduli)]
        x = solve_fp(mat, b, moduli)
        if x is None:
            solve_ok, witness = False, f"known-solvable system refused ({rows}x{cols})"
        else:
            got = matvec(mat, x)
            if any((gi - bi) % m if m else gi != bi
                   for gi, bi, m in zip(got, b, moduli)):
                solve_ok, witness = False, f"solution does not satisfy ({rows}x{cols})"
        for gen in kernel_mod(mat, moduli):
            got = matvec(mat, gen)
            if any(gi % m if m else gi for gi, m in zip(got, moduli)):
                kernel_ok, witness = False, f"kernel generator escapes ({rows}x{cols})"
    out.append(CheckResult("snf", "solver solutions satisfy their system",
                           solve_ok, witness))
    out.append(CheckResult("snf", "kernel generators map to zero",
                           kernel_ok, witness))
    return out


# ---------------------------------------------------------------------------
# suite: signs


_SIGN_FAMILIES = {
    "+1": lambda p, q: 1,
    "-1": lambda p, q: -1,
    "(-1)^p": lambda p, q: (-1) ** p,
    "(-1)^q": lambda p, q: (-1) ** q,
    "(-1)^(p+q)": lambda p, q: (-1) ** (p + q),
}

# (1,1), (1,2), (2,1) jointly separate all five families above
_SIGN_BIDEGREES = ((1, 1), (1, 2), (2, 1))


def _surviving_row_signs(group: FiniteGroup, module: GModule) -> set[str]:
    survivors = set(_SIGN_FAMILIES)
    for p, q in _SIGN_BIDEGREES:
        for f in _delta_basis(group, module, p, q):
            for name in list(survivors):
                sign = _SIGN_FAMILIES[name]

                def h(u, _s=sign):
                    # candidate = frozen table rescaled to the candidate sign
                    return scale_bicochain(_s(u.p, u.q) * (-1) ** u.p,
                                           row_contraction(u))

                lhs = add_bicochains(h(d_h(f)), d_h(h(f)))
                if lhs.values != f.values:
                    survivors.discard(name)
    return survivors


def _surviving_col_signs(group: FiniteGroup, module: GModule) -> set[str]:
    survivors = set(_SIGN_FAMILIES)
    for p, q in _SIGN_BIDEGREES:
        for f in _delta_basis(group, module, p, q):
            for name in list(survivors):
                sign = _SIGN_FAMILIES[name]

                def k(u, _s=sign):
                    return scale_bicochain(_s(u.p, u.q) * (-1) ** u.p,
                                           vertical_insertion(u))

                lhs = add_bicochains(k(d_v(f)), d_v(k(f)))
                if lhs.values != f.values:
                    survivors.discard(name)
    return survivors


def suite_signs(seed: int = 0, samples: int = 0,
                max_order: int = 2) -> list[CheckResult]:
    del seed, samples, max_order  # fully deterministic, smallest useful size
    group = make_cyclic(2)
    # torsion 4, not 2: candidates differing by a -1 coincide mod 2, so the
    # elimination needs a module where doubling is injective on some element
    module = trivial_module(group, 0, (4,))
    cls = all_class(group)
    out = []

    survivors = _surviving_row_signs(group, module)
    out.append(CheckResult(
        "signs", "row contraction sign is (-1)^p",
        survivors == {"(-1)^p"}, f"survivors: {sorted(survivors)}"))

    survivors = _surviving_col_signs(group, module)
    out.append(CheckResult(
        "signs", "vertical insertion sign is (-1)^p",
        survivors == {"(-1)^p"}, f"survivors: {sorted(survivors)}"))

    # augmentations: both chain-map identities with the frozen +1; the
    # degree-alternating candidate must fail on a cochain with df != 0
    rng = random.Random(7)
    ok = True
    alt_fails = False
    for _ in range(20):
        f = equiv_from_bar(rng, group, module, 2)
        if (total_differential(augment_h(f)).components
                != augment_h(differential(f)).components):
            ok = False
        if (total_differential(augment_v(f, cls)).components
                != augment_v(differential(f), cls).components):
            ok = False
        if not differential(f).is_zero():
            n = f.degree
            lhs = _scale_total((-1) ** n, total_differential(augment_h(f)))
            rhs = _scale_total((-1) ** (n + 1), augment_h(differential(f)))
            if lhs.components != rhs.components:
                alt_fails = True
    out.append(CheckResult(
        "signs", "augmentations are chain maps with sign +1", ok and alt_fails,
        "alternating candidate refuted" if alt_fails
        else "no witness separated the alternating candidate"))

    # corner witness: frozen global sign satisfies the stated equation, the
    # raw alternating combination satisfies only its negation
    f = equiv_cocycle_small(group, module)
    w = corner_witness(f, cls)
    raw = _scale_total(-1, w)
    rhs = sub_totals(augment_v(f, cls), augment_h(f))
    frozen_ok = total_differential(w).components == rhs.components
    raw_ok = (total_differential(raw).components
              == _scale_total(-1, rhs).components)
    nonzero = not rhs.is_zero()
    out.append(CheckResult(
        "signs", "corner witness carries the extra global -1",
        frozen_ok and raw_ok and nonzero,
        "raw combination lands on the negated equation"))
    return out


def _scale_total(k, t):
    comps = [scale_bicochain(k, c) for c in t.components]
    return total_from_components(t.group, t.module, t.degree, comps)


def equiv_from_bar(rng: random.Random, group: FiniteGroup, module: GModule,
                   degree: int) -> Cochain:
    dim = bar_space_dim(group, module, degree)
    vec = [rng.randrange(8) for _ in range(dim)]
    return homogeneous_of(bar_values_from_vec(group, module, degree,
                                              _reduce_vec(module, vec)))


def equiv_cocycle_small(group: FiniteGroup, module: GModule) -> Cochain:
    """Deterministic nonzero equivariant 2-cocycle: the carry table."""
    n = group.order
    return cochain_from_function(
        group, module, 2,
        lambda t: ((((t[1] - t[0]) % n) + ((t[2] - t[1]) % n)) // n,))


# ---------------------------------------------------------------------------
# registry


SUITES = {
    "differentials": suite_differentials,
    "homotopy": suite_homotopy,
    "equivariantize": suite_equivariantize,
    "corner": suite_corner,
    "snf": suite_snf,
    "signs": suite_signs,
}


def run_suite(name: str, seed: int = 0, samples: int | None = None,
              max_order: int | None = None) -> list[CheckResult]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, seed, samples, max_order))
        return out
    if name not in SUITES:
        known = ", ".join(sorted(SUITES) + ["all"])
        raise ValidationError(f"unknown suite {name!r}; known suites: {known}")
    kwargs = {"seed": seed}
    if samples is not None:
        kwargs["samples"] = samples
    if max_order is not None:
        kwargs["max_order"] = max_order
    return SUITES[name](**kwargs)
