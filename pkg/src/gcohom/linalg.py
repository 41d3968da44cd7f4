"""Exact integer linear algebra: Smith normal form, modular solvers, lattices.

Everything runs on arbitrary-precision Python ints.  Matrices are lists of
rows; a "columns" argument is a list of column vectors.  Coefficient spaces
are finitely presented: a vector of moduli gives each coordinate's order,
with 0 meaning a free Z coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .errors import InternalCheckError, ValidationError

_VERIFY = False


def set_verify(flag: bool) -> None:
    """Enable the expensive postcondition checks (test builds turn this on)."""
    global _VERIFY
    _VERIFY = bool(flag)


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def matmul(a, b) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if inner else 0
    bt = [[b[k][j] for k in range(inner)] for j in range(cols)]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(m, v) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def columns_to_matrix(cols, nrows: int) -> list[list[int]]:
    return [[col[i] for col in cols] for i in range(nrows)]


def matrix_columns(m) -> list[list[int]]:
    if not m:
        return []
    return [[row[j] for row in m] for j in range(len(m[0]))]


@dataclass
class SNFResult:
    """S = L * M * R with L, R unimodular and S in Smith normal form."""

    s: list[list[int]]
    left: list[list[int]]
    right: list[list[int]]
    left_inv: list[list[int]]
    right_inv: list[list[int]]
    rows: int
    cols: int

    @property
    def diagonal(self) -> list[int]:
        k = min(self.rows, self.cols)
        return [self.s[i][i] for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(mat) -> SNFResult:
    """Diagonalize over Z with least-absolute-value pivoting.

    The divisibility chain d_1 | d_2 | ... holds on the diagonal and the
    factorization S = L*M*R is re-verified exactly before returning.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    if any(len(row) != n for row in mat):
        raise ValidationError("ragged matrix")
    S = [[int(v) for v in row] for row in mat]
    L = identity_matrix(m)
    Linv = identity_matrix(m)
    R = identity_matrix(n)
    Rinv = identity_matrix(n)

    def row_swap(a, b):
        if a == b:
            return
        S[a], S[b] = S[b], S[a]
        L[a], L[b] = L[b], L[a]
        for r in Linv:
            r[a], r[b] = r[b], r[a]

    def row_add(dst, src, c):
        S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]
        L[dst] = [x + c * y for x, y in zip(L[dst], L[src])]
        for r in Linv:
            r[src] -= c * r[dst]

    def row_negate(a):
        S[a] = [-x for x in S[a]]
        L[a] = [-x for x in L[a]]
        for r in Linv:
            r[a] = -r[a]

    def col_swap(a, b):
        if a == b:
            return
        for row in S:
            row[a], row[b] = row[b], row[a]
        for row in R:
            row[a], row[b] = row[b], row[a]
        Rinv[a], Rinv[b] = Rinv[b], Rinv[a]

    def col_add(dst, src, c):
        for row in S:
            row[dst] += c * row[src]
        for row in R:
            row[dst] += c * row[src]
        Rinv[src] = [x - c * y for x, y in zip(Rinv[src], Rinv[dst])]

    def col_negate(a):
        for row in S:
            row[a] = -row[a]
        for row in R:
            row[a] = -row[a]
        Rinv[a] = [-x for x in Rinv[a]]

    def clear_at(t):
        # pivot must be the unique nonzero entry of its row and column
        while True:
            i = next((i for i in range(m) if i != t and S[i][t]), None)
            if i is not None:
                q = S[i][t] // S[t][t]
                row_add(i, t, -q)
                if S[i][t]:
                    row_swap(t, i)
                continue
            j = next((j for j in range(n) if j != t and S[t][j]), None)
            if j is not None:
                q = S[t][j] // S[t][t]
                col_add(j, t, -q)
                if S[t][j]:
                    col_swap(t, j)
                continue
            break

    limit = min(m, n)
    t = 0
    while t < limit:
        best = None
        piv = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        clear_at(t)
        if S[t][t] < 0:
            row_negate(t)
        t += 1

    rank = t
    # enforce the divisibility chain; each fix only touches rows/cols i, i+1
    i = 0
    while i < rank - 1:
        if S[i + 1][i + 1] % S[i][i] == 0:
            i += 1
            continue
        row_add(i, i + 1, 1)
        clear_at(i)
        if S[i][i] < 0:
            row_negate(i)
        if S[i + 1][i + 1] < 0:
            row_negate(i + 1)
        i = max(i - 1, 0)

    result = SNFResult(s=S, left=L, right=R, left_inv=Linv, right_inv=Rinv, rows=m, cols=n)
    _check_snf(result, mat)
    return result


def _check_snf(res: SNFResult, mat) -> None:
    S, m, n = res.s, res.rows, res.cols
    for i in range(m):
        for j in range(n):
            if i != j and S[i][j]:
                raise InternalCheckError("smith form is not diagonal")
    diag = res.diagonal
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            raise InternalCheckError("zero before nonzero on the diagonal")
        if a and b and b % a != 0:
            raise InternalCheckError("divisibility chain broken")
        if a < 0 or b < 0:
            raise InternalCheckError("negative invariant factor")
    if matmul(res.left, matmul([list(r) for r in mat], res.right)) != S:
        raise InternalCheckError("S != L*M*R")
    if _VERIFY:
        if matmul(res.left, res.left_inv) != identity_matrix(m):
            raise InternalCheckError("left transform inverse is wrong")
        if matmul(res.right, res.right_inv) != identity_matrix(n):
            raise InternalCheckError("right transform inverse is wrong")


def solve_via_snf(res: SNFResult, b) -> list[int] | None:
    """Solve M x = b over Z given an SNF of M; canonical (free coords zero)."""
    bb = matvec(res.left, list(b))
    z = [0] * res.cols
    for i in range(res.rows):
        d = res.s[i][i] if i < res.cols else 0
        if d:
            if bb[i] % d:
                return None
            z[i] = bb[i] // d
        elif bb[i]:
            return None
    return matvec(res.right, z)


def solve_z(mat, b) -> list[int] | None:
    return solve_via_snf(smith_normal_form(mat), b)


def kernel_basis(mat) -> list[list[int]]:
    """Basis columns of the integer kernel lattice {x : M x = 0}."""
    res = smith_normal_form(mat)
    cols = []
    for j in range(res.cols):
        d = res.s[j][j] if j < res.rows else 0
        if not d:
            cols.append([res.right[i][j] for i in range(res.cols)])
    return cols


def column_lattice_basis(cols, nrows: int) -> list[list[int]]:
    """Basis of the lattice spanned by the given columns (may be redundant)."""
    if not cols:
        return []
    mat = columns_to_matrix(cols, nrows)
    res = smith_normal_form(mat)
    basis = []
    for i in range(min(res.rows, res.cols)):
        d = res.s[i][i]
        if d:
            basis.append([d * res.left_inv[r][i] for r in range(nrows)])
    return basis


def diag_generators(moduli) -> list[list[int]]:
    """Columns m_j * e_j for the positive moduli: the zero elements' lattice."""
    n = len(moduli)
    out = []
    for j, mj in enumerate(moduli):
        if mj:
            col = [0] * n
            col[j] = mj
            out.append(col)
    return out


def _split_rows(mat, moduli):
    exact_rows, exact_mods, mod_rows, mod_moduli = [], [], [], []
    for row, m in zip(mat, moduli):
        if m:
            mod_rows.append(list(row))
            mod_moduli.append(int(m))
        else:
            exact_rows.append(list(row))
            exact_mods.append(0)
    return exact_rows, mod_rows, mod_moduli


def kernel_mod(mat, row_moduli) -> list[list[int]]:
    """Generators of {x in Z^n : (M x)_i = 0 mod m_i}, exact where m_i = 0.

    Zero-modulus rows are solved over Z first; the remaining rows are scaled
    to a common modulus so one Smith form handles them all.
    """
    n = len(mat[0]) if mat else 0
    if len(row_moduli) != len(mat):
        raise ValidationError("row moduli length mismatch")
    exact_rows, mod_rows, mod_moduli = _split_rows(mat, row_moduli)
    if exact_rows:
        k0 = kernel_basis(exact_rows)
        if not k0:
            return []
    else:
        k0 = matrix_columns(identity_matrix(n))
    if not mod_rows or not k0:
        return k0
    big = lcm(*mod_moduli)
    reduced = columns_to_matrix(k0, n)
    scaled = [
        [(big // m) * sum(row[i] * reduced[i][c] for i in range(n)) for c in range(len(k0))]
        for row, m in zip(mod_rows, mod_moduli)
    ]
    res = smith_normal_form(scaled)
    gens = []
    for j in range(res.cols):
        d = res.s[j][j] if j < res.rows else 0
        step = big // gcd(d, big)
        col = [step * res.right[i][j] for i in range(res.cols)]
        gens.append([sum(k0[c][i] * col[c] for c in range(len(k0))) for i in range(n)])
    return gens


def solve_fp(mat, b, row_moduli) -> list[int] | None:
    """Solve M x = b with per-row moduli (0 = over Z); canonical solution.

    Canonical means every free parameter in Smith coordinates is zero and the
    determined coordinates take their smallest nonnegative representatives.
    """
    n = len(mat[0]) if mat else 0
    if len(row_moduli) != len(mat) or len(b) != len(mat):
        raise ValidationError("shape mismatch in solve_fp")
    exact_rows, mod_rows, mod_moduli = [], [], []
    exact_b, mod_b = [], []
    for row, m, bv in zip(mat, row_moduli, b):
        if m:
            mod_rows.append(list(row))
            mod_moduli.append(int(m))
            mod_b.append(int(bv))
        else:
            exact_rows.append(list(row))
            exact_b.append(int(bv))
    if exact_rows:
        res0 = smith_normal_form(exact_rows)
        x0 = solve_via_snf(res0, exact_b)
        if x0 is None:
            return None
        k0 = kernel_basis(exact_rows)
    else:
        x0 = [0] * n
        k0 = matrix_columns(identity_matrix(n))
    if not mod_rows:
        return x0
    big = lcm(*mod_moduli)
    rhs = []
    scaled = []
    for row, m, bv in zip(mod_rows, mod_moduli, mod_b):
        f = big // m
        scaled.append(
            [f * sum(row[i] * k0[c][i] for i in range(n)) for c in range(len(k0))]
            if k0
            else []
        )
        rhs.append(f * (bv - sum(row[i] * x0[i] for i in range(n))))
    if not k0:
        return x0 if all(v % big == 0 for v in rhs) else None
    res = smith_normal_form(scaled)
    lb = matvec(res.left, rhs)
    z = [0] * res.cols
    for i in range(res.rows):
        d = res.s[i][i] if i < res.cols else 0
        g = gcd(d, big)
        if lb[i] % g:
            return None
        if d:
            # d*z = lb[i] mod big; smallest nonnegative solution
            dd, bb_, target = d // g, big // g, (lb[i] // g) % (big // g)
            z[i] = (target * pow(dd, -1, bb_)) % bb_ if bb_ > 1 else 0
    c = matvec(res.right, z)
    return [x0[i] + sum(k0[j][i] * c[j] for j in range(len(k0))) for i in range(n)]


@dataclass(frozen=True)
class FPAbelianGroup:
    """Invariant factors d_1 | d_2 | ..., with trailing zeros for free rank."""

    factors: tuple[int, ...]

    def __post_init__(self):
        nz = [f for f in self.factors if f]
        zs = [f for f in self.factors if not f]
        if list(self.factors) != nz + zs:
            raise ValidationError("zeros must trail the torsion factors")
        for a, b in zip(nz, nz[1:]):
            if b % a:
                raise ValidationError("invariant factors must form a divisibility chain")
        if any(f == 1 for f in nz) or any(f < 0 for f in self.factors):
            raise ValidationError("invariant factors must be 0 or >= 2")

    @property
    def free_rank(self) -> int:
        return sum(1 for f in self.factors if f == 0)

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for f in self.factors:
            out *= f
        return out

    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " + ".join("Z" if f == 0 else f"Z/{f}" for f in self.factors)


@dataclass
class LatticeQuotient:
    """Presentation of ker/im with coordinates for expressing classes.

    basis: columns forming a Z-basis of the kernel lattice.
    The class of a kernel vector z is read off by solving basis * a = z and
    applying rel_left; coordinates at `coord_indices` are taken modulo the
    matching invariant factor (0 = free).
    """

    group: FPAbelianGroup
    ambient_dim: int
    basis: list[list[int]]
    basis_snf: SNFResult
    rel_left: list[list[int]]
    rel_leftinv: list[list[int]]
    coord_indices: list[int]
    coord_factors: list[int]

    def class_of(self, z) -> tuple[int, ...] | None:
        a = solve_via_snf(self.basis_snf, list(z))
        if a is None:
            return None
        beta = matvec(self.rel_left, a)
        out = []
        for idx, f in zip(self.coord_indices, self.coord_factors):
            out.append(beta[idx] % f if f else beta[idx])
        return tuple(out)

    def generator_vectors(self) -> list[list[int]]:
        gens = []
        k = len(self.basis)
        for idx in self.coord_indices:
            coeffs = [self.rel_leftinv[i][idx] for i in range(k)]
            gens.append(
                [sum(self.basis[j][r] * coeffs[j] for j in range(k)) for r in range(self.ambient_dim)]
            )
        return gens


def lattice_quotient(ker_gens, im_gens, ambient_dim: int) -> LatticeQuotient:
    """Quotient of the lattice spanned by ker_gens by the one from im_gens.

    im_gens must lie inside the kernel lattice; violations raise, since every
    caller guarantees the inclusion mathematically.
    """
    basis = column_lattice_basis(ker_gens, ambient_dim)
    k = len(basis)
    if k == 0:
        return LatticeQuotient(
            group=FPAbelianGroup(()),
            ambient_dim=ambient_dim,
            basis=[],
            basis_snf=smith_normal_form([[] for _ in range(ambient_dim)]),
            rel_left=[],
            rel_leftinv=[],
            coord_indices=[],
            coord_factors=[],
        )
    bmat = columns_to_matrix(basis, ambient_dim)
    bsnf = smith_normal_form(bmat)
    rel_cols = []
    for v in im_gens:
        a = solve_via_snf(bsnf, v)
        if a is None:
            raise InternalCheckError("image generator falls outside the kernel lattice")
        rel_cols.append(a)
    rel = columns_to_matrix(rel_cols, k) if rel_cols else zero_matrix(k, 0)
    rsnf = smith_normal_form(rel)
    diag = rsnf.diagonal
    indices, factors = [], []
    for i in range(k):
        d = diag[i] if i < len(diag) else 0
        if d != 1:
            indices.append(i)
            factors.append(d)
    # put torsion first in chain order, then free coordinates
    order = sorted(range(len(indices)), key=lambda t: (factors[t] == 0, t))
    indices = [indices[t] for t in order]
    factors = [factors[t] for t in order]
    return LatticeQuotient(
        group=FPAbelianGroup(tuple(factors)),
        ambient_dim=ambient_dim,
        basis=basis,
        basis_snf=bsnf,
        rel_left=rsnf.left,
        rel_leftinv=rsnf.left_inv,
        coord_indices=indices,
        coord_factors=factors,
    )


def homology_at(d_out, d_in, moduli_mid, moduli_out) -> FPAbelianGroup:
    """ker(d_out)/im(d_in) where the middle space has the given presentation.

    d_out maps the middle space to one with moduli_out; d_in maps into it.
    Requires d_out * d_in = 0 modulo moduli_out.
    """
    return homology_presentation(d_out, d_in, moduli_mid, moduli_out).group


def homology_presentation(d_out, d_in, moduli_mid, moduli_out) -> LatticeQuotient:
    n = len(moduli_mid)
    if d_out and len(d_out[0]) != n:
        raise ValidationError("d_out width does not match the middle space")
    if len(d_in) != n and d_in:
        raise ValidationError("d_in height does not match the middle space")
    comp = matmul(d_out, d_in) if (d_out and d_in and d_in[0]) else []
    for row, m in zip(comp, moduli_out):
        for v in row:
            if (m == 0 and v != 0) or (m != 0 and v % m != 0):
                raise ValidationError("d_out * d_in is not zero; not a complex")
    mid_zero = diag_generators(moduli_mid)
    for col in mid_zero:
        img = matvec(d_out, col) if d_out else []
        for v, m in zip(img, moduli_out):
            if (m == 0 and v != 0) or (m != 0 and v % m != 0):
                raise ValidationError("middle moduli are not respected by d_out")
    ker = kernel_mod(d_out, moduli_out) if d_out else matrix_columns(identity_matrix(n))
    ker = ker + mid_zero
    im = (matrix_columns(d_in) if d_in and d_in[0] else []) + mid_zero
    return lattice_quotient(ker, im, n)
