"""Sparse exact operators and the named operator families.

A SparseOperator is a square matrix over an exact coefficient field stored
as dict-of-rows; plain ints embed canonically in both fields, so 0/1
incidence matrices and their products run on native integer arithmetic.

An OperatorSet holds every named operator over one basis: either the
subspace lattice (geometry mode, entries in Q(sqrt q)) or the standard
basis of an abstract irreducible module (module mode, numeric or symbolic
entries).  Operators with two independent definitions are built both ways;
the verifier compares them.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Optional

from .geometry import GeometryIndex
from .rings import QuadRing, RingMismatchError

GEOMETRY = "geometry"
MODULE = "module"


class SparseOperator:
    """Square sparse matrix; no zero entries and no empty rows are stored."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows: Optional[dict] = None):
        self.dim = dim
        self.rows = rows if rows is not None else {}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "SparseOperator":
        return cls(dim, {})

    @classmethod
    def identity(cls, dim: int) -> "SparseOperator":
        return cls(dim, {r: {r: 1} for r in range(dim)})

    @classmethod
    def diagonal(cls, values) -> "SparseOperator":
        rows = {}
        for r, v in enumerate(values):
            if v:
                rows[r] = {r: v}
        return cls(len(values), rows)

    @classmethod
    def from_entries(cls, dim: int, entries) -> "SparseOperator":
        rows: dict = {}
        for r, c, v in entries:
            if v:
                rows.setdefault(r, {})[c] = v
        return cls(dim, rows)

    # -- queries --------------------------------------------------------------

    def entry(self, r: int, c: int):
        return self.rows.get(r, {}).get(c, 0)

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def first_nonzero(self):
        """(row, col, value) of the first entry in row-major order, or None."""
        if not self.rows:
            return None
        r = min(self.rows)
        c = min(self.rows[r])
        return r, c, self.rows[r][c]

    def entries(self):
        for r, row in self.rows.items():
            for c, v in row.items():
                yield r, c, v

    def support_violation(self, allowed: Callable[[int, int], bool]):
        """First (row, col, value) with allowed(row, col) false, else None."""
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                if not allowed(r, c):
                    return r, c, row[c]
        return None

    def restrict(self, positions) -> list:
        """Dense submatrix on the given positions (row-major list of lists)."""
        return [[self.entry(r, c) for c in positions] for r in positions]

    def coordinate_lines(self, labels=None):
        """Deterministic 'row col value' lines for external inspection."""
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                if labels is None:
                    yield f"{r} {c} {row[c]}"
                else:
                    yield f"{labels[r]} {labels[c]} {row[c]}"

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        if not isinstance(other, SparseOperator):
            return NotImplemented
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            mine = rows.get(r)
            if mine is None:
                rows[r] = dict(row)
                continue
            for c, v in row.items():
                s = mine.get(c, 0) + v
                if s:
                    mine[c] = s
                elif c in mine:
                    del mine[c]
            if not mine:
                del rows[r]
        return SparseOperator(self.dim, rows)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        if not isinstance(other, SparseOperator):
            return NotImplemented
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            mine = rows.get(r)
            if mine is None:
                rows[r] = {c: -v for c, v in row.items()}
                continue
            for c, v in row.items():
                s = mine.get(c, 0) - v
                if s:
                    mine[c] = s
                elif c in mine:
                    del mine[c]
            if not mine:
                del rows[r]
        return SparseOperator(self.dim, rows)

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(
            self.dim, {r: {c: -v for c, v in row.items()} for r, row in self.rows.items()})

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        if not isinstance(other, SparseOperator):
            return NotImplemented
        orows = other.rows
        out = {}
        for r, row in self.rows.items():
            acc: dict = {}
            for m, xv in row.items():
                orow = orows.get(m)
                if not orow:
                    continue
                if type(xv) is int and xv == 1:
                    for c, yv in orow.items():
                        if c in acc:
                            acc[c] = acc[c] + yv
                        else:
                            acc[c] = yv
                else:
                    for c, yv in orow.items():
                        if c in acc:
                            acc[c] = acc[c] + xv * yv
                        else:
                            acc[c] = xv * yv
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseOperator(self.dim, out)

    def scale(self, s) -> "SparseOperator":
        if type(s) is int and s == 1:
            return self
        if not s:
            return SparseOperator.zero(self.dim)
        out = {}
        for r, row in self.rows.items():
            acc = {c: s * v for c, v in row.items()}
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseOperator(self.dim, out)

    def transpose(self) -> "SparseOperator":
        out: dict = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                out.setdefault(c, {})[r] = v
        return SparseOperator(self.dim, out)

    def with_entry_added(self, r: int, c: int, delta) -> "SparseOperator":
        """Copy with delta added at (r, c); used by the negative controls."""
        rows = {rr: dict(row) for rr, row in self.rows.items()}
        row = rows.setdefault(r, {})
        v = row.get(c, 0) + delta
        if v:
            row[c] = v
        else:
            row.pop(c, None)
            if not row:
                del rows[r]
        return SparseOperator(self.dim, rows)

    def __eq__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __repr__(self):
        return f"SparseOperator(dim={self.dim}, nnz={self.nnz()})"


def commutator(x: SparseOperator, y: SparseOperator) -> SparseOperator:
    return (x @ y) - (y @ x)


class OperatorSet:
    """All named operators over one basis, plus the shared stratification."""

    def __init__(self, mode: str, ring, h: int, k: int, ij, labels,
                 geometry: Optional[GeometryIndex] = None, module_type=None):
        self.mode = mode
        self.ring = ring
        self.h = h
        self.k = k
        self.ij = tuple(ij)
        self.labels = tuple(labels)
        self.dim = len(self.ij)
        self.geometry = geometry
        self.module_type = module_type
        self.ops: dict[str, SparseOperator] = {}
        self._identity: Optional[SparseOperator] = None
        self._estar: dict = {}
        self._products: dict = {}

    def __getitem__(self, name: str) -> SparseOperator:
        return self.ops[name]

    def __setitem__(self, name: str, op: SparseOperator):
        self.ops[name] = op

    def __contains__(self, name: str) -> bool:
        return name in self.ops

    def identity(self) -> SparseOperator:
        if self._identity is None:
            self._identity = SparseOperator.identity(self.dim)
        return self._identity

    def levels(self) -> list[int]:
        return sorted({i + j for i, j in self.ij})

    def estar_level(self, level: int) -> SparseOperator:
        key = ("level", level)
        if key not in self._estar:
            self._estar[key] = SparseOperator.diagonal(
                [1 if i + j == level else 0 for i, j in self.ij])
        return self._estar[key]

    def estar_stratum(self, i: int, j: int) -> SparseOperator:
        key = ("stratum", i, j)
        if key not in self._estar:
            self._estar[key] = SparseOperator.diagonal(
                [1 if ij == (i, j) else 0 for ij in self.ij])
        return self._estar[key]

    def prod(self, a: str, b: str) -> SparseOperator:
        """Memoized product of two named operators."""
        key = (a, b)
        if key not in self._products:
            self._products[key] = self.ops[a] @ self.ops[b]
        return self._products[key]

    def perturbed(self, name: str, r: int, c: int, delta=1) -> "OperatorSet":
        """Shallow copy with one operator entry perturbed (negative control)."""
        clone = OperatorSet(self.mode, self.ring, self.h, self.k, self.ij,
                            self.labels, self.geometry, self.module_type)
        clone.ops = dict(self.ops)
        clone.ops[name] = self.ops[name].with_entry_added(r, c, delta)
        return clone

    def __repr__(self):
        return (f"OperatorSet(mode={self.mode}, dim={self.dim}, "
                f"h={self.h}, k={self.k}, ops={sorted(self.ops)})")


# ---------------------------------------------------------------------------
# geometry-mode construction
# ---------------------------------------------------------------------------

def build_geometry_operators(geom: GeometryIndex, ring: QuadRing) -> OperatorSet:
    """Every operator over the lattice; incidence families built combinatorially."""
    if getattr(ring, "kind", None) != "numeric" or ring.q != geom.q:
        raise RingMismatchError(
            "geometry operators need a numeric ring with matching q")
    h, k = geom.h, geom.k
    ops = OperatorSet(GEOMETRY, ring, h, k, geom.ij, geom.labels(), geometry=geom)
    size = geom.size

    ops["K1"] = SparseOperator.diagonal([ring.q_half(k - 2 * i) for i, _ in geom.ij])
    ops["K1i"] = SparseOperator.diagonal([ring.q_half(2 * i - k) for i, _ in geom.ij])
    ops["K2"] = SparseOperator.diagonal([ring.q_half(2 * j - h) for _, j in geom.ij])
    ops["K2i"] = SparseOperator.diagonal([ring.q_half(h - 2 * j) for _, j in geom.ij])

    ops["L1"] = SparseOperator(
        size, {u: {v: 1 for v in geom.slash_covered_by[u]}
               for u in range(size) if geom.slash_covered_by[u]})
    ops["L2"] = SparseOperator(
        size, {u: {v: 1 for v in geom.backslash_covered_by[u]}
               for u in range(size) if geom.backslash_covered_by[u]})
    ops["R1"] = ops["L1"].transpose()
    ops["R2"] = ops["L2"].transpose()

    f0 = {}
    fplus = {}
    fminus = {}
    f_all = {}
    r_comb = {}
    l_comb = {}
    a_comb = {}
    ij = geom.ij
    for w in range(size):
        up_slash = geom.slash_covered_by[w]
        up_back = geom.backslash_covered_by[w]
        # pairs below a common join w
        down_slash = geom.slash_covers_of[w]
        down_back = geom.backslash_covers_of[w]
        for u, v in permutations(up_slash, 2):
            fminus.setdefault(u, {})[v] = 1
        for u, v in permutations(down_back, 2):
            fplus.setdefault(u, {})[v] = 1
        for u, v in permutations(down_slash, 2):
            w_meet = geom.elements[u].intersect(geom.elements[v])
            if ij[geom.index[w_meet]][0] == ij[u][0]:
                f0.setdefault(u, {})[v] = 1
        for u in up_back:
            for v in up_slash:
                r_comb.setdefault(u, {})[v] = 1
                l_comb.setdefault(v, {})[u] = 1
        both = up_slash + up_back
        for u, v in permutations(both, 2):
            a_comb.setdefault(u, {})[v] = 1
            if ij[u][0] == ij[v][0]:
                f_all.setdefault(u, {})[v] = 1
    ops["F0"] = SparseOperator(size, f0)
    ops["Fplus"] = SparseOperator(size, fplus)
    ops["Fminus"] = SparseOperator(size, fminus)
    ops["F"] = SparseOperator(size, f_all)
    ops["R"] = SparseOperator(size, r_comb)
    ops["L"] = SparseOperator(size, l_comb)
    ops["A"] = SparseOperator(size, a_comb)

    complete_operator_set(ops)
    return ops


def complete_operator_set(ops: OperatorSet) -> OperatorSet:
    """Fill in the derived operators from this mode's defining routes."""
    ring = ops.ring
    if ops.mode == MODULE:
        ops["F0"] = expr_f0_slash(ops)
        ops["Fplus"] = expr_fplus(ops)
        ops["Fminus"] = expr_fminus(ops)
        ops["F"] = ops["F0"] + ops["Fplus"] + ops["Fminus"]
        ops["R"] = ops["L1"] @ ops["R2"]
        ops["L"] = ops["L2"] @ ops["R1"]
        ops["A"] = ops["R"] + ops["L"] + ops["F"]
    ops["Astar"] = ops["K1i"].scale(ring.q_half(ops.k))
    ops["Omega0"] = expr_omega0(ops)
    ops["Omega1"] = expr_omega1(ops)
    ops["Omega2"] = expr_omega2(ops)
    ops["Y"] = expr_y(ops)
    ops["P"] = expr_p(ops)
    ops["Omega"] = expr_omega_aw(ops)
    ops["G"] = expr_g(ops)
    ops["Gstar"] = expr_gstar(ops)
    return ops


# ---------------------------------------------------------------------------
# defining expressions (shared by the builders and the verifier)
# ---------------------------------------------------------------------------

def _qm1_inv(ops):
    return ops.ring.inv(ops.ring.q_power(1) - 1)


def expr_f0_slash(ops: OperatorSet) -> SparseOperator:
    """F0 = L1R1 - R1L1 + (q-1)^-1 (q^((h+k)/2) K1^-1 K2 - q^(k/2) K1 - q^(h/2) K2 + I)."""
    ring, h, k = ops.ring, ops.h, ops.k
    diag = (ops.prod("K1i", "K2")).scale(ring.q_half(h + k)) \
        - ops["K1"].scale(ring.q_half(k)) \
        - ops["K2"].scale(ring.q_half(h)) + ops.identity()
    return ops.prod("L1", "R1") - ops.prod("R1", "L1") + diag.scale(_qm1_inv(ops))


def expr_f0_backslash(ops: OperatorSet) -> SparseOperator:
    """F0 = R2L2 - L2R2 + (q-1)^-1 (q^((h+k)/2) K1 K2^-1 - q^(k/2) K1 - q^(h/2) K2 + I)."""
    ring, h, k = ops.ring, ops.h, ops.k
    diag = (ops.prod("K1", "K2i")).scale(ring.q_half(h + k)) \
        - ops["K1"].scale(ring.q_half(k)) \
        - ops["K2"].scale(ring.q_half(h)) + ops.identity()
    return ops.prod("R2", "L2") - ops.prod("L2", "R2") + diag.scale(_qm1_inv(ops))


def expr_fplus(ops: OperatorSet) -> SparseOperator:
    """F+ = L2R2 - q^(k/2) (q-1)^-1 K1 (q^(h/2) K2^-1 - I)."""
    ring, h, k = ops.ring, ops.h, ops.k
    diag = ops.prod("K1", "K2i").scale(ring.q_half(h)) - ops["K1"]
    return ops.prod("L2", "R2") - diag.scale(ring.q_half(k)).scale(_qm1_inv(ops))


def expr_fminus(ops: OperatorSet) -> SparseOperator:
    """F- = R1L1 - q^(h/2) (q-1)^-1 (q^(k/2) K1^-1 - I) K2."""
    ring, h, k = ops.ring, ops.h, ops.k
    diag = ops.prod("K1i", "K2").scale(ring.q_half(k)) - ops["K2"]
    return ops.prod("R1", "L1") - diag.scale(ring.q_half(h)).scale(_qm1_inv(ops))


def expr_back_l1r1(ops: OperatorSet) -> SparseOperator:
    """L1R1 = F0 + F- + (q-1)^-1 (q^(k/2) K1 - I)."""
    ring = ops.ring
    diag = ops["K1"].scale(ring.q_half(ops.k)) - ops.identity()
    return ops["F0"] + ops["Fminus"] + diag.scale(_qm1_inv(ops))


def expr_back_r1l1(ops: OperatorSet) -> SparseOperator:
    """R1L1 = F- + q^(h/2) (q-1)^-1 (q^(k/2) K1^-1 - I) K2."""
    ring = ops.ring
    diag = ops.prod("K1i", "K2").scale(ring.q_half(ops.k)) - ops["K2"]
    return ops["Fminus"] + diag.scale(ring.q_half(ops.h)).scale(_qm1_inv(ops))


def expr_back_l2r2(ops: OperatorSet) -> SparseOperator:
    """L2R2 = F+ + q^(k/2) (q-1)^-1 K1 (q^(h/2) K2^-1 - I)."""
    ring = ops.ring
    diag = ops.prod("K1", "K2i").scale(ring.q_half(ops.h)) - ops["K1"]
    return ops["Fplus"] + diag.scale(ring.q_half(ops.k)).scale(_qm1_inv(ops))


def expr_back_r2l2(ops: OperatorSet) -> SparseOperator:
    """R2L2 = F0 + F+ + (q-1)^-1 (q^(h/2) K2 - I)."""
    ring = ops.ring
    diag = ops["K2"].scale(ring.q_half(ops.h)) - ops.identity()
    return ops["F0"] + ops["Fplus"] + diag.scale(_qm1_inv(ops))


def expr_f_via_lr(ops: OperatorSet) -> SparseOperator:
    """F = L1R1 + L2R2 - (q-1)^-1 (q^((h+k)/2) K1 K2^-1 - I)."""
    ring = ops.ring
    diag = ops.prod("K1", "K2i").scale(ring.q_half(ops.h + ops.k)) - ops.identity()
    return ops.prod("L1", "R1") + ops.prod("L2", "R2") - diag.scale(_qm1_inv(ops))


def expr_f_via_rl(ops: OperatorSet) -> SparseOperator:
    """F = R1L1 + R2L2 - (q-1)^-1 (q^((h+k)/2) K1^-1 K2 - I)."""
    ring = ops.ring
    diag = ops.prod("K1i", "K2").scale(ring.q_half(ops.h + ops.k)) - ops.identity()
    return ops.prod("R1", "L1") + ops.prod("R2", "L2") - diag.scale(_qm1_inv(ops))


def expr_a_via_lr(ops: OperatorSet) -> SparseOperator:
    """A = (L1+L2)(R1+R2) - (q-1)^-1 (q^((h+k)/2) K1 K2^-1 - I)."""
    ring = ops.ring
    diag = ops.prod("K1", "K2i").scale(ring.q_half(ops.h + ops.k)) - ops.identity()
    return (ops["L1"] + ops["L2"]) @ (ops["R1"] + ops["R2"]) - diag.scale(_qm1_inv(ops))


def expr_a_via_rl(ops: OperatorSet) -> SparseOperator:
    """A = (R1+R2)(L1+L2) - (q-1)^-1 (q^((h+k)/2) K1^-1 K2 - I)."""
    ring = ops.ring
    diag = ops.prod("K1i", "K2").scale(ring.q_half(ops.h + ops.k)) - ops.identity()
    return (ops["R1"] + ops["R2"]) @ (ops["L1"] + ops["L2"]) - diag.scale(_qm1_inv(ops))


def expr_omega0(ops: OperatorSet) -> SparseOperator:
    """Omega0 = q^(-(h+k)/2) ((q-1) F0 K1^-1 K2^-1 + q^(h/2) K1^-1 + q^(k/2) K2^-1 - K1^-1 K2^-1)."""
    ring, h, k = ops.ring, ops.h, ops.k
    q = ring.q_power(1)
    k1i_k2i = ops.prod("K1i", "K2i")
    inner = (ops["F0"] @ k1i_k2i).scale(q - 1) \
        + ops["K1i"].scale(ring.q_half(h)) \
        + ops["K2i"].scale(ring.q_half(k)) \
        - k1i_k2i
    return inner.scale(ring.q_half(-(h + k)))


def expr_omega1(ops: OperatorSet) -> SparseOperator:
    """Omega1 = q^(-h/2) (q F0 K2^-1 + (q-1) F- K2^-1
    + (q^(k/2+1) K1 K2^-1 + q^((h+k)/2+1) K1^-1 - q K2^-1)/(q-1)) - q/(q-1) I."""
    ring, h, k = ops.ring, ops.h, ops.k
    q = ring.q_power(1)
    c = _qm1_inv(ops)
    frac = (ops.prod("K1", "K2i").scale(ring.q_half(k + 2))
            + ops["K1i"].scale(ring.q_half(h + k + 2))
            - ops["K2i"].scale(q)).scale(c)
    inner = (ops["F0"] @ ops["K2i"]).scale(q) \
        + (ops["Fminus"] @ ops["K2i"]).scale(q - 1) + frac
    return inner.scale(ring.q_half(-h)) - ops.identity().scale(q * c)


def expr_omega2(ops: OperatorSet) -> SparseOperator:
    """Omega2 = q^(-k/2) (q F0 K1^-1 + (q-1) F+ K1^-1
    + (q^(h/2+1) K1^-1 K2 + q^((h+k)/2+1) K2^-1 - q K1^-1)/(q-1)) - q/(q-1) I."""
    ring, h, k = ops.ring, ops.h, ops.k
    q = ring.q_power(1)
    c = _qm1_inv(ops)
    frac = (ops.prod("K1i", "K2").scale(ring.q_half(h + 2))
            + ops["K2i"].scale(ring.q_half(h + k + 2))
            - ops["K1i"].scale(q)).scale(c)
    inner = (ops["F0"] @ ops["K1i"]).scale(q) \
        + (ops["Fplus"] @ ops["K1i"]).scale(q - 1) + frac
    return inner.scale(ring.q_half(-k)) - ops.identity().scale(q * c)


def expr_f0_central(ops: OperatorSet) -> SparseOperator:
    """F0 = (q-1)^-1 (q^((h+k)/2) Omega0 K1 K2 - q^(k/2) K1 - q^(h/2) K2 + I)."""
    ring, h, k = ops.ring, ops.h, ops.k
    inner = (ops["Omega0"] @ ops.prod("K1", "K2")).scale(ring.q_half(h + k)) \
        - ops["K1"].scale(ring.q_half(k)) - ops["K2"].scale(ring.q_half(h)) \
        + ops.identity()
    return inner.scale(_qm1_inv(ops))


def expr_fplus_central(ops: OperatorSet) -> SparseOperator:
    """F+ = (q-1)^-1 (q^(k/2) Omega2
    - (q-1)^-1 (q^((h+k)/2+1)(Omega0 K2 + K2^-1) - 2 q^(k/2+1) I)) K1."""
    ring, h, k = ops.ring, ops.h, ops.k
    c = _qm1_inv(ops)
    inner = ((ops["Omega0"] @ ops["K2"]) + ops["K2i"]).scale(ring.q_half(h + k + 2)) \
        - ops.identity().scale(2 * ring.q_half(k + 2))
    return ((ops["Omega2"].scale(ring.q_half(k)) - inner.scale(c)).scale(c)) @ ops["K1"]


def expr_fminus_central(ops: OperatorSet) -> SparseOperator:
    """F- = (q-1)^-1 (q^(h/2) Omega1
    - (q-1)^-1 (q^((h+k)/2+1)(Omega0 K1 + K1^-1) - 2 q^(h/2+1) I)) K2."""
    ring, h, k = ops.ring, ops.h, ops.k
    c = _qm1_inv(ops)
    inner = ((ops["Omega0"] @ ops["K1"]) + ops["K1i"]).scale(ring.q_half(h + k + 2)) \
        - ops.identity().scale(2 * ring.q_half(h + 2))
    return ((ops["Omega1"].scale(ring.q_half(h)) - inner.scale(c)).scale(c)) @ ops["K2"]


def expr_y(ops: OperatorSet) -> SparseOperator:
    """Y = q^((h+k)/2) (K1 K2^-1 + K1^-1 K2) - q^-1 (q-1) I."""
    ring, h, k = ops.ring, ops.h, ops.k
    q = ring.q_power(1)
    return (ops.prod("K1", "K2i") + ops.prod("K1i", "K2")).scale(ring.q_half(h + k)) \
        - ops.identity().scale(ring.q_power(-1) * (q - 1))


def expr_p(ops: OperatorSet) -> SparseOperator:
    """P = q (q-1)^-2 (Y^2 - q^(h+k-2) (q+1)^2 I)."""
    ring, h, k = ops.ring, ops.h, ops.k
    q = ring.q_power(1)
    c = _qm1_inv(ops)
    y = ops["Y"]
    inner = (y @ y) - ops.identity().scale(ring.q_power(h + k - 2) * (q + 1) * (q + 1))
    return inner.scale(q * c * c)


def expr_omega_aw(ops: OperatorSet) -> SparseOperator:
    """Omega = -q^((h+k)/2-1) K1^-1 K2 ((q-1) Omega1 + (q+1) I)
    - q^(k-1) ((q-1) Omega2 + (q+1) I)."""
    ring, h, k = ops.ring, ops.h, ops.k
    q = ring.q_power(1)
    ident = ops.identity()
    t1 = (ops.prod("K1i", "K2") @ (ops["Omega1"].scale(q - 1) + ident.scale(q + 1))) \
        .scale(ring.q_half(h + k - 2))
    t2 = (ops["Omega2"].scale(q - 1) + ident.scale(q + 1)).scale(ring.q_power(k - 1))
    return -(t1 + t2)


def expr_g(ops: OperatorSet) -> SparseOperator:
    """G = -(q-1)^-1 (q^((h+k)/2-1)(q K1^-1 K2 Y - q^((h+k)/2)(q+1) I) Omega1
            + q^(k-1)(q Y - q^((h+k)/2)(q+1) K1^-1 K2) Omega2)
    - (q+1)(q-1)^-2 ((q^((h+k)/2) K1^-1 K2 + q^k I) Y
            - q^((h+k)/2-1)(q+1)(q^k K1^-1 K2 + q^((h+k)/2) I))."""
    ring, h, k = ops.ring, ops.h, ops.k
    q = ring.q_power(1)
    c = _qm1_inv(ops)
    ident = ops.identity()
    y = ops["Y"]
    k1i_k2 = ops.prod("K1i", "K2")
    qhk = ring.q_half(h + k)
    t1 = (((k1i_k2 @ y).scale(q) - ident.scale(qhk * (q + 1)))
          .scale(ring.q_half(h + k - 2))) @ ops["Omega1"]
    t2 = ((y.scale(q) - k1i_k2.scale(qhk * (q + 1)))
          .scale(ring.q_power(k - 1))) @ ops["Omega2"]
    t3 = ((k1i_k2.scale(qhk) + ident.scale(ring.q_power(k))) @ y) \
        - (k1i_k2.scale(ring.q_power(k)) + ident.scale(qhk)) \
        .scale(ring.q_half(h + k - 2) * (q + 1))
    return -((t1 + t2).scale(c)) - t3.scale((q + 1) * c * c)


def expr_gstar(ops: OperatorSet) -> SparseOperator:
    """G* = q^((h+3k)/2-1) (q+1) Omega0 K1^-1 K2."""
    ring, h, k = ops.ring, ops.h, ops.k
    q = ring.q_power(1)
    return (ops["Omega0"] @ ops.prod("K1i", "K2")) \
        .scale(ring.q_half(h + 3 * k - 2) * (q + 1))


def expr_askey1(ops: OperatorSet, middle=None) -> SparseOperator:
    """Residual of A^2 A* - (q+1/q) A A* A + A* A^2 - Y(A A* + A* A) - P A* = Omega A + G."""
    ring = ops.ring
    if middle is None:
        middle = ring.q_power(1) + ring.q_power(-1)
    a, astar = ops["A"], ops["Astar"]
    a2 = ops.prod("A", "A")
    a_astar = ops.prod("A", "Astar")
    astar_a = ops.prod("Astar", "A")
    lhs = (a2 @ astar) - (a_astar @ a).scale(middle) + (astar @ a2) \
        - (ops["Y"] @ (a_astar + astar_a)) - (ops["P"] @ astar)
    rhs = (ops["Omega"] @ a) + ops["G"]
    return lhs - rhs


def expr_askey2(ops: OperatorSet, middle=None) -> SparseOperator:
    """Residual of A*^2 A - (q+1/q) A* A A* + A A*^2 = Y A*^2 + Omega A* + G*."""
    ring = ops.ring
    if middle is None:
        middle = ring.q_power(1) + ring.q_power(-1)
    a, astar = ops["A"], ops["Astar"]
    astar2 = ops.prod("Astar", "Astar")
    astar_a = ops.prod("Astar", "A")
    lhs = (astar2 @ a) - (astar_a @ astar).scale(middle) + (a @ astar2)
    rhs = (ops["Y"] @ astar2) + (ops["Omega"] @ astar) + ops["Gstar"]
    return lhs - rhs
