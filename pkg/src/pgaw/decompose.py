"""Multiplicities of the irreducible module types inside the standard module.

Each type (alpha, beta, rho) acts through the central operators by the
scalar triple (q^-rho, q[k-rho-alpha]+[alpha], q[h-rho-beta]+[beta]); the
triples separate types (asserted), so the multiplicity of a type equals the
dimension of the joint eigenspace of (Omega0, Omega1, Omega2) for its triple
inside the corner stratum (alpha, rho+beta), computed by exact elimination.
"""

from __future__ import annotations

from fractions import Fraction
from .geometry import GeometryIndex
from .modules import ModuleType, enumerate_types
from .operators import OperatorSet
from .rings import QuadScalar
from .verify import Outcome, VerificationReport

MultiplicityMap = dict[ModuleType, int]


def _scalar_inv(v):
    if isinstance(v, QuadScalar):
        return v.inverse()
    return Fraction(1) / Fraction(v)


def _rank(rows: list[list]) -> int:
    """Exact Gaussian elimination; pivot = first nonzero in column order."""
    rows = [row[:] for row in rows if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = _scalar_inv(rows[rank][col])
        prow = [inv * x for x in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _central_triple(t: ModuleType, ring):
    return (ring.q_power(-t.rho),
            ring.q_power(1) * ring.bracket(t.k - t.rho - t.alpha) + ring.bracket(t.alpha),
            ring.q_power(1) * ring.bracket(t.h - t.rho - t.beta) + ring.bracket(t.beta))


def compute_multiplicities(geom: GeometryIndex, ops: OperatorSet) -> MultiplicityMap:
    """Joint-eigenspace dimensions of the central triple at each type's corner."""
    ring = ops.ring
    types = enumerate_types(geom.h, geom.k)

    triples = [_central_triple(t, ring) for t in types]
    for a in range(len(types)):
        for b in range(a + 1, len(types)):
            if triples[a] == triples[b]:
                raise RuntimeError(
                    f"central scalar collision between types {types[a]} and "
                    f"{types[b]}; corner extraction would silently merge them")

    centrals = [ops["Omega0"], ops["Omega1"], ops["Omega2"]]
    out: MultiplicityMap = {}
    for t, lam in zip(types, triples):
        corner = geom.stratum(t.alpha, t.rho + t.beta)
        if not corner:
            out[t] = 0
            continue
        stacked = []
        for op, scalar in zip(centrals, lam):
            block = op.restrict(corner)
            for r, row in enumerate(block):
                shifted = list(row)
                shifted[r] = shifted[r] - scalar
                stacked.append(shifted)
        out[t] = len(corner) - _rank(stacked)
    return out


def bookkeeping_check(geom: GeometryIndex, mults: MultiplicityMap) -> VerificationReport:
    """Per-stratum and global dimension equations the multiplicities must satisfy."""
    report = VerificationReport({"mode": "decompose", "q": geom.q,
                                 "h": geom.h, "k": geom.k})
    ok = True
    for i in range(geom.k + 1):
        for j in range(geom.h + 1):
            got = len(geom.stratum(i, j))
            want = sum(m for t, m in mults.items() if t.supports(i, j))
            if got != want:
                ok = False
                report.outcomes.append(Outcome(
                    f"decomp.stratum[{i},{j}]", "fail",
                    f"|P_({i},{j})| = {got} but type multiplicities sum to {want}"))
    report.outcomes.append(Outcome(
        "decomp.stratum_equations", "pass" if ok else "fail",
        None if ok else "see per-stratum failures above"))

    total = sum(m * t.dim for t, m in mults.items())
    if total == geom.size:
        report.outcomes.append(Outcome("decomp.dimension_sum", "pass"))
    else:
        report.outcomes.append(Outcome(
            "decomp.dimension_sum", "fail",
            f"sum of mult*dim = {total}, |P| = {geom.size}"))
    return report


def multiplicity_table(mults: MultiplicityMap) -> list[dict]:
    """Deterministic serialization of a multiplicity map (CLI export)."""
    rows = []
    for t in sorted(mults, key=lambda t: (t.rho, t.alpha, t.beta)):
        rows.append({"alpha": t.alpha, "beta": t.beta, "rho": t.rho,
                     "dim": t.dim, "multiplicity": mults[t]})
    return rows
