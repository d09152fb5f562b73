"""Exact spectral certificates and arithmetic feasibility filters.

A certificate is only issued after the defining polynomial identity has been
verified entry-for-entry in integer arithmetic (A^2 = t*I, A^3 = t*A, or
(A^2 - t1*I)(A^2 - t2*I) = 0).  Floating eigensolvers never decide anything
here; ``float_spectrum_matches`` exists purely as a cross-check for tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt

import numpy as np

from .core import SignedGraph, StructureError, _as_underlying, structure_report
from .exactlinalg import charpoly, exact_matmul, nullity, rank

FLOAT_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class Refusal:
    """A certificate request that failed, with the reason and a witness."""

    reason: str
    witness: tuple[int, int, int] | None = None  # (row, col, offending value)

    def __bool__(self):
        return False


@dataclass(frozen=True)
class SpectralCertificate:
    kind: str  # "TwoSym" | "ThreeSym" | "FourSym"
    lambda_sq: int
    m: int
    mu_sq: int | None = None  # FourSym only
    d: int | None = None  # ThreeSym nullity
    charpoly: tuple[int, ...] | None = None

    def __bool__(self):
        return True

    def eigenvalue_multiset(self) -> list[float]:
        lam = self.lambda_sq ** 0.5
        if self.kind == "TwoSym":
            return sorted([-lam] * self.m + [lam] * self.m)
        if self.kind == "ThreeSym":
            return sorted([-lam] * self.m + [0.0] * self.d + [lam] * self.m)
        mu = self.mu_sq ** 0.5
        return sorted([-lam] * self.m + [-mu, mu] + [lam] * self.m)


def _first_violation(diff: np.ndarray) -> tuple[int, int, int]:
    rows, cols = np.nonzero(diff)
    i, j = int(rows[0]), int(cols[0])
    return (i, j, int(diff[i, j]))


def certify_two_sym(g: SignedGraph, with_charpoly: bool = False):
    """Certificate that the spectrum is exactly {-sqrt(r), +sqrt(r)}.

    Holds iff A^2 = r*I with r the (common) vertex degree; a non-regular
    graph is refused outright since the identity forces regularity.
    """
    degs = set(g.degrees)
    if len(degs) > 1:
        return Refusal("not regular: a two-eigenvalue symmetric spectrum forces "
                       f"a constant degree, found degrees {sorted(degs)}")
    r = g.degrees[0]
    if r == 0:
        return Refusal("degree 0: the spectrum {0} has one eigenvalue, not two")
    a = np.asarray(g.adj, dtype=np.int64)
    sq = exact_matmul(a, a)
    target = r * np.eye(g.n, dtype=np.int64)
    if not np.array_equal(sq, target):
        return Refusal("A^2 != r*I", witness=_first_violation(sq - target))
    cp = tuple(charpoly(a)) if with_charpoly else None
    return SpectralCertificate(kind="TwoSym", lambda_sq=r, m=g.n // 2, charpoly=cp)


def certify_three_sym(g: SignedGraph, with_charpoly: bool = False):
    """Certificate for spectrum {[-lam]^m, [0]^d, [lam]^m} with d >= 1.

    The unique candidate lam^2 is tr(A^4)/tr(A^2); the certificate is issued
    only if A^3 = lam^2 * A holds exactly and A^2 != lam^2 * I.
    """
    a = np.asarray(g.adj, dtype=np.int64)
    sq = exact_matmul(a, a)
    t2 = int(np.trace(sq))
    if t2 == 0:
        return Refusal("empty graph: no nonzero eigenvalue pair")
    t4 = int(np.trace(exact_matmul(sq, sq)))
    if t4 % t2:
        return Refusal(f"tr(A^4)/tr(A^2) = {t4}/{t2} is not an integer")
    lam_sq = t4 // t2
    cube = exact_matmul(sq, a)
    diff = cube - lam_sq * a
    if np.any(diff):
        return Refusal(f"A^3 != {lam_sq}*A", witness=_first_violation(diff))
    if np.array_equal(sq, lam_sq * np.eye(g.n, dtype=np.int64)):
        return Refusal("A^2 = lam^2*I: two eigenvalues, not three")
    d = nullity(a)
    if d < 1 or (g.n - d) % 2:
        return Refusal("eigenvalue multiplicities do not fit the symmetric shape")
    cp = tuple(charpoly(a)) if with_charpoly else None
    return SpectralCertificate(kind="ThreeSym", lambda_sq=lam_sq, m=(g.n - d) // 2,
                               d=d, charpoly=cp)


def certify_four_sym(g: SignedGraph, with_charpoly: bool = False):
    """Certificate for spectrum {[-lam]^m, [-mu]^1, [mu]^1, [lam]^m}, 1 <= mu < lam.

    lam^2 and mu^2 are recovered from tr(A^2), tr(A^4) and n, then the
    identity (A^2 - lam^2 I)(A^2 - mu^2 I) = 0 plus exact rank computations
    confirm both the shape and the multiplicities.
    """
    n = g.n
    if n < 4 or n % 2:
        return Refusal(f"order {n} cannot carry the four-eigenvalue shape")
    m = (n - 2) // 2
    a = np.asarray(g.adj, dtype=np.int64)
    sq = exact_matmul(a, a)
    t2 = int(np.trace(sq))
    t4 = int(np.trace(exact_matmul(sq, sq)))
    if t2 % 2 or t4 % 2:
        return Refusal("trace parity rules out the shape")
    s, t = t2 // 2, t4 // 2
    # m*lam^2 + mu^2 = s and m*lam^4 + mu^4 = t give a quadratic for lam^2.
    aa = m * m + m
    bb = -2 * s * m
    cc = s * s - t
    disc = bb * bb - 4 * aa * cc
    if disc < 0:
        return Refusal("no real eigenvalue pair fits the trace moments")
    root = isqrt(disc)
    if root * root != disc:
        return Refusal("no integer eigenvalue pair fits the trace moments")
    for sign in (1, -1):
        num = -bb + sign * root
        if num % (2 * aa):
            continue
        lam_sq = num // (2 * aa)
        mu_sq = s - m * lam_sq
        if not (1 <= mu_sq < lam_sq):
            continue
        prod = exact_matmul(sq - lam_sq * np.eye(n, dtype=np.int64),
                            sq - mu_sq * np.eye(n, dtype=np.int64))
        if np.any(prod):
            continue
        if rank(sq - lam_sq * np.eye(n, dtype=np.int64)) != n - 2 * m:
            continue
        if rank(sq - mu_sq * np.eye(n, dtype=np.int64)) != n - 2:
            continue
        cp = tuple(charpoly(a)) if with_charpoly else None
        return SpectralCertificate(kind="FourSym", lambda_sq=lam_sq, m=m,
                                   mu_sq=mu_sq, charpoly=cp)
    return Refusal("no integer pair lam^2 > mu^2 >= 1 satisfies the identities")


def strongest_certificate(g: SignedGraph):
    """TwoSym, ThreeSym or FourSym certificate, else the TwoSym refusal."""
    for fn in (certify_two_sym, certify_three_sym, certify_four_sym):
        cert = fn(g)
        if cert:
            return cert
    return None


def char_poly(g: SignedGraph) -> list[int]:
    """Exact characteristic polynomial of the signed adjacency matrix."""
    return charpoly(g.adj)


def float_spectrum_matches(g: SignedGraph, cert: SpectralCertificate,
                           tol: float = FLOAT_CHECK_TOL) -> bool:
    """Floating cross-check that numpy eigenvalues match the certificate."""
    eig = np.sort(np.linalg.eigvalsh(np.asarray(g.adj, dtype=np.float64)))
    claimed = np.asarray(cert.eigenvalue_multiset())
    return eig.shape == claimed.shape and bool(np.max(np.abs(eig - claimed)) < tol)


def sum_of_two_squares(k: int) -> bool:
    """True iff k = a^2 + b^2 for some integers a, b >= 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    for a in range(isqrt(k) + 1):
        b = k - a * a
        r = isqrt(b)
        if r * r == b:
            return True
    return False


@dataclass(frozen=True)
class FilterVerdict:
    passed: bool
    failures: tuple[str, ...]

    def __bool__(self):
        return self.passed


def filter_sr2se(n: int, r: int, bipartite: bool = False) -> FilterVerdict:
    """Arithmetic necessary conditions for an (n, r) signed rectagraph with
    spectrum {-sqrt(r), +sqrt(r)} to exist.

    Violated condition names are collected rather than short-circuited, so a
    verdict lists everything wrong with the parameter pair.
    """
    if n < 2 or r < 1:
        raise ValueError("need n >= 2 and r >= 1")
    failures = []
    if n < comb(r + 1, 2) + 1:
        failures.append("bound")
    if (n * comb(r, 2)) % 4:
        failures.append("quadrangle-integrality")
    if n % 4 == 2:
        if not sum_of_two_squares(r):
            failures.append("sum-of-two-squares")
        if (r * (r - 1)) % 4:
            failures.append("mod-4")
    if bipartite:
        if n % 2:
            failures.append("bound")  # bipartite regular needs equal sides
        else:
            half = n // 2
            if half < comb(r, 2) + 1:
                failures.append("bound")
            if half % 2 == 1:
                if isqrt(r) ** 2 != r:
                    failures.append("square")
                if half > (half - r) ** 2 + (half - r) + 1:
                    failures.append("bound")
                if (r * (r - 1)) % 4:
                    failures.append("mod-4")
            elif half % 4 == 2 and not sum_of_two_squares(r):
                failures.append("sum-of-two-squares")
    seen = tuple(dict.fromkeys(failures))
    return FilterVerdict(passed=not seen, failures=seen)


def trace_identities(g: SignedGraph) -> tuple[int, int, int]:
    """(tr A_G^3, tr A_G^4, n*r*(3r-2)) for the underlying graph.

    The last value is what tr(A_G^4) must equal when the graph underlies a
    two-eigenvalue signed rectagraph; tr(A_G^3) must then vanish.
    """
    u = _as_underlying(g)
    rep = structure_report(u)
    if not rep.regular:
        raise StructureError("trace identities need a regular graph")
    r = rep.degree
    a = np.asarray(u.adj, dtype=np.int64)
    sq = exact_matmul(a, a)
    t3 = int(np.trace(exact_matmul(sq, a)))
    t4 = int(np.trace(exact_matmul(sq, sq)))
    return t3, t4, u.n * r * (3 * r - 2)
