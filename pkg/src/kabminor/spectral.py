"""Alpha-weighted adjacency spectra: matrix assembly, spectral radius and
Perron vectors, equitable-partition quotients, characteristic polynomials,
and the closed-form cubic/quadratic evaluators used by the verification
suites.

The alpha matrix of a graph is M = alpha*D + (1-alpha)*A with D the degree
diagonal and A the adjacency matrix, alpha in [0, 1).  alpha = 0 gives the
adjacency matrix; alpha = 1/2 gives half the signless Laplacian.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, _bits

#: convergence defaults, fixed so reports are comparable across runs
RAYLEIGH_TOL = 1e-12
RESIDUAL_TOL = 1e-10
LAMBDA_TIE_TOL = 1e-9


def check_alpha(alpha: float) -> float:
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1); got {alpha}")
    return float(alpha)


def alpha_matrix(g: Graph, alpha: float) -> np.ndarray:
    alpha = check_alpha(alpha)
    n = g.n
    m = np.zeros((n, n))
    for v in range(n):
        m[v, v] = alpha * g.degree(v)
        for u in _bits(g.rows[v]):
            m[v, u] = 1.0 - alpha
    return m


# ---------------------------------------------------------------------
# dense symmetric eigensolver (cyclic Jacobi) — authoritative fallback
# ---------------------------------------------------------------------

def jacobi_eigh(m: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi
    rotations.  Returns (eigenvalues ascending, eigenvector columns)."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    scale = max(1.0, float(np.max(np.abs(a))))
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[i, j] ** 2 for i in range(n) for j in range(i + 1, n)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rp, rq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * rp - s * rq
                a[:, q] = s * rp + c * rq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = a.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


@dataclass(frozen=True)
class SpectralResult:
    """Largest alpha-matrix eigenvalue with its eigenvector.

    is_perron is True when the vector is the strictly positive Perron
    vector (connected graph); for disconnected graphs the vector lives on
    one dominant component, padded with zeros elsewhere.
    """

    lam: float
    vector: tuple[float, ...]
    residual: float
    iterations: int
    method: str  # "power" | "dense"
    is_perron: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "lambda": self.lam,
                "vector": list(self.vector),
                "residual": self.residual,
                "iterations": self.iterations,
                "method": self.method,
                "is_perron": self.is_perron,
            }
        )


def _power_iteration(m: np.ndarray, tol: float):
    """Power iteration on m + I (shift keeps the iteration primitive on
    bipartite graphs at alpha = 0).  Returns (lam, vec, resid, iters) or
    None on non-convergence within the iteration cap."""
    n = m.shape[0]
    shifted = m + np.eye(n)
    x = np.full(n, 1.0 / math.sqrt(n))
    cap = int(100 * n * max(1.0, math.log(max(n, 2))) + 10_000)
    prev = math.inf
    for it in range(1, cap + 1):
        y = shifted @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return None
        x = y / norm
        ray = float(x @ (shifted @ x))
        if abs(ray - prev) < tol:
            lam = ray - 1.0
            resid = float(np.max(np.abs(m @ x - lam * x)))
            if resid < RESIDUAL_TOL:
                return lam, x, resid, it
        prev = ray
    return None


def _solve_component(g: Graph, alpha: float, tol: float):
    m = alpha_matrix(g, alpha)
    if g.n == 1:
        return 0.0, np.ones(1), 0.0, 0, "dense"
    out = _power_iteration(m, tol)
    if out is not None:
        lam, x, resid, it = out
        if np.min(x) < 0:
            x = -x
        if np.min(x) > 0:
            return lam, x, resid, it, "power"
    w, v = jacobi_eigh(m)
    lam = float(w[-1])
    x = v[:, -1]
    if np.sum(x) < 0:
        x = -x
    resid = float(np.max(np.abs(m @ x - lam * x)))
    return lam, x, resid, 0, "dense"


def spectral_radius(g: Graph, alpha: float, tol: float = RAYLEIGH_TOL) -> SpectralResult:
    """Largest eigenvalue of the alpha matrix with its eigenvector.

    Connected graphs get the positive Perron vector.  Disconnected graphs
    take the max over components; the vector of one maximizing component
    (the one containing the smallest vertex among maximizers) is
    zero-padded to full length and flagged non-Perron.
    """
    check_alpha(alpha)
    if g.n == 0:
        raise ValueError("spectral radius of the empty graph is undefined")
    comps = g.component_masks()
    if len(comps) == 1:
        lam, x, resid, it, method = _solve_component(g, alpha, tol)
        x = x / np.linalg.norm(x)
        return SpectralResult(lam, tuple(float(t) for t in x), resid, it, method, True)
    best = None
    for mask in comps:
        verts = list(_bits(mask))
        sub = g.induced(verts)
        lam, x, resid, it, method = _solve_component(sub, alpha, tol)
        if best is None or lam > best[0] + LAMBDA_TIE_TOL:
            best = (lam, verts, x, resid, it, method)
    lam, verts, x, resid, it, method = best
    full = np.zeros(g.n)
    full[verts] = x
    full /= np.linalg.norm(full)
    return SpectralResult(lam, tuple(float(t) for t in full), resid, it, method, False)


def eigen_equation_residual(g: Graph, alpha: float, res: SpectralResult) -> float:
    """Worst-case violation of lam*x_v = alpha*d(v)*x_v + (1-alpha)*sum of
    neighbour coordinates, re-derived entrywise from the graph."""
    worst = 0.0
    x = res.vector
    for v in range(g.n):
        rhs = alpha * g.degree(v) * x[v] + (1 - alpha) * sum(x[u] for u in g.neighbors(v))
        worst = max(worst, abs(res.lam * x[v] - rhs))
    return worst


# ---------------------------------------------------------------------
# equitable partitions and quotient matrices
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientMatrix:
    partition: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[float, ...], ...]  # class-by-class average row sums
    equitable: bool

    def as_array(self) -> np.ndarray:
        return np.array(self.entries)

    def rho(self) -> float:
        """Largest real part among eigenvalues (the quotient matrix is
        generally nonsymmetric)."""
        return float(np.max(np.linalg.eigvals(self.as_array()).real))


def quotient(g: Graph, alpha: float, partition) -> QuotientMatrix:
    check_alpha(alpha)
    classes = [tuple(c) for c in partition]
    seen = sorted(v for c in classes for v in c)
    if seen != list(range(g.n)) or any(not c for c in classes):
        raise ValueError("partition must cover all vertices disjointly, no empty classes")
    k = len(classes)
    # integer neighbour counts decide equitability exactly
    counts = [[[sum(g.rows[v] >> u & 1 for u in cj) for cj in classes] for v in ci]
              for ci in classes]
    equitable = all(
        len({row[j] for row in counts[i]}) == 1 for i in range(k) for j in range(k)
    )
    entries = []
    for i in range(k):
        row = []
        for j in range(k):
            avg = sum(r[j] for r in counts[i]) / len(classes[i])
            val = (1 - alpha) * avg
            if i == j:
                val += alpha * sum(g.degree(v) for v in classes[i]) / len(classes[i])
            row.append(val)
        entries.append(tuple(row))
    return QuotientMatrix(tuple(classes), tuple(entries), equitable)


def quotient_radius_check(g: Graph, alpha: float, partition):
    """(rho of the quotient, full spectral radius, |difference|); the
    partition must be equitable."""
    q = quotient(g, alpha, partition)
    if not q.equitable:
        raise ValueError("partition is not equitable")
    rho_q = q.rho()
    rho_full = spectral_radius(g, alpha).lam
    return rho_q, rho_full, abs(rho_q - rho_full)


def subdivided_clique_partition(b: int, k: int = 1):
    """The natural equitable partition of a once-subdivided clique built
    by subdivided_clique(b, 1): subdivision vertex, the two path
    endpoints, the rest of the clique."""
    if k != 1:
        raise ValueError("partition defined for the single-subdivision case")
    return [(b,), (0, 1), tuple(range(2, b))]


# ---------------------------------------------------------------------
# characteristic polynomial (division-free Faddeev–LeVerrier)
# ---------------------------------------------------------------------

def char_poly(m: np.ndarray) -> list[float]:
    """Monic coefficients [1, c_{n-1}, ..., c_0] of det(xI - M)."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    coeffs = [1.0]
    mk = m.copy()
    for k in range(1, n + 1):
        c = -float(np.trace(mk)) / k
        coeffs.append(c)
        if k < n:
            mk = m @ (mk + c * np.eye(n))
    return coeffs


def poly_eval(coeffs, x: float) -> float:
    out = 0.0
    for c in coeffs:
        out = out * x + c
    return out


# ---------------------------------------------------------------------
# closed-form evaluators for the subdivided-clique analysis
# ---------------------------------------------------------------------

def threshold(b: int, alpha: float) -> float:
    """The lower-bound point b - 1 - 2(1-alpha)/(b-1)."""
    return b - 1 - 2 * (1 - alpha) / (b - 1)


def f1_eval(b: int, alpha: float, x: float) -> float:
    """Cubic whose largest root is the spectral radius of the
    once-subdivided clique on b+1 vertices."""
    a = alpha
    return (
        x**3
        - (a * b + b + 3 * a - 3) * x**2
        + (a * b**2 + (2 * a**2 + 2 * a - 2) * b + 2 * a**2 - 7 * a + 2) * x
        - 2 * a**2 * b**2
        + (2 * a**2 + 2) * b
        - 4 * a**2
        + 8 * a
        - 6
    )


def f1_threshold_closed(b: int, alpha: float) -> float:
    """Closed form of f1 at the threshold point."""
    a = alpha
    return (
        -4 * (1 - a) ** 2 * (b - 2) * ((2 - a) * b**2 - 4 * b + 3 * a)
        / (b - 1) ** 3
    )


def f2_eval(b: int, alpha: float, x: float) -> float:
    """Cubic whose largest root is the spectral radius of the clique with
    one edge replaced by two pendant edges (clique_with_pendants)."""
    a = alpha
    return (
        x**3
        - (a * b + b + 2 * a - 3) * x**2
        + (a * b**2 + (a**2 + a - 2) * b + 2 * a**2 - 6 * a + 3) * x
        - a**2 * b**2
        + (a**2 + 1) * b
        - 2 * a**2
        + 4 * a
        - 3
    )


def f2_threshold_closed(b: int, alpha: float) -> float:
    a = alpha
    return (
        -2 * (1 - a) ** 2 * (b - 2) * ((3 - a) * b**2 - 6 * b + 5 * a - 1)
        / (b - 1) ** 3
    )


def h_eval(b: int, alpha: float, u2: int, x: float) -> float:
    """Cubic in the spectral radius tied to the order-(b+1) candidate
    maximizers parametrized by the attachment-set size u2."""
    a = alpha
    return (
        x**3
        - (a * u2 + b * a + a + b - 3) * x**2
        + ((b * a**2 + a**2 + b * a - 3 * a) * u2 + b**2 * a - a - 2 * b + 2) * x
    )


def g_eval(b: int, alpha: float, y: float) -> float:
    """Quadratic matching h at the spectral radius: h(lam) = g(u2)."""
    a = alpha
    return (1 - a) ** 2 * y**2 + (b * a**2 - 1) * (b - 1) * y


# ---------------------------------------------------------------------
# double-eigenvector identity
# ---------------------------------------------------------------------

def xy_identity_check(g: Graph, h: Graph, alpha: float) -> float:
    """Residual of x^T y (lam(h) - lam(g)) = x^T (M(h) - M(g)) y with x, y
    the Perron vectors of g and h (same order, both connected)."""
    if g.n != h.n:
        raise ValueError("graphs must have the same order")
    if not (g.is_connected() and h.is_connected()):
        raise ValueError("both graphs must be connected")
    rg = spectral_radius(g, alpha)
    rh = spectral_radius(h, alpha)
    x = np.array(rg.vector)
    y = np.array(rh.vector)
    lhs = float(x @ y) * (rh.lam - rg.lam)
    rhs = float(x @ (alpha_matrix(h, alpha) - alpha_matrix(g, alpha)) @ y)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------
# Perron-coordinate bounds around a dominating clique
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class PerronStats:
    S: tuple[int, ...]
    scope: tuple[int, ...]
    lam: float
    X_s: float
    X_M: float
    X_m: float
    c: float
    lower_ok: bool        # X_m >= (1-a) X_s / (lam - a|S|)
    lower_margin: float
    upper_ok: bool        # X_M < (1-a) X_s / (lam - a|S| - c)
    upper_margin: float


def perron_stats(g: Graph, alpha: float, S, scope=None, c: float | None = None) -> PerronStats:
    """Perron-coordinate extremes over `scope` (default: everything off
    the dominating clique S) together with the two standard bounds; c
    must exceed the max degree of the scope's induced subgraph (default:
    that max degree plus one)."""
    S = tuple(sorted(S))
    for v in S:
        if g.degree(v) != g.n - 1:
            raise ValueError(f"vertex {v} is not dominating")
    for u in S:
        for v in S:
            if u < v and not g.has_edge(u, v):
                raise ValueError("S is not a clique")
    rest = [v for v in range(g.n) if v not in S]
    scope = tuple(sorted(scope)) if scope is not None else tuple(rest)
    if set(scope) & set(S):
        raise ValueError("scope must avoid S")
    if not scope:
        raise ValueError("empty scope")
    res = spectral_radius(g, alpha)
    x = res.vector
    sub = g.induced(rest)
    if c is None:
        c = sub.max_degree() + 1.0
    xs = sum(x[v] for v in S)
    xm = min(x[v] for v in scope)
    xM = max(x[v] for v in scope)
    lo_den = res.lam - alpha * len(S)
    hi_den = res.lam - alpha * len(S) - c
    lower_bound = (1 - alpha) * xs / lo_den if lo_den > 0 else -math.inf
    lower_margin = xm - lower_bound
    if hi_den > 0:
        upper_bound = (1 - alpha) * xs / hi_den
        upper_margin = upper_bound - xM
        upper_ok = xM < upper_bound
    else:
        # the bound degenerates when lam <= alpha|S| + c; report vacuous
        upper_margin = math.inf
        upper_ok = True
    return PerronStats(
        S, scope, res.lam, xs, xM, xm, float(c),
        # equality is attained by scope vertices adjacent only to S, so
        # allow slack at the eigensolver's residual scale
        xm >= lower_bound - 1e-9, lower_margin, upper_ok, upper_margin,
    )


# ---------------------------------------------------------------------
# majorization
# ---------------------------------------------------------------------

def majorization_check(X, Y) -> bool:
    """X majorized by Y: equal totals and every prefix sum of sorted-desc
    X at most that of Y."""
    X, Y = list(X), list(Y)
    if len(X) != len(Y):
        raise ValueError("length mismatch")
    xs = sorted(X, reverse=True)
    ys = sorted(Y, reverse=True)
    if sum(xs) != sum(ys):
        return False
    px = py = 0
    for a, b in zip(xs, ys):
        px += a
        py += b
        if px > py:
            return False
    return True


def dot_inequality(X, Y, Z) -> bool:
    """For X majorized by Y and Z sorted non-increasing: X.Z <= Y.Z."""
    X, Y, Z = list(X), list(Y), list(Z)
    if not (len(X) == len(Y) == len(Z)):
        raise ValueError("length mismatch")
    if any(Z[i] < Z[i + 1] for i in range(len(Z) - 1)):
        raise ValueError("Z must be sorted non-increasing")
    xs = sorted(X, reverse=True)
    ys = sorted(Y, reverse=True)
    return sum(a * z for a, z in zip(xs, Z)) <= sum(a * z for a, z in zip(ys, Z))
