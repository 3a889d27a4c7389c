"""Equilibrium families and their stability classification.

The system has three equilibrium families: the z-axis points (0,0,0,0,M)
with M != 0, the ring (M,0,N,0,0) with M^2+N^2 != 0, and the origin.  On a
leaf of the Casimir (C = c) the z-axis point e_c = (0,0,0,0,c) is isolated;
its type is decided by the eigenvalue pattern of a pencil

    L(alpha) = DX_H + alpha * DX_I

of the two commuting linearized flows restricted to the leaf.  For c != 0
some alpha gives four distinct eigenvalues and the pattern is one of the
four non-degenerate types; at c = 0 every pencil member has repeated
eigenvalues and stability is settled by an algebraic level-set argument.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from .core import DomainError, as_state, conserved, vector_field

CENTER_CENTER = "center-center"
CENTER_SADDLE = "center-saddle"
SADDLE_SADDLE = "saddle-saddle"
FOCUS_FOCUS = "focus-focus"
DEGENERATE = "degenerate"

STABLE = "stable"
UNSTABLE = "unstable"
NOT_DETERMINED = "not-determined"

K0 = "K0"
K1 = "K1"

# alpha values tried when hunting for a pencil member with distinct
# eigenvalues; any nonzero alpha works off the degenerate leaf c = 0,
# so a coarse dyadic grid suffices.
ALPHA_GRID = tuple(s * 2.0 ** k for k in range(-6, 4) for s in (1.0, -1.0))


@dataclass
class EquilibriumFamily:
    """A member of one of the three equilibrium families.

    tag "E1": (0,0,0,0,M), M != 0; tag "E2": (M,0,N,0,0), M^2+N^2 != 0;
    tag "E3": the origin.
    """

    tag: str
    M: float = 0.0
    N: float = 0.0

    def __post_init__(self):
        if self.tag == "E1":
            if self.M == 0:
                raise ValueError("E1 requires M != 0")
        elif self.tag == "E2":
            if self.M ** 2 + self.N ** 2 == 0:
                raise ValueError("E2 requires M^2 + N^2 != 0")
        elif self.tag != "E3":
            raise ValueError(f"unknown family tag {self.tag!r}")

    def embed(self) -> np.ndarray:
        if self.tag == "E1":
            return np.array([0.0, 0.0, 0.0, 0.0, self.M])
        if self.tag == "E2":
            return np.array([self.M, 0.0, self.N, 0.0, 0.0])
        return np.zeros(5)


def is_equilibrium(p, tol: float) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return float(np.abs(vector_field(p)).max()) <= tol


def identify_family(p, tol: float = 0.0) -> EquilibriumFamily:
    """Match p against the three families; DomainError if none fits."""
    x1, y1, x2, y2, z = as_state(p)
    if max(abs(y1), abs(y2)) > tol:
        raise DomainError(f"{p} is not an equilibrium of any family")
    if max(abs(x1), abs(x2)) <= tol:
        if abs(z) <= tol:
            return EquilibriumFamily("E3")
        return EquilibriumFamily("E1", M=z)
    if abs(z) <= tol:
        return EquilibriumFamily("E2", M=x1, N=x2)
    raise DomainError(f"{p} is not an equilibrium of any family")


def k_split(e: EquilibriumFamily, c: float) -> str:
    """Classify an equilibrium on the leaf C = c as K0 or K1.

    K1 members (the ring family) are exactly those where the leaf-restricted
    differential of I is nonzero: the tangent vector (-N, N, M, -M, 0)
    witnesses dI(e)(v) = M^2 + N^2 != 0.  The axis family and the origin
    have dI = 0 outright.
    """
    point = e.embed()
    if abs(conserved(point).C - c) > 1e-12:
        raise DomainError(f"point {point} does not lie on the leaf C={c}")
    return K1 if e.tag == "E2" else K0


@dataclass
class LeafLinearization:
    """Linearized leaf flows of H and I at (0,0,0,0,c), chart (x1,y1,x2,y2)."""

    c: float
    matrix_H: np.ndarray  # 4x4
    matrix_I: np.ndarray  # 4x4


def reduced_hamiltonian_field(u, c: float) -> np.ndarray:
    """Leaf flow of H in the chart z = c - (x1^2 + x2^2)/2."""
    x1, y1, x2, y2 = u
    z = c - 0.5 * (x1 * x1 + x2 * x2)
    return np.array([y1, x1 * z, y2, x2 * z])


def reduced_invariant_field(u, c: float = 0.0) -> np.ndarray:
    """Leaf flow of I in the same chart (a rigid rotation of the pairs)."""
    x1, y1, x2, y2 = u
    return np.array([x2, y2, -x1, -y1])


def leaf_linearization(e, c: float) -> LeafLinearization:
    """Jacobians of the two reduced flows at the chart origin over (0,0,0,0,c)."""
    point = as_state(e)
    if np.any(point[:4] != 0) or point[4] != c:
        raise DomainError("leaf linearization is charted at (0,0,0,0,c) only")
    m_h = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [c, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, c, 0.0],
    ])
    m_i = np.array([
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ])
    return LeafLinearization(c=c, matrix_H=m_h, matrix_I=m_i)


@dataclass
class QuarticPoly:
    """Monic real quartic; coeffs are (c3, c2, c1, c0) of t^4+c3 t^3+..."""

    c3: float
    c2: float
    c1: float
    c0: float

    def as_array(self) -> np.ndarray:
        return np.array([1.0, self.c3, self.c2, self.c1, self.c0])


def char_poly_4x4(m) -> QuarticPoly:
    """Characteristic polynomial by the Faddeev-LeVerrier recursion."""
    m = np.asarray(m, dtype=float)
    eye = np.eye(4)
    coeffs = []
    mk = m.copy()
    for k in range(1, 5):
        ck = -np.trace(mk) / k
        coeffs.append(ck)
        if k < 4:
            mk = m @ (mk + ck * eye)
    return QuarticPoly(*coeffs)


def pencil_char_poly(c: float, alpha: float) -> QuarticPoly:
    """Characteristic polynomial of matrix_H + alpha * matrix_I.

    Computed from the matrices and cross-checked against the closed form
    t^4 + (2 alpha^2 - 2c) t^2 + (alpha^2 + c)^2.
    """
    lin = leaf_linearization([0, 0, 0, 0, c], c)
    poly = char_poly_4x4(lin.matrix_H + alpha * lin.matrix_I)
    expect = np.array([1.0, 0.0, 2 * alpha ** 2 - 2 * c, 0.0, (alpha ** 2 + c) ** 2])
    scale = 1.0 + np.abs(expect)
    if np.any(np.abs(poly.as_array() - expect) > 1e-12 * scale):
        raise RuntimeError(
            f"pencil polynomial disagrees with its closed form at c={c}, alpha={alpha}"
        )
    return poly


def _enforce_conjugate_pairs(roots):
    """Return the 4 roots with exactly conjugate non-real pairs."""
    roots = sorted(roots, key=lambda r: (r.real, r.imag))
    out = []
    used = [False] * len(roots)
    for i, r in enumerate(roots):
        if used[i]:
            continue
        used[i] = True
        if abs(r.imag) < 1e-300:
            out.append(complex(r.real, 0.0))
            continue
        # find nearest unused conjugate candidate
        best, best_d = None, None
        for j in range(i + 1, len(roots)):
            if used[j]:
                continue
            d = abs(roots[j] - r.conjugate())
            if best is None or d < best_d:
                best, best_d = j, d
        if best is None:
            out.append(r)
            continue
        used[best] = True
        s = roots[best]
        rep = complex(0.5 * (r.real + s.real), 0.5 * (abs(r.imag) + abs(s.imag)))
        out.extend([rep, rep.conjugate()])
    return out


def quartic_roots(q: QuarticPoly):
    """All four complex roots of a monic real quartic.

    Biquadratic quartics (no odd terms) go through the s = t^2 substitution;
    otherwise a companion-matrix eigensolve is used.  Non-real roots come in
    bit-exact conjugate pairs.
    """
    arr = q.as_array()
    if not np.isfinite(arr).all():
        raise DomainError("non-finite quartic coefficients")
    if q.c3 == 0.0 and q.c1 == 0.0:
        disc = complex(q.c2 * q.c2 - 4.0 * q.c0)
        sq = cmath.sqrt(disc)
        roots = []
        for s in ((-q.c2 + sq) / 2.0, (-q.c2 - sq) / 2.0):
            t = cmath.sqrt(s)
            roots.extend([t, -t])
    else:
        roots = [complex(r) for r in np.roots(arr)]
    return _enforce_conjugate_pairs(roots)


@dataclass
class ClassificationResult:
    kind: str
    alpha: float | None
    roots: list  # 4 complex numbers (empty for degenerate)
    A: float | None
    B: float | None
    discriminant: float | None
    stable: str


def _root_pattern(roots, kind_tol=1e-9):
    """Sort distinct eigenvalues into the four non-degenerate patterns."""
    imag_axis = [r for r in roots if abs(r.real) < kind_tol * (1 + abs(r))]
    real_axis = [r for r in roots if abs(r.imag) < kind_tol * (1 + abs(r))]
    if len(imag_axis) == 4:
        mags = sorted({abs(r.imag) for r in roots}, reverse=True)
        return CENTER_CENTER, mags[0], mags[1]
    if len(real_axis) == 4:
        mags = sorted({abs(r.real) for r in roots}, reverse=True)
        return SADDLE_SADDLE, mags[0], mags[1]
    if len(imag_axis) == 2 and len(real_axis) == 2:
        return CENTER_SADDLE, max(abs(r.real) for r in real_axis), \
            max(abs(r.imag) for r in imag_axis)
    return FOCUS_FOCUS, max(abs(r.real) for r in roots), max(abs(r.imag) for r in roots)


def _distinct(roots, tol=1e-9):
    m = max(abs(r) for r in roots)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) <= tol * (1.0 + m):
                return False
    return True


def cartan_classify(e, c: float, alpha_grid=ALPHA_GRID) -> ClassificationResult:
    """Classify the leaf equilibrium (0,0,0,0,c) into its Cartan type.

    Scans ALPHA_GRID for a pencil member with four distinct eigenvalues; the
    root pattern of the first hit names the type.  When no pencil member
    separates the eigenvalues (exactly the c = 0 leaf) the equilibrium is
    degenerate and the verdict is delegated to the algebraic certificate.
    """
    point = as_state(e)
    if np.any(point[:4] != 0):
        raise DomainError("cartan_classify handles the axis equilibria (K0) only")
    if point[4] != c:
        raise DomainError(f"point {point} is not on the leaf C={c}")

    for alpha in alpha_grid:
        poly = pencil_char_poly(c, alpha)
        roots = quartic_roots(poly)
        if not _distinct(roots):
            continue
        kind, a_val, b_val = _root_pattern(roots)
        disc = poly.c2 ** 2 - 4.0 * poly.c0  # of the quadratic in s = t^2
        stable = STABLE if kind == CENTER_CENTER else UNSTABLE
        return ClassificationResult(kind=kind, alpha=alpha, roots=roots,
                                    A=a_val, B=b_val, discriminant=disc,
                                    stable=stable)
    if c != 0.0:
        raise RuntimeError(f"no distinct pencil spectrum found for c={c}")
    return ClassificationResult(kind=DEGENERATE, alpha=None, roots=[],
                                A=None, B=None, discriminant=None,
                                stable=NOT_DETERMINED)


@dataclass
class OriginCertificate:
    unique_solution: bool
    worst_offender: np.ndarray | None
    max_norm_by_eps: dict


def origin_stability_certificate(box_half_width: float, grid_n: int,
                                 eps_values=(1e-2, 1e-4, 1e-6)) -> OriginCertificate:
    """Grid evidence that {H=0, I=0, C=0} pins down only the origin.

    Scans [-w, w]^5; for each eps the points with max(|H|,|I|,|C|) <= eps
    must have norm below 10*eps^(1/4), shrinking as eps does.  (Analytically
    H <= eps bounds y1, y2, z and the C equation then bounds x1, x2.)
    """
    if box_half_width <= 0:
        raise ValueError("box_half_width must be positive")
    if grid_n < 3:
        raise ValueError("grid_n must be at least 3")
    axis = np.linspace(-box_half_width, box_half_width, grid_n)
    x1, y1, x2, y2 = np.meshgrid(axis, axis, axis, axis, indexing="ij")
    eps_values = sorted(eps_values, reverse=True)
    max_norms = {eps: 0.0 for eps in eps_values}
    offenders = {eps: None for eps in eps_values}
    for z in axis:  # slice the 5th axis to bound memory
        h = 0.5 * (y1 ** 2 + y2 ** 2 + z ** 2)
        i_val = np.abs(x2 * y1 - x1 * y2)
        c_val = np.abs(0.5 * (x1 ** 2 + x2 ** 2) + z)
        level = np.maximum(np.maximum(h, i_val), c_val)
        norm2 = x1 ** 2 + y1 ** 2 + x2 ** 2 + y2 ** 2 + z ** 2
        for eps in eps_values:
            mask = level <= eps
            if not mask.any():
                continue
            idx = np.unravel_index(np.argmax(np.where(mask, norm2, -1.0)), mask.shape)
            norm = float(np.sqrt(norm2[idx]))
            if norm > max_norms[eps]:
                max_norms[eps] = norm
                offenders[eps] = np.array([x1[idx], y1[idx], x2[idx], y2[idx], z])
    norms = [max_norms[eps] for eps in eps_values]
    monotone = all(a >= b for a, b in zip(norms, norms[1:]))
    bounded = all(max_norms[eps] < 10.0 * eps ** 0.25 for eps in eps_values)
    ok = monotone and bounded
    worst = None if ok else offenders[eps_values[-1]]
    return OriginCertificate(unique_solution=ok, worst_offender=worst,
                             max_norm_by_eps={float(k): max_norms[k] for k in eps_values})
