"""Constructors, classifiers, and searches for the surface families.

Everything seeded is deterministic: a (seed, substream) pair fully fixes the
sample stream, and searches over substreams merge in (substream, index)
order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .gf import FiniteField, RelativeBasis, get_embedding, make_field
from . import gflinalg
from .bounds import (
    CUBIC_CLASSES,
    CubicClass,
    delpezzo6_Nr,
    predicted_Nr,
    sectional_genus_hypersurface,
)
from .poly import HomogPoly, monomials
from .projective import (
    BudgetExceeded,
    Surface,
    _generators_over,
    enumerate_points,
    iter_zero_point_batches,
    lines_on_surface,
    normalize_rows,
)


class DegenerateInput(ValueError):
    """A family constructor was fed data outside its generic locus."""


# -- fixed fixtures ------------------------------------------------------------------


def shioda_surface(m: int, fld: FiniteField) -> Surface:
    """The degree-m hypersurface w^m + x y^(m-1) + y z^(m-1) + z x^(m-1) in P^3."""
    if m < 4:
        raise ValueError("family defined for degree m >= 4")
    gen = HomogPoly.from_int_terms(
        fld, 4, m,
        {
            (0, 0, 0, m): 1,
            (1, m - 1, 0, 0): 1,
            (0, 1, m - 1, 0): 1,
            (m - 1, 0, 1, 0): 1,
        },
    )
    return Surface(
        fld, 3, [gen], degree=m,
        sectional_genus=sectional_genus_hypersurface(m),
        family="shioda", label=f"shioda-m{m}-q{fld.q}",
    )


_VL_F1 = {
    (3, 0, 0, 0): 1, (2, 1, 0, 0): -1, (2, 0, 1, 0): -1, (2, 0, 0, 1): 1,
    (1, 2, 0, 0): -1, (1, 1, 1, 0): -1, (1, 1, 0, 1): 2, (1, 0, 2, 0): 1,
    (1, 0, 1, 1): 2, (0, 3, 0, 0): 1, (0, 2, 1, 0): 1, (0, 2, 0, 1): -1,
    (0, 1, 2, 0): 1, (0, 1, 1, 1): 1, (0, 1, 0, 2): -1, (0, 0, 2, 1): 1,
    (0, 0, 1, 2): 1, (0, 0, 0, 3): 2,
}
_VL_F2 = {(1, 2, 0, 0): 1, (1, 1, 1, 0): 1, (1, 0, 2, 0): -1, (0, 1, 2, 0): -1, (0, 0, 3, 0): 1}
_VL_G1 = {(0, 0, 2, 0): 1, (1, 1, 0, 0): 1, (0, 1, 1, 0): 1}
_VL_G2 = {(0, 0, 2, 0): 1, (1, 1, 0, 0): 1}


def van_luijk_surface(h: HomogPoly | dict, fld: FiniteField) -> Surface:
    """Reduction of the quartic family w*f1 + 2z*f2 - 3*g1*g2 + 6h.

    h is a homogeneous quartic (HomogPoly over fld, or integer term dict).
    The small-prime coefficients degenerate in characteristics 2 and 3.
    """
    if fld.p in (2, 3):
        raise ValueError("family degenerates in characteristic 2 and 3")
    if isinstance(h, dict):
        h = HomogPoly.from_int_terms(fld, 4, 4, h)
    if h.field is not fld or h.nvars != 4 or (not h.is_zero() and h.degree != 4):
        raise ValueError("h must be a quartic in 4 variables over the same field")
    f1 = HomogPoly.from_int_terms(fld, 4, 3, _VL_F1)
    f2 = HomogPoly.from_int_terms(fld, 4, 3, _VL_F2)
    g1 = HomogPoly.from_int_terms(fld, 4, 2, _VL_G1)
    g2 = HomogPoly.from_int_terms(fld, 4, 2, _VL_G2)
    w = HomogPoly.variable(fld, 4, 3)
    z = HomogPoly.variable(fld, 4, 2)
    two_z = z.scale(2 % fld.p)
    quartic = (w * f1) + (two_z * f2) + (g1 * g2).scale(fld.neg(3 % fld.p))
    if not h.is_zero():
        quartic = quartic + h.scale(6 % fld.p)
    if quartic.is_zero():
        raise DegenerateInput("the chosen h cancels the family form")
    return Surface(
        fld, 3, [quartic], degree=4, sectional_genus=3,
        family="van-luijk", label=f"van-luijk-q{fld.q}",
    )


def del_pezzo4_fixture(fld: FiniteField | None = None) -> Surface:
    """The fixed pair of quadrics in P^4 (coordinates v, x, y, z, w)."""
    fld = fld or make_field(7)
    q1 = HomogPoly.from_int_terms(
        fld, 5, 2,
        {
            (0, 2, 0, 0, 0): 2, (1, 0, 1, 0, 0): -2, (0, 1, 1, 0, 0): -2,
            (0, 0, 2, 0, 0): -2, (1, 0, 0, 1, 0): 3, (0, 1, 0, 1, 0): -1,
            (0, 0, 1, 1, 0): -2, (0, 0, 0, 2, 0): -2, (0, 1, 0, 0, 1): -2,
            (0, 0, 1, 0, 1): 2, (0, 0, 0, 1, 1): 2, (0, 0, 0, 0, 2): 3,
        },
    )
    q2 = HomogPoly.from_int_terms(
        fld, 5, 2,
        {
            (2, 0, 0, 0, 0): -1, (1, 1, 0, 0, 0): 2, (0, 2, 0, 0, 0): -1,
            (1, 0, 1, 0, 0): -1, (0, 1, 1, 0, 0): -1, (1, 0, 0, 1, 0): -1,
            (0, 0, 1, 1, 0): 2, (0, 0, 0, 2, 0): 2, (1, 0, 0, 0, 1): -3,
            (0, 1, 0, 0, 1): -2, (0, 0, 1, 0, 1): 2, (0, 0, 0, 1, 1): -2,
            (0, 0, 0, 0, 2): -2,
        },
    )
    return Surface(
        fld, 4, [q1, q2], degree=4, sectional_genus=1,
        family="del-pezzo-4", label=f"del-pezzo-4-q{fld.q}",
    )


# -- cubic classification --------------------------------------------------------------


@dataclass
class ClassificationResult:
    matched: str  # "C10".."C14" | "not-rho-one-consistent" | "unknown"
    observed: dict[int, int]
    predicted: dict[str, dict[int, int]]
    line_count: int
    checked_depth: int
    note: str = ""

    def to_json(self):
        return {
            "matched": self.matched,
            "observed_Nr": {str(r): v for r, v in self.observed.items()},
            "line_count": self.line_count,
            "checked_depth": self.checked_depth,
            "note": self.note,
        }


NOT_RHO_ONE = "not-rho-one-consistent"


def classify_cubic(surface: Surface, max_depth: int = 3, *, max_enum: int = 500_000_000) -> ClassificationResult:
    """Match a smooth cubic against the rank-one zeta classes by point counts.

    A rational line, or a point count no class predicts, rules every class
    out.  Counting starts at r=1 and abandons candidates as soon as they
    disagree, so rejected surfaces stay cheap.
    """
    if surface.ambient != 3 or surface.degree != 3:
        raise ValueError("classification applies to cubic surfaces in P^3")
    q = surface.fld.q
    lines = lines_on_surface(surface)
    observed: dict[int, int] = {}
    predicted = {tag: {} for tag in CUBIC_CLASSES}
    note = ""
    candidates = list(CUBIC_CLASSES)
    depth = 0
    for r in range(1, max_depth + 1):
        if not candidates:
            break
        try:
            observed[r] = surface.count_points(r, max_enum=max_enum)
        except BudgetExceeded:
            note = f"extension counting stopped at r={r - 1} (budget)"
            break
        depth = r
        for tag in list(candidates):
            predicted[tag][r] = predicted_Nr(tag, q, r)
            if predicted[tag][r] != observed[r]:
                candidates.remove(tag)
    if len(lines) or not candidates:
        matched = NOT_RHO_ONE
    elif len(candidates) == 1:
        matched = candidates[0]
    else:
        matched = "unknown"
    return ClassificationResult(matched, observed, predicted, len(lines), depth, note)


# -- Cayley-Salmon sampler ----------------------------------------------------------------


@dataclass
class C12Sample:
    surface: Surface
    classification: ClassificationResult
    smooth: bool
    smooth_label: str


def _proportional_to_subfield_form(coeffs: np.ndarray, fld_ext: FiniteField, emb) -> bool:
    vec = normalize_rows(fld_ext, np.asarray(coeffs, dtype=np.int64)[None, :])[0]
    return all(emb.contains(int(c)) for c in vec)


def cayley_salmon_c12(
    fld: FiniteField,
    l_coeffs,
    m_coeffs,
    *,
    classify_depth: int = 3,
    screen_depth: int = 3,
) -> C12Sample:
    """Cubic surface from the triple-conjugate-plane normal form.

    l_coeffs: three GF(q^3) encodings (the x, y, z coefficients of L);
    m_coeffs: four GF(q^2) encodings (the x, y, z, w coefficients of M).
    The two sides expand over GF(q^6); the difference has Frobenius-fixed
    coefficients by construction and is descended to GF(q), asserted.
    """
    n0 = fld.n
    f3 = make_field(fld.p, 3 * n0)
    f2 = make_field(fld.p, 2 * n0)
    f6 = make_field(fld.p, 6 * n0)
    e_q_q3 = get_embedding(fld, f3)
    e_q_q2 = get_embedding(fld, f2)
    e3 = get_embedding(f3, f6)
    e2 = get_embedding(f2, f6)
    e_base = get_embedding(fld, f6)

    l_coeffs = np.asarray(l_coeffs, dtype=np.int64)
    m_coeffs = np.asarray(m_coeffs, dtype=np.int64)
    if l_coeffs.shape != (3,) or m_coeffs.shape != (4,):
        raise ValueError("L takes 3 coefficients (x,y,z); M takes 4 (x,y,z,w)")
    if not l_coeffs.any() or not m_coeffs.any():
        raise DegenerateInput("zero linear form")
    if _proportional_to_subfield_form(l_coeffs, f3, e_q_q3):
        raise DegenerateInput("L is proportional to a GF(q) form")
    if _proportional_to_subfield_form(m_coeffs, f2, e_q_q2):
        raise DegenerateInput("M is proportional to a GF(q) form")

    l6 = HomogPoly.linear(f6, [e3.embed(int(c)) for c in l_coeffs]).pad_vars(4)
    m6 = HomogPoly.linear(f6, [e2.embed(int(c)) for c in m_coeffs])
    w6 = HomogPoly.variable(f6, 4, 3)
    lhs = l6 * l6.frobenius_coeffs(n0) * l6.frobenius_coeffs(2 * n0)
    rhs = w6 * m6 * m6.frobenius_coeffs(n0)
    cubic6 = lhs - rhs
    if cubic6.is_zero():
        raise DegenerateInput("the two sides coincide; no cubic surface")
    cubic = cubic6.descend_coeffs(e_base)  # NotInSubfield here would be a bug
    surface = Surface(
        fld, 3, [cubic], degree=3, sectional_genus=1,
        family="cayley-salmon-c12", label=f"c12-q{fld.q}",
    )
    classification, label = _screen_and_classify(surface, classify_depth, screen_depth)
    return C12Sample(surface, classification, True, label)


def _cubic_level_scan(surface: Surface, r: int, check_singular: bool) -> tuple[int, bool]:
    """(N_r, any singular point) in a single enumeration of P^3 over F_{q^r}."""
    fld0 = surface.fld
    ext = None if r == 1 else make_field(fld0.p, fld0.n * r)
    gens, fld = _generators_over(surface.generators, ext)
    jac = [gens[0].partial_derivative(i) for i in range(4)] if check_singular else []
    count = 0
    singular = False
    for _, coords in iter_zero_point_batches(fld, gens, 3):
        count += len(coords)
        if check_singular and not singular and len(coords):
            jv = np.stack([d.eval_points(coords) for d in jac])
            singular = bool((jv == 0).all(axis=0).any())
    return count, singular


def _screen_and_classify(
    surface: Surface,
    classify_depth: int,
    screen_depth: int,
    *,
    stop_when_unmatched: bool = False,
) -> tuple[ClassificationResult, str]:
    """Fused smoothness screen and zeta classification, one scan per level.

    Raises DegenerateInput at the first singular level.  stop_when_unmatched
    abandons deeper (expensive) levels once no class fits the observed
    counts, leaving the screen partial for surfaces that will be discarded
    anyway.
    """
    q = surface.fld.q
    lines = lines_on_surface(surface)
    observed: dict[int, int] = {}
    predicted = {tag: {} for tag in CUBIC_CLASSES}
    candidates = [] if len(lines) else list(CUBIC_CLASSES)
    depth = 0
    screened = 0
    for r in range(1, max(classify_depth, screen_depth) + 1):
        if stop_when_unmatched and not candidates:
            break
        want_screen = r <= screen_depth
        want_count = r <= classify_depth
        if not (want_screen or (want_count and candidates)):
            break
        n_r, singular = _cubic_level_scan(surface, r, want_screen)
        if singular:
            raise DegenerateInput(f"singular at extension degree {r}")
        if want_screen:
            screened = r
        if want_count:
            observed[r] = n_r
            depth = r
            for tag in list(candidates):
                predicted[tag][r] = predicted_Nr(tag, q, r)
                if predicted[tag][r] != n_r:
                    candidates.remove(tag)
    if len(lines) or not candidates:
        matched = NOT_RHO_ONE
    elif len(candidates) == 1 and depth >= 1:
        matched = candidates[0]
    else:
        matched = "unknown"
    result = ClassificationResult(matched, observed, predicted, len(lines), depth)
    return result, f"heuristically smooth (R={screened})"


def _draw_c12(fld: FiniteField, rng: random.Random, classify_depth: int, screen_depth: int) -> C12Sample | None:
    """One draw, filtered: only Cayley-Salmon forms whose class confirms C12
    survive (the family also contains other classes and degenerate members)."""
    f3 = make_field(fld.p, 3 * fld.n)
    f2 = make_field(fld.p, 2 * fld.n)
    l_coeffs = [rng.randrange(f3.q) for _ in range(3)]
    m_coeffs = [rng.randrange(f2.q) for _ in range(4)]
    try:
        quick = cayley_salmon_c12(fld, l_coeffs, m_coeffs, classify_depth=1, screen_depth=1)
    except DegenerateInput:
        return None
    if quick.classification.matched != "C12":
        return None
    if classify_depth <= 1 and screen_depth <= 1:
        return quick
    try:
        full = cayley_salmon_c12(
            fld, l_coeffs, m_coeffs,
            classify_depth=classify_depth, screen_depth=screen_depth,
        )
    except DegenerateInput:
        return None
    return full if full.classification.matched == "C12" else None


def sample_cayley_salmon(
    fld: FiniteField,
    seed: int,
    *,
    max_draws: int = 500,
    classify_depth: int = 3,
    screen_depth: int = 3,
) -> C12Sample:
    """First confirmed-C12 Cayley-Salmon sample along a fixed seed schedule."""
    rng = random.Random(seed * 1_000_003)
    for _ in range(max_draws):
        sample = _draw_c12(fld, rng, classify_depth, screen_depth)
        if sample is not None:
            return sample
    raise RuntimeError(f"no confirmed C12 sample in {max_draws} draws (seed={seed})")


# -- random cubic search ---------------------------------------------------------------------


@dataclass
class SearchHit:
    surface: Surface
    classification: ClassificationResult
    smooth_label: str
    seed: int
    substream: int
    index: int


def random_cubic_search(
    fld: FiniteField,
    target: str | CubicClass | None,
    seed: int,
    budget: int,
    *,
    substream: int = 0,
    classify_depth: int = 3,
    screen_depth: int = 3,
) -> list[SearchHit]:
    """Seeded stream of cubic surfaces filtered by screen and classifier.

    budget counts samples drawn.  target=C12 samples the Cayley-Salmon form;
    other targets (or None for "any class") draw uniform cubic coefficient
    vectors.  An exhausted budget with no hits is an empty list, not an error.
    """
    tag = target.tag if isinstance(target, CubicClass) else target
    if tag is not None and tag not in CUBIC_CLASSES:
        raise ValueError(f"unknown cubic class {tag!r}")
    rng = random.Random(seed * 1_000_003 + substream)
    basis = monomials(4, 3)
    hits: list[SearchHit] = []
    for index in range(budget):
        if tag == "C12":
            sample = _draw_c12(fld, rng, classify_depth, screen_depth)
            if sample is not None:
                hits.append(SearchHit(sample.surface, sample.classification,
                                      sample.smooth_label, seed, substream, index))
            continue
        coeffs = [rng.randrange(fld.q) for _ in range(len(basis))]
        if not any(coeffs):
            continue
        cubic = HomogPoly(fld, 4, 3, dict(zip(basis, coeffs)))
        surface = Surface(fld, 3, [cubic], degree=3, sectional_genus=1,
                          family="random-cubic", label=f"cubic-q{fld.q}-s{seed}.{substream}.{index}")
        try:
            classification, label = _screen_and_classify(
                surface, classify_depth, screen_depth, stop_when_unmatched=True
            )
        except DegenerateInput:
            continue
        if classification.matched in CUBIC_CLASSES and (tag is None or classification.matched == tag):
            hits.append(SearchHit(surface, classification, label, seed, substream, index))
    return hits


# -- degree-6 Del Pezzo from a Frobenius orbit ------------------------------------------------


@dataclass
class FrobeniusOrbit:
    base: FiniteField
    ext: FiniteField  # GF(q^3), absolute
    point: tuple[int, ...]  # normalized representative over ext
    conjugates: np.ndarray  # (3, 3) rows: P, F(P), F^2(P), normalized
    collinear: bool

    def __post_init__(self):
        rows = [tuple(int(v) for v in row) for row in self.conjugates]
        if len(set(rows)) != 3:
            raise DegenerateInput("orbit does not have three distinct points")


def frobenius_orbit(fld: FiniteField, seed: int | None = None, point=None) -> FrobeniusOrbit:
    """Size-3 orbit {P, F(P), F^2(P)} of a plane point over GF(q^3).

    Sampling (seed given) redraws until the orbit is proper and non-collinear;
    an explicit rational point is an error, and an explicit collinear orbit is
    returned with its flag set.
    """
    ext = make_field(fld.p, 3 * fld.n)
    if (seed is None) == (point is None):
        raise ValueError("provide exactly one of seed or point")
    rng = random.Random(seed * 1_000_003) if seed is not None else None
    while True:
        if point is not None:
            coords = np.asarray(list(point), dtype=np.int64)
            if coords.shape != (3,) or not coords.any():
                raise ValueError("point must be a nonzero coordinate triple over GF(q^3)")
        else:
            coords = np.array([rng.randrange(ext.q) for _ in range(3)], dtype=np.int64)
            if not coords.any():
                continue
        p0 = normalize_rows(ext, coords[None, :])[0]
        p1 = normalize_rows(ext, ext.frobenius(p0, fld.n)[None, :])[0]
        p2 = normalize_rows(ext, ext.frobenius(p1, fld.n)[None, :])[0]
        if np.array_equal(p0, p1):
            if point is not None:
                raise DegenerateInput("point is rational over GF(q); orbit has size 1")
            continue
        tri = np.stack([p0, p1, p2])
        det = _det3(ext, tri)
        if det == 0 and point is None:
            continue
        return FrobeniusOrbit(fld, ext, tuple(int(v) for v in p0), tri, collinear=(det == 0))


def _det3(fld: FiniteField, m: np.ndarray) -> int:
    def mul3(a, b, c):
        return fld.mul(int(a), fld.mul(int(b), int(c)))

    pos = fld.add(fld.add(mul3(m[0, 0], m[1, 1], m[2, 2]), mul3(m[0, 1], m[1, 2], m[2, 0])),
                  mul3(m[0, 2], m[1, 0], m[2, 1]))
    neg = fld.add(fld.add(mul3(m[0, 2], m[1, 1], m[2, 0]), mul3(m[0, 0], m[1, 2], m[2, 1])),
                  mul3(m[0, 1], m[1, 0], m[2, 2]))
    return fld.sub(pos, neg)


def _orbit_condition_matrix(orbit: FrobeniusOrbit, degree: int) -> np.ndarray:
    """GF(q)-linear conditions on degree-d plane forms vanishing on the orbit.

    Each orbit point contributes the three GF(q)-coordinates of the GF(q^3)
    evaluation; the conjugate points' conditions are GF(q)-dependent on the
    first point's, so the matrix rank is 3 for a proper orbit.
    """
    fld, ext = orbit.base, orbit.ext
    rb = RelativeBasis(get_embedding(fld, ext))
    basis = monomials(3, degree)
    rows = []
    for pt in orbit.conjugates:
        vals = np.array(
            [HomogPoly(ext, 3, degree, {mono: 1}).eval_at(tuple(pt)) for mono in basis],
            dtype=np.int64,
        )
        rows.append(rb.to_coords(vals).T)  # (3, #basis)
    return np.concatenate(rows, axis=0)


@dataclass
class DelPezzo6Parametrization:
    """Plane model of the degree-6 Del Pezzo: the 7 cubics through the orbit."""

    orbit: FrobeniusOrbit
    cubics: list[HomogPoly]

    def column_data(self):
        fld = self.orbit.base
        pts = enumerate_points(fld, 2)
        image = np.stack([c.eval_points(pts) for c in self.cubics], axis=1)
        if not (image != 0).any(axis=1).all():
            raise AssertionError("parametrization vanishes at a rational point")
        return pts, image

    def image_points(self) -> np.ndarray:
        fld = self.orbit.base
        _, image = self.column_data()
        rows = normalize_rows(fld, image)
        order = np.lexsort(tuple(rows[:, c] for c in range(rows.shape[1] - 1, -1, -1)))
        rows = rows[order]
        if len(np.unique(rows, axis=0)) != len(rows):
            raise AssertionError("parametrization image has collisions")
        return rows

    def count_points(self, r: int) -> int:
        return delpezzo6_Nr(self.orbit.base.q, r)


def del_pezzo6(orbit: FrobeniusOrbit) -> Surface:
    """Blow up the plane along the orbit and embed by cubics through it.

    The GF(q)-space of such cubics must be 7-dimensional; its basis is the
    parametrization, and degree-s codes evaluate degree-s monomials in these
    7 forms over P^2(F_q).
    """
    if orbit.collinear:
        raise DegenerateInput("orbit is collinear; the linear system is not very ample")
    fld = orbit.base
    cond = _orbit_condition_matrix(orbit, 3)
    kernel = gflinalg.kernel_basis(fld, cond)
    if len(kernel) != 7:
        raise DegenerateInput(f"cubic system has dimension {len(kernel)}, expected 7")
    basis = monomials(3, 3)
    cubics = [HomogPoly.from_coeff_vector(fld, 3, 3, basis, row) for row in kernel]
    param = DelPezzo6Parametrization(orbit, cubics)
    return Surface(
        fld, 6, [], degree=6, sectional_genus=1,
        family="del-pezzo-6", parametrization=param,
        label=f"del-pezzo-6-q{fld.q}",
    )


def dp6_quadric_ideal(surface: Surface) -> list[HomogPoly]:
    """The 9 independent quadrics in the ambient P^6 vanishing on the image.

    Computed as the kernel of (quadric monomials in the 7 cubics) -> sextics.
    """
    param = surface.parametrization
    if not isinstance(param, DelPezzo6Parametrization):
        raise ValueError("expects a del-pezzo-6 surface")
    fld = surface.fld
    sext_basis = monomials(3, 6)
    quad_basis = monomials(7, 2)
    rows = []
    for mono in quad_basis:
        prod = HomogPoly(fld, 3, 0, {(0, 0, 0): 1})
        for i, e in enumerate(mono):
            for _ in range(e):
                prod = prod * param.cubics[i]
        rows.append(prod.coeff_vector(sext_basis))
    kernel = gflinalg.kernel_basis(fld, np.stack(rows).T)
    quadrics = [HomogPoly.from_coeff_vector(fld, 7, 2, quad_basis, row) for row in kernel]
    if len(quadrics) != 9:
        raise AssertionError(f"image ideal has {len(quadrics)} quadrics, expected 9")
    return quadrics


@dataclass
class GeometricWitness:
    codeword: np.ndarray
    sextic: HomogPoly
    zero_count: int
    conics: tuple[HomogPoly, HomogPoly]
    lines: tuple[HomogPoly, HomogPoly]


def geometric_witness_dp6(surface: Surface, s: int = 2) -> GeometricWitness:
    """A minimum-weight witness for the s=2 code from two conic-line pairs.

    Searches conics through the orbit and rational lines for two pairs whose
    unions have 2q+2 points each and whose full union has 4q+2; the resulting
    sextic lies in the degree-2 span of the parametrization and its codeword
    has weight q^2 - 3q - 1.
    """
    if s != 2:
        raise ValueError("the geometric witness construction is for s=2")
    param = surface.parametrization
    if not isinstance(param, DelPezzo6Parametrization):
        raise ValueError("expects a del-pezzo-6 surface")
    fld = surface.fld
    q = fld.q
    if q <= 5:
        raise ValueError("construction needs q > 5")
    pts = enumerate_points(fld, 2)
    n = len(pts)
    conic_cond = _orbit_condition_matrix(param.orbit, 2)
    conic_kernel = gflinalg.kernel_basis(fld, conic_cond)
    if len(conic_kernel) != 3:
        raise DegenerateInput(f"conic system has dimension {len(conic_kernel)}, expected 3")
    conic_basis = monomials(3, 2)
    kernel_vals = np.stack([
        HomogPoly.from_coeff_vector(fld, 3, 2, conic_basis, row).eval_points(pts)
        for row in conic_kernel
    ])
    combos = enumerate_points(fld, 2)  # 57 projective combinations of 3 basis conics
    conic_vals = gflinalg.matmul(fld, combos, kernel_vals)
    line_vals = gflinalg.matmul(fld, combos, pts.T)  # same 57 duals as lines
    conic_masks = conic_vals == 0
    line_masks = line_vals == 0
    union = (conic_masks[:, None, :] | line_masks[None, :, :]).sum(axis=2)
    good = np.argwhere(union == 2 * q + 2)
    for a in range(len(good)):
        ci, li = good[a]
        mask_a = conic_masks[ci] | line_masks[li]
        for b in range(a + 1, len(good)):
            cj, lj = good[b]
            if ci == cj or li == lj:
                continue
            total = int((mask_a | conic_masks[cj] | line_masks[lj]).sum())
            if total != 4 * q + 2:
                continue
            conic_a = HomogPoly.from_coeff_vector(
                fld, 3, 2, conic_basis, gflinalg.vecmat(fld, combos[ci], conic_kernel))
            conic_b = HomogPoly.from_coeff_vector(
                fld, 3, 2, conic_basis, gflinalg.vecmat(fld, combos[cj], conic_kernel))
            line_a = HomogPoly.linear(fld, combos[li])
            line_b = HomogPoly.linear(fld, combos[lj])
            sextic = conic_a * line_a * conic_b * line_b
            _assert_in_degree2_span(fld, param, sextic)
            _, image = param.column_data()
            nzmask = image != 0
            last = image.shape[1] - 1 - np.argmax(nzmask[:, ::-1], axis=1)
            mu = fld.inv(image[np.arange(n), last])
            codeword = fld.mul(sextic.eval_points(pts), fld.pow(mu, 2))
            zeros = int((codeword == 0).sum())
            if zeros != 4 * q + 2:
                raise AssertionError(f"witness has {zeros} zeros, expected {4 * q + 2}")
            return GeometricWitness(codeword, sextic, zeros,
                                    (conic_a, conic_b), (line_a, line_b))
    raise RuntimeError(
        "no conic-line witness found; for q > 5 this contradicts the construction"
    )


def _assert_in_degree2_span(fld: FiniteField, param: DelPezzo6Parametrization, sextic: HomogPoly):
    sext_basis = monomials(3, 6)
    rows = []
    for mono in monomials(7, 2):
        prod = HomogPoly(fld, 3, 0, {(0, 0, 0): 1})
        for i, e in enumerate(mono):
            for _ in range(e):
                prod = prod * param.cubics[i]
        rows.append(prod.coeff_vector(sext_basis))
    rmat, pivots = gflinalg.rref(fld, np.stack(rows))
    rmat = rmat[: len(pivots)]
    if not gflinalg.in_rowspace(fld, rmat, pivots, sextic.coeff_vector(sext_basis)):
        raise AssertionError("witness sextic is outside the degree-2 span")
