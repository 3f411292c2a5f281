"""Projective points, surfaces, and the geometric searches built on them.

Point normalization follows one convention everywhere: the rightmost nonzero
coordinate of a representative is scaled to 1.  Point lists are ordered
lexicographically on the normalized coordinate vector (encodings compared as
integers), which fixes generator-matrix column order globally.

All enumerations are deterministic; chunked scans merge in index order, so
results do not depend on how work is partitioned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FiniteField, get_embedding, make_field
from . import gflinalg
from .poly import HomogPoly, dehomogenize, eval_affine_grid_chunks, monomials

DEFAULT_POINT_BUDGET = 20_000_000


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured work budget."""


def projective_space_size(q: int, r: int) -> int:
    return (q ** (r + 1) - 1) // (q - 1)


def normalize_rows(fld: FiniteField, rows: np.ndarray) -> np.ndarray:
    """Scale each row so its rightmost nonzero entry is 1."""
    rows = np.asarray(rows, dtype=np.int64)
    nz = rows != 0
    if not np.all(nz.any(axis=1)):
        raise ValueError("cannot normalize a zero vector")
    last = rows.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)
    scale = fld.inv(rows[np.arange(len(rows)), last])
    return fld.mul(rows, scale[:, None])


def normalize_point(fld: FiniteField, coords) -> tuple[int, ...]:
    vec = np.asarray(list(coords), dtype=np.int64)[None, :]
    return tuple(int(v) for v in normalize_rows(fld, vec)[0])


@dataclass(frozen=True)
class ProjPoint:
    """A normalized point of P^r over a field."""

    fld: FiniteField
    coords: tuple[int, ...]

    @classmethod
    def from_raw(cls, fld: FiniteField, coords) -> "ProjPoint":
        return cls(fld, normalize_point(fld, coords))

    def __post_init__(self):
        nz = [c for c in self.coords if c]
        if not nz:
            raise ValueError("projective point cannot be the zero vector")
        last = max(i for i, c in enumerate(self.coords) if c)
        if self.coords[last] != 1:
            raise ValueError(f"point {self.coords} is not normalized")


def enumerate_points(fld: FiniteField, r: int, max_points: int = DEFAULT_POINT_BUDGET) -> np.ndarray:
    """All points of P^r(F_q) as an (N, r+1) array in canonical order."""
    q = fld.q
    total = projective_space_size(q, r)
    if total > max_points:
        raise BudgetExceeded(f"P^{r}(F_{q}) has {total} points, budget is {max_points}")
    charts = []
    for ell in range(r + 1):
        block = np.zeros((q**ell, r + 1), dtype=np.int64)
        idx = np.arange(q**ell, dtype=np.int64)
        for i in range(ell):
            block[:, i] = idx % q
            idx //= q
        block[:, ell] = 1
        charts.append(block)
    pts = np.concatenate(charts, axis=0)
    order = np.lexsort(tuple(pts[:, c] for c in range(r, -1, -1)))
    return pts[order]


def _generators_over(gens: list[HomogPoly], ext: FiniteField | None):
    if ext is None or ext is gens[0].field:
        return gens, gens[0].field
    emb = get_embedding(gens[0].field, ext)
    return [g.embed_coeffs(emb) for g in gens], ext


def rational_points(
    gens: list[HomogPoly],
    extension_field: FiniteField | None = None,
    *,
    max_points: int = DEFAULT_POINT_BUDGET,
) -> np.ndarray:
    """All common projective zeros of the generators, in canonical order."""
    if not gens:
        raise ValueError("need at least one generator (use enumerate_points for P^r)")
    gens, fld = _generators_over(gens, extension_field)
    r = gens[0].nvars - 1
    pts = enumerate_points(fld, r, max_points=max_points)
    mask = np.ones(len(pts), dtype=bool)
    for g in gens:
        mask &= g.eval_points(pts) == 0
    return pts[mask]


def count_rational_points(
    gens: list[HomogPoly],
    extension_field: FiniteField | None = None,
    *,
    max_enum: int = 500_000_000,
) -> int:
    """Streaming count of projective zeros; never materializes the point set.

    Works chart by chart with dense-grid Horner evaluation, so it stays fast
    for point counts over extension fields.
    """
    if not gens:
        raise ValueError("need at least one generator")
    gens, fld = _generators_over(gens, extension_field)
    r = gens[0].nvars - 1
    total_pts = projective_space_size(fld.q, r)
    if total_pts > max_enum:
        raise BudgetExceeded(f"{total_pts} points exceeds budget {max_enum}")
    count = 0
    for chart in range(r + 1):
        if chart == 0:
            point = tuple(1 if i == 0 else 0 for i in range(r + 1))
            if all(g.eval_at(point) == 0 for g in gens):
                count += 1
            continue
        tensors = [dehomogenize(g, chart) for g in gens]
        for _, vals in eval_affine_grid_chunks(fld, tensors):
            mask = vals[0] == 0
            for v in vals[1:]:
                mask &= v == 0
            count += int(mask.sum())
    return count


def iter_zero_point_batches(fld: FiniteField, gens: list[HomogPoly], r: int):
    """Yield (chart, coordinate-array) batches of the generators' common
    projective zeros; coordinates arrive normalized (x_chart = 1, later
    coordinates 0)."""
    for chart in range(r + 1):
        if chart == 0:
            point = np.zeros((1, r + 1), dtype=np.int64)
            point[0, 0] = 1
            if all(g.eval_at(tuple(point[0])) == 0 for g in gens):
                yield chart, point
            continue
        tensors = [dehomogenize(g, chart) for g in gens]
        q = fld.q
        for x0, vals in eval_affine_grid_chunks(fld, tensors):
            mask = vals[0] == 0
            for v in vals[1:]:
                mask &= v == 0
            if not mask.any():
                continue
            flat = np.nonzero(mask.reshape(len(x0), -1))
            coords = np.zeros((len(flat[0]), r + 1), dtype=np.int64)
            coords[:, 0] = x0[flat[0]]
            # grid axes are (x0, x1, ..., x_{chart-1}) with the last one fastest
            rem = flat[1]
            for var in range(chart - 1, 0, -1):
                coords[:, var] = rem % q
                rem //= q
            coords[:, chart] = 1
            yield chart, coords


@dataclass
class Surface:
    """An embedded projective surface (or, degenerately, any closed subscheme
    cut out by the given generators)."""

    fld: FiniteField
    ambient: int
    generators: list[HomogPoly]
    degree: int | None = None
    sectional_genus: int | None = None
    family: str = "custom"
    parametrization: object = None
    label: str = ""

    def __post_init__(self):
        for g in self.generators:
            if g.field is not self.fld:
                raise ValueError("generator field does not match surface field")
            if g.nvars != self.ambient + 1:
                raise ValueError("generator variable count does not match ambient")
        if self.degree is not None and len(self.generators) == 1:
            if self.generators[0].degree != self.degree:
                raise ValueError("hypersurface degree does not match its generator")

    def is_hypersurface(self) -> bool:
        return len(self.generators) == 1

    def points(self, extension_field: FiniteField | None = None) -> np.ndarray:
        if self.parametrization is not None and hasattr(self.parametrization, "image_points"):
            if extension_field is not None:
                raise ValueError("parametrized surfaces only enumerate base-field points")
            return self.parametrization.image_points()
        if not self.generators:
            return enumerate_points(extension_field or self.fld, self.ambient)
        return rational_points(self.generators, extension_field)

    def count_points(self, r: int = 1, *, max_enum: int = 500_000_000) -> int:
        """|X(F_{q^r})|; parametrized families may override with a closed form."""
        if self.parametrization is not None:
            n = self.parametrization.count_points(r)
            if n is not None:
                return n
        if not self.generators:
            return projective_space_size(self.fld.q**r, self.ambient)
        ext = None if r == 1 else make_field(self.fld.p, self.fld.n * r)
        return count_rational_points(self.generators, ext, max_enum=max_enum)


@dataclass
class SectionScan:
    """Distribution of |(X ∩ H)(F_q)| over all F_q-rational hyperplanes H."""

    histogram: dict[int, int]
    max_count: int
    witnesses: np.ndarray  # hyperplane coefficient rows achieving the max
    total_hyperplanes: int


def section_scan(surface: Surface, *, max_witnesses: int = 16) -> SectionScan:
    """Count X-points on every hyperplane (any ambient dimension)."""
    fld = surface.fld
    r = surface.ambient
    pts = surface.points()
    hyps = enumerate_points(fld, r)  # dual coordinates, same normalization
    if len(pts):
        incidence = gflinalg.matmul(fld, hyps, pts.T)
        counts = (incidence == 0).sum(axis=1)
    else:
        counts = np.zeros(len(hyps), dtype=np.int64)
    hist: dict[int, int] = {}
    for c in counts:
        hist[int(c)] = hist.get(int(c), 0) + 1
    max_count = int(counts.max()) if len(counts) else 0
    witnesses = hyps[np.nonzero(counts == max_count)[0][:max_witnesses]]
    return SectionScan(hist, max_count, witnesses, len(hyps))


def hyperplane_section(surface: Surface, hyperplane) -> HomogPoly:
    """The ternary form cutting X ∩ V(H) inside H ≅ P², for X ⊂ P³.

    Solves H = 0 for its rightmost nonzero variable and substitutes into the
    defining form.
    """
    if surface.ambient != 3 or not surface.is_hypersurface():
        raise ValueError("hyperplane_section expects a hypersurface in P^3")
    fld = surface.fld
    h = np.asarray(hyperplane, dtype=np.int64)
    if h.shape != (4,) or not h.any():
        raise ValueError("hyperplane must be a nonzero length-4 coefficient vector")
    pivot = int(np.max(np.nonzero(h)[0]))
    others = [i for i in range(4) if i != pivot]
    inv = fld.inv(int(h[pivot]))
    images = []
    for i in range(4):
        if i != pivot:
            images.append(HomogPoly.variable(fld, 3, others.index(i)))
        else:
            coeffs = [fld.neg(fld.mul(int(h[j]), inv)) for j in others]
            images.append(HomogPoly.linear(fld, coeffs))
    return surface.generators[0].substitute(images)


def enumerate_lines(fld: FiniteField, r: int) -> np.ndarray:
    """All lines of P^r(F_q) as (L, 2, r+1) canonical RREF bases."""
    q = fld.q
    blocks = []
    for c1 in range(r + 1):
        for c2 in range(c1 + 1, r + 1):
            free0 = [j for j in range(c1 + 1, r + 1) if j != c2]
            free1 = [j for j in range(c2 + 1, r + 1)]
            nfree = len(free0) + len(free1)
            count = q**nfree
            block = np.zeros((count, 2, r + 1), dtype=np.int64)
            block[:, 0, c1] = 1
            block[:, 1, c2] = 1
            idx = np.arange(count, dtype=np.int64)
            for j in free0:
                block[:, 0, j] = idx % q
                idx //= q
            for j in free1:
                block[:, 1, j] = idx % q
                idx //= q
            blocks.append(block)
    return np.concatenate(blocks, axis=0)


def lines_on_surface(surface: Surface, *, max_lines: int = 2_000_000) -> np.ndarray:
    """All F_q-rational lines contained in X, as (L, 2, r+1) RREF bases.

    A line is certified by the vanishing of every generator at deg+1 sample
    points, which kills the restricted binary form identically.
    """
    fld = surface.fld
    r = surface.ambient
    q = fld.q
    max_deg = max(g.degree for g in surface.generators)
    if q < max_deg + 1:
        raise ValueError(f"need q >= deg+1 = {max_deg + 1} sample points per line")
    lines = enumerate_lines(fld, r)
    if len(lines) > max_lines:
        raise BudgetExceeded(f"{len(lines)} candidate lines exceeds budget {max_lines}")
    u, v = lines[:, 0, :], lines[:, 1, :]
    samples = [v] + [fld.add(u, fld.mul(c, v)) for c in range(max_deg + 1)]
    keep = np.ones(len(lines), dtype=bool)
    for g in surface.generators:
        for s in samples:
            keep &= g.eval_points(s) == 0
            if not keep.any():
                return lines[:0]
    return lines[keep]


def points_on_line(fld: FiniteField, line: np.ndarray) -> np.ndarray:
    """The q+1 normalized points spanned by a 2-row basis."""
    u, v = np.asarray(line[0]), np.asarray(line[1])
    rows = [v] + [fld.add(u, fld.mul(c, v)) for c in range(fld.q)]
    return normalize_rows(fld, np.stack(rows))


def component_search(curve: HomogPoly, max_factor_degree: int, *, max_candidates: int = 300_000) -> list[HomogPoly]:
    """Exhaustive low-degree factor search by trial division.

    Returns every homogeneous factor of degree <= max_factor_degree over the
    curve's own coefficient field, one representative per scalar class.  An
    empty list certifies that no such factor exists over this field.
    """
    fld = curve.field
    out: list[HomogPoly] = []
    for d in range(1, min(max_factor_degree, curve.degree) + 1):
        basis = monomials(curve.nvars, d)
        n_cand = projective_space_size(fld.q, len(basis) - 1)
        if n_cand > max_candidates:
            raise BudgetExceeded(
                f"{n_cand} degree-{d} candidates exceeds budget {max_candidates}"
            )
        cand_rows = enumerate_points(fld, len(basis) - 1, max_points=max_candidates)
        for row in cand_rows:
            g = HomogPoly.from_coeff_vector(fld, curve.nvars, d, basis, row)
            if curve.divide_exact(g) is not None:
                out.append(g)
    return out


def singular_points(
    surface: Surface,
    max_extension_degree: int = 3,
    *,
    max_enum: int = 500_000_000,
) -> dict[int, np.ndarray]:
    """Points of X over F_{q^r}, r <= R, where the Jacobian drops rank.

    For a hypersurface this means all partials vanish; for codimension-c
    intersections the c x (r+1) Jacobian has rank < c.  An empty result is
    heuristic smoothness evidence only (labelled by the screening level), not
    a closure-level certificate.
    """
    out: dict[int, np.ndarray] = {}
    codim = len(surface.generators)
    for r_ext in range(1, max_extension_degree + 1):
        ext = surface.fld if r_ext == 1 else make_field(surface.fld.p, surface.fld.n * r_ext)
        if projective_space_size(ext.q, surface.ambient) > max_enum:
            raise BudgetExceeded(f"extension degree {r_ext} exceeds enumeration budget")
        gens, fld = _generators_over(surface.generators, ext if r_ext > 1 else None)
        jac = [[g.partial_derivative(i) for i in range(surface.ambient + 1)] for g in gens]
        bad = []
        for _, coords in iter_zero_point_batches(fld, gens, surface.ambient):
            jvals = np.stack(
                [np.stack([d.eval_points(coords) for d in row]) for row in jac]
            )  # (codim, r+1, npts)
            if codim == 1:
                sing = (jvals[0] == 0).all(axis=0)
            else:
                sing = np.array([
                    gflinalg.rank(fld, jvals[:, :, t]) < codim
                    for t in range(jvals.shape[2])
                ])
            if sing.any():
                bad.append(coords[sing])
        pts = np.concatenate(bad, axis=0) if bad else np.zeros((0, surface.ambient + 1), dtype=np.int64)
        if len(pts):
            pts = normalize_rows(fld, pts)
        out[r_ext] = pts
    return out


def smoothness_screen(surface: Surface, max_extension_degree: int = 3) -> tuple[bool, str]:
    """(passed, label); the label records the screening depth."""
    sing = singular_points(surface, max_extension_degree)
    clean = all(len(v) == 0 for v in sing.values())
    label = f"heuristically smooth (R={max_extension_degree})" if clean else (
        f"singular at extension degrees {[r for r, v in sing.items() if len(v)]}"
    )
    return clean, label


def ideal_degree_part(gens: list[HomogPoly], ell: int):
    """Reduced basis of {monomial * generator} products in degree ell.

    Correct as the ideal's degree-ell part whenever the ideal is generated in
    degrees <= ell; that assumption is the caller's and is echoed in the
    returned note.
    """
    if not gens:
        raise ValueError("need at least one generator")
    fld = gens[0].field
    nvars = gens[0].nvars
    basis = monomials(nvars, ell)
    rows = []
    for g in gens:
        if g.degree > ell:
            continue
        for mono in monomials(nvars, ell - g.degree):
            prod = g * HomogPoly(fld, nvars, ell - g.degree, {mono: 1})
            rows.append(prod.coeff_vector(basis))
    if not rows:
        mat = np.zeros((0, len(basis)), dtype=np.int64)
    else:
        mat = gflinalg.nonzero_rows(fld, np.stack(rows))
    note = f"assumes ideal generated in degrees <= {ell}"
    return mat, basis, note


@dataclass
class GeneralityVerdict:
    ell: int
    kernel_dim: int
    ideal_dim: int

    @property
    def holds(self) -> bool:
        return self.kernel_dim == self.ideal_dim


def fq_general_check(surface: Surface, m: int) -> list[GeneralityVerdict]:
    """Per-degree check that forms vanishing on X(F_q) already vanish on X.

    Compares, for each ell <= m, the kernel of the degree-ell evaluation map
    on X(F_q) with the ideal's degree-ell part built from the generators.
    """
    fld = surface.fld
    pts = surface.points()
    out = []
    for ell in range(1, m + 1):
        basis = monomials(surface.ambient + 1, ell)
        if len(pts):
            ev = np.stack([
                HomogPoly(fld, surface.ambient + 1, ell, {mono: 1}).eval_points(pts)
                for mono in basis
            ])
            kernel_dim = len(basis) - gflinalg.rank(fld, ev)
        else:
            kernel_dim = len(basis)
        ideal_mat, _, _ = ideal_degree_part(surface.generators, ell) if surface.generators else (
            np.zeros((0, len(basis)), dtype=np.int64), basis, "")
        out.append(GeneralityVerdict(ell, kernel_dim, len(ideal_mat)))
    return out


# -- surface text format -------------------------------------------------------

def _coeff_to_text(fld: FiniteField, c: int) -> str:
    if fld.n == 1:
        return str(c)
    digits = []
    for _ in range(fld.n):
        digits.append(c % fld.p)
        c //= fld.p
    return ",".join(str(d) for d in digits)


def _coeff_from_text(fld: FiniteField, s: str) -> int:
    parts = [int(x) for x in s.split(",")]
    if len(parts) == 1 and fld.n == 1:
        return parts[0] % fld.p
    if len(parts) > fld.n:
        raise ValueError(f"coefficient {s!r} too long for GF({fld.p}^{fld.n})")
    return sum((d % fld.p) * fld.p**i for i, d in enumerate(parts))


def surface_to_text(surface: Surface) -> str:
    """Canonical writer: field, ambient, one generator per line, sorted terms."""
    from .gf import field_spec_string

    lines = [f"field {field_spec_string(surface.fld)}", f"ambient {surface.ambient}"]
    for g in surface.generators:
        parts = [
            " ".join(str(e) for e in exps) + " : " + _coeff_to_text(surface.fld, c)
            for exps, c in g.sorted_terms()
        ]
        lines.append(f"{g.degree}; " + "; ".join(parts))
    return "\n".join(lines) + "\n"


def surface_from_text(text: str) -> Surface:
    from .gf import parse_field_spec
    from .bounds import sectional_genus_hypersurface

    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if len(rows) < 3 or not rows[0].startswith("field ") or not rows[1].startswith("ambient "):
        raise ValueError("surface text must start with 'field ...' and 'ambient ...' lines")
    fld = parse_field_spec(rows[0].split(None, 1)[1])
    ambient = int(rows[1].split(None, 1)[1])
    gens = []
    for ln in rows[2:]:
        head, _, rest = ln.partition(";")
        degree = int(head)
        terms = {}
        for part in rest.split(";"):
            part = part.strip()
            if not part:
                continue
            exp_s, _, coeff_s = part.partition(":")
            exps = tuple(int(e) for e in exp_s.split())
            terms[exps] = _coeff_from_text(fld, coeff_s.strip())
        gens.append(HomogPoly(fld, ambient + 1, degree, terms))
    degree = gens[0].degree if len(gens) == 1 else None
    genus = sectional_genus_hypersurface(degree) if degree is not None and ambient == 3 else None
    return Surface(fld, ambient, gens, degree=degree, sectional_genus=genus)
