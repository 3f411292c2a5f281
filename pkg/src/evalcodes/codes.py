"""Evaluation codes: construction, distance certification, weight data.

The generator matrix of every code is the reduced row echelon form of the
full degree-s monomial evaluation matrix at the surface's rational points in
canonical column order, so (n, k, matrix) are byte-reproducible.  A computed
k below the monomial-space dimension means some degree-s forms vanish at
every rational point.  No attempt is made to evaluate anything beyond the
degree-s monomial span, so for surfaces that are not projectively normal
this code can be a proper subcode of the sheaf-level code with the same
data.

Distance engines:

  * exhaustive -- sweeps one representative per projective message class
    ((q^k - 1)/(q - 1) encodings) and is exact when it completes;
  * information-set -- Brouwer-Zimmermann style: systematic forms on greedily
    chosen information sets, messages enumerated by weight, with the certified
    lower bound sum(max(0, w + 1 - (k - r_i))) after each completed round.

Both work over any GF(p^n) by expanding messages and generator matrices to
GF(p) coordinates and batching the encoding products through float64 matrix
multiplication (exact far below 2^53 at these sizes).

Budgets are counted in enumerated codewords.  A sweep that exhausts its
budget returns the best certified interval with exact=False; that is a
partial result, not an error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gf import FiniteField, batched
from . import gflinalg
from .poly import HomogPoly, monomials
from .projective import BudgetExceeded, Surface, normalize_rows

DEFAULT_DISTANCE_BUDGET = 50_000_000
DEFAULT_ENUMERATOR_BUDGET = 100_000_000  # field operations, messages * n
EXHAUSTIVE_AUTO_LIMIT = 100_000_000  # q^k above this switches auto to info-set
_BATCH_TARGET = 1 << 21  # float64 elements per encoding batch


@dataclass
class LinearCode:
    fld: FiniteField
    n: int
    k: int
    matrix: np.ndarray  # k x n RREF generator matrix
    columns: np.ndarray  # the ambient point evaluated under column j
    provenance: np.ndarray  # construction-domain point behind column j
    s: int
    surface_ref: str = ""
    function_space_dim: int | None = None

    def __post_init__(self):
        if self.matrix.shape != (self.k, self.n):
            raise ValueError("generator matrix shape disagrees with (k, n)")
        if len(self.provenance) != self.n or len(self.columns) != self.n:
            raise ValueError("one provenance point per column is required")

    def params(self) -> tuple[int, int]:
        return self.n, self.k

    def encode(self, message) -> np.ndarray:
        return gflinalg.vecmat(self.fld, message, self.matrix)

    def contains_word(self, word) -> bool:
        pivots = [int(np.nonzero(row)[0][0]) for row in self.matrix]
        return gflinalg.in_rowspace(self.fld, self.matrix, pivots, word)

    def __repr__(self):
        return f"LinearCode[{self.n},{self.k}]_GF({self.fld.q})"


def build_code(surface: Surface, s: int) -> LinearCode:
    """The code of degree-s forms evaluated at X(F_q).

    For parametrized surfaces the columns are the normalized image vectors of
    the parametrization (so the result matches the embedded image's code
    entry for entry) while provenance records the parameter-domain points.
    """
    if s < 1:
        raise ValueError("evaluation degree must be >= 1")
    fld = surface.fld
    param = surface.parametrization
    if param is not None and hasattr(param, "column_data"):
        provenance, image_rows = param.column_data()
        eval_pts = normalize_rows(fld, image_rows)
    else:
        eval_pts = surface.points()
        provenance = eval_pts
    if len(eval_pts) == 0:
        raise ValueError("surface has no rational points; the code is empty")
    nvars = eval_pts.shape[1]
    basis = monomials(nvars, s)
    ev = np.stack([
        HomogPoly(fld, nvars, s, {mono: 1}).eval_points(eval_pts) for mono in basis
    ])
    gen = gflinalg.nonzero_rows(fld, ev)
    return LinearCode(
        fld=fld,
        n=len(eval_pts),
        k=len(gen),
        matrix=gen,
        columns=eval_pts,
        provenance=np.asarray(provenance),
        s=s,
        surface_ref=surface.label or surface.family,
        function_space_dim=len(basis),
    )


# -- message sweeps ---------------------------------------------------------------


def _expanded_generator(fld: FiniteField, matrix: np.ndarray) -> np.ndarray:
    """Generator matrix over GF(p) coordinates, as float64 for BLAS matmuls."""
    k, n = matrix.shape
    m = fld.n
    if m == 1:
        return matrix.astype(np.float64)
    tensor = np.empty((k, m, n, m), dtype=np.float64)
    for a in range(m):
        rows = fld.mul(fld.p**a, matrix)
        tensor[:, a, :, :] = fld._digits_of(rows)
    return tensor.reshape(k * m, n * m)


def _expand_messages(fld: FiniteField, msgs: np.ndarray) -> np.ndarray:
    if fld.n == 1:
        return msgs.astype(np.float64)
    b, k = msgs.shape
    return fld._digits_of(msgs).reshape(b, k * fld.n).astype(np.float64)


def _fold_codewords(fld: FiniteField, raw: np.ndarray) -> np.ndarray:
    """(B, n*m) GF(p) coordinate rows -> (B, n) GF(q) encodings."""
    if fld.n == 1:
        return raw
    return raw.reshape(raw.shape[0], -1, fld.n) @ fld._pow_p


class _SweepState:
    """Running minimum / witness / histogram; merges are commutative, so any
    partition of the message space gives the same final state."""

    def __init__(self, n: int):
        self.n = n
        self.min_weight = n + 1
        self.witness: tuple[int, ...] | None = None
        self.histogram = np.zeros(n + 1, dtype=np.int64)
        self.work = 0

    def update(self, weights: np.ndarray, codewords_q: np.ndarray, histogram: bool):
        self.work += len(weights)
        if histogram:
            self.histogram += np.bincount(weights, minlength=self.n + 1)[: self.n + 1]
        positive = weights > 0
        if not positive.any():
            return
        batch_min = int(weights[positive].min())
        if batch_min > self.min_weight:
            return
        rows = codewords_q[weights == batch_min]
        cand = min(tuple(int(v) for v in row) for row in rows)
        if batch_min < self.min_weight:
            self.min_weight = batch_min
            self.witness = cand
        elif self.witness is None or cand < self.witness:
            self.witness = cand

    def offer(self, codeword: np.ndarray):
        """Merge one externally supplied codeword (e.g. a geometric witness)."""
        w = int((codeword != 0).sum())
        cand = tuple(int(v) for v in codeword)
        if w < self.min_weight or (w == self.min_weight and (self.witness is None or cand < self.witness)):
            self.min_weight = w
            self.witness = cand

    def merge(self, other: "_SweepState"):
        self.work += other.work
        self.histogram += other.histogram
        if other.witness is not None:
            self.offer(np.array(other.witness, dtype=np.int64))
        elif other.min_weight < self.min_weight:
            self.min_weight = other.min_weight


def projective_message_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def _message_block(fld: FiniteField, k: int, lead: int, start: int, stop: int) -> np.ndarray:
    """Messages with first nonzero entry 1 at position `lead`; tail indices
    [start, stop) decode most-significant-first, so the global enumeration is
    lexicographic."""
    q = fld.q
    msgs = np.zeros((stop - start, k), dtype=np.int64)
    msgs[:, lead] = 1
    idx = np.arange(start, stop, dtype=np.int64)
    for c in range(k - 1, lead, -1):
        msgs[:, c] = idx % q
        idx //= q
    return msgs


def _exhaustive_scan(
    fld: FiniteField,
    matrix: np.ndarray,
    *,
    budget: int,
    histogram: bool,
    index_range: tuple[int, int] | None = None,
) -> tuple[_SweepState, bool]:
    """Scan projective messages with global indices in [lo, hi)."""
    k, n = matrix.shape
    q = fld.q
    total = projective_message_count(q, k)
    lo, hi = index_range if index_range else (0, total)
    gx = _expanded_generator(fld, matrix)
    state = _SweepState(n)
    batch = max(256, _BATCH_TARGET // max(gx.shape[1], 1))
    completed = True
    block_begin = 0
    for lead in range(k):
        block_size = q ** (k - 1 - lead)
        local_lo = max(lo, block_begin) - block_begin
        local_hi = min(hi, block_begin + block_size) - block_begin
        block_begin += block_size
        if local_lo >= local_hi:
            continue
        for c_lo, c_hi in batched(local_hi - local_lo, batch):
            if state.work + (c_hi - c_lo) > budget:
                completed = False
                break
            msgs = _message_block(fld, k, lead, local_lo + c_lo, local_lo + c_hi)
            raw = np.rint(_expand_messages(fld, msgs) @ gx).astype(np.int64) % fld.p
            folded = _fold_codewords(fld, raw)
            weights = (folded != 0).sum(axis=1)
            state.update(weights, folded, histogram)
        if not completed:
            break
    return state, completed


def _scan_worker(args):
    fld, matrix, budget, histogram, index_range = args
    state, completed = _exhaustive_scan(
        fld, matrix, budget=budget, histogram=histogram, index_range=index_range
    )
    return state.min_weight, state.witness, state.histogram, state.work, completed


def exhaustive_sweep(
    code: LinearCode,
    *,
    budget: int = DEFAULT_DISTANCE_BUDGET,
    histogram: bool = False,
    workers: int = 1,
) -> tuple[_SweepState, bool]:
    """Projective message sweep, optionally split over worker processes.

    Work is partitioned into contiguous index ranges and merged with
    commutative operations, so a completed sweep is identical for any worker
    count.  (A budget-truncated sweep visits a partition-dependent prefix;
    its interval is still certified.)
    """
    total = projective_message_count(code.fld.q, code.k)
    if workers <= 1 or total < (1 << 16):
        return _exhaustive_scan(code.fld, code.matrix, budget=budget, histogram=histogram)
    from concurrent.futures import ProcessPoolExecutor

    step = -(-total // workers)
    ranges = [(w * step, min((w + 1) * step, total)) for w in range(workers) if w * step < total]
    share = -(-budget // len(ranges))
    state = _SweepState(code.n)
    completed = True
    with ProcessPoolExecutor(max_workers=workers) as pool:
        args = [(code.fld, code.matrix, share, histogram, r) for r in ranges]
        for min_w, witness, hist, work, done in pool.map(_scan_worker, args):
            part = _SweepState(code.n)
            part.min_weight, part.witness, part.histogram, part.work = min_w, witness, hist, work
            state.merge(part)
            completed &= done
    return state, completed


@dataclass
class DistanceResult:
    lower: int
    upper: int
    exact: bool
    witness: np.ndarray | None  # a codeword achieving the upper bound
    method: str
    work: int  # codewords enumerated

    def __post_init__(self):
        if not 1 <= self.lower <= self.upper:
            raise ValueError(f"inconsistent bounds [{self.lower}, {self.upper}]")
        if self.witness is not None:
            w = int((np.asarray(self.witness) != 0).sum())
            if w != self.upper:
                raise ValueError(f"witness weight {w} != upper bound {self.upper}")

    @property
    def d(self) -> int:
        if not self.exact:
            raise ValueError("distance not certified exact; use .lower/.upper")
        return self.upper

    def to_json(self):
        return {
            "d_lower": int(self.lower),
            "d_upper": int(self.upper),
            "d_exact": bool(self.exact),
            "method": self.method,
            "witness_weight": int(self.upper) if self.witness is not None else None,
            "work": int(self.work),
        }


def _information_sets(fld: FiniteField, matrix: np.ndarray):
    """Greedy systematic forms: list of (systematic matrix, relative rank)."""
    k, n = matrix.shape
    used: set[int] = set()
    sets = []
    while True:
        unused = [c for c in range(n) if c not in used]
        if not unused:
            break
        perm = unused + sorted(used)
        r, piv = gflinalg.rref(fld, matrix[:, perm])
        if len(piv) != k:
            raise ValueError("generator matrix is not full rank")
        back = np.empty_like(r)
        back[:, perm] = r
        new_cols = [perm[c] for c in piv if perm[c] not in used]
        if not new_cols:
            break
        used.update(new_cols)
        sets.append((back, len(new_cols)))
    return sets


def _chunked(iterable, size):
    it = iter(iterable)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def _weight_w_scan(
    fld: FiniteField,
    gx: np.ndarray,
    k: int,
    n: int,
    w: int,
    state: _SweepState,
    budget: int,
) -> bool:
    """Enumerate weight-w projective messages against one systematic matrix;
    False when the budget ran out mid-scan."""
    q = fld.q
    m = fld.n
    nz = np.arange(1, q, dtype=np.int64)
    repeats = (q - 1) ** (w - 1)
    vals = np.ones((repeats, w), dtype=np.int64)
    idx = np.arange(repeats, dtype=np.int64)
    for c in range(w - 1, 0, -1):
        vals[:, c] = nz[idx % (q - 1)]
        idx //= q - 1
    vals_x = _expand_messages(fld, vals)  # (V, w*m)
    support_chunk = max(1, _BATCH_TARGET // max(repeats * n * m, 1))
    for supports in _chunked(itertools.combinations(range(k), w), support_chunk):
        count = len(supports) * repeats
        if state.work + count > budget:
            return False
        rows = np.stack([
            np.concatenate([gx[j * m : (j + 1) * m] for j in sup]) for sup in supports
        ])  # (S, w*m, n*m)
        prods = np.matmul(np.broadcast_to(vals_x, (len(supports),) + vals_x.shape), rows)
        raw = np.rint(prods).astype(np.int64).reshape(-1, n * m) % fld.p
        folded = _fold_codewords(fld, raw)
        weights = (folded != 0).sum(axis=1)
        state.update(weights, folded, histogram=False)
    return True


def information_set_distance(
    code: LinearCode,
    *,
    budget: int = DEFAULT_DISTANCE_BUDGET,
    upper_hint: np.ndarray | None = None,
) -> DistanceResult:
    """Brouwer-Zimmermann certification within a codeword budget."""
    fld = code.fld
    sets = _information_sets(fld, code.matrix)
    gxs = [(_expanded_generator(fld, mat), rank_i) for mat, rank_i in sets]
    state = _SweepState(code.n)
    if upper_hint is not None:
        state.offer(np.asarray(upper_hint, dtype=np.int64))
    lower = 1
    ran_out = False
    w = 0
    while w < code.k:
        w += 1
        for gx, _ in gxs:
            if not _weight_w_scan(fld, gx, code.k, code.n, w, state, budget):
                ran_out = True
                break
        if ran_out:
            break
        lower = sum(max(0, (w + 1) - (code.k - r_i)) for _, r_i in gxs)
        if lower >= state.min_weight:
            break
    if w == code.k and not ran_out:
        lower = state.min_weight  # every projective message was enumerated
    upper = min(state.min_weight, code.n)
    lower = max(1, min(lower, upper))
    witness = np.array(state.witness, dtype=np.int64) if state.witness else None
    method = "information-set" + ("+geometric-witness" if upper_hint is not None else "")
    return DistanceResult(lower, upper, lower >= upper, witness, method, state.work)


def min_distance(
    code: LinearCode,
    strategy: str = "auto",
    budget: int = DEFAULT_DISTANCE_BUDGET,
    *,
    upper_hint: np.ndarray | None = None,
    workers: int = 1,
) -> DistanceResult:
    """Certified minimum-distance bounds under the requested strategy.

    auto picks the exhaustive sweep iff q^k <= 10^8.  Budget exhaustion is
    reported as a certified interval with exact=False, never an exception.
    """
    if strategy not in ("auto", "exhaustive", "information-set", "isd"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "auto":
        strategy = "exhaustive" if code.fld.q**code.k <= EXHAUSTIVE_AUTO_LIMIT else "information-set"
    if strategy in ("information-set", "isd"):
        return information_set_distance(code, budget=budget, upper_hint=upper_hint)
    state, completed = exhaustive_sweep(code, budget=budget, workers=workers)
    if upper_hint is not None:
        state.offer(np.asarray(upper_hint, dtype=np.int64))
    upper = min(state.min_weight, code.n)
    witness = np.array(state.witness, dtype=np.int64) if state.witness else None
    return DistanceResult(
        lower=upper if completed else 1,
        upper=upper,
        exact=completed,
        witness=witness,
        method="exhaustive" if completed else "exhaustive-partial",
        work=state.work,
    )


@dataclass
class WeightEnumerator:
    counts: np.ndarray  # A_0 .. A_n

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)

    @property
    def min_positive_weight(self) -> int:
        nz = np.nonzero(self.counts[1:])[0]
        return int(nz[0]) + 1

    def to_json(self):
        return [int(c) for c in self.counts]


def weight_enumerator(code: LinearCode, budget: int = DEFAULT_ENUMERATOR_BUDGET) -> WeightEnumerator:
    """Full weight distribution by exhaustive projective sweep.

    One representative per scalar class is enumerated; nonzero counts scale
    by (q - 1).  The budget is in field operations, roughly messages * n.
    """
    msgs = projective_message_count(code.fld.q, code.k)
    if msgs * code.n > budget:
        raise BudgetExceeded(
            f"weight enumerator needs ~{msgs * code.n} field ops, budget {budget}"
        )
    state, completed = exhaustive_sweep(code, budget=msgs, histogram=True)
    assert completed
    counts = state.histogram * (code.fld.q - 1)
    counts[0] = 1
    if int(counts.sum()) != code.fld.q**code.k:
        raise AssertionError("weight enumerator total != q^k")
    return WeightEnumerator(counts)


# -- monomial equivalence ------------------------------------------------------------


@dataclass
class MonomialWitness:
    """Explicit equivalence data: target = row_transform @ (source * diag)[:, perm]."""

    scalings: np.ndarray  # per source column, applied before permuting
    permutation: np.ndarray  # new column j comes from old column permutation[j]
    row_transform: np.ndarray  # k x k invertible

    def apply(self, fld: FiniteField, matrix: np.ndarray) -> np.ndarray:
        scaled = fld.mul(matrix, self.scalings[None, :])
        permuted = scaled[:, self.permutation]
        return gflinalg.matmul(fld, self.row_transform, permuted)

    def verify(self, fld: FiniteField, source: np.ndarray, target: np.ndarray) -> bool:
        return bool(np.array_equal(self.apply(fld, source), target))


def apply_projective_transform(code: LinearCode, transform) -> tuple[LinearCode, MonomialWitness]:
    """Push a degree-1 code through an invertible ambient coordinate change.

    Returns the code of the transformed point set together with a verified
    monomial-equivalence witness (the scalings come from re-normalizing the
    image points, the permutation from re-sorting them canonically).
    """
    if code.s != 1:
        raise ValueError("projective transforms act on s=1 codes")
    fld = code.fld
    a = gflinalg.as_matrix(transform)
    dim = code.columns.shape[1]
    if a.shape != (dim, dim):
        raise ValueError(f"transform must be {dim}x{dim}")
    if gflinalg.rank(fld, a) != dim:
        raise ValueError("transform matrix is singular")
    raw = gflinalg.matmul(fld, code.columns, a.T)
    nz = raw != 0
    last = raw.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)
    scalings = fld.inv(raw[np.arange(len(raw)), last])
    normalized = fld.mul(raw, scalings[:, None])
    # canonical witness: first scaling is 1 (a global scalar moves into the
    # row transform), so projectively trivial transforms get all-1 scalings
    scalings = fld.mul(scalings, fld.inv(int(scalings[0])))
    order = np.lexsort(tuple(normalized[:, c] for c in range(dim - 1, -1, -1)))
    new_points = normalized[order]
    new_gen = gflinalg.nonzero_rows(fld, new_points.T)
    new_code = LinearCode(
        fld=fld, n=code.n, k=len(new_gen), matrix=new_gen,
        columns=new_points, provenance=new_points, s=1,
        surface_ref=code.surface_ref, function_space_dim=code.function_space_dim,
    )
    scaled = fld.mul(code.matrix, scalings[None, :])
    permuted = scaled[:, order]
    _, _, t = gflinalg.rref(fld, permuted, want_transform=True)
    witness = MonomialWitness(scalings=scalings, permutation=order, row_transform=t)
    if not witness.verify(fld, code.matrix, new_code.matrix):
        raise AssertionError("monomial witness failed to verify (unreachable)")
    return new_code, witness


@dataclass
class EquivalenceEvidence:
    verdict: str  # "distinct" | "possibly-equivalent"
    reason: str

    @property
    def distinct(self) -> bool:
        return self.verdict == "distinct"


def equivalence_evidence(
    c1: LinearCode, c2: LinearCode, budget: int = DEFAULT_ENUMERATOR_BUDGET
) -> EquivalenceEvidence:
    """Invariant-based evidence only: (n, k) and weight enumerators.

    This can separate codes but never certifies equivalence.
    """
    if c1.fld is not c2.fld:
        raise ValueError("codes live over different fields")
    if c1.params() != c2.params():
        return EquivalenceEvidence("distinct", "(n, k) differ")
    try:
        w1 = weight_enumerator(c1, budget)
        w2 = weight_enumerator(c2, budget)
    except BudgetExceeded:
        return EquivalenceEvidence("possibly-equivalent", "enumerators not computed (budget)")
    if not np.array_equal(w1.counts, w2.counts):
        return EquivalenceEvidence("distinct", "weight enumerators differ")
    return EquivalenceEvidence("possibly-equivalent", "all computed invariants agree")


def code_document(
    code: LinearCode,
    dist: DistanceResult | None = None,
    wenum: WeightEnumerator | None = None,
    bounds_json=None,
    include_matrix: bool = False,
) -> dict:
    """The JSON document shape used by the CLI and logs."""
    from .gf import field_spec_string

    doc = {
        "field": field_spec_string(code.fld),
        "n": code.n,
        "k": code.k,
        "s": code.s,
        "surface_ref": code.surface_ref,
    }
    if dist is not None:
        doc.update(dist.to_json())
    if wenum is not None:
        doc["weight_enumerator"] = wenum.to_json()
    if bounds_json is not None:
        doc["bounds"] = bounds_json
    if include_matrix:
        doc["generator_matrix"] = [[int(v) for v in row] for row in code.matrix]
    return doc
