"""Exact arithmetic in GF(p^n) with table-accelerated vectorized operations.

Elements are encoded as integers in [0, p^n): the element sum(c_i * a^i)
with coefficients c_i in GF(p) is encoded as sum(c_i * p^i), where a is the
class of x modulo the field's irreducible modulus.  All field operations
accept plain ints or numpy integer arrays of encodings and are exact.

Three internal regimes, chosen by field size:
  * q <= FULL_TABLE_MAX:  full q x q add/mul tables (fastest gathers),
  * q <= LOG_TABLE_MAX:   exp/log/inverse tables plus digit tables,
  * larger q:             table-free digit-vector arithmetic (slower but
                          unbounded; keeps large-characteristic searches
                          possible).

Fields are immutable after construction and cached, so repeated
``make_field(p, n)`` calls share tables.  Elements are plain values; every
operation is pure and safe under any amount of concurrency.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

FULL_TABLE_MAX = 1024
LOG_TABLE_MAX = 1 << 17


class NotInSubfield(ValueError):
    """Raised when descending an element that is not fixed at the target level."""


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


# -- dense univariate polynomials over GF(p), used only at construction time --

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_modred(prod, mod, p)


def _poly_modred(a: list[int], mod: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            f = c * inv_lead % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - f * mod[j]) % p
    return _poly_trim(a[:dm])


def _poly_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result, base = [1], _poly_modred(a, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b):
            f = r[-1] * inv_lead % p
            shift = len(r) - len(b)
            for j in range(len(b)):
                r[shift + j] = (r[shift + j] - f * b[j]) % p
            _poly_trim(r)
        a, b = b, r
    return a


def _is_irreducible(mod: list[int], p: int) -> bool:
    """Frobenius-power criterion: x^(p^n) = x mod f and coprimality at n/l."""
    n = len(mod) - 1
    if n < 1:
        return False
    if n == 1:
        return True

    def _frob_power(times: int) -> list[int]:
        g = [0, 1]
        for _ in range(times):
            g = _poly_powmod(g, p, mod, p)
        return g

    def _minus_x(g: list[int]) -> list[int]:
        out = list(g) + [0] * max(0, 2 - len(g))
        out[1] = (out[1] - 1) % p
        return _poly_trim(out)

    if _minus_x(_frob_power(n)) != []:
        return False
    for ell in _prime_factors(n):
        if len(_poly_gcd(_minus_x(_frob_power(n // ell)), mod, p)) > 1:
            return False
    return True


def _canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n, ordering degree-n polynomials
    by the integer whose base-p digits are the non-leading coefficients."""
    if n == 1:
        return (0, 1)
    for t in range(p**n):
        coeffs, e = [], t
        for _ in range(n):
            coeffs.append(e % p)
            e //= p
        mod = coeffs + [1]
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found (unreachable)")


class FiniteField:
    """GF(p^n) over the prime field, with encoded-integer element arithmetic."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError(f"extension degree must be >= 1, got {n}")
        if modulus is None:
            modulus = _canonical_modulus(p, n)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree n")
            if not _is_irreducible(list(modulus), p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self._pow_p = np.array([p**i for i in range(n)], dtype=np.int64)
        # x^(n+j) mod f as digit rows, for vectorized reduction in huge fields
        red = []
        cur = [0] * n + [1]
        for _ in range(n - 1):
            cur = _poly_modred(cur, list(modulus), p) + [0] * n
            red.append(cur[:n])
            cur = [0] + cur[:n]
        self._reduction = np.array(red, dtype=np.int64).reshape(max(n - 1, 0), n)

        self._digits = None
        self._exp = self._log = self._inv = None
        self._add_table = self._mul_table = self._neg_table = None
        if self.q <= LOG_TABLE_MAX:
            self._digits = self._build_digit_table()
            self._build_log_tables()
            if self.q <= FULL_TABLE_MAX:
                self._build_full_tables()
        self.generator = int(self._exp[1]) if self._exp is not None and self.q > 2 else (
            1 if self.q == 2 else self._find_primitive_scalar()
        )

    # -- construction helpers ------------------------------------------------

    def _build_digit_table(self) -> np.ndarray:
        e = np.arange(self.q, dtype=np.int64)
        dig = np.empty((self.q, self.n), dtype=np.int64)
        for i in range(self.n):
            dig[:, i] = e % self.p
            e //= self.p
        return dig

    def _digits_of(self, a):
        """Base-p digit rows for encodings; works with or without the table."""
        a = np.asarray(a, dtype=np.int64)
        if self._digits is not None:
            return self._digits[a]
        out = np.empty(a.shape + (self.n,), dtype=np.int64)
        e = a.copy()
        for i in range(self.n):
            out[..., i] = e % self.p
            e //= self.p
        return out

    def _recompose(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._pow_p

    def _mul_scalar_raw(self, a: int, b: int) -> int:
        da = [(a // self.p**i) % self.p for i in range(self.n)]
        db = [(b // self.p**i) % self.p for i in range(self.n)]
        prod = _poly_mulmod(_poly_trim(da), _poly_trim(db), list(self.modulus), self.p)
        return sum(c * self.p**i for i, c in enumerate(prod))

    def _pow_scalar_raw(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_scalar_raw(result, base)
            base = self._mul_scalar_raw(base, base)
            e >>= 1
        return result

    def _find_primitive_scalar(self) -> int:
        targets = [(self.q - 1) // ell for ell in _prime_factors(self.q - 1)]
        for g in range(2, self.q):
            if all(self._pow_scalar_raw(g, t) != 1 for t in targets):
                return g
        raise AssertionError("no primitive element (unreachable)")

    def _build_log_tables(self) -> None:
        q, p, n = self.q, self.p, self.n
        g = self._find_primitive_scalar() if q > 2 else 1
        # two-level fill: baby powers sequentially, then one matmul per block
        s = max(int((q - 1) ** 0.5) + 1, 1)
        baby = [1]
        for _ in range(min(s, q - 1) - 1):
            baby.append(self._mul_scalar_raw(baby[-1], g))
        baby_dig = self._digits[np.array(baby, dtype=np.int64)]  # (s, n)
        big = self._pow_scalar_raw(g, len(baby))
        exp = np.empty(q - 1, dtype=np.int64)
        giant = 1
        for blk in range(0, q - 1, len(baby)):
            m = self._mul_by_matrix(giant)
            vals = self._recompose(baby_dig @ m.T % p)
            take = min(len(baby), q - 1 - blk)
            exp[blk : blk + take] = vals[:take]
            giant = self._mul_scalar_raw(giant, big)
        self._exp = exp
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        if np.any(log[1:] < 0):
            raise AssertionError("exp table is not a bijection (unreachable)")
        self._log = log
        inv = np.zeros(q, dtype=np.int64)
        inv[exp] = exp[(q - 1 - log[exp]) % (q - 1)]
        self._inv = inv
        neg_dig = (-self._digits) % p
        self._neg_table = self._recompose(neg_dig)

    def _mul_by_matrix(self, e: int) -> np.ndarray:
        """n x n GF(p) matrix of multiplication by the element encoded e."""
        cols = []
        cur = e
        for _ in range(self.n):
            cols.append([(cur // self.p**i) % self.p for i in range(self.n)])
            cur = self._mul_scalar_raw(cur, self.p)  # times x
        return np.array(cols, dtype=np.int64).T

    def _build_full_tables(self) -> None:
        q, p = self.q, self.p
        dig = self._digits
        add_dig = (dig[:, None, :] + dig[None, :, :]) % p
        self._add_table = self._recompose(add_dig)
        la, lb = np.meshgrid(self._log, self._log, indexing="ij")
        mul = self._exp[(la + lb) % (q - 1)] if q > 2 else np.array([[0, 0], [0, 1]], dtype=np.int64)
        if q > 2:
            mul[0, :] = 0
            mul[:, 0] = 0
        self._mul_table = np.asarray(mul, dtype=np.int64)

    # -- arithmetic on encodings (ints or numpy arrays) ----------------------

    def add(self, a, b):
        if self._add_table is not None:
            if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
                return int(self._add_table[a, b])
            return self._add_table[a, b]
        da, db = self._digits_of(a), self._digits_of(b)
        out = self._recompose((da + db) % self.p)
        return int(out) if out.ndim == 0 else out

    def neg(self, a):
        if self._neg_table is not None:
            if isinstance(a, (int, np.integer)):
                return int(self._neg_table[a])
            return self._neg_table[a]
        out = self._recompose((-self._digits_of(a)) % self.p)
        return int(out) if out.ndim == 0 else out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul_table is not None:
            if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
                return int(self._mul_table[a, b])
            return self._mul_table[a, b]
        if self._exp is not None:
            scalar = isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer))
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
            out = np.where((a == 0) | (b == 0), 0, out)
            return int(out) if scalar else out
        return self._mul_digits(a, b)

    def _mul_digits(self, a, b):
        scalar = isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer))
        da, db = self._digits_of(a), self._digits_of(b)
        da, db = np.broadcast_arrays(da, db)
        n = self.n
        conv = np.zeros(da.shape[:-1] + (2 * n - 1,), dtype=np.int64)
        for i in range(n):
            conv[..., i : i + n] += da[..., i : i + 1] * db
        conv %= self.p
        low = conv[..., :n]
        if n > 1:
            high = conv[..., n:]
            low = (low + high @ self._reduction) % self.p
        out = self._recompose(low)
        return int(out) if scalar else out

    def inv(self, a):
        if isinstance(a, (int, np.integer)):
            if a == 0:
                raise ZeroDivisionError("inverse of 0 in GF")
            if self._inv is not None:
                return int(self._inv[a])
            return self._pow_scalar_raw(int(a), self.q - 2)
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of 0 in GF")
        if self._inv is not None:
            return self._inv[a]
        return np.array([self._pow_scalar_raw(int(v), self.q - 2) for v in a.ravel()],
                        dtype=np.int64).reshape(a.shape)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        """a**e with 0**0 = 1; e must be a nonnegative integer."""
        if e < 0:
            raise ValueError("negative exponent; use inv() first")
        if isinstance(a, (int, np.integer)):
            if e == 0:
                return 1
            if a == 0:
                return 0
            if self._log is not None:
                return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])
            return self._pow_scalar_raw(int(a), e)
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if self._log is not None:
            out = self._exp[(self._log[a] * e) % (self.q - 1)]
            return np.where(a == 0, 0, out)
        out = np.ones_like(a)
        base = a.copy()
        while e:
            if e & 1:
                out = self._mul_digits(out, base)
            e >>= 1
            if e:
                base = self._mul_digits(base, base)
        return out

    def frobenius(self, a, base_power: int = 1):
        """The p^base_power-power map; an automorphism fixing GF(p^base_power)."""
        return self.pow(a, self.p**base_power)

    # -- element-level conveniences -------------------------------------------

    def element(self, value) -> "FieldElement":
        """Wrap an encoding (int) or a GF(p) coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.n:
                raise ValueError("coefficient vector longer than field degree")
            enc = sum((int(c) % self.p) * self.p**i for i, c in enumerate(value))
            return FieldElement(self, enc)
        v = int(value)
        if self.n == 1:
            v %= self.p
        if not 0 <= v < self.q:
            raise ValueError(f"encoding {v} out of range for GF({self.p}^{self.n})")
        return FieldElement(self, v)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def poly_gen(self) -> "FieldElement":
        """The class of x modulo the field modulus (requires n >= 2)."""
        if self.n < 2:
            raise ValueError("prime field has no polynomial generator")
        return FieldElement(self, self.p)

    def elements(self):
        return (FieldElement(self, v) for v in range(self.q))

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (make_field, (self.p, self.n, self.modulus))


class FieldElement:
    """A value of a specific FiniteField; cross-field arithmetic is an error."""

    __slots__ = ("field", "val")

    def __init__(self, field: FiniteField, val: int):
        self.field = field
        self.val = int(val)

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError(f"mixed-field arithmetic: {self.field} vs {other.field}")
            return other.val
        if isinstance(other, (int, np.integer)) and self.field.n == 1:
            return int(other) % self.field.p
        raise TypeError(f"cannot combine {self!r} with {other!r}")

    def coeffs(self) -> tuple[int, ...]:
        """GF(p) coefficient vector, constant term first."""
        e, out = self.val, []
        for _ in range(self.field.n):
            out.append(e % self.field.p)
            e //= self.field.p
        return tuple(out)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.val, self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.val, self._check(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._check(other), self.val))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.val, self._check(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.val, self._check(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._check(other), self.val))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.val))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.val, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.val == other.val
        if isinstance(other, (int, np.integer)) and self.field.n == 1:
            return self.val == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.val))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        if self.field.n == 1:
            return f"{self.val}"
        terms = [
            ("" if c == 1 and i > 0 else str(c)) + ("" if i == 0 else "a" if i == 1 else f"a^{i}")
            for i, c in enumerate(self.coeffs())
            if c
        ]
        return "+".join(reversed(terms)) if terms else "0"


def frobenius(a: FieldElement, base_power: int = 1) -> FieldElement:
    """F(a) = a^(p^base_power) inside a's own field."""
    return FieldElement(a.field, a.field.frobenius(a.val, base_power))


class FieldEmbedding:
    """Ring embedding GF(p^a) -> GF(p^b) for a | b.

    Determined by sending the source's polynomial generator to the smallest
    (by encoding) root of the source modulus in the target field, so the same
    pair of fields always yields the same embedding.
    """

    def __init__(self, source: FiniteField, target: FiniteField):
        if source.p != target.p:
            raise ValueError("embeddings require equal characteristic")
        if target.n % source.n != 0:
            raise ValueError(
                f"target degree {target.n} is not a multiple of source degree {source.n}"
            )
        self.source = source
        self.target = target
        self.gen_image = self._find_root()
        # column i of E holds the target digit vector of gen_image^i
        powers = [1]
        for _ in range(source.n - 1):
            powers.append(target.mul(powers[-1], self.gen_image))
        self._embed_matrix = target._digits_of(np.array(powers, dtype=np.int64)).T % target.p
        self._solver, self._pivots = self._build_solver()

    def _find_root(self) -> int:
        mod = self.source.modulus
        tgt = self.target
        if tgt.q > LOG_TABLE_MAX:
            raise ValueError(
                f"embedding into {tgt} requires a root search over {tgt.q} elements; "
                "only table-range targets are supported"
            )
        vals = np.zeros(tgt.q, dtype=np.int64)
        vals[:] = mod[-1] % tgt.p
        x = np.arange(tgt.q, dtype=np.int64)
        for c in reversed(mod[:-1]):
            vals = tgt.add(tgt.mul(vals, x), c % tgt.p)
        roots = np.nonzero(vals == 0)[0]
        if len(roots) == 0:
            raise AssertionError("source modulus has no root in target (unreachable)")
        return int(roots[0])

    def _build_solver(self):
        """Row-reduce [E | I] over GF(p) so descent is one matmul plus a check."""
        p = self.target.p
        a, b = self.source.n, self.target.n
        aug = np.concatenate([self._embed_matrix % p, np.eye(b, dtype=np.int64)], axis=1)
        pivots = []
        row = 0
        for col in range(a):
            hit = next((r for r in range(row, b) if aug[r, col] % p), None)
            if hit is None:
                continue
            aug[[row, hit]] = aug[[hit, row]]
            aug[row] = aug[row] * pow(int(aug[row, col]), p - 2, p) % p
            for r in range(b):
                if r != row and aug[r, col] % p:
                    aug[r] = (aug[r] - aug[r, col] * aug[row]) % p
            pivots.append(col)
            row += 1
        if len(pivots) != a:
            raise AssertionError("embedding matrix is rank-deficient (unreachable)")
        return aug[:, a:], pivots

    def embed(self, a):
        """Image in the target field; accepts an encoding/array or FieldElement."""
        if isinstance(a, FieldElement):
            if a.field is not self.source:
                raise ValueError("element is not in the embedding's source field")
            return FieldElement(self.target, self.embed(a.val))
        dig = self.source._digits_of(a)
        out = self.target._recompose((dig @ self._embed_matrix.T) % self.target.p)
        return int(out) if np.ndim(out) == 0 else out

    def descend(self, a):
        """Unique source preimage, or raise NotInSubfield."""
        wrap = isinstance(a, FieldElement)
        if wrap:
            if a.field is not self.target:
                raise ValueError("element is not in the embedding's target field")
            a = a.val
        dig = self.target._digits_of(a)
        sol = (dig @ self._solver.T) % self.target.p
        src_dig = sol[..., : self.source.n]
        src = self.source._recompose(src_dig)
        roundtrip = (src_dig @ self._embed_matrix.T) % self.target.p
        if not np.all(roundtrip == dig):
            raise NotInSubfield(f"element {a} of {self.target} has no preimage in {self.source}")
        return self.source.element(int(src)) if wrap else (int(src) if np.ndim(src) == 0 else src)

    def contains(self, a) -> bool:
        try:
            self.descend(a)
            return True
        except NotInSubfield:
            return False

    def __repr__(self):
        return f"FieldEmbedding({self.source} -> {self.target})"


class RelativeBasis:
    """GF(q)-coordinates inside GF(q^r) along an embedding.

    Uses the basis {1, g, ..., g^(r-1)} with g the target's polynomial
    generator; g has degree r over the embedded GF(q), so this is a basis and
    the prime-digit transfer matrix below is invertible.
    """

    def __init__(self, emb: FieldEmbedding):
        src, tgt = emb.source, emb.target
        self.emb = emb
        self.r = tgt.n // src.n
        prime = make_field(tgt.p)
        # column (i*src.n + a) holds the prime digits of embed(x^a) * g^i
        cols = []
        gpow = 1
        for i in range(self.r):
            for a in range(src.n):
                basis_elt = emb.embed(int(src.p**a))
                cols.append(tgt._digits_of(tgt.mul(basis_elt, gpow)))
            if i + 1 < self.r:
                gpow = tgt.mul(gpow, tgt.p)
        from . import gflinalg  # local import; gflinalg depends on gf

        self._to_digits = np.stack(cols, axis=1) % tgt.p  # (tgt.n, tgt.n)
        self._from_digits = gflinalg.invert(prime, self._to_digits)
        self.src = src
        self.tgt = tgt

    def to_coords(self, v) -> np.ndarray:
        """GF(q) coordinate rows (..., r) of target encodings."""
        dig = self.tgt._digits_of(v)
        sol = (dig @ self._from_digits.T) % self.tgt.p
        shaped = sol.reshape(sol.shape[:-1] + (self.r, self.src.n))
        return shaped @ self.src._pow_p

    def from_coords(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        dig = self.src._digits_of(coords).reshape(coords.shape[:-1] + (self.tgt.n,))
        out = (dig @ self._to_digits.T) % self.tgt.p
        return out @ self.tgt._pow_p


_FIELD_CACHE: dict[tuple, FiniteField] = {}
_EMBED_CACHE: dict[tuple, FieldEmbedding] = {}


def make_field(p: int, n: int = 1, modulus=None) -> FiniteField:
    """Construct (or fetch the cached) GF(p^n).

    Without an explicit modulus the canonical irreducible is used, so two
    calls always produce identical arithmetic tables.
    """
    key = (p, n, tuple(modulus) if modulus is not None else None)
    if key not in _FIELD_CACHE:
        fld = FiniteField(p, n, modulus)
        _FIELD_CACHE[key] = _FIELD_CACHE.setdefault((p, n, fld.modulus), fld)
    return _FIELD_CACHE[key]


def get_embedding(source: FiniteField, target: FiniteField) -> FieldEmbedding:
    key = (id(source), id(target))
    if key not in _EMBED_CACHE:
        _EMBED_CACHE[key] = FieldEmbedding(source, target)
    return _EMBED_CACHE[key]


def extension_of(field: FiniteField, r: int) -> FiniteField:
    """The canonical absolute field GF(p^(n*r)) containing field to degree r."""
    return make_field(field.p, field.n * r)


def parse_field_spec(spec: str) -> FiniteField:
    """Parse "p", "p^n", or "p^n/c0,c1,...,cn" (modulus coefficients, constant
    term first) into a field."""
    spec = spec.strip()
    modulus = None
    if "/" in spec:
        spec, mod_part = spec.split("/", 1)
        modulus = [int(c) for c in mod_part.split(",")]
    if "^" in spec:
        p_s, n_s = spec.split("^", 1)
        p, n = int(p_s), int(n_s)
    else:
        p, n = int(spec), 1
    return make_field(p, n, modulus)


def field_spec_string(field: FiniteField) -> str:
    return f"{field.p}^{field.n}" if field.n > 1 else str(field.p)


def batched(total: int, batch: int):
    """Yield (start, stop) covering range(total) in deterministic order."""
    for start in range(0, total, batch):
        yield start, min(start + batch, total)


def gf_sum(field: FiniteField, values):
    """Field sum of an iterable of encodings."""
    return reduce(field.add, values, 0)
