"""Exact arithmetic in prime-power fields and divisibility towers.

Elements of GF(p^n) are plain ints in [0, p**n).  The base-p digits of an
int are the coefficients, lowest degree first, of its residue polynomial
modulo a fixed modulus.  The modulus is the lexicographically smallest
primitive polynomial of degree n over GF(p), coefficient vectors compared
low-degree-first, so every field here is canonical: two ints from fields
with equal (p, n) denote the same element.

A FieldTower models a chain F_q < F_{q^{t_1}} < ... < F_{q^{t_l}} with
q = p^s and consecutive divisibility t_{x-1} | t_x.  It carries, per level,
an ordered basis (alpha_{x,0}=1, alpha_{x,1}, ...) over the previous level,
and the derived ordered basis (beta_1=1, beta_2, ..., beta_{t_l}) of the
top field over F_q obtained by multiplying lower-level basis elements
through the chain.  The coordinate maps between length-n vectors over the
top field and t_l x n matrices over F_q are taken with respect to the
betas.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass


DEFAULT_MAX_DEGREE = 24


class FieldError(ValueError):
    """Invalid field construction or element usage."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p**s with p prime, or raise FieldError."""
    fs = prime_factors(q)
    if len(fs) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = fs[0]
    s = 0
    while q > 1:
        q //= p
        s += 1
    return p, s


# -- polynomial helpers over GF(p), coefficients as digit lists (low first) --


def _digits(v: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(v % p)
        v //= p
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """(a*b) mod the monic polynomial `mod` (degree n, length n+1)."""
    n = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(n):
                prod[d - n + i] = (prod[d - n + i] - c * mod[i]) % p
    return [c % p for c in prod[:n]] + [0] * max(0, n - len(prod))


def _poly_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    n = len(mod) - 1
    result = [1] + [0] * (n - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, mod, p)
    return result


def _x_has_order(mod: list[int], p: int, group_order: int, factors: list[int]) -> bool:
    """True iff the class of x modulo `mod` has multiplicative order group_order."""
    n = len(mod) - 1
    if n == 0:
        return False
    x = [0] * n
    if n == 1:
        x[0] = (-mod[0]) % p
        if x[0] == 0:
            return False
    else:
        x[1] = 1
    one = [1] + [0] * (n - 1)
    if _poly_powmod(x, group_order, mod, p) != one:
        return False
    for r in factors:
        if _poly_powmod(x, group_order // r, mod, p) == one:
            return False
    return True


def smallest_primitive_modulus(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest primitive polynomial of degree n over GF(p).

    Returned as coefficients (c_0, ..., c_{n-1}, 1), low degree first.
    Candidates are compared on (c_0, ..., c_{n-1}).
    """
    group_order = p**n - 1
    factors = prime_factors(group_order)
    for code in range(p**n):
        coeffs = []
        v = code
        for i in range(n):
            coeffs.append(v // p ** (n - 1 - i) % p)
        if coeffs[0] == 0:  # x would divide f; x could not be a unit
            continue
        mod = coeffs + [1]
        if _x_has_order(mod, p, group_order, factors):
            return tuple(mod)
    raise FieldError(f"no primitive polynomial of degree {n} over GF({p})")


_TABLE_LIMIT = 1 << 20


class GF:
    """The finite field GF(p^n) with canonical primitive modulus.

    Elements are ints in [0, p**n).  For orders up to 2**20 discrete
    log/antilog tables back multiplication; beyond that polynomial
    arithmetic is used directly.
    """

    def __init__(self, p: int, n: int):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if n < 1:
            raise FieldError("extension degree must be >= 1")
        self.p = p
        self.degree = n
        self.order = p**n
        self.modulus = smallest_primitive_modulus(p, n)
        self._mod_list = list(self.modulus)
        # The class of x is the canonical primitive element; for n == 1 the
        # modulus is x + c0 and the class of x is the scalar -c0.
        self.alpha = p if n > 1 else (-self.modulus[0]) % p
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"

    def __reduce__(self):
        return (gf, (self.p, self.degree))

    def _build_tables(self) -> None:
        p, n, order = self.p, self.degree, self.order
        exp = [0] * (order - 1)
        log = [0] * order
        cur = [1] + [0] * (n - 1)
        alpha = _digits(self.alpha, p, n)
        for i in range(order - 1):
            v = _undigits(cur, p)
            exp[i] = v
            log[v] = i
            cur = _poly_mulmod(cur, alpha, self._mod_list, p)
        if _undigits(cur, p) != 1:
            raise FieldError("internal: modulus is not primitive")
        self._exp = exp
        self._log = log

    # -- element views --

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of a over GF(p), low degree first."""
        return tuple(_digits(a, self.p, self.degree))

    def from_coeffs(self, cs) -> int:
        return _undigits([c % self.p for c in cs], self.p)

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise FieldError(f"{a!r} is not an element of {self}")
        return a

    # -- arithmetic --

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += (a % p + b % p) % p * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out = 0
        mult = 1
        while a:
            out += (-a % p) % p * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        prod = _poly_mulmod(
            _digits(a, self.p, self.degree),
            _digits(b, self.p, self.degree),
            self._mod_list,
            self.p,
        )
        return _undigits(prod, self.p)

    def smul(self, c: int, a: int) -> int:
        """Scalar multiple by c in GF(p)."""
        if c == 0 or a == 0:
            return 0
        if c == 1:
            return a
        return self.mul(c, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow_(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] * (e % (self.order - 1)) % (self.order - 1)]
        out = _poly_powmod(
            _digits(a, self.p, self.degree), e, self._mod_list, self.p
        )
        return _undigits(out, self.p)

    def alpha_pow(self, i: int) -> int:
        """alpha**i for the canonical primitive element alpha."""
        if self._exp is not None:
            return self._exp[i % (self.order - 1)]
        return self.pow_(self.alpha, i)

    def frob_p(self, a: int, i: int = 1) -> int:
        """a**(p**i), the i-fold absolute Frobenius."""
        if a == 0:
            return 0
        return self.pow_(a, pow(self.p, i, self.order - 1))

    def in_subfield(self, a: int, sub_degree: int) -> bool:
        """True iff a lies in the subfield GF(p^sub_degree)."""
        if self.degree % sub_degree:
            return False
        return self.frob_p(a, sub_degree) == a

    def mul_matrix(self, a: int) -> tuple[tuple[int, ...], ...]:
        """n x n matrix over GF(p) of multiplication by a in the power basis."""
        p, n = self.p, self.degree
        cols = [_digits(self.mul(a, self.from_coeffs([0] * j + [1])), p, n) for j in range(n)]
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


@functools.lru_cache(maxsize=None)
def gf(p: int, n: int) -> GF:
    """Canonical GF(p^n) instance (cached per (p, n))."""
    return GF(p, n)


# -- GF(p) linear algebra on digit rows (internal) --


def _rref_mod_p(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(p); returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if rows[i][c] % p:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _invert_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    n = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, pivots = _rref_mod_p(aug, p)
    if pivots[:n] != list(range(n)):
        raise FieldError("coordinate basis matrix is singular")
    return [r[n:] for r in red]


class SubfieldMap:
    """Coordinates of GF(p^N) over canonical GF(p^e) w.r.t. a fixed basis.

    `basis` must hold N/e elements of `field` that are linearly independent
    over the degree-e subfield.  Coordinates come out as elements of the
    canonical GF(p^e); internally the subfield is identified with the
    canonical field through a root of the canonical modulus.
    """

    def __init__(self, field: GF, sub_degree: int, basis: tuple[int, ...]):
        if field.degree % sub_degree:
            raise FieldError(
                f"degree {sub_degree} does not divide {field.degree}"
            )
        self.field = field
        self.sub = gf(field.p, sub_degree)
        self.dim = field.degree // sub_degree
        if len(basis) != self.dim:
            raise FieldError(f"need {self.dim} basis elements, got {len(basis)}")
        self.basis = tuple(basis)
        p, e = field.p, sub_degree
        self._root = self._find_canonical_root()
        root_pows = [field.pow_(self._root, j) for j in range(e)]
        expanded = []
        for b in basis:
            for rp in root_pows:
                expanded.append(list(field.coeffs(field.mul(b, rp))))
        # Columns of M are the GF(p)-coordinates of beta_i * root^j.
        mat = [[expanded[k][i] for k in range(field.degree)] for i in range(field.degree)]
        self._minv = _invert_mod_p(mat, p)
        self._root_pows = root_pows

    def _find_canonical_root(self) -> int:
        """Element of the subfield satisfying the canonical GF(p^e) modulus."""
        field, sub = self.field, self.sub
        if sub.degree == 1:
            return (-sub.modulus[0]) % field.p
        step = (field.order - 1) // (sub.order - 1)
        for u in range(1, sub.order):
            cand = field.alpha_pow(step * u)
            acc = 0
            for c in reversed(sub.modulus):
                acc = field.add(field.mul(acc, cand), c % field.p)
            if acc == 0:
                return cand
        raise FieldError("internal: no root of canonical modulus in subfield")

    def to_subfield(self, a: int) -> int:
        """Embed a canonical GF(p^e) element into `field`."""
        out = 0
        for d, rp in zip(self.sub.coeffs(a), self._root_pows):
            out = self.field.add(out, self.field.smul(d, rp))
        return out

    def coords(self, a: int) -> tuple[int, ...]:
        """Coordinates of a in `basis`, as canonical GF(p^e) elements."""
        p = self.field.p
        av = self.field.coeffs(a)
        e = self.sub.degree
        out = []
        for i in range(self.dim):
            ds = []
            for j in range(e):
                row = self._minv[i * e + j]
                ds.append(sum(r * v for r, v in zip(row, av)) % p)
            out.append(self.sub.from_coeffs(ds))
        return tuple(out)

    def lift(self, coord_vec) -> int:
        """Inverse of coords: sum coord_i * basis_i back in `field`."""
        out = 0
        for c, b in zip(coord_vec, self.basis):
            out = self.field.add(out, self.field.mul(self.to_subfield(c), b))
        return out

    def mult_matrix(self, a: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of multiplication by a in `basis`, over canonical GF(p^e)."""
        cols = [self.coords(self.field.mul(a, b)) for b in self.basis]
        return tuple(
            tuple(cols[j][i] for j in range(self.dim)) for i in range(self.dim)
        )


@dataclass(frozen=True, eq=False)
class FieldTower:
    """F_q < F_{q^{t_1}} < ... < F_{q^{t_l}} with ordered bases, q = p^s."""

    p: int
    s: int
    chain: tuple[int, ...]
    field: GF
    base: GF
    alphas: tuple[tuple[int, ...], ...]
    betas: tuple[int, ...]
    _beta_map: SubfieldMap
    _power_map: SubfieldMap

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def levels(self) -> int:
        """l, the number of proper extension steps above F_q."""
        return len(self.chain)

    @property
    def top_degree(self) -> int:
        """t_l, the degree of the top field over F_q."""
        return self.chain[-1]

    def level_degree(self, x: int) -> int:
        """t_x with t_0 = 1."""
        if not 0 <= x <= len(self.chain):
            raise FieldError(f"level {x} outside tower with l={len(self.chain)}")
        return 1 if x == 0 else self.chain[x - 1]

    def __repr__(self) -> str:
        return f"FieldTower(q={self.q}, chain={self.chain})"

    # -- operations --

    def frobenius(self, a: int, i: int = 1) -> int:
        """a**(q**i)."""
        self.field.check(a)
        if i < 0:
            raise FieldError("Frobenius exponent must be >= 0")
        return self.field.frob_p(a, self.s * i)

    def in_level(self, a: int, x: int) -> bool:
        """True iff a lies in F_{q^{t_x}} (x = 0 means F_q)."""
        return self.field.in_subfield(a, self.s * self.level_degree(x))

    def beta(self, i: int) -> int:
        """beta_i, 1-indexed as in the ordered-basis notation."""
        return self.betas[i - 1]

    def beta_coords(self, a: int) -> tuple[int, ...]:
        """Coordinates of a in the beta basis, over canonical F_q."""
        return self._beta_map.coords(a)

    def from_beta_coords(self, coords) -> int:
        return self._beta_map.lift(coords)

    def base_embed(self, c: int) -> int:
        """Embed a canonical F_q element into the top field."""
        return self._beta_map.to_subfield(c)

    def psi(self, vec) -> tuple[tuple[int, ...], ...]:
        """Row tuples of the t_l x n coordinate matrix of `vec` over F_q.

        Column j holds the beta coordinates of vec[j]; the map is F_q-linear
        and from_psi inverts it exactly.
        """
        cols = [self.beta_coords(self.field.check(v)) for v in vec]
        t = self.top_degree
        return tuple(tuple(col[i] for col in cols) for i in range(t))

    def psi_inv(self, rows) -> tuple[int, ...]:
        rows = [tuple(r) for r in rows]
        if len(rows) != self.top_degree:
            raise FieldError(
                f"expected {self.top_degree} rows, got {len(rows)}"
            )
        n = len(rows[0]) if rows else 0
        return tuple(
            self.from_beta_coords(tuple(rows[i][j] for i in range(self.top_degree)))
            for j in range(n)
        )

    def pi_expand(self, a: int) -> tuple[tuple[int, ...], ...]:
        """Multiplication-by-a matrix in the power basis, over canonical F_q.

        A field isomorphism onto its image: additive, multiplicative, and
        sending 1 to the identity matrix.  Requires the (always primitive)
        canonical modulus, so the image of the top-field generator is the
        companion matrix of its minimal polynomial over F_q.
        """
        self.field.check(a)
        return self._power_map.mult_matrix(a)

    def independent_over_level(self, elems, x: int) -> bool:
        """True iff `elems` are linearly independent over F_{q^{t_x}}.

        Decided by the rank over GF(p) of the expanded coordinate matrix of
        {e * b : e in elems, b a GF(p)-basis of the level-x field}.
        """
        elems = [self.field.check(e) for e in elems]
        sub_deg = self.s * self.level_degree(x)
        if self.field.degree % sub_deg:
            raise FieldError("level field does not embed in the top field")
        step = (self.field.order - 1) // (self.p**sub_deg - 1)
        g = self.field.alpha_pow(step)
        sub_basis = [self.field.pow_(g, j) for j in range(sub_deg)]
        rows = []
        for e in elems:
            for b in sub_basis:
                rows.append(list(self.field.coeffs(self.field.mul(e, b))))
        if not rows:
            return True
        _, pivots = _rref_mod_p(rows, self.p)
        return len(pivots) == len(elems) * sub_deg

    def serialize(self) -> dict:
        return {
            "p": self.p,
            "s": self.s,
            "chain": list(self.chain),
            "modulus": list(self.field.modulus),
        }


def _greedy_level_basis(field: GF, p: int, s: int, t_prev: int, t_cur: int) -> tuple[int, ...]:
    """Ordered basis (1, ...) of F_{q^{t_cur}} over F_{q^{t_prev}}.

    After the forced leading 1, takes the smallest powers of the top-field
    primitive element that lie in F_{q^{t_cur}} and extend independence over
    F_{q^{t_prev}}.
    """
    count = t_cur // t_prev
    sub_deg = s * t_prev
    cur_deg = s * t_cur
    step = (field.order - 1) // (p**cur_deg - 1)
    lower_step = (field.order - 1) // (p**sub_deg - 1)
    g = field.alpha_pow(lower_step)
    lower_basis = [field.pow_(g, j) for j in range(sub_deg)]

    chosen = [1]
    rows = [list(field.coeffs(b)) for b in lower_basis]
    echelon, _ = _rref_mod_p(rows, p)
    echelon = [r for r in echelon if any(r)]

    def try_insert(elem: int) -> bool:
        new_rows = [list(field.coeffs(field.mul(elem, b))) for b in lower_basis]
        trial = echelon + new_rows
        red, pivots = _rref_mod_p(trial, p)
        if len(pivots) == len(echelon) + sub_deg:
            echelon[:] = [r for r in red if any(r)]
            return True
        return False

    j = step
    while len(chosen) < count:
        if j >= field.order - 1:
            raise FieldError("internal: ran out of powers building level basis")
        cand = field.alpha_pow(j)
        if try_insert(cand):
            chosen.append(cand)
        j += step
    return tuple(chosen)


@functools.lru_cache(maxsize=None)
def build_tower(
    p: int, s: int, chain: tuple[int, ...], max_degree: int = DEFAULT_MAX_DEGREE
) -> FieldTower:
    """Build the tower F_q < F_{q^{t_1}} < ... < F_{q^{t_l}}, q = p**s.

    `chain` is (t_1, ..., t_l); t_0 = 1 is implied.  Each t_{x-1} must
    divide t_x.  Deterministic for fixed inputs: canonical modulus, greedy
    canonical level bases.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if s < 1:
        raise FieldError("base exponent s must be >= 1")
    chain = tuple(int(t) for t in chain)
    if not chain:
        raise FieldError("chain must contain at least t_1")
    prev = 1
    for t in chain:
        if t < prev or (t != prev and t % prev):
            raise FieldError(f"chain {chain} violates consecutive divisibility")
        if t == prev and t != 1:
            raise FieldError(f"chain {chain} must be strictly increasing")
        prev = t
    if len(set(chain)) != len(chain):
        raise FieldError(f"chain {chain} must be strictly increasing")
    n = s * chain[-1]
    if n > max_degree:
        raise FieldError(
            f"top field degree {n} exceeds enumeration budget {max_degree}"
        )

    field = gf(p, n)
    base = gf(p, s)

    alphas = []
    prev = 1
    for t in chain:
        alphas.append(_greedy_level_basis(field, p, s, prev, t))
        prev = t

    t_l = chain[-1]
    betas = [0] * t_l
    t_1 = chain[0]
    for z in range(1, t_1 + 1):
        betas[z - 1] = alphas[0][z - 1]
    for x in range(2, len(chain) + 1):
        t_prev = chain[x - 2]
        s_x = chain[x - 1] // t_prev
        for y in range(1, s_x):
            for z in range(1, t_prev + 1):
                betas[y * t_prev + z - 1] = field.mul(betas[z - 1], alphas[x - 1][y])
    betas = tuple(betas)

    if betas[0] != 1:
        raise FieldError("internal: beta_1 != 1")
    for x in range(1, len(chain) + 1):
        deg = s * chain[x - 1]
        for a in alphas[x - 1]:
            if not field.in_subfield(a, deg):
                raise FieldError("internal: level basis element escapes its level")

    beta_map = SubfieldMap(field, s, betas)
    power_map = SubfieldMap(
        field, s, tuple(field.alpha_pow(i) for i in range(t_l))
    )

    return FieldTower(
        p=p,
        s=s,
        chain=chain,
        field=field,
        base=base,
        alphas=tuple(alphas),
        betas=betas,
        _beta_map=beta_map,
        _power_map=power_map,
    )


def tower_from_serial(d: dict) -> FieldTower:
    """Rebuild a tower from its serialized description.

    The modulus is implied by (p, s, chain) since moduli are canonical; a
    mismatch means the description came from an incompatible build.
    """
    tower = build_tower(int(d["p"]), int(d["s"]), tuple(int(t) for t in d["chain"]))
    if "modulus" in d and tuple(d["modulus"]) != tower.field.modulus:
        raise FieldError("serialized modulus does not match canonical modulus")
    return tower


# -- functional views of the tower operations --


def frobenius(tower: FieldTower, a: int, i: int = 1) -> int:
    """a**(q**i) in the tower's top field."""
    return tower.frobenius(a, i)


def psi(tower: FieldTower, vec) -> tuple[tuple[int, ...], ...]:
    """Coordinate matrix (t_l x n over F_q) of a top-field vector."""
    return tower.psi(vec)


def psi_inv(tower: FieldTower, rows) -> tuple[int, ...]:
    """Inverse of psi: a top-field vector from its coordinate matrix."""
    return tower.psi_inv(rows)


def pi_expand(tower: FieldTower, a: int) -> tuple[tuple[int, ...], ...]:
    """Multiplication-by-a matrix in the power basis, over F_q."""
    return tower.pi_expand(a)


def independent_over_subfield(tower: FieldTower, elems, level: int) -> bool:
    """Linear independence over the level field F_{q^{t_level}}."""
    return tower.independent_over_level(elems, level)
