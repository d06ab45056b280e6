"""Field kernel and tower tests.

Expected values are frozen from independent hand computation: the F_4
multiplication table, the F_8 companion matrix, and coordinate solves done
with a plain textbook elimination written here, not the library's cached
inverse.
"""

import itertools
import random

import pytest

from fdrm.fields import (
    FieldError,
    SubfieldMap,
    build_tower,
    gf,
    smallest_primitive_modulus,
    tower_from_serial,
)


def solve_coords_oracle(field, basis_elems, target, p):
    """Textbook Gauss solve of sum c_i b_i = target over GF(p), c_i in GF(p)."""
    n = field.degree
    cols = [list(field.coeffs(b)) for b in basis_elems]
    rhs = list(field.coeffs(target))
    aug = [[cols[j][i] for j in range(len(basis_elems))] + [rhs[i]] for i in range(n)]
    sol = [0] * len(basis_elems)
    r = 0
    piv_of_col = {}
    for c in range(len(basis_elems)):
        sel = next((i for i in range(r, n) if aug[i][c] % p), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv_of_col[c] = r
        r += 1
    for c, rr in piv_of_col.items():
        sol[c] = aug[rr][-1]
    for i in range(n):  # consistency of the solve
        acc = 0
        for j in range(len(basis_elems)):
            acc = field.add(acc, field.smul(sol[j], basis_elems[j]))
    return tuple(sol)


# -- canonical moduli (hand-checked) --


def test_canonical_moduli():
    assert smallest_primitive_modulus(2, 2) == (1, 1, 1)
    assert smallest_primitive_modulus(2, 3) == (1, 0, 1, 1)
    assert smallest_primitive_modulus(3, 2) == (2, 1, 1)
    assert smallest_primitive_modulus(2, 1) == (1, 1)


def test_f4_arithmetic_table():
    F4 = gf(2, 2)
    w = F4.alpha
    assert F4.mul(w, w) == F4.add(w, 1)  # w^2 = w + 1
    assert F4.mul(w, F4.add(w, 1)) == 1  # w * w^2 = w^3 = 1
    assert F4.inv(w) == F4.add(w, 1)


def test_f9_is_a_field():
    F9 = gf(3, 2)
    for a in range(9):
        for b in range(9):
            assert F9.add(a, b) == F9.add(b, a)
            assert F9.mul(a, b) == F9.mul(b, a)
            for c in range(9):
                lhs = F9.mul(a, F9.add(b, c))
                rhs = F9.add(F9.mul(a, b), F9.mul(a, c))
                assert lhs == rhs
    for a in range(1, 9):
        assert F9.mul(a, F9.inv(a)) == 1


# -- tower construction --


def test_build_tower_basic():
    t = build_tower(2, 1, (2,))
    assert t.betas[0] == 1
    assert len(t.betas) == 2


def test_build_tower_two_levels():
    t = build_tower(2, 1, (2, 4))
    b = t.betas
    a21 = t.alphas[1][1]
    assert b[2] == t.field.mul(b[0], a21)
    assert b[3] == t.field.mul(b[1], a21)


def test_build_tower_divisibility():
    build_tower(3, 1, (2, 6))
    with pytest.raises(FieldError):
        build_tower(3, 1, (2, 5))
    with pytest.raises(FieldError):
        build_tower(4, 1, (2,))  # 4 is not prime


def test_beta_recursion_exact():
    for chain in [(2, 4), (2, 6), (3, 6), (1, 2, 4)]:
        t = build_tower(2, 1, chain)
        ts = (1,) + chain
        for x in range(2, len(ts)):
            t_prev = ts[x - 1]
            s_x = ts[x] // t_prev
            for y in range(1, s_x):
                for z in range(1, t_prev + 1):
                    lhs = t.beta(y * t_prev + z)
                    rhs = t.field.mul(t.beta(z), t.alphas[x - 1][y])
                    assert lhs == rhs


def test_betas_independent():
    for p, s, chain in [(2, 1, (2, 4)), (2, 1, (2, 6)), (3, 1, (2, 6)), (2, 2, (3,))]:
        t = build_tower(p, s, chain)
        assert t.independent_over_level(t.betas, 0)


def test_alphas_fixed_by_level_frobenius():
    t = build_tower(2, 1, (2, 6))
    for x in range(1, t.levels + 1):
        for a in t.alphas[x - 1]:
            assert t.frobenius(a, t.level_degree(x)) == a


# -- frobenius --


def test_frobenius_identity_and_subfield():
    t = build_tower(2, 1, (3,))
    for a in range(8):
        assert t.frobenius(a, 0) == a
    for a in (0, 1):  # F_2 inside F_8
        for i in range(5):
            assert t.frobenius(a, i) == a


def test_frobenius_f4_omega():
    t = build_tower(2, 1, (2,))
    w = t.field.alpha
    assert t.frobenius(w, 1) == t.field.add(w, 1)  # w^2 = w + 1


def test_frobenius_homomorphism():
    t = build_tower(3, 1, (2,))
    for a in range(9):
        for b in range(9):
            assert t.frobenius(t.field.add(a, b), 1) == t.field.add(
                t.frobenius(a, 1), t.frobenius(b, 1)
            )
            assert t.frobenius(t.field.mul(a, b), 1) == t.field.mul(
                t.frobenius(a, 1), t.frobenius(b, 1)
            )


def test_frobenius_fixed_field_sizes():
    # frobenius(., t_x) fixes exactly q^{t_x} elements, q = 2, t_l <= 4
    t = build_tower(2, 1, (2, 4))
    for x, deg in [(0, 1), (1, 2), (2, 4)]:
        fixed = [a for a in t.field.elements() if t.frobenius(a, t.level_degree(x)) == a]
        assert len(fixed) == 2 ** t.level_degree(x)


# -- psi / psi_inv --


def test_psi_zero_and_basis_columns():
    t = build_tower(2, 1, (2, 4))
    n = 3
    rows = t.psi((0,) * n)
    assert all(all(e == 0 for e in r) for r in rows)
    for i, b in enumerate(t.betas):
        rows = t.psi((b,))
        col = [rows[r][0] for r in range(t.top_degree)]
        assert col == [1 if r == i else 0 for r in range(t.top_degree)]


def test_psi_linearity_against_solve_oracle():
    for p, chain in [(2, (2, 4)), (3, (2,))]:
        t = build_tower(p, 1, chain)
        rng = random.Random(11)
        for _ in range(40):
            a = rng.randrange(t.field.order)
            b = rng.randrange(t.field.order)
            for x in range(p):
                for y in range(p):
                    v = t.field.add(t.field.smul(x, a), t.field.smul(y, b))
                    got = tuple(rows[0] for rows in t.psi((v,)))
                    want = solve_coords_oracle(t.field, t.betas, v, p)
                    assert got == want


def test_psi_inv_roundtrip():
    t = build_tower(2, 1, (4,))
    rng = random.Random(5)
    for _ in range(100):
        rows = [[rng.randrange(2) for _ in range(3)] for _ in range(4)]
        vec = t.psi_inv(rows)
        assert [list(r) for r in t.psi(vec)] == rows
    with pytest.raises(FieldError):
        t.psi_inv([[0, 0]] * 3)  # wrong row count


def test_psi_inv_unit_column():
    t = build_tower(2, 1, (3,))
    e0 = [[1], [0], [0]]
    assert t.psi_inv(e0) == (1,)


# -- pi (multiplication-matrix representation) --


def _mat_mul_gfp(base, A, B):
    n = len(A)
    return tuple(
        tuple(
            _sum_gfp(base, [base.mul(A[i][k], B[k][j]) for k in range(n)])
            for j in range(n)
        )
        for i in range(n)
    )


def _sum_gfp(base, xs):
    acc = 0
    for x in xs:
        acc = base.add(acc, x)
    return acc


def test_pi_zero_one_and_companion():
    t = build_tower(2, 1, (3,))
    n = 3
    assert t.pi_expand(0) == tuple((0,) * n for _ in range(n))
    assert t.pi_expand(1) == tuple(
        tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
    )
    # companion matrix of x^3 + x^2 + 1 in the layout with 1s below the diagonal
    assert t.pi_expand(t.field.alpha) == ((0, 0, 1), (1, 0, 0), (0, 1, 1))


def test_pi_alpha_squared():
    t = build_tower(2, 1, (3,))
    Pa = t.pi_expand(t.field.alpha)
    Pa2 = t.pi_expand(t.field.mul(t.field.alpha, t.field.alpha))
    assert Pa2 == _mat_mul_gfp(t.base, Pa, Pa)


@pytest.mark.parametrize("p,chain", [(2, (3,)), (3, (2,))])
def test_pi_homomorphism_exhaustive(p, chain):
    t = build_tower(p, 1, chain)
    n = t.top_degree
    base = t.base
    for a in t.field.elements():
        for b in t.field.elements():
            pa, pb = t.pi_expand(a), t.pi_expand(b)
            psum = t.pi_expand(t.field.add(a, b))
            assert psum == tuple(
                tuple(base.add(pa[i][j], pb[i][j]) for j in range(n)) for i in range(n)
            )
            assert t.pi_expand(t.field.mul(a, b)) == _mat_mul_gfp(base, pa, pb)


# -- independence --


def test_independent_over_subfield():
    t = build_tower(2, 1, (2, 4))
    assert t.independent_over_level(t.betas, 0)
    b = t.beta(2)
    assert not t.independent_over_level((1, b, t.field.add(b, 1)), 0)


def test_independent_powers():
    t = build_tower(2, 1, (5,))
    beta = t.beta(2)
    powers = [1] + [t.field.pow_(beta, i) for i in range(1, 4)]
    assert t.independent_over_level(powers, 0)
    # brute-force oracle: no nonzero GF(2)-combination vanishes
    for mask in range(1, 16):
        acc = 0
        for i in range(4):
            if mask >> i & 1:
                acc = t.field.add(acc, powers[i])
        assert acc != 0


def test_independent_over_intermediate_level():
    t = build_tower(2, 1, (2, 4))
    # beta_3 is independent of 1 over F_4, but (1, beta_2) is an F_4-basis times
    assert t.independent_over_level((1, t.beta(3)), 1)
    assert not t.independent_over_level((1, t.beta(2)), 1)  # beta_2 in F_4


# -- ordered-basis product structure --


def beta_product_profile(tower, w):
    """(span_ok, set_ok) for the products beta_i * beta_j, i <= t_1, j <= w*t_1."""
    t1 = tower.level_degree(1)
    wt1 = w * t1
    span_ok = True
    set_ok = True
    allowed = set(tower.betas[:wt1])
    for i in range(1, t1 + 1):
        for j in range(1, wt1 + 1):
            prod = tower.field.mul(tower.beta(i), tower.beta(j))
            coords = tower.beta_coords(prod)
            if any(coords[wt1:]):
                span_ok = False
            if prod not in allowed:
                set_ok = False
    return span_ok, set_ok


def admissible_ws(tower):
    if tower.levels == 1:
        return [1]
    return list(range(1, tower.level_degree(2) // tower.level_degree(1) + 1))


def test_beta_products_set_membership_on_unit_t1_chains():
    # chains listing (t_0, t_1, ...) = (1, 2), (1, 2, 4), (1, 2, 6)
    for chain in [(1, 2), (1, 2, 4), (1, 2, 6)]:
        t = build_tower(2, 1, chain)
        for w in admissible_ws(t):
            span_ok, set_ok = beta_product_profile(t, w)
            assert span_ok and set_ok, (chain, w)


def test_beta_products_span_membership_general():
    for chain in [(2, 4), (2, 6), (3, 6)]:
        t = build_tower(2, 1, chain)
        for w in admissible_ws(t):
            span_ok, _ = beta_product_profile(t, w)
            assert span_ok, (chain, w)


def test_beta_products_level_fixity():
    # products beta_i * beta_j stay inside F_{q^{t_{theta+1}}}
    for chain in [(1, 2, 4), (1, 2, 6), (2, 4), (2, 6)]:
        t = build_tower(2, 1, chain)
        t1 = t.level_degree(1)
        for w in admissible_ws(t):
            for theta in range(1, t.levels):
                deg = t.level_degree(theta + 1)
                for i in range(1, t.level_degree(theta + 1) + 1):
                    for j in range(1, w * t1 + 1):
                        prod = t.field.mul(t.beta(i), t.beta(j))
                        assert t.frobenius(prod, deg) == prod


# -- serialization and misc --


def test_tower_serialization_roundtrip():
    t = build_tower(2, 1, (5, 15))
    d = t.serialize()
    assert d == {
        "p": 2,
        "s": 1,
        "chain": [5, 15],
        "modulus": list(t.field.modulus),
    }
    t2 = tower_from_serial(d)
    assert t2.betas == t.betas


def test_subfield_map_power_basis():
    F16 = gf(2, 4)
    smap = SubfieldMap(F16, 2, (1, F16.alpha))
    for a in F16.elements():
        coords = smap.coords(a)
        assert smap.lift(coords) == a


def test_degree_budget():
    with pytest.raises(FieldError):
        build_tower(2, 1, (5, 25))


def test_psi_over_composite_base_field():
    # tower with q = 4: coordinates come out in the canonical GF(4)
    t = build_tower(2, 2, (3,))  # F_4 < F_64
    F4 = gf(2, 2)
    rng = random.Random(13)
    for _ in range(50):
        v = tuple(rng.randrange(t.field.order) for _ in range(2))
        rows = t.psi(v)
        assert all(e in F4.elements() for r in rows for e in r)
        assert t.psi_inv(rows) == v
    # F_q-linearity: psi(c * v) = c * psi(v) with c acting in canonical GF(4)
    for c in range(4):
        ce = t.base_embed(c)
        for _ in range(20):
            v = rng.randrange(t.field.order)
            scaled = tuple(r[0] for r in t.psi((t.field.mul(ce, v),)))
            plain = tuple(r[0] for r in t.psi((v,)))
            assert scaled == tuple(F4.mul(c, x) for x in plain)


def test_base_embed_is_field_embedding():
    t = build_tower(2, 2, (3,))
    F4 = gf(2, 2)
    for a in range(4):
        for b in range(4):
            assert t.base_embed(F4.add(a, b)) == t.field.add(
                t.base_embed(a), t.base_embed(b)
            )
            assert t.base_embed(F4.mul(a, b)) == t.field.mul(
                t.base_embed(a), t.base_embed(b)
            )


def test_functional_wrappers():
    from fdrm.fields import frobenius, independent_over_subfield, pi_expand, psi

    t = build_tower(2, 1, (2,))
    w = t.field.alpha
    assert frobenius(t, w, 1) == t.frobenius(w, 1)
    assert psi(t, (w,)) == t.psi((w,))
    assert pi_expand(t, w) == t.pi_expand(w)
    assert independent_over_subfield(t, t.betas, 0)
