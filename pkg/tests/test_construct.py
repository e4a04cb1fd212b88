import numpy as np
import pytest
import sympy

from monadlab import (FieldSpec, MonadShape, PolyMatrix, PolyRing, build_banded, build_base_complex, build_sigma,
                      check_beta_surjective, check_complex, compose_general_injection, construct_monad, dualize,
                      generic_rank, restrict_to_subspace, strata_counts)
from monadlab.construct import ConstructionError, split_middle, x_block, y_block
from monadlab.verify import alpha_degeneracy

QQ = FieldSpec.rational()
F3 = FieldSpec.prime(3)


def _rows(M):
    return [list(r) for r in M.entries]


def _sympy_banded(rows, syms):
    width = len(syms) - 1
    M = sympy.zeros(rows, rows + width)
    for i in range(rows):
        for t, s in enumerate(syms):
            M[i, i + t] = s
    return M


def _to_sympy(M, names):
    syms = sympy.symbols(names)
    out = sympy.zeros(M.nrows, M.ncols)
    for i in range(M.nrows):
        for j in range(M.ncols):
            out[i, j] = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(
                [s ** e for s, e in zip(syms, mono)]) for mono, c in M[i, j].terms.items())
    return out


@pytest.mark.parametrize("r,n,m", [(1, 1, 1), (2, 1, 1), (2, 2, 1), (3, 1, 2)])
def test_lemma_identity_against_sympy(r, n, m):
    R = PolyRing.xy(QQ, n, m)
    names = list(R.names)
    xs, ys = sympy.symbols(names[:n + 1]), sympy.symbols(names[n + 1:])
    XY = _sympy_banded(r, xs) * _sympy_banded(r + n, ys)
    YX = _sympy_banded(r, ys) * _sympy_banded(r + m, xs)
    assert (XY - YX).expand() == sympy.zeros(r, r + n + m)
    X = x_block(R, n, r)
    Y = y_block(R, n, m, r + n)
    Y = PolyMatrix(R, Y.entries, Y.nrows, Y.ncols, [1] * Y.nrows, [2] * Y.ncols)
    ours = X @ Y
    assert (_to_sympy(ours, names) - XY).expand() == sympy.zeros(r, r + n + m)
    assert ours == build_sigma(r, n, m, ring=R)


def test_banded_examples():
    R = PolyRing.z(QQ, 1)
    z0, z1 = R.gens()
    assert _rows(build_banded(R, 1, 1)) == [[z0, z1]]
    assert _rows(build_banded(R, 2, 1)) == [[z0, z1, R.zero()], [R.zero(), z0, z1]]
    assert _rows(build_banded(R, 1, 0)) == [[z0]]


def test_sigma_examples():
    S = build_sigma(1, 1, 1)
    x0, x1, y0, y1 = S.ring.gens()
    assert _rows(S) == [[x0 * y0, x0 * y1 + x1 * y0, x1 * y1]]
    S0 = build_sigma(1, 0, 0)
    assert _rows(S0) == [[S0.ring.var(0) * S0.ring.var(1)]]


def test_base_complex_small_cases():
    M = build_base_complex(1, 1, 1)
    assert M.A.shape == (4, 3) and M.B.shape == (1, 4) and M.shape.k == 3
    assert (M.B @ M.A).is_zero()
    P = build_base_complex(1, 0, 0)
    x0, y0 = P.ring.gens()
    assert _rows(P.B) == [[x0, y0]]
    assert _rows(P.A) == [[y0], [-x0]]
    assert (build_base_complex(2, 1, 1).B @ build_base_complex(2, 1, 1).A).is_zero()


def test_base_complex_twists():
    M = build_base_complex(1, 1, 1)
    assert set(M.A.row_twists) == {0} and set(M.A.col_twists) == {1}
    assert set(M.B.row_twists) == {-1} and set(M.B.col_twists) == {0}


@pytest.mark.parametrize("r,n,m,q", [(1, 1, 1, 3), (2, 1, 0, 3), (1, 2, 1, 3), (2, 1, 1, 5)])
def test_base_beta_never_drops(r, n, m, q):
    M = build_base_complex(r, n, m, FieldSpec.prime(q))
    counts = strata_counts(M.B, q)
    assert all(c.count == 0 for c in counts)


def test_injection_identity_and_boundary():
    M = build_base_complex(1, 1, 1)
    rng = np.random.default_rng(0)
    same = compose_general_injection(M, 0, rng, phi=np.eye(3, dtype=int).tolist())
    assert same.A == M.A
    empty = compose_general_injection(M, 3, rng)
    assert empty.A.shape == (4, 0)
    with pytest.raises(ValueError):
        compose_general_injection(M, 4, rng)


@pytest.mark.parametrize("phi,status,codim", [
    # A*phi vanishes where (x0,x1) and (y0,y1) both lie in ker [[p,q],[q,r]]
    ([[1], [0], [1]], "empty_over_tested_fields", None),
    # pr = q^2: the kernel is spanned by (1,-1), giving the line x0+x1 = y0+y1 = 0
    ([[1], [1], [1]], "estimated", 2),
])
def test_injection_degeneracy(phi, status, codim):
    M = compose_general_injection(build_base_complex(1, 1, 1), 2, np.random.default_rng(0), phi=phi)
    assert M.shape.a == 1
    est = alpha_degeneracy(M, (3, 5, 7, 11))
    assert est.status == status and est.codim == codim


def test_restrict_identity_and_preservation():
    M = build_base_complex(1, 1, 1)
    rng = np.random.default_rng(1)
    ident = np.eye(4, dtype=int).tolist()
    same = restrict_to_subspace(M, 3, rng, substitution=ident)
    assert _rows(same.A) == [[p.change_ring(same.ring) for p in row] for row in M.A.entries]
    low = restrict_to_subspace(M.reduce_mod(3), 2, np.random.default_rng(2))
    assert check_complex(low)
    bc = check_beta_surjective(low, (3,), use_certificate=False)
    assert bc.status == "evidence"
    with pytest.raises(ValueError):
        restrict_to_subspace(M, 4, rng)


def test_restrict_commutes_with_product():
    R = build_base_complex(2, 1, 1)
    rng = np.random.default_rng(5)
    low = restrict_to_subspace(R, 2, rng)
    assert (low.B @ low.A).is_zero()


def test_dualize_involution():
    M = build_base_complex(1, 1, 1)
    D = dualize(M)
    assert D.shape.as_tuple() == (1, 4, 3, 3)
    assert check_complex(D)
    DD = dualize(D)
    assert DD.shape == M.shape and DD.A == M.A and DD.B == M.B
    assert tuple(DD.A.row_twists) == tuple(M.A.row_twists)


def test_split_middle():
    assert split_middle(7, 1) == (3, 2)
    assert split_middle(4, 2) == (0, 0)


@pytest.mark.parametrize("field", [QQ, FieldSpec.prime(5)])
def test_construct_example(field):
    M = construct_monad(MonadShape(1, 4, 1, 3), field, seed=3)
    assert M.provenance[0]["route"] == "condition_1"
    assert check_complex(M)
    assert generic_rank(M.A) == 1
    assert check_beta_surjective(M).status != "failed"


def test_construct_boundary_a_zero():
    M = construct_monad(MonadShape(0, 2, 1, 1), F3, seed=0)
    assert M.A.shape == (2, 0)
    assert check_beta_surjective(M, (3,), use_certificate=False).status == "evidence"


def test_construct_condition_two_route():
    M = construct_monad(MonadShape(1, 7, 3, 3), FieldSpec.prime(5), seed=1)
    assert M.provenance[0]["route"] == "condition_2"
    assert check_complex(M)
    assert not M.certified_beta_surjective
    assert check_beta_surjective(M).status == "evidence"


def test_construct_refuses_missing_shape():
    with pytest.raises(ConstructionError):
        construct_monad(MonadShape(2, 5, 2, 3))


@pytest.mark.parametrize("r,k", [(2, 2), (3, 3), (4, 3)])
def test_intro_family_constructs(r, k):
    n = 2
    M = construct_monad(MonadShape(n + r - 2, 2 * n + r - 1, n, k), FieldSpec.prime(5), seed=0)
    assert check_complex(M)


def test_construct_is_seed_deterministic():
    s = MonadShape(2, 6, 1, 3)
    a = construct_monad(s, QQ, seed=11)
    b = construct_monad(s, QQ, seed=11)
    assert a.A == b.A and a.B == b.B and a.provenance == b.provenance
