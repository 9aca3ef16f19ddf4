import numpy as np
import pytest

from conftest import dft_bounds, s3_translates
from ft_atlas import finite_frames as ff
from ft_atlas.errors import (EmptyShiftSet, InvalidGroup, NotAFrame, NotAFrameOnH, NotAProjection,
                             NotASubgroup, NotCommuting)


def bounds_of(cols):
    w = np.linalg.eigvalsh(cols @ cols.conj().T)
    return w[0], w[-1]


def test_table_validation():
    with pytest.raises(InvalidGroup):
        ff.group_from_table([[0, 1], [1, 1]])
    with pytest.raises(InvalidGroup):
        ff.group_from_table([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    # a Latin square that is not associative (the quasigroup x*y = 2x - y mod 3 has no identity)
    with pytest.raises(InvalidGroup):
        ff.group_from_table([[(2 * x - y) % 3 for y in range(3)] for x in range(3)])
    with pytest.raises(InvalidGroup):
        ff.group_from_json({"family": "cyclic"})
    with pytest.raises(InvalidGroup):
        ff.group_from_json({"table": [[0, 1], [1, 0]], "order": 3})


def test_loop_without_associativity_rejected():
    # order-5 loop with identity 0 that is not a group
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidGroup) as info:
        ff.group_from_table(t)
    assert "associative" in str(info.value)


@pytest.mark.parametrize("g", [ff.cyclic(7), ff.dihedral(4), ff.symmetric(3), ff.symmetric(4),
                               ff.heisenberg_mod(2), ff.heisenberg_mod(3)])
def test_regular_rep_is_unitary_homomorphism(g):
    unit, hom = ff.regular_rep(g).residuals()
    assert unit == 0 and hom == 0


def test_group_facts():
    assert ff.cyclic(6).is_abelian() and not ff.symmetric(3).is_abelian()
    assert ff.heisenberg_mod(2).order == 8 and not ff.heisenberg_mod(2).is_abelian()
    assert ff.dihedral(4).order == 8
    g = ff.symmetric(3)
    assert len(ff.subgroup_generated(g, [1])) == 2
    assert len(ff.subgroup_generated(g, [3])) == 3


@pytest.mark.parametrize("n", range(2, 17))
def test_cyclic_bounds_match_dft(n):
    g = ff.cyclic(n)
    rng = np.random.default_rng(n)
    for _ in range(5):
        phi = rng.normal(size=n) + 1j * rng.normal(size=n)
        rep = ff.frame_report(g, phi)
        a, b = dft_bounds(phi)
        assert abs(rep.lower_bound - a) < 1e-8 * max(1, b)
        assert abs(rep.upper_bound - b) < 1e-8 * max(1, b)


def test_s3_bounds_match_direct_construction():
    g = ff.symmetric(3)
    rng = np.random.default_rng(0)
    for _ in range(10):
        phi = rng.normal(size=6)
        rep = ff.frame_report(g, phi)
        a, b = bounds_of(s3_translates(phi))
        assert abs(rep.lower_bound - a) < 1e-10 and abs(rep.upper_bound - b) < 1e-10


def test_frame_operator_is_convolution():
    for g in (ff.symmetric(3), ff.heisenberg_mod(2), ff.dihedral(5)):
        rng = np.random.default_rng(g.order)
        phi = rng.normal(size=g.order) + 1j * rng.normal(size=g.order)
        assert ff.frame_operator_residual(g, phi) <= 1e-10
        f = rng.normal(size=g.order)
        cols = ff.translate_matrix(g, phi, range(g.order))
        lhs = cols @ (cols.conj().T @ f)
        rhs = ff.convolve(g, f, ff.convolve(g, ff.involute(g, phi), phi))
        assert np.abs(lhs - rhs).max() < 1e-10


def test_convolution_is_associative_and_delta_is_unit():
    g = ff.symmetric(3)
    rng = np.random.default_rng(1)
    a, b, c = rng.normal(size=(3, 6))
    assert np.abs(ff.convolve(g, ff.convolve(g, a, b), c) - ff.convolve(g, a, ff.convolve(g, b, c))).max() < 1e-12
    assert np.abs(ff.convolve(g, a, ff.delta(g)) - a).max() == 0


def test_small_examples():
    g = ff.cyclic(2)
    rep = ff.frame_report(g, [1, 0.5])
    assert abs(rep.lower_bound - 0.25) < 1e-12 and abs(rep.upper_bound - 2.25) < 1e-12
    assert rep.is_frame and rep.is_riesz and not rep.is_parseval
    assert ff.frame_report(g, [1, 0]).is_onb
    assert not ff.frame_report(g, [1, 1]).is_frame
    assert ff.frame_report(g, [1, 0.5], shifts=[0]).lower_bound == 0
    with pytest.raises(EmptyShiftSet):
        ff.frame_report(g, [1, 0], shifts=[])


@pytest.mark.parametrize("g", [ff.cyclic(5), ff.symmetric(3), ff.heisenberg_mod(2), ff.dihedral(3)])
def test_canonical_tight_generator(g):
    rng = np.random.default_rng(2)
    phi = rng.normal(size=g.order) + 1j * rng.normal(size=g.order)
    eta = ff.canonical_tight_generator(g, phi)
    auto = ff.convolve(g, ff.involute(g, eta), eta)
    assert np.abs(auto - ff.delta(g)).max() < 1e-8
    cols = ff.translate_matrix(g, eta, range(g.order))
    assert np.abs(cols @ cols.conj().T - np.eye(g.order)).max() < 1e-8


def test_tight_generator_rejects_non_frame():
    with pytest.raises(NotAFrame):
        ff.canonical_tight_generator(ff.cyclic(2), [1, 1])


def test_riesz_dichotomy():
    g = ff.symmetric(3)
    rng = np.random.default_rng(3)
    for _ in range(10):
        phi = rng.normal(size=6)
        shifts = sorted(rng.choice(6, size=int(rng.integers(1, 7)), replace=False))
        chk = ff.riesz_theorem_check(g, phi, shifts)
        assert chk.holds
        assert chk.is_frame == (len(shifts) == 6)


def test_isotypic_projections():
    g = ff.symmetric(3)
    chars = ff.s3_characters(g)
    total = np.zeros((6, 6), dtype=complex)
    lam = ff.regular_rep(g).matrices
    for name, (chi, deg) in chars.items():
        p = ff.isotypic_projection(g, chi, deg)
        assert np.abs(p @ p - p).max() < 1e-12
        assert abs(np.trace(p).real - deg * deg) < 1e-12
        assert max(np.abs(p @ m - m @ p).max() for m in lam) < 1e-12
        total += p
    assert np.abs(total - np.eye(6)).max() < 1e-12


def test_sampling_transfer_bounds():
    g = ff.symmetric(3)
    rng = np.random.default_rng(4)
    phi = rng.normal(size=6)
    for chi, deg in ff.s3_characters(g).values():
        p = ff.isotypic_projection(g, chi, deg)
        t = ff.universal_sampling_transfer(g, phi, None, p)
        # independent: translates of P phi restricted to ran P
        w, v = np.linalg.eigh(p)
        basis = v[:, w > 0.5]
        cols = basis.conj().T @ s3_translates(p @ phi)
        a, b = bounds_of(cols)
        assert abs(t.report.lower_bound - a) < 1e-10 and abs(t.report.upper_bound - b) < 1e-10
        assert t.original.lower_bound - 1e-8 <= a and b <= t.original.upper_bound + 1e-8
        # sum_x lambda(x) psi psi^* lambda(x)^* = P, the identity on ran P
        sub = ff.UnitaryRep(np.einsum("ia,xij,jb->xab", basis.conj(), ff.regular_rep(g).matrices, basis), g)
        assert ff.is_admissible(sub, basis.conj().T @ t.psi)


def test_sampling_transfer_errors():
    g = ff.symmetric(3)
    phi = np.arange(1, 7, dtype=float)
    with pytest.raises(NotAProjection):
        ff.universal_sampling_transfer(g, phi, None, 2 * np.eye(6))
    e0 = np.zeros((6, 6))
    e0[0, 0] = 1
    with pytest.raises(NotCommuting):
        ff.universal_sampling_transfer(g, phi, None, e0)
    with pytest.raises(NotAFrame):
        ff.universal_sampling_transfer(g, np.ones(6), None, np.eye(6))


def test_wavelet_transform_isometry():
    g = ff.cyclic(4)
    lam = ff.regular_rep(g)
    u = np.array([1, 2, 0, -1], dtype=complex)
    v = ff.wavelet_transform(lam, ff.delta(g), u)
    assert abs(np.linalg.norm(v) - np.linalg.norm(u)) < 1e-12
    assert ff.is_admissible(lam, ff.delta(g))
    assert not ff.is_admissible(lam, 2 * ff.delta(g))


@pytest.mark.parametrize("g, h", [
    (ff.symmetric(3), [0, 3, 4]),
    (ff.cyclic(4), [0, 2]),
    (ff.dihedral(4), [0, 1, 2, 3]),
])
def test_restriction_decomposition(g, h):
    dec = ff.restriction_decomposition(g, h)
    assert dec.residual <= 1e-10
    assert dec.index == g.order // len(h)
    assert np.abs(dec.W @ dec.W.T - np.eye(g.order)).max() == 0
    # independent check with translates computed from the table
    k = dec.index
    for pos, x in enumerate(dec.subgroup):
        lam_gx = np.zeros((g.order, g.order))
        for z in range(g.order):
            lam_gx[g.mul(x, z), z] = 1
        lam_hx = np.zeros((len(h), len(h)))
        for j, y in enumerate(dec.subgroup):
            lam_hx[dec.subgroup.index(g.mul(x, y)), j] = 1
        assert np.abs(dec.W @ lam_gx @ dec.W.T - np.kron(lam_hx, np.eye(k))).max() <= 1e-10


def test_s3_alternating_subgroup():
    g = ff.symmetric(3)
    a3 = [i for i, p in enumerate(g.labels) if ff._perm_sign(p) == 1]
    assert a3 == [0, 3, 4]


def test_transport_frame_preserves_bounds():
    g, h = ff.symmetric(3), [0, 3, 4]
    hg = ff.subgroup_table(g, h)
    rng = np.random.default_rng(5)
    for _ in range(5):
        phi_h = rng.normal(size=3)
        base = ff.frame_report(hg, phi_h)
        rep = ff.transport_frame(g, h, phi_h)
        assert abs(rep.lower_bound - base.lower_bound) < 1e-9
        assert abs(rep.upper_bound - base.upper_bound) < 1e-9
        assert rep.subspace_dim == 3


def test_subgroup_errors():
    g = ff.symmetric(3)
    with pytest.raises(NotASubgroup):
        ff.restriction_decomposition(g, [0, 1, 3])
    with pytest.raises(NotASubgroup):
        ff.restriction_decomposition(g, [1])
    with pytest.raises(NotAFrameOnH):
        ff.transport_frame(g, [0, 3, 4], [1, 1, 1])
