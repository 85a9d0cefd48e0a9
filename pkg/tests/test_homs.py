"""Map tables: standard forms, verifiers, twists, colorings, existence."""

import numpy as np
import pytest

from bfgeo import _bulk
from bfgeo.cliques import Kind, clique_number, unit_ball
from bfgeo.errors import (InvalidParams, InvalidXi, NoHomExists, NotHom,
                          SingularTwist)
from bfgeo.fields import enumerate_homs, identity_hom, make_field
from bfgeo.homs import (MapTable, Orientation, StandardHomParams, TwistSide,
                        XiMapParams, build_witness_hom, eval_standard,
                        hom_exists, is_colouring, is_degenerate, is_graph_hom,
                        make_xi_map, moebius_twist, proper_coloring,
                        random_valid_params, standard_table, validate_params)
from bfgeo.matrices import Mat, arithmetic_distance, space

F2 = make_field(2, 1)
F4 = make_field(2, 2)
F5 = make_field(5, 1)
F16 = make_field(2, 4)

ID4 = identity_hom(F4)
EMB_4_16 = enumerate_homs(F4, F16)[0]
XI = next(e for e in range(16) if e not in set(EMB_4_16.table.tolist()))


def embedding_params(m, n, m2, n2):
    return StandardHomParams(Orientation.STRAIGHT, Mat.identity(F4, m2),
                             Mat.identity(F4, n2), ID4,
                             Mat.zeros(F4, n, m), m, n)


def test_eval_standard_pure_embedding():
    p = embedding_params(2, 2, 3, 3)
    X = Mat.from_text(F4, "1,2;3,0")
    assert eval_standard(p, X) == X.embed(3, 3)
    assert eval_standard(p, Mat.zeros(F4, 2, 2)) == Mat.zeros(F4, 3, 3)


def test_eval_standard_no_padding_when_sizes_match():
    p = embedding_params(2, 2, 2, 2)
    X = Mat.from_text(F4, "1,2;3,0")
    assert eval_standard(p, X) == X


def test_eval_standard_twist_value():
    # single-point formula check, oracle computed by direct field arithmetic:
    # at X = alpha E11 with L = E11 the denominator is diag(1 + alpha, 1),
    # so the image entry is (1 + alpha)^-1 alpha = alpha^2 * alpha = alpha^2
    p = StandardHomParams(Orientation.STRAIGHT, Mat.identity(F4, 2),
                          Mat.identity(F4, 2), ID4,
                          Mat.unit(F4, 2, 2, 0, 0), 2, 2)
    alpha = 2
    X = Mat.unit(F4, 2, 2, 0, 0, c=alpha)
    expect = F4.mul(F4.inv(F4.add(1, alpha)), alpha)
    assert expect == F4.mul(alpha, alpha)  # alpha^2 = alpha + 1 = index 3
    assert eval_standard(p, X) == Mat.unit(F4, 2, 2, 0, 0, c=expect)


def test_validate_params():
    ok, w = validate_params(embedding_params(2, 2, 2, 2))
    assert ok and w is None
    bad = StandardHomParams(Orientation.STRAIGHT, Mat.identity(F4, 2),
                            Mat.identity(F4, 2), ID4, Mat.identity(F4, 2), 2, 2)
    ok, w = validate_params(bad)
    assert not ok
    # first failing point in code order: I + X is singular at X = E11
    # over characteristic 2 (1 + 1 = 0)
    first = min(code for code, X in enumerate(space(F4, 2, 2))
                if (Mat.identity(F4, 2) + X).rank() < 2)
    assert w.encode() == first
    with pytest.raises(InvalidParams):
        standard_table(bad)


def test_validate_params_nonzero_twist_gf16():
    rng = np.random.default_rng(0)
    found = None
    for _ in range(500):
        p = random_valid_params(rng, F4, 2, 2, F16, 2, 2,
                                orientation=Orientation.STRAIGHT)
        if not p.L.is_zero():
            found = p
            break
    assert found is not None
    ok, _ = validate_params(found)
    assert ok


def test_is_graph_hom_constant_map_fails():
    const = MapTable(F4, 2, 2, F4, 2, 2,
                     np.zeros((256, 2, 2), dtype=F4.dtype))
    ok, w = is_graph_hom(const)
    assert not ok
    A, B = w
    assert arithmetic_distance(A, B) == 1  # a genuine edge got collapsed
    assert (A.encode(), B.encode()) == (0, 1)  # lexicographically first


def test_is_graph_hom_identity_and_standard():
    assert is_graph_hom(MapTable.identity(F4, 2, 2)) == (True, None)
    rng = np.random.default_rng(1)
    p = random_valid_params(rng, F4, 2, 2, F16, 3, 3)
    ok, _ = is_graph_hom(standard_table(p))
    assert ok


def test_is_graph_hom_sampled_mode():
    const = MapTable(F4, 2, 2, F4, 2, 2,
                     np.zeros((256, 2, 2), dtype=F4.dtype))
    ok, w = is_graph_hom(const, mode="sampled", samples=500, seed=3)
    assert not ok and w is not None
    ok, _ = is_graph_hom(MapTable.identity(F4, 2, 2), mode="sampled",
                         samples=500, seed=3)
    assert ok


def test_is_colouring():
    const = MapTable(F4, 2, 2, F4, 2, 2,
                     np.zeros((256, 2, 2), dtype=F4.dtype))
    assert is_colouring(const)  # single point is an adjacent set
    assert not is_colouring(MapTable.identity(F4, 2, 2))
    col = build_witness_hom(4, 2, 2, 4, 2, 2)
    assert is_colouring(col)


def test_is_degenerate():
    col = build_witness_hom(4, 2, 2, 4, 2, 2)
    deg, (A, M, N) = is_degenerate(col)
    assert deg
    assert {M.kind, N.kind} == {Kind.ONE, Kind.TWO}
    assert A.rank() <= 1
    # the witness is checkable: the ball image sits inside M union N
    center_img = col.apply(A)
    assert M.contains(center_img) and N.contains(center_img)
    for X in unit_ball(A):
        img = col.apply(X)
        assert M.contains(img) or N.contains(img)
    # embeddings are not degenerate
    deg, _ = is_degenerate(standard_table(embedding_params(2, 2, 3, 3)))
    assert not deg
    # and a torn map is rejected: send one neighbor of 0 to a rank-2 point
    torn_imgs = space(F4, 2, 2).entries.copy()
    torn_imgs[1] = Mat.identity(F4, 2).a
    with pytest.raises(NotHom):
        is_degenerate(MapTable(F4, 2, 2, F4, 2, 2, torn_imgs))


def test_embedding_is_isometric_and_distance_12_preserving():
    p = embedding_params(2, 2, 3, 3)
    tbl = standard_table(p)
    sp = space(F4, 2, 2)
    rng = np.random.default_rng(5)
    for _ in range(200):
        A, B = sp.random_mat(rng), sp.random_mat(rng)
        assert arithmetic_distance(tbl.apply(A), tbl.apply(B)) == \
            arithmetic_distance(A, B)
    # distance 1 and 2 preserving maps are non-degenerate
    assert is_degenerate(tbl) == (False, None)


def test_xi_map_properties():
    params = XiMapParams(EMB_4_16, XI, 2)
    f = make_xi_map(params)
    assert is_graph_hom(f)[0]
    assert is_degenerate(f) == (False, None)
    A = Mat(F4, [[1, 0], [1, 0], [0, 1]])
    Z = Mat.zeros(F4, 3, 2)
    assert arithmetic_distance(A, Z) == 2
    assert arithmetic_distance(f.apply(A), f.apply(Z)) == 1
    # additivity on random pairs
    sp = space(F4, 3, 2)
    rng = np.random.default_rng(2)
    for _ in range(1000):
        X, Y = sp.random_mat(rng), sp.random_mat(rng)
        assert f.apply(X + Y) == f.apply(X) + f.apply(Y)
    with pytest.raises(InvalidXi):
        XiMapParams(EMB_4_16, 1, 2)   # 1 is inside the embedded field
    with pytest.raises(InvalidXi):
        XiMapParams(EMB_4_16, XI, 1)  # too few columns


def test_moebius_twist_zero_is_identity():
    f = MapTable.identity(F4, 2, 2)
    assert moebius_twist(f, Mat.zeros(F4, 2, 2)) == f
    assert moebius_twist(f, Mat.zeros(F4, 2, 2), TwistSide.RIGHT) == f


def test_moebius_twist_preserves_image_distances():
    # embed GF(4) into GF(16) so nonzero valid twists exist
    emb_params = StandardHomParams(Orientation.STRAIGHT, Mat.identity(F16, 2),
                                   Mat.identity(F16, 2), EMB_4_16,
                                   Mat.zeros(F16, 2, 2), 2, 2)
    f = standard_table(emb_params)
    L = Mat.unit(F16, 2, 2, 0, 0, c=XI)
    for side in TwistSide:
        theta = moebius_twist(f, L, side)
        sp = space(F4, 2, 2)
        imgs_f = f.images
        imgs_t = theta.images
        d_f = _bulk.rank(F16, F16.vsub(imgs_f[:, None], imgs_f[None, :])
                         .reshape(-1, 2, 2))
        d_t = _bulk.rank(F16, F16.vsub(imgs_t[:, None], imgs_t[None, :])
                         .reshape(-1, 2, 2))
        assert np.array_equal(d_f, d_t)  # exact rank identity, all pairs


def test_moebius_twist_singular_witness():
    f = MapTable.identity(F4, 2, 2)
    L = Mat.unit(F4, 2, 2, 0, 0)
    with pytest.raises(SingularTwist) as exc:
        moebius_twist(f, L)
    X = exc.value.witness
    G = Mat.identity(F4, 2) + f.apply(X) @ L
    assert G.rank() < 2


def test_identity_twist_sweep_only_zero_valid():
    # over one field the identity table admits no nonzero twist at all
    f = MapTable.identity(F4, 2, 2)
    valid = []
    for code, L in enumerate(space(F4, 2, 2)):
        try:
            moebius_twist(f, L)
            valid.append(code)
        except SingularTwist:
            pass
    assert valid == [0]


def test_hom_exists():
    assert hom_exists(4, 2, 2, 4, 2, 2)
    assert not hom_exists(4, 2, 3, 2, 2, 2)  # 4^3 = 64 > 2^2 = 4
    assert hom_exists(2, 2, 2, 2, 1, 4)      # 2^2 <= 2^4
    assert hom_exists(2, 2, 2, 4, 2, 2)
    from bfgeo.errors import NotPrime
    with pytest.raises(NotPrime):
        hom_exists(6, 2, 2, 4, 2, 2)


def test_proper_coloring_gf4():
    c = proper_coloring(F4, 2, 2)
    codes = c.image_codes()
    assert len(np.unique(codes)) == 16  # exactly q^max(m, n) colors, all hit
    sp = space(F4, 2, 2)
    mono = 0
    for nbr in sp.neighbor_perms_half:
        mono += int((codes == codes[nbr]).sum())
    assert mono == 0
    assert is_graph_hom(c)[0] and is_colouring(c)


def test_proper_coloring_syndrome_difference_never_vanishes():
    # additivity makes properness equivalent to: no rank-1 matrix gets
    # the zero color
    c = proper_coloring(F4, 2, 2)
    sp = space(F4, 2, 2)
    codes = c.image_codes()
    assert (codes[sp.rank1_codes] != codes[0]).all()
    for X, Y in [(5, 77), (160, 13), (201, 255)]:
        s = sp.code_add(np.int64(X), np.int64(Y))
        assert np.array_equal(
            c.images[int(s)],
            F4.vadd(c.images[X], c.images[Y]))  # the coloring is additive


def test_proper_coloring_wide_and_tall():
    c = proper_coloring(F2, 2, 3)
    assert len(np.unique(c.image_codes())) == 8
    c2 = proper_coloring(F2, 3, 2)  # tall orientation transposes internally
    assert len(np.unique(c2.image_codes())) == 8
    for c_ in (c, c2):
        sp = space(F2, c_.m, c_.n)
        codes = c_.image_codes()
        for nbr in sp.neighbor_perms_half:
            assert (codes != codes[nbr]).all()


def test_proper_coloring_row_case():
    c = proper_coloring(F4, 1, 3)
    assert len(np.unique(c.image_codes())) == 64
    assert is_graph_hom(c)[0]


def test_build_witness_hom():
    w = build_witness_hom(4, 2, 2, 4, 2, 2)
    assert len(np.unique(w.image_codes())) == 16
    assert is_graph_hom(w)[0] and is_colouring(w)
    w2 = build_witness_hom(2, 2, 2, 4, 2, 2)
    assert is_graph_hom(w2)[0] and is_colouring(w2)
    w3 = build_witness_hom(2, 2, 2, 2, 1, 4)
    assert is_graph_hom(w3)[0] and is_colouring(w3)
    with pytest.raises(NoHomExists):
        build_witness_hom(4, 2, 3, 2, 2, 2)


def test_pigeonhole_certificate_for_the_false_case():
    # a graph homomorphism is injective on cliques, so a 64-point clique
    # cannot land in a graph whose largest clique has 4 points
    assert not hom_exists(4, 2, 3, 2, 2, 2)
    omega_target = clique_number(F2, 2, 2)
    assert omega_target == 4
    source_clique = 4 ** max(2, 3)
    assert source_clique == 64 > omega_target


def test_standard_tables_are_homs_and_nondegenerate_both_orientations():
    rng = np.random.default_rng(11)
    seen = set()
    for _ in range(8):
        p = random_valid_params(rng, F4, 2, 2, F16, 3, 3)
        seen.add(p.orientation)
        tbl = standard_table(p)
        assert is_graph_hom(tbl)[0]
        assert is_degenerate(tbl) == (False, None)
        assert not is_colouring(tbl)
    assert seen == {Orientation.STRAIGHT, Orientation.TRANSPOSED}
