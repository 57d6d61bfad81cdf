import pytest

from artifact import fixtures, laurent, mirror


def problem(name):
    return fixtures.get(name).problem()


def mirror_poly(mp):
    cp = mirror.find_convex_partition(mp)
    mirror.check_convex_partition(mp, cp)
    return mirror.przyjalkowski(mp, cp)


def test_projective_line_and_plane():
    mp = mirror.MirrorProblem([(1,), (1,)], (2,), [])
    f = mirror_poly(mp)
    per = laurent.classical_period(f, 8)
    assert list(per.coefficients) == [1, 0, 2, 0, 6, 0, 20, 0, 70]
    assert mirror.toric_ci_period(mp, 8) == per

    mp2 = mirror.MirrorProblem([(1,), (1,), (1,)], (3,), [])
    f2 = mirror_poly(mp2)
    assert laurent.classical_period(f2, 9) == mirror.toric_ci_period(mp2, 9)


def test_bundle_outside_cone_rejected():
    with pytest.raises(mirror.MirrorError):
        mirror.MirrorProblem([(1, 0), (0, 1)], (1, 1), [(-1, 0)])


def test_pid20_mirror():
    mp = problem("pid20")
    assert mp.dimension() == 4
    f = mirror_poly(mp)
    per = list(laurent.classical_period(f, 20).coefficients)
    assert per == fixtures.PID20_PERIOD_20
    quoted = laurent.parse_polynomial(fixtures.PID20_POLY)
    assert list(laurent.classical_period(quoted, 20).coefficients) == per
    assert list(mirror.toric_ci_period(mp, 10).coefficients) == per[:11]


def test_pid115_mirror():
    mp = problem("pid115")
    f = mirror_poly(mp)
    per = list(laurent.classical_period(f, 12).coefficients)
    assert per == fixtures.PID115_PERIOD_12
    quoted = laurent.parse_polynomial(fixtures.PID115_POLY)
    assert list(laurent.classical_period(quoted, 12).coefficients) == \
        fixtures.PID115_QUOTED_PERIOD_12
    assert list(mirror.toric_ci_period(mp, 10).coefficients) == per[:11]


def test_pid232_mirror():
    mp = problem("pid232")
    f = mirror_poly(mp)
    per = list(laurent.classical_period(f, 10).coefficients)
    assert per == fixtures.PID232_PERIOD_10
    quoted = laurent.parse_polynomial(fixtures.PID232_POLY)
    assert list(laurent.classical_period(quoted, 10).coefficients) == \
        fixtures.PID232_QUOTED_PERIOD_10
    assert list(mirror.toric_ci_period(mp, 10).coefficients) == per


def test_gr86_bundle_columns():
    mp = problem("gr86-wedge5")
    assert mp.dimension() == 4
    assert sorted(mp.bundles) == sorted(fixtures.GR86_BUNDLE_COLUMNS)


def test_gr86_negative_control():
    mp = problem("gr86-wedge5")
    f = mirror_poly(mp)
    per = list(laurent.classical_period(f, 10).coefficients)
    assert per == fixtures.GR86_PERIOD_10
    rmm = laurent.parse_polynomial(fixtures.GR86_RMM_POLY)
    assert len(rmm.terms) == 35
    rper = list(laurent.classical_period(rmm, 10).coefficients)
    assert rper == fixtures.GR86_RMM_PERIOD_10
    assert per != rper

    def stats(g):
        np = laurent.newton_polytope(g)
        return (np.dim, len(np.vertices), len(np.lattice_points),
                np.normalized_volume)

    assert stats(f) == stats(rmm) == (4, 29, 36, 147)


def test_gr86_toric_ci_agreement():
    mp = problem("gr86-wedge5")
    f = mirror_poly(mp)
    assert mirror.toric_ci_period(mp, 10) == laurent.classical_period(f, 10)


def test_pid104_not_found():
    mp = problem("pid104")
    assert mp.dimension() == 4
    with pytest.raises(mirror.NotFound):
        mirror.find_convex_partition(mp)


def test_przyjalkowski_output_is_constant_free():
    for name in ("pid20", "pid115", "pid232"):
        f = mirror_poly(problem(name))
        assert f.constant_term() == 0
        assert all(isinstance(c, int) or c.denominator == 1
                   for c in f.terms.values())


def test_check_convex_partition_rejects_tampering():
    mp = problem("pid20")
    cp = mirror.find_convex_partition(mp)
    bad = mirror.ConvexPartition(cp.b0, cp.b1, cp.blocks[:-1] +
                                 [cp.blocks[-1] + (0,)], cp.distinguished)
    with pytest.raises(mirror.MirrorError):
        mirror.check_convex_partition(mp, bad)
