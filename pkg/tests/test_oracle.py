from collections import Counter
from math import factorial

import pytest

from dipole_atlas import _sweep_py, genus, oracle
from dipole_atlas.central import psi
from dipole_atlas.oracle import ABCD, PQN, Convention, Dipole, FaceSeq, STANDARD
from dipole_atlas.series import Series, Truncation


@pytest.mark.parametrize("n", range(1, 7))
def test_universe_sizes(n):
    assert sum(1 for _ in oracle.enumerate_dipoles(n)) == factorial(n - 1)
    assert sum(1 for _ in oracle.enumerate_birooted(n)) == factorial(n - 1) * (n - 1)


def test_resource_guard():
    with pytest.raises(oracle.ResourceGuardError):
        next(oracle.enumerate_dipoles(oracle.MAX_N + 1))
    with pytest.raises(ValueError):
        oracle.sweep(0)


def test_dipole_validation():
    with pytest.raises(ValueError):
        Dipole(3, (2, 1, 3))
    with pytest.raises(ValueError):
        Dipole(3, (1, 2, 3), secondary=1)
    with pytest.raises(ValueError):
        oracle.jumps(Dipole(3, (1, 2, 3)))


def test_planar_rotation():
    d = Dipole(4, (1, 4, 3, 2))
    assert d.genus == 0
    assert oracle.faces(d) == (2, 2, 2, 2)


@pytest.mark.parametrize("n", range(1, 8))
def test_face_invariants(n):
    for d in oracle.enumerate_dipoles(n):
        fs = oracle.faces(d)
        assert sum(fs) == 2 * n
        assert (n - len(fs)) % 2 == 0 and d.genus >= 0


@pytest.mark.parametrize("n", range(2, 7))
def test_jump_invariants(n):
    for d in oracle.enumerate_birooted(n):
        st = oracle.jumps(d)
        a, b, c, dd = st.edge_classes
        assert min(a, b, c, dd) >= 0
        assert st.rho == b + dd + 1 and st.nu == a + b + 1
        assert a + b + c + dd + 2 == n


@pytest.mark.parametrize("n", range(2, 8))
def test_kernel_matches_instance_walk(n):
    jumps, faces = Counter(), Counter()
    for d in oracle.enumerate_birooted(n):
        st = oracle.jumps(d)
        jumps[st.edge_classes + (d.genus,)] += 1
    for d in oracle.enumerate_dipoles(n):
        faces[tuple(sorted((len(c) for c in d.face_cycles()), reverse=True))] += 1
    assert oracle.abcd_histogram(n) == dict(jumps)
    assert oracle.face_histogram(n) == dict(faces)


@pytest.mark.parametrize("n", range(1, 9))
def test_compiled_kernel_matches_python(n):
    compiled = pytest.importorskip("dipole_atlas._sweep_c")
    assert compiled.sweep(n) == _sweep_py.sweep(n)


def test_calibration():
    cal = oracle.calibrate(6)
    assert cal.selected == STANDARD
    # root/secondary exchange is a bijection, so its mirror passes too
    assert cal.report[Convention(False, False)] == (True, True)
    assert cal.report[Convention(True, False)] == (False, False)


def test_filters():
    assert oracle.parse_filter("pqn:1,1,2,0") == PQN(1, 1, 2, 0)
    assert oracle.parse_filter("abcd: 0,1,1,0,1") == ABCD(0, 1, 1, 0, 1)
    assert oracle.parse_filter("face:3") == FaceSeq((3,))
    for bad in ("pqn:1,2", "xyz:1", "face:"):
        with pytest.raises(ValueError):
            oracle.parse_filter(bad)
    assert oracle.count(PQN(1, 1, 2, 0)) == 1
    assert oracle.count(ABCD(0, 1, 1, 0, 1)) == 1
    assert oracle.count(FaceSeq((1, 1, 3))) == psi((3, 1, 1))
    assert oracle.count(FaceSeq((1, 1, 1))) == 1
    assert oracle.count(FaceSeq((2,))) == 0
    with pytest.raises(TypeError):
        oracle.count("pqn:1,1,2,0")


def test_marked_series_matches_solutions():
    t = Truncation.uniform(5)
    marked = oracle.oracle_gamma(6, trunc=t)
    total = Series.zero(t)
    for g in genus.CLOSED_GENERA:
        total = total + genus.gamma_genus(g, t)
    assert marked == total


def test_walk_direction_matters():
    t = Truncation.uniform(4)
    assert oracle.oracle_gamma(5, inverse_walk=False, trunc=t) != oracle.oracle_gamma(5, trunc=t)


def test_pure_kernel_switch():
    import os
    import subprocess
    import sys
    code = "from dipole_atlas import oracle; print(oracle.KERNEL, oracle.pqn_histogram(5)[(2, 3, 0)])"
    env = dict(os.environ, DIPOLE_ATLAS_PURE="1")
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert proc.stdout.split() == ["python", "1"]
