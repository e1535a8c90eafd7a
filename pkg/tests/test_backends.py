import os
import subprocess
import sys

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from eqalg import _kernels
from eqalg.intlinalg import _smith_exact, smith

JOBS = [
    ["group-ring", "--group", "s3", "--base", "Z"],
    ["graded", "--target", "slice", "--prime", "3", "--max-degree", "10", "--weight", "2"],
    ["witt", "--base", "F3", "--decompose"],
]


def _run(backend, job):
    env = dict(os.environ, EQALG_BACKEND=backend)
    r = subprocess.run(
        [sys.executable, "-m", "eqalg.cli", *job, "--format", "json"], env=env, capture_output=True, text=True, check=False
    )
    assert r.returncode == 0, r.stderr
    return r.stdout


def test_backends_give_identical_output():
    for job in JOBS:
        outs = {b: _run(b, job) for b in ("numba", "numpy", "python")}
        assert len(set(outs.values())) == 1, job


def test_unknown_backend_rejected():
    env = dict(os.environ, EQALG_BACKEND="fortran")
    r = subprocess.run([sys.executable, "-c", "import eqalg._kernels"], env=env, capture_output=True, check=False)
    assert r.returncode != 0


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-40, 40), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@given(matrices)
def test_kernel_smith_matches_exact(rows):
    m, n = len(rows), len(rows[0])
    D, U, V, status = _kernels.smith_int64(np.array(rows, dtype=np.int64))
    exact, _, _ = _smith_exact([list(r) for r in rows], m, n)
    exact_diag = [exact[i][i] for i in range(min(m, n))]
    if status == 0:
        assert [int(D[i, i]) for i in range(min(m, n))] == exact_diag
        assert (U.astype(object).dot(np.array(rows, dtype=object)).dot(V.astype(object)) == D.astype(object)).all()


def test_large_entries_fall_back_to_exact():
    big = 3**40
    A = np.array([[big, 2 * big + 1], [5, 7]], dtype=object)
    s = smith(A)
    assert (s.U.dot(A).dot(s.V) == s.D).all()
    assert s.diag[0] == 1 and abs(s.diag[1]) == abs(big * 7 - 5 * (2 * big + 1))
