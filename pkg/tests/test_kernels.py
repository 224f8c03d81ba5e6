import json
import os
import subprocess
import sys

import numpy as np
import pytest

from commitlab import _kernels as K
from commitlab._accel import USE_NUMBA
from commitlab.beliefs import MedianBelief
from commitlab.preferences import UtilitySpec

BELIEFS = [MedianBelief.uniform(), MedianBelief.triangular(0.3), MedianBelief.power(2.5),
           MedianBelief.numeric([[0, 1], [0.5, 2], [1, 0.5]])]


@pytest.mark.parametrize("belief", BELIEFS, ids=["uniform", "tri", "power", "numeric"])
@pytest.mark.parametrize("u", [UtilitySpec.quadratic(), UtilitySpec.exponential()], ids=["quad", "exp"])
def test_grid_objective_paths_agree(belief, u):
    args = u.encode() + belief.encode()[:2] + (belief.encode()[2], belief.encode()[4])
    for t, opp in [(0.1, 0.8), (0.9, 0.2), (0.4, 0.45)]:
        xs = np.linspace(min(t, opp), max(t, opp), 501)
        loop = K._objective_grid_loop(xs, opp, t, *args)
        vec = K._objective_grid_numpy(xs, opp, t, *args)
        np.testing.assert_allclose(loop, vec, rtol=0, atol=1e-15)


def test_scalar_and_array_cdf_agree():
    xs = np.linspace(0, 1, 257)
    for b in BELIEFS:
        bcode, bpar, gx, _, gc = b.encode()
        arr = K.cdf_array(bcode, bpar, gx, gc, xs)
        one = np.array([K.cdf(bcode, bpar, gx, gc, x) for x in xs])
        np.testing.assert_allclose(arr, one, atol=1e-15)


_SCRIPT = """
import json
from commitlab._accel import USE_NUMBA
from commitlab.beliefs import MedianBelief
from commitlab.contest import ElectionModel, IdealPair
from commitlab.preferences import UtilitySpec
from commitlab.solver import extremal_equilibria
out = {"numba": USE_NUMBA}
for fam in ("quadratic", "exponential"):
    m = ElectionModel(UtilitySpec(fam), MedianBelief.triangular(0.4), IdealPair(0.1, 0.85))
    r = extremal_equilibria(m)
    out[fam] = [r.smallest.x_l, r.smallest.x_r, r.largest.x_l, r.largest.x_r]
print(json.dumps(out))
"""


def _run(disable):
    env = dict(os.environ)
    env.pop("COMMITLAB_DISABLE_NUMBA", None)
    if disable:
        env["COMMITLAB_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", _SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def test_fallback_path_matches_compiled():
    fast, slow = _run(False), _run(True)
    assert fast["numba"] and not slow["numba"]
    for fam in ("quadratic", "exponential"):
        np.testing.assert_allclose(fast[fam], slow[fam], atol=1e-9)


def test_flag_read_in_this_process():
    flag = os.environ.get("COMMITLAB_DISABLE_NUMBA", "").strip().lower()
    assert USE_NUMBA == (flag not in ("1", "true", "yes"))
