import json
import os
import subprocess
import sys

from lotbound._jit import HAS_NUMBA, backend

SCRIPT = r"""
import json
from lotbound._jit import backend
from lotbound.generate import random_instance
from lotbound.ibr import solve_ibr
from lotbound.ibsr import solve_ibsr
from lotbound.oracle import brute_force_optimal, brute_force_nls
from lotbound.money import format_money
out = {"backend": backend(), "costs": []}
for seed in range(6):
    a = random_instance(5, seed, profile="retailer")
    b = random_instance(4, seed, profile="both")
    c = random_instance(4, seed, profile="retailer", nls=True)
    out["costs"].append([format_money(solve_ibr(a)[0]), format_money(solve_ibsr(b)[0]),
                         format_money(brute_force_optimal(b)[0]), format_money(brute_force_nls(c)[0])])
print(json.dumps(out))
"""


def _run(no_numba: bool) -> dict:
    env = dict(os.environ)
    env.pop("LOTBOUND_NO_NUMBA", None)
    if no_numba:
        env["LOTBOUND_NO_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True,
                         check=True, timeout=300)
    return json.loads(res.stdout.strip().splitlines()[-1])


def test_in_process_backend_is_jitted():
    assert backend() == ("numba" if HAS_NUMBA else "numpy")


def test_fallback_backend_gives_identical_results():
    fast = _run(False)
    slow = _run(True)
    assert slow["backend"] == "numpy"
    assert fast["costs"] == slow["costs"]
