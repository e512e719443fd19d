import os
import random
import subprocess
import sys

import pytest

from cobindex import kernels
from cobindex.charclass import build_Sf

compiled = pytest.mark.skipif(kernels.BACKEND != "compiled", reason="extension not built")


@compiled
@pytest.mark.parametrize("d", range(1, 6))
def test_compiled_matches_python(d):
    rng = random.Random(d)
    table = kernels.product_table(d, d, divided_powers=True)
    for _ in range(20):
        a = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(table.size)]
        b = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(table.size)]
        assert kernels.trunc_mul_compiled(a, b, table) == kernels.trunc_mul_python(a, b, table)


@compiled
def test_overflow_falls_back_to_python():
    table = kernels.product_table(2, 2)
    a = [2 ** 62] * table.size
    with pytest.raises(OverflowError):
        kernels.trunc_mul_compiled(a, a, table)
    assert kernels.trunc_mul(a, a, table) == kernels.trunc_mul_python(a, a, table)
    big = [10 ** 30] + [0] * (table.size - 1)
    assert kernels.trunc_mul(big, big, table)[0] == 10 ** 60


def test_divided_power_table_weights():
    table = kernels.product_table(1, 3, divided_powers=True)
    # (x) * (x^2): divided-power product carries comb(3, 1)
    a = [0, 1, 0, 0]
    b = [0, 0, 1, 0]
    assert kernels.trunc_mul(a, b, table) == [0, 0, 0, 3]


def test_forced_fallback_gives_same_sf():
    code = "from cobindex.charclass import build_Sf; print(build_Sf((2, 1, 0, 1), 4).vector())"
    env = dict(os.environ, COBINDEX_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == str(build_Sf((2, 1, 0, 1), 4).vector())
    check = subprocess.run([sys.executable, "-c", "import cobindex; print(cobindex.BACKEND)"],
                           env=env, capture_output=True, text=True, check=True)
    assert check.stdout.strip() == "python"
