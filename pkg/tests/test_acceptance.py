"""Top-level acceptance gate.

Each criterion prints one PASS/FAIL line (straight to the terminal,
bypassing capture) and is asserted individually, so a red run names the
failing criterion directly.
"""

import subprocess
import sys

import pytest

from modkit.acceptance import NAMES, render_lines, run_all

N_CRITERIA = len(NAMES)


@pytest.fixture(scope="module")
def results():
    res = run_all()
    lines = render_lines(res)
    return ({r.index: r for r in res},
            {r.index: line for r, line in zip(res, lines)})


@pytest.mark.parametrize("index", range(1, N_CRITERIA + 1))
def test_criterion(results, index, capfd):
    by_index, lines = results
    with capfd.disabled():
        print(lines[index], flush=True)
    r = by_index[index]
    assert r.passed, f"criterion {index:02d} {r.name}: {r.detail}"


def test_verify_all_cli_is_reproducible():
    # two fresh processes must emit byte-identical machine output
    cmd = [sys.executable, "-m", "modkit", "verify-all", "--format",
           "machine"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
