import itertools

import numpy as np
import pytest

from qcomplement import pauli_bases


@pytest.fixture
def zxy():
    return pauli_bases()


def naive_partial_trace(matrix, dims, keep):
    """Index-by-index contraction, independent of the einsum path."""
    dims = list(dims)
    keep = sorted(keep)
    traced = [i for i in range(len(dims)) if i not in keep]
    kdims = [dims[i] for i in keep]
    tdims = [dims[i] for i in traced]
    dk = int(np.prod(kdims)) if kdims else 1
    out = np.zeros((dk, dk), dtype=complex)

    def flat(idx):
        f = 0
        for i, d in zip(idx, dims):
            f = f * d + i
        return f

    kept_tuples = list(itertools.product(*[range(d) for d in kdims]))
    for r, kr in enumerate(kept_tuples):
        for c, kc in enumerate(kept_tuples):
            total = 0j
            for t in itertools.product(*[range(d) for d in tdims]):
                row = [0] * len(dims)
                col = [0] * len(dims)
                for pos, i in enumerate(keep):
                    row[i], col[i] = kr[pos], kc[pos]
                for pos, i in enumerate(traced):
                    row[i] = col[i] = t[pos]
                total += matrix[flat(row), flat(col)]
            out[r, c] = total
    return out


def random_density(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
