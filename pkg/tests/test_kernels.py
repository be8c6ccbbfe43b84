import pytest

from oracles import all_words, des_counts, has_abab, stirling_literal
from qstirling import kernels
from qstirling.combinatorics import multisets_up_to

BACKENDS = [kernels.python] + ([kernels.compiled] if kernels.compiled else [])


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("M", multisets_up_to(6), ids=str)
def test_kernel_against_brute_force(impl, M):
    words = all_words(M.mult)
    for mode, keep in [(kernels.ALL, lambda w: True),
                       (kernels.QUASI_STIRLING, lambda w: not has_abab(w)),
                       (kernels.STIRLING, stirling_literal)]:
        expected = des_counts([w for w in words if keep(w)])
        got = impl.descent_distribution(M.mult, mode)
        assert len(got) == M.K + 1
        assert {d: c for d, c in enumerate(got) if c} == expected


@pytest.mark.skipif(kernels.compiled is None, reason="extension not built")
def test_backends_agree_up_to_8():
    for M in multisets_up_to(8):
        for mode in (kernels.QUASI_STIRLING, kernels.STIRLING):
            assert (kernels.compiled.descent_distribution(M.mult, mode)
                    == kernels.python.descent_distribution(M.mult, mode))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_bad_mode(impl):
    with pytest.raises(ValueError):
        impl.descent_distribution((1, 1), 7)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
