import pytest

from proximity_lab.errors import DegenerateFitError
from proximity_lab.fitting import fit_exponent
from proximity_lab.seeding import derive_seed, splitmix64, stage_rng


def test_fit_exponent_of_a_square_law():
    fit = fit_exponent([(10, 100), (100, 10000)])
    assert fit.slope == pytest.approx(2.0)
    assert fit.residual == pytest.approx(0.0, abs=1e-9)


def test_fit_exponent_of_a_linear_law():
    fit = fit_exponent([(n, 2 * n - 1) for n in (10, 20, 40, 80, 160)])
    assert 0.95 <= fit.slope <= 1.05


@pytest.mark.parametrize("pairs", [[(10, 100)], [(10, 100), (10, 200)], [(10, 0), (20, 5)], []])
def test_fit_exponent_needs_two_sizes_and_positive_counts(pairs):
    with pytest.raises(DegenerateFitError):
        fit_exponent(pairs)


def test_stage_seeds_are_reproducible_and_independent():
    assert derive_seed(7, "growth/A") == derive_seed(7, "growth/A")
    assert derive_seed(7, "growth/A") != derive_seed(7, "growth/B")
    assert derive_seed(7, "growth/A") != derive_seed(8, "growth/A")
    assert stage_rng(1, "corpus").random() == stage_rng(1, "corpus").random()
    assert 0 <= splitmix64(0) < 2 ** 64
