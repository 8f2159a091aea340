import doctest

from bbcenter import series


def test_series_doctests():
    failures, _ = doctest.testmod(series)
    assert failures == 0
