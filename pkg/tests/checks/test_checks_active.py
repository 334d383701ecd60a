#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from wigner_streams import PreconditionError, doc_check


def test_checks_active_passing_arguments():
    @doc_check(K_bar="positive", H="nonnegative")
    def _test_func(K_bar, H=0.0):
        """Adds two numbers.

        :param K_bar: the first number
        :type K_bar: float
        :param H: the second number
        :type H: float
        """
        return K_bar + H

    assert _test_func(2.0) == 2.0
    assert _test_func(2.0, H=1.0) == 3.0


def test_checks_active_failing_argument():
    @doc_check(K_bar="positive", H="nonnegative")
    def _test_func(K_bar, H=0.0):
        return K_bar + H

    with pytest.raises(PreconditionError) as error:
        _test_func(-1.0)

    assert error.value.parameter == "K_bar"
    assert error.value.rule == "positive"
    assert error.value.value == -1.0


def test_checks_active_default_is_checked():
    @doc_check(H="positive")
    def _test_func(H=0.0):
        return H

    with pytest.raises(PreconditionError):
        _test_func()


def test_checks_active_arrays():
    @doc_check(K_bar="positive")
    def _test_func(K_bar):
        return K_bar

    assert np.array_equal(_test_func(np.array([1.0, 2.0])), np.array([1.0, 2.0]))
    with pytest.raises(PreconditionError):
        _test_func(np.array([1.0, 0.0]))


def test_checks_active_finite():
    @doc_check(omega="finite")
    def _test_func(omega):
        return omega

    assert _test_func(1.0 + 2.0j) == 1.0 + 2.0j
    with pytest.raises(PreconditionError):
        _test_func(complex(float("nan"), 0.0))


def test_checks_active_power_of_two():
    @doc_check(n="power_of_two")
    def _test_func(n):
        return n

    assert _test_func(64) == 64
    for value in (48, 0, -4, 32.0):
        with pytest.raises(PreconditionError):
            _test_func(value)


def test_checks_active_non_numeric_fails():
    @doc_check(alpha="probability")
    def _test_func(alpha):
        return alpha

    assert _test_func(0.5) == 0.5
    with pytest.raises(PreconditionError):
        _test_func("half")


def test_checks_active_unknown_rule():
    with pytest.raises(KeyError):

        @doc_check(K_bar="sensible")
        def _test_func(K_bar):
            return K_bar


def test_checks_active_rules_attribute():
    @doc_check(K_bar="positive")
    def _test_func(K_bar):
        """Returns its argument."""
        return K_bar

    assert _test_func.rules == {"K_bar": "positive"}
    assert _test_func.__name__ == "_test_func"
    assert _test_func.__doc__ == "Returns its argument."
