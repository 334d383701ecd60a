#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging

from wigner_streams import doc_check
from wigner_streams.checks import check_arguments, context_prefix


def test_checks_passive_warns_and_calls(caplog):
    @doc_check(active=False, K_bar="positive")
    def _test_func(K_bar):
        return K_bar * 2

    with caplog.at_level(logging.WARNING, logger="wigner_streams"):
        assert _test_func(-1.0) == -2.0

    assert "K_bar" in caplog.text
    assert "positive" in caplog.text


def test_checks_passive_silent_on_success(caplog):
    @doc_check(active=False, K_bar="positive")
    def _test_func(K_bar):
        return K_bar

    with caplog.at_level(logging.WARNING, logger="wigner_streams"):
        assert _test_func(1.0) == 1.0

    assert not caplog.records


def test_check_arguments_missing_parameter(caplog):
    with caplog.at_level(logging.WARNING, logger="wigner_streams"):
        results = check_arguments({"K_bar": "positive", "H": "nonnegative"}, {"K_bar": 1.0})

    assert set(results) == {"K_bar"}
    assert results["K_bar"].result
    assert "H" in caplog.text


def test_context_prefix_names_caller():
    prefix = context_prefix()
    assert prefix.startswith("(wigner-streams :: test_context_prefix_names_caller:")
