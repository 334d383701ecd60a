#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from dataclasses import dataclass
from functools import wraps
from inspect import FrameInfo, signature, stack
from pathlib import Path
from typing import Any, Callable, Dict, Optional
import logging

import numpy as np

from wigner_streams.exceptions import PreconditionError

LOGGER = logging.getLogger("wigner_streams")


def _is_power_of_two(value: Any) -> bool:
    value = np.asarray(value)
    if not np.issubdtype(value.dtype, np.integer):
        return False
    return bool(np.all((value > 0) & ((value & (value - 1)) == 0)))


RULES: Dict[str, Callable[[Any], bool]] = {
    "positive": lambda value: bool(np.all(np.asarray(value) > 0)),
    "nonnegative": lambda value: bool(np.all(np.asarray(value) >= 0)),
    "nonzero": lambda value: bool(np.all(np.asarray(value) != 0)),
    "finite": lambda value: bool(np.all(np.isfinite(np.asarray(value)))),
    "probability": lambda value: bool(
        np.all((np.asarray(value) >= 0) & (np.asarray(value) <= 1))
    ),
    "power_of_two": _is_power_of_two,
}


@dataclass
class RuleResult:
    """Describes the result of checking one argument against one rule.
    Includes the parameter name, the rule applied, the value seen at
    runtime and the conclusive result.
    """

    parameter: str
    rule: str
    result: bool
    actual: Any

    def __str__(self: "RuleResult") -> str:
        return "{!s} ({}): rule: ({!s}), actual: ({!r})".format(
            self.parameter, "OK" if self.result else "FAIL", self.rule, self.actual
        )


def _get_context_frame() -> Optional[FrameInfo]:
    """Return the first frame on the stack that lives outside this package.

    :return: The frame of the caller, or `None` if every frame is internal.
    :rtype: Optional[FrameInfo]
    """
    package = Path(__file__).parts[:-1]
    for frame in stack(0):
        if Path(frame.filename).parts[:-1] != package:
            return frame

    return None


def context_prefix() -> str:
    """Build the `(wigner-streams :: caller:line)` prefix used by every log message.

    :return: The prefix naming the calling frame.
    :rtype: str
    """
    _frame = _get_context_frame()
    if _frame is None:
        return "(wigner-streams)"

    return "(wigner-streams :: {!s}:{!s})".format(_frame.function, _frame.lineno)


def _check_value(rule: str, value: Any) -> bool:
    """Check a value against a named rule.

    :param rule: The name of the rule, one of the keys of `RULES`.
    :type rule: str
    :param value: The value to check, scalars and arrays are both accepted.
    :type value: Any
    :raises KeyError: If the rule is unknown.
    :return: The result of the check.
    :rtype: bool
    """
    if rule not in RULES:
        raise KeyError("{!s} unknown rule: `{!s}`".format(context_prefix(), rule))

    try:
        return RULES[rule](value)
    except TypeError:
        return False


def check_arguments(
    rules: Dict[str, str], arguments: Dict[str, Any]
) -> Dict[str, RuleResult]:
    """Check bound arguments against their rules.

    :param rules: Mapping from parameter name to rule name.
    :type rules: Dict[str, str]
    :param arguments: Mapping from parameter name to the value passed.
    :type arguments: Dict[str, Any]
    :return: The result for every ruled parameter that was passed.
    :rtype: Dict[str, RuleResult]
    """
    results = {}
    for parameter, rule in rules.items():
        if parameter not in arguments:
            LOGGER.warning(
                "{!s} parameter: `{!s}` has a rule but was not passed".format(
                    context_prefix(), parameter
                )
            )
            continue

        value = arguments[parameter]
        results[parameter] = RuleResult(
            parameter=parameter,
            rule=rule,
            result=_check_value(rule, value),
            actual=value,
        )

    if LOGGER.isEnabledFor(logging.DEBUG):
        LOGGER.debug(
            "{!s} check arguments results was: `{!s}`".format(
                context_prefix(),
                ", ".join(str(result) for result in results.values()),
            )
        )
    return results


def doc_check(active: bool = True, **rules: str):
    """Decorate a function so its arguments are checked before every call.

    In active mode a failed rule raises `PreconditionError`, in passive mode
    the failure is logged and the call goes ahead.

    :param active: Raise on failure instead of warning.
    :type active: bool
    :param rules: Mapping from parameter name to rule name.
    :type rules: str
    """
    for rule in rules.values():
        if rule not in RULES:
            raise KeyError("unknown rule: `{!s}`".format(rule))

    def decorator(func):
        _signature = signature(func)

        @wraps(func)
        def wrapper(*args, **kwargs):
            bound = _signature.bind(*args, **kwargs)
            bound.apply_defaults()

            for parameter, rule_result in check_arguments(
                rules, bound.arguments
            ).items():
                if rule_result.result:
                    continue

                message = "{!s} parameter: `{!s}` of `{!s}` was not {!s}: was actually `{!r}`".format(
                    context_prefix(),
                    parameter,
                    func.__name__,
                    rule_result.rule,
                    rule_result.actual,
                )
                if active:
                    raise PreconditionError(
                        message,
                        parameter=parameter,
                        value=rule_result.actual,
                        rule=rule_result.rule,
                    )

                LOGGER.warning(message)

            return func(*args, **kwargs)

        wrapper.rules = dict(rules)
        return wrapper

    return decorator
