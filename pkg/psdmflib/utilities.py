"""
Provides helper utilities.
"""

import copy

from . import exceptions

TRUE_STRINGS = ('1', 'true', 'yes', 'on')
FALSE_STRINGS = ('0', 'false', 'no', 'off')


def merge_dicts(a, b):
    """
    Merges dicts a and b recursively into a new dict, values from b win.

    :param dict a: (required).
    :param dict b: (required).
    """
    result = copy.deepcopy(a)

    for key, value in b.items():
        if isinstance(value, dict):
            result[key] = merge_dicts(a.get(key, {}), value)
        else:
            result[key] = value

    return result


def to_bool(value, key_path='value'):
    """
    Converts booleans and their usual string spellings to bool.

    :param value: (required). Value to convert.
    :param string key_path: (optional). Used in the error message.
    """
    if isinstance(value, bool):
        return value

    text = str(value).strip().lower()

    if text in TRUE_STRINGS:
        return True
    if text in FALSE_STRINGS:
        return False

    raise exceptions.ConfigError(key_path, f'"{value}" is not a boolean')


def parse_list(value, cast, key_path='value'):
    """
    Converts "100, 50", "[100, 50]" or an iterable to a list of cast values.

    :param value: (required). Value to convert.
    :param cast: (required). Item type, e.g. int or float.
    :param string key_path: (optional). Used in the error message.
    """
    if isinstance(value, str):
        value = [item for item in value.strip().strip('[]()').split(',') if item.strip()]

    try:
        return [cast(item) if not isinstance(item, str) else cast(item.strip()) for item in value]
    except (TypeError, ValueError):
        raise exceptions.ConfigError(key_path, f'"{value}" is not a list of {cast.__name__} values')


def parse_override(text):
    """
    Converts "section.key=value" into {'section': {'key': 'value'}}.

    :param string text: (required). Override expression.
    """
    path, sep, value = text.partition('=')
    section, dot, key = path.strip().partition('.')

    if not sep or not dot or not section or not key.strip():
        raise exceptions.ConfigError(text, 'overrides must look like section.key=value')

    return {section: {key.strip(): value.strip()}}
