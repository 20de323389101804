import ast
import configparser
import argparse


def get_config_section(filenames, section):
    """Return a dictionnary of the section of `.ini` config files. Every value
    in the `.ini` will be litterally evaluated, such that `expect=[0, 9, 16]`
    actually returns a list and `lambda="7/2"` a string.
    """
    parser = configparser.ConfigParser(interpolation=configparser.ExtendedInterpolation())
    parser.optionxform = str
    files = parser.read(filenames)
    if len(files) == 0:
        raise ValueError("Config files not found: {}".format(filenames))
    if not parser.has_section(section):
        raise ValueError("Section [{}] not found in {}".format(section, filenames))
    dict_session = dict(parser[section])
    try:
        dict_session = {k: ast.literal_eval(v) for k, v in dict_session.items()}
    except (ValueError, SyntaxError) as e:
        raise ValueError("Cannot evaluate a value of section [{}]: {}".format(section, e))
    return dict_session


def check_unknown_keys(dictionnary, known, source="config"):
    """Raise if `dictionnary` holds keys that are not argparse destinations."""
    unknown = sorted(set(dictionnary) - set(known))
    if len(unknown) > 0:
        raise ValueError("Unknown {} keys: {}".format(source, ", ".join(unknown)))


def check_bounds(value, type=float, lb=-float("inf"), ub=float("inf"),
                 is_inclusive=True, name="value"):
    """Argparse bound checker"""
    try:
        value = type(value)
    except ValueError:
        raise argparse.ArgumentTypeError("{}={} is not a valid {}".format(name, value, type.__name__))
    is_in_bound = lb <= value <= ub if is_inclusive else lb < value < ub
    if not is_in_bound:
        raise argparse.ArgumentTypeError("{}={} outside of bounds ({},{})".format(name, value, lb, ub))
    return value


def float_list(text):
    """Argparse type for comma separated reals, e.g. "0,9,16"."""
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("Expected comma separated numbers, got {}".format(text))


class FormatterNoDuplicate(argparse.ArgumentDefaultsHelpFormatter):
    """Formatter overriding `argparse.ArgumentDefaultsHelpFormatter` to show
    `-L, --log-level LOG_LEVEL` instead of `-L LOG_LEVEL, --log-level LOG_LEVEL`

    Note
    ----
    - code modified from cPython: https://github.com/python/cpython/blob/master/Lib/argparse.py
    """

    def _format_action_invocation(self, action):
        # no args given
        if not action.option_strings:
            default = self._get_default_metavar_for_positional(action)
            metavar, = self._metavar_formatter(action, default)(1)
            return metavar
        else:
            parts = []
            # if the Optional doesn't take a value, format is:
            #    -s, --long
            if action.nargs == 0:
                parts.extend(action.option_strings)
            # if the Optional takes a value, format is:
            #    -s ARGS, --long ARGS
            else:
                default = self._get_default_metavar_for_optional(action)
                args_string = self._format_args(action, default)
                for option_string in action.option_strings:
                    # don't store the DEFAULT
                    parts.append('%s' % (option_string))
                # store DEFAULT for the last one
                parts[-1] += ' %s' % args_string
            return ', '.join(parts)
