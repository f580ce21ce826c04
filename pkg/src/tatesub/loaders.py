"""Readers that turn a `tatesub` settings file into a `dict` of sections.

Contents:
    SettingsFileError: a settings file that its format reader rejects.
    load: checks the path, picks a reader by extension, and checks that the
        result is a mapping.
    ini_to_dict, json_to_dict, module_to_dict, toml_to_dict, yaml_to_dict:
        one reader per format. Each expects an existing file.

To Do:


"""
from __future__ import annotations

# toml and yaml are optional extras, imported by their readers only.
import configparser
import importlib.util
import json
import logging
import sys
from collections.abc import Mapping
from typing import TYPE_CHECKING, Any

from . import setup, utilities

if TYPE_CHECKING:
    import pathlib
    from collections.abc import Hashable, MutableMapping

logger = logging.getLogger(__name__)


class SettingsFileError(ValueError):
    """A settings file exists but cannot be parsed."""


def load(
    source: pathlib.Path | str, /,
    **kwargs:  Any) -> MutableMapping[Hashable, Any]:
    """Reads the settings file at `source`.

    Args:
        source: path to an `ini`, `json`, `py`, `toml`, `yaml`, or `yml`
            file.
        kwargs: passed on to the format reader.

    Raises:
        FileNotFoundError: if `source` is not a file.
        TypeError: if the extension has no reader, or the file does not hold
            a mapping of sections.
        SettingsFileError: if the reader rejects the file contents.

    Returns:
        The sections of the file.

    """
    path = utilities._pathlibify(source)
    if not path.is_file():
        message = f'settings file {path} not found'
        raise FileNotFoundError(message)
    extension = path.suffix[1:]
    try:
        file_type = setup._FILE_EXTENSIONS[extension]
    except KeyError as error:
        message = f'settings files ending in .{extension} are not supported'
        raise TypeError(message) from error
    reader = globals()[setup._LOAD_FUNCTION(file_type)]
    logger.debug('reading %s settings from %s', file_type, path)
    try:
        contents = reader(path, **kwargs)
    except (ValueError, SyntaxError, configparser.Error) as error:
        message = f'settings file {path} could not be parsed: {error}'
        raise SettingsFileError(message) from error
    if not isinstance(contents, Mapping):
        message = f'settings file {path} must hold a mapping of sections'
        raise TypeError(message)
    return contents

def ini_to_dict(
    path: pathlib.Path, /,
    **kwargs:  Any) -> MutableMapping[Hashable, Any]:
    """Reads an `ini` file with case-sensitive option names."""
    parser = configparser.ConfigParser(dict_type = dict, **kwargs)
    parser.optionxform = lambda option: option
    parser.read(path)
    return {section: dict(parser[section]) for section in parser.sections()}

def json_to_dict(
    path: pathlib.Path, /,
    **kwargs:  Any) -> MutableMapping[Hashable, Any]:
    with open(path) as settings_file:
        return json.load(settings_file, **kwargs)

def module_to_dict(
    path: pathlib.Path, /,
    **kwargs:  Any) -> MutableMapping[Hashable, Any]:
    """Runs a Python module and returns its module-level `settings`.

    Raises:
        TypeError: if the module defines no `settings`.

    """
    spec = importlib.util.spec_from_file_location(path.stem, path, **kwargs)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    try:
        return getattr(module, setup._MODULE_SETTINGS_ATTRIBUTE)
    except AttributeError as error:
        message = (
            f'settings module {path} defines no '
            f'{setup._MODULE_SETTINGS_ATTRIBUTE!r}')
        raise TypeError(message) from error

def toml_to_dict(
    path: pathlib.Path, /,
    **kwargs:  Any) -> MutableMapping[Hashable, Any]:
    """Reads a `toml` file with `tomllib`, or the `toml` extra before 3.11."""
    if sys.version_info >= (3, 11):
        import tomllib
        with open(path, 'rb') as settings_file:
            return tomllib.load(settings_file, **kwargs)
    import toml
    return toml.load(path, **kwargs)

def yaml_to_dict(
    path: pathlib.Path, /,
    **kwargs:  Any) -> MutableMapping[Hashable, Any]:
    import yaml
    with open(path) as settings_file:
        try:
            return yaml.safe_load(settings_file)
        except yaml.YAMLError as error:
            message = f'invalid YAML: {error}'
            raise ValueError(message) from error
