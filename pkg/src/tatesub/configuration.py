"""Command-line defaults for `tatesub`, read from a `dict` or settings file.

Contents:
    Settings: sections of options (series order, subgroup bound, verify range,
        output format) layered over package defaults.

To Do:


"""
from __future__ import annotations

import contextlib
import dataclasses
import functools
import logging
import pathlib
from collections.abc import Hashable, Iterator, Mapping, MutableMapping
from typing import Any, ClassVar

from . import loaders, setup, utilities

logger = logging.getLogger(__name__)


@dataclasses.dataclass
class Settings(MutableMapping):
    """Options for the `tatesub` commands, grouped in sections.

    Build one with `Settings.create`, passing either a path to a settings
    file (`ini`, `json`, `py`, `toml`, `yaml`, or `yml`) or a mapping of
    sections. Options missing from the source are read from `defaults`.

    ```py
    settings = Settings.create('tatesub.toml')
    settings.series_order
    ```

    Args:
        contents: sections of options. Defaults to an empty `dict`.
        name: section name for nested `Settings`; None at the top level.

    Attributes:
        defaults: the package defaults, merged under `contents` section by
            section when a top-level instance is built.

    """

    contents: setup.GenericDict = dataclasses.field(default_factory = dict)
    name: str | None = None
    defaults: ClassVar[setup.GenericDict] = {
        'series': {
            'order': setup._DEFAULT_SERIES_ORDER,
            'kinds': list(setup._SERIES_KINDS)},
        'subgroups': {'bound': setup._DEFAULT_SUBGROUP_BOUND},
        'verify': {'max': setup._DEFAULT_VERIFY_MAX},
        'output': {'json': False}}

    def __post_init__(self) -> None:
        """Merges defaults at the top level and wraps nested sections."""
        with contextlib.suppress(AttributeError):
            super().__post_init__()
        if self.name is None:
            self.contents = self._with_defaults(self.contents)
        if setup._RECURSIVE_SETTINGS:
            self.contents = {
                key: self._as_section(key, value)
                for key, value in self.contents.items()}

    """ Properties """

    @property
    def series_order(self) -> int:
        """Truncation order for `series` and the `verify` series check."""
        return self._integer('series', 'order')

    @property
    def series_kinds(self) -> tuple[str, ...]:
        """Series printed by `series` when none are named."""
        value = self.option('series', 'kinds')
        kinds = (value,) if isinstance(value, str) else value
        if not isinstance(kinds, (list, tuple)) or not kinds:
            message = f'series.kinds must be a list of series, got {value!r}'
            raise TypeError(message)
        unknown = [kind for kind in kinds if kind not in setup._SERIES_KINDS]
        if unknown:
            message = (
                f'series.kinds has unknown series {unknown}, expected some '
                f'of {list(setup._SERIES_KINDS)}')
            raise ValueError(message)
        return tuple(kinds)

    @property
    def subgroup_bound(self) -> int:
        """Largest N accepted by the per-N commands."""
        return self._integer('subgroups', 'bound')

    @property
    def verify_max(self) -> int:
        """N_max for `verify` when none is given."""
        return self._integer('verify', 'max')

    @property
    def json_output(self) -> bool:
        """Whether commands print JSON unless told otherwise."""
        value = self.option('output', 'json')
        if not isinstance(value, bool):
            message = f'output.json must be true or false, got {value!r}'
            raise ValueError(message)
        return value

    """ Class Methods """

    @functools.singledispatchmethod
    @classmethod
    def create(
        cls,
        source: Any, /,
        parameters: setup.GenericDict | None = None,
        **kwargs:  Any) -> Settings:
        """Builds `Settings` from a mapping or a settings file path.

        Args:
            source: a mapping of sections, or a `str` or `pathlib.Path` to a
                settings file.
            parameters: keyword arguments for the `Settings` constructor.
            kwargs: passed on to the file loader (such as `encoding`).

        Raises:
            TypeError: if `source` is neither a mapping nor a path.

        Returns:
            Settings: built from `source`.

        """
        message = (
            f'settings source must be a path or mapping, got '
            f'{type(source).__name__}')
        raise TypeError(message)

    @create.register(Mapping)
    @classmethod
    def from_dict(
        cls,
        source: setup.GenericDict, /,
        parameters: setup.GenericDict | None = None,
        **kwargs:  Any) -> Settings:
        """Builds `Settings` from a mapping of sections."""
        return cls(dict(source), **(parameters or {}))

    @create.register(str)
    @create.register(pathlib.Path)
    @classmethod
    def from_file(
        cls,
        source: str | pathlib.Path, /,
        parameters: setup.GenericDict | None = None,
        **kwargs:  Any) -> Settings:
        """Builds `Settings` from a settings file.

        `ini` values arrive as strings and are converted with
        `utilities._typify`; the other formats keep their own types.

        Raises:
            FileNotFoundError: if `source` is not a file.
            TypeError: if no loader handles the file extension.

        """
        path = utilities._pathlibify(source)
        contents = loaders.load(path, **kwargs)
        if setup._INFER_TYPES[setup._FILE_EXTENSIONS[path.suffix[1:]]]:
            contents = {
                key: (
                    {option: utilities._typify(raw) for option, raw in value.items()}
                    if isinstance(value, Mapping) else utilities._typify(value))
                for key, value in contents.items()}
        logger.info('settings read from %s', path)
        return cls(dict(contents), **(parameters or {}))

    """ Instance Methods """

    def option(self, section: Hashable, key: Hashable) -> Any:
        """Returns option `key` of `section`, falling back to `defaults`.

        Raises:
            KeyError: if neither the stored settings nor `defaults` hold it.

        """
        value = setup._MISSING
        with contextlib.suppress(KeyError, TypeError):
            value = self.contents[section][key]
        if value is setup._MISSING:
            with contextlib.suppress(KeyError):
                value = self.defaults[section][key]
        if value is setup._MISSING:
            message = f'no option {key} in settings section {section}'
            raise KeyError(message)
        return value

    """ Private Methods """

    def _integer(self, section: str, key: str) -> int:
        value = self.option(section, key)
        if isinstance(value, bool) or not isinstance(value, int):
            message = f'{section}.{key} must be an integer, got {value!r}'
            raise TypeError(message)
        return value

    def _as_section(self, key: Hashable, value: Any) -> Any:
        if isinstance(value, MutableMapping) and not isinstance(value, Settings):
            return self.__class__(dict(value), name = key)
        return value

    def _with_defaults(
        self,
        contents: setup.GenericDict) -> setup.GenericDict:
        merged = {
            section: dict(options)
            for section, options in self.defaults.items()}
        for key, value in contents.items():
            if isinstance(value, Mapping) and key in merged:
                merged[key].update(value)
            else:
                merged[key] = value
        return merged

    """ Dunder Methods """

    def __getitem__(self, key: Hashable) -> Any:
        return self.contents[key]

    def __setitem__(self, key: Hashable, value: Any) -> None:
        """Updates section `key` with a mapping, or stores a plain option."""
        if not isinstance(value, Mapping):
            self.contents[key] = value
        elif isinstance(self.contents.get(key), Settings):
            self.contents[key].contents.update(value)
        else:
            self.contents[key] = self._as_section(key, dict(value))
        return

    def __delitem__(self, key: Hashable) -> None:
        del self.contents[key]
        return

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.contents)

    def __len__(self) -> int:
        return len(self.contents)
