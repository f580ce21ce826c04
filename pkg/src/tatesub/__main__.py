"""Runs `tatesub` as `python -m tatesub`."""

from __future__ import annotations

from .cli import main

raise SystemExit(main())
