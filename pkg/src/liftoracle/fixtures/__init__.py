"""Reference data shipped with the package (module lists and table rows)."""

import json
from importlib import resources

NAMES = ("d125_w0_9_modules", "c125_c4_modules", "d125_w0_9_dtable")


def load_fixture(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {NAMES}")
    return json.loads(resources.files(__name__).joinpath(f"{name}.json").read_text())
