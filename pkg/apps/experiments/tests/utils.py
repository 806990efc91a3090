import json
from pathlib import Path

from django.conf import settings

from apps.experiments.services import load_config, read_manifest

CONFIG_DIR = Path(settings.BASE_DIR) / "configs"
IDEAL = CONFIG_DIR / "ideal.json"
EXPERIMENTAL_REGIME = CONFIG_DIR / "paper_regime.json"


def ideal_config(**overrides):
    return load_config(IDEAL, **overrides)


def experimental_regime_config(**overrides):
    return load_config(EXPERIMENTAL_REGIME, **overrides)


def write_manifest(directory, noise=None, **changes) -> Path:
    """Ideal manifest with top-level ``changes`` and ``noise`` entries replaced, written to ``directory``."""
    document = read_manifest(IDEAL)
    document.update(changes)
    if noise:
        document["noise"] = {**document["noise"], **noise}
    path = Path(directory) / "manifest.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return path
