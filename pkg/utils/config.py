import logging
import os
from pathlib import Path

import yaml

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.yaml"

DEFAULTS = {
    "log_level": "INFO",
    "precision": 2,
    "default_k": 2,
    "compare_k_values": [1, 2, 3, "inf"],
    "curves": {"k_max": 100, "grid_size": 100},
    "role_schemes": {
        "uniform": {"first": 1, "second": 1, "middle": 1, "corresponding": 1},
    },
    "tables": {},
}


def load_config(path=None):
    """Load config.yaml, then let MFC_* environment variables override it.

    An explicitly named file (argument or MFC_CONFIG) must exist; the
    default file is optional and falls back to built-in defaults.
    """
    explicit = path or os.getenv("MFC_CONFIG")
    config_path = Path(explicit) if explicit else CONFIG_PATH

    config = dict(DEFAULTS)
    if config_path.exists():
        with open(config_path, "r", encoding="utf-8") as file:
            config.update(yaml.safe_load(file) or {})
    elif explicit:
        raise FileNotFoundError(f"Config file not found: {config_path}")
    else:
        logger.warning("⚠ %s not found, using built-in defaults", config_path)

    if os.getenv("MFC_LOG_LEVEL"):
        config["log_level"] = os.getenv("MFC_LOG_LEVEL")
    if os.getenv("MFC_PRECISION"):
        config["precision"] = int(os.getenv("MFC_PRECISION"))
    return config


def load_role_scheme(source, config=None):
    """Resolve a role-weight mapping from a scheme name in config or a YAML file."""
    config = config or load_config()
    schemes = config.get("role_schemes", {})
    if source in schemes:
        return dict(schemes[source])

    scheme_path = Path(source)
    if not scheme_path.exists():
        raise FileNotFoundError(f"Role scheme {source!r} is neither a configured scheme nor a file")
    with open(scheme_path, "r", encoding="utf-8") as file:
        scheme = yaml.safe_load(file)
    if not isinstance(scheme, dict):
        raise ValueError(f"Role scheme file {scheme_path} must contain a mapping of role to weight")
    return scheme
