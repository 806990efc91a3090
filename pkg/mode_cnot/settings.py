"""
Django settings for the Mode CNOT project.

Django hosts the configuration layer, the management commands that run the experiments,
and the test runner. There are no HTTP routes and no database tables.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/stable/ref/settings/
"""

import os
from pathlib import Path

import environ

# Build paths inside the project like this: BASE_DIR / "subdir".
BASE_DIR = Path(__file__).resolve().parent.parent

env = environ.Env()
env.read_env(os.path.join(BASE_DIR, ".env"))

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = env("SECRET_KEY", default="django-insecure-mode-cnot-local-only")

DEBUG = env.bool("DEBUG", default=False)

# Application definition

# Put your third-party apps here
THIRD_PARTY_APPS = [
    "rest_framework",
]

# Put your project-specific apps here
PROJECT_APPS = [
    "apps.utils",
    "apps.mode_core.apps.ModeCoreConfig",
    "apps.logical.apps.LogicalConfig",
    "apps.tomo.apps.TomoConfig",
    "apps.counts.apps.CountsConfig",
    "apps.experiments.apps.ExperimentsConfig",
]

INSTALLED_APPS = THIRD_PARTY_APPS + PROJECT_APPS

# No DATABASES: nothing is persisted.

LANGUAGE_CODE = "en-us"
USE_I18N = True

# DRF is only used for its serializers (experiment manifests and output schemas).
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
}

# Experiment setup

# The manifest used when a command is run without --config.
CNOT_EXPERIMENT_CONFIG = env("CNOT_EXPERIMENT_CONFIG", default=str(BASE_DIR / "configs" / "ideal.json"))
# Directory the commands write to when neither the manifest nor --output names one.
CNOT_OUTPUT_DIR = env("CNOT_OUTPUT_DIR", default=str(BASE_DIR / "output"))

# Maximum-likelihood tomography
CNOT_MLE_MAX_ITERATIONS = env.int("CNOT_MLE_MAX_ITERATIONS", default=10_000)
CNOT_MLE_TOLERANCE = env.float("CNOT_MLE_TOLERANCE", default=1e-10)

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": '[{asctime}] {levelname} "{name}" {message}',
            "style": "{",
            "datefmt": "%d/%b/%Y %H:%M:%S",
        },
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "verbose"},
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": env("DJANGO_LOG_LEVEL", default="INFO"),
        },
        "mode_cnot": {
            "handlers": ["console"],
            "level": env("CNOT_LOG_LEVEL", default="INFO"),
        },
        "apps": {
            "handlers": ["console"],
            "level": env("CNOT_LOG_LEVEL", default="INFO"),
        },
    },
}
