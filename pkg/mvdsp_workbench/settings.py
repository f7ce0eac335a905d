"""
Django settings for the MVDSP workbench project.

The project has no web surface: Django provides configuration, logging,
management commands and the test runner for the solver apps.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Solver tunables (override through the environment or a .env file)
MVDSP_MAX_ITERATIONS = int(os.getenv("MVDSP_MAX_ITERATIONS", 1_000_000))
MVDSP_EXHAUSTIVE_COLORING_BOUND = int(os.getenv("MVDSP_EXHAUSTIVE_COLORING_BOUND", 4096))
MVDSP_COVERING_SUBSET_BOUND = int(os.getenv("MVDSP_COVERING_SUBSET_BOUND", 500_000))
MVDSP_PATH_CAP = int(os.getenv("MVDSP_PATH_CAP", 10_000))
MVDSP_BENCH_WORKERS = int(os.getenv("MVDSP_BENCH_WORKERS", 4))
MVDSP_MAX_COLORS = 62
MVDSP_LOG_LEVEL = os.getenv("MVDSP_LOG_LEVEL", "INFO")

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "mvdsp-workbench-local-key")

DEBUG = os.getenv("DJANGO_DEBUG", "False") == "True"

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'graphs',
    'solvers',
    'gadgets',
]

# No models are persisted; the test runner only needs SimpleTestCase.
DATABASES = {}

REST_FRAMEWORK = {
    "UNAUTHENTICATED_USER": None,
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        "graphs": {"handlers": ["console"], "level": MVDSP_LOG_LEVEL, "propagate": False},
        "solvers": {"handlers": ["console"], "level": MVDSP_LOG_LEVEL, "propagate": False},
        "gadgets": {"handlers": ["console"], "level": MVDSP_LOG_LEVEL, "propagate": False},
    },
}

# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_TZ = True

USE_I18N = False

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
