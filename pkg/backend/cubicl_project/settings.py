import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()
# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', default='secret')

DEBUG = os.getenv('DEBUG') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',

    'characters',
    'moments',
]

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
}

# No database: every computation is in memory.
DATABASES = {}

# Enumerated families are cached on disk when CUBICL_CACHE_DIR is set.
if (CACHE_DIR := os.getenv('CUBICL_CACHE_DIR')):
    CACHES = {
        'default': {
            'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
            'LOCATION': CACHE_DIR,
            'TIMEOUT': None,
        }
    }
else:
    CACHES = {
        'default': {
            'BACKEND': 'django.core.cache.backends.dummy.DummyCache',
        }
    }

LOG_LEVEL = os.getenv('CUBICL_LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'characters': {'handlers': ['console'], 'level': LOG_LEVEL},
        'moments': {'handlers': ['console'], 'level': LOG_LEVEL},
        'cubicl_project': {'handlers': ['console'], 'level': LOG_LEVEL},
    },
}


# Internationalization

LANGUAGE_CODE = 'ru-RU'

TIME_ZONE = 'Europe/Moscow'

USE_I18N = True

USE_L10N = True

USE_TZ = True


TOOL_VERSION = '0.3.0'

# Dispatcher exit codes
EXIT_CODES = {
    'OK': 0,
    'VALIDATION': 2,
    'VERIFY': 3,
    'USAGE': 64,
}

COMMANDS = ('moment', 'lpoly', 'family', 'constants', 'verify', 'dds')

THREADS = int(os.getenv('CUBICL_THREADS', default=1))

# Seed of the equal-degree splitting in factorization
FACTOR_SEED = int(os.getenv('CUBICL_FACTOR_SEED', default=20240229))

# Truncation degrees of the Euler products
CUTOFFS = {
    'P': 14,
    'S': 12,
    'C': 12,
}

# Points s of the functional equation check
FE_SAMPLE_POINTS = (0.3, 0.5 + 0.7j, 0.8, 1.2j)

TOLERANCES = {
    'FE': 1e-9,
    'RH': 1e-8,
    'GAUSS': 1e-6,
    'ROOT_BACKWARD': 1e-10,
    'SERIES_INCREMENT': 1e-15,
    'MAIN_TERM_IDENTITY': 1e-12,
    'DDS_RESIDUAL': 1e-6,
}

SERIES_MAX_TERMS = 20000

# Growth classification of the region scan, per degree
GROWTH_SLOPE = 0.05

# Ratio of consecutive log-increments above which S is flagged
S_RATIO_LIMIT = 0.5

# First degree used in the c/n fit of the S increments
S_FIT_START = 4

# (m_F, m_N, m_D) ladder of the double Dirichlet series comparison
DDS_LADDER = ((1, 1, 1), (2, 1, 2), (3, 1, 3))

# Output settings
CSV_FLOAT_FORMAT = '.17g'
REPORT_FILEFORMAT = os.getenv(
    'CUBICL_REPORT_FORMAT', default='text/plain')  # 'application/pdf'
MANIFEST_SUFFIX = '.manifest.json'

# PDF fonts settings
BIG_FONT = 'Helvetica-Bold'
SMALL_FONT = 'Helvetica'
BIG_FONT_SIZE = 16
SMALL_FONT_SIZE = 9
