"""Module entry point: python -m artinlab."""

import sys

from .cli import main

sys.exit(main())
