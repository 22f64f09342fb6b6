"""Allow ``python -m rasbench``."""
import sys

from .harness.cli import main

sys.exit(main())
