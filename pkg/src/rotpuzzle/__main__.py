"""``python -m rotpuzzle`` == the ``rotpuzzle`` command."""
import sys

from .cli import main

sys.exit(main())
