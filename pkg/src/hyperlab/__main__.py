import sys

from .dsl_cli import main

sys.exit(main())
