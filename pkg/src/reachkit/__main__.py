import sys

from reachkit.cli import main

sys.exit(main())
