import sys

from bsarr.cli import main

sys.exit(main())
