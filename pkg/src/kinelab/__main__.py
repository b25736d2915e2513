import sys

from kinelab.cli import main

sys.exit(main())
