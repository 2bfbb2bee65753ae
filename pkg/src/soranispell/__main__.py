import sys

from soranispell.cli import main

sys.exit(main())
