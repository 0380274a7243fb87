import sys

from hermrank.cli import main

sys.exit(main())
