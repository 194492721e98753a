import sys

from staircase_gaps.cli import main

sys.exit(main())
