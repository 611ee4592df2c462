import sys

from quiverhh.cli import main

sys.exit(main())
