import sys

from qinfo.cli import main

sys.exit(main())
