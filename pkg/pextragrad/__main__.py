import sys

from pextragrad.cli import main

sys.exit(main())
