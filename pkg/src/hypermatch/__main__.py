import sys

from hypermatch.cli import main

sys.exit(main())
