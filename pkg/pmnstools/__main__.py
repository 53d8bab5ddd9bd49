import sys

from pmnstools.cli import main

sys.exit(main())
