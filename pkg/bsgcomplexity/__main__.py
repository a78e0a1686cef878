import sys

from bsgcomplexity.cli.main import main

sys.exit(main())
