import sys

from rankgames.cli import main

sys.exit(main())
