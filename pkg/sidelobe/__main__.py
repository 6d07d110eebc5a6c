import sys

from sidelobe.main import main

sys.exit(main())
