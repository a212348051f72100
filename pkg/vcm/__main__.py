import sys

from vcm.main import main

sys.exit(main())
