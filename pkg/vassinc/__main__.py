import sys

from vassinc.cli import main

sys.exit(main())
