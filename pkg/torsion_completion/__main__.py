import sys

from torsion_completion.run import main

if __name__ == "__main__":
    sys.exit(main())
