import os
import sys

# make tools/ (fixture regeneration) importable from the golden tests
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
