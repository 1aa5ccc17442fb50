import os
import sys

# run against the source tree even when the package is not installed
sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), os.pardir, "src")))
