import os
import sys

# scripts and namespace packages are imported from the repository root
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
