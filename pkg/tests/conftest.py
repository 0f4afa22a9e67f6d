import sys
from pathlib import Path

# allow sibling helper modules (treeutil) to be imported from test files
sys.path.insert(0, str(Path(__file__).parent))
