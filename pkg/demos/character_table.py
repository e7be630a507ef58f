"""Print an exact character table (through the CLI renderer) and check both orthogonality relations."""
import sys

from symquot.characters import character_table
from symquot.cli import main
from symquot.groups import build

spec = sys.argv[1] if len(sys.argv) > 1 else "quasidihedral:16"
main(["table", spec])
print("orthogonality holds:", character_table(build(spec)).check_orthogonality())
