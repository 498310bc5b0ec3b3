"""Instance files and the command-line front end."""

import json
import tempfile
from pathlib import Path

from nullsum.cli import main
from nullsum.instance import SumsetInstance

spec = {
    "label": "gf7-distinct-values",
    "carrier": {"kind": "prime-field", "p": 7},
    "mode": "T_eq15",
    "theorem": "T1.3ii",
    "subsets": [[0, 1, 2, 3], [0, 1, 2, 3], [1, 2, 4, 6]],
    "polys": [[0, 1], [3, 1], [5, 1]],
}
inst = SumsetInstance.from_json(spec)
print(inst.n, inst.ks, inst.degree)

path = Path(tempfile.mkdtemp()) / "instance.json"
path.write_text(json.dumps(spec))
main(["verify", "--input", str(path)])
main(["dq", "--q", "15", "--x", "7"])
main(["coeff", "--delta", "1", "--ks", "2,2", "--ms", "0,1", "--matrix", "[[1,2],[3,4]]", "--oracle"])
