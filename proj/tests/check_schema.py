"""Validates render-tree JSON from the command-line tool against docs/rendertree.schema.json."""
import json
import subprocess
import sys

import jsonschema

cli, repo, schema_path = sys.argv[1], sys.argv[2], sys.argv[3]
schema = json.load(open(schema_path))
contexts = [c["id"] for c in json.load(open(f"{repo}/contexts.json"))["contexts"]]
checked = 0
for page in ["/course/intro", "/course/care", "/course"]:
    for ctx in [None, *contexts]:
        args = [cli, "--repo", repo, "render", page, "--format", "json"] + (["--context", ctx] if ctx else [])
        tree = json.loads(subprocess.run(args, check=True, capture_output=True, text=True).stdout)
        jsonschema.validate(tree, schema)
        checked += 1
print(f"{checked} render trees valid")
