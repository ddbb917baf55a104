"""Parses every page of the fixture under every context with html5lib in strict mode."""
import json
import subprocess
import sys

import html5lib

cli, repo = sys.argv[1], sys.argv[2]


def run(*args):
    return subprocess.run([cli, "--repo", repo, *args], check=True, capture_output=True, text=True).stdout


contexts = [c["id"] for c in json.load(open(f"{repo}/contexts.json"))["contexts"]]
parser = html5lib.HTMLParser(strict=True)
checked = 0
for page in ["/course/intro", "/course/care"]:
    for ctx in [None, *contexts]:
        args = ["render", page, "--format", "html"] + (["--context", ctx] if ctx else [])
        html = run(*args)
        parser.parse("<!DOCTYPE html><html><head><title>t</title></head><body>" + html + "</body></html>")
        checked += 1
print(f"{checked} pages parsed")
