#!/usr/bin/env python3
"""Converts a GML graph file (node/edge blocks with label and value
attributes) to the toolkit's edge-list CSV: source,target,weight."""

import re
import sys


def main(path: str) -> None:
    text = open(path).read()
    labels = {}
    for block in re.findall(r"node\s*\[(.*?)\]", text, re.S):
        node_id = re.search(r"\bid\s+(\d+)", block)
        label = re.search(r'\blabel\s+"([^"]*)"', block)
        if node_id:
            key = int(node_id.group(1))
            labels[key] = label.group(1) if label else str(key)

    print("# source,target,weight")
    for block in re.findall(r"edge\s*\[(.*?)\]", text, re.S):
        source = int(re.search(r"\bsource\s+(\d+)", block).group(1))
        target = int(re.search(r"\btarget\s+(\d+)", block).group(1))
        value = re.search(r"\bvalue\s+([0-9.]+)", block)
        weight = value.group(1) if value else "1"
        print(f"{labels[source]},{labels[target]},{weight}")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit("usage: gml_to_csv.py <graph.gml>")
    main(sys.argv[1])
