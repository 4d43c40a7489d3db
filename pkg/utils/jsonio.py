import json

from pathlib2 import Path


def save(data, root):
    root = Path(root)
    if not root.parent.exists():
        root.parent.mkdir(parents=True)
    with open(str(root), 'w') as f:
        json.dump(data, f, indent=4, separators=(',', ': '))


def load(file):
    file = Path(file)
    assert file.exists(), f'"{str(file)}" does not exist'
    with open(str(file), 'r') as f:
        return json.load(f)
