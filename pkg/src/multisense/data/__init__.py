"""Bundled datasets for tests, examples and quick experiments."""
from importlib import resources
from pathlib import Path


def toy_paths() -> dict[str, Path]:
    """Paths to the small self-contained toy corpus shipped with the package."""
    root = resources.files(__package__) / "toy"
    return {
        "pretrain": Path(str(root / "pretrain.txt")),
        "labelled": Path(str(root / "labelled.jsonl")),
        "inventory": Path(str(root / "inventory.json")),
        "vectors": Path(str(root / "vectors.txt")),
    }
