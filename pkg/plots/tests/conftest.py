import xml.etree.ElementTree as ET
from collections import Counter
from pathlib import Path

DATA = Path(__file__).resolve().parent / "data"
DEMO_GRID = DATA / "demo_grid.csv"


def svg_signature(path) -> dict:
    """Version-tolerant structural fingerprint of an SVG figure.

    Captures canvas size, the element-tag histogram and every text run
    (titles, axis labels, tick labels); ignores path geometry, ids and
    metadata content, which vary between renders and backends.
    """
    tree = ET.parse(path)
    root = tree.getroot()
    tags = Counter(el.tag.split("}")[-1] for el in tree.iter())
    texts = sorted(
        text
        for el in tree.iter()
        if el.tag.endswith("text")
        for text in ["".join(el.itertext()).strip()]
        if text
    )
    return {
        "width": root.get("width"),
        "height": root.get("height"),
        "tags": dict(sorted(tags.items())),
        "texts": texts,
    }
