"""
Network text format

    # scalereg network
    depth <L>
    widths <p_0> ... <p_{L+1}>
    layer <l> <rows> <cols>
    <row 0 entries>
    ...
    [metadata]
    <key> <value>

Matrices are written W^0 first, rows in order, 17 significant digits.
The [metadata] block is optional (fit results carry kappa, lambda,
objective and iterations).
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from src.models.network import Architecture, NetworkParams

HEADER = "# scalereg network"
METADATA_MARKER = "[metadata]"

MetadataValue = Union[int, float, str]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_network(theta: NetworkParams, metadata: Optional[Dict[str, MetadataValue]] = None) -> str:
    """Render parameters (and optional metadata) in the text format"""
    lines = [
        HEADER,
        f"depth {theta.depth}",
        "widths " + " ".join(str(w) for w in theta.arch.widths),
    ]
    for l, W in enumerate(theta.layers):
        rows, cols = W.shape
        lines.append(f"layer {l} {rows} {cols}")
        for row in W:
            lines.append(" ".join(_fmt(x) for x in row))
    if metadata:
        lines.append(METADATA_MARKER)
        for key, val in metadata.items():
            if isinstance(val, (float, np.floating)):
                val = _fmt(val)
            lines.append(f"{key} {val}")
    return "\n".join(lines) + "\n"


def _parse_value(raw: str) -> MetadataValue:
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        return raw


def parse_network(text: str) -> Tuple[NetworkParams, Dict[str, MetadataValue]]:
    """
    Parse the text format

    Returns:
        (parameters, metadata dict; empty when there is no metadata block)

    Raises:
        ValueError: malformed text
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    pos = 0

    def take(prefix: str) -> List[str]:
        nonlocal pos
        if pos >= len(lines) or not lines[pos].startswith(prefix + " "):
            found = lines[pos] if pos < len(lines) else "<end of file>"
            raise ValueError(f"Expected '{prefix}' line, got '{found}'")
        parts = lines[pos].split()[1:]
        pos += 1
        return parts

    depth = int(take("depth")[0])
    arch = Architecture(tuple(int(w) for w in take("widths")))
    if arch.depth != depth:
        raise ValueError(f"depth {depth} disagrees with widths {arch.widths}")

    layers = []
    for l in range(arch.n_layers):
        idx, rows, cols = (int(p) for p in take("layer"))
        if idx != l or (rows, cols) != arch.layer_shape(l):
            raise ValueError(f"Unexpected layer header 'layer {idx} {rows} {cols}'")
        if pos + rows > len(lines):
            raise ValueError(f"Layer {l} is truncated")
        W = np.array([[float(x) for x in lines[pos + r].split()] for r in range(rows)])
        if W.shape != (rows, cols):
            raise ValueError(f"Layer {l}: rows do not have {cols} entries")
        pos += rows
        layers.append(W)

    metadata: Dict[str, MetadataValue] = {}
    if pos < len(lines):
        if lines[pos] != METADATA_MARKER:
            raise ValueError(f"Unexpected trailing line '{lines[pos]}'")
        for ln in lines[pos + 1:]:
            key, _, raw = ln.partition(" ")
            metadata[key] = _parse_value(raw.strip())
    return NetworkParams(arch, tuple(layers)), metadata


def write_network(
    path: Union[str, Path],
    theta: NetworkParams,
    metadata: Optional[Dict[str, MetadataValue]] = None,
) -> Path:
    """Write parameters to a file; returns the path"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_network(theta, metadata), encoding="utf-8")
    return path


def read_network(path: Union[str, Path]) -> Tuple[NetworkParams, Dict[str, MetadataValue]]:
    """Read a file written by write_network"""
    return parse_network(Path(path).read_text(encoding="utf-8"))
