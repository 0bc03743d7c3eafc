"""Reading and writing Middlebury .flo flow files.

Run: python3 demos/01_flo_files.py
"""

import numpy as np

from flowmask import FlowField, parse_flo, write_flo

# a tiny 3x2 field: everything drifts right except one pixel moving up
vec = np.zeros((2, 3, 2), dtype=np.float32)
vec[..., 0] = 1.5
vec[1, 2] = (0.0, -3.0)
field = FlowField(vec)

data = write_flo(field)
print(f"serialized {field.width}x{field.height} field -> {len(data)} bytes "
      f"(12-byte header + 8 per pixel)")
print(f"magic bytes: {data[:4].hex()}  (little-endian float 202021.25)")

back = parse_flo(data)
print("round trip bit-exact:", back.vectors.tobytes() == field.vectors.tobytes())

# the parser validates: corrupt the magic and it refuses the file
from flowmask.errors import MagicMismatch

broken = b"\x00\x00\x00\x00" + data[4:]
try:
    parse_flo(broken)
except MagicMismatch as exc:
    print("corrupted file rejected:", exc)
