"""Independent brute-force oracles the implementation is checked against.

Everything here is deliberately naive (per-pixel loops, flood fill) and
shares no code with the library paths it verifies.
"""

import numpy as np


def naive_confusion(ground_truth, prediction):
    """Per-pixel loop recount of (tp, fp, tn, fn)."""
    tp = fp = tn = fn = 0
    for g, p in zip(np.asarray(ground_truth).flat, np.asarray(prediction).flat):
        if g and p:
            tp += 1
        elif p:
            fp += 1
        elif g:
            fn += 1
        else:
            tn += 1
    return tp, fp, tn, fn


def flood_fill_components(mask, connectivity):
    """Connected member-pixel sets via iterative flood fill.

    Returns a list of frozensets of (y, x) coordinates, unordered.
    """
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    if connectivity == 4:
        neighbours = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    else:
        neighbours = [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1)
                      if (dy, dx) != (0, 0)]
    seen = np.zeros_like(mask)
    components = []
    for sy in range(h):
        for sx in range(w):
            if not mask[sy, sx] or seen[sy, sx]:
                continue
            stack = [(sy, sx)]
            seen[sy, sx] = True
            pixels = []
            while stack:
                y, x = stack.pop()
                pixels.append((y, x))
                for dy, dx in neighbours:
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not seen[ny, nx]:
                        seen[ny, nx] = True
                        stack.append((ny, nx))
            components.append(frozenset(pixels))
    return components


def region_set(regions):
    """Compare key for ArtifactRegion lists: (area, bbox) multiset."""
    return sorted((r.area, r.bounding_box) for r in regions)


def random_mask(rng, shape, p=0.5):
    return rng.random(shape) < p
