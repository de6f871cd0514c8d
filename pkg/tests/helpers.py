from stanleydepth.lattice import Antichain


def ac(text: str, n: int) -> Antichain:
    """Compact facets such as "123 124" on ground set [n]."""
    return Antichain.from_sets([[int(c) for c in tok] for tok in text.split()], n)


def sets_of(masks):
    """Bitmasks to frozensets of 1-based vertices."""
    return frozenset(frozenset(v + 1 for v in range(m.bit_length()) if m >> v & 1)
                     for m in masks)


def mask(verts) -> int:
    return sum(1 << (v - 1) for v in verts)
