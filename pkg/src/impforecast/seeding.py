"""Deterministic per-task seed derivation.

Every stochastic task in the pipeline (one fit of one candidate on one
channel) gets its own seed mixed from the master seed, so serial and
parallel runs are bit-identical.
"""

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def derive_seed(master: int, *tokens: int) -> int:
    """Fold integer tokens into ``master`` with splitmix64 chaining."""
    h = master & _MASK
    for t in tokens:
        h = _splitmix64(h ^ (int(t) & _MASK))
    return h
