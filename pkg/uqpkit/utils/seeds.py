from __future__ import annotations

import hashlib
import struct

_MASK64 = (1 << 64) - 1


def derive_seed(master: int, n: int, index: int) -> int:
    """Fixed 64-bit mix of (master seed, size, matrix index); stable across platforms and runs."""

    payload = struct.pack("<QQQ", master & _MASK64, n & _MASK64, index & _MASK64)
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "little")
