"""
Counter-mode hash generator: block_i = SHA-1(seed_bytes || uint64_be(i)).

Each 20-byte block is consumed as five big-endian 32-bit words.
"""
import logging

from cryptography.hazmat.primitives import hashes

logger = logging.getLogger(__name__)

BLOCK_BYTES = 20
MASK64 = (1 << 64) - 1


def sha1_digest(data: bytes) -> bytes:
    digest = hashes.Hash(hashes.SHA1())
    digest.update(data)
    return digest.finalize()


class HashDrbg:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"Seed must be an unsigned 64-bit integer, got {seed}")
        self.seed_bytes = seed.to_bytes(8, "big")
        self.counter = 0
        self.buffer = bytearray()

    def block(self, index: int) -> bytes:
        """Output block `index`; a pure function of (seed_bytes, index)"""
        return sha1_digest(self.seed_bytes + (index & MASK64).to_bytes(8, "big"))

    def next_block(self) -> int:
        if len(self.buffer) < 4:
            self.buffer += self.block(self.counter)
            self.counter += 1
        word = int.from_bytes(self.buffer[:4], "big")
        del self.buffer[:4]
        return word


def hashdrbg_next(drbg: HashDrbg) -> int:
    return drbg.next_block()
