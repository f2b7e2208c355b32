"""Writes one toy space in the word2vec text and binary layouts."""
import random
import struct
import sys

WORDS = ["chanteuse", "concert", "électrique", "#festival", "rennes", "guitare"]
DIM = 7


def main(out_dir):
    rng = random.Random(7)
    vecs = {w: [struct.unpack("<f", struct.pack("<f", rng.uniform(-1, 1)))[0] for _ in range(DIM)] for w in WORDS}
    with open(f"{out_dir}/toy.vec.txt", "w", encoding="utf-8") as f:
        f.write(f"{len(WORDS)} {DIM}\n")
        for w in WORDS:
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vecs[w]) + "\n")
    for name, sep in (("toy.vec.bin", b"\n"), ("toy.nonl.vec.bin", b"")):
        with open(f"{out_dir}/{name}", "wb") as f:
            f.write(f"{len(WORDS)} {DIM}\n".encode())
            for w in WORDS:
                f.write(w.encode("utf-8") + b" ")
                f.write(struct.pack("<%df" % DIM, *vecs[w]))
                f.write(sep)


if __name__ == "__main__":
    main(sys.argv[1])
