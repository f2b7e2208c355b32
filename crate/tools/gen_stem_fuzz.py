"""Pins stems for seeded synthetic words built from French affixes."""
import random
import sys
import snowballstemmer

STEMS = ["chant", "parl", "fin", "mang", "jou", "ennu", "cré", "nat", "abond", "log",
         "beau", "gouvern", "qu", "gu", "aï", "oi", "y", "vi", "ét", "hôp", "crois", "eaux"]
SUFFIXES = ["", "e", "es", "s", "er", "ez", "ons", "ent", "ait", "aient", "ions", "iez",
            "ation", "ations", "ateur", "atrice", "ance", "ences", "ement", "ements",
            "ité", "ités", "if", "ive", "ives", "eux", "euse", "euses", "ique", "iques",
            "isme", "iste", "logie", "usion", "ution", "amment", "emment", "ment",
            "issement", "issant", "irait", "iraient", "èrent", "âmes", "âtes", "assent",
            "ier", "ière", "Ière", "ée", "ées", "é", "ant", "ante", "ie", "ies", "ier",
            "eaux", "aux", "ail", "eille", "ue", "uë", "ïe", "ell", "enn", "onn", "ett",
            "ière", "ion", "sion", "tion", "ure", "abl", "ible", "able", "ables"]

def main(out, n=3000, seed=20161):
    rng = random.Random(seed)
    st = snowballstemmer.stemmer("french")
    seen = set()
    with open(out, "w", encoding="utf-8") as f:
        while len(seen) < n:
            w = rng.choice(STEMS) + rng.choice(SUFFIXES) + rng.choice(SUFFIXES[:30])
            w = w.lower()
            if w in seen:
                continue
            seen.add(w)
            f.write(f"{w}\t{st.stemWord(w)}\n")

if __name__ == "__main__":
    main(sys.argv[1])
