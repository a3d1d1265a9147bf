#!/usr/bin/env python3
"""Regenerates the desk-scale corpus and prompt files under data/.

The output is fully deterministic; rerunning the script reproduces the
checked-in files byte for byte.
"""

import itertools
import pathlib

SUBJECTS = ["He", "She", "They", "We", "I", "My sister", "The old man", "Our neighbor"]
PREDICATES = [
    "came to my house",
    "opened the window",
    "walked to the park",
    "cooked dinner",
    "read the letter",
    "fixed the car",
    "painted the fence",
    "called the doctor",
    "lost the keys",
    "watched the movie",
]
EXTRA_PREDICATES = [
    "visited the museum",
    "sold the bicycle",
    "cleaned the kitchen",
    "wrote a song",
    "missed the train",
    "planted a tree",
    "found a wallet",
    "baked a cake",
    "moved to the city",
    "answered the phone",
    "closed the shop",
    "climbed the hill",
    "fed the cat",
    "left the party",
    "bought a new coat",
]

# Continuations after the comma, keyed by their opening word. The slot counts
# set the bigram mass that follows "," in the trained model.
CONTINUATIONS = {
    "and": (12, ["and then he went home", "and she smiled at everyone",
                 "and the dog started to bark", "and we had some tea"]),
    "but": (10, ["but he did not stay long", "but she was still tired",
                 "but nobody was there", "but the rain did not stop"]),
    "because": (10, ["because he was hungry", "because it was raining",
                     "because she needed help", "because the car was broken"]),
    "if": (9, ["if he had the time", "if the weather was nice",
               "if she could help", "if nobody was home"]),
    "which": (9, ["which was very old", "which made everyone happy",
                  "which took a long time", "which was a surprise"]),
    "by": (9, ["by taking the bus", "by asking a friend",
               "by using a map", "by working all night"]),
    "great": (8, ["great news for everyone", "great fun for the children"]),
    "then": (7, ["then he went to sleep", "then she made some coffee"]),
    "so": (6, ["so we stayed inside", "so he was late again"]),
    "instead": (3, ["instead he stayed at home", "instead she went to work"]),
    "wonderful": (2, ["wonderful to see again"]),
    "terrible": (2, ["terrible luck as usual"]),
    "after": (4, ["after the long meeting", "after the storm ended"]),
    "with": (3, ["with a big smile", "with some help"]),
    "as": (3, ["as he always did", "as she had promised"]),
    "lovely": (1, ["lovely as always"]),
    "although": (2, ["although it was late"]),
}


def build_slots():
    slots = []
    for word, (count, phrases) in CONTINUATIONS.items():
        for i in range(count):
            slots.append(phrases[i % len(phrases)])
    return slots


def lower_subject(subject):
    return subject if subject == "I" else subject[0].lower() + subject[1:]


def main():
    root = pathlib.Path(__file__).resolve().parent.parent / "data"
    clauses = [f"{s} {p}" for s, p in itertools.product(SUBJECTS, PREDICATES)]
    slots = build_slots()

    corpus = []
    for i, clause in enumerate(clauses):
        for j in range(5):
            cont = slots[(i * 5 + j) % len(slots)]
            corpus.append(f"{clause}, {cont}.")
    # plain sentences give the model something to say after the opening cue
    for s, p in itertools.product(SUBJECTS, PREDICATES[:5]):
        corpus.append(f"{s} {p} yesterday.")
    (root / "desk_corpus.txt").write_text("\n".join(corpus) + "\n")

    (root / "desk_prompts.txt").write_text("\n".join(c + "," for c in clauses) + "\n")

    extended = [f"{s} {p}" for s, p in itertools.product(SUBJECTS, PREDICATES + EXTRA_PREDICATES)]
    lines = []
    for i, clause in enumerate(extended[:200]):
        lines.append(clause + ("," if i % 3 else ""))
    (root / "desk_prompts_200.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
