#!/usr/bin/env python3
"""Generate data/morph_en.tsv: surface verb form -> tense tags.

The table maps inflected forms of a curated list of common English verbs to
the tags the focus features consume:

  base      bare infinitive (also tagged present); future triggers look for it
  present   base, 3rd-person singular, and -ing participle forms
  past      simple past only; past participles that differ from the simple
            past (gone, been, eaten) are deliberately omitted so that "run"
            stays present-only

Noun-primary homographs (book, hand, head, place, ...) are excluded on
purpose: the table doubles as the "is this a verb?" oracle for the
possessive-"her" lookahead heuristic, and treating "her book" as a verb
phrase would be worse than missing "she booked a flight".

Output is deterministic: forms sorted, tags in fixed order, one form per row
with semicolon-joined tags. Regenerate with:

    python3 tools/gen_morph_table.py > data/morph_en.tsv
"""

import sys

# lemma: (simple past, past participle or None if same, 3sg or None for rule,
#         -ing or None for rule)
IRREGULAR = {
    "be": ("was", "been", "is", "being"),
    "become": ("became", "become", None, "becoming"),
    "begin": ("began", "begun", None, "beginning"),
    "bite": ("bit", "bitten", None, "biting"),
    "break": ("broke", "broken", None, "breaking"),
    "bring": ("brought", None, None, None),
    "build": ("built", None, None, None),
    "buy": ("bought", None, None, None),
    "catch": ("caught", None, None, None),
    "choose": ("chose", "chosen", None, "choosing"),
    "come": ("came", "come", None, "coming"),
    "do": ("did", "done", "does", None),
    "draw": ("drew", "drawn", None, None),
    "drink": ("drank", "drunk", None, None),
    "drive": ("drove", "driven", None, "driving"),
    "eat": ("ate", "eaten", None, None),
    "fall": ("fell", "fallen", None, None),
    "feel": ("felt", None, None, None),
    "fight": ("fought", None, None, None),
    "find": ("found", None, None, None),
    "fly": ("flew", "flown", "flies", None),
    "forget": ("forgot", "forgotten", None, "forgetting"),
    "forgive": ("forgave", "forgiven", None, "forgiving"),
    "get": ("got", "gotten", None, "getting"),
    "give": ("gave", "given", None, "giving"),
    "go": ("went", "gone", "goes", None),
    "grow": ("grew", "grown", None, None),
    "have": ("had", None, "has", "having"),
    "hear": ("heard", None, None, None),
    "hide": ("hid", "hidden", None, "hiding"),
    "hit": ("hit", None, None, "hitting"),
    "hold": ("held", None, None, None),
    "hurt": ("hurt", None, None, None),
    "keep": ("kept", None, None, None),
    "know": ("knew", "known", None, None),
    "lead": ("led", None, None, None),
    "leave": ("left", None, None, "leaving"),
    "lend": ("lent", None, None, None),
    "let": ("let", None, None, "letting"),
    "lie": ("lay", "lain", None, "lying"),
    "lose": ("lost", None, None, "losing"),
    "make": ("made", None, None, "making"),
    "mean": ("meant", None, None, None),
    "meet": ("met", None, None, None),
    "pay": ("paid", None, None, None),
    "put": ("put", None, None, "putting"),
    "read": ("read", None, None, None),
    "ride": ("rode", "ridden", None, "riding"),
    "ring": ("rang", "rung", None, None),
    "rise": ("rose", "risen", None, "rising"),
    "run": ("ran", "run", None, "running"),
    "say": ("said", None, None, None),
    "see": ("saw", "seen", None, None),
    "seek": ("sought", None, None, None),
    "sell": ("sold", None, None, None),
    "send": ("sent", None, None, None),
    "set": ("set", None, None, "setting"),
    "shake": ("shook", "shaken", None, "shaking"),
    "shoot": ("shot", None, None, None),
    "sing": ("sang", "sung", None, None),
    "sit": ("sat", None, None, "sitting"),
    "sleep": ("slept", None, None, None),
    "speak": ("spoke", "spoken", None, "speaking"),
    "spend": ("spent", None, None, None),
    "stand": ("stood", None, None, None),
    "steal": ("stole", "stolen", None, "stealing"),
    "swim": ("swam", "swum", None, "swimming"),
    "take": ("took", "taken", None, "taking"),
    "teach": ("taught", None, None, None),
    "tell": ("told", None, None, None),
    "think": ("thought", None, None, None),
    "throw": ("threw", "thrown", None, None),
    "understand": ("understood", None, None, None),
    "wake": ("woke", "woken", None, "waking"),
    "wear": ("wore", "worn", None, None),
    "win": ("won", None, None, "winning"),
    "write": ("wrote", "written", None, "writing"),
}

# extra finite present forms that the 3sg rule cannot derive
EXTRA_PRESENT = {"be": ["am", "are"], "__none__": []}
EXTRA_PAST = {"be": ["were"]}

REGULAR = """
ache act add agree allow annoy answer appear argue arrive ask bake believe
belong boil borrow bother breathe burn call care carry cause change chase
chat cheer chew claim clean climb close collect complain consider continue
cook count cover crawl create cry dance decide deliver describe deserve
destroy die disagree discover discuss dream dress earn enjoy escape exercise
exist expect explain fail fear fill finish fix follow gather glance grab
greet guess happen hate help hope hug hurry imagine improve include invite
jog join jump kick kill kiss knock laugh learn like listen live look love
manage marry matter mention miss move need nod notice obey offer open order
pack paint pass pick plan play point prefer prepare pretend promise pull
punch push rain raise reach realize receive recognize refuse relax remain
remember remind rent repeat reply rescue rest return roll rub rush save
scream seem share shout shrug sigh smell smile sneeze sob sound stare start
stay stop study suffer suggest suppose talk taste thank tickle touch travel
tremble trust try turn visit wait walk want warn wash watch wave whisper
wish wonder work worry yell
""".split()

DOUBLE_FINAL = {"chat", "grab", "hug", "jog", "nod", "plan", "rub", "shrug",
                "sob", "stop", "travel"}


def third_singular(lemma: str) -> str:
    if lemma.endswith(("s", "sh", "ch", "x", "z", "o")):
        return lemma + "es"
    if lemma.endswith("y") and lemma[-2] not in "aeiou":
        return lemma[:-1] + "ies"
    return lemma + "s"


def ing_form(lemma: str) -> str:
    if lemma in DOUBLE_FINAL:
        return lemma + lemma[-1] + "ing"
    if lemma.endswith("ie"):
        return lemma[:-2] + "ying"
    if lemma.endswith("e") and not lemma.endswith("ee"):
        return lemma[:-1] + "ing"
    return lemma + "ing"


def past_form(lemma: str) -> str:
    if lemma in DOUBLE_FINAL:
        return lemma + lemma[-1] + "ed"
    if lemma.endswith("e"):
        return lemma + "d"
    if lemma.endswith("y") and lemma[-2] not in "aeiou":
        return lemma[:-1] + "ied"
    return lemma + "ed"


def main() -> None:
    tags: dict[str, set[str]] = {}

    def add(form: str, *ts: str) -> None:
        tags.setdefault(form, set()).update(ts)

    for lemma in REGULAR:
        add(lemma, "base", "present")
        add(third_singular(lemma), "present")
        add(ing_form(lemma), "present")
        add(past_form(lemma), "past")

    for lemma, (past, _pp, third, ing) in IRREGULAR.items():
        add(lemma, "base", "present")
        add(third or third_singular(lemma), "present")
        add(ing or ing_form(lemma), "present")
        add(past, "past")
        for form in EXTRA_PRESENT.get(lemma, []):
            add(form, "present")
        for form in EXTRA_PAST.get(lemma, []):
            add(form, "past")
        # past participles that differ from the simple past are omitted

    order = {"base": 0, "present": 1, "past": 2}
    out = sys.stdout
    out.write("# Verb surface form -> tense tags (base;present;past subsets).\n")
    out.write("# Generated by tools/gen_morph_table.py; do not edit by hand.\n")
    for form in sorted(tags):
        ts = ";".join(sorted(tags[form], key=order.__getitem__))
        out.write(f"{form}\t{ts}\n")


if __name__ == "__main__":
    main()
