#!/usr/bin/env python3
"""Regenerate fixtures/sample_tweets.jsonl.

The corpus is deterministic: 1000 lines total, of which 5 are malformed,
3 reuse an earlier id, 800 unique records are English, and 8 of the
English records fall outside the 2020-04-01..2020-04-14 study window.
"""

import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "sample_tweets.jsonl"

TOPICS = {
    "health": [
        "virus", "hospital", "doctor", "nurse", "mask", "vaccine", "symptom",
        "test", "patient", "ventilator", "infection", "immunity", "distancing",
        "quarantine", "outbreak", "icu", "fever", "cough", "recovery", "wave",
    ],
    "life": [
        "home", "family", "cooking", "garden", "music", "netflix", "workout",
        "bread", "balcony", "neighbor", "kids", "homeschool", "zoom", "walk",
        "pet", "puzzle", "book", "coffee", "sunset", "videocall",
    ],
    "economy": [
        "job", "work", "money", "market", "business", "rent", "unemployment",
        "stimulus", "loan", "shop", "delivery", "office", "salary", "budget",
        "economy", "stock", "trade", "factory", "rights", "human",
    ],
}

POSITIVE = ["good", "great", "happy", "hope", "love", "nice", "safe", "strong",
            "thanks", "support", "care", "calm", "proud", "brave", "kind"]
NEGATIVE = ["bad", "sad", "scared", "sick", "worried", "afraid", "lonely",
            "terrible", "awful", "angry", "crisis", "panic", "pain", "wrong"]
BOOSTERS = ["very", "really", "so", "extremely", "totally"]
NEGATORS = ["not", "never", "no", "don't", "can't"]
MENTIONS = ["@WHO", "@CDCgov", "@BBCNews", "@mayor", "@drsmith"]
HASHTAGS = ["#covid19", "#StayHome", "#lockdown", "#FlattenTheCurve",
            "#quarantinelife", "#WFH"]
URLS = ["https://t.co/ab12", "http://example.com/r/5", "https://news.site/x9"]

LANGS_EN = ["en", "en", "en", "en-US", "en-GB"]
LANGS_OTHER = ["es", "fr", "de", "pt", "it", "ja", "nl", "und"]

WINDOW_DAYS = [f"2020-04-{d:02d}" for d in range(1, 15)]
OUT_OF_WINDOW = ["2020-03-25", "2020-03-30", "2020-04-16", "2020-04-20"]


def topic_weights(day_index):
    health = 0.55 - 0.015 * day_index
    life = 0.25 + 0.005 * day_index
    return [health, life, 1.0 - health - life]


def make_text(rng, topic, rich):
    words = []
    n_core = rng.randint(6, 12) if rich else rng.randint(2, 4)
    pool = TOPICS[topic]
    for _ in range(n_core):
        words.append(rng.choice(pool))
    if topic == "economy" and rng.random() < 0.45:
        at = rng.randint(0, len(words))
        words[at:at] = ["human", "rights"]
    roll = rng.random()
    if roll < 0.40:
        frag = [rng.choice(POSITIVE)]
        if rng.random() < 0.4:
            frag.insert(0, rng.choice(BOOSTERS))
        if rng.random() < 0.25:
            frag.insert(0, rng.choice(NEGATORS))
        at = rng.randint(0, len(words))
        words[at:at] = frag
    elif roll < 0.75:
        frag = [rng.choice(NEGATIVE)]
        if rng.random() < 0.35:
            frag.insert(0, rng.choice(BOOSTERS))
        at = rng.randint(0, len(words))
        words[at:at] = frag
    if rng.random() < 0.12:
        half = max(1, len(words) // 2)
        words.insert(half, "but")
    text = " ".join(words)
    if rng.random() < 0.2:
        text = rng.choice(MENTIONS) + " " + text
    if rng.random() < 0.3:
        text = text + " " + rng.choice(HASHTAGS)
    if rng.random() < 0.15:
        text = text + " " + rng.choice(URLS)
    if rng.random() < 0.12:
        parts = text.split(" ")
        at = rng.randrange(len(parts))
        parts[at] = parts[at].upper()
        text = " ".join(parts)
    tail = rng.random()
    if tail < 0.18:
        text += "!!"
    elif tail < 0.24:
        text += "??"
    elif tail < 0.30:
        text += "."
    if rng.random() < 0.05:
        text += ' so to speak, "stay strong"'
    return text


def stamp(rng, day):
    hh, mm, ss = rng.randint(0, 23), rng.randint(0, 59), rng.randint(0, 59)
    if rng.random() < 0.1:
        return f"{day}T{hh:02d}:{mm:02d}:{ss:02d}+02:00"
    return f"{day}T{hh:02d}:{mm:02d}:{ss:02d}Z"


def main():
    rng = random.Random(20200401)
    lines = []
    english_ids = []
    serial = 0

    def next_id():
        nonlocal serial
        serial += 1
        return f"t{serial:06d}"

    # 792 in-window English records
    for i in range(792):
        day_index = rng.randrange(14)
        day = WINDOW_DAYS[day_index]
        w = topic_weights(day_index)
        topic = rng.choices(["health", "life", "economy"], weights=w)[0]
        rich = rng.random() > 0.08
        doc_id = next_id()
        english_ids.append(doc_id)
        lines.append(json.dumps({
            "id": doc_id,
            "timestamp": stamp(rng, day),
            "lang": rng.choice(LANGS_EN),
            "text": make_text(rng, topic, rich),
        }, ensure_ascii=False))

    # 8 English records outside the window
    for i in range(8):
        doc_id = next_id()
        english_ids.append(doc_id)
        lines.append(json.dumps({
            "id": doc_id,
            "timestamp": stamp(rng, rng.choice(OUT_OF_WINDOW)),
            "lang": "en",
            "text": make_text(rng, rng.choice(list(TOPICS)), True),
        }, ensure_ascii=False))

    # 192 non-English records
    for i in range(192):
        day = rng.choice(WINDOW_DAYS)
        lines.append(json.dumps({
            "id": next_id(),
            "timestamp": stamp(rng, day),
            "lang": rng.choice(LANGS_OTHER),
            "text": make_text(rng, rng.choice(list(TOPICS)), True),
        }, ensure_ascii=False))

    # 3 duplicate ids: a later record replaces the earlier one
    for doc_id in rng.sample(english_ids[:792], 3):
        day = rng.choice(WINDOW_DAYS)
        lines.append(json.dumps({
            "id": doc_id,
            "timestamp": stamp(rng, day),
            "lang": "en",
            "text": make_text(rng, "health", True) + " (reposted)",
        }, ensure_ascii=False))

    # 5 malformed lines
    lines.append(json.dumps({"id": next_id(), "timestamp": stamp(rng, WINDOW_DAYS[0]), "lang": "en"}))
    lines.append(json.dumps({"id": next_id(), "lang": "en", "text": "missing timestamp"}))
    lines.append(json.dumps({"id": next_id(), "timestamp": "not-a-time", "lang": "en", "text": "bad stamp"}))
    lines.append("this line is not json at all")
    lines.append(json.dumps({"id": "", "timestamp": stamp(rng, WINDOW_DAYS[1]), "lang": "en", "text": "empty id"}))

    rng.shuffle(lines)
    assert len(lines) == 1000, len(lines)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} lines to {OUT}")


if __name__ == "__main__":
    main()
