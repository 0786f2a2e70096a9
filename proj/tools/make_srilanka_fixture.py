#!/usr/bin/env python3
"""Writes the synthetic Sri Lanka migration fixture (25 cities, 600 routes).

Every ordered pair of distinct cities gets one weighted, timestamped link.
Weights fall off with distance and grow with city size; the output is fully
determined by the fixed seed.
"""
import json
import math
import random
import sys

CITIES = [
    ("CMB", "Colombo", 6.9271, 79.8612, 752),
    ("DHW", "Dehiwala-Mount Lavinia", 6.8511, 79.8656, 245),
    ("MRT", "Moratuwa", 6.7730, 79.8816, 185),
    ("NEG", "Negombo", 7.2083, 79.8358, 142),
    ("KND", "Kandy", 7.2906, 80.6337, 125),
    ("KLM", "Kalmunai", 7.4167, 81.8167, 106),
    ("VAV", "Vavuniya", 8.7514, 80.4971, 99),
    ("GAL", "Galle", 6.0535, 80.2210, 93),
    ("TRI", "Trincomalee", 8.5874, 81.2152, 99),
    ("BAT", "Batticaloa", 7.7310, 81.6747, 92),
    ("JAF", "Jaffna", 9.6615, 80.0255, 89),
    ("KTE", "Sri Jayawardenepura Kotte", 6.8868, 79.9187, 107),
    ("KAT", "Kattankudy", 7.6750, 81.7300, 40),
    ("MTR", "Matara", 5.9549, 80.5550, 74),
    ("ANU", "Anuradhapura", 8.3114, 80.4037, 64),
    ("RAT", "Ratnapura", 6.6828, 80.3992, 47),
    ("BAD", "Badulla", 6.9934, 81.0550, 47),
    ("KUR", "Kurunegala", 7.4863, 80.3623, 31),
    ("PUT", "Puttalam", 8.0362, 79.8283, 45),
    ("MAN", "Mannar", 8.9810, 79.9044, 35),
    ("HAM", "Hambantota", 6.1241, 81.1185, 11),
    ("NUW", "Nuwara Eliya", 6.9497, 80.7891, 27),
    ("POL", "Polonnaruwa", 7.9403, 81.0188, 15),
    ("CHW", "Chilaw", 7.5758, 79.7953, 25),
    ("KEG", "Kegalle", 7.2513, 80.3464, 17),
]

START = 946684800  # 2000-01-01
YEAR = 365 * 86400


def km(a, b):
    la1, lo1, la2, lo2 = map(math.radians, (a[2], a[3], b[2], b[3]))
    h = math.sin((la2 - la1) / 2) ** 2 + math.cos(la1) * math.cos(la2) * math.sin((lo2 - lo1) / 2) ** 2
    return 2 * 6371.0088 * math.asin(min(1.0, math.sqrt(h)))


def main(path):
    rng = random.Random(20220502)
    nodes = [{"id": c[0], "label": c[1], "lat": c[2], "lon": c[3], "population": c[4] * 1000} for c in CITIES]
    links = []
    for a in CITIES:
        for b in CITIES:
            if a is b:
                continue
            gravity = a[4] * b[4] / (km(a, b) + 10.0) ** 1.5
            weight = max(1, round(gravity * rng.uniform(0.6, 1.4)))
            time = START + rng.randrange(20 * YEAR)
            links.append({"source": a[0], "target": b[0], "weight": weight, "time": time})
    doc = {
        "directed": True,
        "terminology": {"nodeNoun": "city", "linkNoun": "migration route", "weightNoun": "migrant count"},
        "nodes": nodes,
        "links": links,
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/datasets/srilanka_migration.json")
