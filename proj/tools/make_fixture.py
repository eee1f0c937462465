#!/usr/bin/env python3
"""Regenerates the bundled synthetic fixtures and default cost data.

National coverage figures are computed from the regional bands so that every
(country, technology) pair is feasible: each figure is the premises-weighted mean
obtained for a chosen fraction of the largest useful proportionality constant.
"""

import csv
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

BANDS = [(0.0, 0.35), (0.35, 0.65), (0.65, 0.95), (0.95, 1.0), (1.0, 1.0)]

# code, labour index, preparedness (geo, housing, regulation), fixed tech, road km, rail km, capital, fttp band, docsis band
COUNTRIES = [
    ("CY", 0.62, (0, 0, 0.10), "FTTH", 272, 0, "CY000", "GT50", "GT50"),
    ("DE", 1.28, (-0.10, -0.10, -0.10), "FTTB_C", 12996, 38466, "DE300", "LT10", "GT50"),
    ("FR", 1.35, (0, 0, 0), "FTTH", 12797, 28364, "FR101", "25_50", "25_50"),
    ("NL", 1.30, (0, 0.10, -0.10), "MIXED_URBAN_FTTH", 2756, 3058, "NL329", "25_50", "GT50"),
]

# id, country, households, localities as (degurba, population, area km2)
REGIONS = [
    ("CY000", "CY", 310000, [("URBAN", 350000, 180), ("SUBURBAN", 200000, 400), ("RURAL", 170000, 1200),
                             ("RURAL", 140000, 4000), ("RURAL", 15900, 3471)]),
    ("DE212", "DE", 830000, [("URBAN", 1471500, 310.7)]),
    ("DE300", "DE", 1990000, [("URBAN", 3400000, 700), ("SUBURBAN", 244800, 191.1)]),
    ("DE80J", "DE", 128000, [("SUBURBAN", 60000, 150), ("RURAL", 45000, 300), ("RURAL", 130000, 2600),
                             ("RURAL", 24100, 2445.6)]),
    ("FR101", "FR", 1150000, [("URBAN", 2187500, 105.4)]),
    ("FR104", "FR", 530000, [("URBAN", 600000, 150), ("SUBURBAN", 500000, 500), ("RURAL", 150000, 500),
                             ("RURAL", 46600, 654.4)]),
    ("FRJ14", "FR", 36000, [("SUBURBAN", 20000, 100), ("RURAL", 40000, 2000), ("RURAL", 16600, 3067)]),
    ("FRK24", "FR", 550000, [("URBAN", 450000, 120), ("SUBURBAN", 400000, 800), ("RURAL", 250000, 1500),
                             ("RURAL", 140000, 2500), ("RURAL", 18700, 2511)]),
    ("NL131", "NL", 49000, [("SUBURBAN", 30000, 100), ("RURAL", 60000, 500), ("RURAL", 18200, 342)]),
    ("NL329", "NL", 620000, [("URBAN", 900000, 150), ("SUBURBAN", 300000, 300), ("RURAL", 62400, 247)]),
]

SIZE_CLASSES = ["0-9", "10-19", "20-49", "50-249", "250+"]
ENTERPRISES = {
    "CY": [60000, 2000, 1000, 400, 60],
    "DE": [480000, 40000, 22000, 12000, 2500],
    "FR": [520000, 22000, 12000, 6000, 1200],
    "NL": [150000, 6000, 3500, 2000, 450],
}

COHESION = {"CY000": True, "DE80J": True, "FRJ14": True}

TECHS = ["FTTH_100M", "FTTH_1G", "FTTB", "FTTC_ADV_DSL", "DOCSIS_30", "DOCSIS_31", "LTE"]

# Band index per (region, technology) in the 2019 vintage, and the fraction of
# the largest useful scale used to produce each national figure.
BAND_2019 = {
    #         100M 1G FTTB FTTC D30 D31 LTE
    "CY000": [1, 0, 0, 1, 0, 0, 3],
    "DE212": [0, 0, 1, 2, 2, 1, 3],
    "DE300": [0, 0, 1, 2, 2, 1, 3],
    "DE80J": [0, 0, 0, 1, 0, 0, 3],
    "FR101": [2, 1, 0, 1, 1, 1, 3],
    "FR104": [1, 0, 0, 1, 0, 0, 3],
    "FRJ14": [0, 0, 0, 1, 0, 0, 2],
    "FRK24": [1, 0, 0, 1, 0, 0, 3],
    "NL131": [0, 0, 0, 2, 2, 1, 3],
    "NL329": [1, 0, 0, 2, 3, 2, 4],
}
SCALE_2019 = {"FTTH_100M": 0.55, "FTTH_1G": 0.45, "FTTB": 0.5, "FTTC_ADV_DSL": 0.6, "DOCSIS_30": 0.6,
              "DOCSIS_31": 0.5, "LTE": 0.7}

# Two years earlier gigabit footprints sat one band lower and further from the top.
GIGABIT = {"FTTH_100M", "FTTH_1G", "DOCSIS_31"}


def premises():
    pop = {}
    for rid, country, hh, locs in REGIONS:
        pop[rid] = sum(p for _, p, _ in locs)
    country_pop = {}
    for rid, country, _, _ in REGIONS:
        country_pop[country] = country_pop.get(country, 0.0) + pop[rid]
    out = {}
    for rid, country, hh, _ in REGIONS:
        ent = sum(c * (pop[rid] / country_pop[country]) for c in ENTERPRISES[country])
        out[rid] = hh + ent
    return out, pop


def national_figure(rows, scale_fraction):
    """rows: (density, premises, low, high). Mirrors the weighted clamp mean."""
    max_scale = max(high / d for d, _, _, high in rows)
    k = scale_fraction * max_scale
    weight = sum(p for _, p, _, _ in rows)
    covered = sum(p * min(max(k * d, low), high) for d, p, low, high in rows)
    return covered / weight


def write(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def fixture(name, vintage, older):
    d = DATA / name
    write(d / "countries.csv",
          ["code", "labour_index", "prep_geo", "prep_housing", "prep_regulation", "dominant_fixed_tech",
           "road_km", "rail_km", "capital_region", "fttp_band", "docsis_band"],
          [[c, l, *[f"{x:.2f}" if x else "0" for x in prep], t, road, rail, cap, fb, db]
           for c, l, prep, t, road, rail, cap, fb, db in COUNTRIES])
    prem, pop = premises()
    area = {rid: sum(a for _, _, a in locs) for rid, _, _, locs in REGIONS}
    write(d / "regions.csv", ["id", "country", "population", "area_km2", "households"],
          [[rid, c, pop[rid], f"{area[rid]:g}", hh] for rid, c, hh, _ in REGIONS])
    loc_rows = []
    for rid, _, _, locs in REGIONS:
        for i, (deg, p, a) in enumerate(locs, start=1):
            loc_rows.append([f"{rid}-{i:02d}", rid, p, f"{a:g}", deg])
    write(d / "localities.csv", ["id", "region", "population", "area_km2", "degurba"], loc_rows)
    write(d / "enterprises.csv", ["country", "size_class", "count"],
          [[c, s, n] for c, counts in ENTERPRISES.items() for s, n in zip(SIZE_CLASSES, counts)])
    write(d / "cohesion.csv", ["region", "is_cohesion"],
          [[rid, "true" if COHESION.get(rid) else "false"] for rid, *_ in REGIONS])

    intervals = []
    national = []
    country_of = {rid: c for rid, c, _, _ in REGIONS}
    for ti, tech in enumerate(TECHS):
        by_country = {}
        for rid, *_ in REGIONS:
            band = BAND_2019[rid][ti]
            if older and tech in GIGABIT:
                band = max(0, band - 1)
            low, high = BANDS[band]
            intervals.append([rid, tech, low, high, vintage])
            by_country.setdefault(country_of[rid], []).append((pop[rid] / area[rid], prem[rid], low, high))
        scale = SCALE_2019[tech] * (0.5 if older and tech in GIGABIT else 1.0)
        for c, rows in sorted(by_country.items()):
            national.append([c, tech, repr(national_figure(rows, scale)), vintage])
    write(d / "coverage_intervals.csv", ["region", "technology", "band_low", "band_high", "vintage"], intervals)
    write(d / "coverage_national.csv", ["country", "technology", "coverage", "vintage"], national)


TABLE8 = [
    ("FTTH_NEW", [561, 1376, 2032, 2633, 6783]),
    ("FTTB_NEW", [416, 838, 1375, 2134, 2467]),
    ("FTTC_NEW", [283, 476, 816, 1380, 1549]),
    ("UPGRADE_FTTB_TO_FTTH", [188, 643, 813, 870, 4836]),
    ("UPGRADE_FTTC_TO_FTTH", [321, 1005, 1372, 1455, 5754]),
    ("UPGRADE_FTTH_TO_1G", [112, 275, 406, 527, 1357]),
    ("UPGRADE_DOCSIS30_TO_31", [80, 196, 290, 375, 967]),
    ("FIVE_G_GUARANTEED", [712, 930, 1131, 1692, 7088]),
    ("FIVE_G_NOMINAL", [444, 565, 687, 871, 1330]),
]
TABLE8_KM = [
    ("FIVE_G_RAIL_NOMINAL_KM", 35000),
    ("FIVE_G_RAIL_GUARANTEED_KM", 55000),
    ("FIVE_G_ROAD_NOMINAL_KM", 95000),
    ("FIVE_G_ROAD_GUARANTEED_KM", 115000),
]
GEOTYPES = ["URBAN", "SUBURBAN", "SEMI_RURAL", "RURAL", "EXTREMELY_RURAL"]


def defaults():
    rows = []
    for action, values in TABLE8:
        for g, v in zip(GEOTYPES, values):
            rows.append([action, g, v, 2019, "EU", "eu-average-2019"])
    for action, v in TABLE8_KM:
        rows.append([action, "ALL", v, 2019, "EU", "eu-average-2019"])
    write(DATA / "defaults" / "cost_references.csv",
          ["action", "geotype", "value_eur", "price_year", "granularity", "source_id"], rows)
    write(DATA / "defaults" / "price_index.csv", ["year", "multiplier"], [[2019, 1]])


if __name__ == "__main__":
    defaults()
    fixture("fixture-2019", 2019, older=False)
    fixture("fixture-2017", 2017, older=True)
