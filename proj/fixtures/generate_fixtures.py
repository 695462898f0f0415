#!/usr/bin/env python3
"""Regenerate the synthetic fixture datasets.

exemplar-cloud: exact model data. Cumulative revenue grows geometrically at
rate eta = 0.2/yr, energy is alpha times cumulative revenue, the size proxies
are exact multiples of cumulative energy. Every fit on this dataset has
R^2 = 1 and recovers the generator constants.

regime-break: same energy/revenue, but the scope3 accounting basis drops by
5x from 2021 on, so the proportionality fit degrades (R^2 < 0.9).
"""

import json
import math
import os

ETA = 0.2
ALPHA = 3e-7          # (MWh/yr)/USD
C2016 = 2e10          # USD cumulative revenue in 2016
SCOPE3_PER_MWH = 4e-4 # tCO2e/MWh
CAPEX_PER_MWH = 120.0 # USD/MWh

HERE = os.path.dirname(os.path.abspath(__file__))


def write_csv(path, rows, comment=None):
    with open(path, "w") as f:
        if comment:
            f.write("# %s\n" % comment)
        f.write("year,value\n")
        for year, value in rows:
            f.write("%d,%.17g\n" % (year, value))


def main():
    g = math.exp(ETA)
    cum = {y: C2016 * g ** (y - 2016) for y in range(2009, 2026)}
    revenue = [(y, cum[y] - cum[y - 1]) for y in range(2010, 2026)]
    energy = [(y, ALPHA * cum[y]) for y in range(2016, 2026)]

    e_cum, run = [], 0.0
    for y, a in energy:
        run += a
        e_cum.append((y, run))
    scope3 = [(y, SCOPE3_PER_MWH * e) for y, e in e_cum]
    capex = [(y, CAPEX_PER_MWH * e) for y, e in e_cum]
    users = [(y, 1e9 * 1.05 ** (y - 2016)) for y in range(2016, 2026)]
    internet = [(y, 5e7) for y in range(2016, 2026)]

    d = os.path.join(HERE, "exemplar-cloud")
    os.makedirs(d, exist_ok=True)
    write_csv(os.path.join(d, "energy.csv"), energy, "datacenter electricity, MWh/yr")
    write_csv(os.path.join(d, "revenue.csv"), revenue, "annual revenue, USD/yr")
    write_csv(os.path.join(d, "scope3.csv"), scope3, "embodied emissions, tCO2e/yr")
    write_csv(os.path.join(d, "capex.csv"), capex, "capital expenditure, USD/yr")
    write_csv(os.path.join(d, "users.csv"), users, "active users, persons")
    write_csv(os.path.join(d, "internet_energy.csv"), internet,
              "total internet energy, MWh/yr")
    with open(os.path.join(d, "manifest.json"), "w") as f:
        json.dump({
            "entity": "exemplar-cloud",
            "series": [
                {"kind": "energy", "unit": "MWh/yr", "path": "energy.csv"},
                {"kind": "revenue", "unit": "USD/yr", "path": "revenue.csv"},
                {"kind": "scope3", "unit": "tCO2e/yr", "path": "scope3.csv"},
                {"kind": "capex", "unit": "USD/yr", "path": "capex.csv"},
                {"kind": "users", "unit": "persons", "path": "users.csv"},
                {"kind": "internet_energy", "unit": "MWh/yr",
                 "path": "internet_energy.csv"},
            ],
            "notes": "synthetic dataset generated from the model itself "
                     "(eta=0.2, alpha=3e-7); see generate_fixtures.py",
            "pre_window_cumulative_revenue": cum[2009],
        }, f, indent=2)
        f.write("\n")
    with open(os.path.join(d, "config.json"), "w") as f:
        json.dump({
            "backcast": {"from": 2010, "to": 2015},
            "forecast": {"horizon": 10, "dt": 0.01, "method": "rk4"},
            "client_energy": {"device_wh_per_user_day": 2.0,
                              "charger_efficiency": 1.0,
                              "internet_share": 0.10},
        }, f, indent=2)
        f.write("\n")

    # regime break: scope3 accounting basis drops 5x from 2021
    broken = [(y, v if y <= 2020 else v / 5.0) for y, v in scope3]
    d2 = os.path.join(HERE, "regime-break")
    os.makedirs(d2, exist_ok=True)
    write_csv(os.path.join(d2, "scope3.csv"), broken,
              "embodied emissions with a 2021 accounting break, tCO2e/yr")
    with open(os.path.join(d2, "manifest.json"), "w") as f:
        json.dump({
            "entity": "exemplar-cloud-break",
            "series": [
                {"kind": "energy", "unit": "MWh/yr",
                 "path": "../exemplar-cloud/energy.csv"},
                {"kind": "revenue", "unit": "USD/yr",
                 "path": "../exemplar-cloud/revenue.csv"},
                {"kind": "scope3", "unit": "tCO2e/yr", "path": "scope3.csv"},
            ],
            "notes": "scope3 regime-break variant of exemplar-cloud",
            "pre_window_cumulative_revenue": cum[2009],
        }, f, indent=2)
        f.write("\n")

    # sanity: the break must actually push R^2 below the 0.9 flag threshold
    x = [e for _, e in e_cum]
    y = [v for _, v in broken]
    slope = sum(a * b for a, b in zip(x, y)) / sum(a * a for a in x)
    my = sum(y) / len(y)
    ss_res = sum((b - slope * a) ** 2 for a, b in zip(x, y))
    ss_tot = sum((b - my) ** 2 for b in y)
    r2 = 1 - ss_res / ss_tot
    assert r2 < 0.9, r2
    print("regime-break scope3 R^2 = %.4f (flag threshold 0.9)" % r2)


if __name__ == "__main__":
    main()
