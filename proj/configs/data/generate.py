#!/usr/bin/env python3
"""Writes the synthetic rasters and storm tracks used by the example configs."""
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def write_asc(name, x0, y0, cell, ncols, nrows, fn):
    path = os.path.join(HERE, name)
    with open(path, "w") as f:
        f.write(f"ncols {ncols}\nnrows {nrows}\nxllcenter {x0!r}\nyllcenter {y0!r}\n")
        f.write(f"cellsize {cell!r}\nNODATA_value -9999\n")
        # ESRI order: northern row first
        for r in range(nrows - 1, -1, -1):
            lat = y0 + r * cell
            f.write(" ".join(f"{fn(x0 + c * cell, lat):.3f}" for c in range(ncols)) + "\n")


def shelf_profile(lat):
    # deep basin, continental slope, wide shelf, sloping beach, low coastal plain
    if lat < 25.0:
        return -3000.0
    if lat < 27.0:
        s = (lat - 25.0) / 2.0
        return -3000.0 + (3000.0 - 100.0) * (0.5 - 0.5 * math.cos(math.pi * s))
    if lat < 29.5:
        return -100.0 + 95.0 * (lat - 27.0) / 2.5
    if lat < 30.0:
        return -5.0 + 8.0 * (lat - 29.5) / 0.5
    return 3.0 + 7.0 * min(1.0, (lat - 30.0) / 1.0)


def write_track(name, rows):
    with open(os.path.join(HERE, name), "w") as f:
        f.write("t_seconds,eye_lon,eye_lat,max_wind_mps,rmw_m,central_pressure_pa,radius_outer_m\n")
        for r in rows:
            f.write(",".join(repr(v) for v in r) + "\n")


def main():
    write_asc("synthetic_shelf.asc", -98.0, 22.0, 0.05, 201, 181, lambda lon, lat: shelf_profile(lat))

    # Gulf-like basin for the demonstration config: shelf ring towards the north and west coasts
    def gulf(lon, lat):
        d_north = 30.0 - lat
        d_west = lon + 97.5
        d = min(d_north, d_west)
        if d < 0.0:
            return 2.0 + 10.0 * min(1.0, -d)
        if d < 1.5:
            return -2.0 - 98.0 * d / 1.5
        if d < 3.0:
            return -100.0 - 3200.0 * (d - 1.5) / 1.5
        return -3300.0

    write_asc("gulf_like.asc", -99.0, 8.0, 0.1, 191, 241, gulf)

    hour = 3600.0
    write_track("synthetic_track.csv", [
        (0.0, -93.0, 23.0, 50.0, 40.0e3, 96000.0, 400.0e3),
        (30 * hour, -93.0, 30.5, 50.0, 40.0e3, 96000.0, 400.0e3),
    ])
    # rough positions of a 2008 Gulf hurricane, for demonstration only; winds
    # chosen so that Holland B stays near 1.1
    write_track("ike_like_track.csv", [
        (0 * hour, -84.6, 23.2, 45.0, 45.0e3, 96800.0, 500.0e3),
        (12 * hour, -86.0, 24.0, 49.0, 45.0e3, 95800.0, 500.0e3),
        (24 * hour, -87.6, 24.6, 54.0, 45.0e3, 94500.0, 500.0e3),
        (36 * hour, -89.3, 25.3, 54.0, 45.0e3, 94400.0, 500.0e3),
        (48 * hour, -91.2, 26.2, 51.0, 45.0e3, 95400.0, 500.0e3),
        (60 * hour, -93.2, 27.5, 51.0, 45.0e3, 95400.0, 500.0e3),
        (72 * hour, -94.4, 28.7, 52.0, 45.0e3, 95200.0, 500.0e3),
        (79 * hour, -94.7, 29.3, 52.0, 45.0e3, 95100.0, 500.0e3),
        (90 * hour, -95.3, 31.0, 46.0, 45.0e3, 96500.0, 500.0e3),
    ])


if __name__ == "__main__":
    main()
