from typing import Sequence, Tuple

from shapely.geometry import MultiPoint


def in_convex_position(points: Sequence[Tuple[int, int]]) -> bool:
    # every point must be a vertex of the hull
    if len(points) < 3:
        return len(set(points)) == len(points)
    hull = MultiPoint([(float(x), float(y)) for x, y in points]).convex_hull
    if hull.geom_type != "Polygon":
        return False
    vertices = {(round(x), round(y)) for x, y in hull.exterior.coords}
    return vertices == set(points) and len(set(points)) == len(points)
