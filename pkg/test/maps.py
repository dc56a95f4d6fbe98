import numpy as np

from dissection import Environment


def rectangle() -> Environment:
    return Environment.create([(0, 0), (2, 0), (2, 1), (0, 1)], [], "rectangle")


def unit_square() -> Environment:
    return Environment.create([(0, 0), (1, 0), (1, 1), (0, 1)], [], "square")


# The L-shaped hexagon, with (1,0) kept as a vertex so that the cutline
# can end there
def l_shape() -> Environment:
    return Environment.create(
        [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)], [], "l-shape"
    )


# Square [0,3]^2 with the hole [1,2]^2
def ring() -> Environment:
    return Environment.create(
        [(0, 0), (3, 0), (3, 3), (0, 3)],
        [[(1, 1), (2, 1), (2, 2), (1, 2)]],
        "ring",
    )


def two_obstacles() -> Environment:
    return Environment.create(
        [(0, 0), (6, 0), (6, 3), (0, 3)],
        [
            [(1, 1), (2, 1), (2, 2), (1, 2)],
            [(4, 1), (5, 1), (5, 2), (4, 2)],
        ],
        "two-obstacles",
    )


def l_corridor() -> Environment:
    return Environment.create(
        [(0, 0), (4, 0), (4, 1), (1, 1), (1, 4), (0, 4)], [], "l-corridor"
    )


def cluttered(
    count: int, size: float = 10.0, seed: int = 42, gap: float = 0.3
) -> Environment:
    """
    Axis-aligned box obstacles dropped at random into a square, rejecting
    any box within `gap` of the border or of another box.
    """
    rng = np.random.default_rng(seed)
    boxes: list[tuple[float, float, float, float]] = []
    tries = 0
    while len(boxes) < count:
        tries += 1
        assert tries < 100_000, "cannot place {} obstacles".format(count)
        w, h = rng.uniform(0.4, 1.4, size=2)
        x = rng.uniform(gap, size - gap - w)
        y = rng.uniform(gap, size - gap - h)
        box = (float(x), float(y), float(x + w), float(y + h))
        if any(
            box[0] < b[2] + gap
            and b[0] < box[2] + gap
            and box[1] < b[3] + gap
            and b[1] < box[3] + gap
            for b in boxes
        ):
            continue
        boxes.append(box)
    obstacles = [[(x0, y0), (x1, y0), (x1, y1), (x0, y1)] for x0, y0, x1, y1 in boxes]
    return Environment.create(
        [(0, 0), (size, 0), (size, size), (0, size)],
        obstacles,
        "cluttered-{}-{}".format(count, seed),
    )
