"""Shared brute-force utilities kept independent of the code under test."""

from conjstab import BallSpec, Subgroup, Word, enumerate_ball
from conjstab.words import free_reduce


def ball_words(alphabet, radius):
    return list(enumerate_ball(BallSpec(alphabet, radius)))


def products_ball(words, depth):
    """All reduced products of at most `depth` factors drawn from
    `words` and their inverses.  Returns a set of letter tuples."""
    factors = [w.letters for w in words]
    factors += [tuple(-l for l in reversed(ls)) for ls in factors]
    reached = {()}
    frontier = {()}
    for _ in range(depth):
        nxt = set()
        for prefix in frontier:
            for f in factors:
                product = free_reduce(prefix + f)
                if product not in reached:
                    reached.add(product)
                    nxt.add(product)
        frontier = nxt
    return reached


def brute_membership(H: Subgroup, w: Word, depth: int = 6) -> bool:
    """Membership by exhausting basis products.

    Sound always; complete for |w| <= depth because a reduced product of k
    basis elements has length at least k (each factor crosses its own
    non-tree edge and those letters never cancel).
    """
    return w.letters in products_ball(H.basis(), depth)
