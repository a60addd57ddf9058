import random

from biquotient.action import freeness_check
from biquotient.randomize import random_normal_pair, random_two_step


def test_random_algebras_are_two_step_and_seeded():
    a = random_two_step(random.Random(5))
    b = random_two_step(random.Random(5))
    assert a.step == 2 and a.brackets == b.brackets


def test_random_pairs_are_free():
    rng = random.Random(6)
    found = 0
    while found < 5:
        A = random_two_step(rng)
        pair = random_normal_pair(A, rng)
        if pair is None:
            continue
        v, h = pair
        assert freeness_check(A, v, h, samples=50).verdict == "Certified"
        found += 1
