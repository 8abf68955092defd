import random
from pathlib import Path

import pytest

from mllp_goi.formula import NegAtom, negate, polarity, Polarity
from mllp_goi.proof import (
    Ax,
    CutRule,
    DownRule,
    ParRule,
    Proof,
    TensorRule,
    UpRule,
    check,
    move_to_last,
    rule_count,
)

CORPUS = Path(__file__).resolve().parents[1] / "src" / "mllp_goi" / "corpus"


@pytest.fixture(scope="session")
def corpus() -> dict[str, str]:
    return {p.stem: p.read_text().strip() for p in CORPUS.glob("*.mllp")}


def random_proof(rng: random.Random, max_rules: int,
                 atoms: tuple[str, ...] = ("X", "Y")) -> Proof:
    """Grow a random well-formed proof with at most max_rules logical rules.

    Used for properties that need bigger samples than exhaustive
    enumeration can reach; every result passes `check` by construction.
    """
    p: Proof = Ax(NegAtom(rng.choice(atoms)))
    while True:
        budget = max_rules - rule_count(p)
        if budget < 1:
            return p
        s = check(p)
        gamma = s.gamma
        negs = [i for i, f in enumerate(gamma) if polarity(f) is Polarity.NEGATIVE]
        pos = s.positives()
        moves = []
        if len(negs) >= 2:
            moves.append("par")
        if not pos:
            moves.append("dn")
        if pos:
            moves.append("up")
        if budget >= 2:
            moves += ["tensor", "cut"] * 2
        if not moves:
            return p
        move = rng.choice(moves)
        if move == "par":
            i, j = rng.sample(negs, 2)
            p = ParRule(p, i, j)
        elif move == "dn":
            p = DownRule(p, rng.randrange(len(gamma)))
        elif move == "up":
            p = UpRule(p, pos[0])
        else:
            q = random_proof(rng, max(1, (budget - 1) // 2), atoms)
            sq = check(q)
            qpos = sq.positives()
            if move == "tensor" and pos and len(qpos) == 1:
                p = TensorRule(move_to_last(p, pos[0]), move_to_last(q, qpos[0]))
            elif move == "cut" and len(qpos) == 1:
                dual = sq.gamma[qpos[0]]
                spots = [i for i, f in enumerate(gamma)
                         if polarity(f) is Polarity.NEGATIVE and negate(f) == dual]
                if spots:
                    p = CutRule(move_to_last(p, rng.choice(spots)),
                                move_to_last(q, qpos[0]))
