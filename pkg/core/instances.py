"""
Program generators for aspine.
Random ground programs for oracle cross-checks plus a few structured
families (pigeonhole, graph colouring, grid tours) for throughput runs.
All generators return canonical program text.
"""

import random
from typing import Dict, List, Optional, Sequence


def random_program(rng: random.Random, atoms: int = 12, rules: int = 25, constraints: int = 5,
                   neg_prob: float = 0.4, max_body: int = 3) -> str:
    """
    Random program with mixed positive and default-negated bodies.

    Args:
        rng: Seeded random source
        atoms: Upper bound on distinct atoms (a1 .. aN)
        rules: Upper bound on headed rules
        constraints: Upper bound on constraints
        neg_prob: Probability that a body literal is negated
        max_body: Maximum body size

    Returns:
        Program text
    """
    names = [f"a{i}" for i in range(1, max(atoms, 1) + 1)]
    lines = []

    def body() -> List[str]:
        size = rng.randint(0, max_body)
        chosen = rng.sample(names, min(size, len(names)))
        return [f"not {a}" if rng.random() < neg_prob else a for a in chosen]

    for _ in range(rng.randint(1, max(rules, 1))):
        head = rng.choice(names)
        literals = body()
        lines.append(f"{head} :- {', '.join(literals)}." if literals else f"{head}.")
    for _ in range(rng.randint(0, constraints)):
        literals = body() or [rng.choice(names)]
        lines.append(f":- {', '.join(literals)}.")
    return "\n".join(lines) + "\n"


def random_corpus(count: int, seed: int = 0, **kwargs) -> List[str]:
    rng = random.Random(seed)
    return [random_program(rng, **kwargs) for _ in range(count)]


HANDCRAFTED: Dict[str, str] = {
    "choice": "a :- not b.\nb :- not a.\n",
    "positive_loop": "p :- q.\nq :- p.\n",
    "fact_constraint": "a.\n:- a.\n",
    "fact": "a.\n",
    "supported_loop_forced": "p :- q.\nq :- p.\n:- not p.\n",
    "loop_with_exit": "p :- q.\nq :- p.\np :- not r.\nr :- not p.\n",
    "odd_loop": "a :- not a.\n",
    "even_loop_constraint": "a :- not b.\nb :- not a.\n:- a.\n",
    "chain": "a.\nb :- a.\nc :- b, not d.\nd :- not c.\n",
    "self_support": "a :- a.\nb :- not a.\n",
    "three_choice": (
        "a :- not b, not c.\nb :- not a, not c.\nc :- not a, not b.\n"
    ),
    "undefined_body": "a :- b.\nc :- not b.\n",
    "inconsistent_rule": "a :- b, not b.\nb :- not c.\nc :- not b.\n",
    "loop_guarded": "p :- q, not s.\nq :- p.\nq :- not s.\ns :- not q.\n",
}


def handcrafted() -> Dict[str, str]:
    """Named loop and constraint programs."""
    return dict(HANDCRAFTED)


def pigeonhole(pigeons: int, holes: int) -> str:
    """Place every pigeon in some hole, no two in the same hole."""
    lines = []
    for i in range(1, pigeons + 1):
        for j in range(1, holes + 1):
            lines.append(f"in(p{i},h{j}) :- not out(p{i},h{j}).")
            lines.append(f"out(p{i},h{j}) :- not in(p{i},h{j}).")
            lines.append(f"placed(p{i}) :- in(p{i},h{j}).")
        lines.append(f":- not placed(p{i}).")
    for j in range(1, holes + 1):
        for i in range(1, pigeons + 1):
            for k in range(i + 1, pigeons + 1):
                lines.append(f":- in(p{i},h{j}), in(p{k},h{j}).")
    return "\n".join(lines) + "\n"


def graph_coloring(nodes: int, edge_prob: float, colors: int, seed: int = 0) -> str:
    """Colour a random graph with exactly one of ``colors`` colours per node."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(1, nodes + 1) for v in range(u + 1, nodes + 1)
             if rng.random() < edge_prob]
    lines = []
    for v in range(1, nodes + 1):
        for c in range(1, colors + 1):
            lines.append(f"col(v{v},c{c}) :- not ncol(v{v},c{c}).")
            lines.append(f"ncol(v{v},c{c}) :- not col(v{v},c{c}).")
            lines.append(f"colored(v{v}) :- col(v{v},c{c}).")
            for d in range(c + 1, colors + 1):
                lines.append(f":- col(v{v},c{c}), col(v{v},c{d}).")
        lines.append(f":- not colored(v{v}).")
    for u, v in edges:
        for c in range(1, colors + 1):
            lines.append(f":- col(v{u},c{c}), col(v{v},c{c}).")
    return "\n".join(lines) + "\n"


def _neighbours(x: int, y: int, width: int, height: int) -> List[str]:
    steps = [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
    return [f"c{a}_{b}" for a, b in steps if 0 <= a < width and 0 <= b < height]


def visitall(width: int, height: int) -> str:
    """
    Tour a grid from its corner: every cell picks at most one successor and
    every cell must be reached. Reachability is positive recursion over the
    chosen moves, so the programs are full of loops.
    """
    lines = ["reach(c0_0)."]
    for x in range(width):
        for y in range(height):
            cell = f"c{x}_{y}"
            succ = _neighbours(x, y, width, height)
            for nxt in succ:
                lines.append(f"move({cell},{nxt}) :- not stay({cell},{nxt}).")
                lines.append(f"stay({cell},{nxt}) :- not move({cell},{nxt}).")
                lines.append(f"reach({nxt}) :- reach({cell}), move({cell},{nxt}).")
            for i, first in enumerate(succ):
                for second in succ[i + 1:]:
                    lines.append(f":- move({cell},{first}), move({cell},{second}).")
            lines.append(f":- not reach({cell}).")
    return "\n".join(lines) + "\n"


def structured_suite(quick: bool = False) -> Dict[str, str]:
    """Named instances for fwd-vs-res comparisons."""
    if quick:
        return {
            "pigeonhole_4_3": pigeonhole(4, 3),
            "coloring_8_3": graph_coloring(8, 0.4, 3, seed=1),
            "visitall_2x3": visitall(2, 3),
        }
    return {
        "pigeonhole_5_4": pigeonhole(5, 4),
        "pigeonhole_6_5": pigeonhole(6, 5),
        "pigeonhole_7_6": pigeonhole(7, 6),
        "coloring_15_3": graph_coloring(15, 0.3, 3, seed=1),
        "coloring_20_4": graph_coloring(20, 0.35, 4, seed=2),
        "visitall_3x3": visitall(3, 3),
        "visitall_3x4": visitall(3, 4),
    }


def generate(kind: str, seed: int = 0, sizes: Optional[Sequence[int]] = None) -> str:
    """Single instance by family name, for the CLI."""
    sizes = list(sizes or [])
    if kind == "random":
        return random_program(random.Random(seed), *sizes[:3])
    if kind == "pigeonhole":
        pigeons, holes = (sizes[:2] + [5, 4][len(sizes[:2]):])
        return pigeonhole(pigeons, holes)
    if kind == "coloring":
        nodes, colors = (sizes[:2] + [10, 3][len(sizes[:2]):])
        return graph_coloring(nodes, 0.3, colors, seed)
    if kind == "visitall":
        width, height = (sizes[:2] + [3, 3][len(sizes[:2]):])
        return visitall(width, height)
    raise ValueError(f"unknown instance family '{kind}'")
