"""
Completion compiler for aspine.
Turns a ground program into completion and constraint nogoods over program
atoms plus the auxiliary body atoms b_r, t_r and n_r.

Signed literals are plain ints: +p stands for Tp and -p for Fp.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .ground_model import GroundProgram

SignedLiteral = int

ORIGIN_COMPLETION = "completion"
ORIGIN_CONSTRAINT = "constraint"
ORIGIN_LEARNED = "learned"


def T(atom: int) -> SignedLiteral:
    return atom


def F(atom: int) -> SignedLiteral:
    return -atom


def complement(lit: SignedLiteral) -> SignedLiteral:
    return -lit


def lit_atom(lit: SignedLiteral) -> int:
    return lit if lit > 0 else -lit


@dataclass(frozen=True)
class Nogood:
    """Duplicate-free literal set, sorted by atom id."""
    literals: Tuple[SignedLiteral, ...]
    origin: str = ORIGIN_COMPLETION

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)


def make_nogood(literals: Iterable[SignedLiteral], origin: str = ORIGIN_COMPLETION) -> Optional[Nogood]:
    """Canonical nogood, or None when it holds both Tp and Fp."""
    unique = set(literals)
    if any(-lit in unique for lit in unique):
        return None
    return Nogood(tuple(sorted(unique, key=lambda lit: (lit_atom(lit), lit))), origin)


@dataclass(frozen=True)
class AuxEntry:
    rule: int
    b: int
    t: int = 0  # 0 when body+ is empty (elided, true)
    n: int = 0  # 0 when body- is empty (elided, true)
    consistent: bool = True


@dataclass
class AuxMap:
    entries: List[AuxEntry] = field(default_factory=list)
    owner: Dict[int, Tuple[int, str]] = field(default_factory=dict)
    first_aux: int = 1

    def add(self, entry: AuxEntry):
        self.entries.append(entry)
        self.owner[entry.b] = (entry.rule, "b")
        if entry.t:
            self.owner[entry.t] = (entry.rule, "t")
        if entry.n:
            self.owner[entry.n] = (entry.rule, "n")

    def __getitem__(self, rule: int) -> AuxEntry:
        return self.entries[rule]

    def is_aux(self, atom: int) -> bool:
        return atom in self.owner

    @property
    def atom_count(self) -> int:
        return len(self.owner)


class CompletionCompiler:
    """Builds the completion nogoods rule by rule, then atom by atom, then constraints."""

    def __init__(self, program: GroundProgram):
        self.program = program
        self.aux = AuxMap(first_aux=program.atom_count + 1)
        self._next_atom = program.atom_count + 1
        self.nogoods: List[Nogood] = []

    def _fresh(self) -> int:
        atom = self._next_atom
        self._next_atom += 1
        return atom

    def _emit(self, literals: Iterable[SignedLiteral], origin: str = ORIGIN_COMPLETION):
        nogood = make_nogood(literals, origin)
        if nogood is not None:
            self.nogoods.append(nogood)

    def compile(self) -> Tuple[List[Nogood], AuxMap]:
        for index, rule in enumerate(self.program.rules):
            self._compile_rule(index, rule)
        for atom in self.program.atoms.ids():
            self._compile_atom(atom)
        for rule in self.program.constraints:
            self._emit([T(p) for p in rule.pos_body] + [F(q) for q in rule.neg_body], ORIGIN_CONSTRAINT)
        return self.nogoods, self.aux

    def _compile_rule(self, index: int, rule):
        b = self._fresh()
        if not rule.is_consistent:
            # never applicable: b_r is false
            self.aux.add(AuxEntry(index, b, consistent=False))
            self._emit([T(b)])
            return

        t = self._fresh() if rule.pos_body else 0
        n = self._fresh() if rule.neg_body else 0
        self.aux.add(AuxEntry(index, b, t, n))

        # b_r <-> t_r & n_r, with elided parts standing for true
        parts = [x for x in (t, n) if x]
        self._emit([F(b)] + [T(x) for x in parts])
        for x in parts:
            self._emit([T(b), F(x)])

        # t_r <-> body+
        if t:
            for p in rule.pos_body:
                self._emit([T(t), F(p)])
            self._emit([F(t)] + [T(p) for p in rule.pos_body])

        # n_r <-> not body-
        if n:
            for q in rule.neg_body:
                self._emit([T(n), T(q)])
            self._emit([F(n)] + [F(q) for q in rule.neg_body])

    def _compile_atom(self, atom: int):
        rules = self.program.defining_rules(atom)
        if not rules:
            self._emit([T(atom)])
            return
        bodies = [self.aux[r].b for r in rules]
        for b in bodies:
            self._emit([F(atom), T(b)])
        self._emit([T(atom)] + [F(b) for b in bodies])


def nogood_census(program: GroundProgram) -> Dict[str, int]:
    """
    Predict how many nogoods compile_completion emits, per category.

    Args:
        program: The ground program

    Returns:
        Counts for "rule", "atom", "constraint" and "total"
    """
    rule_count = 0
    for rule in program.rules:
        if not rule.is_consistent:
            rule_count += 1
            continue
        pos, neg = len(rule.pos_body), len(rule.neg_body)
        if pos and neg:
            rule_count += 5 + pos + neg
        elif pos:
            rule_count += 3 + pos
        elif neg:
            rule_count += 3 + neg
        else:
            rule_count += 1

    atom_count = sum(1 + len(program.defining_rules(atom)) for atom in program.atoms.ids())
    constraint_count = sum(1 for rule in program.constraints if rule.is_consistent)
    return {
        "rule": rule_count,
        "atom": atom_count,
        "constraint": constraint_count,
        "total": rule_count + atom_count + constraint_count,
    }


def aux_name(aux: AuxMap, atom: int) -> str:
    rule, kind = aux.owner[atom]
    return f"{kind}_r({rule + 1})"


def atom_name(program: GroundProgram, aux: AuxMap, atom: int) -> str:
    if atom <= program.atom_count:
        return program.atoms.name(atom)
    return aux_name(aux, atom)


def format_literal(program: GroundProgram, aux: AuxMap, lit: SignedLiteral) -> str:
    return f"{'T' if lit > 0 else 'F'} {atom_name(program, aux, lit_atom(lit))}"


def dump_nogoods(program: GroundProgram, nogoods: List[Nogood], aux: AuxMap) -> str:
    """One nogood per line as ``{T a, F b_r(1)} origin``."""
    lines = []
    for nogood in nogoods:
        body = ", ".join(format_literal(program, aux, lit) for lit in nogood.literals)
        lines.append(f"{{{body}}} {nogood.origin}")
    return "\n".join(lines) + ("\n" if lines else "")


# Convenience functions
def compile_completion(program: GroundProgram) -> Tuple[List[Nogood], AuxMap]:
    """Compile completion and constraint nogoods."""
    return CompletionCompiler(program).compile()
