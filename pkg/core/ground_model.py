"""
Ground ASP programs for aspine.
Atom table, rules and constraints, the canonical text parser and printer,
and the immediate-consequence operator.
"""

import re
import sys
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

ATOM_PATTERN = re.compile(r"[a-zA-Z_][a-zA-Z0-9_(),]*")


class ParseError(ValueError):
    """Syntax error in canonical program text."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class AtomTable:
    """Bijective atom id <-> name mapping. Ids start at 1; 0 is the null atom."""

    def __init__(self, names: Iterable[str] = ()):
        self._names: List[Optional[str]] = [None]
        self._ids: Dict[str, int] = {}
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> int:
        atom_id = self._ids.get(name)
        if atom_id is None:
            atom_id = len(self._names)
            self._names.append(name)
            self._ids[name] = atom_id
        return atom_id

    def name(self, atom_id: int) -> str:
        return self._names[atom_id]

    def id_of(self, name: str) -> int:
        return self._ids[name]

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._names) - 1

    def ids(self) -> range:
        return range(1, len(self._names))

    def names(self) -> List[str]:
        return self._names[1:]


@dataclass(frozen=True)
class Rule:
    """head <- pos_body, not neg_body. head == 0 marks a constraint."""
    head: int
    pos_body: Tuple[int, ...] = ()
    neg_body: Tuple[int, ...] = ()

    @property
    def is_constraint(self) -> bool:
        return self.head == 0

    @property
    def is_consistent(self) -> bool:
        return not set(self.pos_body) & set(self.neg_body)

    @property
    def atoms(self) -> Set[int]:
        atoms = set(self.pos_body) | set(self.neg_body)
        if self.head:
            atoms.add(self.head)
        return atoms


def make_rule(head: int, pos_body: Iterable[int] = (), neg_body: Iterable[int] = ()) -> Rule:
    """Build a rule with sorted, duplicate-free bodies."""
    return Rule(head, tuple(sorted(set(pos_body))), tuple(sorted(set(neg_body))))


@dataclass
class GroundProgram:
    atoms: AtomTable = field(default_factory=AtomTable)
    rules: List[Rule] = field(default_factory=list)
    constraints: List[Rule] = field(default_factory=list)
    rules_of: Dict[int, List[int]] = field(default_factory=dict)

    def add_rule(self, rule: Rule) -> int:
        """Add a headed rule or a constraint; returns its index in its own list."""
        for atom in rule.atoms:
            if atom < 1 or atom > len(self.atoms):
                raise ValueError(f"rule references unknown atom id {atom}")
        if rule.is_constraint:
            self.constraints.append(rule)
            return len(self.constraints) - 1
        self.rules.append(rule)
        index = len(self.rules) - 1
        self.rules_of.setdefault(rule.head, []).append(index)
        return index

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    def defining_rules(self, atom: int) -> List[int]:
        return self.rules_of.get(atom, [])

    def names_of(self, atoms: Iterable[int]) -> FrozenSet[str]:
        return frozenset(self.atoms.name(a) for a in atoms)


class ProgramParser:
    """Parser for the canonical one-statement-per-line format."""

    def parse(self, text: Union[str, bytes]) -> GroundProgram:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        program = GroundProgram()
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("%", 1)[0].strip()
            if not line:
                continue
            self._parse_statement(program, line, number)
        return program

    def _parse_statement(self, program: GroundProgram, line: str, number: int):
        if not line.endswith("."):
            raise ParseError(number, "statement must end with '.'")
        body_text = line[:-1].strip()
        if ":-" in body_text:
            head_text, body_part = body_text.split(":-", 1)
            head_text = head_text.strip()
            literals = self._split_body(body_part, number)
            if not literals:
                raise ParseError(number, "empty rule body")
        else:
            head_text, literals = body_text, []
            if not head_text:
                raise ParseError(number, "empty statement")

        head = 0
        if head_text:
            head = program.atoms.intern(self._atom(head_text, number))
        elif not literals:
            raise ParseError(number, "empty constraint")

        positive, negative = [], []
        for literal in literals:
            if literal.startswith("not") and len(literal) > 3 and literal[3].isspace():
                negative.append(program.atoms.intern(self._atom(literal[3:].strip(), number)))
            else:
                positive.append(program.atoms.intern(self._atom(literal, number)))
        program.add_rule(make_rule(head, positive, negative))

    def _split_body(self, body: str, number: int) -> List[str]:
        literals, depth, current = [], 0, []
        for char in body:
            if char == "(":
                depth += 1
            elif char == ")":
                depth -= 1
                if depth < 0:
                    raise ParseError(number, "unbalanced parentheses")
            if char == "," and depth == 0:
                literals.append("".join(current).strip())
                current = []
            else:
                current.append(char)
        if depth != 0:
            raise ParseError(number, "unbalanced parentheses")
        tail = "".join(current).strip()
        if tail or literals:
            literals.append(tail)
        if any(not literal for literal in literals):
            raise ParseError(number, "empty literal in body")
        return literals

    def _atom(self, text: str, number: int) -> str:
        if not ATOM_PATTERN.fullmatch(text) or text == "not":
            raise ParseError(number, f"invalid atom '{text}'")
        return text


def format_rule(program: GroundProgram, rule: Rule) -> str:
    name = program.atoms.name
    body = [name(a) for a in rule.pos_body] + [f"not {name(a)}" for a in rule.neg_body]
    head = name(rule.head) if rule.head else ""
    if not body:
        return f"{head}."
    if head:
        return f"{head} :- {', '.join(body)}."
    return f":- {', '.join(body)}."


def format_program(program: GroundProgram) -> str:
    """Print a program in canonical format (rules first, then constraints)."""
    lines = [format_rule(program, rule) for rule in program.rules]
    lines += [format_rule(program, rule) for rule in program.constraints]
    return "\n".join(lines) + ("\n" if lines else "")


def tp_step(program: GroundProgram, interp: Set[int]) -> Set[int]:
    """Immediate consequences: heads of rules with body+ in interp and body- outside it."""
    return {
        rule.head for rule in program.rules
        if all(p in interp for p in rule.pos_body) and not any(q in interp for q in rule.neg_body)
    }


def founded_atoms(program: GroundProgram, interp: Set[int]) -> Set[int]:
    """
    Replay rule applications in the order they can fire.

    Starting from nothing, repeatedly adds heads of rules whose positive body is
    already derived and whose negative body is false in ``interp``. A candidate
    whose true atoms equal the result satisfies persistence of reason.
    """
    derived: Set[int] = set()
    pending = [rule for rule in program.rules if not any(q in interp for q in rule.neg_body)]
    changed = True
    while changed:
        changed = False
        remaining = []
        for rule in pending:
            if all(p in derived for p in rule.pos_body):
                if rule.head not in derived:
                    derived.add(rule.head)
                    changed = True
            else:
                remaining.append(rule)
        pending = remaining
    return derived


def validate(program: GroundProgram) -> List[str]:
    """Return diagnostics; an empty list means nothing suspicious."""
    diagnostics = []
    if not program.rules and not program.constraints:
        diagnostics.append("program is empty")
    for atom in program.atoms.ids():
        if not program.defining_rules(atom):
            diagnostics.append(f"atom {program.atoms.name(atom)} has no rules")
    for index, rule in enumerate(program.rules, start=1):
        if not rule.is_consistent:
            diagnostics.append(f"rule {index} body is inconsistent")
    for index, rule in enumerate(program.constraints, start=1):
        if not rule.is_consistent:
            diagnostics.append(f"constraint {index} body is inconsistent")
    return diagnostics


# Convenience functions
def parse_program(text: Union[str, bytes]) -> GroundProgram:
    """Parse canonical program text."""
    return ProgramParser().parse(text)


def read_program(path: str) -> GroundProgram:
    """Read a program from a file path, or stdin when path is '-'."""
    if path == "-":
        return parse_program(sys.stdin.read())
    with open(path, "rb") as f:
        return parse_program(f.read())
