"""Named-object instances and their JSON wire form.

An instance bundles a ground size, a closure convention, and named
systems / permutations / functions / flows.  Subsets travel as sorted
index arrays, permutations and functions in one-line notation, flows as
references to named permutations.  Parsing validates every invariant and
reports the offending field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .cantor import EndoFunction
from .dynsys import Autobolism, DiscreteFlow
from .setsys import ClosureConvention, GroundSet, SetSystem

_CONVENTIONS = {
    "full": ClosureConvention.FULL,
    "nonempty": ClosureConvention.NONEMPTY,
}


class InstanceError(ValueError):
    """Malformed instance text: carries the offending field path."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


def convention_name(conv: ClosureConvention) -> str:
    return conv.value


def parse_convention(name: str, path: str = "convention") -> ClosureConvention:
    try:
        return _CONVENTIONS[name]
    except KeyError:
        raise InstanceError(path, f"unknown convention {name!r} (full|nonempty)") from None


@dataclass
class Instance:
    ground: GroundSet
    convention: ClosureConvention = ClosureConvention.FULL
    systems: dict[str, SetSystem] = field(default_factory=dict)
    permutations: dict[str, Autobolism] = field(default_factory=dict)
    functions: dict[str, EndoFunction] = field(default_factory=dict)
    flows: dict[str, DiscreteFlow] = field(default_factory=dict)

    def names(self) -> list[str]:
        out: list[str] = []
        for section in (self.systems, self.permutations, self.functions, self.flows):
            out.extend(section)
        return out

    def to_dict(self) -> dict[str, Any]:
        """Canonical wire form; the inverse of from_dict."""
        doc: dict[str, Any] = {
            "ground": self.ground.size,
            "convention": convention_name(self.convention),
        }
        if self.systems:
            doc["systems"] = {
                name: [sorted(Subset_indices(self.ground, m)) for m in sys.masks]
                for name, sys in self.systems.items()
            }
        if self.permutations:
            doc["permutations"] = {
                name: list(p.image) for name, p in self.permutations.items()
            }
        if self.functions:
            doc["functions"] = {
                name: list(f.image) for name, f in self.functions.items()
            }
        if self.flows:
            flows: dict[str, Any] = {}
            for name, fl in self.flows.items():
                gens = fl.generators()
                gen_names = [self._perm_name(g) for g in gens]
                if fl.is_cyclic:
                    flows[name] = {"cyclic": gen_names[0]}
                else:
                    flows[name] = {"group": gen_names}
            doc["flows"] = flows
        return doc

    def _perm_name(self, perm: Autobolism) -> str:
        for name, p in self.permutations.items():
            if p == perm:
                return name
        raise InstanceError("flows", f"flow generator {perm.image} has no name")

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "Instance":
        if not isinstance(doc, Mapping):
            raise InstanceError("$", "instance must be a JSON object")
        try:
            size = int(doc["ground"])
        except KeyError:
            raise InstanceError("ground", "missing") from None
        except (TypeError, ValueError):
            raise InstanceError("ground", "must be an integer") from None
        try:
            ground = GroundSet(size)
        except ValueError as exc:
            raise InstanceError("ground", str(exc)) from None

        conv = parse_convention(str(doc.get("convention", "full")))
        inst = cls(ground, conv)

        for name, rows in dict(doc.get("systems", {})).items():
            path = f"systems.{name}"
            if not isinstance(rows, list):
                raise InstanceError(path, "must be a list of subsets")
            masks = []
            for i, row in enumerate(rows):
                masks.append(_parse_subset(ground, row, f"{path}[{i}]"))
            if len(set(masks)) != len(masks):
                raise InstanceError(path, "duplicate subset in system")
            inst.systems[name] = SetSystem(ground, tuple(masks))

        for name, img in dict(doc.get("permutations", {})).items():
            path = f"permutations.{name}"
            try:
                inst.permutations[name] = Autobolism.of(ground, [int(v) for v in img])
            except (TypeError, ValueError) as exc:
                raise InstanceError(path, str(exc)) from None

        for name, img in dict(doc.get("functions", {})).items():
            path = f"functions.{name}"
            try:
                inst.functions[name] = EndoFunction.of(ground, [int(v) for v in img])
            except (TypeError, ValueError) as exc:
                raise InstanceError(path, str(exc)) from None

        for name, spec in dict(doc.get("flows", {})).items():
            path = f"flows.{name}"
            if not isinstance(spec, Mapping) or len(spec) != 1:
                raise InstanceError(path, 'must be {"cyclic": name} or {"group": [names]}')
            if "cyclic" in spec:
                pname = spec["cyclic"]
                if pname not in inst.permutations:
                    raise InstanceError(path, f"unknown permutation {pname!r}")
                inst.flows[name] = DiscreteFlow.cyclic(inst.permutations[pname])
            elif "group" in spec:
                pnames = spec["group"]
                if not isinstance(pnames, list) or not pnames:
                    raise InstanceError(path, "group flow needs a nonempty generator list")
                gens = []
                for pname in pnames:
                    if pname not in inst.permutations:
                        raise InstanceError(path, f"unknown permutation {pname!r}")
                    gens.append(inst.permutations[pname])
                inst.flows[name] = DiscreteFlow.of_group(gens)
            else:
                raise InstanceError(path, 'must be {"cyclic": name} or {"group": [names]}')

        names = inst.names()
        if len(set(names)) != len(names):
            raise InstanceError("$", "object names must be unique across sections")
        return inst


def Subset_indices(ground: GroundSet, mask: int) -> list[int]:
    return [i for i in range(ground.size) if mask >> i & 1]


def _parse_subset(ground: GroundSet, row: Any, path: str) -> int:
    if not isinstance(row, list):
        raise InstanceError(path, "subset must be an index array")
    mask = 0
    for v in row:
        try:
            idx = int(v)
        except (TypeError, ValueError):
            raise InstanceError(path, f"bad index {v!r}") from None
        if not 0 <= idx < ground.size:
            raise InstanceError(path, f"index {idx} outside ground of size {ground.size}")
        mask |= 1 << idx
    return mask
