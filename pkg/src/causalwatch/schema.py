"""Attribute schema: declared categorical domains, numeric binning, class labels."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import SchemaViolation


@dataclass(frozen=True)
class Binning:
    """Equal-width binning rule for a numeric attribute."""

    min: float
    max: float
    bins: int

    def __post_init__(self):
        if self.bins < 2:
            raise SchemaViolation(f"bin_count must be >= 2, got {self.bins}")
        if not (self.min < self.max):
            raise SchemaViolation(f"binning requires min < max, got [{self.min}, {self.max}]")


@dataclass(frozen=True)
class Attribute:
    name: str
    kind: str  # "categorical" | "numeric"
    domain: tuple[str, ...] = ()
    binning: Binning | None = None

    def __post_init__(self):
        if self.kind == "categorical":
            if not self.domain:
                raise SchemaViolation(f"attribute {self.name!r}: empty categorical domain")
            if len(set(self.domain)) != len(self.domain):
                raise SchemaViolation(f"attribute {self.name!r}: duplicate domain values")
        elif self.kind == "numeric":
            if self.binning is None:
                raise SchemaViolation(f"attribute {self.name!r}: numeric kind needs binning")
            # canonical bin labels double as the categorical domain
            object.__setattr__(
                self, "domain", tuple(f"bin{i}" for i in range(self.binning.bins))
            )
        else:
            raise SchemaViolation(f"attribute {self.name!r}: unknown kind {self.kind!r}")


def discretize(attr: Attribute, raw: float) -> str:
    """Map a raw number to an equal-width bin label, saturating at the edges.

    Bins are half-open [lo, hi); raw == max lands in the last bin.
    """
    if attr.kind != "numeric":
        raise SchemaViolation(f"attribute {attr.name!r} is not numeric")
    if not math.isfinite(raw):
        raise SchemaViolation(f"attribute {attr.name!r}: non-finite value {raw!r}")
    b = attr.binning
    idx = int((raw - b.min) / (b.max - b.min) * b.bins)
    idx = max(0, min(b.bins - 1, idx))
    return f"bin{idx}"


@dataclass(frozen=True)
class AttributeSchema:
    attributes: tuple[Attribute, ...]
    class_labels: tuple[str, ...]
    distress_class: str
    _attr_index: dict = field(init=False, repr=False, compare=False)
    _value_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise SchemaViolation("duplicate attribute names")
        if not self.class_labels:
            raise SchemaViolation("schema needs at least one class label")
        if len(set(self.class_labels)) != len(self.class_labels):
            raise SchemaViolation("duplicate class labels")
        if self.distress_class not in self.class_labels:
            raise SchemaViolation(
                f"distress_class {self.distress_class!r} not among class labels"
            )
        object.__setattr__(self, "_attr_index", {a.name: i for i, a in enumerate(self.attributes)})
        object.__setattr__(
            self,
            "_value_index",
            {a.name: {v: j for j, v in enumerate(a.domain)} for a in self.attributes},
        )

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def n_classes(self) -> int:
        return len(self.class_labels)

    @property
    def max_domain(self) -> int:
        return max(len(a.domain) for a in self.attributes) if self.attributes else 0

    def attribute(self, name: str) -> Attribute:
        try:
            return self.attributes[self._attr_index[name]]
        except KeyError:
            raise SchemaViolation(f"unknown attribute {name!r}") from None

    def attr_index(self, name: str) -> int:
        try:
            return self._attr_index[name]
        except KeyError:
            raise SchemaViolation(f"unknown attribute {name!r}") from None

    def class_index(self, label: str) -> int:
        try:
            return self.class_labels.index(label)
        except ValueError:
            raise SchemaViolation(f"unknown class label {label!r}") from None

    def canonical_value(self, attr_name: str, raw) -> str:
        """Normalize a raw value: discretize numerics, validate categoricals.

        Numeric attributes also accept an already-canonical bin label.
        """
        attr = self.attribute(attr_name)
        if attr.kind == "numeric":
            if isinstance(raw, (int, float)) and not isinstance(raw, bool):
                return discretize(attr, float(raw))
            if isinstance(raw, str):
                if raw in self._value_index[attr_name]:
                    return raw
                try:
                    return discretize(attr, float(raw))
                except ValueError:
                    pass
            raise SchemaViolation(
                f"attribute {attr_name!r}: cannot interpret value {raw!r}"
            )
        value = str(raw)
        if value not in self._value_index[attr_name]:
            raise SchemaViolation(
                f"attribute {attr_name!r}: value {value!r} outside domain"
            )
        return value

    def value_index(self, attr_name: str, value: str) -> int:
        try:
            return self._value_index[attr_name][value]
        except KeyError:
            raise SchemaViolation(
                f"attribute {attr_name!r}: value {value!r} outside domain"
            ) from None

    @classmethod
    def from_dict(cls, data: Mapping) -> "AttributeSchema":
        attrs = []
        for entry in data["attributes"]:
            kind = entry["kind"]
            if kind == "numeric":
                b = entry["binning"]
                attrs.append(
                    Attribute(
                        name=entry["name"],
                        kind="numeric",
                        binning=Binning(float(b["min"]), float(b["max"]), int(b["bins"])),
                    )
                )
            else:
                attrs.append(
                    Attribute(
                        name=entry["name"],
                        kind=kind,
                        domain=tuple(str(v) for v in entry["domain"]),
                    )
                )
        return cls(
            attributes=tuple(attrs),
            class_labels=tuple(str(c) for c in data["classes"]),
            distress_class=str(data["distress_class"]),
        )

    @classmethod
    def from_file(cls, path) -> "AttributeSchema":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        out = {"attributes": [], "classes": list(self.class_labels), "distress_class": self.distress_class}
        for a in self.attributes:
            if a.kind == "numeric":
                out["attributes"].append(
                    {"name": a.name, "kind": "numeric",
                     "binning": {"min": a.binning.min, "max": a.binning.max, "bins": a.binning.bins}}
                )
            else:
                out["attributes"].append(
                    {"name": a.name, "kind": "categorical", "domain": list(a.domain)}
                )
        return out
