"""Sheet specifications: validated parameters, JSON loading, bundled presets.

All lengths are millimetres. The x axis is the pull axis (perpendicular to
the discrete ribbons), y runs parallel to the ribbons, z is the out-of-plane
depth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import SpecValidationError

_REQUIRED_FIELDS = ("name", "lx_init", "ly_init", "ribbon_width", "thickness", "material")
_OPTIONAL_FIELDS = ("boundary_margin",)

_PRESETS = ("A", "B", "C", "D", "E")


@dataclass(frozen=True)
class SheetSpec:
    """Static description of one kirigami sheet.

    ``lx_init`` is the boundary extent along the pull axis, ``ly_init`` the
    extent parallel to the discrete ribbons. ``material`` is a metadata tag
    and never enters any computation. ``boundary_margin`` is the width of the
    uncut boundary band; when omitted it defaults to ``ribbon_width``.
    """

    name: str
    lx_init: float
    ly_init: float
    ribbon_width: float
    thickness: float
    material: str = "PET"
    boundary_margin: float | None = None

    def __post_init__(self) -> None:
        if self.boundary_margin is None:
            object.__setattr__(self, "boundary_margin", float(self.ribbon_width))
        for name in ("lx_init", "ly_init", "ribbon_width", "thickness"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise SpecValidationError(f"{name} must be a number, got {value!r}")
            if value <= 0:
                raise SpecValidationError(f"{name} must be positive, got {value!r}")
        if self.boundary_margin < 0:
            raise SpecValidationError("boundary_margin must be non-negative")
        if 2.0 * self.boundary_margin >= self.lx_init:
            raise SpecValidationError(
                "boundary_margin too wide: 2 * boundary_margin must stay below lx_init"
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lx_init": self.lx_init,
            "ly_init": self.ly_init,
            "ribbon_width": self.ribbon_width,
            "boundary_margin": self.boundary_margin,
            "thickness": self.thickness,
            "material": self.material,
        }


def sheet_spec_from_dict(payload: dict, source: str = "<dict>") -> SheetSpec:
    """Build a validated SheetSpec from a parsed JSON object.

    Unknown fields are rejected so that typos in spec files fail loudly.
    """
    if not isinstance(payload, dict):
        raise SpecValidationError(f"{source}: expected a JSON object")
    allowed = set(_REQUIRED_FIELDS) | set(_OPTIONAL_FIELDS)
    unknown = sorted(set(payload) - allowed)
    if unknown:
        raise SpecValidationError(f"{source}: unknown fields {unknown}")
    missing = [f for f in _REQUIRED_FIELDS if f not in payload]
    if missing:
        raise SpecValidationError(f"{source}: missing fields {missing}")
    if not isinstance(payload["name"], str):
        raise SpecValidationError(f"{source}: name must be a string")
    if not isinstance(payload["material"], str):
        raise SpecValidationError(f"{source}: material must be a string")
    try:
        return SheetSpec(
            name=payload["name"],
            lx_init=payload["lx_init"],
            ly_init=payload["ly_init"],
            ribbon_width=payload["ribbon_width"],
            thickness=payload["thickness"],
            material=payload["material"],
            boundary_margin=payload.get("boundary_margin"),
        )
    except SpecValidationError as exc:
        raise SpecValidationError(f"{source}: {exc}") from None


def load_sheet_spec(path: str | Path) -> SheetSpec:
    """Read a SheetSpec from a JSON file."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecValidationError(f"{path}: not valid JSON ({exc})") from None
    return sheet_spec_from_dict(payload, source=str(path))


def preset_names() -> tuple[str, ...]:
    """Names of the bundled sheet presets."""
    return _PRESETS


def _normalize_preset(name: str) -> str:
    key = name.strip().lower()
    if key.startswith("sheet_"):
        key = key[len("sheet_"):]
    return key.upper()


def sheet_preset(name: str) -> SheetSpec:
    """Load one of the bundled presets by name ("A".."E" or "sheet_e")."""
    key = _normalize_preset(name)
    if key not in _PRESETS:
        raise SpecValidationError(f"unknown sheet preset {name!r}; available: {', '.join(_PRESETS)}")
    payload = (
        resources.files("kirisheet")
        .joinpath(f"specs/sheet_{key.lower()}.json")
        .read_text(encoding="utf-8")
    )
    return sheet_spec_from_dict(json.loads(payload), source=f"preset {key}")


def resolve_sheet(source: str | Path | SheetSpec) -> SheetSpec:
    """Accept a SheetSpec, a JSON file path, or a preset name."""
    if isinstance(source, SheetSpec):
        return source
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        return load_sheet_spec(path)
    return sheet_preset(str(source))
