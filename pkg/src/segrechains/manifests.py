"""Line-oriented key=value manifests for manifolds and vector-field systems.

Manifold manifests:

    kind=manifold          # optional, inferred from the keys
    m=1
    d=1
    order=EXACT            # or a positive integer truncation degree
    theta_bar_1 = w1^2*zeta1^2

System manifests:

    kind=system
    n=3
    m=1
    a=2
    field_1_1_x1 = 1       # field alpha, component i, coefficient of d/dx1
    field_2_1_x2 = 1
    field_2_1_x3 = x1

Blank lines and `#` comments are ignored.  Parsing collects diagnostics with
line numbers; serialization is canonical, so parse -> serialize -> parse is
the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError
from .exprs import format_series, parse_series
from .manifold import CRManifold, ambient_space, new_manifold
from .orbit import VFSystem, coordinate_space
from .series import Series

_THETA_KEY = re.compile(r"^theta_bar_(\d+)$")
_FIELD_KEY = re.compile(r"^field_(\d+)_(\d+)_([A-Za-z_][A-Za-z0-9_]*)$")


@dataclass
class Manifest:
    kind: str  # "manifold" | "system"
    params: dict
    entries: dict  # theta_bar index -> text, or (alpha, i, var) -> text
    source: Optional[str] = None
    diagnostics: list = field(default_factory=list)

    # -- building -----------------------------------------------------------

    def order_value(self):
        order = self.params.get("order", "EXACT")
        return None if order == "EXACT" else int(order)

    def build(self):
        if self.kind == "manifold":
            return self.build_manifold()
        return self.build_system()

    def build_manifold(self) -> CRManifold:
        m, d = int(self.params["m"]), int(self.params["d"])
        theta = []
        for j in range(1, d + 1):
            if j not in self.entries:
                raise ParseError(f"{self.source}: missing theta_bar_{j}")
            theta.append(self.entries[j])
        return new_manifold(m, d, theta, self.order_value())

    def build_system(self) -> VFSystem:
        n, m, a = (int(self.params[k]) for k in ("n", "m", "a"))
        space = coordinate_space(n)
        order = self.order_value()
        zero = Series.zero(space, order)
        fields = [[[zero] * n for _ in range(m)] for _ in range(a)]
        for (alpha, i, var), text in self.entries.items():
            if not (1 <= alpha <= a and 1 <= i <= m):
                raise ParseError(
                    f"{self.source}: field_{alpha}_{i}_{var} out of range"
                )
            col = space.index_of(var)
            fields[alpha - 1][i - 1][col] = parse_series(text, space, order)
        return VFSystem(space, fields, order=order)

    # -- serialization --------------------------------------------------------

    def serialize(self) -> str:
        lines = [f"kind={self.kind}"]
        if self.kind == "manifold":
            lines.append(f"m={int(self.params['m'])}")
            lines.append(f"d={int(self.params['d'])}")
            lines.append(f"order={self.params.get('order', 'EXACT')}")
            for j in sorted(self.entries):
                lines.append(f"theta_bar_{j} = {self.entries[j]}")
        else:
            lines.append(f"n={int(self.params['n'])}")
            lines.append(f"m={int(self.params['m'])}")
            lines.append(f"a={int(self.params['a'])}")
            lines.append(f"order={self.params.get('order', 'EXACT')}")
            for alpha, i, var in sorted(self.entries):
                lines.append(f"field_{alpha}_{i}_{var} = {self.entries[(alpha, i, var)]}")
        return "\n".join(lines) + "\n"

    def canonical(self) -> "Manifest":
        """Re-express every entry in canonical serialized form."""
        if self.kind == "manifold":
            m, d = int(self.params["m"]), int(self.params["d"])
            space = ambient_space(m, d)
            entries = {
                j: format_series(parse_series(t, space, self.order_value()))
                for j, t in self.entries.items()
            }
        else:
            space = coordinate_space(int(self.params["n"]))
            entries = {
                k: format_series(parse_series(t, space, self.order_value()))
                for k, t in self.entries.items()
            }
        return Manifest(self.kind, dict(self.params), entries, self.source, [])


def parse_manifest(text: str, source: Optional[str] = None) -> Manifest:
    params = {}
    theta_entries = {}
    field_entries = {}
    diagnostics = []
    kind = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{source or '<manifest>'}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        tm = _THETA_KEY.match(key)
        fm = _FIELD_KEY.match(key)
        if tm:
            theta_entries[int(tm.group(1))] = value
        elif fm:
            field_entries[(int(fm.group(1)), int(fm.group(2)), fm.group(3))] = value
        elif key == "kind":
            kind = value
        elif key in ("m", "d", "n", "a"):
            try:
                params[key] = int(value)
            except ValueError:
                raise ParseError(
                    f"{source or '<manifest>'}:{lineno}: {key} must be an integer"
                ) from None
        elif key == "order":
            if value != "EXACT":
                try:
                    if int(value) < 1:
                        raise ValueError
                except ValueError:
                    raise ParseError(
                        f"{source or '<manifest>'}:{lineno}: order must be EXACT "
                        f"or a positive integer"
                    ) from None
            params["order"] = value
        else:
            diagnostics.append(f"{source or '<manifest>'}:{lineno}: ignored key {key!r}")
    if kind is None:
        if theta_entries and not field_entries:
            kind = "manifold"
        elif field_entries and not theta_entries:
            kind = "system"
        else:
            raise ParseError(f"{source or '<manifest>'}: cannot infer manifest kind")
    if kind == "manifold":
        for k in ("m", "d"):
            if k not in params:
                raise ParseError(f"{source or '<manifest>'}: missing {k}=")
        entries = theta_entries
    elif kind == "system":
        for k in ("n", "m", "a"):
            if k not in params:
                raise ParseError(f"{source or '<manifest>'}: missing {k}=")
        entries = field_entries
    else:
        raise ParseError(f"{source or '<manifest>'}: unknown kind {kind!r}")
    return Manifest(kind, params, entries, source, diagnostics)


def load_manifest(path) -> Manifest:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_manifest(fh.read(), source=str(path))
