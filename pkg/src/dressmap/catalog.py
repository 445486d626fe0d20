"""Extension specs (the JSON input format) and the built-in catalog."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .extensions import (
    GaloisExtensionDatum,
    cyclotomic,
    euclidean_gaussian,
    finite_field_tower,
    from_modulus,
    multiquadratic,
)
from .fields import BaseField, is_prime


class SpecError(ValueError):
    """An extension spec is malformed or names an unsupported combination."""


def _base(raw: Any) -> BaseField:
    if raw == "Q":
        return BaseField.rationals()
    if raw == "euclidean":
        return BaseField.euclidean()
    if isinstance(raw, dict) and set(raw) == {"Fp"}:
        p = raw["Fp"]
        if not isinstance(p, int) or p == 2 or not is_prime(p):
            raise SpecError(f"Fp needs an odd prime, got {p!r}")
        return BaseField.prime_field(p)
    raise SpecError(f"unknown base {raw!r}")


def _rational(x: Any) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecError(f"coefficient {x!r} must be an integer or a 'p/q' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"bad coefficient {x!r}") from exc


def build_extension(spec: Any) -> GaloisExtensionDatum:
    """Turn a spec dict into a validated extension datum.

    Raises :class:`SpecError` for malformed specs; data that parses but is not
    a Galois extension raises :class:`~dressmap.extensions.ExtensionError`.
    """
    if not isinstance(spec, dict) or set(spec) - {"base", "extension", "name"} or "base" not in spec \
            or "extension" not in spec:
        raise SpecError("spec must be an object with 'base' and 'extension'")
    base = _base(spec["base"])
    ext = spec["extension"]
    if ext == "gaussian" or ext == {"gaussian": True}:
        kind, arg = "gaussian", None
    elif isinstance(ext, dict) and len(ext) == 1:
        ((kind, arg),) = ext.items()
    else:
        raise SpecError(f"unknown extension {ext!r}")

    if kind == "gaussian":
        if base.kind != "euclidean":
            raise SpecError("the gaussian extension is only defined over the euclidean base")
        return euclidean_gaussian()
    if base.kind == "euclidean":
        raise SpecError("the euclidean base only supports the gaussian extension")
    if kind == "finite_field_degree":
        if base.kind != "Fp":
            raise SpecError("finite_field_degree needs an Fp base")
        if not isinstance(arg, int) or isinstance(arg, bool) or arg < 1:
            raise SpecError(f"finite_field_degree must be a positive integer, got {arg!r}")
        return finite_field_tower(base.p, arg)
    if base.kind != "Q":
        raise SpecError(f"{kind} extensions need base Q")
    if kind == "multiquadratic":
        if not isinstance(arg, list) or not arg or not all(isinstance(a, int) and not isinstance(a, bool) for a in arg):
            raise SpecError("multiquadratic needs a nonempty list of integers")
        return multiquadratic(base, arg)
    if kind == "cyclotomic":
        if not isinstance(arg, int) or isinstance(arg, bool):
            raise SpecError("cyclotomic needs an integer")
        return cyclotomic(arg)
    if kind == "custom":
        if not isinstance(arg, dict) or set(arg) != {"modulus_poly", "automorphisms"}:
            raise SpecError("custom needs 'modulus_poly' and 'automorphisms'")
        modulus = [_rational(c) for c in arg["modulus_poly"]]
        autos = arg["automorphisms"]
        if not isinstance(autos, list) or not all(isinstance(a, list) for a in autos):
            raise SpecError("automorphisms must be a list of coefficient lists")
        images = [[_rational(c) for c in a] for a in autos]
        return from_modulus(base, modulus, images, spec.get("name", "custom"))
    raise SpecError(f"unknown extension kind {kind!r}")


def _fp(p: int, n: int) -> dict:
    return {"base": {"Fp": p}, "extension": {"finite_field_degree": n}}


CATALOG: list[tuple[str, dict]] = [
    ("Q(i)", {"base": "Q", "extension": {"cyclotomic": 4}}),
    ("Q(sqrt2)", {"base": "Q", "extension": {"multiquadratic": [2]}}),
    ("Q(sqrt-5)", {"base": "Q", "extension": {"multiquadratic": [-5]}}),
    ("Q(sqrt5)", {"base": "Q", "extension": {"multiquadratic": [5]}}),
    ("Q(sqrt2,sqrt3)", {"base": "Q", "extension": {"multiquadratic": [2, 3]}}),
    ("Q(zeta5)", {"base": "Q", "extension": {"cyclotomic": 5}}),
    ("Q(zeta7)", {"base": "Q", "extension": {"cyclotomic": 7}}),
    ("Q(zeta8)", {"base": "Q", "extension": {"cyclotomic": 8}}),
    ("Q(zeta12)", {"base": "Q", "extension": {"cyclotomic": 12}}),
    ("Q(zeta16)", {"base": "Q", "extension": {"cyclotomic": 16}}),
    # splitting field of x^3 - 2, generated by a root of x^6 + 108 (S3)
    ("Q(cbrt2,zeta3)", {"base": "Q", "name": "Q(cbrt2,zeta3)", "extension": {"custom": {
        "modulus_poly": [108, 0, 0, 0, 0, 0, 1],
        "automorphisms": [
            [0, 1], [0, "1/2", 0, 0, "-1/12"], [0, "-1/2", 0, 0, "-1/12"],
            [0, -1], [0, "-1/2", 0, 0, "1/12"], [0, "1/2", 0, 0, "1/12"],
        ]}}}),
    *[(f"F{p}^{n}/F{p}", _fp(p, n)) for p in (3, 5, 7, 13) for n in range(1, 7)],
    ("k_euc(i)", {"base": "euclidean", "extension": "gaussian"}),
]


def catalog_names() -> list[str]:
    return [name for name, _ in CATALOG]


def catalog_spec(name: str) -> dict:
    for n, spec in CATALOG:
        if n == name:
            return spec
    raise KeyError(name)
