"""Size of the model space for an electron at a few times and length units."""

from finite_qm.free import ELECTRON_MASS, space_size

UNITS = {"cm": 1e-2, "mm": 1e-3}

for label, t in (("1 s", 1.0), ("1 h", 3600.0), ("1 day", 86400.0)):
    for name, unit in UNITS.items():
        a, length = space_size(ELECTRON_MASS, t, length_unit=unit)
        print(f"t = {label:>6}  unit = {name}:  a = {a:12.2f}   length = {length:12.4f} m")
