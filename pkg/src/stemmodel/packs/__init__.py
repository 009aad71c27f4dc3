"""Built-in model packs: math functions, chemistry, kinematics, engineering geometry."""

from . import chem_pack, eng_pack, math_pack, phys_pack

__all__ = ["chem_pack", "eng_pack", "math_pack", "phys_pack"]
