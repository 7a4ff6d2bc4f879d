"""Free generators of the field of U-invariants of equidimensional quiver representations."""

from quivinv.assembly import LoopMode, build_system, classify, expected_count
from quivinv.fields import DEFAULT_PRIME, GF, QQ, Dual, DualField, PrimeField
from quivinv.invariants import GeneratorDescriptor, eval_generator, partials
from quivinv.kernels import BACKEND
from quivinv.linalg import Matrix, Shape, corner_minor_D, det, minor, minor_M, minor_N, shape_member
from quivinv.quiver import Quiver, RepPoint, GroupElement, act, validate
from quivinv.reduction import reduce_joint, reduce_left, reduce_right, reduce_to_section
from quivinv.section import free_coordinates, section_spec, shape_of
from quivinv.verify import run_all

__version__ = "0.1.0"
