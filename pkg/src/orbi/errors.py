"""Exception hierarchy with machine-readable codes.

Input-side failures (bad data, bad parameters) derive from InputError and map
to CLI exit code 2. Internal consistency failures derive from InternalError and
map to exit code 3. Every class carries a stable ``code`` string used in
machine-format error objects.
"""

from __future__ import annotations


class OrbiError(Exception):
    code = "error"


class InputError(OrbiError):
    code = "input_error"


class InternalError(OrbiError):
    code = "internal_error"


# group construction and arithmetic

class EmptyGroup(InputError):
    code = "empty_group"


class NonGroupTable(InputError):
    code = "non_group_table"


class ElementNotInGroup(InputError):
    code = "element_not_in_group"


class NonAbelianGroup(InputError):
    code = "non_abelian_group"


class BadExponentRange(InputError):
    code = "bad_exponent_range"


# space construction

class IncompatiblePermutation(InputError):
    code = "incompatible_permutation"


class NonHomomorphism(InputError):
    code = "non_homomorphism"


class EmptyWeights(InputError):
    code = "empty_weights"


class MissingClass(InputError):
    code = "missing_class"


class DimensionMismatch(InputError):
    code = "dimension_mismatch"


class ZeroNormalWeight(InputError):
    code = "zero_normal_weight"


class ComponentNotFixed(InputError):
    code = "component_not_fixed"


class UnsupportedForCustom(InputError):
    code = "unsupported_for_custom"


# sectors

class UnsupportedK(InputError):
    code = "unsupported_k"


class PositionOutOfRange(InputError):
    code = "position_out_of_range"


# cohomology assembly

class NonIntegerDimension(InternalError):
    code = "non_integer_dimension"


class NonAbelianTwist(InputError):
    code = "non_abelian_twist"


# Burnside calculus

class WrongArity(InputError):
    code = "wrong_arity"


class InadmissibleSymbol(InputError):
    code = "inadmissible_symbol"


class KOutOfRange(InputError):
    code = "k_out_of_range"


class UniverseTooLarge(InputError):
    code = "universe_too_large"


class SymbolOutsideUniverse(InputError):
    code = "symbol_outside_universe"


class NotGenericallyFree(InputError):
    code = "not_generically_free"


class InadmissibleTangentData(InputError):
    code = "inadmissible_tangent_data"


class UnsupportedDimension(InputError):
    code = "unsupported_dimension"


# comparison

class GroupMismatch(InputError):
    code = "group_mismatch"


# scenario files; named ScenarioSyntaxError to avoid shadowing the builtin

class ScenarioSyntaxError(InputError):
    code = "syntax_error"


class SchemaError(InputError):
    code = "schema_error"


class SemanticError(InputError):
    code = "semantic_error"
