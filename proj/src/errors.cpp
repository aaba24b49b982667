#include "varcount/errors.hpp"

namespace varcount {

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime: return "NotPrime";
        case errc::even_characteristic: return "EvenCharacteristic";
        case errc::reducible_modulus: return "ReducibleModulus";
        case errc::degree_mismatch: return "DegreeMismatch";
        case errc::field_too_large: return "FieldTooLarge";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::not_primitive: return "NotPrimitive";
        case errc::zero_matrix: return "ZeroMatrix";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::zero_coefficient: return "ZeroCoefficient";
        case errc::non_positive_exponent: return "NonPositiveExponent";
        case errc::block_shape_violation: return "BlockShapeViolation";
        case errc::non_increasing_blocks: return "NonIncreasingBlocks";
        case errc::level_out_of_range: return "LevelOutOfRange";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::syntax_error: return "SyntaxError";
        case errc::inconsistent_structure: return "InconsistentStructure";
        case errc::unknown_variable: return "UnknownVariable";
        case errc::constant_out_of_field: return "ConstantOutOfField";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::resource_limit: return "ResourceLimit";
        case errc::structure_violation: return "StructureViolation";
        case errc::internal_check: return "InternalCheck";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

int error_exit_code(errc c) {
    switch (c) {
        case errc::not_prime:
        case errc::even_characteristic:
        case errc::reducible_modulus:
        case errc::degree_mismatch:
        case errc::not_primitive:
        case errc::zero_matrix:
        case errc::dimension_mismatch:
        case errc::zero_coefficient:
        case errc::non_positive_exponent:
        case errc::block_shape_violation:
        case errc::non_increasing_blocks:
        case errc::syntax_error:
        case errc::inconsistent_structure:
        case errc::unknown_variable:
        case errc::constant_out_of_field:
        case errc::invalid_argument:
        case errc::io_error:
            return 2;
        case errc::field_too_large:
        case errc::cap_exceeded:
        case errc::resource_limit:
            return 3;
        case errc::division_by_zero:
        case errc::field_mismatch:
        case errc::level_out_of_range:
        case errc::index_out_of_range:
        case errc::structure_violation:
        case errc::internal_check:
            return 1;
    }
    return 1;
}

}  // namespace varcount
