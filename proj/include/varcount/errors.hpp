#pragma once

#include <stdexcept>
#include <string>

namespace varcount {

// Every failure the library can report. The CLI maps these onto its exit-code
// contract via error_exit_code(): 2 for bad input, 3 for resource caps,
// 1 for broken internal invariants.
enum class errc {
    // field construction / arithmetic
    not_prime,
    even_characteristic,
    reducible_modulus,
    degree_mismatch,
    field_too_large,
    division_by_zero,
    field_mismatch,
    not_primitive,
    // integer linear algebra
    zero_matrix,
    dimension_mismatch,
    // variety model
    zero_coefficient,
    non_positive_exponent,
    block_shape_violation,
    non_increasing_blocks,
    level_out_of_range,
    index_out_of_range,
    // parser
    syntax_error,
    inconsistent_structure,
    unknown_variable,
    constant_out_of_field,
    // resource caps
    cap_exceeded,
    resource_limit,
    // oracle / self checks
    structure_violation,
    internal_check,
    // misc
    invalid_argument,
    io_error,
};

const char* errc_name(errc c);

// 2 = input error, 3 = resource limit, 1 = internal invariant failure.
int error_exit_code(errc c);

class error : public std::runtime_error {
public:
    error(errc c, std::string msg)
        : std::runtime_error(std::string(errc_name(c)) + ": " + msg),
          code_(c), msg_(std::move(msg)) {}

    // Parser errors carry a 1-based source position.
    error(errc c, std::string msg, int line, int col)
        : std::runtime_error(std::string(errc_name(c)) + " at line " + std::to_string(line) +
                             ", column " + std::to_string(col) + ": " + msg),
          code_(c), msg_(std::move(msg)), line_(line), col_(col) {}

    errc code() const { return code_; }
    const std::string& message() const { return msg_; }  // without the kind/position prefix
    int line() const { return line_; }                   // 0 when no position is attached
    int col() const { return col_; }

private:
    errc code_;
    std::string msg_;
    int line_ = 0;
    int col_ = 0;
};

}  // namespace varcount
