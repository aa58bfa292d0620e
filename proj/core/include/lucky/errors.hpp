#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lucky {

enum class ErrorCode {
    invalid_argument,
    out_of_range,
    not_a_member,
    needs_larger_table,
    overflow,
    invalid_operand,
    invalid_chain,
    undefined_composition,
    non_terminating,
    bad_format,
};

const char* to_string(ErrorCode code);

/// Library error. `required_limit()` is nonzero for needs_larger_table and
/// tells the caller how big a table would let the call succeed.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string message, std::uint64_t required_limit = 0)
        : std::runtime_error(std::move(message)), code_(code), required_limit_(required_limit) {}

    ErrorCode code() const noexcept { return code_; }
    std::uint64_t required_limit() const noexcept { return required_limit_; }

  private:
    ErrorCode code_;
    std::uint64_t required_limit_;
};

[[noreturn]] void throw_needs_larger_table(std::uint64_t required_limit, const char* what);

} // namespace lucky
