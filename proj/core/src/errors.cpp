#include "lucky/errors.hpp"

namespace lucky {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::out_of_range: return "out-of-range";
        case ErrorCode::not_a_member: return "not-a-member";
        case ErrorCode::needs_larger_table: return "needs-larger-table";
        case ErrorCode::overflow: return "overflow";
        case ErrorCode::invalid_operand: return "invalid-operand";
        case ErrorCode::invalid_chain: return "invalid-chain";
        case ErrorCode::undefined_composition: return "undefined-composition";
        case ErrorCode::non_terminating: return "non-terminating";
        case ErrorCode::bad_format: return "bad-format";
    }
    return "unknown";
}

void throw_needs_larger_table(std::uint64_t required_limit, const char* what) {
    throw Error(ErrorCode::needs_larger_table,
                std::string(what) + " (needs table limit >= " + std::to_string(required_limit) + ")",
                required_limit);
}

} // namespace lucky
