#pragma once

#include <stdexcept>
#include <string>

namespace vk {

/// Error categories surfaced through the library and mapped to CLI exit codes.
enum class Errc {
    syntax_error,
    index_out_of_range,
    mixed_space,
    space_mismatch,
    not_polynomial_in_jets,
    not_horizontal,
    not_in_kernel_candidate,
    not_closed,
    not_polynomial,
    bad_arity,
    eval_domain,
    internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace vk
