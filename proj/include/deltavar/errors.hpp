#pragma once

#include <stdexcept>
#include <string>

namespace deltavar {

/// Error categories raised by the library.  The CLI maps input/validation
/// errors to exit code 2 and numerical failures to exit code 3.
enum class errc {
    too_few_points,
    nonfinite_value,
    point_not_found,
    ambiguous_point,
    out_of_range,
    domain_too_short,
    scale_mismatch,
    length_mismatch,
    syntax_error,
    unknown_identifier,
    nonconstant_exponent,
    unbound_variable,
    eval_domain_error,
    order_mismatch,
    wrong_point_count,
    degenerate_system,
    not_uniform,
    config_error,
    csv_error,
    no_convergence,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace deltavar
