#ifndef FOCKPR_ERRORS_HPP
#define FOCKPR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace fockpr {

// Library error with a stable machine-readable code. The CLI maps codes
// one-to-one into its error JSON, so codes are part of the public contract.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* degenerate_lattice = "degenerate-lattice";
inline constexpr const char* too_few_points = "too-few-points";
inline constexpr const char* insufficient_coverage = "insufficient-coverage";
inline constexpr const char* domain_error = "domain-error";
inline constexpr const char* truncation_too_short = "truncation-too-short";
inline constexpr const char* nonconvergence = "nonconvergence";
inline constexpr const char* conditioning = "conditioning";
inline constexpr const char* degree_mismatch = "degree-mismatch";
inline constexpr const char* degree_overflow = "degree-overflow";
inline constexpr const char* conjugate_closure = "conjugate-closure";
inline constexpr const char* no_consistent_assignment = "no-consistent-assignment";
inline constexpr const char* density_hypothesis = "density-hypothesis";
inline constexpr const char* invalid_argument = "invalid-argument";
inline constexpr const char* io_error = "io-error";
inline constexpr const char* parse_error = "parse-error";
} // namespace errc

[[noreturn]] inline void raise(const char* code, const std::string& message) {
    throw Error(code, message);
}

} // namespace fockpr

#endif
