#pragma once

// Invariant suites run by `winsor-bounds verify`. Each check reports the
// worst observed value of its metric against a pinned tolerance.

#include "wbounds/oracle.hpp"
#include "wbounds/roots.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wbounds {

enum class Suite { Roots, Ordering, Certificates, Oracle, Asymptotics, All };

const char* to_string(Suite suite);
/// Throws ValidationError for unknown names.
Suite parse_suite(const std::string& text);

struct CheckOutcome {
    std::string name;
    bool passed = false;
    /// Worst observed metric (residual, relative error, margin, ...).
    double worst = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = kDefaultProbeSeed;
    RootTolerances tol{};
    std::size_t probe_samples = 100'000;
};

/// c values used by the grid-based checks.
const std::vector<double>& test_c_values();
/// sigma values for the certificate grid (both truncation branches occur).
const std::vector<double>& certificate_sigma_values();
/// The nine (c, sigma) pairs used by the oracle suite.
const std::vector<std::pair<double, double>>& representative_pairs();
/// n log-spaced points from lo to hi inclusive.
std::vector<double> logspace(double lo, double hi, std::size_t n);

std::vector<CheckOutcome> verify_roots(const VerifyOptions& opts = {});
std::vector<CheckOutcome> verify_ordering(const VerifyOptions& opts = {});
std::vector<CheckOutcome> verify_certificates(const VerifyOptions& opts = {});
std::vector<CheckOutcome> verify_oracle(const VerifyOptions& opts = {});
std::vector<CheckOutcome> verify_asymptotics(const VerifyOptions& opts = {});

std::vector<CheckOutcome> run_suite(Suite suite, const VerifyOptions& opts = {});

/// "PASS <name>  worst=<v>  <detail>".
std::string format_outcome(const CheckOutcome& outcome);

}  // namespace wbounds
