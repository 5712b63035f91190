#ifndef MZV_VERIFY_HPP
#define MZV_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "mzv/corpus.hpp"

namespace mzv {

struct VerifyReport {
    std::string id;
    Bindings binding;
    bool must_pass = true;
    bool pass = false;
    /// "exact" when both sides stayed rational, otherwise "numeric".
    std::string mode;
    MPReal residual{64};
    MPReal tolerance{64};
    std::size_t nodes = 0;
    /// "pass", "fail", "numeric-only" or "skipped".
    std::string symbolic = "skipped";
    std::string error;
    double seconds = 0;
};

/// Tolerance 10^-(P - ceil(log10 nodes) - 2).
MPReal numeric_tolerance(int precision, std::size_t nodes);

VerifyReport verify_numeric(const Identity& id, const Bindings& b, const EvalContext& ctx);
/// Fills only the symbolic status; pass reflects exact equality.
VerifyReport verify_symbolic(const Identity& id, const Bindings& b);

struct SuiteConfig {
    std::optional<std::vector<std::string>> ids;  ///< unset = every identity
    long max_param = 10;
    int precision = 40;
    bool symbolic = true;
};

struct SuiteResult {
    std::vector<VerifyReport> reports;
    std::size_t passed = 0;
    std::size_t failed = 0;    ///< must-pass failures
    std::size_t reported = 0;  ///< report-only entries that did not pass
    double seconds = 0;
    bool ok() const { return failed == 0; }
};

/// Unknown ids in the filter raise DomainError.
SuiteResult run_suite(const std::vector<Identity>& corpus, const SuiteConfig& cfg);

std::string suite_json(const SuiteResult& r, const SuiteConfig& cfg, bool timestamp);
std::string suite_tsv(const SuiteResult& r);

}  // namespace mzv

#endif
