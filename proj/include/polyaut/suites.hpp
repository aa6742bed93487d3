#ifndef POLYAUT_SUITES_HPP
#define POLYAUT_SUITES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <polyaut/endo.hpp>
#include <polyaut/polyops.hpp>

namespace polyaut
{

class SuiteError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class CheckStatus { pass, fail, inconclusive };

std::string status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    /// Sample count or similar summary.
    std::string note;
    /// Counterexample or failure detail; empty on pass.
    std::string witness;
};

struct SuiteResult {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    double seconds = 0;

    /// fail if any check failed, else inconclusive if any was, else pass.
    CheckStatus status() const;
    /// 0 pass, 1 failure, 3 inconclusive only.
    int exit_code() const;
};

struct SuiteOptions {
    /// Run the field-dependent checks over this field only.
    std::optional<FieldSpec> field;
    /// Run the checks of a suite on worker threads; the result order is fixed.
    bool parallel = true;
};

const std::vector<std::string> &suite_names();

/// Throws SuiteError for an unknown name.
SuiteResult run_suite(const std::string &name, std::uint64_t seed, const SuiteOptions &options = {});

// ------------------------------------------- degree-4 free-algebra identities
//
// Free algebra in x, y, z over the field of s.a; every product in the
// generators' addends is the star product s, so s = (1, 0) gives the plain
// maps.  Results are modulo I^4.

/// phi_2^-1 phi_1^-1 phi_2 phi_1 with phi_1: x -> x + y.z, phi_2: z -> z + y.x.
Endo xyyz_commutator(const StarProduct &s);

/// phi_l^-1 phi_r^-1 [psi_1, psi_2] with psi_1: x -> x + y.y,
/// psi_2: z -> z + x.x, [psi_1, psi_2] = psi_2^-1 psi_1^-1 psi_2 psi_1,
/// phi_l: z -> z + y.(y.x), phi_r: z -> z + (x.y).y.
Endo square_pipeline(const StarProduct &s);

/// (y.y).x + x.(y.y) - (x.y).y - y.(y.x).
Poly square_expression(const StarProduct &s);

} // namespace polyaut

#endif
