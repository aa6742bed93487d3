#ifndef POLYAUT_APPROX_HPP
#define POLYAUT_APPROX_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <polyaut/endo.hpp>
#include <polyaut/tameword.hpp>

namespace polyaut
{

class ApproxError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Peeling could not match a degree-k deviation.  Not a proof of wildness.
class SpanDeficiency : public ApproxError
{
public:
    SpanDeficiency(const std::string &msg, int degree, std::vector<Poly> unmatched)
        : ApproxError(msg), degree(degree), unmatched(std::move(unmatched))
    {
    }
    int degree;
    /// Part of the deviation left after reducing by the sampled span.
    std::vector<Poly> unmatched;
};

inline constexpr int kDefaultCap = 8;

/// sum_i d/dx_i of the degree-k part of f_i - x_i.  Requires f in H_k.
Poly divergence(const Endo &f, int k);

struct PeelOptions {
    /// Number of linear conjugating maps tried (the first is the identity).
    int basis_budget = 16;
    std::uint64_t seed = 1;
    /// Jet level the residual is kept at.
    int cap = kDefaultCap;
};

struct PeelResult {
    GenWord word;
    /// f o word^-1 modulo I^cap.
    Endo residual;
};

/// Tame word tau in H_k with f o tau^-1 in H_{k+1}.  The degree-k deviation
/// is solved exactly in the span of leading terms of elementaries
/// conjugated by seeded random linear maps.  Throws SpanDeficiency.
PeelResult peel_step(const Endo &f, int k, const PeelOptions &opt = {});

struct ApproxStage {
    int degree = 0;
    GenWord word;
    int residual_level = 0;
};

/// f = residual o tau_s o ... o tau_1 modulo I^target.
struct ApproxTrace {
    Ring ring;
    int target = 0;
    std::uint64_t seed = 0;
    std::vector<ApproxStage> stages;
    Endo residual;

    /// tau_s + ... + tau_1 as one word.
    GenWord tame_word() const;
    /// residual o expand(tame_word) == f modulo I^target.
    bool recomposes(const Endo &f) const;
};

/// Peels the linear part, then degrees 2 .. m-1.  Char 0, commutative.
ApproxTrace tame_approximate(const Endo &f, int m, const PeelOptions &opt = {});

/// (x - 2y(y^2+xz) - (y^2+xz)^2 z, y + (y^2+xz) z, z); commutative, n = 3,
/// char != 2.
Endo nagata(const Ring &ring);
/// Polynomial inverse of nagata(ring), verified by exact composition.
Endo nagata_inverse(const Ring &ring);

enum class NiceKind { nice, inconclusive, unknown };

struct NiceVerdict {
    NiceKind kind = NiceKind::unknown;
    int level = 0;
    bool nice = false;
    bool good = false;
    std::optional<ApproxTrace> trace;
    std::string note;
};

std::string nice_kind_name(NiceKind k);

/// Nice to level m iff tame_approximate reaches H_m; good to level m iff
/// f o (jet inverse of the traced word) lies in H_m.  Positive
/// characteristic gives `unknown` without computing.
NiceVerdict classify_nice(const Endo &f, int m, const PeelOptions &opt = {});

/// sum over nonempty S of (-1)^(n-|S|) (sum_{i in S} x_i)^m in K[x_1..x_n].
Poly inclusion_exclusion_check(int n, int m, const FieldSpec &field = FieldSpec::rational());

} // namespace polyaut

#endif
