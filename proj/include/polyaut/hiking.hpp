#ifndef POLYAUT_HIKING_HPP
#define POLYAUT_HIKING_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <polyaut/endo.hpp>

namespace polyaut
{

class HikingError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Multiplicities k_i and scales lambda_i.  A plan kills the exponents in
/// `targets`: sum k_i = 1 and sum_i k_i lambda_i^n = 0 for each target n.
struct HikingPlan {
    FieldSpec field;
    std::vector<long> k;
    std::vector<Scalar> lambda;
    std::vector<int> targets;
};

struct PlanCheck {
    Scalar weight_sum;
    /// sum_i k_i lambda_i^n per target.
    std::vector<Scalar> slice_sums;
    /// sum_i k_i^n lambda_i per target (the alternative printed form).
    std::vector<Scalar> printed_sums;
    bool ok = false;
    std::string problem;
};

PlanCheck verify_plan(const HikingPlan &plan);

/// Over Q: the alternating binomial plan lambda = 1..n, n = max(targets)+1.
/// Over F_p: that plan when n < p, else a search over scale sets of size
/// <= max_size.  Throws HikingError when nothing fits.
HikingPlan hiking_solve(const std::vector<int> &targets, const FieldSpec &field, std::size_t max_size = 6);

/// c_j = sum_i k_i lambda_i^j for j = 0..max_j: the factor picked up by the
/// z-degree-j slice under hiking_product.
std::vector<Scalar> slice_weights(const HikingPlan &plan, int max_j);

/// z -> lambda z, other variables fixed.
Endo z_scaling(const Ring &ring, std::size_t z_slot, const Scalar &lambda);

/// psi_lambda^-1 f psi_lambda as a point product, modulo I^cap: the
/// z-degree-j part of each image is multiplied by lambda^j (z image aside).
Endo scaled_conjugate(const Endo &f, const Scalar &lambda, std::size_t z_slot, int cap);

/// x fixed, y -> y + sum_j R_j + (deg > N), z -> z + (deg >= N) with R_j
/// homogeneous of degree N and z-degree j.
struct HikingShape {
    std::size_t fixed_slot = 0, moved_slot = 0, z_slot = 0;
    int degree = 0;
    std::vector<Poly> slices; // R_j, index j
};

/// Throws HikingError when f does not have that shape (checked mod I^cap).
HikingShape hiking_shape(const Endo &f, std::size_t z_slot, int cap);

/// prod_i (psi_lambda_i^-1 f psi_lambda_i)^k_i modulo I^cap.  The leading
/// slice of the result is sum_j c_j R_j with c_j from slice_weights; this
/// and the per-factor scaling are verified before returning.
Endo hiking_product(const Endo &f, const HikingPlan &plan, std::size_t z_slot, int cap = 6);

// ------------------------------------------------------- final-type pipeline

/// x^k1 y^k2 x^k3 ... (letters 0 and 1).
Monomial alternating_monomial(const std::vector<unsigned> &ks);

struct FinalTypeReport {
    std::vector<unsigned> ks;
    Monomial prefix, full;
    int degree = 0;
    int cap = 0;
    std::size_t moved_slot = 0;
    /// D(prefix) for the derivation sending the moved letter to z * last^k_s.
    Poly prefix_derivative;
    Endo u, v;
    bool u_moved_ok = false;  // moved -> moved + full + (deg > k)
    bool u_z_ok = false;      // z -> z - D(prefix) + (deg > k)
    bool v_shape_ok = false;  // degree-k parts of v's deviations are z-positive
    std::string detail;
};

/// Builds u = [phi, phi_M] from the elementary that moves the letter not
/// ending M_{k1..ks} by z times the last block, then v = psi(M)^-1 alpha
/// psi(M) u alpha^-1, all as point products modulo I^cap, and checks the
/// shapes at the leading degree k = sum k_i (above it v's images carry
/// z-free terms).  Needs the free algebra in 3 variables, s >= 2 and
/// k_1 + ... + k_{s-1} >= 2.
FinalTypeReport final_type_pipeline(const Ring &ring, const std::vector<unsigned> &ks, int cap);

} // namespace polyaut

#endif
