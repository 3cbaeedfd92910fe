#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "permlim/estimate.hpp"
#include "permlim/permutation.hpp"
#include "permlim/permuton.hpp"
#include "permlim/rational.hpp"

namespace permlim {

// A finite linear combination of pattern densities, Sum gamma_sigma d(sigma, mu),
// with exact rational coefficients.
class DensityExpression {
public:
    DensityExpression() = default;

    const std::map<Permutation, Rational>& terms() const { return terms_; }
    Rational coefficient(const Permutation& pattern) const;
    void set(const Permutation& pattern, const Rational& coeff);
    bool empty() const { return terms_.empty(); }

    // One "pattern:coefficient" line per term, coefficients as exact
    // rationals, patterns in lexicographic order.
    std::string to_string() const;
    static DensityExpression from_string(const std::string& s);

    bool operator==(const DensityExpression&) const = default;

private:
    std::map<Permutation, Rational> terms_;
};

// Expression equal to the integral of x^alpha y^beta F_mu(x,y)^k over the
// unit square with respect to the Lebesgue measure.  Patterns have order
// m = alpha + beta + k + 2 (two auxiliary root points); requires m <= 9.
DensityExpression express_lambda_integral(int alpha, int beta, int k);

// Expression equal to the integral of x^alpha y^beta F_mu(x,y)^k dmu
// (one root point sampled from mu); order m = alpha + beta + k + 1 <= 9.
DensityExpression express_mu_integral(int alpha, int beta, int k);

// Expression equal to the integral over dmu of the product of rooted-pattern
// probabilities F_mu^sigma(x,y), one factor per flag; the root point is shared
// and each flag draws its other points independently.  Pattern order
// m = 1 + Sum (|sigma| - 1) <= 9.
DensityExpression express_flag_product(const std::vector<RootedPermutation>& flags);

enum class EvalMode { exact, mc };

struct ExpressionValue {
    Estimate estimate;
    EvalMode requested = EvalMode::exact;
    EvalMode used = EvalMode::exact;
};

// Sum of gamma_sigma d(sigma, mu).  Exact mode needs closed-form densities
// (Uniform, or the geometric families with every pattern order <= 7); an
// unsupported exact request falls back to Monte Carlo and declares that in
// the result.  In MC mode `samples` is the per-order sample budget.
ExpressionValue evaluate_expression(const DensityExpression& e, const Permuton& mu, EvalMode mode,
                                    std::uint64_t samples, std::uint64_t seed);

}  // namespace permlim
