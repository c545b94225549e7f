#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hadq/places.hpp"
#include "hadq/polynomial.hpp"

namespace hadq {

// One summand q(n) * base^n of an exponential (confluent power) sum.
struct ExpSumTerm {
    PolyK poly;    // nonzero
    Element base;  // nonzero
};

// Coefficients of a rational power series in closed form: b_n = sum_i
// q_i(n) gamma_i^n with pairwise distinct nonzero bases in K.
class ExpSumForm {
public:
    ExpSumForm() = default;
    static ExpSumForm make(const FieldCtx& ctx, std::vector<ExpSumTerm> terms);

    const FieldCtx& ctx() const { return ctx_; }
    const std::vector<ExpSumTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool simple() const;  // all polynomial factors constant

    Element value_at(unsigned long long n) const;

private:
    FieldCtx ctx_;
    std::vector<ExpSumTerm> terms_;
};

// Closed coefficient form of num/den. Requires den(0) != 0, deg num < deg den,
// the denominator splitting into linear factors over K (NonSplitDenominator
// otherwise), and in positive characteristic all pole multiplicities at most
// the characteristic.
ExpSumForm rational_to_expsum(const PolyK& num, const PolyK& den);

// Inverse direction; returns (num, den) in lowest terms with den(0) = 1.
std::pair<PolyK, PolyK> expsum_to_rational(const ExpSumForm& e);

// b_n = beta^n (p(n) + sum_i q_i(n) gamma_i^n) with all |gamma_i|_{v0} < 1.
struct DominantPoleDecomposition {
    Element beta;
    PolyK p;
    std::vector<ExpSumTerm> tail;
    bool simple = false;  // p constant
};

// Requires a unique base of maximal absolute value at v0; NoDominantPole
// lists the tied bases otherwise.
DominantPoleDecomposition dominant_pole_decompose(const ExpSumForm& e, const Place& v0);

// Truncated geometric expansion of beta^n / b_n to J terms. The remainder
// series r = sum r_n t^n satisfies |r_n|_{v0} <= exp(log_scale) *
// exp(-n * log_radius) for all n, so its v0-adic radius of convergence is at
// least exp(log_radius), which grows without bound in J.
struct HadamardInverseApprox {
    ExpSumForm u;
    double log_radius = 0;  // +infinity when the remainder vanishes
    double log_scale = 0;   // -infinity when the remainder vanishes
    unsigned terms = 0;     // J
};

HadamardInverseApprox hadamard_inverse_approx(const ExpSumForm& e, const Place& v0, unsigned J);

}  // namespace hadq
