#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "hadq/polynomial.hpp"

namespace hadq {

enum class SeriesKind {
    RationalFn,
    Algebraic,
    HadamardProduct,
    HadamardQuotient,
    DiffOp,
    Scale,
    Polylog,
    Literal,
};

namespace detail {
class SeriesNode;
}

// An exact lazy power series over K. Copies share the underlying expression
// node and its memoized coefficient prefix; coefficient extension is
// internally synchronized, so concurrent readers see a consistent prefix.
class PowerSeries {
public:
    // sum a_n t^n with sum p_n t^n / sum q_n t^n; q(0) != 0 required.
    static PowerSeries rational_fn(PolyK num, PolyK den);
    // The branch of Phi(t, y) = 0 through y(0) = y0; requires Phi(0, y0) = 0
    // and dPhi/dy(0, y0) != 0, and is computed by quadratic Newton lifting.
    static PowerSeries algebraic(BivariateRelation rel, Element y0);
    // sum_{n>=1} t^n / n^w; characteristic zero only.
    static PowerSeries polylog(const FieldCtx& ctx, unsigned weight);
    // A fixed coefficient prefix; asking beyond it raises PrefixExhausted.
    static PowerSeries literal(const FieldCtx& ctx, std::vector<Element> prefix);

    const FieldCtx& ctx() const;
    SeriesKind kind() const;

    Element coeff(std::size_t n) const;
    std::vector<Element> prefix(std::size_t n) const;  // coefficients 0..n-1

    // Structure accessors for printing/serialization.
    const PolyK& num() const;                  // RationalFn
    const PolyK& den() const;                  // RationalFn
    const BivariateRelation& relation() const; // Algebraic
    const Element& branch_point() const;       // Algebraic
    const PolyK& op_poly() const;              // DiffOp
    const Element& scale_factor() const;       // Scale
    unsigned polylog_weight() const;           // Polylog
    const std::vector<Element>& literal_prefix() const;  // Literal
    PowerSeries child(std::size_t i) const;    // children of composite nodes

    friend PowerSeries hadamard_product(const PowerSeries& f, const PowerSeries& g);
    friend PowerSeries hadamard_quotient(const PowerSeries& f, const PowerSeries& g);
    // Coefficients p(n) a_n.
    friend PowerSeries diff_op(PolyK p, const PowerSeries& f);
    // Coefficients beta^n a_n; beta != 0.
    friend PowerSeries scale(Element beta, const PowerSeries& f);

private:
    explicit PowerSeries(std::shared_ptr<detail::SeriesNode> node) : node_(std::move(node)) {}
    std::shared_ptr<detail::SeriesNode> node_;
};

PowerSeries hadamard_product(const PowerSeries& f, const PowerSeries& g);
PowerSeries hadamard_quotient(const PowerSeries& f, const PowerSeries& g);
PowerSeries diff_op(PolyK p, const PowerSeries& f);
PowerSeries scale(Element beta, const PowerSeries& f);

// Truncation of f^j to `order` coefficients (j = 0 gives 1, 0, 0, ...).
std::vector<Element> prefix_power(const PowerSeries& f, unsigned j, std::size_t order);

}  // namespace hadq
