#include "hadq/series.hpp"

#include <algorithm>

#include "hadq/errors.hpp"

namespace hadq {

namespace detail {

class SeriesNode {
public:
    SeriesKind kind;
    FieldCtx ctx;

    PolyK num, den;          // RationalFn; den doubles as the DiffOp polynomial
    BivariateRelation rel;   // Algebraic
    Element y0;              // Algebraic
    Element beta;            // Scale
    unsigned weight = 0;     // Polylog
    std::vector<Element> literal;
    std::shared_ptr<SeriesNode> a, b;

    SeriesNode(SeriesKind k, FieldCtx c) : kind(k), ctx(c), y0(), beta() {}

    Element coeff(std::size_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        ensure(n + 1);
        return memo_[n];
    }

    std::vector<Element> prefix(std::size_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        ensure(n);
        return std::vector<Element>(memo_.begin(), memo_.begin() + n);
    }

private:
    std::mutex mu_;
    std::vector<Element> memo_;
    std::vector<Element> lift_;   // Algebraic: y(t) modulo t^{lift_.size()}
    Element scale_pow_;           // Scale: beta^{memo_.size() - 1}
    bool scale_pow_init_ = false;

    void ensure(std::size_t n) {
        if (memo_.size() >= n) return;
        std::size_t target = std::max<std::size_t>({n, 2 * memo_.size(), 8});
        if (kind == SeriesKind::Literal) {
            if (n > literal.size()) throw PrefixExhausted(n - 1, literal.size());
            target = std::max(n, std::min(target, literal.size()));
        }
        extend(target);
        require_internal(memo_.size() >= n, "series extension fell short");
    }

    void extend(std::size_t target) {
        switch (kind) {
            case SeriesKind::RationalFn: {
                // q0 a_n = p_n - sum_{i>=1} q_i a_{n-i}
                Element q0inv = den.coeff(0).inverse();
                for (std::size_t n = memo_.size(); n < target; ++n) {
                    Element s = num.coeff(n);
                    std::size_t imax = std::min<std::size_t>(n, den.deg());
                    for (std::size_t i = 1; i <= imax; ++i)
                        s = s - den.coeff(i) * memo_[n - i];
                    memo_.push_back(s * q0inv);
                }
                break;
            }
            case SeriesKind::Algebraic: {
                lift_to(target);
                for (std::size_t n = memo_.size(); n < target; ++n) memo_.push_back(lift_[n]);
                break;
            }
            case SeriesKind::HadamardProduct: {
                auto fa = a->prefix(target), fb = b->prefix(target);
                for (std::size_t n = memo_.size(); n < target; ++n)
                    memo_.push_back(fa[n] * fb[n]);
                break;
            }
            case SeriesKind::HadamardQuotient: {
                auto fa = a->prefix(target), fb = b->prefix(target);
                for (std::size_t n = memo_.size(); n < target; ++n) {
                    if (fb[n].is_zero()) throw ZeroDenominatorCoefficient(n);
                    memo_.push_back(fa[n] / fb[n]);
                }
                break;
            }
            case SeriesKind::DiffOp: {
                auto fa = a->prefix(target);
                for (std::size_t n = memo_.size(); n < target; ++n)
                    memo_.push_back(den.eval_at_integer(static_cast<long long>(n)) * fa[n]);
                break;
            }
            case SeriesKind::Scale: {
                auto fa = a->prefix(target);
                if (!scale_pow_init_) {
                    scale_pow_ = Element::one(ctx);
                    scale_pow_init_ = true;
                    require_internal(memo_.empty(), "scale power cache out of sync");
                }
                for (std::size_t n = memo_.size(); n < target; ++n) {
                    if (n > 0) scale_pow_ = scale_pow_ * beta;
                    memo_.push_back(scale_pow_ * fa[n]);
                }
                break;
            }
            case SeriesKind::Polylog: {
                for (std::size_t n = memo_.size(); n < target; ++n) {
                    if (n == 0) {
                        memo_.push_back(Element::zero(ctx));
                        continue;
                    }
                    Element nk = Element::from_int(ctx, static_cast<long long>(n))
                                     .pow(static_cast<long long>(weight));
                    memo_.push_back(nk.inverse());
                }
                break;
            }
            case SeriesKind::Literal: {
                require_internal(target <= literal.size(), "literal target clamped by ensure");
                for (std::size_t n = memo_.size(); n < target; ++n)
                    memo_.push_back(literal[n]);
                break;
            }
        }
    }

    void lift_to(std::size_t target) {
        if (lift_.empty()) lift_.push_back(y0);
        BivariateRelation dphi = rel.derivative_y();
        while (lift_.size() < target) {
            std::size_t order = std::min(target, 2 * lift_.size());
            // Newton step: y <- y - Phi(t, y) / dPhi/dy(t, y)  (mod t^order)
            std::vector<Element> y = lift_;
            y.resize(order, Element::zero(ctx));
            auto phi = rel.eval_series(y, order);
            auto dy = dphi.eval_series(y, order);
            auto quot = series_mul(ctx, phi, series_inv(ctx, dy, order), order);
            for (std::size_t i = 0; i < order; ++i) y[i] = y[i] - quot[i];
            lift_ = std::move(y);
        }
    }
};

}  // namespace detail

using detail::SeriesNode;

PowerSeries PowerSeries::rational_fn(PolyK num, PolyK den) {
    if (den.is_zero() || den.coeff(0).is_zero())
        throw InvalidArgument("rational series needs a denominator with nonzero constant term");
    auto node = std::make_shared<SeriesNode>(SeriesKind::RationalFn, num.ctx());
    node->num = std::move(num);
    node->den = std::move(den);
    return PowerSeries(std::move(node));
}

PowerSeries PowerSeries::algebraic(BivariateRelation rel, Element y0) {
    if (rel.is_zero() || rel.deg_y() < 1)
        throw NewtonFailure("relation must involve y");
    Element t0 = Element::zero(rel.ctx());
    if (!rel.eval(t0, y0).is_zero())
        throw NewtonFailure("Phi(0, y0) != 0: not a branch point");
    if (rel.derivative_y().eval(t0, y0).is_zero())
        throw NewtonFailure("dPhi/dy(0, y0) = 0: ramified branch not supported");
    auto node = std::make_shared<SeriesNode>(SeriesKind::Algebraic, rel.ctx());
    node->rel = std::move(rel);
    node->y0 = std::move(y0);
    return PowerSeries(std::move(node));
}

PowerSeries PowerSeries::polylog(const FieldCtx& ctx, unsigned weight) {
    if (ctx.characteristic() != 0)
        throw Unsupported("polylogarithmic series require characteristic zero");
    auto node = std::make_shared<SeriesNode>(SeriesKind::Polylog, ctx);
    node->weight = weight;
    return PowerSeries(std::move(node));
}

PowerSeries PowerSeries::literal(const FieldCtx& ctx, std::vector<Element> prefix) {
    auto node = std::make_shared<SeriesNode>(SeriesKind::Literal, ctx);
    node->literal = std::move(prefix);
    return PowerSeries(std::move(node));
}

const FieldCtx& PowerSeries::ctx() const { return node_->ctx; }
SeriesKind PowerSeries::kind() const { return node_->kind; }
Element PowerSeries::coeff(std::size_t n) const { return node_->coeff(n); }
std::vector<Element> PowerSeries::prefix(std::size_t n) const { return node_->prefix(n); }

const PolyK& PowerSeries::num() const { return node_->num; }
const PolyK& PowerSeries::den() const { return node_->den; }
const BivariateRelation& PowerSeries::relation() const { return node_->rel; }
const Element& PowerSeries::branch_point() const { return node_->y0; }
const PolyK& PowerSeries::op_poly() const { return node_->den; }
const Element& PowerSeries::scale_factor() const { return node_->beta; }
unsigned PowerSeries::polylog_weight() const { return node_->weight; }
const std::vector<Element>& PowerSeries::literal_prefix() const { return node_->literal; }

PowerSeries PowerSeries::child(std::size_t i) const {
    require_internal((i == 0 && node_->a) || (i == 1 && node_->b), "no such child");
    return PowerSeries(i == 0 ? node_->a : node_->b);
}

PowerSeries hadamard_product(const PowerSeries& f, const PowerSeries& g) {
    require_internal(f.ctx() == g.ctx(), "field mismatch in Hadamard product");
    auto node = std::make_shared<SeriesNode>(SeriesKind::HadamardProduct, f.ctx());
    node->a = f.node_;
    node->b = g.node_;
    return PowerSeries(std::move(node));
}

PowerSeries hadamard_quotient(const PowerSeries& f, const PowerSeries& g) {
    require_internal(f.ctx() == g.ctx(), "field mismatch in Hadamard quotient");
    auto node = std::make_shared<SeriesNode>(SeriesKind::HadamardQuotient, f.ctx());
    node->a = f.node_;
    node->b = g.node_;
    return PowerSeries(std::move(node));
}

PowerSeries diff_op(PolyK p, const PowerSeries& f) {
    auto node = std::make_shared<SeriesNode>(SeriesKind::DiffOp, f.ctx());
    node->den = std::move(p);
    node->a = f.node_;
    return PowerSeries(std::move(node));
}

PowerSeries scale(Element beta, const PowerSeries& f) {
    if (beta.is_zero()) throw ZeroBeta();
    auto node = std::make_shared<SeriesNode>(SeriesKind::Scale, f.ctx());
    node->beta = std::move(beta);
    node->a = f.node_;
    return PowerSeries(std::move(node));
}

std::vector<Element> prefix_power(const PowerSeries& f, unsigned j, std::size_t order) {
    const FieldCtx& ctx = f.ctx();
    if (j == 0) {
        std::vector<Element> one(order, Element::zero(ctx));
        if (order > 0) one[0] = Element::one(ctx);
        return one;
    }
    auto base = f.prefix(order);
    std::vector<Element> acc = base;
    for (unsigned k = 1; k < j; ++k) acc = series_mul(ctx, acc, base, order);
    return acc;
}

}  // namespace hadq
