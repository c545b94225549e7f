#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "hadq/gf.hpp"

namespace hadq {

enum class FieldKind { Rationals, FunctionField };

// Which global field we work over, plus the two constants that enter the
// Siegel height bound. Only Q and F_q(x) are supported; both have genus
// term 0, and epsilon is the degree over Q (1) or 0.
struct FieldCtx {
    FieldKind kind = FieldKind::Rationals;
    unsigned q = 0;  // residue field size of the constant field; 0 for Q

    static FieldCtx rationals() { return FieldCtx{FieldKind::Rationals, 0}; }
    static FieldCtx function_field(unsigned q) {
        GF::get(q);  // validates q is a prime power
        return FieldCtx{FieldKind::FunctionField, q};
    }

    double epsilon() const { return kind == FieldKind::Rationals ? 1.0 : 0.0; }
    double genus_term() const { return 0.0; }
    unsigned characteristic() const {
        return kind == FieldKind::Rationals ? 0 : GF::get(q).p();
    }
    bool operator==(const FieldCtx& o) const { return kind == o.kind && q == o.q; }
    std::string str() const {
        return kind == FieldKind::Rationals ? "Q" : "F" + std::to_string(q) + "(x)";
    }
};

// An element of the global field: an exact rational over Q, or a rational
// function over F_q in lowest terms with monic denominator.
class Element {
public:
    Element() : v_(mpq_class(0)) {}
    static Element rational(mpq_class v) {
        v.canonicalize();
        return Element(std::move(v));
    }
    static Element rational(long num, long den = 1) {
        return rational(mpq_class(num, den));
    }
    static Element function_field(RatFn v) { return Element(std::move(v)); }

    static Element zero(const FieldCtx& ctx);
    static Element one(const FieldCtx& ctx);
    static Element from_int(const FieldCtx& ctx, long long v);

    bool is_rational_kind() const { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& rat() const { return std::get<mpq_class>(v_); }
    const RatFn& ff() const { return std::get<RatFn>(v_); }

    bool is_zero() const;
    bool is_one() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator/(const Element& o) const;
    Element operator-() const;
    Element inverse() const;
    Element pow(long long e) const;
    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    std::string str() const;
    // Accepts "num/den" decimal strings over Q, polynomial-fraction
    // expressions over F_q(x).
    static Element parse(const FieldCtx& ctx, const std::string& text);

private:
    explicit Element(mpq_class v) : v_(std::move(v)) {}
    explicit Element(RatFn v) : v_(std::move(v)) {}
    std::variant<mpq_class, RatFn> v_;
};

}  // namespace hadq
