#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hadq {

// Base class for every error the library reports. `code()` is a stable
// machine-readable tag used by the CLI when writing structured error reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Validation problems (bad parameters, malformed input). CLI exit code 2.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("parse-error", what) {}
};

// Computational errors. CLI exit code 3.
class ZeroElement : public Error {
public:
    ZeroElement() : Error("zero-element", "operation undefined for the zero element") {}
};

class AllZero : public Error {
public:
    AllZero() : Error("all-zero", "projective tuple has no nonzero coordinate") {}
};

class ZeroDenominatorCoefficient : public Error {
public:
    explicit ZeroDenominatorCoefficient(std::size_t n)
        : Error("zero-denominator-coefficient",
                "Hadamard denominator has zero coefficient at index " + std::to_string(n)),
          index_(n) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class ZeroBeta : public Error {
public:
    ZeroBeta() : Error("zero-beta", "scaling by beta = 0 is not invertible") {}
};

class NewtonFailure : public Error {
public:
    explicit NewtonFailure(const std::string& what) : Error("newton-failure", what) {}
};

class PrefixExhausted : public Error {
public:
    PrefixExhausted(std::size_t n, std::size_t have)
        : Error("prefix-exhausted",
                "literal series has only " + std::to_string(have) +
                    " coefficients, index " + std::to_string(n) + " requested"),
          index_(n) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class NonSplitDenominator : public Error {
public:
    explicit NonSplitDenominator(const std::string& factor)
        : Error("non-split-denominator",
                "denominator does not split into linear factors; remaining factor " + factor),
          factor_(factor) {}
    const std::string& factor() const { return factor_; }

private:
    std::string factor_;
};

class NonProperRational : public Error {
public:
    NonProperRational()
        : Error("non-proper-rational",
                "exponential-sum form requires numerator degree below denominator degree") {}
};

class NoDominantPole : public Error {
public:
    explicit NoDominantPole(const std::string& ties)
        : Error("no-dominant-pole", "no unique base of maximal absolute value; tied: " + ties) {}
};

class NonSimpleDominantPole : public Error {
public:
    NonSimpleDominantPole()
        : Error("non-simple-dominant-pole",
                "dominant pole carries a nonconstant polynomial factor") {}
};

class NotReducible : public Error {
public:
    explicit NotReducible(std::size_t n)
        : Error("not-reducible",
                "coefficient at index " + std::to_string(n) + " is not integral at the place"),
          index_(n) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class InsufficientPrefix : public Error {
public:
    InsufficientPrefix(std::size_t needed, std::size_t have)
        : Error("insufficient-prefix",
                "need " + std::to_string(needed) + " coefficients, have " + std::to_string(have)) {}
};

class NonIntegralData : public Error {
public:
    explicit NonIntegralData(const std::string& what) : Error("non-integral-data", what) {}
};

class NoNonzeroTerm : public Error {
public:
    NoNonzeroTerm()
        : Error("no-nonzero-term", "certificate records no nonzero term up to the cap") {}
};

class UnverifiedRelation : public Error {
public:
    explicit UnverifiedRelation(const std::string& what) : Error("unverified-relation", what) {}
};

class NonSimplePoles : public Error {
public:
    NonSimplePoles()
        : Error("non-simple-poles", "operation requires an exponential sum with constant terms "
                                    "(simple poles only)") {}
};

class Unsupported : public Error {
public:
    explicit Unsupported(const std::string& what) : Error("unsupported", what) {}
};

class FactorizationTooHard : public Error {
public:
    explicit FactorizationTooHard(const std::string& what)
        : Error("factorization-too-hard", what) {}
};

// Internal invariant violations; these indicate bugs, not bad input.
inline void require_internal(bool cond, const char* msg) {
    if (!cond) throw std::logic_error(std::string("hadq internal invariant violated: ") + msg);
}

}  // namespace hadq
