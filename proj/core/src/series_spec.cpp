#include "hadq/series_spec.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "hadq/errors.hpp"

namespace hadq {

namespace {

class ExprParser {
public:
    ExprParser(const FieldCtx& ctx, const std::string& text) : ctx_(ctx), s_(text) {}

    PowerSeries parse() {
        PowerSeries out = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing input after series expression");
        return out;
    }

private:
    const FieldCtx& ctx_;
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c))
            throw ParseError(std::string("expected '") + c + "' at offset " +
                             std::to_string(pos_));
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) throw ParseError("expected a name at offset " + std::to_string(pos_));
        return s_.substr(start, pos_ - start);
    }

    // Everything up to the next top-level ',' or ')'.
    std::string argument_text() {
        skip_ws();
        int depth = 0;
        std::size_t start = pos_;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') {
                if (depth == 0) break;
                --depth;
            }
            if (c == ',' && depth == 0) break;
            ++pos_;
        }
        std::string out = s_.substr(start, pos_ - start);
        while (!out.empty() && isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
        if (out.empty()) throw ParseError("empty argument at offset " + std::to_string(start));
        return out;
    }

    Element elem() { return Element::parse(ctx_, argument_text()); }

    std::vector<Element> list() {
        expect('[');
        std::vector<Element> out;
        skip_ws();
        if (consume(']')) return out;
        while (true) {
            out.push_back(elem());
            if (consume(']')) break;
            expect(',');
        }
        return out;
    }

    PolyK poly() { return PolyK(ctx_, list()); }

    BivariateRelation bipoly() {
        expect('[');
        std::vector<std::vector<Element>> rows;
        skip_ws();
        if (!consume(']')) {
            while (true) {
                rows.push_back(list());
                if (consume(']')) break;
                expect(',');
            }
        }
        return BivariateRelation::from_matrix(ctx_, rows);
    }

    PowerSeries expr() {
        std::string name = ident();
        expect('(');
        if (name == "ratfn") {
            PolyK num = poly();
            expect(',');
            PolyK den = poly();
            expect(')');
            return PowerSeries::rational_fn(std::move(num), std::move(den));
        }
        if (name == "algebraic") {
            BivariateRelation rel = bipoly();
            expect(',');
            Element y0 = elem();
            expect(')');
            return PowerSeries::algebraic(std::move(rel), std::move(y0));
        }
        if (name == "hadamard_product" || name == "hadamard_quotient") {
            PowerSeries a = expr();
            expect(',');
            PowerSeries b = expr();
            expect(')');
            return name == "hadamard_product" ? hadamard_product(a, b) : hadamard_quotient(a, b);
        }
        if (name == "diff_op") {
            PolyK p = poly();
            expect(',');
            PowerSeries a = expr();
            expect(')');
            return diff_op(std::move(p), a);
        }
        if (name == "scale") {
            Element beta = elem();
            expect(',');
            PowerSeries a = expr();
            expect(')');
            return scale(std::move(beta), a);
        }
        if (name == "polylog") {
            skip_ws();
            std::string w = argument_text();
            expect(')');
            return PowerSeries::polylog(ctx_, static_cast<unsigned>(std::stoul(w)));
        }
        if (name == "literal") {
            std::vector<Element> prefix = list();
            expect(')');
            return PowerSeries::literal(ctx_, std::move(prefix));
        }
        throw ParseError("unknown series constructor: " + name);
    }
};

std::string print_poly(const PolyK& p) {
    std::string out = "[";
    for (int i = 0; i <= std::max(p.deg(), 0); ++i) {
        if (i) out += ", ";
        out += p.coeff(i).str();
    }
    return out + "]";
}

std::string print_bipoly(const BivariateRelation& rel) {
    auto rows = rel.matrix();
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (j) out += ", ";
            out += rows[i][j].str();
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace

std::string print_series_expr(const PowerSeries& f) {
    switch (f.kind()) {
        case SeriesKind::RationalFn:
            return "ratfn(" + print_poly(f.num()) + ", " + print_poly(f.den()) + ")";
        case SeriesKind::Algebraic:
            return "algebraic(" + print_bipoly(f.relation()) + ", " + f.branch_point().str() + ")";
        case SeriesKind::HadamardProduct:
            return "hadamard_product(" + print_series_expr(f.child(0)) + ", " +
                   print_series_expr(f.child(1)) + ")";
        case SeriesKind::HadamardQuotient:
            return "hadamard_quotient(" + print_series_expr(f.child(0)) + ", " +
                   print_series_expr(f.child(1)) + ")";
        case SeriesKind::DiffOp:
            return "diff_op(" + print_poly(f.op_poly()) + ", " + print_series_expr(f.child(0)) +
                   ")";
        case SeriesKind::Scale:
            return "scale(" + f.scale_factor().str() + ", " + print_series_expr(f.child(0)) + ")";
        case SeriesKind::Polylog:
            return "polylog(" + std::to_string(f.polylog_weight()) + ")";
        case SeriesKind::Literal: {
            std::string out = "literal([";
            const auto& pre = f.literal_prefix();
            for (std::size_t i = 0; i < pre.size(); ++i) {
                if (i) out += ", ";
                out += pre[i].str();
            }
            return out + "])";
        }
    }
    throw ParseError("unknown node kind");
}

std::string print_series_spec(const PowerSeries& f) {
    const FieldCtx& ctx = f.ctx();
    std::string head = ctx.kind == FieldKind::Rationals
                           ? "field Q\n"
                           : "field Fq " + std::to_string(ctx.q) + "\n";
    return head + "series " + print_series_expr(f) + "\n";
}

SeriesSpec parse_series_spec(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<FieldCtx> ctx;
    std::string series_text;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "field") {
            std::string kind;
            if (!(ls >> kind)) throw ParseError("field line needs a kind");
            if (kind == "Q") {
                ctx = FieldCtx::rationals();
            } else if (kind == "Fq") {
                unsigned q;
                if (!(ls >> q)) throw ParseError("field Fq needs the field size");
                ctx = FieldCtx::function_field(q);
            } else {
                throw ParseError("unknown field kind: " + kind);
            }
        } else if (word == "series") {
            std::string rest;
            std::getline(ls, rest);
            series_text += rest;
            // A series expression may continue over following lines.
            while (std::getline(in, line)) {
                hash = line.find('#');
                if (hash != std::string::npos) line = line.substr(0, hash);
                series_text += " " + line;
            }
            break;
        } else {
            throw ParseError("unknown directive: " + word);
        }
    }
    if (!ctx) throw ParseError("missing 'field' line");
    if (series_text.empty()) throw ParseError("missing 'series' line");
    ExprParser parser(*ctx, series_text);
    return SeriesSpec{*ctx, parser.parse()};
}

SeriesSpec load_series_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open series spec: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_series_spec(buf.str());
}

}  // namespace hadq
