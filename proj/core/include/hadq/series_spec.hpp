#pragma once

#include <string>

#include "hadq/series.hpp"

namespace hadq {

// Textual series specifications.
//
//   # comment
//   field Q            (or: field Fq 5)
//   series <expr>
//
// with
//
//   expr := ratfn(<poly>, <poly>)
//         | algebraic(<bipoly>, <elem>)
//         | hadamard_product(<expr>, <expr>)
//         | hadamard_quotient(<expr>, <expr>)
//         | diff_op(<poly>, <expr>)
//         | scale(<elem>, <expr>)
//         | polylog(<weight>)
//         | literal(<poly>)
//   poly  := [ <elem>, ... ]            coefficients, constant term first
//   bipoly:= [ <poly>, ... ]            rows by t-degree; entries by y-degree
//   elem  := rational literal over Q ("-3/2"), polynomial fraction over
//            F_q(x) ("(x^2+1)/(x+2)")
struct SeriesSpec {
    FieldCtx ctx;
    PowerSeries series;
};

SeriesSpec parse_series_spec(const std::string& text);
SeriesSpec load_series_spec(const std::string& path);

std::string print_series_expr(const PowerSeries& f);
std::string print_series_spec(const PowerSeries& f);

}  // namespace hadq
