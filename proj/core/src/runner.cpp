#include "hadq/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "hadq/criterion.hpp"
#include "hadq/errors.hpp"
#include "hadq/series_spec.hpp"

namespace hadq {

const char* const kToolVersion = "0.1.0";

namespace {

using json = nlohmann::ordered_json;

json num(double d) {
    if (std::isfinite(d)) return d;
    return d > 0 ? json("+inf") : json("-inf");
}

json config_echo(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    if (!c.input.empty()) j["input"] = c.input;
    if (!c.denominator.empty()) j["denominator"] = c.denominator;
    if (!c.field.empty()) j["field"] = c.field;
    if (!c.place.empty()) j["place"] = c.place;
    if (!c.predicate.empty()) j["predicate"] = c.predicate;
    j["r"] = c.r;
    j["L"] = c.L;
    j["l"] = c.l;
    j["ladder"] = c.ladder;
    j["place_bound"] = c.place_bound;
    j["density_bound"] = c.density_bound;
    j["degree_cap"] = c.degree_cap;
    j["order"] = c.order;
    j["coeff_window"] = c.coeff_window;
    j["reduction_window"] = c.reduction_window;
    j["verify_cap"] = c.verify_cap;
    j["threshold"] = c.threshold;
    j["divisor"] = c.divisor;
    j["lhs_divisor_factor"] = c.lhs_divisor_factor;
    j["mode"] = c.mode;
    return j;
}

FieldCtx parse_field(const std::string& text) {
    if (text == "Q" || text.empty()) return FieldCtx::rationals();
    if (text.rfind("Fq:", 0) == 0)
        return FieldCtx::function_field(static_cast<unsigned>(std::stoul(text.substr(3))));
    throw InvalidArgument("bad field spec: " + text + " (use Q or Fq:<q>)");
}

std::vector<std::uint64_t> default_ladder() { return {8, 16, 32, 64}; }

json height_json(const HeightEstimate& h) {
    json j;
    j["samples"] = json::array();
    for (const auto& [n, v] : h.samples) j["samples"].push_back({{"n", n}, {"value", num(v)}});
    j["extrapolated"] = num(h.extrapolated);
    j["window"] = h.window;
    return j;
}

json certificate_json(const RelationCertificate& cert) {
    json j;
    j["relation"] = cert.relation.str();
    json rows = json::array();
    for (const auto& row : cert.relation.matrix()) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.str());
        rows.push_back(r);
    }
    j["coefficients"] = rows;  // rows by t-degree, columns by y-degree
    j["deg_t"] = cert.relation.deg_t();
    j["deg_y"] = cert.relation.deg_y();
    j["vanishing_order"] = cert.vanishing_order;
    if (cert.first_nonzero) {
        j["first_nonzero"] = {{"n", cert.first_nonzero->first},
                              {"c", cert.first_nonzero->second.str()}};
    } else {
        j["first_nonzero"] = nullptr;
    }
    j["exact_at_cap"] = !cert.first_nonzero.has_value();
    j["height_of_relation"] = num(cert.height_of_relation);
    j["siegel_bound"] = num(cert.siegel_bound);
    j["r"] = cert.r;
    j["L"] = cert.L;
    j["verify_cap"] = cert.verify_cap;
    return j;
}

json criterion_json(const CriterionReport& rep) {
    json j;
    j["r"] = rep.r;
    j["L_used"] = rep.L_used;
    j["audit"] = {{"place_bound", rep.place_bound},
                  {"reduction_window", rep.reduction_window},
                  {"search_cap", rep.search_cap},
                  {"lhs_divisor_factor", rep.constants.lhs_divisor_factor},
                  {"rhs_multiplier", rep.constants.rhs_multiplier_base * rep.r + 1}};
    j["lhs"] = json::array();
    for (const auto& [n, v] : rep.lhs) j["lhs"].push_back({{"n", n}, {"value", num(v)}});
    j["rhs"] = json::array();
    for (const auto& [n, v] : rep.rhs) j["rhs"].push_back({{"n", n}, {"value", num(v)}});
    j["margin"] = num(rep.margin);
    j["verdict"] = verdict_str(rep.verdict);
    j["anomaly"] = rep.anomaly;
    if (rep.certificate) j["certificate"] = certificate_json(*rep.certificate);
    // The ladder is a finite-audit proxy: a positive margin is evidence at the
    // audited scale, never a proof of the liminf condition.
    j["finite_audit_only"] = true;
    return j;
}

json density_json(const DensityEstimate& d) {
    return json{{"n", d.n},
                {"numerator_log", num(d.numerator_log)},
                {"denominator_log", num(d.denominator_log)},
                {"ratio", num(d.ratio)}};
}

json profile_json(const ReductionProfile& prof) {
    json j;
    j["r"] = prof.r;
    j["place_bound"] = prof.place_bound;
    j["search_cap"] = prof.search_cap;
    j["reduction_window"] = prof.reduction_window;
    json table = json::array();
    std::uint64_t ok = 0, not_reducible = 0, at_cap = 0;
    for (const auto& e : prof.entries) {
        json row;
        row["place"] = e.place.str();
        switch (e.status) {
            case ReductionProfile::Status::Ok:
                row["status"] = "ok";
                row["h"] = e.h;
                ++ok;
                break;
            case ReductionProfile::Status::NotReducible:
                row["status"] = "not-reducible";
                row["first_bad_index"] = e.failure_index;
                ++not_reducible;
                break;
            case ReductionProfile::Status::AtCap:
                row["status"] = "infinity-at-cap";
                ++at_cap;
                break;
        }
        table.push_back(std::move(row));
    }
    j["entries"] = std::move(table);
    j["summary"] = {{"places", prof.entries.size()},
                    {"ok", ok},
                    {"not_reducible", not_reducible},
                    {"infinity_at_cap", at_cap}};
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

void write_ladder_csv(const std::string& path, const CriterionReport& rep) {
    std::string csv = "n,lhs,rhs\n";
    for (std::size_t i = 0; i < rep.lhs.size(); ++i) {
        csv += std::to_string(rep.lhs[i].first) + "," + std::to_string(rep.lhs[i].second) + "," +
               std::to_string(rep.rhs[i].second) + "\n";
    }
    write_text(path, csv);
}

void write_height_csv(const std::string& path, const HeightEstimate& h) {
    std::string csv = "n,value\n";
    for (const auto& [n, v] : h.samples)
        csv += std::to_string(n) + "," + std::to_string(v) + "\n";
    write_text(path, csv);
}

ExpSumForm denominator_expsum(const RunConfig& config, const FieldCtx& expect_ctx) {
    if (config.denominator.empty())
        throw InvalidArgument("this command needs --denominator <series spec>");
    SeriesSpec g = load_series_spec(config.denominator);
    if (!(g.ctx == expect_ctx)) throw InvalidArgument("field mismatch between input series");
    if (g.series.kind() != SeriesKind::RationalFn)
        throw InvalidArgument("the Hadamard denominator must be a ratfn(...) spec");
    return rational_to_expsum(g.series.num(), g.series.den());
}

json run_command(const RunConfig& config, json& report) {
    const std::string& cmd = config.command;
    if (cmd == "places") {
        FieldCtx ctx = parse_field(config.field);
        json out;
        out["field"] = ctx.str();
        out["bound"] = config.place_bound;
        json list = json::array();
        for (const auto& p : enumerate_places(ctx, config.place_bound)) list.push_back(p.str());
        out["places"] = std::move(list);
        return out;
    }
    if (cmd == "density") {
        FieldCtx ctx = parse_field(config.field);
        std::uint64_t n = config.density_bound ? config.density_bound : config.place_bound;
        json out;
        out["field"] = ctx.str();
        if (config.predicate == "all" || config.predicate.empty()) {
            out["density"] = density_json(
                place_set_density([](const Place&) { return true; }, ctx, n));
        } else if (config.predicate.rfind("mod:", 0) == 0) {
            auto comma = config.predicate.find(',');
            if (comma == std::string::npos)
                throw InvalidArgument("predicate mod:<m>,<a> needs two numbers");
            std::uint64_t m = std::stoull(config.predicate.substr(4, comma - 4));
            std::uint64_t a = std::stoull(config.predicate.substr(comma + 1));
            if (ctx.kind != FieldKind::Rationals)
                throw InvalidArgument("mod predicate works over Q");
            out["density"] = density_json(place_set_density(
                [m, a](const Place& p) {
                    return !p.is_archimedean() && p.prime() % m == a % m;
                },
                ctx, n));
        } else if (config.predicate.rfind("unit-divisor:", 0) == 0) {
            long long a = std::stoll(config.predicate.substr(13));
            // Places at which no value of a^k + 1 vanishes.
            ExpSumForm e = ExpSumForm::make(
                ctx, {ExpSumTerm{PolyK::constant(ctx, Element::one(ctx)),
                                 Element::from_int(ctx, a)},
                      ExpSumTerm{PolyK::constant(ctx, Element::one(ctx)),
                                 Element::one(ctx)}});
            out["density"] = density_json(split_unit_density(e, ctx, n));
        } else {
            throw InvalidArgument("unknown predicate: " + config.predicate);
        }
        return out;
    }

    // Everything below takes an input series.
    if (config.input.empty()) throw InvalidArgument("missing --input series spec");
    SeriesSpec spec = load_series_spec(config.input);
    const FieldCtx& ctx = spec.ctx;
    const PowerSeries& f = spec.series;
    report["field"] = ctx.str();

    std::vector<std::uint64_t> ladder = config.ladder.empty() ? default_ladder() : config.ladder;
    CriterionConstants constants;
    constants.lhs_divisor_factor = config.lhs_divisor_factor;

    if (cmd == "height") {
        auto h = truncation_height_curve(f, config.r, ladder);
        if (!config.csv.empty()) write_height_csv(config.csv, h);
        return height_json(h);
    }
    if (cmd == "radius") {
        auto prof = radius_profile(f, config.place_bound, config.coeff_window);
        json out;
        out["place_bound"] = prof.audited_bound;
        out["coeff_window"] = prof.coeff_window;
        json per = json::array();
        for (const auto& e : prof.per_place)
            per.push_back({{"place", e.place.str()}, {"log_inv_radius", num(e.log_inv_radius)}});
        out["per_place"] = std::move(per);
        out["total"] = num(prof.total);
        return out;
    }
    if (cmd == "audit") {
        auto audit = a_analyticity_audit(f, config.place_bound, config.coeff_window,
                                         config.threshold);
        json out;
        out["place_bound"] = audit.audited_bound;
        out["coeff_window"] = audit.coeff_window;
        out["threshold"] = num(audit.threshold);
        json per = json::array();
        for (const auto& e : audit.per_place)
            per.push_back({{"place", e.place.str()},
                           {"log_inv_radius", num(e.log_inv_radius)},
                           {"unit_obstruction", e.unit_obstruction}});
        out["per_place"] = std::move(per);
        out["divergence_sum"] = num(audit.divergence_sum);
        out["verdict"] = audit.refuted_at_bound ? "refuted-at-bound" : "plausible";
        return out;
    }
    if (cmd == "reduce") {
        if (config.place.empty()) throw InvalidArgument("missing --place");
        Place s = Place::parse(ctx, config.place);
        ResidueField rf = ResidueField::at(s);
        auto red = reduce_series(f, s, config.order);
        json out;
        out["place"] = s.str();
        out["order"] = config.order;
        json coeffs = json::array();
        for (auto v : red) coeffs.push_back(rf.elem_str(v));
        out["coefficients"] = std::move(coeffs);
        return out;
    }
    if (cmd == "profile") {
        auto prof = profile(f, config.r, config.place_bound, config.degree_cap,
                            config.reduction_window);
        return profile_json(prof);
    }
    if (cmd == "find-relation") {
        auto cert = find_relation(f, config.r, config.L, config.verify_cap);
        json out;
        out["certificate"] = certificate_json(cert);
        auto bound = siegel_bound_report(cert, f);
        out["siegel"] = {{"height_of_relation", num(bound.height_of_relation)},
                         {"bound_stated", num(bound.bound_stated)},
                         {"bound_monomials", num(bound.bound_monomials)},
                         {"satisfied", bound.satisfied},
                         {"note", "the stated column count undercounts the monomials of the "
                                  "bidegree by r+1; both bounds are reported"}};
        return out;
    }
    if (cmd == "criterion") {
        auto rep = criterion_run(f, config.r, ladder, config.place_bound, config.L, constants,
                                 config.reduction_window);
        if (!config.csv.empty()) write_ladder_csv(config.csv, rep);
        return criterion_json(rep);
    }
    if (cmd == "theorem14") {
        ExpSumForm g = denominator_expsum(config, ctx);
        std::vector<Place> places;
        if (ctx.kind == FieldKind::Rationals) places.push_back(Place::archimedean());
        for (const auto& p : enumerate_places(ctx, std::max<std::uint64_t>(config.place_bound, 2)))
            if (!p.is_archimedean()) places.push_back(p);
        auto rep = theorem14_check(f, g, places, config.l, config.r, ladder, config.place_bound,
                                   config.L, constants);
        json out;
        out["pole_found"] = rep.pole_found;
        if (rep.pole_found) {
            out["v0"] = rep.v0.str();
            out["simple"] = rep.simple;
            out["beta"] = rep.beta.str();
            out["p"] = rep.p.str("n");
            out["l"] = rep.l;
            out["criterion"] = criterion_json(*rep.criterion);
            if (!config.csv.empty()) write_ladder_csv(config.csv, *rep.criterion);
        }
        return out;
    }
    if (cmd == "theorem17") {
        ExpSumForm g = denominator_expsum(config, ctx);
        auto f_cert = find_relation(f, config.r, config.L, config.verify_cap);
        if (f_cert.first_nonzero)
            throw UnverifiedRelation(
                "no exact relation for the numerator series at r=" + std::to_string(config.r) +
                ", L=" + std::to_string(config.L));
        Theorem17Mode mode;
        if (config.mode == "algebraic")
            mode = Theorem17Mode::Algebraic;
        else if (config.mode == "rational")
            mode = Theorem17Mode::Rational;
        else
            throw InvalidArgument("mode must be algebraic or rational");
        auto rep = theorem17_check(f_cert.relation, f, g, config.place_bound, ladder, config.L,
                                   mode, config.divisor, config.density_bound,
                                   config.coeff_window, constants);
        json out;
        out["d"] = rep.d;
        out["d_exact"] = rep.d_exact;
        out["delta_hat"] = density_json(rep.delta_hat);
        out["radii_sum"] = num(rep.radii_sum);
        if (rep.mode == Theorem17Mode::Rational) out["height_estimate"] = num(rep.height_estimate);
        out["threshold"] = num(rep.threshold);
        out["divisor"] = num(rep.divisor);
        out["hypothesis_satisfied"] = rep.hypothesis_satisfied;
        out["mode"] = config.mode;
        out["criterion"] = criterion_json(rep.criterion);
        if (!config.csv.empty()) write_ladder_csv(config.csv, rep.criterion);
        return out;
    }
    throw InvalidArgument("unknown command: " + cmd);
}

}  // namespace

int run(const RunConfig& config) {
    json report;
    report["schema"] = "hadq.report/1";
    report["command"] = config.command;
    report["tool_version"] = kToolVersion;
    if (config.stamp) {
        auto now = std::chrono::system_clock::now();
        report["timestamp"] =
            std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    }
    report["config"] = config_echo(config);
    try {
        json result = run_command(config, report);
        report["result"] = std::move(result);
        write_text(config.output, report.dump(2) + "\n");
        return 0;
    } catch (const InvalidArgument& e) {
        report["error"] = {{"code", e.code()}, {"message", e.what()}};
        write_text(config.output, report.dump(2) + "\n");
        return 2;
    } catch (const ParseError& e) {
        report["error"] = {{"code", e.code()}, {"message", e.what()}};
        write_text(config.output, report.dump(2) + "\n");
        return 2;
    } catch (const ZeroDenominatorCoefficient& e) {
        report["error"] = {{"code", e.code()}, {"message", e.what()}, {"index", e.index()}};
        write_text(config.output, report.dump(2) + "\n");
        return 3;
    } catch (const NotReducible& e) {
        report["error"] = {{"code", e.code()}, {"message", e.what()}, {"index", e.index()}};
        write_text(config.output, report.dump(2) + "\n");
        return 3;
    } catch (const Error& e) {
        report["error"] = {{"code", e.code()}, {"message", e.what()}};
        write_text(config.output, report.dump(2) + "\n");
        return 3;
    }
}

}  // namespace hadq
