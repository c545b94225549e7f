// Command-line front end: one subcommand per pipeline, flags mirroring
// RunConfig. Reports are JSON; ladder CSVs are emitted on request.

#include <CLI11.hpp>

#include "hadq/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hadq: exact arithmetic for Hadamard quotients over global fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hadq::kToolVersion);

    hadq::RunConfig config;
    std::string ladder_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output,-o", config.output, "report path (default: stdout)");
        sub->add_flag("--stamp", config.stamp,
                      "embed a wall-clock timestamp (off by default so reports are bit-stable)");
    };
    auto add_series = [&](CLI::App* sub) {
        sub->add_option("--input,-i", config.input, "series spec file")->required();
    };
    auto add_ladder = [&](CLI::App* sub) {
        sub->add_option("--ladder", config.ladder,
                        "sample orders, strictly increasing (default 8 16 32 64)")
            ->delimiter(',');
        sub->add_option("--csv", config.csv, "write the sample ladder as CSV");
    };

    auto* places = app.add_subcommand("places", "enumerate places up to a residue bound");
    places->add_option("--field", config.field, "Q or Fq:<q>")->required();
    places->add_option("--bound", config.place_bound, "residue cardinality bound");
    add_common(places);

    auto* height = app.add_subcommand("height", "truncation height curve of a series");
    add_series(height);
    height->add_option("--r", config.r, "number of powers of the series");
    add_ladder(height);
    add_common(height);

    auto* radius = app.add_subcommand("radius", "per-place radius-of-convergence profile");
    add_series(radius);
    radius->add_option("--place-bound", config.place_bound, "residue cardinality bound");
    radius->add_option("--window", config.coeff_window, "coefficient window");
    add_common(radius);

    auto* audit = app.add_subcommand("audit", "self-mapping-disk analyticity audit");
    add_series(audit);
    audit->add_option("--place-bound", config.place_bound, "residue cardinality bound");
    audit->add_option("--window", config.coeff_window, "coefficient window");
    audit->add_option("--threshold", config.threshold, "divergence threshold");
    add_common(audit);

    auto* reduce = app.add_subcommand("reduce", "reduce a series at a place");
    add_series(reduce);
    reduce->add_option("--place", config.place, "place string, e.g. p:5")->required();
    reduce->add_option("--order", config.order, "number of coefficients");
    add_common(reduce);

    auto* profile = app.add_subcommand("profile", "reduction-degree profile over places");
    add_series(profile);
    profile->add_option("--r", config.r, "relation degree bound");
    profile->add_option("--place-bound", config.place_bound, "residue cardinality bound");
    profile->add_option("--degree-cap", config.degree_cap, "search cap for h_s");
    profile->add_option("--reduction-window", config.reduction_window,
                        "reducibility audit window (0 = automatic)");
    add_common(profile);

    auto* find = app.add_subcommand("find-relation", "exact kernel relation search");
    add_series(find);
    find->add_option("--r", config.r, "y-degree of the relation");
    find->add_option("--L", config.L, "size parameter");
    find->add_option("--verify-cap", config.verify_cap, "verification order (0 = 5M)");
    add_common(find);

    auto* criterion = app.add_subcommand("criterion", "finite-audit algebraicity criterion");
    add_series(criterion);
    criterion->add_option("--r", config.r, "relation degree");
    criterion->add_option("--L", config.L, "size parameter");
    criterion->add_option("--place-bound", config.place_bound, "residue cardinality bound");
    criterion->add_option("--reduction-window", config.reduction_window,
                          "reducibility audit window (0 = automatic)");
    criterion->add_option("--lhs-divisor-factor", config.lhs_divisor_factor,
                          "qualifying constant: h_s < n / (factor r^2)");
    add_ladder(criterion);
    add_common(criterion);

    auto* t14 = app.add_subcommand("theorem14", "dominant-pole pipeline on a Hadamard quotient");
    add_series(t14);
    t14->add_option("--denominator", config.denominator, "ratfn series spec of g")->required();
    t14->add_option("--l", config.l, "power of the operator polynomial");
    t14->add_option("--r", config.r, "criterion degree for the transformed series");
    t14->add_option("--L", config.L, "size parameter");
    t14->add_option("--place-bound", config.place_bound, "residue cardinality bound");
    add_ladder(t14);
    add_common(t14);

    auto* t17 = app.add_subcommand("theorem17", "split-unit density hypothesis checker");
    add_series(t17);
    t17->add_option("--denominator", config.denominator, "ratfn series spec of g")->required();
    t17->add_option("--r", config.r, "relation degree for the numerator series");
    t17->add_option("--L", config.L, "size parameter");
    t17->add_option("--place-bound", config.place_bound, "audit bound (radii, profile)");
    t17->add_option("--density-bound", config.density_bound,
                    "cutoff for the density estimate (0 = place bound)");
    t17->add_option("--mode", config.mode, "algebraic or rational");
    t17->add_option("--divisor", config.divisor, "hypothesis constant (default 12)");
    t17->add_option("--window", config.coeff_window, "radius coefficient window");
    add_ladder(t17);
    add_common(t17);

    auto* density = app.add_subcommand("density", "log-weighted place-set density");
    density->add_option("--field", config.field, "Q or Fq:<q>")->required();
    density->add_option("--bound", config.place_bound, "cutoff n");
    density->add_option("--predicate", config.predicate,
                        "all | mod:<m>,<a> | unit-divisor:<a>");
    add_common(density);

    CLI11_PARSE(app, argc, argv);
    config.command = app.get_subcommands().front()->get_name();
    return hadq::run(config);
}
