// SPDX-License-Identifier: Apache-2.0
//
// Command line front end. Exit codes: 0 success, 1 validation suite failure,
// 2 malformed input or bad usage, 3 numerical failure (pole hits,
// degenerate bases, non-convergence, invalid recovered parameters).
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specwave/inverse.hpp"
#include "specwave/io.hpp"
#include "specwave/solutions.hpp"
#include "specwave/spectral.hpp"
#include "specwave/validate.hpp"
#include "specwave/vtable.hpp"

namespace {

using namespace specwave;

int default_truncation(const Potential& q) { return std::max(2 * q.order(), 24); }

void warn_narrow_contrast(const MediumProfile& medium) {
    if (std::abs(medium.beta - 1.0) < 1e-6)
        std::cerr << "warning: beta is within 1e-6 of 1; the two singularity "
                     "families nearly coincide and the search region may need "
                     "manual limits\n";
}

void warn_truncation(const VTable& v) {
    const TailNorm tail = tail_norm(v);
    if (tail.total > 0.0 && tail.last_column > 1e-8 * tail.total) {
        std::fprintf(stderr,
                     "warning: last-column tail share %s exceeds 1e-08 of the series "
                     "norm; consider a larger --truncation\n",
                     format_double(tail.last_column / tail.total).c_str());
    }
}

struct ForwardArgs {
    std::string input, output, dump_vtable;
    int truncation = 0;  // 0: pick from the potential order
    int cutoff = 8;
    std::vector<double> region;  // re0,re1,im0,im1
    std::vector<double> grid;    // re0,re1,im0,im1,nx,ny
};

int run_forward(const ForwardArgs& args) {
    const Problem problem = load_problem(args.input);
    warn_narrow_contrast(problem.medium);

    const int A = args.truncation > 0 ? args.truncation : default_truncation(problem.potential);
    const SolutionContext ctx(build_vtable(problem.potential, A), problem.medium);
    warn_truncation(ctx.vtable);

    Rect region = default_search_region(problem.potential, A);
    if (!args.region.empty()) {
        if (args.region.size() != 4) {
            std::cerr << "error: --region wants re0,re1,im0,im1\n";
            return 2;
        }
        region = Rect{args.region[0], args.region[1], args.region[2], args.region[3]};
    }

    SpectrumReport report = find_eigenvalues(ctx, region);
    report.singularities = spectral_singularities(problem.medium, args.cutoff);
    save_spectrum_report(args.output, report);

    if (!args.grid.empty()) {
        if (args.grid.size() != 6) {
            std::cerr << "error: --grid wants re0,re1,im0,im1,nx,ny\n";
            return 2;
        }
        GridSpec spec;
        spec.re0 = args.grid[0];
        spec.re1 = args.grid[1];
        spec.im0 = args.grid[2];
        spec.im1 = args.grid[3];
        spec.nx = static_cast<int>(args.grid[4]);
        spec.ny = static_cast<int>(args.grid[5]);
        write_c12_grid_csv(args.output + ".grid.csv", ctx, spec);
    }
    if (!args.dump_vtable.empty()) save_vtable(args.dump_vtable, ctx.vtable);

    std::printf("eigenvalues %zu, singularities %zu, A = %d\n", report.eigenvalues.size(),
                report.singularities.size(), report.A);
    return 0;
}

int run_inverse(const std::string& input, const std::string& output) {
    const SpectralData data = load_spectral_data(input);
    const InverseResult result = solve_inverse(data);
    save_inverse_result(output, result);
    std::printf("beta %s, %d harmonics\n", format_double(result.beta).c_str(),
                result.potential.order());
    return 0;
}

int run_roundtrip(const std::string& input, int truncation) {
    const Problem problem = load_problem(input);
    const int A = truncation > 0 ? truncation : default_truncation(problem.potential);
    const RoundTripReport r = round_trip(problem.potential, problem.medium, A);

    struct Row {
        const char* label;
        double value, threshold;
    } checks[] = {
        {"q_max_rel_err", r.q_max_rel_err, 1e-8},
        {"beta_abs_err", r.beta_abs_err, 1e-6},
        {"vtable_max_err", r.vtable_max_err, 1e-10},
    };
    std::printf("round trip A = %d, beta %s -> %s\n", r.A,
                format_double(r.beta_in).c_str(), format_double(r.beta_out).c_str());
    bool ok = true;
    for (const Row& row : checks) {
        const bool pass = row.value <= row.threshold;
        ok = ok && pass;
        std::printf("%-16s %s <= %s %s\n", row.label, format_double(row.value).c_str(),
                    format_double(row.threshold).c_str(), pass ? "PASS" : "FAIL");
    }
    std::printf("overall %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

struct ResolventArgs {
    std::string input, output, sector = "upper";
    double x = 0.0, t = 0.0;
    int truncation = 0;
    std::vector<double> lambda;  // re,im
};

int run_resolvent(const ResolventArgs& args) {
    if (args.lambda.size() != 2) {
        std::cerr << "error: --lambda wants re,im\n";
        return 2;
    }
    const Problem problem = load_problem(args.input);
    const int A = args.truncation > 0 ? args.truncation : default_truncation(problem.potential);
    const SolutionContext ctx(build_vtable(problem.potential, A), problem.medium);

    ResolventQuery query;
    query.x = args.x;
    query.t = args.t;
    query.lambda = cd(args.lambda[0], args.lambda[1]);
    query.sector = args.sector == "lower" ? Sector::lower : Sector::upper;
    const cd value = resolvent_kernel(ctx, query);

    const std::string doc = "{\n  \"re\": " + format_double(value.real()) +
                            ",\n  \"im\": " + format_double(value.imag()) + "\n}\n";
    if (args.output.empty()) {
        std::fputs(doc.c_str(), stdout);
    } else {
        std::ofstream out(args.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + args.output);
        out << doc;
    }
    return 0;
}

int run_validate(std::uint64_t seed, int truncation, const std::string& output) {
    ValidateOptions opts;
    opts.seed = seed;
    opts.A = truncation;
    const std::vector<SuiteRow> rows = run_validation(opts);
    const std::string report = format_validation_report(rows, opts);
    if (output.empty()) {
        std::fputs(report.c_str(), stdout);
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + output);
        out << report;
    }
    return all_passed(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forward and inverse spectral computations for a string with "
                 "piecewise constant density and a one-sided Fourier potential"};
    app.require_subcommand(1);

    ForwardArgs fwd;
    CLI::App* forward = app.add_subcommand(
        "forward", "potential + beta -> eigenvalues, singularities, diagnostics");
    forward->add_option("--input", fwd.input, "problem document (JSON)")->required();
    forward->add_option("--output", fwd.output, "spectrum report path")->required();
    forward->add_option("--truncation", fwd.truncation, "series truncation order A");
    forward->add_option("--cutoff", fwd.cutoff, "singularity family cutoff n");
    forward->add_option("--region", fwd.region, "search rectangle re0,re1,im0,im1")
        ->delimiter(',');
    forward->add_option("--grid", fwd.grid, "C12 sample grid re0,re1,im0,im1,nx,ny")
        ->delimiter(',');
    forward->add_option("--dump-vtable", fwd.dump_vtable, "write the series table here");

    std::string inv_input, inv_output;
    CLI::App* inverse = app.add_subcommand(
        "inverse", "normalizing numbers + C12 data -> potential and beta");
    inverse->add_option("--input", inv_input, "spectral data document (JSON)")->required();
    inverse->add_option("--output", inv_output, "reconstruction output path")->required();

    std::string rt_input;
    int rt_truncation = 0;
    CLI::App* roundtrip =
        app.add_subcommand("roundtrip", "forward then inverse on one problem, with error rows");
    roundtrip->add_option("--input", rt_input, "problem document (JSON)")->required();
    roundtrip->add_option("--truncation", rt_truncation, "series truncation order A");

    ResolventArgs res;
    CLI::App* resolvent = app.add_subcommand("resolvent", "kernel value at (x, t, lambda)");
    resolvent->add_option("--input", res.input, "problem document (JSON)")->required();
    resolvent->add_option("--x", res.x, "first coordinate")->required();
    resolvent->add_option("--t", res.t, "second coordinate")->required();
    resolvent->add_option("--lambda", res.lambda, "spectral parameter re,im")
        ->required()
        ->delimiter(',');
    resolvent->add_option("--sector", res.sector, "upper or lower half plane")
        ->check(CLI::IsMember({"upper", "lower"}));
    resolvent->add_option("--output", res.output, "write JSON here instead of stdout");
    resolvent->add_option("--truncation", res.truncation, "series truncation order A");

    std::uint64_t seed = 7;
    int val_truncation = 32;
    std::string val_output;
    CLI::App* validate =
        app.add_subcommand("validate", "run the invariant suites and print a report");
    validate->add_option("--seed", seed, "seed for the randomized suites");
    validate->add_option("--truncation", val_truncation, "series truncation order A");
    validate->add_option("--output", val_output, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (forward->parsed()) return run_forward(fwd);
        if (inverse->parsed()) return run_inverse(inv_input, inv_output);
        if (roundtrip->parsed()) return run_roundtrip(rt_input, rt_truncation);
        if (resolvent->parsed()) return run_resolvent(res);
        if (validate->parsed()) return run_validate(seed, val_truncation, val_output);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SpectralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
