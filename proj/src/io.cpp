// SPDX-License-Identifier: Apache-2.0
#include "specwave/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

namespace specwave {

using nlohmann::json;

namespace {

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << "\n";
}

json complex_pair(cd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cd read_complex(const json& j) {
    return cd(j.at("re").get<double>(), j.at("im").get<double>());
}

const char* family_name(SingularityFamily f) {
    return f == SingularityFamily::over_two_beta ? "n/(2beta)" : "n/2";
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

Problem load_problem(const std::filesystem::path& path) {
    const json doc = parse_file(path);
    try {
        Problem p;
        p.medium.beta = doc.at("beta").get<double>();
        if (!(p.medium.beta > 0.0)) throw ParseError(path.string() + ": beta must be positive");

        std::set<int> seen;
        int max_n = 0;
        const json harmonics = doc.value("harmonics", json::array());
        for (const json& h : harmonics) {
            const int n = h.at("n").get<int>();
            if (n < 1) throw ParseError(path.string() + ": harmonic index must be >= 1");
            if (!seen.insert(n).second)
                throw ParseError(path.string() + ": duplicate harmonic index " +
                                 std::to_string(n));
            max_n = std::max(max_n, n);
        }
        p.potential.harmonics.assign(static_cast<size_t>(max_n), cd(0.0, 0.0));
        for (const json& h : harmonics)
            p.potential.harmonics[static_cast<size_t>(h.at("n").get<int>() - 1)] =
                read_complex(h);
        return p;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_problem(const std::filesystem::path& path, const Problem& problem) {
    json harmonics = json::array();
    for (int n = 1; n <= problem.potential.order(); ++n) {
        const cd q = problem.potential.coeff(n);
        json h = complex_pair(q);
        h["n"] = n;
        harmonics.push_back(h);
    }
    write_file(path, json{{"beta", problem.medium.beta}, {"harmonics", harmonics}});
}

void save_inverse_result(const std::filesystem::path& path, const InverseResult& result) {
    json harmonics = json::array();
    for (int n = 1; n <= result.potential.order(); ++n) {
        json h = complex_pair(result.potential.coeff(n));
        h["n"] = n;
        harmonics.push_back(h);
    }
    json diagnostics = json::object();
    for (const auto& [key, value] : result.diagnostics) diagnostics[key] = value;
    write_file(path, json{{"beta", result.beta},
                          {"harmonics", harmonics},
                          {"diagnostics", diagnostics}});
}

SpectralData load_spectral_data(const std::filesystem::path& path) {
    const json doc = parse_file(path);
    try {
        SpectralData data;
        const json& numbers = doc.at("normalizing_numbers");
        const int A = static_cast<int>(numbers.size());
        if (A < 1) throw ParseError(path.string() + ": normalizing_numbers must be non-empty");
        data.normalizing_numbers.assign(static_cast<size_t>(A), cd(0.0, 0.0));
        std::set<int> seen;
        for (const json& e : numbers) {
            const int n = e.at("n").get<int>();
            if (n < 1 || n > A)
                throw ParseError(path.string() +
                                 ": normalizing_numbers must cover n = 1.." +
                                 std::to_string(A) + " exactly");
            if (!seen.insert(n).second)
                throw ParseError(path.string() + ": duplicate normalizing number " +
                                 std::to_string(n));
            data.normalizing_numbers[static_cast<size_t>(n - 1)] = read_complex(e);
        }

        const json& c12 = doc.at("c12");
        const bool has_asym = c12.contains("asymptote");
        const bool has_samples = c12.contains("samples");
        if (has_asym == has_samples)
            throw ParseError(path.string() +
                             ": c12 needs exactly one of asymptote / samples");
        if (has_asym) {
            data.asymptote = read_complex(c12.at("asymptote"));
        } else {
            for (const json& s : c12.at("samples"))
                data.samples.push_back({s.at("im_lambda").get<double>(), read_complex(s)});
        }
        require_valid(data);
        return data;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_spectral_data(const std::filesystem::path& path, const SpectralData& data) {
    json numbers = json::array();
    for (int n = 1; n <= data.A(); ++n) {
        json e = complex_pair(data.normalizing_numbers[static_cast<size_t>(n - 1)]);
        e["n"] = n;
        numbers.push_back(e);
    }
    json c12 = json::object();
    if (data.asymptote) {
        c12["asymptote"] = complex_pair(*data.asymptote);
    } else {
        json samples = json::array();
        for (const C12Sample& s : data.samples) {
            json e = complex_pair(s.value);
            e["im_lambda"] = s.t;
            samples.push_back(e);
        }
        c12["samples"] = samples;
    }
    write_file(path, json{{"normalizing_numbers", numbers}, {"c12", c12}});
}

void save_spectrum_report(const std::filesystem::path& path, const SpectrumReport& report) {
    json eigenvalues = json::array();
    for (const Eigenvalue& e : report.eigenvalues) {
        json entry = complex_pair(e.lambda);
        entry["c12_abs"] = e.c12_abs;
        eigenvalues.push_back(entry);
    }
    json singularities = json::array();
    for (const Singularity& s : report.singularities)
        singularities.push_back(
            json{{"value", s.value}, {"family", family_name(s.family)}, {"n", s.n}});
    write_file(path, json{{"eigenvalues", eigenvalues},
                          {"singularities", singularities},
                          {"region",
                           {{"re0", report.region.re0},
                            {"re1", report.region.re1},
                            {"im0", report.region.im0},
                            {"im1", report.region.im1}}},
                          {"A", report.A},
                          {"tail_norm",
                           {{"total", report.tail.total},
                            {"last_column", report.tail.last_column}}}});
}

void save_vtable(const std::filesystem::path& path, const VTable& v) {
    json entries = json::array();
    for (int alpha = 1; alpha <= v.A; ++alpha) {
        for (int n = 1; n <= alpha; ++n) {
            json e = complex_pair(v.get(n, alpha));
            e["n"] = n;
            e["alpha"] = alpha;
            entries.push_back(e);
        }
    }
    write_file(path, json{{"A", v.A}, {"entries", entries}});
}

void write_c12_grid_csv(const std::filesystem::path& path, const SolutionContext& ctx,
                        const GridSpec& grid) {
    if (grid.nx < 2 || grid.ny < 2)
        throw std::invalid_argument("c12 grid: steps must be >= 2 in each direction");
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    out << "re_lambda,im_lambda,re_c12,im_c12\n";
    for (int iy = 0; iy < grid.ny; ++iy) {
        const double im =
            grid.im0 + (grid.im1 - grid.im0) * iy / static_cast<double>(grid.ny - 1);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double re =
                grid.re0 + (grid.re1 - grid.re0) * ix / static_cast<double>(grid.nx - 1);
            cd value;
            try {
                value = c12_value(ctx, cd(re, im));
            } catch (const SpectralError&) {
                value = cd(std::nan(""), std::nan(""));
            }
            out << format_double(re) << ',' << format_double(im) << ','
                << format_double(value.real()) << ',' << format_double(value.imag()) << '\n';
        }
    }
}

}  // namespace specwave
