// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "specwave/inverse.hpp"
#include "specwave/spectral.hpp"
#include "specwave/types.hpp"

namespace specwave {

// Bad input documents (malformed JSON, missing/duplicate fields). The CLI
// maps this family to exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Problem {
    Potential potential;
    MediumProfile medium;
};

// { "beta": <real>, "harmonics": [ { "n": <int>, "re": <real>, "im": <real> }, ... ] }
// Harmonics may be sparse in n; duplicate n is an error.
Problem load_problem(const std::filesystem::path& path);
void save_problem(const std::filesystem::path& path, const Problem& problem);

// Same document plus a "diagnostics" object.
void save_inverse_result(const std::filesystem::path& path, const InverseResult& result);

// { "normalizing_numbers": [ { "n", "re", "im" }, ... ],
//   "c12": { "asymptote": { "re", "im" } }  or  { "samples": [ { "im_lambda", "re", "im" }, ... ] } }
SpectralData load_spectral_data(const std::filesystem::path& path);
void save_spectral_data(const std::filesystem::path& path, const SpectralData& data);

void save_spectrum_report(const std::filesystem::path& path, const SpectrumReport& report);

void save_vtable(const std::filesystem::path& path, const VTable& v);

struct GridSpec {
    double re0 = 0.0, re1 = 0.0, im0 = 0.0, im1 = 0.0;
    int nx = 2, ny = 2;
};

// CSV with columns re_lambda, im_lambda, re_c12, im_c12. Pole hits are
// emitted as nan pairs.
void write_c12_grid_csv(const std::filesystem::path& path, const SolutionContext& ctx,
                        const GridSpec& grid);

std::string format_double(double v);  // fixed scientific form used everywhere

}  // namespace specwave
