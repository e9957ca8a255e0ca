// File formats: the matrix/affine text format, code specification JSON,
// simulation configuration JSON, and report serialization.
//
// Matrix text format: first line the dimension m, then m lines of m
// characters in {0,1}, row-major, column 1 leftmost. An affine map appends
// one more line of m characters for the shift vector.

#pragma once

#include "polaraut/ae_sim.hpp"
#include "polaraut/gf2.hpp"
#include "polaraut/monomial.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace polaraut {

std::string format_matrix(const Gf2Matrix& mat);
Gf2Matrix parse_matrix(std::istream& in);
Gf2Matrix parse_matrix_file(const std::string& path);

std::string format_affine(const AffineMap& map);
// Shift line optional; absent means zero shift.
AffineMap parse_affine(std::istream& in);
AffineMap parse_affine_file(const std::string& path);

// Code specification JSON: field "m" plus exactly one of
//   "i_min_z":  [z labels]   minimal generators, closed downward
//   "info_z":   [z labels]   explicit information set
//   "bec":      {"erasure": p, "k": K}
struct CodeSpec {
    int m = 0;
    InfoSet info;
    std::optional<std::vector<std::uint64_t>> i_min_z;  // echoed when given
};

CodeSpec parse_code_spec(const std::string& json_text);
CodeSpec load_code_spec(const std::string& path);

// Simulation configuration JSON: {"code": {...} | "code_file": path,
//  "t", "mode", "ebn0_db": [...], "max_frames", "max_errors", "seed",
//  "decoder": "exact"|"minsum"}. Unspecified fields keep their defaults.
SimConfig parse_sim_config(const std::string& json_text, const std::string& base_dir = "");
SimConfig load_sim_config(const std::string& path);

std::string report_to_json(const SimReport& report);
// Columns: ebn0_db, frames, errors, bler, ci_lo, ci_hi, mode, t.
std::string report_to_csv(const SimReport& report);

std::string permutation_to_json(const Permutation& p);

}  // namespace polaraut
