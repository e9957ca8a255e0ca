// BPSK/AWGN front end, automorphism-ensemble SC decoding, and Monte-Carlo
// block-error-rate estimation.

#pragma once

#include "polaraut/automorphism.hpp"
#include "polaraut/invariance.hpp"
#include "polaraut/monomial.hpp"
#include "polaraut/sc_decoder.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace polaraut {

// BPSK maps 0 -> +1, 1 -> -1; noise variance 1/(2 * rate * 10^(ebn0/10));
// LLR = 2 * received / variance.
std::vector<double> awgn_llr(std::span<const std::uint8_t> codeword, double ebn0_db, double rate,
                             std::mt19937_64& rng);

// Decodes every permuted image, inverse-permutes the candidates, and keeps
// the one with the largest LLR correlation sum (1-2x_i) * y_i — the
// noise-variance-free form of the minimum-Euclidean-distance rule. Ties go
// to the lowest ensemble index.
std::vector<std::uint8_t> ae_decode(const PolarCode& code, std::span<const AffineAutomorphism> ensemble,
                                    std::span<const double> llr, DecoderFlavor flavor = DecoderFlavor::exact);

enum class EnsembleMode {
    distinct_classes,        // pairwise non-equivalent automorphisms
    invariant_only,          // SC-invariant automorphisms only (AE gains nothing)
    stage_permutations_off,  // unfiltered samples from the full automorphism group
};

std::string to_string(EnsembleMode mode);
EnsembleMode ensemble_mode_from_string(const std::string& name);

// The ensemble a simulation with this seed would use: the identity alone
// for t = 1, otherwise identity-first draws per the mode.
std::vector<AffineAutomorphism> build_ensemble(const PolarCode& code, std::uint32_t t, EnsembleMode mode,
                                               std::uint64_t seed);

struct SimConfig {
    PolarCode code;
    std::uint32_t t = 1;
    EnsembleMode mode = EnsembleMode::distinct_classes;
    std::vector<double> ebn0_db;
    std::uint64_t max_frames = 10000;
    std::uint64_t max_errors = 100;
    std::uint64_t seed = 1;
    DecoderFlavor flavor = DecoderFlavor::exact;
};

struct SnrRecord {
    double ebn0_db = 0;
    std::uint64_t frames = 0;
    std::uint64_t errors = 0;
    double bler = 0;
    double ci_lo = 0;  // 95% Wilson interval
    double ci_hi = 0;
};

struct SimReport {
    std::uint32_t t = 1;
    EnsembleMode mode = EnsembleMode::distinct_classes;
    std::string aut_structure;
    std::string inv_structure;
    std::string class_count;
    std::uint64_t seed = 0;
    std::vector<SnrRecord> points;
    double wall_seconds = 0;
};

// 95% Wilson score interval for errors/frames; always brackets the estimate.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t frames);

// Per-frame seeds are derived by counter-mode mixing of (master seed, SNR
// index, frame index), and frames are aggregated in fixed-size chunks, so
// the report is bit-identical for any worker count. The worker count comes
// from POLAR_AUTOMORPH_THREADS (default: hardware concurrency).
SimReport run_bler(const SimConfig& cfg);

// Deterministic 64-bit mixer used for per-frame seed derivation.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter);

}  // namespace polaraut
