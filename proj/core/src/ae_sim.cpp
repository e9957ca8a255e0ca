#include "polaraut/ae_sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

namespace polaraut {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) {
    // splitmix64 over a simple counter-mode composition
    std::uint64_t x = master ^ (stream * 0xA24BAED4963EE407ull) ^ (counter * 0x9FB21C651E98DF25ull);
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::vector<double> awgn_llr(std::span<const std::uint8_t> codeword, double ebn0_db, double rate,
                             std::mt19937_64& rng) {
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("awgn_llr: rate must be in (0, 1]");
    const double variance = 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
    const double sigma = std::sqrt(variance);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> llr(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const double bpsk = codeword[i] ? -1.0 : 1.0;
        llr[i] = 2.0 * (bpsk + sigma * gauss(rng)) / variance;
    }
    return llr;
}

namespace {

double correlation_metric(std::span<const std::uint8_t> candidate, std::span<const double> llr) {
    double acc = 0;
    bool pos_inf = false;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        const double term = (candidate[i] ? -1.0 : 1.0) * llr[i];
        if (std::isinf(term)) {
            if (term < 0)
                return -std::numeric_limits<double>::infinity();
            pos_inf = true;
        } else {
            acc += term;
        }
    }
    return pos_inf ? std::numeric_limits<double>::infinity() : acc;
}

std::vector<std::uint8_t> ae_decode_with(ScDecoder& decoder, std::span<const AffineAutomorphism> ensemble,
                                         std::span<const double> llr) {
    std::vector<std::uint8_t> best;
    double best_metric = -std::numeric_limits<double>::infinity();
    bool first = true;
    for (const AffineAutomorphism& aut : ensemble) {
        const auto permuted = apply_perm(aut.perm, llr);
        const auto decoded = decoder.decode(permuted).codeword;
        auto candidate = apply_perm(aut.perm.inverse(), std::span<const std::uint8_t>(decoded));
        const double metric = correlation_metric(candidate, llr);
        if (first || metric > best_metric) {
            best = std::move(candidate);
            best_metric = metric;
            first = false;
        }
    }
    return best;
}

int worker_count() {
    if (const char* env = std::getenv("POLAR_AUTOMORPH_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1)
            return std::min(v, 256);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

std::vector<AffineAutomorphism> build_ensemble(const PolarCode& code, std::uint32_t t, EnsembleMode mode,
                                               std::uint64_t seed) {
    const InfoSet& info = code.info();
    std::vector<AffineAutomorphism> out;
    std::mt19937_64 rng(mix_seed(seed, 0xE25E, 0));
    if (t == 1) {
        out.push_back(make_automorphism(AffineMap::identity(info.m()), info));
        return out;
    }
    switch (mode) {
        case EnsembleMode::distinct_classes: {
            for (const AffineMap& map : sample_ensemble(info, t, rng))
                out.push_back(make_automorphism(map, info));
            break;
        }
        case EnsembleMode::invariant_only: {
            const BlockStructure inv = dec_group(info);
            out.push_back(make_automorphism(AffineMap::identity(info.m()), info));
            while (out.size() < t)
                out.push_back(make_automorphism(sample_blta(inv, rng), info));
            break;
        }
        case EnsembleMode::stage_permutations_off: {
            const BlockStructure aut = automorphism_group(info);
            out.push_back(make_automorphism(AffineMap::identity(info.m()), info));
            while (out.size() < t)
                out.push_back(make_automorphism(sample_blta(aut, rng), info));
            break;
        }
    }
    return out;
}

std::vector<std::uint8_t> ae_decode(const PolarCode& code, std::span<const AffineAutomorphism> ensemble,
                                    std::span<const double> llr, DecoderFlavor flavor) {
    if (ensemble.empty())
        throw std::invalid_argument("ae_decode: ensemble is empty");
    for (const AffineAutomorphism& aut : ensemble)
        if (aut.m != code.m())
            throw std::invalid_argument("ae_decode: ensemble entry dimension mismatch");
    ScDecoder decoder(code, flavor);
    return ae_decode_with(decoder, ensemble, llr);
}

std::string to_string(EnsembleMode mode) {
    switch (mode) {
        case EnsembleMode::distinct_classes: return "distinct_classes";
        case EnsembleMode::invariant_only: return "invariant_only";
        case EnsembleMode::stage_permutations_off: return "stage_permutations_off";
    }
    return "?";
}

EnsembleMode ensemble_mode_from_string(const std::string& name) {
    if (name == "distinct_classes")
        return EnsembleMode::distinct_classes;
    if (name == "invariant_only")
        return EnsembleMode::invariant_only;
    if (name == "stage_permutations_off")
        return EnsembleMode::stage_permutations_off;
    throw std::invalid_argument("unknown ensemble mode: " + name);
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t frames) {
    if (frames == 0)
        return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(frames);
    const double p = static_cast<double>(errors) / n;
    const double z2n = z * z / n;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    const double lo = (errors == 0) ? 0.0 : std::max(0.0, center - half);
    const double hi = (errors == frames) ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

SimReport run_bler(const SimConfig& cfg) {
    if (cfg.t < 1)
        throw std::invalid_argument("run_bler: ensemble size must be at least 1");
    if (cfg.max_frames < 1)
        throw std::invalid_argument("run_bler: max_frames must be at least 1");
    if (cfg.ebn0_db.empty())
        throw std::invalid_argument("run_bler: SNR grid is empty");

    const auto t0 = std::chrono::steady_clock::now();
    const auto ensemble = build_ensemble(cfg.code, cfg.t, cfg.mode, cfg.seed);
    const double rate = static_cast<double>(cfg.code.k()) / static_cast<double>(cfg.code.n());
    const int workers = worker_count();
    constexpr std::uint64_t kChunk = 256;  // aggregation granularity, fixed for determinism

    SimReport report;
    report.t = cfg.t;
    report.mode = cfg.mode;
    report.seed = cfg.seed;
    const EquivClassSummary classes = count_classes(cfg.code.info());
    report.aut_structure = classes.aut_structure.to_string();
    report.inv_structure = classes.inv_structure.to_string();
    report.class_count = classes.class_count.to_string();

    for (std::size_t snr_idx = 0; snr_idx < cfg.ebn0_db.size(); ++snr_idx) {
        const double ebn0 = cfg.ebn0_db[snr_idx];
        std::uint64_t frames = 0;
        std::uint64_t errors = 0;
        while (frames < cfg.max_frames && errors < cfg.max_errors) {
            const std::uint64_t chunk = std::min(kChunk, cfg.max_frames - frames);
            const std::uint64_t begin = frames;
            std::vector<std::future<std::uint64_t>> futures;
            const std::uint64_t per = (chunk + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
            for (int w = 0; w < workers; ++w) {
                const std::uint64_t lo = begin + static_cast<std::uint64_t>(w) * per;
                const std::uint64_t hi = std::min(begin + chunk, lo + per);
                if (lo >= hi)
                    break;
                futures.push_back(std::async(std::launch::async, [&, lo, hi, snr_idx, ebn0] {
                    ScDecoder decoder(cfg.code, cfg.flavor);
                    std::vector<std::uint8_t> message(cfg.code.k());
                    std::uint64_t local_errors = 0;
                    for (std::uint64_t frame = lo; frame < hi; ++frame) {
                        std::mt19937_64 rng(mix_seed(cfg.seed, snr_idx + 1, frame));
                        for (auto& bit : message)
                            bit = static_cast<std::uint8_t>(rng() & 1u);
                        const auto codeword = encode(cfg.code, message);
                        const auto llr = awgn_llr(codeword, ebn0, rate, rng);
                        const auto decoded = (cfg.t == 1)
                                                 ? decoder.decode(llr).codeword
                                                 : ae_decode_with(decoder, ensemble, llr);
                        if (decoded != codeword)
                            ++local_errors;
                    }
                    return local_errors;
                }));
            }
            for (auto& f : futures)
                errors += f.get();
            frames += chunk;
        }
        SnrRecord rec;
        rec.ebn0_db = ebn0;
        rec.frames = frames;
        rec.errors = errors;
        rec.bler = frames ? static_cast<double>(errors) / static_cast<double>(frames) : 0.0;
        std::tie(rec.ci_lo, rec.ci_hi) = wilson_interval(errors, frames);
        report.points.push_back(rec);
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace polaraut
