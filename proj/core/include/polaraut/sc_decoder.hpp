// Successive cancellation decoding over the polar factor graph.
//
// The recursion applies the f/g combining rules until it reaches a block it
// can decide by a maximum-likelihood rule: Rate-0 (all zero), Rate-1
// (per-position signs), repetition (total-evidence sign), and, more
// generally, any block whose frozen positions all sit in its leading
// all-f-path sub-block. The latter factors into an inner code plus one
// parity constraint per interleaved cross-section; each cross-section is
// decided by signs plus a parity-restoring flip of its least reliable entry
// (the single-parity-check rule being the length-1-inner special case). On
// these blocks the decoder coincides with ML decoding and is therefore
// equivariant under block-preserving permutations, which is what makes the
// invariant-group machinery exact.
//
// LLR values are extended reals: +/-inf are first-class (exact limits of the
// combining rules), NaN is outside the contract. The hard-decision rule is
// L >= 0 -> 0, including the tie at exactly zero.

#pragma once

#include "polaraut/monomial.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace polaraut {

enum class DecoderFlavor {
    exact,    // boxplus with exact limit behaviour
    min_sum,  // sign/min approximation, for simulation speed only
};

// Exact boxplus: sign(a)sign(b) * (min|.| + log1p corrections); f(+-inf, x)
// is +-x, f(0, x) = 0.
double f_llr(double a, double b);
double f_llr_minsum(double a, double b);
// (-1)^u * a + b; opposing infinities are a contract violation and throw
// std::domain_error.
double g_llr(int u, double a, double b);

enum class NodeClass { Rate0, Rate1, Rep, Spc, Other };
NodeClass classify_node(const InfoSet& info);

struct DecodeResult {
    std::vector<std::uint8_t> codeword;  // stage-m bits, indexed by position z
    std::vector<std::uint8_t> message;   // stage-0 decisions, frozen positions zero
    // Per-stage hard decisions, stages[t][z], only when requested.
    std::vector<std::vector<std::uint8_t>> stages;
};

// One decoder instance per concurrent caller; instances hold scratch buffers
// and are cheap to construct.
class ScDecoder {
public:
    explicit ScDecoder(PolarCode code, DecoderFlavor flavor = DecoderFlavor::exact);

    const PolarCode& code() const { return code_; }
    void retain_stages(bool on) { retain_ = on; }
    // When set, an exactly tied parity-flip argmin throws std::domain_error
    // instead of picking the lowest index. The lowest-index rule is
    // deterministic but label-dependent, so equivariance checks must not
    // silently rely on it; channel inputs never tie in practice.
    void strict_ties(bool on) { strict_ties_ = on; }

    DecodeResult decode(std::span<const double> llr);

private:
    std::uint64_t frozen_in(std::uint64_t begin, std::uint64_t end) const;
    std::uint64_t last_frozen(std::uint64_t begin, std::uint64_t end) const;
    void decode_rec(int level, std::uint64_t offset, const double* llr, std::uint8_t* cw);
    void unroll_block(int level, std::uint64_t offset, const std::uint8_t* cw);

    PolarCode code_;
    DecoderFlavor flavor_;
    bool retain_ = false;
    bool strict_ties_ = false;
    std::vector<std::vector<double>> scratch_;  // scratch_[k] holds 2^k LLRs
    std::vector<std::uint8_t> message_;
    std::vector<std::uint64_t> frozen_prefix_;
    std::vector<std::vector<std::uint8_t>> stages_;
};

}  // namespace polaraut
