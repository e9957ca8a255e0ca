#include "polaraut/sc_decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polaraut {

double f_llr(double a, double b) {
    const bool negative = std::signbit(a) != std::signbit(b);
    const double aa = std::fabs(a);
    const double ab = std::fabs(b);
    const double mn = std::min(aa, ab);
    if (std::isinf(aa) || std::isinf(ab))
        return negative ? -mn : mn;
    double val;
    if (mn <= 1.0) {
        // product form: keeps full relative precision when the result is
        // tiny, where the log1p form bottoms out at its absolute-error
        // floor and collapses distinct values onto identical doubles
        val = 2.0 * std::atanh(std::tanh(aa / 2.0) * std::tanh(ab / 2.0));
    } else {
        val = mn + std::log1p(std::exp(-(aa + ab))) - std::log1p(std::exp(-std::fabs(aa - ab)));
    }
    return negative ? -val : val;
}

double f_llr_minsum(double a, double b) {
    const bool negative = std::signbit(a) != std::signbit(b);
    const double mn = std::min(std::fabs(a), std::fabs(b));
    return negative ? -mn : mn;
}

double g_llr(int u, double a, double b) {
    const double t = (u & 1) ? -a : a;
    if (std::isinf(t) && std::isinf(b) && std::signbit(t) != std::signbit(b))
        throw std::domain_error("g_llr: opposing infinite LLRs");
    return t + b;
}

NodeClass classify_node(const InfoSet& info) {
    const std::uint64_t n = info.n();
    const std::uint32_t ones = static_cast<std::uint32_t>(n - 1);
    if (info.empty())
        return NodeClass::Rate0;
    if (info.size() == n)
        return NodeClass::Rate1;
    if (info.size() == n - 1 && !info.contains(ones))
        return NodeClass::Spc;  // only the all-ones index (z = 0) frozen
    if (info.size() == 1 && info.contains(0))
        return NodeClass::Rep;  // only the all-zero index (z = n-1) informative
    return NodeClass::Other;
}

ScDecoder::ScDecoder(PolarCode code, DecoderFlavor flavor) : code_(std::move(code)), flavor_(flavor) {
    scratch_.resize(static_cast<std::size_t>(code_.m()));
    for (int k = 0; k < code_.m(); ++k)
        scratch_[static_cast<std::size_t>(k)].resize(1ull << k);
    message_.resize(code_.n());
    frozen_prefix_.resize(code_.n() + 1, 0);
    for (std::uint64_t z = 0; z < code_.n(); ++z)
        frozen_prefix_[z + 1] = frozen_prefix_[z] + (code_.is_frozen_z(z) ? 1 : 0);
}

std::uint64_t ScDecoder::frozen_in(std::uint64_t begin, std::uint64_t end) const {
    return frozen_prefix_[end] - frozen_prefix_[begin];
}

// Index of the last frozen position in [begin, end); requires one to exist.
std::uint64_t ScDecoder::last_frozen(std::uint64_t begin, std::uint64_t end) const {
    const std::uint64_t target = frozen_prefix_[end];
    auto it = std::lower_bound(frozen_prefix_.begin() + static_cast<std::ptrdiff_t>(begin),
                               frozen_prefix_.begin() + static_cast<std::ptrdiff_t>(end) + 1, target);
    return static_cast<std::uint64_t>(it - frozen_prefix_.begin()) - 1;
}

DecodeResult ScDecoder::decode(std::span<const double> llr) {
    if (llr.size() != code_.n())
        throw std::invalid_argument("ScDecoder::decode: LLR vector length mismatch");
    DecodeResult out;
    out.codeword.assign(code_.n(), 0);
    std::fill(message_.begin(), message_.end(), 0);
    if (retain_)
        stages_.assign(static_cast<std::size_t>(code_.m()) + 1, std::vector<std::uint8_t>(code_.n(), 0));
    decode_rec(code_.m(), 0, llr.data(), out.codeword.data());
    out.message = message_;
    if (retain_) {
        out.stages = std::move(stages_);
        stages_.clear();
    }
    return out;
}

// Leaf decisions of a decided block are the block codeword pushed back
// through the transform (which is an involution); intermediate stages fall
// out of the same sweep.
void ScDecoder::unroll_block(int level, std::uint64_t offset, const std::uint8_t* cw) {
    const std::uint64_t size = 1ull << level;
    std::copy(cw, cw + size, message_.begin() + static_cast<std::ptrdiff_t>(offset));
    if (retain_)
        std::copy(cw, cw + size, stages_[static_cast<std::size_t>(level)].begin() + static_cast<std::ptrdiff_t>(offset));
    for (int t = level - 1; t >= 0; --t) {
        const std::uint64_t h = 1ull << t;
        for (std::uint64_t block = 0; block < size; block += 2 * h)
            for (std::uint64_t j = 0; j < h; ++j)
                message_[offset + block + j] =
                    message_[offset + block + j] ^ message_[offset + block + j + h];
        if (retain_)
            std::copy(message_.begin() + static_cast<std::ptrdiff_t>(offset),
                      message_.begin() + static_cast<std::ptrdiff_t>(offset + size),
                      stages_[static_cast<std::size_t>(t)].begin() + static_cast<std::ptrdiff_t>(offset));
    }
}

void ScDecoder::decode_rec(int level, std::uint64_t offset, const double* llr, std::uint8_t* cw) {
    const std::uint64_t size = 1ull << level;
    const std::uint64_t frozen = frozen_in(offset, offset + size);

    if (frozen == size) {
        std::fill(cw, cw + size, 0);
        unroll_block(level, offset, cw);
        return;
    }
    if (frozen == 0) {
        for (std::uint64_t i = 0; i < size; ++i)
            cw[i] = (llr[i] >= 0.0) ? 0 : 1;
        unroll_block(level, offset, cw);
        return;
    }
    if (frozen == size - 1 && !code_.is_frozen_z(offset + size - 1)) {
        // repetition block: one information bit, decided on the total evidence
        double acc = 0;
        bool pos_inf = false, neg_inf = false;
        for (std::uint64_t i = 0; i < size; ++i) {
            if (std::isinf(llr[i]))
                (llr[i] > 0 ? pos_inf : neg_inf) = true;
            else
                acc += llr[i];
        }
        if (pos_inf && neg_inf)
            throw std::domain_error("ScDecoder: opposing certainties in a repetition block");
        const std::uint8_t bit = pos_inf ? 0 : (neg_inf ? 1 : (acc >= 0.0 ? 0 : 1));
        std::fill(cw, cw + size, bit);
        unroll_block(level, offset, cw);
        return;
    }

    // Largest t such that every frozen position sits in the leading
    // 2^(level-t) block. For t >= 2 the node factors into an inner code on
    // that block plus one parity constraint per interleaved cross-section,
    // and each cross-section is decided by its maximum-likelihood rule:
    // per-position signs, then a parity-restoring flip of the least reliable
    // entry. (t = level is the plain single-parity-check block.) Decoding
    // these sections sequentially instead would not commute with the
    // automorphisms the invariant-group machinery certifies.
    const std::uint64_t max_rel = last_frozen(offset, offset + size) - offset;
    const int t = level - std::bit_width(max_rel);
    if (t >= 2) {
        const std::uint64_t inner_size = size >> t;
        double* fold = scratch_[static_cast<std::size_t>(level - 1)].data();
        {
            std::uint64_t width = size / 2;
            if (flavor_ == DecoderFlavor::exact) {
                for (std::uint64_t i = 0; i < width; ++i)
                    fold[i] = f_llr(llr[i], llr[i + width]);
            } else {
                for (std::uint64_t i = 0; i < width; ++i)
                    fold[i] = f_llr_minsum(llr[i], llr[i + width]);
            }
            while (width > inner_size) {
                width /= 2;
                if (flavor_ == DecoderFlavor::exact) {
                    for (std::uint64_t i = 0; i < width; ++i)
                        fold[i] = f_llr(fold[i], fold[i + width]);
                } else {
                    for (std::uint64_t i = 0; i < width; ++i)
                        fold[i] = f_llr_minsum(fold[i], fold[i + width]);
                }
            }
        }
        decode_rec(level - t, offset, fold, cw);
        std::vector<std::uint8_t> parity(cw, cw + inner_size);
        for (std::uint64_t j = 0; j < inner_size; ++j) {
            std::uint8_t par = parity[j];
            std::uint64_t weakest = 0;
            double weakest_mag = std::numeric_limits<double>::infinity();
            int weakest_count = 0;
            for (std::uint64_t r = 0; r < (size >> (level - t)); ++r) {
                const std::uint64_t pos = j + (r << (level - t));
                cw[pos] = (llr[pos] >= 0.0) ? 0 : 1;
                par ^= cw[pos];
                const double mag = std::fabs(llr[pos]);
                if (mag < weakest_mag) {
                    weakest_mag = mag;
                    weakest = pos;
                    weakest_count = 1;
                } else if (mag == weakest_mag) {
                    ++weakest_count;
                }
            }
            if (par) {
                if (std::isinf(weakest_mag))
                    throw std::domain_error("ScDecoder: parity conflict among certainties");
                if (strict_ties_ && weakest_count > 1)
                    throw std::domain_error("ScDecoder: ambiguous parity flip (tied magnitudes)");
                cw[weakest] ^= 1;
            }
        }
        unroll_block(level, offset, cw);
        return;
    }

    const std::uint64_t half = size / 2;
    double* child = scratch_[static_cast<std::size_t>(level - 1)].data();
    if (flavor_ == DecoderFlavor::exact) {
        for (std::uint64_t i = 0; i < half; ++i)
            child[i] = f_llr(llr[i], llr[i + half]);
    } else {
        for (std::uint64_t i = 0; i < half; ++i)
            child[i] = f_llr_minsum(llr[i], llr[i + half]);
    }
    decode_rec(level - 1, offset, child, cw);
    for (std::uint64_t i = 0; i < half; ++i)
        child[i] = g_llr(cw[i], llr[i], llr[i + half]);
    decode_rec(level - 1, offset + half, child, cw + half);
    for (std::uint64_t i = 0; i < half; ++i)
        cw[i] ^= cw[i + half];
    if (retain_)
        std::copy(cw, cw + size,
                  stages_[static_cast<std::size_t>(level)].begin() + static_cast<std::ptrdiff_t>(offset));
}

}  // namespace polaraut
