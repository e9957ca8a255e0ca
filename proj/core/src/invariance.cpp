#include "polaraut/invariance.hpp"

#include "polaraut/sc_decoder.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <stdexcept>

namespace polaraut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint32_t top_mask(int m, int width) {
    const std::uint32_t full = (m >= 32) ? 0xFFFFFFFFu : ((1u << m) - 1u);
    const int low = m - width;
    const std::uint32_t lowm = (low >= 32) ? 0xFFFFFFFFu : ((1u << low) - 1u);
    return full & ~lowm;
}

// All frozen indices lie in the all-ones constraint block iff every index
// outside that block is informative.
bool frozen_in_first_block(const InfoSet& info, std::uint32_t top) {
    std::uint64_t inside = 0;
    for (std::uint32_t a : info.members())
        if ((a & top) == top)
            ++inside;
    const std::uint64_t outside_positions = info.n() - (info.n() >> std::popcount(top));
    return info.size() - inside == outside_positions;
}

bool info_in_last_block(const InfoSet& info, std::uint32_t top) {
    for (std::uint32_t a : info.members())
        if ((a & top) != 0)
            return false;
    return true;
}

InfoSet restrict_top(const InfoSet& info, int width, int bit) {
    IndexConstraint c;
    for (int i = info.m() - width + 1; i <= info.m(); ++i)
        c.fixed.emplace_back(i, bit);
    return subcode_info(info, c);
}

struct DecAutCtx {
    std::vector<TraceEntry>* trace;
    // Keyed by (blocks kept, info members): both half branches of nested
    // splits revisit the same subcodes on structured codes.
    std::map<std::pair<int, std::vector<std::uint32_t>>, bool> memo;
};

bool dec_aut_rec(const std::vector<int>& sizes, int blocks, const InfoSet& info, int depth, DecAutCtx& ctx) {
    const int m = info.m();
    const int last = sizes[static_cast<std::size_t>(blocks - 1)];
    const std::uint32_t top = top_mask(m, last);

    const std::size_t slot = ctx.trace->size();
    {
        TraceEntry entry;
        entry.depth = depth;
        entry.structure.assign(sizes.begin(), sizes.begin() + blocks);
        entry.subcode_z = info.z_labels();
        ctx.trace->push_back(std::move(entry));
    }

    auto key = std::make_pair(blocks, info.members());
    auto memo_it = ctx.memo.find(key);
    bool value = false;
    std::string branch;

    if (blocks == 1) {
        branch = "base";
        value = frozen_in_first_block(info, top) || info_in_last_block(info, top);
    } else if (last == 1) {
        branch = "halves";
        if (memo_it != ctx.memo.end()) {
            value = memo_it->second;
        } else {
            const bool a1 = dec_aut_rec(sizes, blocks - 1, restrict_top(info, 1, 1), depth + 1, ctx);
            const bool a2 = dec_aut_rec(sizes, blocks - 1, restrict_top(info, 1, 0), depth + 1, ctx);
            value = a1 && a2;
        }
    } else if (frozen_in_first_block(info, top)) {
        branch = "first_block";
        if (memo_it != ctx.memo.end())
            value = memo_it->second;
        else
            value = dec_aut_rec(sizes, blocks - 1, restrict_top(info, last, 1), depth + 1, ctx);
    } else if (info_in_last_block(info, top)) {
        branch = "last_block";
        if (memo_it != ctx.memo.end())
            value = memo_it->second;
        else
            value = dec_aut_rec(sizes, blocks - 1, restrict_top(info, last, 0), depth + 1, ctx);
    } else {
        branch = "none";
        value = false;
    }

    ctx.memo.emplace(std::move(key), value);
    (*ctx.trace)[slot].branch = std::move(branch);
    (*ctx.trace)[slot].verdict = value;
    return value;
}

}  // namespace

InvarianceVerdict dec_aut(const BlockStructure& s, const InfoSet& info) {
    if (s.m() != info.m())
        throw std::invalid_argument("dec_aut: structure and information set dimensions differ");
    if (!is_decreasing(info))
        throw std::invalid_argument("dec_aut: information set is not decreasing");
    InvarianceVerdict out;
    if (s.m() == 0) {
        out.value = true;
        return out;
    }
    DecAutCtx ctx{&out.trace, {}};
    out.value = dec_aut_rec(s.sizes(), s.blocks(), info, 0, ctx);
    return out;
}

bool sc_invariant(const Gf2Matrix& mat, const InfoSet& info) {
    if (!is_automorphism(mat, info))
        throw std::invalid_argument("sc_invariant: matrix is not an automorphism of the code");
    return dec_aut(block_structure(mat), info).value;
}

namespace {

std::vector<int> dec_group_rec(const InfoSet& info,
                               std::map<std::pair<int, std::vector<std::uint32_t>>, std::vector<int>>& memo) {
    const int m = info.m();
    if (m == 0)
        return {};
    auto key = std::make_pair(m, info.members());
    if (auto it = memo.find(key); it != memo.end())
        return it->second;

    std::vector<int> result;
    bool done = false;
    for (int t = m; t >= 2 && !done; --t) {
        const std::uint32_t top = top_mask(m, t);
        if (frozen_in_first_block(info, top)) {
            result = dec_group_rec(restrict_top(info, t, 1), memo);
            result.push_back(t);
            done = true;
        } else if (info_in_last_block(info, top)) {
            result = dec_group_rec(restrict_top(info, t, 0), memo);
            result.push_back(t);
            done = true;
        }
    }
    if (!done) {
        std::vector<int> upper = dec_group_rec(restrict_top(info, 1, 1), memo);
        upper.push_back(1);
        std::vector<int> lower = dec_group_rec(restrict_top(info, 1, 0), memo);
        lower.push_back(1);
        result = gro(BlockStructure(std::move(upper)), BlockStructure(std::move(lower))).sizes();
    }
    memo.emplace(std::move(key), result);
    return result;
}

}  // namespace

BlockStructure dec_group(const InfoSet& info) {
    if (!is_decreasing(info))
        throw std::invalid_argument("dec_group: information set is not decreasing");
    std::map<std::pair<int, std::vector<std::uint32_t>>, std::vector<int>> memo;
    return BlockStructure(dec_group_rec(info, memo));
}

std::vector<std::vector<double>> structured_probes(int m, int fills_per_pattern, int max_depth,
                                                   double epsilon, std::mt19937_64& rng) {
    if (m < 1)
        return {};
    const std::uint64_t n = 1ull << m;
    // Full nesting depth for small codes; for larger ones the pattern count
    // grows as 4^depth, so the default stops at five levels.
    const int depth_cap = (max_depth < 0) ? std::min(m - 1, 5) : std::min(max_depth, m - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // A pattern is a nesting of constraint moves. Each move fixes the top or
    // bottom free coordinate and pads the excluded half with +inf (when the
    // kept half carries the constraint value 1) or epsilon (value 0); the
    // padding keeps the inner subproblem's decode behaviour visible at the
    // outer level.
    struct Move {
        bool top;  // else bottom coordinate
        int bit;
    };
    std::vector<std::vector<Move>> patterns{{}};
    std::vector<std::vector<Move>> frontier{{}};
    for (int d = 0; d < depth_cap; ++d) {
        std::vector<std::vector<Move>> next;
        for (const auto& p : frontier)
            for (bool top : {true, false})
                for (int bit : {1, 0}) {
                    auto q = p;
                    q.push_back(Move{top, bit});
                    next.push_back(q);
                }
        patterns.insert(patterns.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    // The small paddings are jittered around epsilon so no two positions tie
    // exactly; exact ties would make the parity-flip position of an SPC
    // block label-dependent and fake a non-commutation.
    std::uniform_real_distribution<double> jitter(0.5, 1.0);
    std::vector<std::vector<double>> probes;
    probes.reserve(patterns.size() * static_cast<std::size_t>(fills_per_pattern));
    for (const auto& pattern : patterns) {
        for (int fill = 0; fill < fills_per_pattern; ++fill) {
            std::vector<double> y(n);
            for (std::uint64_t z = 0; z < n; ++z) {
                const std::uint32_t a = z_to_a(z, m);
                int lo = 0;
                int hi = m - 1;  // free coordinate range, 0-based
                bool is_inf = false, is_eps = false;
                for (const Move& mv : pattern) {
                    const int coord = mv.top ? hi : lo;
                    const int bit = static_cast<int>((a >> coord) & 1u);
                    if (bit != mv.bit) {
                        (mv.bit ? is_inf : is_eps) = true;
                        break;
                    }
                    if (mv.top)
                        --hi;
                    else
                        ++lo;
                }
                y[z] = is_inf ? kInf : (is_eps ? epsilon * jitter(rng) : gauss(rng));
            }
            probes.push_back(std::move(y));
        }
    }
    return probes;
}

OracleResult commute_oracle(const Gf2Matrix& mat, std::uint32_t shift, const InfoSet& info,
                            const OracleConfig& cfg, std::mt19937_64& rng) {
    AffineMap map(mat, shift);
    AffineAutomorphism aut = make_automorphism(map, info);
    ScDecoder decoder{PolarCode(info)};
    decoder.strict_ties(true);  // tied parity flips are not evaluable evidence
    const std::uint64_t n = info.n();
    std::normal_distribution<double> gauss(0.0, 1.0);

    OracleResult out;
    auto mismatch = [&](const std::vector<double>& y) -> bool {
        const auto permuted = apply_perm(aut.perm, std::span<const double>(y));
        const auto direct = decoder.decode(y).codeword;
        const auto via_perm = decoder.decode(permuted).codeword;
        return via_perm != apply_perm(aut.perm, std::span<const std::uint8_t>(direct));
    };
    // A mismatch that vanishes under infinitesimal jitter is a decision tie,
    // not a witness: infinite paddings copy finite values exactly through f,
    // which can put duplicate magnitudes at a parity-flip argmin. Genuine
    // counterexamples sit in the interior of a decision cell and survive.
    auto confirm = [&](const std::vector<double>& y) -> std::optional<std::vector<double>> {
        std::normal_distribution<double> noise(0.0, 1e-9);
        for (int attempt = 0; attempt < 3; ++attempt) {
            std::vector<double> jittered = y;
            for (auto& v : jittered)
                if (!std::isinf(v))
                    v += noise(rng);
            try {
                if (mismatch(jittered))
                    return jittered;
            } catch (const std::domain_error&) {
            }
        }
        return std::nullopt;
    };
    auto run_probe = [&](const std::vector<double>& y) -> std::optional<std::vector<double>> {
        ++out.probes;
        try {
            if (!mismatch(y))
                return std::nullopt;
        } catch (const std::domain_error&) {
            ++out.skipped;  // opposing infinities: probe not evaluable
            return std::nullopt;
        }
        auto witness = confirm(y);
        if (!witness)
            ++out.ties;
        return witness;
    };

    std::vector<double> y(n);
    for (int trial = 0; trial < cfg.gaussian_trials; ++trial) {
        for (std::uint64_t i = 0; i < n; ++i)
            y[i] = gauss(rng);
        if (auto witness = run_probe(y)) {
            out.commutes = false;
            out.counterexample = std::move(*witness);
            return out;
        }
    }
    for (const auto& probe : structured_probes(info.m(), cfg.structured_fills, cfg.max_depth, cfg.epsilon, rng)) {
        if (auto witness = run_probe(probe)) {
            out.commutes = false;
            out.counterexample = std::move(*witness);
            return out;
        }
    }
    return out;
}

namespace {

bool equivalent_given_group(const AffineMap& t1, const AffineMap& t2, const BlockStructure& inv) {
    return is_member_blta(mat_mul(t2.matrix, mat_inv(t1.matrix)), inv);
}

}  // namespace

bool equivalent(const AffineMap& t1, const AffineMap& t2, const InfoSet& info) {
    if (!is_automorphism(t1.matrix, info) || !is_automorphism(t2.matrix, info))
        throw std::invalid_argument("equivalent: both maps must be automorphisms of the code");
    return equivalent_given_group(t1, t2, dec_group(info));
}

FactoredCount class_count_for(const BlockStructure& aut, const BlockStructure& inv) {
    return factored_div(blta_order(aut), blta_order(inv));
}

EquivClassSummary count_classes(const InfoSet& info) {
    EquivClassSummary out;
    out.aut_structure = automorphism_group(info);
    out.inv_structure = dec_group(info);
    out.class_count = class_count_for(out.aut_structure, out.inv_structure);
    return out;
}

std::vector<AffineMap> sample_ensemble(const InfoSet& info, std::uint64_t t, std::mt19937_64& rng) {
    const BlockStructure aut = automorphism_group(info);
    const BlockStructure inv = dec_group(info);
    if (auto classes = class_count_for(aut, inv).exact(); classes && t > *classes)
        throw std::invalid_argument("sample_ensemble: requested more automorphisms than equivalence classes");

    std::vector<AffineMap> out;
    if (t == 0)
        return out;
    out.push_back(AffineMap::identity(info.m()));
    while (out.size() < t) {
        AffineMap cand = sample_blta(aut, rng);
        bool fresh = true;
        for (const AffineMap& chosen : out)
            if (equivalent_given_group(chosen, cand, inv)) {
                fresh = false;
                break;
            }
        if (fresh)
            out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace polaraut
