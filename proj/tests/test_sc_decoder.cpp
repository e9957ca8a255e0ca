#include "polaraut/sc_decoder.hpp"

#include "polaraut/automorphism.hpp"
#include "polaraut/gf2.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

using namespace polaraut;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> gaussian_llrs(std::uint64_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> y(n);
    for (auto& v : y)
        v = gauss(rng);
    return y;
}

std::vector<double> noiseless_llrs(std::span<const std::uint8_t> codeword, double magnitude) {
    std::vector<double> y(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i)
        y[i] = codeword[i] ? -magnitude : magnitude;
    return y;
}

double correlation(std::span<const std::uint8_t> c, std::span<const double> y) {
    double acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        acc += (c[i] ? -1.0 : 1.0) * y[i];
    return acc;
}

// Every codeword of a (small) code, for exhaustive minimum-soft-distance
// comparisons.
std::vector<std::vector<std::uint8_t>> all_codewords(const PolarCode& code) {
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> msg(code.k(), 0);
    const std::uint64_t count = 1ull << code.k();
    out.reserve(count);
    for (std::uint64_t u = 0; u < count; ++u) {
        for (std::size_t i = 0; i < code.k(); ++i)
            msg[i] = static_cast<std::uint8_t>((u >> i) & 1ull);
        out.push_back(encode(code, msg));
    }
    return out;
}

double best_metric(const std::vector<std::vector<std::uint8_t>>& codewords, std::span<const double> y) {
    double best = -kInf;
    for (const auto& c : codewords)
        best = std::max(best, correlation(c, y));
    return best;
}

PolarCode special_code(NodeClass cls, int m) {
    const std::uint64_t n = 1ull << m;
    std::vector<std::uint64_t> zs;
    switch (cls) {
        case NodeClass::Rate0:
            break;
        case NodeClass::Rate1:
            for (std::uint64_t z = 0; z < n; ++z)
                zs.push_back(z);
            break;
        case NodeClass::Rep:
            zs.push_back(n - 1);
            break;
        case NodeClass::Spc:
            for (std::uint64_t z = 1; z < n; ++z)
                zs.push_back(z);
            break;
        case NodeClass::Other:
            break;
    }
    return PolarCode(InfoSet::from_z_labels(m, zs));
}

}  // namespace

TEST_CASE("f_llr") {
    CHECK(f_llr(0.0, 7.3) == 0.0);
    CHECK(f_llr(kInf, 2.5) == 2.5);
    CHECK(f_llr(-kInf, 2.5) == -2.5);
    CHECK(f_llr(kInf, -2.5) == -2.5);
    CHECK(f_llr(kInf, kInf) == kInf);
    CHECK(f_llr(-kInf, kInf) == -kInf);

    // direct evaluation of log((e^(a+b)+1)/(e^a+e^b))
    auto reference = [](double a, double b) {
        return std::log((std::exp(a + b) + 1.0) / (std::exp(a) + std::exp(b)));
    };
    CHECK(f_llr(2.0, 3.0) == doctest::Approx(reference(2.0, 3.0)).epsilon(1e-12));
    CHECK(f_llr(2.0, 3.0) == doctest::Approx(1.693453660971).epsilon(1e-9));
    std::mt19937_64 rng(71);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = gauss(rng);
        const double b = gauss(rng);
        CHECK(f_llr(a, b) == doctest::Approx(reference(a, b)).epsilon(1e-10));
        // large finite magnitudes approach the infinite-input limit
        CHECK(f_llr(1e9, a) == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("f_llr_minsum") {
    CHECK(f_llr_minsum(2.0, 3.0) == 2.0);
    CHECK(f_llr_minsum(-2.0, 3.0) == -2.0);
    CHECK(f_llr_minsum(2.0, -3.0) == -2.0);
    CHECK(f_llr_minsum(-2.0, -3.0) == 2.0);
}

TEST_CASE("g_llr") {
    CHECK(g_llr(0, 2.0, 3.0) == 5.0);
    CHECK(g_llr(1, 2.0, 3.0) == 1.0);
    CHECK(g_llr(0, 0.0, 3.5) == 3.5);
    CHECK(g_llr(1, 0.0, 3.5) == 3.5);
    CHECK(g_llr(0, kInf, 1.0) == kInf);
    CHECK(g_llr(1, kInf, 1.0) == -kInf);
    CHECK(g_llr(0, kInf, kInf) == kInf);
    CHECK_THROWS_AS(g_llr(1, kInf, kInf), std::domain_error);
    CHECK_THROWS_AS(g_llr(0, -kInf, kInf), std::domain_error);
}

TEST_CASE("classify_node") {
    CHECK(classify_node(InfoSet(3, {})) == NodeClass::Rate0);
    CHECK(classify_node(special_code(NodeClass::Rate1, 3).info()) == NodeClass::Rate1);
    CHECK(classify_node(special_code(NodeClass::Spc, 4).info()) == NodeClass::Spc);
    CHECK(classify_node(special_code(NodeClass::Rep, 4).info()) == NodeClass::Rep);
    CHECK(classify_node(InfoSet::from_z_labels(3, {3, 5, 6, 7})) == NodeClass::Other);
}

TEST_CASE("sc_decode on a fully frozen code") {
    PolarCode code(InfoSet(3, {}));
    ScDecoder decoder(code);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        auto res = decoder.decode(gaussian_llrs(8, rng));
        CHECK(res.codeword == std::vector<std::uint8_t>(8, 0));
    }
}

TEST_CASE("sc_decode two-position hand trace") {
    PolarCode code(InfoSet::from_z_labels(1, {1}));
    ScDecoder decoder(code);
    std::vector<double> y{-1.0, -3.0};
    auto res = decoder.decode(y);
    CHECK(res.message == std::vector<std::uint8_t>{0, 1});
    CHECK(res.codeword == std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("sc_decode recovers noiseless codewords and re-encodes consistently") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 8);
        auto info = bec_construct(m, 1 + rng() % (1ull << m), 0.5);
        PolarCode code(info);
        ScDecoder decoder(code);
        std::vector<std::uint8_t> msg(code.k());
        for (auto& b : msg)
            b = rng() & 1;
        auto cw = encode(code, msg);

        auto res_inf = decoder.decode(noiseless_llrs(cw, kInf));
        CHECK(res_inf.codeword == cw);
        auto res_big = decoder.decode(noiseless_llrs(cw, 40.0));
        CHECK(res_big.codeword == cw);

        // re-encode consistency on noisy input
        auto noisy = decoder.decode(gaussian_llrs(code.n(), rng));
        std::vector<std::uint8_t> info_bits;
        for (std::uint64_t z : code.info().z_labels())
            info_bits.push_back(noisy.message[z]);
        CHECK(encode(code, info_bits) == noisy.codeword);
    }
}

TEST_CASE("sc_decode equals maximum likelihood on the four special node types") {
    std::mt19937_64 rng(31);
    for (int m : {1, 2, 3, 4}) {
        for (NodeClass cls : {NodeClass::Rate0, NodeClass::Rate1, NodeClass::Rep, NodeClass::Spc}) {
            PolarCode code = special_code(cls, m);
            ScDecoder decoder(code);
            const auto codewords = all_codewords(code);
            const int trials = 1000;
            int mismatches = 0;
            for (int t = 0; t < trials; ++t) {
                auto y = gaussian_llrs(code.n(), rng);
                auto sc = decoder.decode(y).codeword;
                // SC must achieve the optimum metric; with continuous noise
                // the optimum is unique almost surely
                if (std::fabs(correlation(sc, y) - best_metric(codewords, y)) > 1e-9)
                    ++mismatches;
            }
            CHECK(mismatches == 0);
        }
    }
}

TEST_CASE("special nodes decode equivariantly under every affine permutation") {
    std::mt19937_64 rng(37);
    for (int m : {2, 3, 4}) {
        for (NodeClass cls : {NodeClass::Rate0, NodeClass::Rate1, NodeClass::Rep, NodeClass::Spc}) {
            PolarCode code = special_code(cls, m);
            ScDecoder decoder(code);
            for (int t = 0; t < 250; ++t) {
                auto map = sample_blta(BlockStructure({m}), rng);
                auto perm = perm_from_affine(map);
                auto y = gaussian_llrs(code.n(), rng);
                auto lhs = decoder.decode(apply_perm(perm, std::span<const double>(y))).codeword;
                auto rhs = apply_perm(perm, std::span<const std::uint8_t>(decoder.decode(y).codeword));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("sc_decode is deterministic") {
    PolarCode code(InfoSet::from_z_labels(4, {3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15}));
    ScDecoder decoder(code);
    std::mt19937_64 rng(41);
    auto y = gaussian_llrs(16, rng);
    auto a = decoder.decode(y);
    auto b = decoder.decode(y);
    CHECK(a.codeword == b.codeword);
    CHECK(a.message == b.message);
}

TEST_CASE("stage outputs restrict to subcode codewords") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 5);
        auto info = bec_construct(m, 1 + rng() % (1ull << m), 0.5);
        PolarCode code(info);
        ScDecoder decoder(code);
        decoder.retain_stages(true);
        auto res = decoder.decode(gaussian_llrs(code.n(), rng));
        REQUIRE(res.stages.size() == static_cast<std::size_t>(m) + 1);

        const std::uint64_t half = code.n() / 2;
        // after one stage: the lower half is a codeword of the a_m = 0
        // subcode, the xor of the halves one of the a_m = 1 subcode
        PolarCode upper_sub(subcode_info(info, IndexConstraint{{{m, 1}}}));
        PolarCode lower_sub(subcode_info(info, IndexConstraint{{{m, 0}}}));
        std::vector<std::uint8_t> upper_cw(res.stages[static_cast<std::size_t>(m - 1)].begin(),
                                           res.stages[static_cast<std::size_t>(m - 1)].begin() +
                                               static_cast<std::ptrdiff_t>(half));
        std::vector<std::uint8_t> lower_cw(res.stages[static_cast<std::size_t>(m - 1)].begin() +
                                               static_cast<std::ptrdiff_t>(half),
                                           res.stages[static_cast<std::size_t>(m - 1)].end());
        auto is_codeword = [](const PolarCode& c, const std::vector<std::uint8_t>& w) {
            ScDecoder d(c);
            std::vector<double> y(w.size());
            for (std::size_t i = 0; i < w.size(); ++i)
                y[i] = w[i] ? -kInf : kInf;
            return d.decode(y).codeword == w;
        };
        CHECK(is_codeword(upper_sub, upper_cw));
        CHECK(is_codeword(lower_sub, lower_cw));

        // and the codeword itself restricts the same way
        std::vector<std::uint8_t> xor_halves(half), tail(half);
        for (std::uint64_t i = 0; i < half; ++i) {
            xor_halves[i] = res.codeword[i] ^ res.codeword[i + half];
            tail[i] = res.codeword[i + half];
        }
        CHECK(is_codeword(upper_sub, xor_halves));
        CHECK(is_codeword(lower_sub, tail));
    }
}

TEST_CASE("min-sum flavor stays close to exact on easy inputs") {
    PolarCode code(InfoSet::from_z_labels(3, {3, 5, 6, 7}));
    ScDecoder exact(code, DecoderFlavor::exact);
    ScDecoder approx(code, DecoderFlavor::min_sum);
    std::mt19937_64 rng(47);
    std::vector<std::uint8_t> msg(code.k());
    for (int trial = 0; trial < 50; ++trial) {
        for (auto& b : msg)
            b = rng() & 1;
        auto cw = encode(code, msg);
        auto y = noiseless_llrs(cw, 30.0);
        CHECK(exact.decode(y).codeword == cw);
        CHECK(approx.decode(y).codeword == cw);
    }
}
