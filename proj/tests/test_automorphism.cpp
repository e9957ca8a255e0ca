#include "polaraut/automorphism.hpp"

#include "polaraut/sc_decoder.hpp"

#include <doctest.h>

#include <limits>
#include <random>
#include <stdexcept>

using namespace polaraut;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Automorphism test that never looks at monomials: permute a basis of
// codewords and check each image decodes to itself under certainty LLRs.
bool is_automorphism_by_codewords(const Gf2Matrix& mat, const InfoSet& info) {
    PolarCode code(info);
    ScDecoder decoder(code);
    Permutation perm = perm_from_affine(AffineMap(mat, 0));
    std::vector<std::uint8_t> msg(code.k(), 0);
    for (std::size_t i = 0; i < code.k(); ++i) {
        msg.assign(code.k(), 0);
        msg[i] = 1;
        auto image = apply_perm(perm, std::span<const std::uint8_t>(encode(code, msg)));
        std::vector<double> y(image.size());
        for (std::size_t p = 0; p < image.size(); ++p)
            y[p] = image[p] ? -kInf : kInf;
        try {
            if (decoder.decode(y).codeword != image)
                return false;
        } catch (const std::domain_error&) {
            return false;  // certainty conflict: the image is not a codeword
        }
    }
    return true;
}

InfoSet rm_2_4() {
    return InfoSet::from_z_labels(4, {3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15});
}

std::vector<Gf2Matrix> all_invertible(int m) {
    std::vector<Gf2Matrix> out;
    const int cells = m * m;
    for (std::uint64_t bits = 0; bits < (1ull << cells); ++bits) {
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < cells; ++i)
            if ((bits >> i) & 1ull)
                rows[static_cast<std::size_t>(i / m)] |= 1u << (i % m);
        Gf2Matrix mat = Gf2Matrix::from_rows(m, rows);
        if (is_invertible(mat))
            out.push_back(std::move(mat));
    }
    return out;
}

}  // namespace

TEST_CASE("permutation basics") {
    auto id = Permutation::identity(8);
    CHECK(id(3) == 3);
    CHECK(id.inverse() == id);
    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);

    Permutation p({2, 0, 1});
    CHECK(p.compose(p.inverse()) == Permutation::identity(3));

    std::vector<double> v{10.0, 20.0, 30.0};
    auto w = apply_perm(p, std::span<const double>(v));
    CHECK(w == std::vector<double>{30.0, 10.0, 20.0});
    auto back = apply_perm(p.inverse(), std::span<const double>(w));
    CHECK(back == v);

    std::vector<double> constant{1.0, 1.0, 1.0};
    CHECK(apply_perm(p, std::span<const double>(constant)) == constant);
}

TEST_CASE("perm_from_affine") {
    CHECK(perm_from_affine(AffineMap::identity(3)) == Permutation::identity(8));

    // m = 2, translation by (1,0): swaps positions 0,1 and 2,3
    AffineMap shift(Gf2Matrix::identity(2), 0b01);
    auto p = perm_from_affine(shift);
    CHECK(p.table() == std::vector<std::uint32_t>{1, 0, 3, 2});

    // unit upper-triangular with a trailing structural block of size one
    // keeps both halves in place setwise
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 6);
        Gf2Matrix u = Gf2Matrix::identity(m);
        for (int i = 0; i + 1 < m; ++i)
            for (int j = i + 1; j + 1 < m; ++j)
                if (rng() & 1u)
                    u.set(i, j, true);  // leave column m untouched
        auto perm = perm_from_affine(AffineMap(u, 0));
        const std::uint64_t half = 1ull << (m - 1);
        for (std::uint64_t z = 0; z < 2 * half; ++z)
            CHECK((perm(z) < half) == (z < half));
    }
}

TEST_CASE("perm_from_affine respects composition and inversion") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 6);
        auto f = sample_blta(BlockStructure({m}), rng);
        auto g = sample_blta(BlockStructure({m}), rng);
        CHECK(perm_from_affine(affine_compose(f, g)) == perm_from_affine(f).compose(perm_from_affine(g)));
        CHECK(perm_from_affine(affine_inverse(f)) == perm_from_affine(f).inverse());
    }
}

TEST_CASE("is_automorphism basics") {
    auto rm = rm_2_4();
    CHECK(is_automorphism(Gf2Matrix::identity(4), rm));

    // coordinate swap of a_1 and a_4 as a permutation matrix
    Gf2Matrix swap14(4);
    swap14.set(0, 3, true);
    swap14.set(3, 0, true);
    swap14.set(1, 1, true);
    swap14.set(2, 2, true);
    CHECK(is_automorphism(swap14, rm));

    // every unit lower-triangular matrix on every decreasing code
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 6);
        auto info = bec_construct(m, rng() % ((1ull << m) + 1), 0.5);
        auto lower = sample_blta(BlockStructure(std::vector<int>(static_cast<std::size_t>(m), 1)), rng);
        CHECK(is_automorphism(lower.matrix, info));
    }

    CHECK_THROWS_AS(is_automorphism(Gf2Matrix::from_rows(2, {0b11, 0b11}), InfoSet(2, {0})),
                    std::domain_error);
}

TEST_CASE("is_automorphism matches the codeword-permutation oracle") {
    std::mt19937_64 rng(17);
    for (int m : {2, 3}) {
        auto gl = all_invertible(m);
        for (int trial = 0; trial < 6; ++trial) {
            auto info = bec_construct(m, 1 + rng() % ((1ull << m) - 1), 0.5);
            for (const auto& mat : gl)
                CHECK(is_automorphism(mat, info) == is_automorphism_by_codewords(mat, info));
        }
    }
}

TEST_CASE("automorphism_group reference codes") {
    CHECK(automorphism_group(rm_2_4()) == BlockStructure({4}));

    auto c64 = decreasing_closure(6, {Monomial::of(6, {1, 2, 3, 6})});
    CHECK(automorphism_group(c64) == BlockStructure({3, 3}));

    auto c256 = decreasing_closure(8, {Monomial::of(8, {6, 7, 8}), Monomial::of(8, {2, 3, 7, 8})});
    CHECK(automorphism_group(c256) == BlockStructure({3, 5}));

    auto c128 = decreasing_closure(7, {Monomial::of(7, {4, 6, 7}), Monomial::of(7, {2, 3, 6, 7})});
    CHECK(automorphism_group(c128) == BlockStructure({3, 1, 3}));

    // fully frozen / fully informative codes admit every affine map
    CHECK(automorphism_group(InfoSet(4, {})) == BlockStructure({4}));
    std::vector<std::uint32_t> all;
    for (std::uint32_t a = 0; a < 16; ++a)
        all.push_back(a);
    CHECK(automorphism_group(InfoSet(4, all)) == BlockStructure({4}));

    CHECK_THROWS_AS(automorphism_group(InfoSet(2, {0b10})), std::invalid_argument);
}

TEST_CASE("membership in the automorphism group matches is_automorphism exhaustively") {
    std::mt19937_64 rng(19);
    for (int m : {2, 3}) {
        auto gl = all_invertible(m);
        for (int trial = 0; trial < 4; ++trial) {
            auto info = bec_construct(m, rng() % ((1ull << m) + 1), 0.5);
            auto aut = automorphism_group(info);
            for (const auto& mat : gl)
                CHECK(is_automorphism(mat, info) == is_member_blta(mat, aut));
        }
    }
}

TEST_CASE("sampled group elements map codewords to codewords") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 5);
        auto info = bec_construct(m, 1 + rng() % ((1ull << m) - 1), 0.5);
        PolarCode code(info);
        ScDecoder decoder(code);
        auto aut = automorphism_group(info);
        auto map = sample_blta(aut, rng);
        auto perm = perm_from_affine(map);
        std::vector<std::uint8_t> msg(code.k());
        for (auto& b : msg)
            b = rng() & 1;
        auto image = apply_perm(perm, std::span<const std::uint8_t>(encode(code, msg)));
        std::vector<double> y(image.size());
        for (std::size_t p = 0; p < image.size(); ++p)
            y[p] = image[p] ? -kInf : kInf;
        CHECK(decoder.decode(y).codeword == image);
    }
}

TEST_CASE("make_automorphism rejects non-automorphisms") {
    // {1, x1} is not invariant under the swap of a_1 and a_2
    auto info = decreasing_closure(2, {Monomial::of(2, {1})});
    Gf2Matrix swap12(2);
    swap12.set(0, 1, true);
    swap12.set(1, 0, true);
    CHECK(!is_automorphism(swap12, info));
    CHECK_THROWS_AS(make_automorphism(AffineMap(swap12, 0), info), std::invalid_argument);
    auto ok = make_automorphism(AffineMap::identity(2), info);
    CHECK(ok.perm == Permutation::identity(4));
}
