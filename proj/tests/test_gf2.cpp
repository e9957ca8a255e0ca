#include "polaraut/gf2.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <stdexcept>

using namespace polaraut;

namespace {

Gf2Matrix mat2(std::uint32_t r0, std::uint32_t r1) {
    return Gf2Matrix::from_rows(2, {r0, r1});
}

// rows given as bit masks, bit c = column c
Gf2Matrix mat3(std::uint32_t r0, std::uint32_t r1, std::uint32_t r2) {
    return Gf2Matrix::from_rows(3, {r0, r1, r2});
}

Gf2Matrix random_unit_lower(int m, std::mt19937_64& rng) {
    Gf2Matrix out = Gf2Matrix::identity(m);
    for (int r = 1; r < m; ++r)
        for (int c = 0; c < r; ++c)
            if (rng() & 1u)
                out.set(r, c, true);
    return out;
}

Gf2Matrix random_invertible(int m, std::mt19937_64& rng) {
    return sample_blta(BlockStructure({m}), rng).matrix;
}

// Independent count of invertible matrices fitting the block pattern,
// enumerating all 2^(m*m) bit patterns.
std::uint64_t enumerate_blta(const BlockStructure& s) {
    const int m = s.m();
    const int cells = m * m;
    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < (1ull << cells); ++bits) {
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < cells; ++i)
            if ((bits >> i) & 1ull)
                rows[static_cast<std::size_t>(i / m)] |= 1u << (i % m);
        if (is_member_blta(Gf2Matrix::from_rows(m, rows), s))
            ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("mat_mul basics") {
    auto id3 = Gf2Matrix::identity(3);
    std::mt19937_64 rng(7);
    auto m = random_invertible(3, rng);
    CHECK(mat_mul(id3, m) == m);
    CHECK(mat_mul(m, mat_inv(m)) == id3);

    // [[1,0],[1,1]] squared is the identity
    auto lower = mat2(0b01, 0b11);
    CHECK(mat_mul(lower, lower) == Gf2Matrix::identity(2));

    CHECK_THROWS_AS(mat_mul(id3, Gf2Matrix::identity(2)), std::invalid_argument);
}

TEST_CASE("mat_inv basics") {
    CHECK(mat_inv(Gf2Matrix::identity(4)) == Gf2Matrix::identity(4));
    auto lower = mat2(0b01, 0b11);
    CHECK(mat_inv(lower) == lower);

    // [[1,1],[1,0]] -> [[0,1],[1,1]]
    auto m = mat2(0b11, 0b01);
    auto expected = mat2(0b10, 0b11);
    CHECK(mat_inv(m) == expected);
    CHECK(mat_mul(m, expected) == Gf2Matrix::identity(2));

    auto singular = mat2(0b11, 0b11);
    CHECK_THROWS_AS(mat_inv(singular), std::domain_error);
    CHECK(!is_invertible(singular));
}

TEST_CASE("block_structure") {
    CHECK(block_structure(Gf2Matrix::identity(3)) == BlockStructure({1, 1, 1}));
    CHECK(block_structure(mat2(0b11, 0b01)) == BlockStructure({2}));  // entry (1,2) set
    CHECK(block_structure(mat2(0b01, 0b11)) == BlockStructure({1, 1}));
    CHECK_THROWS_AS(block_structure(mat2(0b11, 0b11)), std::domain_error);
}

TEST_CASE("lt_normalize on an already upper-triangular input") {
    auto u = mat3(0b111, 0b010, 0b100);
    auto res = lt_normalize(u);
    CHECK(res.l1 == Gf2Matrix::identity(3));
    CHECK(res.l2 == Gf2Matrix::identity(3));
    CHECK(res.u == u);
}

TEST_CASE("lt_normalize hand-worked swap matrix") {
    auto m = mat2(0b10, 0b01);  // [[0,1],[1,0]]
    auto res = lt_normalize(m);
    CHECK(res.u.get(0, 1));
    CHECK(block_structure(res.u) == BlockStructure({2}));
    CHECK(block_structure(m) == BlockStructure({2}));
}

TEST_CASE("lt_normalize exhaustive over every invertible 3x3 matrix") {
    int invertible = 0;
    for (std::uint32_t r0 = 0; r0 < 8; ++r0)
        for (std::uint32_t r1 = 0; r1 < 8; ++r1)
            for (std::uint32_t r2 = 0; r2 < 8; ++r2) {
                auto m = mat3(r0, r1, r2);
                if (!is_invertible(m))
                    continue;
                ++invertible;
                auto res = lt_normalize(m);
                // unit lower / unit upper shape
                for (int i = 0; i < 3; ++i) {
                    CHECK(res.l1.get(i, i));
                    CHECK(res.l2.get(i, i));
                    CHECK(res.u.get(i, i));
                    for (int j = i + 1; j < 3; ++j) {
                        CHECK(!res.l1.get(i, j));
                        CHECK(!res.l2.get(i, j));
                        CHECK(!res.u.get(j, i));
                    }
                }
                // reconstruction and structure preservation
                CHECK(mat_mul(mat_mul(mat_inv(res.l1), res.u), mat_inv(res.l2)) == m);
                CHECK(block_structure(res.u) == block_structure(m));
            }
    CHECK(invertible == 168);  // |GL(3,2)|
}

TEST_CASE("decompose_upper") {
    auto [f0, l0] = decompose_upper(Gf2Matrix::identity(2));
    CHECK(f0 == Gf2Matrix::identity(2));
    CHECK(l0 == Gf2Matrix::identity(2));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 7);
        Gf2Matrix u = Gf2Matrix::identity(m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (rng() & 1u)
                    u.set(i, j, true);
        auto [first, last] = decompose_upper(u);
        CHECK(mat_mul(first, last) == u);
        CHECK(mat_mul(last, first) == u);
        if (block_structure(u).sizes().back() == 1)
            CHECK(last == Gf2Matrix::identity(m));
    }

    auto not_upper = mat2(0b01, 0b11);
    CHECK_THROWS_AS(decompose_upper(not_upper), std::invalid_argument);
}

TEST_CASE("is_member_blta") {
    CHECK(is_member_blta(Gf2Matrix::identity(4), BlockStructure({2, 2})));
    CHECK(is_member_blta(Gf2Matrix::identity(4), BlockStructure({1, 1, 1, 1})));
    CHECK(!is_member_blta(mat2(0b11, 0b01), BlockStructure({1, 1})));
    CHECK(!is_member_blta(mat2(0b11, 0b11), BlockStructure({2})));  // singular

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial)
        CHECK(is_member_blta(random_invertible(5, rng), BlockStructure({5})));
}

TEST_CASE("blta_order reference values") {
    CHECK(blta_order(BlockStructure({2})) == FactoredCount{3, 1});
    CHECK(blta_order(BlockStructure({3, 1, 1, 1, 1, 1})) == FactoredCount{21, 28});
    CHECK(blta_order(BlockStructure({3, 2, 1})) == FactoredCount{63, 15});
    CHECK(blta_order(BlockStructure({3, 1, 1, 1, 1})) == FactoredCount{21, 21});
    CHECK(blta_order(BlockStructure({2, 1, 1, 1, 1, 1, 1})) == FactoredCount{3, 28});
    CHECK(blta_order(BlockStructure({3, 5})).to_string() == "205065*2^28");
    CHECK(blta_order(BlockStructure({2})).exact() == 6);
    CHECK(blta_order(BlockStructure({3, 1, 1, 1, 1, 1})).decimal() == "5637144576");
}

TEST_CASE("blta_order equals exhaustive enumeration for m <= 3") {
    for (const auto& sizes : std::vector<std::vector<int>>{
             {1}, {2}, {1, 1}, {3}, {2, 1}, {1, 2}, {1, 1, 1}}) {
        BlockStructure s(sizes);
        auto expected = blta_order(s).exact();
        REQUIRE(expected.has_value());
        CHECK(enumerate_blta(s) == *expected);
    }
}

TEST_CASE("gro") {
    CHECK(gro(BlockStructure({2, 1, 1}), BlockStructure({3, 1})) == BlockStructure({2, 1, 1}));
    CHECK(gro(BlockStructure({3, 1}), BlockStructure({3, 1})) == BlockStructure({3, 1}));
    CHECK(gro(BlockStructure({4}), BlockStructure({1, 1, 1, 1})) == BlockStructure({1, 1, 1, 1}));
    CHECK_THROWS_AS(gro(BlockStructure({2}), BlockStructure({3})), std::invalid_argument);

    // [m] is the identity element
    CHECK(gro(BlockStructure({5}), BlockStructure({2, 3})) == BlockStructure({2, 3}));

    std::mt19937_64 rng(17);
    auto random_structure = [&](int m) {
        std::vector<int> bp;
        for (int b = 1; b < m; ++b)
            if (rng() & 1u)
                bp.push_back(b);
        return BlockStructure::from_breakpoints(m, bp);
    };
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 7);
        auto s1 = random_structure(m);
        auto s2 = random_structure(m);
        auto s3 = random_structure(m);
        CHECK(gro(s1, s2) == gro(s2, s1));
        CHECK(gro(s1, s1) == s1);
        CHECK(gro(gro(s1, s2), s3) == gro(s1, gro(s2, s3)));
        // membership is the conjunction of memberships
        auto m1 = sample_blta(gro(s1, s2), rng).matrix;
        CHECK(is_member_blta(m1, s1));
        CHECK(is_member_blta(m1, s2));
        auto m2 = random_invertible(m, rng);
        CHECK(is_member_blta(m2, gro(s1, s2)) ==
              (is_member_blta(m2, s1) && is_member_blta(m2, s2)));
    }
}

TEST_CASE("sample_blta membership and determinism") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 8);
        std::vector<int> bp;
        for (int b = 1; b < m; ++b)
            if (rng() & 1u)
                bp.push_back(b);
        BlockStructure s = BlockStructure::from_breakpoints(m, bp);
        auto map = sample_blta(s, rng);
        CHECK(is_member_blta(map.matrix, s));
    }

    std::mt19937_64 a(99), b(99);
    CHECK(sample_blta(BlockStructure({3, 2}), a) == sample_blta(BlockStructure({3, 2}), b));
}

TEST_CASE("sample_blta is uniform over GL(2,2)") {
    std::mt19937_64 rng(31);
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> freq;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        auto map = sample_blta(BlockStructure({2}), rng);
        ++freq[{map.matrix.row(0), map.matrix.row(1)}];
    }
    CHECK(freq.size() == 6);
    for (const auto& [key, count] : freq) {
        CHECK(count > 9500);
        CHECK(count < 10500);
    }
}

TEST_CASE("two-sided unit lower-triangular products preserve the block structure") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 7);
        auto mat = random_invertible(m, rng);
        auto l1 = random_unit_lower(m, rng);
        auto l2 = random_unit_lower(m, rng);
        CHECK(block_structure(mat_mul(mat_mul(l1, mat), l2)) == block_structure(mat));
    }
}

TEST_CASE("affine map composition and inversion") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 8);
        auto f = sample_blta(BlockStructure({m}), rng);
        auto g = sample_blta(BlockStructure({m}), rng);
        auto fg = affine_compose(f, g);
        const std::uint32_t a = static_cast<std::uint32_t>(rng()) & ((m >= 32) ? ~0u : ((1u << m) - 1));
        CHECK(affine_apply(fg, a) == affine_apply(f, affine_apply(g, a)));
        CHECK(affine_apply(affine_inverse(f), affine_apply(f, a)) == a);
    }
    CHECK_THROWS_AS(AffineMap(mat2(0b11, 0b11), 0), std::domain_error);
}

TEST_CASE("factored count division") {
    CHECK(factored_div(FactoredCount{21, 28}, FactoredCount{3, 28}) == FactoredCount{7, 0});
    CHECK_THROWS_AS(factored_div(FactoredCount{21, 2}, FactoredCount{5, 1}), std::domain_error);
    CHECK_THROWS_AS(factored_div(FactoredCount{21, 2}, FactoredCount{3, 5}), std::domain_error);
}
