#include "polaraut/automorphism.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace polaraut {

Permutation::Permutation(std::vector<std::uint32_t> table) : table_(std::move(table)) {
    std::vector<bool> seen(table_.size(), false);
    for (std::uint32_t v : table_) {
        if (v >= table_.size() || seen[v])
            throw std::invalid_argument("Permutation: table is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::uint64_t n) {
    std::vector<std::uint32_t> table(n);
    for (std::uint64_t i = 0; i < n; ++i)
        table[i] = static_cast<std::uint32_t>(i);
    return Permutation(std::move(table));
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(table_.size());
    for (std::uint64_t i = 0; i < table_.size(); ++i)
        inv[table_[i]] = static_cast<std::uint32_t>(i);
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& q) const {
    if (size() != q.size())
        throw std::invalid_argument("Permutation::compose: size mismatch");
    std::vector<std::uint32_t> table(table_.size());
    for (std::uint64_t i = 0; i < table_.size(); ++i)
        table[i] = table_[q.table_[i]];
    return Permutation(std::move(table));
}

namespace {

template <typename T>
std::vector<T> apply_perm_impl(const Permutation& p, std::span<const T> v) {
    if (v.size() != p.size())
        throw std::invalid_argument("apply_perm: length mismatch");
    std::vector<T> out(v.size());
    for (std::uint64_t i = 0; i < v.size(); ++i)
        out[i] = v[p(i)];
    return out;
}

}  // namespace

std::vector<double> apply_perm(const Permutation& p, std::span<const double> v) {
    return apply_perm_impl(p, v);
}

std::vector<std::uint8_t> apply_perm(const Permutation& p, std::span<const std::uint8_t> v) {
    return apply_perm_impl(p, v);
}

Permutation perm_from_affine(const AffineMap& t) {
    const int m = t.dim();
    if (m > 28)
        throw std::invalid_argument("perm_from_affine: permutation table too large for m > 28");
    const std::uint64_t n = 1ull << m;
    std::vector<std::uint32_t> table(n);
    for (std::uint64_t z = 0; z < n; ++z)
        table[z] = static_cast<std::uint32_t>(a_to_z(affine_apply(t, z_to_a(z, m)), m));
    return Permutation(std::move(table));
}

bool is_automorphism(const Gf2Matrix& mat, const InfoSet& info) {
    if (mat.dim() != info.m())
        throw std::invalid_argument("is_automorphism: dimension mismatch");
    if (!is_invertible(mat))
        throw std::domain_error("is_automorphism: singular matrix");
    // g(Mx) = prod over variables i of g of the row-i linear form; expand
    // with x^2 = x, cancelling duplicate monomials mod 2.
    std::unordered_set<std::uint32_t> terms;
    std::unordered_set<std::uint32_t> next;
    for (std::uint32_t g : info.members()) {
        terms.clear();
        terms.insert(0u);
        std::uint32_t vars = g;
        while (vars) {
            int i = std::countr_zero(vars);
            vars &= vars - 1;
            const std::uint32_t form = mat.row(i);
            next.clear();
            for (std::uint32_t term : terms) {
                std::uint32_t choices = form;
                while (choices) {
                    int j = std::countr_zero(choices);
                    choices &= choices - 1;
                    const std::uint32_t prod = term | (1u << j);
                    auto [it, inserted] = next.insert(prod);
                    if (!inserted)
                        next.erase(it);
                }
            }
            terms.swap(next);
        }
        for (std::uint32_t term : terms)
            if (!info.contains(term))
                return false;
    }
    return true;
}

BlockStructure automorphism_group(const InfoSet& info) {
    if (!is_decreasing(info))
        throw std::invalid_argument("automorphism_group: information set is not decreasing");
    const int m = info.m();
    std::vector<int> breakpoints;
    for (int j = 0; j + 1 < m; ++j) {
        Gf2Matrix t = Gf2Matrix::identity(m);
        t.set(j, j + 1, true);
        if (!is_automorphism(t, info))
            breakpoints.push_back(j + 1);
    }
    BlockStructure s = BlockStructure::from_breakpoints(m, breakpoints);
    // Spot-check the completeness assumption on a few random group elements.
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
    for (int trial = 0; trial < 8; ++trial)
        if (!is_automorphism(sample_blta(s, rng).matrix, info))
            throw std::logic_error("automorphism_group: sampled group element fails membership");
    return s;
}

AffineAutomorphism make_automorphism(const AffineMap& map, const InfoSet& info) {
    if (!is_automorphism(map.matrix, info))
        throw std::invalid_argument("make_automorphism: map is not an automorphism of the code");
    return AffineAutomorphism{map, perm_from_affine(map), info.m()};
}

}  // namespace polaraut
