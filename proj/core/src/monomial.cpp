#include "polaraut/monomial.hpp"

#include "polaraut/biguint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace polaraut {

namespace {

void check_m(int m) {
    if (m < 0 || m > 32)
        throw std::invalid_argument("dimension must be in [0, 32], got " + std::to_string(m));
}

std::uint32_t full_mask(int m) {
    return m >= 32 ? 0xFFFFFFFFu : ((1u << m) - 1u);
}

std::vector<int> var_indices(std::uint32_t exps) {
    std::vector<int> out;
    while (exps) {
        out.push_back(std::countr_zero(exps) + 1);
        exps &= exps - 1;
    }
    return out;
}

}  // namespace

std::uint32_t z_to_a(std::uint64_t z, int m) {
    check_m(m);
    if (z >= (1ull << m))
        throw std::out_of_range("z_to_a: position out of range");
    return static_cast<std::uint32_t>(((1ull << m) - 1ull) - z);
}

std::uint64_t a_to_z(std::uint32_t a, int m) {
    check_m(m);
    if ((a & ~full_mask(m)) != 0)
        throw std::out_of_range("a_to_z: index vector out of range");
    return ((1ull << m) - 1ull) - a;
}

int Monomial::degree() const {
    return std::popcount(exps);
}

Monomial Monomial::of(int m, const std::vector<int>& vars) {
    check_m(m);
    std::uint32_t e = 0;
    for (int v : vars) {
        if (v < 1 || v > m)
            throw std::out_of_range("Monomial::of: variable index out of range");
        e |= 1u << (v - 1);
    }
    return Monomial{m, e};
}

bool precedes(const Monomial& f, const Monomial& g) {
    if (f.m != g.m)
        throw std::invalid_argument("precedes: dimension mismatch");
    const int tf = f.degree();
    const int tg = g.degree();
    if (tf > tg)
        return false;
    // Match f's variables against the tf largest of g: the order holds iff
    // the greedy divisor dominates index-wise.
    std::vector<int> fv = var_indices(f.exps);
    std::vector<int> gv = var_indices(g.exps);
    for (int l = 0; l < tf; ++l)
        if (fv[static_cast<std::size_t>(l)] > gv[static_cast<std::size_t>(tg - tf + l)])
            return false;
    return true;
}

InfoSet::InfoSet(int m, std::vector<std::uint32_t> members) : m_(m), members_(std::move(members)) {
    check_m(m);
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && (members_.back() & ~full_mask(m)) != 0)
        throw std::out_of_range("InfoSet: member out of range");
}

InfoSet InfoSet::from_z_labels(int m, const std::vector<std::uint64_t>& zs) {
    std::vector<std::uint32_t> members;
    members.reserve(zs.size());
    for (std::uint64_t z : zs)
        members.push_back(z_to_a(z, m));
    return InfoSet(m, std::move(members));
}

bool InfoSet::contains(std::uint32_t a) const {
    return std::binary_search(members_.begin(), members_.end(), a);
}

std::vector<std::uint64_t> InfoSet::z_labels() const {
    std::vector<std::uint64_t> out;
    out.reserve(members_.size());
    for (auto it = members_.rbegin(); it != members_.rend(); ++it)
        out.push_back(a_to_z(*it, m_));
    return out;
}

InfoSet decreasing_closure(int m, const std::vector<Monomial>& gens) {
    check_m(m);
    // Breadth-first over covering moves: drop a variable, or shift one
    // variable index down into a free slot. These generate the full order.
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack;
    for (const Monomial& g : gens) {
        if (g.m != m)
            throw std::invalid_argument("decreasing_closure: generator dimension mismatch");
        if (seen.insert(g.exps).second)
            stack.push_back(g.exps);
    }
    while (!stack.empty()) {
        std::uint32_t a = stack.back();
        stack.pop_back();
        std::uint32_t bits = a;
        while (bits) {
            int i = std::countr_zero(bits);
            bits &= bits - 1;
            std::uint32_t dropped = a & ~(1u << i);
            if (seen.insert(dropped).second)
                stack.push_back(dropped);
            if (i > 0 && !((a >> (i - 1)) & 1u)) {
                std::uint32_t shifted = (a & ~(1u << i)) | (1u << (i - 1));
                if (seen.insert(shifted).second)
                    stack.push_back(shifted);
            }
        }
    }
    return InfoSet(m, std::vector<std::uint32_t>(seen.begin(), seen.end()));
}

bool is_decreasing(const InfoSet& info) {
    for (std::uint32_t a : info.members()) {
        std::uint32_t bits = a;
        while (bits) {
            int i = std::countr_zero(bits);
            bits &= bits - 1;
            if (!info.contains(a & ~(1u << i)))
                return false;
            if (i > 0 && !((a >> (i - 1)) & 1u) && !info.contains((a & ~(1u << i)) | (1u << (i - 1))))
                return false;
        }
    }
    return true;
}

InfoSet subcode_info(const InfoSet& info, const IndexConstraint& c) {
    const int m = info.m();
    std::uint32_t pos_mask = 0;
    std::uint32_t val_mask = 0;
    for (auto [pos, bit] : c.fixed) {
        if (pos < 1 || pos > m)
            throw std::out_of_range("subcode_info: constraint position out of range");
        std::uint32_t b = 1u << (pos - 1);
        if (pos_mask & b)
            throw std::invalid_argument("subcode_info: duplicate constraint position");
        pos_mask |= b;
        if (bit)
            val_mask |= b;
    }
    const int sub_m = m - std::popcount(pos_mask);
    std::vector<std::uint32_t> members;
    for (std::uint32_t a : info.members()) {
        if ((a & pos_mask) != val_mask)
            continue;
        std::uint32_t packed = 0;
        int out_bit = 0;
        for (int i = 0; i < m; ++i) {
            if ((pos_mask >> i) & 1u)
                continue;
            packed |= ((a >> i) & 1u) << out_bit;
            ++out_bit;
        }
        members.push_back(packed);
    }
    return InfoSet(sub_m, std::move(members));
}

PolarCode::PolarCode(InfoSet info, bool allow_non_decreasing) : info_(std::move(info)) {
    verified_ = is_decreasing(info_);
    if (!verified_ && !allow_non_decreasing)
        throw std::invalid_argument("PolarCode: information set is not decreasing");
    frozen_z_.assign(info_.n(), 1);
    for (std::uint64_t z : info_.z_labels())
        frozen_z_[z] = 0;
}

std::vector<std::uint8_t> encode(const PolarCode& code, std::span<const std::uint8_t> message) {
    if (message.size() != code.k())
        throw std::invalid_argument("encode: message length must equal the code dimension");
    std::vector<std::uint8_t> x(code.n(), 0);
    std::size_t idx = 0;
    for (std::uint64_t z : code.info().z_labels())
        x[z] = message[idx++] & 1;
    for (std::uint64_t h = 1; h < code.n(); h <<= 1)
        for (std::uint64_t block = 0; block < code.n(); block += 2 * h)
            for (std::uint64_t j = 0; j < h; ++j)
                x[block + j] ^= x[block + j + h];
    return x;
}

namespace {

// One erasure parameter as numerator / 2^k; all values at a given recursion
// level share the exponent, so order is numerator order.
struct ExactBec {
    std::vector<BigUint> nums;

    void fill(const BigUint& v, unsigned k, std::uint64_t idx, std::uint64_t half) {
        if (half == 0) {
            nums[idx] = v;
            return;
        }
        // minus branch: 2*v - v^2 = (num << (k+1)) - num^2 over 2^(2k)
        BigUint sq = BigUint::mul(v, v);
        fill(BigUint::sub(v.shifted_left(k + 1), sq), 2 * k, idx, half / 2);
        fill(sq, 2 * k, idx + half, half / 2);
    }
};

void fill_double(std::vector<double>& out, double v, std::uint64_t idx, std::uint64_t half) {
    if (half == 0) {
        out[idx] = v;
        return;
    }
    fill_double(out, 2 * v - v * v, idx, half / 2);
    fill_double(out, v * v, idx + half, half / 2);
}

}  // namespace

InfoSet bec_construct(int m, std::uint64_t k, double erasure) {
    check_m(m);
    if (!(erasure > 0.0) || !(erasure < 1.0))
        throw std::invalid_argument("bec_construct: erasure probability must be in (0, 1)");
    const std::uint64_t n = 1ull << m;
    if (k > n)
        throw std::invalid_argument("bec_construct: k exceeds the code length");

    std::vector<std::uint64_t> order(n);
    for (std::uint64_t i = 0; i < n; ++i)
        order[i] = i;

    if (m <= 10) {
        // A double is an exact dyadic rational; start from its significand.
        int e = 0;
        double fr = std::frexp(erasure, &e);
        auto num = static_cast<std::uint64_t>(std::ldexp(fr, 53));
        unsigned k0 = static_cast<unsigned>(53 - e);
        while ((num & 1u) == 0 && k0 > 1) {
            num >>= 1;
            --k0;
        }
        ExactBec bec;
        bec.nums.resize(n);
        bec.fill(BigUint(num), k0, 0, n / 2);
        std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
            auto cmp = bec.nums[a] <=> bec.nums[b];
            if (cmp != std::strong_ordering::equal)
                return cmp == std::strong_ordering::less;
            return a > b;  // equal reliability: prefer the larger position
        });
    } else {
        std::vector<double> vals(n);
        fill_double(vals, erasure, 0, n / 2);
        std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
            if (vals[a] != vals[b])
                return vals[a] < vals[b];
            return a > b;
        });
    }

    std::vector<std::uint64_t> zs(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    InfoSet info = InfoSet::from_z_labels(m, zs);
    if (!is_decreasing(info))
        throw std::domain_error("bec_construct: selection is not decreasing (tie pattern)");
    return info;
}

}  // namespace polaraut
