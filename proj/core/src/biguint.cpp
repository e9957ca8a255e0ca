#include "polaraut/biguint.hpp"

#include <algorithm>
#include <stdexcept>

namespace polaraut {

BigUint::BigUint(std::uint64_t v) {
    if (v)
        w_.push_back(v);
}

void BigUint::trim() {
    while (!w_.empty() && w_.back() == 0)
        w_.pop_back();
}

BigUint BigUint::mul(const BigUint& a, const BigUint& b) {
    if (a.is_zero() || b.is_zero())
        return BigUint();
    BigUint out;
    out.w_.assign(a.w_.size() + b.w_.size(), 0);
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
        unsigned __int128 carry = 0;
        for (std::size_t j = 0; j < b.w_.size(); ++j) {
            unsigned __int128 cur = static_cast<unsigned __int128>(a.w_[i]) * b.w_[j] + out.w_[i + j] + carry;
            out.w_[i + j] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        std::size_t k = i + b.w_.size();
        while (carry) {
            unsigned __int128 cur = static_cast<unsigned __int128>(out.w_[k]) + carry;
            out.w_[k] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
            ++k;
        }
    }
    out.trim();
    return out;
}

BigUint BigUint::shifted_left(unsigned bits) const {
    if (is_zero())
        return BigUint();
    unsigned words = bits / 64;
    unsigned rem = bits % 64;
    BigUint out;
    out.w_.assign(w_.size() + words + 1, 0);
    for (std::size_t i = 0; i < w_.size(); ++i) {
        out.w_[i + words] |= rem ? (w_[i] << rem) : w_[i];
        if (rem)
            out.w_[i + words + 1] |= w_[i] >> (64 - rem);
    }
    out.trim();
    return out;
}

BigUint BigUint::sub(const BigUint& a, const BigUint& b) {
    if (a < b)
        throw std::underflow_error("BigUint::sub: negative result");
    BigUint out = a;
    unsigned __int128 borrow = 0;
    for (std::size_t i = 0; i < out.w_.size(); ++i) {
        unsigned __int128 rhs = borrow + (i < b.w_.size() ? b.w_[i] : 0);
        unsigned __int128 lhs = out.w_[i];
        if (lhs >= rhs) {
            out.w_[i] = static_cast<std::uint64_t>(lhs - rhs);
            borrow = 0;
        } else {
            out.w_[i] = static_cast<std::uint64_t>((lhs + (static_cast<unsigned __int128>(1) << 64)) - rhs);
            borrow = 1;
        }
    }
    out.trim();
    return out;
}

std::strong_ordering BigUint::operator<=>(const BigUint& other) const {
    if (w_.size() != other.w_.size())
        return w_.size() <=> other.w_.size();
    for (std::size_t i = w_.size(); i-- > 0;)
        if (w_[i] != other.w_[i])
            return w_[i] <=> other.w_[i];
    return std::strong_ordering::equal;
}

std::string BigUint::decimal() const {
    if (is_zero())
        return "0";
    std::vector<std::uint64_t> tmp = w_;
    std::string out;
    constexpr std::uint64_t chunk = 10'000'000'000'000'000'000ull;  // 10^19
    while (!tmp.empty()) {
        unsigned __int128 rem = 0;
        for (std::size_t i = tmp.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | tmp[i];
            tmp[i] = static_cast<std::uint64_t>(cur / chunk);
            rem = cur % chunk;
        }
        while (!tmp.empty() && tmp.back() == 0)
            tmp.pop_back();
        std::string digits = std::to_string(static_cast<std::uint64_t>(rem));
        if (tmp.empty()) {
            out = digits + out;
        } else {
            out = std::string(19 - digits.size(), '0') + digits + out;
        }
    }
    return out;
}

}  // namespace polaraut
