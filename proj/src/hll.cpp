#include "robustness/hll.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace robustness {

namespace {

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_p(int p) {
    if (p < HllCounter::kMinP || p > HllCounter::kMaxP)
        throw std::invalid_argument("register bits must be in [4, 16]");
}

}  // namespace

std::uint64_t hash64(std::uint64_t element, std::uint64_t seed) {
    return mix(element + 0x9e3779b97f4a7c15ULL * (mix(seed) | 1));
}

RegisterUpdate register_update(std::uint64_t hash, int p) {
    const auto index = static_cast<std::uint32_t>(hash >> (64 - p));
    const std::uint64_t rest = hash << p;
    const int max_rank = 64 - p + 1;
    const int rank = rest == 0 ? max_rank : std::min(std::countl_zero(rest) + 1, max_rank);
    return {index, static_cast<std::uint8_t>(rank)};
}

double hll_alpha(std::size_t r) {
    switch (r) {
        case 16: return 0.673;
        case 32: return 0.697;
        case 64: return 0.709;
        default: return 0.7213 / (1.0 + 1.079 / static_cast<double>(r));
    }
}

double estimate_registers(std::span<const std::uint8_t> registers) {
    const double r = static_cast<double>(registers.size());
    double sum = 0.0;
    std::size_t zeros = 0;
    for (std::uint8_t v : registers) {
        sum += std::ldexp(1.0, -static_cast<int>(v));
        zeros += v == 0;
    }
    const double raw = hll_alpha(registers.size()) * r * r / sum;
    if (raw <= 2.5 * r && zeros > 0) return r * std::log(r / static_cast<double>(zeros));
    return raw;
}

bool max_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
    unsigned grew = 0;
    for (std::size_t j = 0; j < dst.size(); ++j) {
        const std::uint8_t v = std::max(dst[j], src[j]);
        grew |= v ^ dst[j];
        dst[j] = v;
    }
    return grew != 0;
}

HllCounter::HllCounter(int p, std::uint64_t seed) : p_(p), seed_(seed) {
    check_p(p);
    registers_.assign(std::size_t{1} << p, 0);
}

void HllCounter::add(std::uint64_t element) {
    auto u = register_update(hash64(element, seed_), p_);
    registers_[u.index] = std::max(registers_[u.index], u.rank);
}

void HllCounter::merge(const HllCounter &other) {
    if (other.p_ != p_ || other.seed_ != seed_)
        throw std::invalid_argument("cannot merge counters with different p or seed");
    max_into(registers_, other.registers_);
}

bool HllCounter::empty() const {
    return std::all_of(registers_.begin(), registers_.end(), [](std::uint8_t v) { return v == 0; });
}

std::string HllCounter::hex_dump() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * registers_.size());
    for (std::uint8_t v : registers_) {
        out.push_back(digits[v >> 4]);
        out.push_back(digits[v & 0xf]);
    }
    return out;
}

HllCounter merged(HllCounter a, const HllCounter &b) {
    a.merge(b);
    return a;
}

CounterArray::CounterArray(std::size_t num_counters, int p, std::uint64_t seed)
    : p_(p), seed_(seed), r_(std::size_t{1} << p), size_(num_counters) {
    check_p(p);
    data_.assign(num_counters * r_, 0);
}

void CounterArray::add(std::size_t i, std::uint64_t element) {
    auto u = register_update(hash64(element, seed_), p_);
    auto c = counter(i);
    c[u.index] = std::max(c[u.index], u.rank);
}

HllCounter CounterArray::extract(std::size_t i) const {
    HllCounter c(p_, seed_);
    auto src = counter(i);
    std::copy(src.begin(), src.end(), c.registers_.begin());
    return c;
}

}  // namespace robustness
