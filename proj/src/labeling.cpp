#include "casym/labeling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "detail/parallel.hpp"
#include "detail/random.hpp"

namespace casym {

namespace {

int log2_exact(std::size_t n) {
    int m = 0;
    while ((std::size_t{1} << m) < n) ++m;
    return m;
}

void require_bits(int bits) {
    if (bits < 1 || bits > 20) throw std::invalid_argument("labeling order must be in [1, 20]");
}

void require_position(const Labeling& lab, int k, int b) {
    if (k < 1 || k > lab.bits()) throw std::out_of_range("bit position out of range");
    if (b != 0 && b != 1) throw std::out_of_range("bit value must be 0 or 1");
}

void require_sizes(const Constellation& c, const Labeling& lab) {
    if (c.size() != lab.size()) throw std::invalid_argument("constellation and labeling sizes differ");
}

// Adjacent index pairs (i, i+1) at MED; in an ordered 1-D constellation these
// are all the MED pairs.
std::vector<std::size_t> med_pairs(const Constellation& c) {
    const double d = med(c);
    std::vector<std::size_t> left;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (at_med(c[i + 1] - c[i], d)) left.push_back(i);
    return left;
}

int c_from_codes(std::span<const std::size_t> pairs, const int* codes) {
    int c = 0;
    for (std::size_t i : pairs) c += std::popcount(static_cast<unsigned>(codes[i] ^ codes[i + 1]));
    return 2 * c;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

}  // namespace

Labeling::Labeling(std::vector<int> codes) : codes_(std::move(codes)) {
    const std::size_t n = codes_.size();
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("labeling size must be a power of two >= 2");
    std::vector<bool> seen(n, false);
    for (int v : codes_) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("labeling must be a permutation of 0..M-1");
        seen[static_cast<std::size_t>(v)] = true;
    }
    bits_ = log2_exact(n);
}

BitProbabilities::BitProbabilities(std::vector<double> p0) : p0_(std::move(p0)) {
    if (p0_.empty()) throw std::invalid_argument("bit probabilities are empty");
    for (double v : p0_)
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument("bit probabilities must lie strictly inside (0,1)");
}

double BitProbabilities::prob(int k, int b) const {
    if (k < 1 || k > bits()) throw std::out_of_range("bit position out of range");
    const double p = p0_[static_cast<std::size_t>(k - 1)];
    return b == 0 ? p : 1.0 - p;
}

Ratio Ratio::of(long long num, long long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) num = -num, den = -den;
    const long long g = gcd_ll(num < 0 ? -num : num, den);
    return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

std::string Ratio::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

int bit_of(const Labeling& lab, std::size_t index, int k) {
    if (index >= lab.size()) throw std::out_of_range("symbol index out of range");
    if (k < 1 || k > lab.bits()) throw std::out_of_range("bit position out of range");
    return (lab[index] >> (lab.bits() - k)) & 1;
}

SubconstellationIndex subconstellation(const Labeling& lab, int k, int b) {
    require_position(lab, k, b);
    SubconstellationIndex sub{k, b, {}};
    sub.indices.reserve(lab.size() / 2);
    for (std::size_t i = 0; i < lab.size(); ++i)
        if (bit_of(lab, i, k) == b) sub.indices.push_back(i);
    return sub;
}

Labeling nbc(int bits) {
    require_bits(bits);
    std::vector<int> codes(std::size_t{1} << bits);
    std::iota(codes.begin(), codes.end(), 0);
    return Labeling(std::move(codes));
}

Labeling brgc(int bits) {
    require_bits(bits);
    std::vector<int> codes(std::size_t{1} << bits);
    for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = static_cast<int>(i ^ (i >> 1));
    return Labeling(std::move(codes));
}

Labeling agc(int bits) {
    require_bits(bits);
    std::vector<int> rows{0, 1};
    for (int order = 2; order <= bits; ++order) {
        const std::size_t size = rows.size() * 2;
        // reverse and append
        std::vector<int> next(rows);
        next.insert(next.end(), rows.rbegin(), rows.rend());
        // prepend the alternating 0,1,0,1,... column as the new MSB
        for (std::size_t i = 0; i < size; ++i) next[i] |= static_cast<int>(i & 1) << (order - 1);
        // negate the lower half
        const int all_ones = static_cast<int>(size) - 1;
        for (std::size_t i = size / 2; i < size; ++i) next[i] ^= all_ones;
        rows = std::move(next);
    }
    return Labeling(std::move(rows));
}

bool is_gray(const Constellation& c, const Labeling& lab) {
    require_sizes(c, lab);
    for (std::size_t i : med_pairs(c))
        if (std::popcount(static_cast<unsigned>(lab[i] ^ lab[i + 1])) != 1) return false;
    return true;
}

int c_constant(const Constellation& c, const Labeling& lab) {
    require_sizes(c, lab);
    const auto pairs = med_pairs(c);
    return c_from_codes(pairs, lab.codes().data());
}

int subconstellation_a(const Constellation& c, const Labeling& lab, int k, int b) {
    require_sizes(c, lab);
    require_position(lab, k, b);
    const double d = med(c);
    const auto sub = subconstellation(lab, k, b);
    int pairs = 0;
    // The subconstellation may hold non-adjacent points, so scan all pairs.
    for (std::size_t u = 0; u < sub.indices.size(); ++u)
        for (std::size_t v = u + 1; v < sub.indices.size(); ++v)
            if (at_med(c[sub.indices[v]] - c[sub.indices[u]], d)) ++pairs;
    return 2 * pairs;
}

int c_constant_from_subsets(const Constellation& c, const Labeling& lab) {
    require_sizes(c, lab);
    const int a = a_constant(c);
    int total = 0;
    for (int k = 1; k <= lab.bits(); ++k)
        total += a - subconstellation_a(c, lab, k, 0) - subconstellation_a(c, lab, k, 1);
    return total;
}

InputDistribution induced_distribution(const Labeling& lab, const BitProbabilities& bp) {
    if (bp.bits() != lab.bits())
        throw std::invalid_argument("bit probabilities and labeling orders differ");
    std::vector<double> p(lab.size(), 1.0);
    for (std::size_t i = 0; i < lab.size(); ++i)
        for (int k = 1; k <= lab.bits(); ++k) p[i] *= bp.prob(k, bit_of(lab, i, k));
    // Renormalize away rounding so the sum check holds for any order.
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= total;
    return InputDistribution(std::move(p));
}

double bit_marginal(const InputDistribution& p, const Labeling& lab, int k, int b) {
    if (p.size() != lab.size()) throw std::invalid_argument("distribution and labeling sizes differ");
    require_position(lab, k, b);
    double mass = 0.0;
    for (std::size_t i = 0; i < lab.size(); ++i)
        if (bit_of(lab, i, k) == b) mass += p[i];
    return mass;
}

std::vector<double> conditional_distribution(const InputDistribution& p, const Labeling& lab,
                                             int k, int b) {
    const double mass = bit_marginal(p, lab, k, b);
    if (!(mass > 0.0)) throw std::domain_error("subconstellation has zero probability mass");
    std::vector<double> cond(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (bit_of(lab, i, k) == b) cond[i] = p[i] / mass;
    return cond;
}

double d_constant(const Constellation& c, const InputDistribution& p, const Labeling& lab) {
    require_sizes(c, lab);
    if (p.size() != c.size()) throw std::invalid_argument("distribution size differs");
    double d = 0.0;
    for (std::size_t i : med_pairs(c)) {
        const int differing = std::popcount(static_cast<unsigned>(lab[i] ^ lab[i + 1]));
        d += 2.0 * differing * std::sqrt(p[i] * p[i + 1]);
    }
    return d;
}

double r_value(const Constellation& c, const InputDistribution& p, const Labeling& lab) {
    return d_constant(c, p, lab) / b_constant(c, p);
}

Ratio r_value_uniform(const Constellation& c, const Labeling& lab) {
    return Ratio::of(c_constant(c, lab), a_constant(c));
}

int c_upper_bound(const Constellation& c) {
    const int a = a_constant(c);
    const int m = c.bits();
    return std::min(m * a, (m - 1) * a + static_cast<int>(c.size()));
}

Ratio r_upper_bound(const Constellation& c) { return Ratio::of(c_upper_bound(c), a_constant(c)); }

int class_count_bound(const Constellation& c) {
    const int a = a_constant(c);
    const int m = c.bits();
    const int size = static_cast<int>(c.size());
    return std::min((m - 1) * a + 2, (m - 2) * a + size + 2) / 2;
}

ClassTable enumerate_classes(const Constellation& c) {
    if (c.size() > kMaxEnumerationSize)
        throw std::invalid_argument("exhaustive enumeration supports M <= 8; use sampling");
    const auto pairs = med_pairs(c);
    ClassTable table;
    table.a = a_constant(c);
    std::vector<int> codes(c.size());
    std::iota(codes.begin(), codes.end(), 0);
    do {
        auto& entry = table.by_c[c_from_codes(pairs, codes.data())];
        if (entry.count++ == 0) entry.representative = codes;
        ++table.total;
    } while (std::next_permutation(codes.begin(), codes.end()));
    return table;
}

ClassTable sample_classes(const Constellation& c, std::uint64_t samples, std::uint64_t seed,
                          unsigned threads) {
    if (samples < 1) throw std::invalid_argument("sample count must be at least 1");
    const auto pairs = med_pairs(c);
    const std::size_t size = c.size();
    constexpr std::uint64_t kChunk = 1 << 16;
    const std::size_t chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);

    // C is at most 2 m (M - 1), so per-chunk counts fit a flat array.
    const std::size_t max_c = 2 * static_cast<std::size_t>(c.bits()) * (size - 1);
    struct Partial {
        std::vector<std::uint64_t> counts;
        std::vector<std::vector<int>> reps;
    };
    std::vector<Partial> partial(chunks);
    detail::parallel_for(chunks, threads, [&](std::size_t chunk) {
        auto& local = partial[chunk];
        local.counts.assign(max_c + 1, 0);
        local.reps.resize(max_c + 1);
        std::vector<int> codes(size);
        const std::uint64_t begin = chunk * kChunk;
        const std::uint64_t end = std::min(samples, begin + kChunk);
        for (std::uint64_t s = begin; s < end; ++s) {
            detail::SplitMix64 gen(detail::stream_seed(seed, s));
            std::iota(codes.begin(), codes.end(), 0);
            std::shuffle(codes.begin(), codes.end(), gen);
            const auto cval = static_cast<std::size_t>(c_from_codes(pairs, codes.data()));
            if (local.counts[cval]++ == 0) local.reps[cval] = codes;
        }
    });

    ClassTable table;
    table.a = a_constant(c);
    table.total = samples;
    for (auto& local : partial)
        for (std::size_t cval = 0; cval <= max_c; ++cval) {
            if (local.counts[cval] == 0) continue;
            auto& merged = table.by_c[static_cast<int>(cval)];
            if (merged.count == 0) merged.representative = local.reps[cval];
            merged.count += local.counts[cval];
        }
    return table;
}

}  // namespace casym
