#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "casym/core_model.hpp"

namespace casym {

/// Binary labeling: codes[i] is the integer label of symbol i (0-based index).
/// Bit positions are 1-based and most-significant first.
class Labeling {
public:
    explicit Labeling(std::vector<int> codes);

    std::span<const int> codes() const { return codes_; }
    int operator[](std::size_t i) const { return codes_[i]; }
    std::size_t size() const { return codes_.size(); }
    int bits() const { return bits_; }

    friend bool operator==(const Labeling&, const Labeling&) = default;

private:
    std::vector<int> codes_;
    int bits_ = 0;
};

/// P_{Q_k}(0) for k = 1..m, stored 0-based.
class BitProbabilities {
public:
    explicit BitProbabilities(std::vector<double> p0);

    std::span<const double> p0() const { return p0_; }
    int bits() const { return static_cast<int>(p0_.size()); }
    /// P_{Q_k}(b), k 1-based.
    double prob(int k, int b) const;

private:
    std::vector<double> p0_;
};

struct SubconstellationIndex {
    int k = 1;
    int b = 0;
    std::vector<std::size_t> indices;  // 0-based symbol indices, sorted
};

/// Exact ratio of two integers, kept reduced.
struct Ratio {
    long long num = 0;
    long long den = 1;

    static Ratio of(long long num, long long den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Bit k (1-based, MSB first) of the label of symbol `index` (0-based).
int bit_of(const Labeling& lab, std::size_t index, int k);

SubconstellationIndex subconstellation(const Labeling& lab, int k, int b);

Labeling nbc(int bits);
Labeling brgc(int bits);
Labeling agc(int bits);

bool is_gray(const Constellation& c, const Labeling& lab);

/// C by scanning MED pairs and counting differing bits.
int c_constant(const Constellation& c, const Labeling& lab);
/// C as sum over k of A - A_{k,0} - A_{k,1}.
int c_constant_from_subsets(const Constellation& c, const Labeling& lab);

/// Twice the number of MED pairs (full-constellation MED) inside X_{k,b}.
int subconstellation_a(const Constellation& c, const Labeling& lab, int k, int b);

InputDistribution induced_distribution(const Labeling& lab, const BitProbabilities& bp);

/// Marginal P_{Q_k}(b) = sum of p over X_{k,b}.
double bit_marginal(const InputDistribution& p, const Labeling& lab, int k, int b);

/// P_{X|Q_k}(.|b) over all M symbols (zero outside X_{k,b}).
std::vector<double> conditional_distribution(const InputDistribution& p, const Labeling& lab,
                                             int k, int b);

double d_constant(const Constellation& c, const InputDistribution& p, const Labeling& lab);

/// R = D/B. The BICM reading assumes p is induced by independent bits.
double r_value(const Constellation& c, const InputDistribution& p, const Labeling& lab);
/// Uniform-input R = C/A as an exact fraction.
Ratio r_value_uniform(const Constellation& c, const Labeling& lab);

int c_upper_bound(const Constellation& c);
Ratio r_upper_bound(const Constellation& c);
int class_count_bound(const Constellation& c);

struct ClassEntry {
    std::uint64_t count = 0;
    std::vector<int> representative;  // first labeling found with this C
};

struct ClassTable {
    int a = 0;
    std::uint64_t total = 0;
    std::map<int, ClassEntry> by_c;

    Ratio r_of(int c_value) const { return Ratio::of(c_value, a); }
};

inline constexpr std::size_t kMaxEnumerationSize = 8;

/// Exhaustive histogram of C over all M! labelings (M <= 8).
ClassTable enumerate_classes(const Constellation& c);

/// Histogram of C over `samples` uniformly random labelings.
/// Sample i is drawn from a generator seeded by (seed, i), so the result does
/// not depend on the number of worker threads.
ClassTable sample_classes(const Constellation& c, std::uint64_t samples, std::uint64_t seed,
                          unsigned threads = 0);

}  // namespace casym
