#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stallings/handle.hpp"

namespace stallings {

using BigInt = boost::multiprecision::cpp_int;

// Number of subgroups of index k in the free group of rank n.
BigInt hall_count(std::size_t k, std::size_t n);

struct EnumerationCaps {
  std::size_t max_k = 6;
  std::size_t max_n = 3;
  std::size_t max_results = 500'000;
};

// Every subgroup of index exactly k, in canonical order of generation.
std::vector<SubgroupHandle> enumerate_index(std::size_t k, std::size_t n, const EnumerationCaps& caps = {});

// One partial injection of {0..k-1} per letter.
using PartialInjectionTuple = std::vector<PartialInjection>;

// Engine used by the sampler. Trial t of seed s is seeded from splitmix64.
using SampleRng = std::mt19937_64;
inline constexpr const char* kSampleRngName = "mt19937_64+splitmix64(seed,trial)";
SampleRng trial_rng(std::uint64_t seed, std::uint64_t trial);

// Uniform over all partial injections on k points.
PartialInjection random_partial_injection(std::size_t k, SampleRng& rng);
InvAutomaton tuple_automaton(const Alphabet& a, const PartialInjectionTuple& t);

struct Sample {
  SubgroupHandle handle;
  std::size_t rejections = 0;
};

// Uniform over Stallings automata with exactly k vertices: redraw until the
// tuple is connected and every vertex other than 0 has degree >= 2.
Sample sample_subgroup_counted(std::size_t k, std::size_t n, SampleRng& rng);
SubgroupHandle sample_subgroup(std::size_t k, std::size_t n, std::uint64_t seed);

struct SampleStats {
  std::size_t k = 0, n = 0;
  std::size_t trials = 0;
  std::size_t rejections = 0;
  double mean_rank = 0;
  double mean_size = 0;
  std::size_t pure = 0;
  std::size_t purity_undetermined = 0;  // counted as not pure
  std::size_t malnormal = 0;
  std::string rng = kSampleRngName;

  double predicted_rank() const;  // (n-1)k - n sqrt(k) + 1
  double purity_freq() const { return static_cast<double>(pure) / static_cast<double>(trials); }
  double malnormal_freq() const { return static_cast<double>(malnormal) / static_cast<double>(trials); }
};

struct StatsOptions {
  bool purity = true;
  bool malnormality = true;
  std::size_t purity_states = 20'000;
};

SampleStats rank_stats(std::size_t k, std::size_t n, std::size_t trials, std::uint64_t seed,
                       const StatsOptions& options = {});

std::string stats_csv_header();
std::string stats_csv_row(const SampleStats& s);

enum class PartitionVerdict { not_partition, partition_with_multiplicity, partition_without_multiplicity };

struct PartitionReport {
  PartitionVerdict verdict = PartitionVerdict::not_partition;
  std::vector<std::size_t> indices;  // empty if some index is infinite
  std::optional<std::pair<std::size_t, std::size_t>> overlapping;  // a pair of cosets that meet
};

PartitionReport partition_check(const std::vector<std::pair<SubgroupHandle, Word>>& cosets);

std::string to_string(PartitionVerdict v);

}  // namespace stallings
