#include "stallings/enumrand.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "stallings/errors.hpp"
#include "stallings/intersect.hpp"
#include "stallings/spectra.hpp"
#include "stallings/subgroup.hpp"

namespace stallings {

namespace {

BigInt factorial(std::size_t k) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

BigInt ipow(const BigInt& b, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Orderly generation of saturated automata already in BFS-canonical labeling:
// slots are filled in the order the canonical BFS reads them, and a fresh
// target always gets the next unused label.
class IndexEnumerator {
 public:
  IndexEnumerator(std::size_t k, std::size_t n, std::size_t max_results)
      : k_(k), codes_(2 * n), alphabet_(n), max_results_(max_results),
        img_(k * 2 * n, kNoVertex) {}

  std::vector<SubgroupHandle> run() {
    count_ = 1;
    step(0);
    return std::move(out_);
  }

 private:
  Vertex& slot(Vertex v, std::size_t c) { return img_[v * codes_ + c]; }

  void step(std::size_t s) {
    if (s == k_ * codes_) {
      if (count_ == k_) emit();
      return;
    }
    const auto v = static_cast<Vertex>(s / codes_);
    const std::size_t c = s % codes_;
    if (v >= count_) return;  // unreachable from 0
    if (slot(v, c) != kNoVertex) {
      step(s + 1);
      return;
    }
    for (Vertex w = 0; w < count_; ++w) {
      if (slot(w, c ^ 1) != kNoVertex) continue;
      slot(v, c) = w;
      slot(w, c ^ 1) = v;
      step(s + 1);
      slot(w, c ^ 1) = kNoVertex;
      slot(v, c) = kNoVertex;
    }
    if (count_ < k_) {
      auto w = static_cast<Vertex>(count_++);
      slot(v, c) = w;
      slot(w, c ^ 1) = v;
      step(s + 1);
      slot(w, c ^ 1) = kNoVertex;
      slot(v, c) = kNoVertex;
      --count_;
    }
  }

  void emit() {
    if (out_.size() == max_results_) {
      throw ResourceLimit("more than " + std::to_string(max_results_) + " subgroups of this index");
    }
    InvAutomaton aut(alphabet_, k_, 0);
    for (Vertex v = 0; v < k_; ++v) {
      for (std::size_t x = 0; x < alphabet_.rank; ++x) aut.add_arc(v, x, slot(v, 2 * x));
    }
    out_.emplace_back(aut);
  }

  std::size_t k_, codes_;
  Alphabet alphabet_;
  std::size_t max_results_;
  std::vector<Vertex> img_;
  std::size_t count_ = 0;
  std::vector<SubgroupHandle> out_;
};

bool pointed_core(const InvAutomaton& aut) {
  if (!aut.is_connected()) return false;
  for (Vertex v = 0; v < aut.num_vertices(); ++v) {
    if (v != aut.basepoint() && aut.degree(v) < 2) return false;
  }
  return true;
}

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

BigInt hall_count(std::size_t k, std::size_t n) {
  if (k == 0 || n == 0) throw InvalidInput("hall_count needs k >= 1 and n >= 1");
  std::vector<BigInt> fact(k + 1), memo(k + 1);
  for (std::size_t i = 0; i <= k; ++i) fact[i] = ipow(factorial(i), n - 1);
  for (std::size_t j = 1; j <= k; ++j) {
    BigInt v = BigInt(j) * fact[j];
    for (std::size_t i = 1; i < j; ++i) v -= fact[j - i] * memo[i];
    memo[j] = v;
  }
  return memo[k];
}

std::vector<SubgroupHandle> enumerate_index(std::size_t k, std::size_t n, const EnumerationCaps& caps) {
  if (k == 0 || n == 0) throw InvalidInput("enumerate_index needs k >= 1 and n >= 1");
  if (k > caps.max_k || n > caps.max_n) {
    throw ResourceLimit("enumeration capped at k <= " + std::to_string(caps.max_k) + ", n <= " +
                        std::to_string(caps.max_n));
  }
  return IndexEnumerator(k, n, caps.max_results).run();
}

SampleRng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return SampleRng(splitmix64(splitmix64(seed) ^ trial));
}

PartialInjection random_partial_injection(std::size_t k, SampleRng& rng) {
  // Domain size m has weight C(k,m)^2 m!.
  std::vector<double> logw(k + 1);
  const double lk = std::lgamma(static_cast<double>(k) + 1);
  for (std::size_t m = 0; m <= k; ++m) {
    const double dm = static_cast<double>(m);
    logw[m] = 2 * lk - std::lgamma(dm + 1) - 2 * std::lgamma(static_cast<double>(k - m) + 1);
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(k + 1);
  for (std::size_t m = 0; m <= k; ++m) w[m] = std::exp(logw[m] - top);
  std::discrete_distribution<std::size_t> pick_m(w.begin(), w.end());
  const std::size_t m = pick_m(rng);

  auto prefix = [&](std::vector<Vertex>& xs) {
    for (std::size_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::size_t> d(i, k - 1);
      std::swap(xs[i], xs[d(rng)]);
    }
  };
  std::vector<Vertex> dom(k), img(k);
  std::iota(dom.begin(), dom.end(), 0);
  std::iota(img.begin(), img.end(), 0);
  prefix(dom);
  prefix(img);
  PartialInjection p(k);
  for (std::size_t i = 0; i < m; ++i) p.set(dom[i], img[i]);
  return p;
}

InvAutomaton tuple_automaton(const Alphabet& a, const PartialInjectionTuple& t) {
  if (t.size() != a.rank) throw InvalidInput("one partial injection per letter expected");
  const std::size_t k = t.empty() ? 1 : t.front().size();
  InvAutomaton aut(a, k, 0);
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t[x].size() != k) throw InvalidInput("partial injections on different sets");
    for (Vertex v = 0; v < k; ++v) {
      if (t[x].image(v) != kNoVertex) aut.add_arc(v, x, t[x].image(v));
    }
  }
  return aut;
}

Sample sample_subgroup_counted(std::size_t k, std::size_t n, SampleRng& rng) {
  if (k == 0) throw InvalidInput("sample size must be >= 1");
  Alphabet a(n);
  std::size_t rejections = 0;
  while (true) {
    PartialInjectionTuple t;
    t.reserve(n);
    for (std::size_t x = 0; x < n; ++x) t.push_back(random_partial_injection(k, rng));
    InvAutomaton aut = tuple_automaton(a, t);
    if (pointed_core(aut)) return {SubgroupHandle(aut), rejections};
    ++rejections;
  }
}

SubgroupHandle sample_subgroup(std::size_t k, std::size_t n, std::uint64_t seed) {
  SampleRng rng = trial_rng(seed, 0);
  return sample_subgroup_counted(k, n, rng).handle;
}

double SampleStats::predicted_rank() const {
  const double dk = static_cast<double>(k), dn = static_cast<double>(n);
  return (dn - 1) * dk - dn * std::sqrt(dk) + 1;
}

SampleStats rank_stats(std::size_t k, std::size_t n, std::size_t trials, std::uint64_t seed,
                       const StatsOptions& options) {
  if (trials == 0) throw InvalidInput("trials must be >= 1");
  SampleStats s;
  s.k = k;
  s.n = n;
  s.trials = trials;
  double rank_sum = 0, size_sum = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    SampleRng rng = trial_rng(seed, t);
    Sample smp = sample_subgroup_counted(k, n, rng);
    s.rejections += smp.rejections;
    rank_sum += static_cast<double>(smp.handle.rank());
    size_sum += static_cast<double>(smp.handle.size());
    if (options.purity) {
      auto pure = is_pure_bounded(smp.handle, options.purity_states);
      if (!pure) {
        ++s.purity_undetermined;
      } else if (*pure) {
        ++s.pure;
      }
    }
    if (options.malnormality && is_malnormal(smp.handle).malnormal) ++s.malnormal;
  }
  s.mean_rank = rank_sum / static_cast<double>(trials);
  s.mean_size = size_sum / static_cast<double>(trials);
  return s;
}

std::string stats_csv_header() { return "k,n,trials,mean_rank,predicted_rank,purity_freq,malnormal_freq"; }

std::string stats_csv_row(const SampleStats& s) {
  return std::to_string(s.k) + "," + std::to_string(s.n) + "," + std::to_string(s.trials) + "," +
         fixed4(s.mean_rank) + "," + fixed4(s.predicted_rank()) + "," + fixed4(s.purity_freq()) + "," +
         fixed4(s.malnormal_freq());
}

PartitionReport partition_check(const std::vector<std::pair<SubgroupHandle, Word>>& cosets) {
  PartitionReport report;
  if (cosets.empty()) return report;
  std::vector<std::size_t> indices;
  for (const auto& [h, u] : cosets) {
    IndexReport r = index(h);
    if (!r.finite) return report;
    indices.push_back(r.index);
  }
  report.indices = indices;
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    for (std::size_t j = i + 1; j < cosets.size(); ++j) {
      if (coset_intersect(cosets[i].first, cosets[i].second, cosets[j].first, cosets[j].second)) {
        report.overlapping = std::make_pair(i, j);
        return report;
      }
    }
  }
  boost::multiprecision::cpp_rational total = 0;
  for (std::size_t d : indices) total += boost::multiprecision::cpp_rational(1, d);
  if (total != 1) return report;
  std::set<std::size_t> distinct(indices.begin(), indices.end());
  report.verdict = indices.size() >= 2 && distinct.size() < indices.size()
                       ? PartitionVerdict::partition_with_multiplicity
                       : PartitionVerdict::partition_without_multiplicity;
  return report;
}

std::string to_string(PartitionVerdict v) {
  switch (v) {
    case PartitionVerdict::not_partition: return "not_partition";
    case PartitionVerdict::partition_with_multiplicity: return "partition_with_multiplicity";
    case PartitionVerdict::partition_without_multiplicity: return "partition_without_multiplicity";
  }
  return "";
}

}  // namespace stallings
