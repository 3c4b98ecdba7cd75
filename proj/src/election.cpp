// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#include "agenda/election.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace agenda {

SeedVector::SeedVector(std::int32_t n_candidates, std::vector<std::int32_t> s)
    : n(n_candidates), seeds(std::move(s)) {
  if (n < 1) throw std::invalid_argument("SeedVector: candidate count must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("SeedVector: voter count must be >= 1");
  for (const auto seed : seeds) {
    if (seed < 1 || seed > n)
      throw std::invalid_argument("SeedVector: seed " + std::to_string(seed) +
                                  " outside {1.." + std::to_string(n) + "}");
  }
}

Partition::Partition(int n, int l, int rotation) : n_(n), l_(l), rotation_(rotation) {
  if (n < 6 || n % 2 != 0)
    throw std::invalid_argument("degenerate partition: candidate count must be even and >= 6, got " +
                                std::to_string(n));
  if (l < 2 || l > n / 2 - 1)
    throw std::invalid_argument("degenerate partition: cluster width " + std::to_string(l) +
                                " out of range: valid l for n=" + std::to_string(n) + " is 2.." +
                                std::to_string(n / 2 - 1));
  if (rotation < 1 || rotation > n)
    throw std::invalid_argument("rotation index " + std::to_string(rotation) + " outside {1.." +
                                std::to_string(n) + "}");

  in_a_.assign(static_cast<std::size_t>(n) + 1, 0);
  const auto mark = [&](int base_candidate) {
    // rotation i maps candidate a of the i=1 picture to ((a+i-2) mod n)+1
    const int c = (base_candidate + rotation - 2) % n + 1;
    in_a_[static_cast<std::size_t>(c)] = 1;
  };
  for (int a = 1; a <= l; ++a) mark(a);
  for (int a = l + 2; a <= n - l; a += 2) mark(a);

  // ballot table: seed s votes for the first set member at or after s on the
  // cycle; two backward passes resolve the wrap in O(n)
  const auto build_map = [&](bool want_a, std::vector<Candidate>& map) {
    map.assign(static_cast<std::size_t>(n) + 1, 0);
    Candidate next = 0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int s = n; s >= 1; --s) {
        if ((in_a_[static_cast<std::size_t>(s)] != 0) == want_a) next = s;
        map[static_cast<std::size_t>(s)] = next;
      }
    }
  };
  build_map(true, map_a_);
  build_map(false, map_b_);
}

VoteTally tally(const SeedVector& seeds, std::span<const Candidate> ballot_map) {
  VoteTally counts;
  for (const auto s : seeds.seeds) ++counts[ballot_map[static_cast<std::size_t>(s)]];
  return counts;
}

std::optional<Candidate> unique_winner(const VoteTally& t) {
  Candidate best = 0;
  std::int64_t best_count = -1;
  int ties = 0;
  for (const auto& [cand, count] : t) {
    if (count > best_count) {
      best = cand;
      best_count = count;
      ties = 1;
    } else if (count == best_count) {
      ++ties;
    }
  }
  if (ties != 1) return std::nullopt;
  return best;
}

namespace detail {

namespace {

// Sparse tally over the mapped candidates; returns the strict-max candidate
// or 0 on a tie. At most min(m, n/2) distinct entries.
Candidate sparse_winner(std::span<const std::int32_t> seeds, std::span<const Candidate> map,
                        int shift, int n, TallyScratch& ws) {
  ws.cand.clear();
  ws.count.clear();
  for (const auto s : seeds) {
    int shifted = s - shift;
    if (shifted < 1) shifted += n;
    const Candidate c = map[static_cast<std::size_t>(shifted)];
    bool found = false;
    for (std::size_t i = 0; i < ws.cand.size(); ++i) {
      if (ws.cand[i] == c) {
        ++ws.count[i];
        found = true;
        break;
      }
    }
    if (!found) {
      ws.cand.push_back(c);
      ws.count.push_back(1);
    }
  }
  std::int32_t best = -1;
  int ties = 0;
  Candidate winner = 0;
  for (std::size_t i = 0; i < ws.cand.size(); ++i) {
    if (ws.count[i] > best) {
      best = ws.count[i];
      winner = ws.cand[i];
      ties = 1;
    } else if (ws.count[i] == best) {
      ++ties;
    }
  }
  return ties == 1 ? winner : 0;
}

}  // namespace

TwoRoundOutcome run_two_round_shifted(std::span<const std::int32_t> seeds,
                                      const Partition& partition, int shift,
                                      TallyScratch& ws) {
  const int n = partition.n();
  const Candidate a_winner = sparse_winner(seeds, partition.ballot_map_a(), shift, n, ws);
  if (a_winner == 0) return {Stage::void_in_a, 0};
  const Candidate b_winner = sparse_winner(seeds, partition.ballot_map_b(), shift, n, ws);
  if (b_winner == 0) return {Stage::void_in_b, 0};

  std::int64_t votes_a = 0;
  for (const auto s : seeds) {
    int shifted = s - shift;
    if (shifted < 1) shifted += n;
    const int da = (a_winner - shifted + n) % n;
    const int db = (b_winner - shifted + n) % n;
    if (da < db) ++votes_a;
  }
  const auto m = static_cast<std::int64_t>(seeds.size());
  if (2 * votes_a == m) return {Stage::void_in_final, 0};
  return {Stage::winner, 2 * votes_a > m ? a_winner : b_winner};
}

bool universal_victory(std::span<const std::int32_t> seeds, const Partition& rotation1,
                       TallyScratch& ws) {
  const int n = rotation1.n();
  for (int shift = 0; shift < n; ++shift) {
    if (!run_two_round_shifted(seeds, rotation1, shift, ws).won_by(1)) return false;
  }
  return true;
}

}  // namespace detail

TwoRoundOutcome head_to_head(const SeedVector& seeds, Candidate first, Candidate second) {
  if (first == second || first < 1 || second < 1 || first > seeds.n || second > seeds.n)
    throw std::invalid_argument("head_to_head: candidates must be distinct members of {1..n}");
  const int n = seeds.n;
  std::int64_t votes_first = 0;
  for (const auto s : seeds.seeds) {
    const int da = (first - s + n) % n;
    const int db = (second - s + n) % n;
    if (da < db) ++votes_first;
  }
  const auto m = static_cast<std::int64_t>(seeds.seeds.size());
  if (2 * votes_first == m) return {Stage::void_in_final, 0};
  return {Stage::winner, 2 * votes_first > m ? first : second};
}

TwoRoundOutcome run_two_round(const SeedVector& seeds, const Partition& partition) {
  if (seeds.n != partition.n())
    throw std::invalid_argument("run_two_round: seed vector and partition disagree on n");
  detail::TallyScratch ws;
  return detail::run_two_round_shifted(seeds.seeds, partition, 0, ws);
}

bool universal_victory(const SeedVector& seeds, int n, int l) {
  if (seeds.n != n) throw std::invalid_argument("universal_victory: seed vector built for different n");
  const Partition rotation1(n, l, 1);
  detail::TallyScratch ws;
  return detail::universal_victory(seeds.seeds, rotation1, ws);
}

SeedVector sample_seeds(int n, int m, rng::Stream& stream) {
  if (n < 1 || m < 1) throw std::invalid_argument("sample_seeds: need n >= 1 and m >= 1");
  std::vector<std::int32_t> s(static_cast<std::size_t>(m));
  for (auto& v : s) v = static_cast<std::int32_t>(stream.uniform_int(static_cast<std::uint32_t>(n))) + 1;
  return SeedVector(n, std::move(s));
}

namespace {

template <class Predicate>
ExactProbability enumerate_seed_vectors(int n, int m, std::uint64_t budget, Predicate&& pred) {
  if (m < 1) throw std::invalid_argument("enumeration requires m >= 1");
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) {
    if (total > budget / static_cast<std::uint64_t>(n))
      throw std::invalid_argument("enumeration budget exceeded: n^m > " + std::to_string(budget));
    total *= static_cast<std::uint64_t>(n);
  }
  std::vector<std::int32_t> seeds(static_cast<std::size_t>(m), 1);
  ExactProbability result{0, total};
  for (std::uint64_t k = 0; k < total; ++k) {
    if (pred(std::span<const std::int32_t>(seeds))) ++result.favorable;
    for (int j = 0; j < m; ++j) {  // odometer
      if (++seeds[static_cast<std::size_t>(j)] <= n) break;
      seeds[static_cast<std::size_t>(j)] = 1;
    }
  }
  return result;
}

}  // namespace

ExactProbability exact_p1_bruteforce(int n, int m, int l, std::uint64_t budget) {
  const Partition partition(n, l, 1);
  detail::TallyScratch ws;
  return enumerate_seed_vectors(n, m, budget, [&](std::span<const std::int32_t> seeds) {
    return detail::run_two_round_shifted(seeds, partition, 0, ws).won_by(1);
  });
}

ExactProbability exact_p2_bruteforce(int n, int m, int l, std::uint64_t budget) {
  const Partition partition(n, l, 1);
  detail::TallyScratch ws;
  return enumerate_seed_vectors(n, m, budget, [&](std::span<const std::int32_t> seeds) {
    return detail::universal_victory(seeds, partition, ws);
  });
}

}  // namespace agenda
