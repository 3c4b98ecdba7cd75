// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "agenda/rng.hpp"

namespace agenda {

using Candidate = std::int32_t;

/// The electorate: one seed per voter, each in {1..n}. A seed fully
/// determines the voter's clockwise preference list (s, s+1, ..., n, 1, ...),
/// so the full preference matrix is never materialized.
struct SeedVector {
  std::int32_t n = 0;
  std::vector<std::int32_t> seeds;

  SeedVector(std::int32_t n_candidates, std::vector<std::int32_t> s);
  std::int32_t m() const { return static_cast<std::int32_t>(seeds.size()); }
};

/// The agenda: the two-set split (A, B) of {1..n} for a given cluster width l
/// and rotation index, with precomputed ballot lookup tables.
///
/// For rotation 1, A = {1..l} plus every second candidate of the middle arc;
/// B is the complement. Rotation i shifts the whole picture by i-1. The
/// ballot tables map a voter's seed to the candidate receiving that voter's
/// vote in the A-election and in the B-election (the first member of the set
/// clockwise from the seed).
class Partition {
 public:
  Partition(int n, int l, int rotation = 1);

  int n() const { return n_; }
  int width() const { return l_; }
  int rotation() const { return rotation_; }
  /// Head candidate of A (the manipulation target); equals the rotation index.
  Candidate head_a() const { return rotation_; }
  /// Head candidate of B (rotated image of l+1).
  Candidate head_b() const { return ((l_ + rotation_ - 1) % n_) + 1; }

  bool in_a(Candidate c) const { return in_a_[static_cast<std::size_t>(c)] != 0; }
  Candidate ballot_a(std::int32_t seed) const { return map_a_[static_cast<std::size_t>(seed)]; }
  Candidate ballot_b(std::int32_t seed) const { return map_b_[static_cast<std::size_t>(seed)]; }

  /// Seed-indexed lookup tables (index 0 unused).
  std::span<const Candidate> ballot_map_a() const { return map_a_; }
  std::span<const Candidate> ballot_map_b() const { return map_b_; }

 private:
  int n_, l_, rotation_;
  std::vector<std::uint8_t> in_a_;
  std::vector<Candidate> map_a_, map_b_;
};

using VoteTally = std::map<Candidate, std::int64_t>;

VoteTally tally(const SeedVector& seeds, std::span<const Candidate> ballot_map);

/// Candidate holding the unique strict maximum, or nullopt on a tie.
std::optional<Candidate> unique_winner(const VoteTally& t);

enum class Stage : std::uint8_t { winner, void_in_a, void_in_b, void_in_final };

struct TwoRoundOutcome {
  Stage stage = Stage::void_in_final;
  Candidate winner = 0;  // meaningful only when stage == Stage::winner

  bool won_by(Candidate c) const { return stage == Stage::winner && winner == c; }
};

/// Pairwise vote between two candidates; every voter picks whichever comes
/// first clockwise from their seed. Strict majority wins, equality voids.
TwoRoundOutcome head_to_head(const SeedVector& seeds, Candidate first, Candidate second);

/// Full two-round resolution: A-election and B-election by strict unique
/// maximum (a tie anywhere voids the trial), then the two winners meet in
/// the final.
TwoRoundOutcome run_two_round(const SeedVector& seeds, const Partition& partition);

/// True iff every rotation i in {1..n} makes candidate i win its own
/// two-round election. Uses the seed-shift equivalence instead of rebuilding
/// n partitions.
bool universal_victory(const SeedVector& seeds, int n, int l);

/// m independent uniform draws from {1..n}.
SeedVector sample_seeds(int n, int m, rng::Stream& stream);

struct ExactProbability {
  std::uint64_t favorable = 0;
  std::uint64_t total = 0;
  double value() const { return static_cast<double>(favorable) / static_cast<double>(total); }
};

/// Exact P(candidate 1 wins) by enumerating all n^m seed vectors.
ExactProbability exact_p1_bruteforce(int n, int m, int l, std::uint64_t budget = 10'000'000);
/// Exact P(universal victory) by enumeration.
ExactProbability exact_p2_bruteforce(int n, int m, int l, std::uint64_t budget = 10'000'000);

namespace detail {

/// Reusable per-thread buffers for the allocation-free trial kernels.
struct TallyScratch {
  std::vector<Candidate> cand;
  std::vector<std::int32_t> count;
};

/// Two-round outcome with every seed rotated back by `shift` positions
/// (shift = i-1 evaluates rotation i of the agenda against rotation-1 maps).
TwoRoundOutcome run_two_round_shifted(std::span<const std::int32_t> seeds,
                                      const Partition& partition, int shift,
                                      TallyScratch& scratch);

bool universal_victory(std::span<const std::int32_t> seeds, const Partition& rotation1,
                       TallyScratch& scratch);

}  // namespace detail
}  // namespace agenda
