#pragma once

#include <cstdint>
#include <vector>

#include "aaosl/hoprel.hpp"
#include "aaosl/types.hpp"

namespace aaosl {

/// Size metrics of one normalized advancement proof. Digest counts cover the
/// per-hop datum digests plus the deduplicated off-path dependency digests;
/// the genesis digest is counted in one convention and omitted in the other
/// (it is known to every verifier in advance). raw_* are the counts without
/// cross-hop deduplication.
struct ProofSize {
  std::uint32_t hops = 0;
  std::uint32_t digests_incl_genesis = 0;
  std::uint32_t digests_excl_genesis = 0;
  std::uint32_t raw_incl_genesis = 0;
  std::uint32_t raw_excl_genesis = 0;
};

/// Walks the normalized path from j down to i, counting structure only; no
/// log or hashing involved. `seen` is an epoch-marked scratch array of size
/// > j used for deduplication across calls.
inline ProofSize measure_adv(const HopRelation& rel, Index i, Index j,
                             std::vector<std::uint32_t>& seen,
                             std::uint32_t epoch) {
  ProofSize out;
  Index cur = j;
  while (cur != i) {
    Level on_path = rel.single_hop_level(cur, i);
    Level m = rel.max_level(cur);
    ++out.hops;
    for (Level l = 1; l <= m; ++l) {
      if (l == on_path) continue;
      Index dep = rel.hop_target(cur, l);
      ++out.raw_incl_genesis;
      if (dep != 0) ++out.raw_excl_genesis;
      if (seen[dep] != epoch) {
        seen[dep] = epoch;
        ++out.digests_incl_genesis;
        if (dep != 0) ++out.digests_excl_genesis;
      }
    }
    cur = rel.hop_target(cur, on_path);
  }
  // one datum digest per hop, in every convention
  out.digests_incl_genesis += out.hops;
  out.digests_excl_genesis += out.hops;
  out.raw_incl_genesis += out.hops;
  out.raw_excl_genesis += out.hops;
  return out;
}

struct CensusReport {
  Index n = 0;
  std::uint64_t pairs = 0;

  // longest proof; ties broken by digest count, so the reported pair is
  // both the longest and the largest among the longest
  std::uint32_t max_hops = 0;
  Index max_hops_i = 0, max_hops_j = 0;

  std::uint32_t max_digests_incl_genesis = 0;
  Index max_digests_incl_i = 0, max_digests_incl_j = 0;
  std::uint32_t max_digests_excl_genesis = 0;
  Index max_digests_excl_i = 0, max_digests_excl_j = 0;

  double mean_digests_incl_genesis = 0;
  double mean_digests_excl_genesis = 0;
  double mean_dedup_savings_incl_genesis = 0;
  double mean_dedup_savings_excl_genesis = 0;
};

/// Examines every normalized advancement proof between indexes 1 <= i < j < n.
inline CensusReport census(Index n, const HopRelation& rel = pow2_relation()) {
  if (n < 2) throw Error(Errc::invalid_range, "census needs n >= 2");
  CensusReport r;
  r.n = n;
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t epoch = 0;
  std::uint64_t sum_incl = 0, sum_excl = 0, sum_raw_incl = 0, sum_raw_excl = 0;
  std::uint32_t max_digests_at_max_hops = 0;
  for (Index j = 2; j < n; ++j) {
    for (Index i = 1; i < j; ++i) {
      ProofSize s = measure_adv(rel, i, j, seen, ++epoch);
      ++r.pairs;
      sum_incl += s.digests_incl_genesis;
      sum_excl += s.digests_excl_genesis;
      sum_raw_incl += s.raw_incl_genesis;
      sum_raw_excl += s.raw_excl_genesis;
      if (s.hops > r.max_hops ||
          (s.hops == r.max_hops &&
           s.digests_incl_genesis > max_digests_at_max_hops)) {
        r.max_hops = s.hops;
        max_digests_at_max_hops = s.digests_incl_genesis;
        r.max_hops_i = i;
        r.max_hops_j = j;
      }
      if (s.digests_incl_genesis > r.max_digests_incl_genesis) {
        r.max_digests_incl_genesis = s.digests_incl_genesis;
        r.max_digests_incl_i = i;
        r.max_digests_incl_j = j;
      }
      if (s.digests_excl_genesis > r.max_digests_excl_genesis) {
        r.max_digests_excl_genesis = s.digests_excl_genesis;
        r.max_digests_excl_i = i;
        r.max_digests_excl_j = j;
      }
    }
  }
  if (r.pairs > 0) {
    double pairs = static_cast<double>(r.pairs);
    r.mean_digests_incl_genesis = static_cast<double>(sum_incl) / pairs;
    r.mean_digests_excl_genesis = static_cast<double>(sum_excl) / pairs;
    r.mean_dedup_savings_incl_genesis =
        static_cast<double>(sum_raw_incl - sum_incl) / pairs;
    r.mean_dedup_savings_excl_genesis =
        static_cast<double>(sum_raw_excl - sum_excl) / pairs;
  }
  return r;
}

}  // namespace aaosl
