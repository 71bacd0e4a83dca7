#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "aaosl/types.hpp"

namespace aaosl {

/// Deterministic dependency relation between log indexes.
///
/// An index j has max_level(j) outgoing hops; hop l (1-based) lands on
/// hop_target(j, l) < j. Implementations must satisfy the laws checked by
/// check_hop_laws: max_level(0) = 0, max_level(j) > 0 for j > 0, targets
/// injective in the level for a fixed source, targets strictly below the
/// source, and no two hops properly crossing.
class HopRelation {
 public:
  virtual ~HopRelation() = default;

  virtual Level max_level(Index j) const = 0;

  /// pre: 1 <= l <= max_level(j)
  virtual Index hop_target(Index j, Level l) const = 0;

  /// Level of the hop from `from` making the most progress toward `to`
  /// without overshooting it. pre: to < from
  virtual Level single_hop_level(Index from, Index to) const {
    if (to >= from)
      throw Error(Errc::invalid_range, "single_hop_level requires to < from");
    Level best = 0;
    Index best_tgt = from;
    for (Level l = 1; l <= max_level(from); ++l) {
      Index t = hop_target(from, l);
      if (t >= to && (best == 0 || t <= best_tgt)) {
        best = l;
        best_tgt = t;
      }
    }
    if (best == 0)
      throw Error(Errc::invalid_range, "no hop reaches down to target");
    return best;
  }

  /// Targets of all hops out of j, in level order. Empty for j = 0.
  std::vector<Index> deps_of(Index j) const {
    std::vector<Index> deps;
    Level m = max_level(j);
    deps.reserve(m);
    for (Level l = 1; l <= m; ++l) deps.push_back(hop_target(j, l));
    return deps;
  }

 protected:
  void require_level(Index j, Level l) const {
    if (l < 1 || l > max_level(j))
      throw Error(Errc::level_out_of_range,
                  "level " + std::to_string(l) + " not in [1, " +
                      std::to_string(max_level(j)) + "] for index " +
                      std::to_string(j));
  }
};

/// The power-of-two skiplog relation: hop l from j skips 2^(l-1) entries.
class Pow2HopRelation final : public HopRelation {
 public:
  /// Recursive definition: 0 for genesis, otherwise one more than the
  /// number of times the index halves evenly.
  Level max_level(Index j) const override {
    if (j == 0) return 0;
    Level lvl = 1;
    while ((j & 1) == 0) {
      j >>= 1;
      ++lvl;
    }
    return lvl;
  }

  Index hop_target(Index j, Level l) const override {
    require_level(j, l);
    return j - (Index{1} << (l - 1));
  }

  /// min(1 + floor(log2(from - to)), max_level(from)), via bit arithmetic.
  Level single_hop_level(Index from, Index to) const override {
    if (to >= from)
      throw Error(Errc::invalid_range, "single_hop_level requires to < from");
    Level by_gap = static_cast<Level>(std::bit_width(from - to));
    Level cap = max_level(from);
    return by_gap < cap ? by_gap : cap;
  }
};

/// Shared instance of the power-of-two relation.
inline const Pow2HopRelation& pow2_relation() {
  static const Pow2HopRelation rel;
  return rel;
}

/// Closed form of Pow2HopRelation::max_level via the odd-factor
/// decomposition j = 2^l * d: returns l + 1. Kept as a second route for the
/// equivalence scan.
inline Level pow2_max_level_closed_form(Index j) {
  if (j == 0) return 0;
  return static_cast<Level>(std::countr_zero(j)) + 1;
}

struct LawViolation {
  std::string law;
  Index j1 = 0;
  Level l1 = 0;
  Index j2 = 0;
  Level l2 = 0;
  std::string detail;
};

struct LawReport {
  std::uint64_t hops_checked = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<LawViolation> violations;

  bool clean() const { return violations.empty(); }
};

/// Exhaustively checks the hop-relation laws over all hops with sources <= n:
/// genesis has no hops, every other index has at least one, targets are
/// injective per source and strictly below it, and no pair of hops crosses.
/// Violations are reported, not thrown.
inline LawReport check_hop_laws(const HopRelation& rel, Index n) {
  LawReport report;
  struct Hop {
    Index src;
    Level lvl;
    Index tgt;
  };
  std::vector<Hop> hops;

  if (rel.max_level(0) != 0)
    report.violations.push_back(
        {"maxlvl-z", 0, 0, 0, 0, "max_level(0) must be 0"});

  for (Index j = 1; j <= n; ++j) {
    Level m = rel.max_level(j);
    if (m == 0) {
      report.violations.push_back(
          {"maxlvl-s", j, 0, 0, 0, "max_level must be positive"});
      continue;
    }
    for (Level l = 1; l <= m; ++l) {
      Index t = rel.hop_target(j, l);
      if (t >= j)
        report.violations.push_back(
            {"hop-progress", j, l, 0, 0,
             "target " + std::to_string(t) + " not below source"});
      for (auto it = hops.rbegin(); it != hops.rend() && it->src == j; ++it) {
        if (it->tgt == t)
          report.violations.push_back(
              {"hop-injective", j, it->lvl, j, l,
               "levels share target " + std::to_string(t)});
      }
      hops.push_back({j, l, t});
    }
  }
  report.hops_checked = hops.size();

  // no-cross: tgt(h2) < tgt(h1) and tgt(h1) < j2 implies j1 <= j2
  for (const Hop& h1 : hops) {
    for (const Hop& h2 : hops) {
      ++report.pairs_checked;
      if (h2.tgt < h1.tgt && h1.tgt < h2.src && !(h1.src <= h2.src)) {
        report.violations.push_back(
            {"hop-no-cross", h1.src, h1.lvl, h2.src, h2.lvl,
             "hop " + std::to_string(h1.src) + "->" + std::to_string(h1.tgt) +
                 " crosses hop " + std::to_string(h2.src) + "->" +
                 std::to_string(h2.tgt)});
      }
    }
  }
  return report;
}

/// Every index strictly inside a hop's span has a lower maximum level than
/// the hop itself: for a hop from j at level l and i < k < j, max_level(k)
/// is at most l - 1. Exhaustive for sources <= n.
inline LawReport check_mid_levels(const HopRelation& rel, Index n) {
  LawReport report;
  for (Index j = 1; j <= n; ++j) {
    Level m = rel.max_level(j);
    for (Level l = 1; l <= m; ++l) {
      Index i = rel.hop_target(j, l);
      ++report.hops_checked;
      for (Index k = i + 1; k < j; ++k) {
        ++report.pairs_checked;
        if (rel.max_level(k) + 1 > l)
          report.violations.push_back(
              {"lvl-mid", j, l, k, rel.max_level(k),
               "index inside span exceeds hop level"});
      }
    }
  }
  return report;
}

/// Recursive max_level against the closed form, for all j <= n.
inline LawReport check_max_level_equivalence(Index n) {
  LawReport report;
  const Pow2HopRelation rel;
  for (Index j = 0; j <= n; ++j) {
    ++report.pairs_checked;
    if (rel.max_level(j) != pow2_max_level_closed_form(j))
      report.violations.push_back(
          {"maxlvl-equiv", j, rel.max_level(j), j,
           pow2_max_level_closed_form(j), "recursive and closed form differ"});
  }
  return report;
}

}  // namespace aaosl
