#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aaosl/aaosl.hpp"

// Test-support oracles kept independent of the library's verification path:
// a literal structurally-recursive rebuild, and the builder for the
// two-advancement/two-membership scenario with its special shared indexes.

namespace oracle {

using namespace aaosl;

namespace detail {

inline View brute_rebuild_rec(std::span<const PathHop> hops, View view,
                              const AuthScheme& scheme,
                              const HopRelation& rel) {
  if (hops.empty()) return view;
  const PathHop& top = hops.front();
  View inner = brute_rebuild_rec(hops.subspan(1), std::move(view), scheme, rel);
  std::vector<Digest> deps;
  for (Index dep : rel.deps_of(top.source)) deps.push_back(inner.at(dep));
  inner[top.source] =
      authenticate(scheme, rel, top.source, top.datum_digest, deps);
  return inner;
}

}  // namespace detail

/// Literal recursion: rebuild the tail first, then authenticate the hop's
/// source over the resulting view. Cross-checks the iterative rebuild.
/// The caller seeds the anchor and genesis bindings, as with rebuild().
inline View brute_rebuild(const AdvPath& path, View view,
                          const AuthScheme& scheme, const HopRelation& rel) {
  return detail::brute_rebuild_rec(path.hops(), std::move(view), scheme, rel);
}

/// Advancement bundle that provably visits `through`: the composition of
/// the normalized proofs through -> j and lo -> through, with merged views.
inline ProofBundle adv_via(const LogStore& store, Index lo, Index through,
                           Index j) {
  ProofBundle upper = mk_adv(store, through, j);
  ProofBundle lower = mk_adv(store, lo, through);
  ProofBundle out{
      compose(upper.path, lower.path, store.hop_relation()),
      std::move(lower.view),
      std::nullopt,
  };
  out.view.insert(upper.view.begin(), upper.view.end());
  return out;
}

struct EvoCrScenario {
  Index j = 0, s1 = 0, s2 = 0, tgt = 0, i1 = 0, i2 = 0;
  ProofBundle a1, a2;  // advancement bundles to j visiting s1 / s2
  ProofBundle m1, m2;  // membership bundles s1 -> tgt, s2 -> tgt

  // split segments: a1 = a11 (+) a12 at s1, a2 = a21 (+) a22 at s2,
  // m1 = m11 (+) m12 at R, m2 = m21 (+) m22 at M
  AdvPath a11, a12, a21, a22, m11, m12, m21, m22;

  Index m_index = 0;  // shared by a11, a22 and m2's path
  Index r_index = 0;  // shared by a12, m1's path and m2's path
};

/// Builds the scenario and asserts the shared-visitation facts that the
/// no-cross law guarantees. Throws std::logic_error if any fact fails.
/// pre: 1 <= tgt <= s1 <= s2 <= j < size, i1 <= tgt, i2 <= tgt.
inline EvoCrScenario build_evocr_scenario(const LogStore& store, Index j,
                                          Index s1, Index s2, Index tgt,
                                          Index i1, Index i2) {
  if (!(1 <= tgt && tgt <= s1 && s1 <= s2 && s2 <= j && j < store.size() &&
        i1 <= tgt && i2 <= tgt))
    throw std::logic_error("bad scenario endpoints");
  const HopRelation& rel = store.hop_relation();

  EvoCrScenario sc{
      .j = j,
      .s1 = s1,
      .s2 = s2,
      .tgt = tgt,
      .i1 = i1,
      .i2 = i2,
      .a1 = adv_via(store, i1, s1, j),
      .a2 = adv_via(store, i2, s2, j),
      .m1 = mk_membership(store, tgt, s1),
      .m2 = mk_membership(store, tgt, s2),
      .a11 = AdvPath::done(0),
      .a12 = AdvPath::done(0),
      .a21 = AdvPath::done(0),
      .a22 = AdvPath::done(0),
      .m11 = AdvPath::done(0),
      .m12 = AdvPath::done(0),
      .m21 = AdvPath::done(0),
      .m22 = AdvPath::done(0),
  };

  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("scenario fact failed: " + what);
  };

  std::tie(sc.a11, sc.a12) = split_at(sc.a1.path, s1, rel);
  std::tie(sc.a21, sc.a22) = split_at(sc.a2.path, s2, rel);

  // the reference index itself serves whenever the segment visits it; the
  // nearest visited index works otherwise (no-cross makes it shared)
  sc.m_index = sc.a11.visits(s2) ? s2 : last_bef(sc.a11, s2);
  require(sc.a11.visits(sc.m_index), "M in a11");
  require(sc.a22.visits(sc.m_index), "M in a22");
  require(sc.m2.path.visits(sc.m_index), "M in m2");

  sc.r_index = sc.a12.visits(tgt) ? tgt : first_aft(sc.a12, tgt);
  require(sc.a12.visits(sc.r_index), "R in a12");
  require(sc.m1.path.visits(sc.r_index), "R in m1");
  require(sc.m2.path.visits(sc.r_index), "R in m2");

  std::tie(sc.m21, sc.m22) = split_at(sc.m2.path, sc.m_index, rel);
  std::tie(sc.m11, sc.m12) = split_at(sc.m1.path, sc.r_index, rel);
  require(sc.m22.visits(sc.r_index), "R in m22");

  return sc;
}

}  // namespace oracle
