#pragma once

#include <cstdint>
#include <vector>

#include "cps/arrangement.hpp"
#include "cps/scheme.hpp"

namespace cps {

enum class CutVariant { box, slab };

struct Region {
  ConvexPolytope poly;
  Vec witness;                         // interior point
  std::vector<std::uint32_t> ranks;    // position among parallel cuts, per direction class
  std::vector<bool> signature;         // membership of the witness in W - g_int per translate
  size_t group = 0;                    // regions sharing a group form one member
};

struct RegionPartition {
  std::vector<Region> regions;
  std::vector<AffineHyperplane> cutting_set;
  std::vector<LatticePoint> translates;  // indexes the signature bits
  size_t group_count = 0;
};

// Incremental splitting of W by the translates H + g_int, g in B(r) or S(r).
RegionPartition cut_regions(const Scheme& s, const Rational& r, CutVariant variant);
RegionPartition cut_regions(const Scheme& s, const std::vector<LatticePoint>& translates);

struct AcceptanceResult {
  size_t count = 0;
  RegionPartition partition;  // C'(r) cells grouped by signature
};
AcceptanceResult acceptance_count(const Scheme& s, const Rational& r);

// Acceptance domains built directly as (intersection of W - g_int over P_in)
// minus the union of W - g_int over P_out, one group per signature.
RegionPartition acceptance_domains(const Scheme& s, const std::vector<LatticePoint>& slab,
                                   const std::vector<std::vector<bool>>& signatures);

// Membership of x in the open translate W - g_int.
bool in_open_translate(const Scheme& s, const Vec& x, const Vec& g_int);

// Every member of p2 contains a member of p1.
bool refines(const RegionPartition& p1, const RegionPartition& p2);
FieldReal partition_volume(const RegionPartition& p);

}  // namespace cps
