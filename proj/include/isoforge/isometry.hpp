#pragma once

#include <map>
#include <string>
#include <vector>

#include "isoforge/chartable.hpp"

namespace isoforge {

// kind: mainAn, mainAn2, mainAn_p2, mainTilde, brouetilde, brgr, osima,
// couronne, dn_conj, dn_nonconj, fh
struct IsometryRequest {
  std::string kind;
  int p = 3;
  int w = -1;  // weight; per-component weight for dn_conj
  int n = -1;  // degree of the symmetric side for brgr/osima/fh when w is not given
  int l = 2;   // couronne: order of the cyclic base group
  // comma partitions, "" is the empty partition; multi-component cores
  // separate components with ';'
  std::string core1, core2;
  std::string weights;  // couronne / dn_nonconj: per-component weights, "1,0"
  std::string cover1;   // mainTilde: tilde-sn or tilde-an for core1, "" picks by sign
};

struct Isometry {
  std::string kind;
  int p = 0;
  IsometryRequest request;
  const CharTable* source = nullptr;
  const CharTable* target = nullptr;
  std::vector<int> src_block;  // ascending character indices
  std::vector<int> dst_block;
  std::vector<int> image;      // parallel to src_block
  std::vector<int> sign;       // +1 / -1
  std::vector<bool> c_src, c_dst;  // class sets of the theorem
  std::string mode;                // broue or generalized
  // lower-level data used by the r-commutation check
  std::string src_side, dst_side;  // MN family of each side
  std::vector<std::string> src_core, dst_core;
  std::vector<int> weights;  // per-component weights (wreath kinds)
  int src_rank = 0, dst_rank = 0;  // n of S_n-like sides, w of wreath-like sides
  int l = 2;
  std::string via_core;            // brouetilde: intermediate S~ core
  bool formula_inverted = false;   // formula runs target -> source
  bool inverted = false;

  Isometry inverse() const;
  int image_of(int chi) const;  // position in src_block, -1 if absent
};

Isometry build_isometry(const IsometryRequest& req);

// Ihat(x, x') over all source x target classes
std::vector<std::vector<ExactScalar>> i_hat(const Isometry& iso);

struct Witness {
  std::string check;
  std::string x, y;  // class or character labels
  std::string value;
  std::string detail;
};

struct CheckResult {
  bool ran = false;
  bool pass = true;
  std::vector<Witness> witnesses;
  void fail(Witness w, std::size_t cap = 8);
};

struct VerificationReport {
  std::string mode;
  CheckResult mixed_vanishing;
  CheckResult broue_integrality;
  CheckResult kor_gram;
  CheckResult r_commutation;
  double seconds = 0;
  int source_classes = 0, target_classes = 0, block_size = 0;
  bool ok() const;
};

// mode: generalized, kor or broue
VerificationReport verify(const Isometry& iso, const std::string& mode);

// r^lambda commutation over Lambda_0 and vanishing beyond the weight
CheckResult r_commutation_check(const Isometry& iso);
bool has_mn_structure(const Isometry& iso);

Isometry flip_sign(const Isometry& iso, std::size_t k);
Isometry swap_targets(const Isometry& iso, std::size_t a, std::size_t b);

}  // namespace isoforge
