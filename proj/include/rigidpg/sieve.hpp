// Sub-PDS reduction, the three nonexistence techniques T.1/T.2/T.3, the
// per-case verdict pipeline, and the 2^n+1 infinite-family exclusion with
// its closed-form variance check.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rigidpg/params.hpp"

namespace rigidpg {

// A subgroup order |N| with gcd(|N|, |G|/|N|) = 1 and odd quotient.
// Coprimality forces N to be a product of full Sylow subgroups.
struct SubgroupChoice {
  Integer order;
  FactoredInteger order_factored;
  Integer quotient_order;
};

// All admissible |N| (nonempty proper Sylow products with odd complement),
// ascending. Empty for prime powers.
std::vector<SubgroupChoice> admissible_subgroup_orders(const FactoredInteger& v_factored);

// The Ma-reduction record for one subgroup choice:
//   pi = gcd(|N|, delta), theta = floor((beta+pi)/(2pi)), beta1 = beta-2*theta*pi,
//   Delta1 = pi^2, d = (|N|+beta1)^2 - (Delta1-beta1^2)(|N|-1),
// and the admissible roots k1 = ((|N|+beta1) +- sqrt(d))/2, plus root first.
struct SubPdsReduction {
  SubgroupChoice subgroup;
  Integer pi;
  Integer theta;
  Integer beta1;
  Integer Delta1;
  Integer discriminant;
  std::vector<Integer> k1_candidates;
};

SubPdsReduction reduce_sub_pds(const PdsParams& pds, const SubgroupChoice& subgroup);

enum class T1Status { DeadNegative, DeadNonsquare, Inconclusive };

T1Status check_t1(const SubPdsReduction& reduction);

enum class BranchStatus { DeadT2Subgroup, DeadT2Quotient, DeadT3, Alive };

// Verdict for one k1 branch. var_value is the exact T.3 variance, recorded
// for every branch where it is defined (also on T.2-dead branches);
// divisibility_witness is the (prime, failing quantity) of a T.2 kill.
struct BranchVerdict {
  Integer k1;
  BranchStatus status = BranchStatus::Alive;
  std::optional<Integer> var_value;
  std::optional<std::pair<Integer, Integer>> divisibility_witness;
};

// T.2 alone: local-multiplier divisibility on the subgroup and quotient
// sides. Returns Alive when neither side kills; var_value is not filled.
BranchVerdict check_t2(const SubPdsReduction& reduction, const PdsParams& pds,
                       const Integer& k1);

// Exact variance (|G|/|N|-1) * Sum B_i^2 - (Sum B_i)^2 computed from the two
// coset counting equations; dead iff strictly negative.
struct T3Result {
  Integer var_value;
  bool dead;
};

T3Result check_t3(const PdsParams& pds, const SubgroupChoice& subgroup, const Integer& k1);

struct SubgroupReport {
  SubPdsReduction reduction;
  T1Status t1_status = T1Status::Inconclusive;
  std::vector<BranchVerdict> branches;
  bool no_admissible_root = false;  // d is a square but no valid k1 root
  bool killed = false;
};

enum class CaseVerdict { ExcludedT1, ExcludedT2, ExcludedT3, ExcludedMixed, Open };

// Per-case outcome over every admissible subgroup. t1_witness / killer
// index into per_subgroup: the T.1 witness prefers a negative discriminant
// and then the smallest |N| (which reproduces the published exclusion
// table); the branch killer is the smallest |N| whose branches all died.
struct CaseReport {
  CandidateRow row;
  std::vector<SubgroupReport> per_subgroup;
  CaseVerdict verdict = CaseVerdict::Open;
  std::optional<std::size_t> t1_witness;
  std::optional<std::size_t> killer;
  std::vector<std::string> structural_facts;
};

CaseReport sieve_case(const CandidateRow& row);

// "Sylow-p" when |N| is the full Sylow p-subgroup, else "N=<factored>".
std::string subgroup_label(const SubgroupChoice& subgroup);

const char* to_string(T1Status s);
const char* to_string(BranchStatus s);
const char* to_string(CaseVerdict v);

// The parameter family pg(a^2+a-1, a^3-a-1, a) for a = 2^n+1, n >= 2:
// m = (a+1)^2(a-1), r = a^2-1, PDS (m^2, r(m+1), -m+r^2+3r, r^2+r).
struct FamilyInstance {
  unsigned n = 0;
  Integer alpha;
  Integer m;
  Integer r;
  PdsParams pds;
};

// Rejects n < 2 (for n in {0,1} the point count is a prime power and the
// reduction has no admissible subgroup).
FamilyInstance family_instance(unsigned n);

// The two displayed variance products from the family nonexistence proof.
Integer family_var_plus_closed_form(unsigned n);
Integer family_var_minus_closed_form(unsigned n);

// Reduction at |N| = 2^(2n+4): pi = 2^(n+2), beta1 = 0,
// k1 = 2^(2n+3) +- 2^(n+1); both variances are strictly negative and
// closed_form_match records exact equality with the displayed products.
struct FamilyExclusion {
  FamilyInstance instance;
  SubPdsReduction reduction;
  Integer k1_plus;
  Integer k1_minus;
  Integer var_plus;
  Integer var_minus;
  bool closed_form_match = false;
};

FamilyExclusion family_exclude(unsigned n);

}  // namespace rigidpg
